#include "ellq/shift.hpp"

#include <stdexcept>

namespace ellq {

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (s.find('.') != std::string::npos) {
                // decimal literal, exact as p/10^d
                auto dot = s.find('.');
                std::string digits = s.substr(0, dot) + s.substr(dot + 1);
                long long den = 1;
                for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
                return Rational(std::stoll(digits), den);
            }
            return Rational(std::stoll(s));
        }
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: " + s);
    }
}

double to_double(const Rational& q) {
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

AffineShift AffineShift::var(const std::string& name, Rational coeff) {
    AffineShift s;
    if (coeff != Rational(0)) s.lin_[name] = coeff;
    return s;
}

Rational AffineShift::coeff(const std::string& name) const {
    auto it = lin_.find(name);
    return it == lin_.end() ? Rational(0) : it->second;
}

AffineShift& AffineShift::operator+=(const AffineShift& o) {
    c_ += o.c_;
    for (const auto& [k, v] : o.lin_) {
        auto& slot = lin_[k];
        slot += v;
        if (slot == Rational(0)) lin_.erase(k);
    }
    return *this;
}

AffineShift& AffineShift::operator-=(const AffineShift& o) { return *this += -o; }

AffineShift& AffineShift::operator*=(Rational q) {
    if (q == Rational(0)) {
        c_ = 0;
        lin_.clear();
        return *this;
    }
    c_ *= q;
    for (auto& kv : lin_) kv.second *= q;
    return *this;
}

AffineShift AffineShift::operator-() const {
    AffineShift r = *this;
    r *= Rational(-1);
    return r;
}

AffineShift AffineShift::operator/(long long n) const {
    AffineShift r = *this;
    r *= Rational(1, n);
    return r;
}

std::strong_ordering AffineShift::operator<=>(const AffineShift& o) const {
    if (c_ != o.c_) return c_ < o.c_ ? std::strong_ordering::less : std::strong_ordering::greater;
    auto a = lin_.begin(), b = o.lin_.begin();
    for (; a != lin_.end() && b != o.lin_.end(); ++a, ++b) {
        if (a->first != b->first)
            return a->first < b->first ? std::strong_ordering::less : std::strong_ordering::greater;
        if (a->second != b->second)
            return a->second < b->second ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a == lin_.end() && b == o.lin_.end()) return std::strong_ordering::equal;
    return a == lin_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

AffineShift AffineShift::substitute(const std::string& name, const AffineShift& value) const {
    auto it = lin_.find(name);
    if (it == lin_.end()) return *this;
    AffineShift r = *this;
    Rational q = it->second;
    r.lin_.erase(name);
    r += value * q;
    return r;
}

std::string AffineShift::str() const {
    std::string out;
    if (c_ != Rational(0) || lin_.empty()) out = to_string(c_);
    for (const auto& [k, v] : lin_) {
        std::string term;
        if (v == Rational(1)) term = k;
        else if (v == Rational(-1)) term = "-" + k;
        else term = to_string(v) + "*" + k;
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

cplx eval_shift(const AffineShift& s, const Assignment& assignment) {
    cplx r = to_double(s.constant());
    for (const auto& [k, v] : s.linear()) {
        auto it = assignment.find(k);
        if (it == assignment.end()) throw std::invalid_argument("missing indeterminate: " + k);
        r += to_double(v) * it->second;
    }
    return r;
}

void to_json(nlohmann::json& j, const AffineShift& s) {
    nlohmann::json lin = nlohmann::json::object();
    for (const auto& [k, v] : s.linear()) lin[k] = to_string(v);
    j = nlohmann::json{{"c", to_string(s.constant())}, {"lin", lin}};
}

void from_json(const nlohmann::json& j, AffineShift& s) {
    s = AffineShift(parse_rational(j.at("c").get<std::string>()));
    for (const auto& [k, v] : j.at("lin").items()) s += AffineShift::var(k, parse_rational(v.get<std::string>()));
}

} // namespace ellq
