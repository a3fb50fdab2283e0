#include "ellq/eweights.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ellq {

Rational ell_of(int N, int k) { return Rational(N - k - 1, 2); }

static void check_level(int N, int k, int lo, int hi, const char* what) {
    if (k < lo || k > hi) throw std::out_of_range(std::string(what) + " level " + std::to_string(k) + " out of range for N=" + std::to_string(N));
}

Weight EWeight::weight() const {
    Weight w = Weight::zero(N_);
    for (const auto& [key, e] : psi_) w += (key.second * Rational(e)) * Weight::varpi(N_, key.first);
    return w;
}

EWeight& EWeight::mul_psi(int k, const AffineShift& s, int e) {
    if (e == 0) return *this;
    auto [it, fresh] = psi_.try_emplace(PsiKey{k, s}, e);
    if (!fresh) {
        it->second += e;
        if (it->second == 0) psi_.erase(it);
    }
    return *this;
}

EWeight& EWeight::operator*=(const EWeight& o) {
    if (N_ == 0) N_ = o.N_;
    if (o.N_ != 0 && o.N_ != N_) throw std::invalid_argument("e-weight rank mismatch");
    for (const auto& [key, e] : o.psi_) mul_psi(key.first, key.second, e);
    return *this;
}

EWeight EWeight::inverse() const { return pow(-1); }

EWeight EWeight::pow(int n) const {
    EWeight r(N_);
    for (const auto& [key, e] : psi_) r.mul_psi(key.first, key.second, e * n);
    return r;
}

EWeight EWeight::substitute(const std::string& name, const AffineShift& v) const {
    EWeight r(N_);
    for (const auto& [key, e] : psi_) r.mul_psi(key.first, key.second.substitute(name, v), e);
    return r;
}

std::string EWeight::str() const {
    if (psi_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, e] : psi_) {
        if (!first) os << " ";
        first = false;
        os << "Psi[" << key.first << "," << key.second.str() << "]";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

EWeight gen_psi(int N, int k, const AffineShift& s) {
    check_level(N, k, 1, N, "Psi");
    EWeight e(N);
    return e.mul_psi(k, s, 1);
}

EWeight gen_Y(int N, int k, const AffineShift& s) {
    check_level(N, k, 0, N, "Y");
    EWeight e(N);
    if (k == 0) return e;
    e.mul_psi(k, s + AffineShift::half(1), 1);
    e.mul_psi(k, s - AffineShift::half(1), -1);
    return e;
}

EWeight gen_A(int N, int i, const AffineShift& s) {
    check_level(N, i, 1, N - 1, "A");
    EWeight e(N);
    for (int j = 1; j <= N; ++j) {
        int c = (i == j) ? 2 : (std::abs(i - j) == 1 ? -1 : 0);
        if (c == 0) continue;
        e.mul_psi(j, s + AffineShift(Rational(c, 2)), 1);
        e.mul_psi(j, s - AffineShift(Rational(c, 2)), -1);
    }
    return e;
}

EWeight gen_box(int N, int k, const AffineShift& s) {
    check_level(N, k, 1, N, "box");
    AffineShift l = ell_of(N, k);
    return gen_Y(N, k, s + l + AffineShift::half(1)) * gen_Y(N, k - 1, s + l).inverse();
}

SlotFactors components(const EWeight& e) {
    const int N = e.N();
    SlotFactors f(static_cast<size_t>(N));
    for (const auto& [key, x] : e.psi()) {
        AffineShift s = key.second - AffineShift(ell_of(N, key.first));
        for (int i = 0; i < key.first; ++i) {
            auto& m = f[static_cast<size_t>(i)];
            int v = (m[s] += x);
            if (v == 0) m.erase(s);
        }
    }
    return f;
}

cplx slot_value(const std::map<AffineShift, int>& f, cplx z, const Assignment& a, const EllipticParams& P) {
    cplx num = 1.0, den = 1.0;
    for (const auto& [s, e] : f) {
        cplx t = theta_at(z, s, a, P);
        for (int n = 0; n < std::abs(e); ++n) (e > 0 ? num : den) *= t;
    }
    return num / guarded(den, "e-weight component");
}

cplx minor_value(const EWeight& e, int l, cplx z, const EllipticParams& P, const Assignment& a) {
    const int N = e.N();
    check_level(N, l, 1, N, "minor");
    auto f = components(e);
    cplx v = 1.0;
    for (int i = 0; i < l; ++i) v *= slot_value(f[static_cast<size_t>(N - 1 - i)], z + static_cast<double>(i) * P.hbar, a, P);
    return v;
}

namespace {
// shifts in one class differ by integers
struct ClassKey {
    int level;
    std::map<std::string, Rational> lin;
    Rational frac;
    bool operator<(const ClassKey& o) const { return std::tie(level, lin, frac) < std::tie(o.level, o.lin, o.frac); }
};
Rational frac_part(const Rational& q) {
    long long fl = q.numerator() / q.denominator();
    if (q.numerator() < 0 && q.numerator() % q.denominator() != 0) --fl;
    return q - Rational(fl);
}
}  // namespace

YExpansion y_expansion(const EWeight& e) {
    const int N = e.N();
    YExpansion out{{}, EWeight(N)};
    std::map<ClassKey, std::map<Rational, int>> cls;
    for (const auto& [key, x] : e.psi()) {
        if (key.first == N) {
            out.levelN.mul_psi(key.first, key.second, x);
            continue;
        }
        const Rational& c = key.second.constant();
        cls[ClassKey{key.first, key.second.linear(), frac_part(c)}][c] += x;
    }
    for (const auto& [ck, seq] : cls) {
        const Rational x0 = seq.begin()->first;
        const Rational x1 = seq.rbegin()->first;
        int run = 0;
        AffineShift base;
        for (const auto& [name, q] : ck.lin) base += AffineShift::var(name, q);
        for (Rational x = x0; x < x1; x += 1) {
            auto it = seq.find(x);
            if (it != seq.end()) run += it->second;
            if (run != 0) out.y[PsiKey{ck.level, base + AffineShift(x + Rational(1, 2))}] = -run;
        }
        run += seq.rbegin()->second;
        if (run != 0) throw MathError("e-weight not in the Y-span: unbalanced Psi exponents at level " + std::to_string(ck.level));
    }
    return out;
}

bool is_right_negative(const EWeight& e) {
    auto ye = y_expansion(e);
    if (ye.y.empty()) return false;
    const auto& lin0 = ye.y.begin()->first.second.linear();
    std::optional<Rational> m;
    for (const auto& [key, x] : ye.y) {
        if (key.second.linear() != lin0) throw MathError("Y-factors on different shift lattices");
        if (!m || key.second.constant() < *m) m = key.second.constant();
    }
    for (const auto& [key, x] : ye.y)
        if (key.second.constant() == *m && x >= 0) return false;
    return true;
}

bool is_dominant(const EWeight& e) {
    auto ye = y_expansion(e);
    for (const auto& [key, x] : ye.y)
        if (x < 0) return false;
    return true;
}

EWeight drop_level_N(const EWeight& e) {
    EWeight r(e.N());
    for (const auto& [key, x] : e.psi())
        if (key.first != e.N()) r.mul_psi(key.first, key.second, x);
    return r;
}

EWeight level_N_part(const EWeight& e) {
    EWeight r(e.N());
    for (const auto& [key, x] : e.psi())
        if (key.first == e.N()) r.mul_psi(key.first, key.second, x);
    return r;
}

QCharacter QCharacter::unit(int N) { return monomial(EWeight(N)); }

QCharacter QCharacter::monomial(const EWeight& e, long long c) {
    QCharacter q(e.N());
    q.add(e, c);
    return q;
}

long long QCharacter::coeff(const EWeight& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
}

long long QCharacter::total() const {
    long long s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

QCharacter& QCharacter::add(const EWeight& e, long long c) {
    if (c == 0) return *this;
    if (N_ == 0) N_ = e.N();
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

QCharacter& QCharacter::operator+=(const QCharacter& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
}

QCharacter& QCharacter::operator-=(const QCharacter& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
}

QCharacter& QCharacter::operator*=(long long c) {
    if (c == 0) terms_.clear();
    for (auto& [e, x] : terms_) x *= c;
    return *this;
}

void QCharacter::truncate() {
    if (!anchor || !depth_limit) return;
    for (auto it = terms_.begin(); it != terms_.end();) {
        bool drop = false;
        try {
            drop = total_depth(weight_depth(it->first.weight(), *anchor)) > *depth_limit;
        } catch (const std::exception&) {
        }
        it = drop ? terms_.erase(it) : std::next(it);
    }
}

QCharacter operator*(const QCharacter& a, const QCharacter& b) {
    QCharacter r(a.N_ ? a.N_ : b.N_);
    for (const auto& [e, c] : a.terms_)
        for (const auto& [f, d] : b.terms_) r.add(e * f, c * d);
    if (a.anchor && b.anchor) {
        r.anchor = *a.anchor + *b.anchor;
        if (a.depth_limit || b.depth_limit) r.depth_limit = std::min(a.depth_limit.value_or(1 << 30), b.depth_limit.value_or(1 << 30));
        r.truncate();
    }
    return r;
}

QCharacter operator*(const QCharacter& a, const EWeight& e) {
    QCharacter r(a.N_);
    for (const auto& [f, c] : a.terms_) r.add(f * e, c);
    return r;
}

QCharacter QCharacter::map_terms(EWeight (*f)(const EWeight&)) const {
    QCharacter r(N_);
    for (const auto& [e, c] : terms_) r.add(f(e), c);
    return r;
}

QCharacter QCharacter::substitute(const std::string& name, const AffineShift& v) const {
    QCharacter r(N_);
    for (const auto& [e, c] : terms_) r.add(e.substitute(name, v), c);
    return r;
}

std::string QCharacter::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += std::to_string(c) + "*";
        s += e.str();
    }
    return s;
}

void to_json(nlohmann::json& j, const EWeight& e) {
    nlohmann::json psi = nlohmann::json::array();
    for (const auto& [key, x] : e.psi()) psi.push_back({{"level", key.first}, {"shift", key.second}, {"exp", x}});
    j = {{"N", e.N()}, {"psi", psi}};
}

void from_json(const nlohmann::json& j, EWeight& e) {
    e = EWeight(j.at("N").get<int>());
    for (const auto& p : j.at("psi")) e.mul_psi(p.at("level").get<int>(), p.at("shift").get<AffineShift>(), p.at("exp").get<int>());
}

void to_json(nlohmann::json& j, const QCharacter& q) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& [e, c] : q.terms()) t.push_back({{"coeff", c}, {"eweight", e}});
    j = {{"N", q.N()}, {"terms", t}};
}

void from_json(const nlohmann::json& j, QCharacter& q) {
    q = QCharacter(j.at("N").get<int>());
    for (const auto& t : j.at("terms")) q.add(t.at("eweight").get<EWeight>(), t.at("coeff").get<long long>());
}

} // namespace ellq
