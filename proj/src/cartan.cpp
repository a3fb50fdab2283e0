#include "ellq/cartan.hpp"

#include <stdexcept>

namespace ellq {

Weight::Weight(int N) : c_(static_cast<size_t>(N)) {}

Weight::Weight(std::vector<AffineShift> coords) : c_(std::move(coords)) { canonicalize(); }

void Weight::canonicalize() {
    if (c_.empty()) return;
    AffineShift sum;
    for (const auto& x : c_) sum += x;
    if (sum == AffineShift()) return;
    AffineShift mean = sum / static_cast<long long>(c_.size());
    for (auto& x : c_) x -= mean;
}

Weight Weight::epsilon(int N, int i) {
    if (i < 1 || i > N) throw std::out_of_range("epsilon index");
    std::vector<AffineShift> c(static_cast<size_t>(N));
    c[static_cast<size_t>(i - 1)] = 1;
    return Weight(c);
}

Weight Weight::varpi(int N, int k) {
    if (k < 0 || k > N) throw std::out_of_range("varpi index");
    std::vector<AffineShift> c(static_cast<size_t>(N));
    for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = 1;
    return Weight(c);
}

Weight Weight::alpha(int N, int i) {
    if (i < 1 || i >= N) throw std::out_of_range("simple root index");
    return epsilon(N, i) - epsilon(N, i + 1);
}

bool Weight::is_zero() const {
    for (const auto& x : c_)
        if (x != AffineShift()) return false;
    return true;
}

Weight& Weight::operator+=(const Weight& o) {
    if (c_.empty()) c_.resize(o.c_.size());
    if (o.c_.size() != c_.size()) throw std::invalid_argument("weight rank mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) { return *this += -o; }

Weight Weight::operator-() const {
    Weight r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Weight operator*(const AffineShift& s, const Weight& w) {
    // only constant * weight or symbolic * constant weight make sense here
    std::vector<AffineShift> c;
    for (const auto& x : w.c_) {
        if (!x.is_constant() && !s.is_constant()) throw std::invalid_argument("non-linear weight product");
        if (x.is_constant()) c.push_back(s * x.constant());
        else c.push_back(x * s.constant());
    }
    return Weight(c);
}

CVec Weight::eval(const Assignment& a) const {
    CVec v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(eval_shift(x, a));
    return v;
}

std::string Weight::str() const {
    std::string s = "(";
    for (size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + c_[i].str();
    return s + ")";
}

void to_json(nlohmann::json& j, const Weight& w) {
    j = nlohmann::json::array();
    for (const auto& x : w.coords()) j.push_back(x.str());
}

cplx lambda_ij(const CVec& lam, int i, int j) {
    const int N = static_cast<int>(lam.size());
    if (i < 1 || j < 1 || i > N || j > N) throw std::out_of_range("lambda_ij index");
    return lam[static_cast<size_t>(i - 1)] - lam[static_cast<size_t>(j - 1)];
}

StateBasis enumerate_zero_weight_states(int N, int ell) {
    if (N < 2 || ell <= 0 || ell % N != 0) throw std::invalid_argument("ell must be a positive multiple of N");
    const int kappa = ell / N;
    StateBasis B{N, ell, {}};
    std::vector<int> cur, count(static_cast<size_t>(N + 1), 0);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == ell) {
            B.states.push_back(cur);
            return;
        }
        for (int a = 1; a <= N; ++a) {
            if (count[static_cast<size_t>(a)] == kappa) continue;
            ++count[static_cast<size_t>(a)];
            cur.push_back(a);
            self(self);
            cur.pop_back();
            --count[static_cast<size_t>(a)];
        }
    };
    rec(rec);
    return B;
}

std::vector<AffineShift> alpha_coords(const Weight& w) {
    // w = sum n_i alpha_i  =>  n_i = c_1 + ... + c_i
    std::vector<AffineShift> n;
    AffineShift run;
    for (int i = 0; i + 1 < w.N(); ++i) {
        run += w.coords()[static_cast<size_t>(i)];
        n.push_back(run);
    }
    return n;
}

DepthVector weight_depth(const Weight& beta, const Weight& anchor) {
    DepthVector d;
    for (const auto& x : alpha_coords(anchor - beta)) {
        if (!x.is_constant() || x.constant().denominator() != 1 || x.constant() < Rational(0))
            throw std::invalid_argument("weight not in anchor + Q_-");
        d.push_back(static_cast<int>(x.constant().numerator()));
    }
    return d;
}

} // namespace ellq
