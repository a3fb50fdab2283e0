#pragma once
#include <vector>

#include "ellq/shift.hpp"

namespace ellq {

using CVec = std::vector<cplx>;

// coefficients of eps_1..eps_N, kept with zero coordinate sum
class Weight {
public:
    Weight() = default;
    explicit Weight(int N);
    Weight(std::vector<AffineShift> coords);  // canonicalizes

    static Weight zero(int N) { return Weight(N); }
    static Weight epsilon(int N, int i);      // 1-based
    static Weight varpi(int N, int k);        // eps_1 + ... + eps_k
    static Weight alpha(int N, int i);        // eps_i - eps_{i+1}

    int N() const { return static_cast<int>(c_.size()); }
    const std::vector<AffineShift>& coords() const { return c_; }
    bool is_zero() const;

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(const AffineShift& s, const Weight& w);
    friend Weight operator*(Rational q, const Weight& w) { return AffineShift(q) * w; }
    Weight operator-() const;

    bool operator==(const Weight& o) const = default;
    auto operator<=>(const Weight& o) const = default;

    CVec eval(const Assignment& a = {}) const;
    std::string str() const;

private:
    void canonicalize();
    std::vector<AffineShift> c_;
};

void to_json(nlohmann::json& j, const Weight& w);

using DepthVector = std::vector<int>;  // n_i of -sum n_i alpha_i
inline int total_depth(const DepthVector& d) {
    int s = 0;
    for (int x : d) s += x;
    return s;
}

struct StateBasis {
    int N = 0, ell = 0;
    std::vector<std::vector<int>> states;  // letters 1..N
};

cplx lambda_ij(const CVec& lam, int i, int j);
StateBasis enumerate_zero_weight_states(int N, int ell);

// alpha-coordinates of anchor - beta; throws unless they are non-negative integers
DepthVector weight_depth(const Weight& beta, const Weight& anchor);
// alpha-coordinates (rational, possibly symbolic) of a sum-zero weight
std::vector<AffineShift> alpha_coords(const Weight& w);

} // namespace ellq
