#pragma once
#include <map>
#include <tuple>
#include <vector>

#include "ellq/tableaux.hpp"

namespace ellq {

// Omega_{s,x} stands for qc(CW^{(s)}_{0,x}), kept opaque
using OmegaMonomial = std::map<PsiKey, int>;

class FormalClass {
public:
    FormalClass() = default;
    explicit FormalClass(int N) : N_(N) {}
    FormalClass(const QCharacter& q, OmegaMonomial om = {});

    int N() const { return N_; }
    const std::map<OmegaMonomial, QCharacter>& parts() const { return parts_; }
    // true when every part carries the same Omega monomial
    bool single_omega() const { return parts_.size() <= 1; }

    FormalClass& operator+=(const FormalClass& o);
    FormalClass& operator-=(const FormalClass& o);
    friend FormalClass operator+(FormalClass a, const FormalClass& b) { return a += b; }
    friend FormalClass operator-(FormalClass a, const FormalClass& b) { return a -= b; }
    friend FormalClass operator*(const FormalClass& a, const FormalClass& b);
    bool operator==(const FormalClass& o) const { return parts_ == o.parts_; }

    FormalClass substitute(const std::string& name, const AffineShift& v) const;
    std::string str() const;

private:
    void clean();
    int N_ = 0;
    std::map<OmegaMonomial, QCharacter> parts_;
};

// which neighbours s = r +- 1 enter the Demazure weight; level N carries Psi_N factors
enum class NeighborSet { WithLevelN, InteriorOnly };

EWeight demazure_weight(int N, int r, const AffineShift& k, const AffineShift& a, const AffineShift& t,
                        NeighborSet ns = NeighborSet::WithLevelN);

// Psi_{r,x+d} / Psi_{r,x}
EWeight asymptotic_weight(int N, int r, const AffineShift& d, const AffineShift& x);

// W^{(s)}_{k,a} for 0 <= s <= N; s = 0 is the unit and s = N the one-dimensional class
QCharacter kr_class(int N, int s, int k, const AffineShift& a);

struct Budget {
    double seconds = 10.0;
    size_t max_terms = 200000;
};

struct TSystemReport {
    QCharacter D;
    EWeight leading;
    EWeight expected_leading;
    bool nonneg = false, leading_ok = false, chain_ok = false;
    bool factor_ok = true;           // only meaningful for t = 0
    bool demazure_tsystem_ok = false;
    bool ok = false;
};

TSystemReport tsystem_check(int N, int r, int k, int t, const Budget& budget = {},
                            NeighborSet ns = NeighborSet::WithLevelN);

// terms of maximal weight; throws unless there is exactly one
EWeight highest_term(const QCharacter& q);

using RatioKey = std::tuple<int, AffineShift, AffineShift>;  // Psi_{r,x} / Psi_{r,y}
struct BaxterTerm {
    long long coeff = 1;
    EWeight r0;
    std::map<RatioKey, int> ratios;
};
std::vector<BaxterTerm> baxter_expand(const QCharacter& q);
QCharacter baxter_recombine(const std::vector<BaxterTerm>& terms, int N);

// qc(D^{(r,t)}_{k,a}) with Omega factors at the neighbours
FormalClass asymptotic_demazure_class(int N, int r, const AffineShift& k, const AffineShift& a, int t,
                                      NeighborSet ns = NeighborSet::WithLevelN);
// qc(CW^{(r)}_{d,x}) = w_{d,x} Omega_{r,x}; one-dimensional for r = N
FormalClass asymptotic_class(int N, int r, const AffineShift& d, const AffineShift& x);

struct AsymptoticTQReport {
    FormalClass lhs, rhs;
    bool omega_cancel = false;
    bool ok = false;
    bool three_term_ok = true;  // t = 1 specialization (a,b) = (k+1/2, 0)
};

AsymptoticTQReport asymptotic_tq_check(int N, int r, int t, NeighborSet ns = NeighborSet::WithLevelN,
                                       const std::string& kname = "k", const std::string& aname = "a",
                                       const std::string& bname = "b");

} // namespace ellq
