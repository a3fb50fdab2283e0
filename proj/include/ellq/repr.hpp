#pragma once
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ellq/eweights.hpp"
#include "ellq/rmatrix.hpp"

namespace ellq {

struct GradedSpace {
    int N = 0;
    std::vector<std::string> labels;
    std::vector<Weight> weights;
    Assignment assign;             // values of symbolic weight coordinates
    std::vector<CVec> numeric;     // weights[b].eval(assign), filled by finalize()
    // coordinate sum of the gl_N representative (1 for v_k, additive under tensor);
    // only the evaluation-module formula sees it
    std::vector<cplx> coord_sum;

    size_t dim() const { return weights.size(); }
    void finalize();
    std::vector<size_t> indices_of(const Weight& w) const;
    CVec gl_weight(size_t b) const;
};

using MatEval = std::function<CMat(cplx z, const CVec& lam)>;

// [Phi](z, lam) in the basis of the spaces; bidegree (alpha, beta)
struct DifferenceOperator {
    std::shared_ptr<const GradedSpace> src, tgt;
    Weight alpha, beta;
    CVec beta_num;
    MatEval ev;

    CMat operator()(cplx z, const CVec& lam) const { return ev(z, lam); }
};

CVec shifted(const CVec& lam, cplx hbar, const CVec& w, double c = 1.0);

// [A o B](lam) = [A](lam) [B](lam + hbar beta_A)
DifferenceOperator compose(const DifferenceOperator& A, const DifferenceOperator& B, cplx hbar);
DifferenceOperator spectral_shift(const DifferenceOperator& A, cplx s);

struct EModule {
    int N = 0;
    EllipticParams P;
    std::shared_ptr<GradedSpace> space;
    Weight highest;
    std::function<CMat(int i, int j, cplx z, const CVec& lam)> Lfn;
    std::string tag;
    int trunc_depth = -1;  // last basis level of a truncated module, -1 when finite

    size_t dim() const { return space->dim(); }
    CMat L(int i, int j, cplx z, const CVec& lam) const { return Lfn(i, j, z, lam); }
    DifferenceOperator op(int i, int j) const;
};

EModule vector_module(int N, cplx a, const EllipticParams& P);
EModule vector_module(int N, const AffineShift& a, const Assignment& assign, const EllipticParams& P);
EModule tensor_module(const EModule& X, const EModule& Y);
// X (x) S(g) with g scalar: every L_ij(z) multiplied by g(z)
EModule twist_module(const EModule& X, std::function<cplx(cplx)> g, const std::string& what);
// one-dimensional module whose e-weight has the same function in every slot
EModule one_dim_module(const EWeight& e, const Assignment& assign, const EllipticParams& P);
// L_ij(z) -> L_ij(z + s)
EModule spectral_pullback(const EModule& X, cplx s);

// max |LHS - RHS| over (i,j,m,n); restrict > 0 keeps rows and columns below it.
// relative divides by max(1, largest RHS entry)
double rll_residual(const EModule& X, cplx z, cplx w, const CVec& lam, size_t restrict = 0, bool relative = false);

enum class MinorReading { LastLetters, Literal };

DifferenceOperator quantum_minor(const EModule& X, int k, MinorReading reading = MinorReading::LastLetters);

using GaugeFn = std::function<cplx(size_t b, const CVec& lam)>;
// [Phi]~_{b'b}(lam) = [Phi]_{b'b}(lam) phi_b(lam + hbar beta) / phi_{b'}(lam)
DifferenceOperator gauge(const DifferenceOperator& A, const GaugeFn& phi, cplx hbar);
// phi_i = prod_{l>i} theta(lam_il + hbar)
GaugeFn vector_gauge(int N, const EllipticParams& P);
// phi_{(b,c)}(lam) = phiX_b(lam + hbar wt c) phiY_c(lam)
GaugeFn tensor_gauge(const GaugeFn& gx, const GaugeFn& gy, const EModule& Y);

EModule asymptotic_sl2_module(const AffineShift& Lambda, const Assignment& assign, int depth, const EllipticParams& P);
EModule asymptotic_sl2_module(cplx Lambda, int depth, const EllipticParams& P);

struct SmallGroupReport {
    double z_spread = 0;        // max change of t_ij across sample z
    double commuting = 0;       // t_ij t_ik = t_ik t_ij
    double exchange = 0;        // t_ik t_jk vs t_jk t_ik
    double four_term = 0;
};
// t_{ji} at a fixed lam, from L_ij(z) of an evaluation module at a
std::map<std::pair<int, int>, DifferenceOperator> small_e_extract(const EModule& X, cplx a);
SmallGroupReport small_e_check(const EModule& X, cplx a, const CVec& lam, const std::vector<cplx>& zs);

} // namespace ellq
