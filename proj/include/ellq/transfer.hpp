#pragma once
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ellq/repr.hpp"

namespace ellq {

struct QuantumSpaceConfig {
    int N = 2;
    int ell = 2;
    std::vector<cplx> a;
    EllipticParams P;
    void validate() const;
};

using DpTerms = std::map<DepthVector, CMat>;

// sum over depth vectors n of p^{anchor - n.alpha} T_{anchor - n.alpha} f_n(lam); exact up to `depth`
struct DpElement {
    int N = 0;
    size_t dim = 0;
    int depth = 0;
    Weight anchor;
    Assignment assign;
    cplx hbar;
    std::function<DpTerms(const CVec& lam)> ev;

    DpTerms at(const CVec& lam) const { return ev(lam); }
    CVec weight_num(const DepthVector& n) const;
};

// all depth vectors of length N-1 with total <= d, ordered by total then lexicographically
std::vector<DepthVector> depth_vectors(int N, int d);

DpElement dp_mul(const DpElement& A, const DpElement& B);
DpElement dp_inv(const DpElement& Q);
DpElement dp_add(const DpElement& A, const DpElement& B, cplx cb = 1.0);
DpElement dp_scale(const DpElement& A, cplx c);
DpElement dp_scalar(int N, size_t dim, cplx c, int depth, cplx hbar);
std::map<DepthVector, double> dp_norms(const DpElement& A, const CVec& lam);

DpElement transfer_matrix(const EModule& X, const QuantumSpaceConfig& cfg, cplx z, int depth);

// Q_r(u) with u = s hbar; s may carry indeterminates valued in `assign`
DpElement q_operator(const QuantumSpaceConfig& cfg, int r, const AffineShift& s, const Assignment& assign, int depth);
DpElement q_operator(const QuantumSpaceConfig& cfg, int r, cplx u, int depth);

std::map<DepthVector, double> commutator_residual(const EModule& X, const EModule& Y, const QuantumSpaceConfig& cfg, cplx z,
                                                  cplx w, const CVec& lam, int depth);

struct TQReport {
    std::map<DepthVector, double> per_depth;          // with the Q_2 neighbour factor
    std::map<DepthVector, double> literal_per_depth;  // neighbour factor dropped
    double max_residual = 0, literal_max = 0;
    bool k_warning = false;
};
// X(w) Q(w) Q(w-h)^{-1} = 1 + Q(w+h) Q(w-h)^{-1} Q_2(w-h/2) / Q_2(w+h/2), X from V(0) (x) S(theta(z)/theta(z+h))
TQReport tq_residual(const QuantumSpaceConfig& cfg, cplx k, cplx w, const CVec& lam, int depth, bool corrupt_twist = false);

// Q(u + x h) Q(u)^{-1} against t_{CW_{1,x}}(u) t_{CW_{1,0}}(u)^{-1}, N = 2
std::map<DepthVector, double> shift_law_residual(const QuantumSpaceConfig& cfg, cplx u, const AffineShift& x,
                                                 const Assignment& assign, const CVec& lam, int depth);

// sum_n p^n Q~_n(u) for N = 2, r = 1 (r = N gives the closed form)
CMat q_specialized(const QuantumSpaceConfig& cfg, int r, cplx u, cplx p, const CVec& lam, int depth);

struct BetheRoot {
    cplx u;
    double residual = 0;     // |BAE + 1|
    double q_value = 0;      // |eigenvalue at the root|
    bool branch_crossing = false;
};
struct BetheReport {
    std::vector<BetheRoot> roots;
    double truncation = 0;   // |p|^{depth+1}
    std::vector<std::string> notes;
};
struct SearchBox {
    double re_lo = -0.5, re_hi = 0.5, im_lo = -0.4, im_hi = 0.4;
    int grid = 5;
};
BetheReport bethe_residual(const QuantumSpaceConfig& cfg, cplx p, int depth, const SearchBox& box, const CVec& lam);

// roots of the closed-form Q_N, compared against -a_i - h/2 modulo the lattice
struct ClosedRootReport {
    std::vector<cplx> located;
    double max_error = 0;
};
ClosedRootReport qn_root_check(const QuantumSpaceConfig& cfg, const CVec& lam);

// distance from depth-0 roots to the roots found at each p
std::vector<std::pair<double, double>> bethe_continuity(const QuantumSpaceConfig& cfg, const std::vector<double>& ps, int depth,
                                                        const SearchBox& box, const CVec& lam);

cplx newton_root(const std::function<cplx(cplx)>& f, cplx u0, bool* ok, int max_iter = 80);

} // namespace ellq
