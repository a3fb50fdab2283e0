#pragma once
#include <Eigen/Dense>

#include "ellq/cartan.hpp"
#include "ellq/theta.hpp"

namespace ellq {

using CMat = Eigen::MatrixXcd;

// rows (p,q), columns (i,j), flattened as (p-1)*N+(q-1); entry is R^{ij}_{pq}
struct RMatrixValue {
    int N = 0;
    CMat m;
    cplx entry(int i, int j, int p, int q) const {
        return m((p - 1) * N + (q - 1), (i - 1) * N + (j - 1));
    }
};

// coefficient of v_p (x) v_q in R(z;lam)(v_i (x) v_j), 1-based
cplx r_entry(int N, cplx z, const CVec& lam, int i, int j, int p, int q, const EllipticParams& P);

RMatrixValue r_matrix(int N, cplx z, const CVec& lam, const EllipticParams& P);

// R^{ab} acting on legs (a,b) of (C^N)^{(x)3}; `shift_leg` in {0,1,2,3}: when nonzero,
// the block indexed by that leg's basis letter j uses lam + hbar*eps_j
CMat r_on_legs(int N, int a, int b, cplx z, const CVec& lam, int shift_leg, const EllipticParams& P);

double dybe_residual(int N, cplx z, cplx w, const CVec& lam, const EllipticParams& P);

} // namespace ellq
