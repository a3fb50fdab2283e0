#include "ellq/rmatrix.hpp"

#include <string>

namespace ellq {

cplx r_entry(int N, cplx z, const CVec& lam, int i, int j, int p, int q, const EllipticParams& P) {
    if (i == j) return (p == i && q == j) ? cplx(1.0) : cplx(0.0);
    const cplx h = P.hbar;
    if (p == i && q == j) {
        cplx l = lambda_ij(lam, i, j);
        cplx den = guarded(theta_reduced(z + h, P), "theta(z+hbar)") * guarded(theta_reduced(l, P), "theta(lambda_ij)");
        return theta_reduced(z, P) * theta_reduced(l - h, P) / den;
    }
    if (p == j && q == i) {
        cplx l = lambda_ij(lam, j, i);
        cplx den = guarded(theta_reduced(z + h, P), "theta(z+hbar)") * guarded(theta_reduced(l, P), "theta(lambda_ji)");
        return theta_reduced(z + l, P) * theta_reduced(h, P) / den;
    }
    (void)N;
    return 0.0;
}

RMatrixValue r_matrix(int N, cplx z, const CVec& lam, const EllipticParams& P) {
    RMatrixValue R{N, CMat::Zero(N * N, N * N)};
    const cplx h = P.hbar;
    const cplx tz = theta_reduced(z, P);
    const cplx th = theta_reduced(h, P);
    const cplx tzh = guarded(theta_reduced(z + h, P), "theta(z+hbar)");
    for (int i = 1; i <= N; ++i) {
        R.m((i - 1) * N + (i - 1), (i - 1) * N + (i - 1)) = 1.0;
        for (int j = 1; j <= N; ++j) {
            if (i == j) continue;
            const cplx lij = lambda_ij(lam, i, j);
            const cplx tl = guarded(theta_reduced(lij, P), "theta(lambda_ij)");
            // E_ii (x) E_jj and E_ij (x) E_ji, the latter sending v_j (x) v_i to v_i (x) v_j
            R.m((i - 1) * N + (j - 1), (i - 1) * N + (j - 1)) = tz * theta_reduced(lij - h, P) / (tzh * tl);
            R.m((i - 1) * N + (j - 1), (j - 1) * N + (i - 1)) = theta_reduced(z + lij, P) * th / (tzh * tl);
        }
    }
    return R;
}

CMat r_on_legs(int N, int a, int b, cplx z, const CVec& lam, int shift_leg, const EllipticParams& P) {
    const int dim = N * N * N;
    CMat M = CMat::Zero(dim, dim);
    const int c = 6 - a - b;  // spectator leg
    auto flat = [N](int x1, int x2, int x3) { return ((x1 - 1) * N + (x2 - 1)) * N + (x3 - 1); };
    for (int s = 1; s <= N; ++s) {  // spectator letter
        // letter on shift_leg may vary inside the block only if it is a or b; the dYBE only shifts by the spectator
        CVec l = lam;
        if (shift_leg != 0) {
            if (shift_leg != c) throw std::invalid_argument("dynamical shift must be keyed on the spectator leg");
            l[static_cast<size_t>(s - 1)] += P.hbar;
        }
        auto R = r_matrix(N, z, l, P);
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j)
                for (int p = 1; p <= N; ++p)
                    for (int q = 1; q <= N; ++q) {
                        cplx v = R.entry(i, j, p, q);
                        if (v == cplx(0.0)) continue;
                        int in[4], out[4];
                        in[a] = i; in[b] = j; in[c] = s;
                        out[a] = p; out[b] = q; out[c] = s;
                        M(flat(out[1], out[2], out[3]), flat(in[1], in[2], in[3])) += v;
                    }
    }
    return M;
}

double dybe_residual(int N, cplx z, cplx w, const CVec& lam, const EllipticParams& P) {
    CMat lhs = r_on_legs(N, 1, 2, z - w, lam, 3, P) * r_on_legs(N, 1, 3, z, lam, 0, P) * r_on_legs(N, 2, 3, w, lam, 1, P);
    CMat rhs = r_on_legs(N, 2, 3, w, lam, 0, P) * r_on_legs(N, 1, 3, z, lam, 2, P) * r_on_legs(N, 1, 2, z - w, lam, 0, P);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

} // namespace ellq
