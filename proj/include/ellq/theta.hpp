#pragma once
#include <complex>

#include "ellq/errors.hpp"
#include "ellq/shift.hpp"

namespace ellq {

struct EllipticParams {
    cplx tau{0.0, 0.8};
    cplx hbar{0.23, 0.11};
    int series_terms = 60;
    double tol = 1e-12;
};

// Im tau > 0, positive J and tol, hbar passes the lattice probe
void validate(const EllipticParams& P);
bool hbar_is_generic(const EllipticParams& P, int bound = 16);

// -sum_{j=-J}^{J-1} exp(i pi (j+1/2)^2 tau + 2 i pi (j+1/2)(z+1/2)), no reduction.
cplx theta_series(cplx z, cplx tau, int J);

cplx theta(cplx z, const EllipticParams& P);

struct StripReduction {
    long m = 0, n = 0;  // z = z0 + m + n tau
    cplx z0;
};
StripReduction reduce_to_strip(cplx z, cplx tau);

// quasi-periodicity brings z back to |Re| <= 1/2, |Im| <= Im(tau)/2 first
cplx theta_reduced(cplx z, const EllipticParams& P);

// theta at a shift measured in hbar: theta(z + s*hbar)
inline cplx theta_at(cplx z, const AffineShift& s, const Assignment& a, const EllipticParams& P) {
    return theta_reduced(z + eval_shift(s, a) * P.hbar, P);
}

// |theta(den)| must exceed this to count as pole-free
inline constexpr double kPoleGuard = 1e-8;
cplx guarded(cplx den, const char* what);

} // namespace ellq
