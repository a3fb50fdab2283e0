#include "ellq/theta.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ellq {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTermBound = 1e200;
const cplx I{0.0, 1.0};
}

cplx theta_series(cplx z, cplx tau, int J) {
    // t_j = q^{(j+1/2)^2} x^{j+1/2}, q = e^{i pi tau}, x = e^{2 i pi (z+1/2)};
    // t_{j+1}/t_j = q^{2j+2} x, walked outward from j = 0 and j = -1.
    const cplx q2 = std::exp(2.0 * I * kPi * tau);
    const cplx x = std::exp(2.0 * I * kPi * (z + 0.5));
    const cplx xinv = 1.0 / x;
    cplx t0 = std::exp(I * kPi * tau / 4.0 + I * kPi * (z + 0.5));
    if (!std::isfinite(std::abs(t0)) || std::abs(t0) > kTermBound) throw StripError();

    cplx sum = 0.0;
    cplx t = t0, qpow = 1.0;  // qpow = q^{2j} at step j
    for (int j = 0; j < J; ++j) {
        sum += t;
        qpow *= q2;
        t *= qpow * x;
        if (!std::isfinite(std::abs(t)) || std::abs(t) > kTermBound) throw StripError();
    }
    // t_{j-1} = t_j q^{-2j} x^{-1}; for j <= 0 that is q^{2|j|} x^{-1}
    t = t0 * xinv;
    qpow = 1.0;
    for (int j = -1; j >= -J; --j) {
        if (!std::isfinite(std::abs(t)) || std::abs(t) > kTermBound) throw StripError();
        sum += t;
        qpow *= q2;
        t *= qpow * xinv;
    }
    return -sum;
}

cplx theta(cplx z, const EllipticParams& P) { return theta_series(z, P.tau, P.series_terms); }

StripReduction reduce_to_strip(cplx z, cplx tau) {
    StripReduction r;
    r.n = std::lround(z.imag() / tau.imag());
    cplx w = z - static_cast<double>(r.n) * tau;
    r.m = std::lround(w.real());
    r.z0 = w - static_cast<double>(r.m);
    return r;
}

cplx theta_reduced(cplx z, const EllipticParams& P) {
    auto r = reduce_to_strip(z, P.tau);
    cplx base = theta(r.z0, P);
    if (r.m == 0 && r.n == 0) return base;
    // theta(w + n tau) = (-1)^n exp(-i pi n^2 tau - 2 i pi n w) theta(w), w = z0 + m
    const double n = static_cast<double>(r.n);
    const cplx w = r.z0 + static_cast<double>(r.m);
    const double sign = ((r.m + r.n) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(-I * kPi * n * n * P.tau - 2.0 * I * kPi * n * w) * base;
}

bool hbar_is_generic(const EllipticParams& P, int bound) {
    for (int p = 1; p <= bound; ++p) {
        cplx w = static_cast<double>(p) * P.hbar;
        long n = std::lround(w.imag() / P.tau.imag());
        cplx rest = w - static_cast<double>(n) * P.tau;
        long m = std::lround(rest.real());
        if (std::labs(n) > bound || std::labs(m) > bound) continue;
        if (std::abs(rest - static_cast<double>(m)) < P.tol) return false;
    }
    return true;
}

void validate(const EllipticParams& P) {
    if (!(P.tau.imag() > 0)) throw ConfigError("Im(tau) must be positive");
    if (P.series_terms < 1) throw ConfigError("series_terms must be positive");
    if (!(P.tol > 0)) throw ConfigError("tol must be positive");
    if (!hbar_is_generic(P)) throw ConfigError("hbar fails the genericity probe (p*hbar in Z+Z*tau)");
}

cplx guarded(cplx den, const char* what) {
    if (std::abs(den) <= kPoleGuard) throw PoleError(std::string("pole: ") + what);
    return den;
}

} // namespace ellq
