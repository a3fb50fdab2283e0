#include <doctest.h>

#include "ellq/checks.hpp"
#include "oracles.hpp"

using namespace ellq;

namespace {
const EllipticParams P;
}

TEST_CASE("matrix equals the E_ij expansion") {
    Sampler S(21);
    for (int N : {2, 3, 4}) {
        for (int s = 0; s < 5; ++s) {
            cplx z = S.point();
            CVec lam = S.lam(N);
            CMat R = r_matrix(N, z, lam, P).m;
            CMat O = oracle::r_matrix(N, z, lam, P.tau, P.hbar);
            CHECK((R - O).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(r_entry(N, z, lam, 1, 2, 2, 1, P) - O(N, 1)) < 1e-12);
        }
    }
}

TEST_CASE("R(0) is the flip") {
    CVec lam{{0.3, 0.1}, {-0.2, 0}, {0.05, -0.04}};
    CMat R = r_matrix(3, 0.0, lam, P).m;
    CMat F = CMat::Zero(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) F(j * 3 + i, i * 3 + j) = 1;
    CHECK((R - F).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("weight conservation") {
    CVec lam{{0.3, 0.1}, {-0.2, 0}, {0.05, -0.04}};
    cplx z(0.21, 0.07);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int p = 1; p <= 3; ++p)
                for (int q = 1; q <= 3; ++q) {
                    bool same = (p == i && q == j) || (p == j && q == i);
                    if (!same) CHECK(r_entry(3, z, lam, i, j, p, q, P) == cplx(0));
                }
}

TEST_CASE("dynamical Yang-Baxter, seeded samples") {
    Sampler S(22);
    for (int N : {2, 3, 4})
        for (int s = 0; s < 10; ++s) {
            double r = S.try_sample([&](Sampler& x) { return dybe_residual(N, x.point(), x.point(), x.lam(N), P); });
            CHECK(r < 1e-10);
        }
}

TEST_CASE("a wrong leg shift breaks dYBE") {
    // dropping the dynamical shift from one leg must be visible
    const int N = 2;
    CVec lam{{0.31, 0.05}, {-0.2, 0}};
    cplx z(0.3, 0.04), w(-0.12, 0.02);
    CMat lhs = r_on_legs(N, 1, 2, z - w, lam, 0, P) * r_on_legs(N, 1, 3, z, lam, 0, P) * r_on_legs(N, 2, 3, w, lam, 1, P);
    CMat rhs = r_on_legs(N, 2, 3, w, lam, 0, P) * r_on_legs(N, 1, 3, z, lam, 2, P) * r_on_legs(N, 1, 2, z - w, lam, 0, P);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() > 1e-3);
    CHECK(dybe_residual(N, z, w, lam, P) < 1e-12);
}
