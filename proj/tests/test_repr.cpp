#include <doctest.h>

#include "ellq/checks.hpp"
#include "oracles.hpp"

using namespace ellq;

namespace {
const EllipticParams P;
cplx th(cplx z) { return oracle::theta_product(z, P.tau); }
}

TEST_CASE("vector module matrices from the R-matrix") {
    // [L_ij(z)]_{lk} = theta(z+a h+h)/theta(z+a h) R^{jk}_{il}(z + a h)
    const int N = 3;
    cplx a(0.2, 0.05), z(0.31, 0.04);
    CVec lam{{0.41, 0.02}, {-0.13, 0}, {0.22, -0.01}};
    auto V = vector_module(N, a, P);
    CMat R = oracle::r_matrix(N, z + a * P.hbar, lam, P.tau, P.hbar);
    cplx pre = th(z + a * P.hbar + P.hbar) / th(z + a * P.hbar);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            CMat L = V.L(i, j, z, lam);
            for (int l = 1; l <= N; ++l)
                for (int k = 1; k <= N; ++k)
                    CHECK(std::abs(L(l - 1, k - 1) - pre * R((i - 1) * N + (l - 1), (j - 1) * N + (k - 1))) < 1e-12);
        }
}

TEST_CASE("RLL on V(a), V(a) x V(b), the sl2 asymptotic module") {
    Sampler S(31);
    for (int s = 0; s < 4; ++s) {
        cplx z = S.point(), w = S.point();
        for (int N : {2, 3}) {
            CVec lam = S.lam(N);
            auto Va = vector_module(N, S.point(0.4, 0.1), P), Vb = vector_module(N, S.point(0.4, 0.1), P);
            CHECK(rll_residual(Va, z, w, lam) < 1e-10);
            CHECK(rll_residual(tensor_module(Va, Vb), z, w, lam) < 1e-10);
        }
        CVec lam = S.lam(2);
        CHECK(rll_residual(asymptotic_sl2_module(cplx(0.7, 0.2), 6, P), z, w, lam, 6, true) < 1e-10);
        CHECK(rll_residual(asymptotic_sl2_module(AffineShift(2), {}, 2, P), z, w, lam, 0, true) < 1e-10);
    }
}

TEST_CASE("asymptotic module, lowering action out of v_1") {
    // c(w) v_1 = -theta(w - lam)/theta(w) v_0, lam = lam_12
    auto W = asymptotic_sl2_module(cplx(0.7, 0.2), 4, P);
    CVec lam{{0.37, 0.05}, {-0.2, 0}};
    cplx w(0.21, -0.03);
    CMat c = W.L(2, 1, w, lam);
    cplx l12 = lam[0] - lam[1];
    CHECK(std::abs(c(0, 1) + th(w - l12) / th(w)) < 1e-12);
    CHECK(W.trunc_depth == 4);
}

TEST_CASE("composition is associative") {
    auto V = vector_module(3, cplx(0.1), P);
    auto A = V.op(1, 2), B = V.op(2, 3), C = V.op(3, 1);
    auto l = compose(compose(A, B, P.hbar), C, P.hbar), r = compose(A, compose(B, C, P.hbar), P.hbar);
    CVec lam{{0.41, 0.02}, {-0.13, 0}, {0.22, -0.01}};
    cplx z(0.2, 0.03);
    CHECK((l(z, lam) - r(z, lam)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quantum minors on the vector representation") {
    const int N = 3;
    auto V = vector_module(N, cplx(0), P);
    auto g = vector_gauge(N, P);
    CVec lam{{0.41, 0.02}, {-0.13, 0}, {0.22, -0.01}};
    Sampler S(32);
    for (int s = 0; s < 5; ++s) {
        cplx z = S.point();
        for (int k = 1; k <= N; ++k) {
            CMat M = gauge(quantum_minor(V, k), g, P.hbar)(z, lam);
            cplx f = th(z + double(k) * P.hbar) / th(z + double(k - 1) * P.hbar);
            for (int i = 1; i <= N; ++i) CHECK(std::abs(M(i - 1, i - 1) - (i > N - k ? f : 1.0)) < 1e-10);
        }
        CMat D = quantum_minor(V, N)(z, lam);
        cplx f = th(z + double(N) * P.hbar) / th(z + double(N - 1) * P.hbar);
        CHECK((D - f * CMat::Identity(N, N)).cwiseAbs().maxCoeff() < 1e-10);
    }
    // the literal reading keeps a single permutation and loses the table
    CMat lit = gauge(quantum_minor(V, 2, MinorReading::Literal), g, P.hbar)(cplx(0.2, 0.03), lam);
    CMat good = gauge(quantum_minor(V, 2), g, P.hbar)(cplx(0.2, 0.03), lam);
    CHECK((lit - good).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("minor traces against the product q-character") {
    const int N = 3;
    auto V0 = vector_module(N, cplx(0), P), V1 = vector_module(N, cplx(1), P);
    auto T = tensor_module(V0, V1);
    auto gT = tensor_gauge(vector_gauge(N, P), vector_gauge(N, P), V1);
    QCharacter q = qchar_evaluation(make_partition({1}, N), 0, N) * qchar_evaluation(make_partition({1}, N), 1, N);
    CVec lam{{0.41, 0.02}, {-0.13, 0}, {0.22, -0.01}};
    cplx z(-0.14, 0.06);
    for (int k = 1; k <= N; ++k) {
        CMat M = gauge(quantum_minor(T, k), gT, P.hbar)(z, lam);
        std::map<Weight, cplx> want;
        for (const auto& [e, c] : q.terms()) want[e.weight()] += double(c) * minor_value(e, k, z, P);
        for (const auto& [w, v] : want) {
            cplx tr = 0;
            for (auto b : T.space->indices_of(w)) tr += M(Eigen::Index(b), Eigen::Index(b));
            CHECK(std::abs(tr - v) < 1e-9);
        }
    }
}

TEST_CASE("highest vector is singular") {
    const int N = 3;
    auto V = vector_module(N, cplx(0.3), P);
    auto g = vector_gauge(N, P);
    CVec lam{{0.41, 0.02}, {-0.13, 0}, {0.22, -0.01}};
    cplx z(0.12, 0.02);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j < i; ++j) CHECK(gauge(V.op(i, j), g, P.hbar)(z, lam).col(0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("small elliptic group relations") {
    CVec lam{{0.41, 0.02}, {-0.13, 0}, {0.22, -0.01}};
    auto rep = small_e_check(vector_module(3, cplx(0.3), P), cplx(0.3), lam, {{0.31, 0.05}, {-0.17, 0.02}, {0.1, 0.07}});
    CHECK(rep.z_spread < 1e-9);
    CHECK(rep.commuting < 1e-9);
    CHECK(rep.exchange < 1e-9);
    CHECK(rep.four_term < 1e-9);
    // wrong evaluation point shows up as z-dependence
    auto bad = small_e_check(vector_module(3, cplx(0.0), P), cplx(0.3), lam, {{0.31, 0.05}, {-0.17, 0.02}});
    CHECK(bad.z_spread > 1e-6);
}
