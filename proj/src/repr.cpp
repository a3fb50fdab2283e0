#include "ellq/repr.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ellq {

void GradedSpace::finalize() {
    numeric.clear();
    for (const auto& w : weights) numeric.push_back(w.eval(assign));
    coord_sum.resize(weights.size(), 0.0);
}

CVec GradedSpace::gl_weight(size_t b) const {
    CVec v = numeric[b];
    for (auto& x : v) x += coord_sum[b] / static_cast<double>(N);
    return v;
}

std::vector<size_t> GradedSpace::indices_of(const Weight& w) const {
    std::vector<size_t> r;
    for (size_t b = 0; b < weights.size(); ++b)
        if (weights[b] == w) r.push_back(b);
    return r;
}

CVec shifted(const CVec& lam, cplx hbar, const CVec& w, double c) {
    CVec r = lam;
    for (size_t i = 0; i < r.size(); ++i) r[i] += c * hbar * w[i];
    return r;
}

DifferenceOperator compose(const DifferenceOperator& A, const DifferenceOperator& B, cplx hbar) {
    DifferenceOperator C;
    C.src = B.src;
    C.tgt = A.tgt;
    C.alpha = A.alpha + B.alpha;
    C.beta = A.beta + B.beta;
    C.beta_num = C.beta.eval();
    C.ev = [A, B, hbar](cplx z, const CVec& lam) { return CMat(A.ev(z, lam) * B.ev(z, shifted(lam, hbar, A.beta_num))); };
    return C;
}

DifferenceOperator spectral_shift(const DifferenceOperator& A, cplx s) {
    DifferenceOperator C = A;
    C.ev = [ev = A.ev, s](cplx z, const CVec& lam) { return ev(z + s, lam); };
    return C;
}

DifferenceOperator EModule::op(int i, int j) const {
    DifferenceOperator D;
    D.src = space;
    D.tgt = space;
    D.alpha = Weight::epsilon(N, i);
    D.beta = Weight::epsilon(N, j);
    D.beta_num = D.beta.eval();
    D.ev = [L = Lfn, i, j](cplx z, const CVec& lam) { return L(i, j, z, lam); };
    return D;
}

static std::shared_ptr<GradedSpace> vector_space(int N) {
    auto sp = std::make_shared<GradedSpace>();
    sp->N = N;
    for (int i = 1; i <= N; ++i) {
        sp->labels.push_back("v" + std::to_string(i));
        sp->weights.push_back(Weight::epsilon(N, i));
        sp->coord_sum.push_back(1.0);
    }
    sp->finalize();
    return sp;
}

EModule vector_module(int N, cplx a, const EllipticParams& P) {
    EModule X;
    X.N = N;
    X.P = P;
    X.space = vector_space(N);
    X.highest = Weight::epsilon(N, 1);
    X.tag = "V(" + std::to_string(a.real()) + (a.imag() != 0 ? "+" + std::to_string(a.imag()) + "i" : "") + ")";
    X.Lfn = [N, a, P](int i, int j, cplx z, const CVec& lam) {
        const cplx za = z + a * P.hbar;
        const cplx f = theta_reduced(za + P.hbar, P) / guarded(theta_reduced(za, P), "theta(z+a hbar)");
        CMat M = CMat::Zero(N, N);
        // L_ij v_k = sum_l f R^{jk}_{il} v_l; only k,l with {j,k} = {i,l} survive
        for (int k = 1; k <= N; ++k)
            for (int l = 1; l <= N; ++l) {
                if (!((j == i && k == l) || (j == l && k == i))) continue;
                cplx r = r_entry(N, za, lam, j, k, i, l, P);
                if (r != cplx(0.0)) M(l - 1, k - 1) = f * r;
            }
        return M;
    };
    return X;
}

EModule vector_module(int N, const AffineShift& a, const Assignment& assign, const EllipticParams& P) {
    EModule X = vector_module(N, eval_shift(a, assign), P);
    X.tag = "V(" + a.str() + ")";
    return X;
}

EModule tensor_module(const EModule& X, const EModule& Y) {
    if (X.N != Y.N) throw std::invalid_argument("tensor of modules with different N");
    if (X.P.tau != Y.P.tau || X.P.hbar != Y.P.hbar) throw std::invalid_argument("tensor of modules with different parameters");
    const int N = X.N;
    auto sp = std::make_shared<GradedSpace>();
    sp->N = N;
    sp->assign = X.space->assign;
    for (const auto& [k, v] : Y.space->assign) sp->assign[k] = v;
    for (size_t b = 0; b < X.dim(); ++b)
        for (size_t c = 0; c < Y.dim(); ++c) {
            sp->labels.push_back(X.space->labels[b] + "|" + Y.space->labels[c]);
            sp->weights.push_back(X.space->weights[b] + Y.space->weights[c]);
            sp->coord_sum.push_back(X.space->coord_sum[b] + Y.space->coord_sum[c]);
        }
    sp->finalize();
    EModule T;
    T.N = N;
    T.P = X.P;
    T.space = sp;
    T.highest = X.highest + Y.highest;
    T.tag = X.tag + "(x)" + Y.tag;
    T.Lfn = [X, Y, N](int i, int j, cplx z, const CVec& lam) {
        const size_t nb = X.dim(), nc = Y.dim();
        CMat M = CMat::Zero(static_cast<Eigen::Index>(nb * nc), static_cast<Eigen::Index>(nb * nc));
        for (int k = 1; k <= N; ++k) {
            CMat Ly = Y.L(k, j, z, lam);
            for (size_t c2 = 0; c2 < nc; ++c2) {
                if (Ly.row(static_cast<Eigen::Index>(c2)).isZero(0)) continue;
                CMat Lx = X.L(i, k, z, shifted(lam, X.P.hbar, Y.space->numeric[c2]));
                for (size_t b2 = 0; b2 < nb; ++b2)
                    for (size_t b = 0; b < nb; ++b) {
                        cplx x = Lx(static_cast<Eigen::Index>(b2), static_cast<Eigen::Index>(b));
                        if (x == cplx(0.0)) continue;
                        for (size_t c = 0; c < nc; ++c)
                            M(static_cast<Eigen::Index>(b2 * nc + c2), static_cast<Eigen::Index>(b * nc + c)) +=
                                x * Ly(static_cast<Eigen::Index>(c2), static_cast<Eigen::Index>(c));
                    }
            }
        }
        return M;
    };
    return T;
}

EModule twist_module(const EModule& X, std::function<cplx(cplx)> g, const std::string& what) {
    EModule T = X;
    T.tag = X.tag + "(x)S(" + what + ")";
    T.Lfn = [L = X.Lfn, g](int i, int j, cplx z, const CVec& lam) { return CMat(g(z) * L(i, j, z, lam)); };
    return T;
}

EModule one_dim_module(const EWeight& e, const Assignment& assign, const EllipticParams& P) {
    const int N = e.N();
    auto f = components(e);
    for (const auto& s : f)
        if (s != f.front()) throw std::invalid_argument("one-dimensional module needs equal components");
    auto sp = std::make_shared<GradedSpace>();
    sp->N = N;
    sp->labels = {"1"};
    sp->weights = {e.weight()};
    sp->assign = assign;
    sp->finalize();
    EModule X;
    X.N = N;
    X.P = P;
    X.space = sp;
    X.highest = sp->weights.front();
    X.tag = "S(" + e.str() + ")";
    X.Lfn = [g = f.front(), assign, P](int i, int j, cplx z, const CVec&) {
        CMat M = CMat::Zero(1, 1);
        if (i == j) M(0, 0) = slot_value(g, z, assign, P);
        return M;
    };
    return X;
}

EModule spectral_pullback(const EModule& X, cplx s) {
    EModule T = X;
    T.Lfn = [L = X.Lfn, s](int i, int j, cplx z, const CVec& lam) { return L(i, j, z + s, lam); };
    return T;
}

double rll_residual(const EModule& X, cplx z, cplx w, const CVec& lam, size_t restrict, bool relative) {
    const int N = X.N;
    const auto& P = X.P;
    const auto& sp = *X.space;
    const auto n = static_cast<Eigen::Index>(X.dim());
    const Eigen::Index lim = restrict ? static_cast<Eigen::Index>(std::min<size_t>(restrict, X.dim())) : n;
    std::vector<CVec> eps;
    for (int i = 1; i <= N; ++i) eps.push_back(Weight::epsilon(N, i).eval());
    auto idx = [N](int a, int b) { return (a - 1) * N + (b - 1); };
    // L(p,i,z)(lam), L(q,j,w)(lam + hbar eps_i), L(n,q,w)(lam), L(m,p,z)(lam + hbar eps_q)
    std::vector<CMat> Lz(N * N), Lw(N * N);
    std::vector<std::vector<CMat>> Lw_sh(N, std::vector<CMat>(N * N)), Lz_sh(N, std::vector<CMat>(N * N));
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b) {
            Lz[idx(a, b)] = X.L(a, b, z, lam);
            Lw[idx(a, b)] = X.L(a, b, w, lam);
            for (int s = 1; s <= N; ++s) {
                CVec ls = shifted(lam, P.hbar, eps[s - 1]);
                Lw_sh[s - 1][idx(a, b)] = X.L(a, b, w, ls);
                Lz_sh[s - 1][idx(a, b)] = X.L(a, b, z, ls);
            }
        }
    RMatrixValue R0 = r_matrix(N, z - w, lam, P);
    std::vector<RMatrixValue> Rb;
    for (Eigen::Index b = 0; b < n; ++b) Rb.push_back(r_matrix(N, z - w, shifted(lam, P.hbar, sp.numeric[static_cast<size_t>(b)]), P));
    double err = 0, scale = 1;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int m = 1; m <= N; ++m)
                for (int nn = 1; nn <= N; ++nn) {
                    CMat lhs = CMat::Zero(n, n), rhs = CMat::Zero(n, n);
                    for (int p = 1; p <= N; ++p)
                        for (int q = 1; q <= N; ++q) {
                            CMat prod = Lz[idx(p, i)] * Lw_sh[i - 1][idx(q, j)];
                            for (Eigen::Index b = 0; b < n; ++b) lhs.row(b) += Rb[static_cast<size_t>(b)].entry(p, q, m, nn) * prod.row(b);
                            cplx r = R0.entry(i, j, p, q);
                            if (r != cplx(0.0)) rhs += r * (Lw[idx(nn, q)] * Lz_sh[q - 1][idx(m, p)]);
                        }
                    err = std::max(err, (lhs - rhs).topLeftCorner(lim, lim).cwiseAbs().maxCoeff());
                    scale = std::max(scale, rhs.topLeftCorner(lim, lim).cwiseAbs().maxCoeff());
                }
    return relative ? err / scale : err;
}

namespace {
int perm_sign(const std::vector<int>& p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}
}  // namespace

DifferenceOperator quantum_minor(const EModule& X, int k, MinorReading reading) {
    const int N = X.N;
    if (k < 1 || k > N) throw std::out_of_range("minor size out of range");
    DifferenceOperator D;
    D.src = X.space;
    D.tgt = X.space;
    D.alpha = -Weight::varpi(N, N - k);
    D.beta = D.alpha;
    D.beta_num = D.beta.eval();
    const auto& P = X.P;
    D.ev = [X, N, k, reading, P](cplx z, const CVec& lam) {
        const auto n = static_cast<Eigen::Index>(X.dim());
        std::vector<int> letters(static_cast<size_t>(k));
        std::iota(letters.begin(), letters.end(), N - k + 1);
        CMat tot = CMat::Zero(n, n);
        auto chain = [&](const std::vector<int>& sigma) {  // sigma over letters N-k+1..N
            CMat Pm = CMat::Identity(n, n);
            CVec sh = lam;
            for (int i = N; i >= N - k + 1; --i) {
                int si = sigma[static_cast<size_t>(i - (N - k + 1))];
                Pm = Pm * X.L(si, i, z + static_cast<double>(N - i) * P.hbar, sh);
                sh = shifted(sh, P.hbar, Weight::epsilon(N, i).eval());
            }
            return Pm;
        };
        if (reading == MinorReading::LastLetters) {
            std::vector<int> sigma = letters;
            do {
                tot += static_cast<double>(perm_sign(sigma)) * chain(sigma);
            } while (std::next_permutation(sigma.begin(), sigma.end()));
        } else {
            // permutations fixing the last k letters: the chain is diagonal, weighted by the sign sum over S_{N-k}
            int signs = (N - k <= 1) ? 1 : 0;
            tot = static_cast<double>(signs) * chain(letters);
        }
        auto Theta = [&](const CVec& l) {
            cplx r = 1.0;
            for (int a = N - k + 1; a <= N; ++a)
                for (int b = a + 1; b <= N; ++b) r *= theta_reduced(lambda_ij(l, a, b), P);
            return r;
        };
        const cplx t0 = Theta(lam);
        for (Eigen::Index b = 0; b < n; ++b)
            tot.row(b) *= t0 / guarded(Theta(shifted(lam, P.hbar, X.space->numeric[static_cast<size_t>(b)])), "Theta_k");
        return tot;
    };
    return D;
}

DifferenceOperator gauge(const DifferenceOperator& A, const GaugeFn& phi, cplx hbar) {
    DifferenceOperator G = A;
    G.ev = [ev = A.ev, phi, hbar, beta = A.beta_num](cplx z, const CVec& lam) {
        CMat M = ev(z, lam);
        CVec ls = shifted(lam, hbar, beta);
        for (Eigen::Index b2 = 0; b2 < M.rows(); ++b2)
            for (Eigen::Index b = 0; b < M.cols(); ++b)
                if (M(b2, b) != cplx(0.0)) M(b2, b) *= phi(static_cast<size_t>(b), ls) / phi(static_cast<size_t>(b2), lam);
        return M;
    };
    return G;
}

GaugeFn vector_gauge(int N, const EllipticParams& P) {
    return [N, P](size_t b, const CVec& lam) {
        cplx r = 1.0;
        const int i = static_cast<int>(b) + 1;
        for (int l = i + 1; l <= N; ++l) r *= theta_reduced(lambda_ij(lam, i, l) + P.hbar, P);
        return r;
    };
}

GaugeFn tensor_gauge(const GaugeFn& gx, const GaugeFn& gy, const EModule& Y) {
    const size_t nc = Y.dim();
    auto sp = Y.space;
    cplx h = Y.P.hbar;
    return [gx, gy, nc, sp, h](size_t bc, const CVec& lam) {
        size_t b = bc / nc, c = bc % nc;
        return gx(b, shifted(lam, h, sp->numeric[c])) * gy(c, lam);
    };
}

EModule asymptotic_sl2_module(const AffineShift& Lambda, const Assignment& assign, int depth, const EllipticParams& P) {
    if (depth < 1) throw std::invalid_argument("asymptotic module depth must be >= 1");
    auto sp = std::make_shared<GradedSpace>();
    sp->N = 2;
    sp->assign = assign;
    for (int k = 0; k <= depth; ++k) {
        sp->labels.push_back("v" + std::to_string(k));
        sp->weights.push_back(Weight({Lambda - AffineShift(k), AffineShift(k)}));
        sp->coord_sum.push_back(eval_shift(Lambda, assign));
    }
    sp->finalize();
    EModule X;
    X.N = 2;
    X.P = P;
    X.space = sp;
    X.highest = sp->weights.front();
    X.tag = "CW(" + Lambda.str() + ")";
    X.trunc_depth = depth;
    const cplx Lam = eval_shift(Lambda, assign);
    X.Lfn = [Lam, depth, P](int i, int j, cplx w, const CVec& lam) {
        const cplx h = P.hbar;
        const cplx l = lam[0] - lam[1];
        auto th = [&P](cplx x) { return theta_reduced(x, P); };
        const cplx tw = guarded(th(w), "theta(w)");
        CMat M = CMat::Zero(depth + 1, depth + 1);
        for (int k = 0; k <= depth; ++k) {
            const double kd = k;
            if (i == 1 && j == 1)
                M(k, k) = th(w + (Lam - kd) * h) / tw * th(l + (Lam - kd + 1.0) * h) / guarded(th(l + (1.0 - kd) * h), "a(w) denominator");
            else if (i == 2 && j == 2)
                M(k, k) = th(w + kd * h) / tw * th(l - (kd + 1.0) * h) * th(l - kd * h) / guarded(th(l - h) * th(l), "d(w) denominator");
            else if (i == 1 && j == 2 && k < depth)
                M(k + 1, k) = th(w + l + (Lam - kd - 1.0) * h) / tw * th((Lam - kd) * h) * th(h) / guarded(th(l - h) * th(l), "b(w) denominator");
            else if (i == 2 && j == 1 && k > 0)
                M(k - 1, k) = -th(w - l + (kd - 1.0) * h) / tw * th(kd * h) / th(h);
        }
        return M;
    };
    return X;
}

EModule asymptotic_sl2_module(cplx Lambda, int depth, const EllipticParams& P) {
    return asymptotic_sl2_module(AffineShift::var("Lambda"), Assignment{{"Lambda", Lambda}}, depth, P);
}

std::map<std::pair<int, int>, DifferenceOperator> small_e_extract(const EModule& X, cplx a) {
    const int N = X.N;
    std::map<std::pair<int, int>, DifferenceOperator> t;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            // t_{ji} from L_ij, bidegree (eps_i, eps_j)
            DifferenceOperator D;
            D.src = X.space;
            D.tgt = X.space;
            D.alpha = Weight::epsilon(N, i);
            D.beta = Weight::epsilon(N, j);
            D.beta_num = D.beta.eval();
            D.ev = [X, a, i, j](cplx z, const CVec& lam) {
                const auto& P = X.P;
                const cplx zz = z + a * P.hbar;
                CMat M = X.L(i, j, z, lam);
                for (Eigen::Index b2 = 0; b2 < M.rows(); ++b2) {
                    CVec l2 = shifted(lam, P.hbar, X.space->gl_weight(static_cast<size_t>(b2)));
                    M.row(b2) *= theta_reduced(zz, P) / guarded(theta_reduced(zz + l2[static_cast<size_t>(i - 1)] - lam[static_cast<size_t>(j - 1)], P), "evaluation factor");
                }
                return M;
            };
            t.emplace(std::make_pair(j, i), D);
        }
    return t;
}

SmallGroupReport small_e_check(const EModule& X, cplx a, const CVec& lam, const std::vector<cplx>& zs) {
    if (zs.empty()) throw std::invalid_argument("need sample points");
    const int N = X.N;
    const auto& P = X.P;
    auto t = small_e_extract(X, a);
    SmallGroupReport rep;
    for (const auto& [key, op] : t) {
        CMat base = op(zs.front(), lam);
        for (size_t s = 1; s < zs.size(); ++s) rep.z_spread = std::max(rep.z_spread, (op(zs[s], lam) - base).cwiseAbs().maxCoeff());
    }
    auto T = [&](int i, int j, const CVec& l) { return t.at({i, j})(zs.front(), l); };
    auto eps = [N](int i) { return Weight::epsilon(N, i).eval(); };
    // t_ij has bidegree (eps_j, eps_i): the right factor sees lam + hbar eps_i
    auto comp = [&](int i, int j, int k, int l) { return CMat(T(i, j, lam) * T(k, l, shifted(lam, P.hbar, eps(i)))); };
    auto th = [&P](cplx x) { return theta_reduced(x, P); };
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = 1; k <= N; ++k) {
                rep.commuting = std::max(rep.commuting, (comp(i, j, i, k) - comp(i, k, i, j)).cwiseAbs().maxCoeff());
                if (i != j) {
                    const cplx l1 = lambda_ij(lam, i, j);
                    const cplx f = th(l1 - P.hbar) / th(l1 + P.hbar);
                    rep.exchange = std::max(rep.exchange, (comp(i, k, j, k) - f * comp(j, k, i, k)).cwiseAbs().maxCoeff());
                }
                for (int l = 1; l <= N; ++l) {
                    if (i == k || j == l) continue;
                    CMat A = comp(i, j, k, l), B = comp(k, l, i, j), C = comp(i, l, k, j);
                    const cplx l1 = lambda_ij(lam, i, k);
                    for (Eigen::Index b2 = 0; b2 < A.rows(); ++b2) {
                        CVec g = shifted(lam, P.hbar, X.space->numeric[static_cast<size_t>(b2)]);
                        const cplx l2 = lambda_ij(g, j, l);
                        auto row = (th(l2 - P.hbar) / th(l2)) * A.row(b2) - (th(l1 - P.hbar) / th(l1)) * B.row(b2) -
                                   (th(l1 + l2) * th(-P.hbar) / (th(l1) * th(l2))) * C.row(b2);
                        rep.four_term = std::max(rep.four_term, row.cwiseAbs().maxCoeff());
                    }
                }
            }
    return rep;
}

} // namespace ellq
