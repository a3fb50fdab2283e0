#include "ellq/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace ellq {

void QuantumSpaceConfig::validate() const {
    if (N < 2) throw ConfigError("N must be at least 2");
    if (ell <= 0 || ell % N != 0) throw ConfigError("ell must be a positive multiple of N");
    if (static_cast<int>(a.size()) != ell) throw ConfigError("need one inhomogeneity per site");
    for (cplx x : a)
        if (std::abs(theta_reduced(x, P)) < kPoleGuard) throw ConfigError("inhomogeneity on the lattice");
}

CVec DpElement::weight_num(const DepthVector& n) const {
    CVec w = anchor.eval(assign);
    for (size_t i = 0; i < n.size(); ++i) {
        w[i] -= static_cast<double>(n[i]);
        w[i + 1] += static_cast<double>(n[i]);
    }
    return w;
}

std::vector<DepthVector> depth_vectors(int N, int d) {
    std::vector<DepthVector> out;
    const size_t r = static_cast<size_t>(N - 1);
    for (int tot = 0; tot <= d; ++tot) {
        // compositions of tot into r non-negative parts, lexicographically decreasing first part
        DepthVector v(r, 0);
        std::function<void(size_t, int)> rec = [&](size_t i, int left) {
            if (i + 1 == r) {
                v[i] = left;
                out.push_back(v);
                return;
            }
            for (int x = left; x >= 0; --x) {
                v[i] = x;
                rec(i + 1, left - x);
            }
        };
        if (r == 0) continue;
        rec(0, tot);
    }
    return out;
}

static DepthVector vadd(const DepthVector& a, const DepthVector& b) {
    DepthVector r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

static Assignment merge(const Assignment& a, const Assignment& b) {
    Assignment r = a;
    for (const auto& [k, v] : b) {
        auto [it, fresh] = r.emplace(k, v);
        if (!fresh && std::abs(it->second - v) > 1e-14 * (1 + std::abs(v))) throw std::invalid_argument("conflicting values for " + k);
    }
    return r;
}

static CVec shift_by(const CVec& lam, cplx h, const CVec& w) {
    CVec r = lam;
    for (size_t i = 0; i < r.size(); ++i) r[i] += h * w[i];
    return r;
}

DpElement dp_mul(const DpElement& A, const DpElement& B) {
    if (A.N != B.N || A.dim != B.dim) throw std::invalid_argument("D_p product shape mismatch");
    DpElement C;
    C.N = A.N;
    C.dim = A.dim;
    C.depth = std::min(A.depth, B.depth);
    C.anchor = A.anchor + B.anchor;
    C.assign = merge(A.assign, B.assign);
    C.hbar = A.hbar;
    const auto dv = depth_vectors(C.N, C.depth);
    C.ev = [A, B, dv, D = C.depth](const CVec& lam) {
        DpTerms Bt = B.at(lam), out;
        const auto n = static_cast<Eigen::Index>(A.dim);
        for (const auto& d : dv) out[d] = CMat::Zero(n, n);
        for (const auto& nb : dv) {
            auto bit = Bt.find(nb);
            if (bit == Bt.end()) continue;
            DpTerms At = A.at(shift_by(lam, A.hbar, B.weight_num(nb)));
            for (const auto& [na, M] : At) {
                if (total_depth(na) + total_depth(nb) > D) continue;
                out[vadd(na, nb)] += M * bit->second;
            }
        }
        return out;
    };
    return C;
}

DpElement dp_inv(const DpElement& Q) {
    DpElement R;
    R.N = Q.N;
    R.dim = Q.dim;
    R.depth = Q.depth;
    R.anchor = -Q.anchor;
    R.assign = Q.assign;
    R.hbar = Q.hbar;
    const auto dv = depth_vectors(Q.N, Q.depth);
    R.ev = [Q, dv](const CVec& lam) {
        const CVec P = Q.anchor.eval(Q.assign);
        const auto n = static_cast<Eigen::Index>(Q.dim);
        // Q evaluated at lam - hbar (P + j.alpha), cached by j
        std::map<DepthVector, DpTerms> cache;
        auto Qat = [&](const DepthVector& j) -> const DpTerms& {
            auto it = cache.find(j);
            if (it != cache.end()) return it->second;
            CVec w = P;
            for (size_t i = 0; i < j.size(); ++i) {
                w[i] += static_cast<double>(j[i]);
                w[i + 1] -= static_cast<double>(j[i]);
            }
            return cache.emplace(j, Q.at(shift_by(lam, -Q.hbar, w))).first->second;
        };
        DpTerms out;
        const DepthVector zero(static_cast<size_t>(Q.N - 1), 0);
        for (const auto& M : dv) {
            const DpTerms& q0 = Qat(M);
            Eigen::PartialPivLU<CMat> lu(q0.at(zero));
            if (std::abs(lu.determinant()) < 1e-300) throw MathError("leading D_p term is singular");
            CMat acc = CMat::Zero(n, n);
            for (const auto& [m2, Rm] : out) {
                DepthVector nvec = M;
                bool ok = true;
                for (size_t i = 0; i < nvec.size(); ++i) {
                    nvec[i] -= m2[i];
                    if (nvec[i] < 0) ok = false;
                }
                if (!ok || nvec == zero) continue;
                const DpTerms& qs = Qat(m2);
                auto it = qs.find(nvec);
                if (it != qs.end()) acc += it->second * Rm;
            }
            out[M] = (M == zero) ? CMat(lu.inverse()) : CMat(-lu.solve(acc));
        }
        return out;
    };
    return R;
}

DpElement dp_add(const DpElement& A, const DpElement& B, cplx cb) {
    if (A.N != B.N || A.dim != B.dim) throw std::invalid_argument("D_p sum shape mismatch");
    auto coords = alpha_coords(A.anchor - B.anchor);
    DepthVector offA, offB;
    for (const auto& c : coords) {
        if (!c.is_constant() || c.constant().denominator() != 1) throw std::invalid_argument("anchors differ by a non-integral weight");
        long long d = c.constant().numerator();
        offA.push_back(d < 0 ? static_cast<int>(-d) : 0);
        offB.push_back(d > 0 ? static_cast<int>(d) : 0);
    }
    DpElement C;
    C.N = A.N;
    C.dim = A.dim;
    C.depth = std::min(A.depth + total_depth(offA), B.depth + total_depth(offB));
    C.anchor = A.anchor;
    for (size_t i = 0; i < offA.size(); ++i) C.anchor += Rational(offA[i]) * Weight::alpha(A.N, static_cast<int>(i) + 1);
    C.assign = merge(A.assign, B.assign);
    C.hbar = A.hbar;
    const auto dv = depth_vectors(C.N, C.depth);
    C.ev = [A, B, cb, offA, offB, dv, D = C.depth](const CVec& lam) {
        DpTerms out;
        const auto n = static_cast<Eigen::Index>(A.dim);
        for (const auto& d : dv) out[d] = CMat::Zero(n, n);
        for (const auto& [d, M] : A.at(lam)) {
            auto e = vadd(d, offA);
            if (total_depth(e) <= D) out[e] += M;
        }
        for (const auto& [d, M] : B.at(lam)) {
            auto e = vadd(d, offB);
            if (total_depth(e) <= D) out[e] += cb * M;
        }
        return out;
    };
    return C;
}

DpElement dp_scale(const DpElement& A, cplx c) {
    DpElement C = A;
    C.ev = [ev = A.ev, c](const CVec& lam) {
        DpTerms t = ev(lam);
        for (auto& [d, M] : t) M *= c;
        return t;
    };
    return C;
}

DpElement dp_scalar(int N, size_t dim, cplx c, int depth, cplx hbar) {
    DpElement C;
    C.N = N;
    C.dim = dim;
    C.depth = depth;
    C.anchor = Weight::zero(N);
    C.hbar = hbar;
    const auto dv = depth_vectors(N, depth);
    C.ev = [dv, dim, c](const CVec&) {
        DpTerms t;
        const auto n = static_cast<Eigen::Index>(dim);
        for (const auto& d : dv) t[d] = CMat::Zero(n, n);
        t[dv.front()] = c * CMat::Identity(n, n);
        return t;
    };
    return C;
}

std::map<DepthVector, double> dp_norms(const DpElement& A, const CVec& lam) {
    std::map<DepthVector, double> r;
    for (const auto& [d, M] : A.at(lam)) r[d] = M.size() ? M.cwiseAbs().maxCoeff() : 0.0;
    return r;
}

DpElement transfer_matrix(const EModule& X, const QuantumSpaceConfig& cfg, cplx z, int depth) {
    if (X.N != cfg.N) throw std::invalid_argument("module and quantum space disagree on N");
    if (X.trunc_depth >= 0 && depth + cfg.ell > X.trunc_depth)
        throw std::invalid_argument("depth exceeds the construction depth of " + X.tag);
    const StateBasis I0 = enumerate_zero_weight_states(cfg.N, cfg.ell);
    // depth vector of each basis vector relative to the highest weight
    std::vector<std::optional<DepthVector>> bdepth;
    for (const auto& w : X.space->weights) {
        try {
            auto d = weight_depth(w, X.highest);
            if (total_depth(d) <= depth) bdepth.emplace_back(d);
            else bdepth.emplace_back();
        } catch (const std::exception&) {
            bdepth.emplace_back();
        }
    }
    DpElement T;
    T.N = cfg.N;
    T.dim = I0.states.size();
    T.depth = depth;
    T.anchor = X.highest;
    T.assign = X.space->assign;
    T.hbar = cfg.P.hbar;
    const auto dv = depth_vectors(cfg.N, depth);
    T.ev = [X, cfg, z, I0, bdepth, dv](const CVec& lam) {
        const int N = cfg.N;
        const auto n = static_cast<Eigen::Index>(I0.states.size());
        DpTerms out;
        for (const auto& d : dv) out[d] = CMat::Zero(n, n);
        std::vector<CVec> eps;
        for (int i = 1; i <= N; ++i) eps.push_back(Weight::epsilon(N, i).eval());
        // L_{i j}(z + a_m) at lam + hbar (eps_{j_1} + ... + eps_{j_{m-1}}), keyed by (m, i, j, counts)
        std::map<std::tuple<int, int, int, std::vector<int>>, CMat> memo;
        const auto dimX = static_cast<Eigen::Index>(X.dim());
        for (size_t r = 0; r < I0.states.size(); ++r)
            for (size_t c = 0; c < I0.states.size(); ++c) {
                const auto& is = I0.states[r];
                const auto& js = I0.states[c];
                CMat Pm = CMat::Identity(dimX, dimX);
                std::vector<int> counts(static_cast<size_t>(N), 0);
                for (int m = 0; m < cfg.ell; ++m) {
                    auto key = std::make_tuple(m, is[static_cast<size_t>(m)], js[static_cast<size_t>(m)], counts);
                    auto it = memo.find(key);
                    if (it == memo.end()) {
                        CVec sh = lam;
                        for (int l = 0; l < N; ++l)
                            if (counts[static_cast<size_t>(l)]) sh = shift_by(sh, cfg.P.hbar * static_cast<double>(counts[static_cast<size_t>(l)]), eps[static_cast<size_t>(l)]);
                        it = memo.emplace(key, X.L(is[static_cast<size_t>(m)], js[static_cast<size_t>(m)], z + cfg.a[static_cast<size_t>(m)], sh)).first;
                    }
                    Pm = Pm * it->second;
                    counts[static_cast<size_t>(js[static_cast<size_t>(m)] - 1)] += 1;
                }
                for (Eigen::Index b = 0; b < dimX; ++b)
                    if (bdepth[static_cast<size_t>(b)]) out[*bdepth[static_cast<size_t>(b)]](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += Pm(b, b);
            }
        return out;
    };
    return T;
}

DpElement q_operator(const QuantumSpaceConfig& cfg, int r, const AffineShift& s, const Assignment& assign, int depth) {
    const auto& P = cfg.P;
    if (r == cfg.N) {
        // CW'_{N,x} = S(Psi_{N,x}/Psi_{N,0}) (x) S(theta(z + h/2)) = S(Psi_{N,x})
        EModule X = one_dim_module(gen_psi(cfg.N, cfg.N, s), assign, P);
        return transfer_matrix(X, cfg, 0.0, depth);
    }
    if (cfg.N != 2 || r != 1) throw std::invalid_argument("Q-operators are realized for N = 2, r = 1 and for r = N only");
    const double lr = to_double(ell_of(cfg.N, r));
    EModule W = asymptotic_sl2_module(s, assign, depth + cfg.ell, P);
    EModule Wt = twist_module(W, [P, lr](cplx z) { return theta_reduced(z - lr * P.hbar, P); }, "theta(z-l_r h)");
    return transfer_matrix(Wt, cfg, 0.0, depth);
}

DpElement q_operator(const QuantumSpaceConfig& cfg, int r, cplx u, int depth) {
    return q_operator(cfg, r, AffineShift::var("u"), Assignment{{"u", u / cfg.P.hbar}}, depth);
}

std::map<DepthVector, double> commutator_residual(const EModule& X, const EModule& Y, const QuantumSpaceConfig& cfg, cplx z,
                                                  cplx w, const CVec& lam, int depth) {
    auto tx = transfer_matrix(X, cfg, z, depth);
    auto ty = transfer_matrix(Y, cfg, w, depth);
    return dp_norms(dp_add(dp_mul(tx, ty), dp_mul(ty, tx), -1.0), lam);
}

TQReport tq_residual(const QuantumSpaceConfig& cfg, cplx k, cplx w, const CVec& lam, int depth, bool corrupt_twist) {
    if (cfg.N != 2) throw std::invalid_argument("TQ check is implemented for N = 2");
    const auto& P = cfg.P;
    TQReport rep;
    {
        double k2 = 2.0 * k.real();
        rep.k_warning = std::abs(k.imag()) < 1e-12 && std::abs(k2 - std::round(k2)) < 1e-12;
    }
    const AffineShift U = AffineShift::var("w");
    const Assignment as{{"w", w / P.hbar}};
    auto Q = [&](const AffineShift& s) { return q_operator(cfg, 1, s, as, depth); };
    auto Q2 = [&](const AffineShift& s) { return q_operator(cfg, 2, s, as, depth); };
    EModule V = vector_module(2, cplx(0.0), P);
    EModule Xm = corrupt_twist ? twist_module(V, [P](cplx z) { return theta_reduced(z + P.hbar, P) / theta_reduced(z, P); }, "wrong")
                               : twist_module(V, [P](cplx z) { return theta_reduced(z, P) / theta_reduced(z + P.hbar, P); }, "theta(z)/theta(z+h)");
    auto X = transfer_matrix(Xm, cfg, w, depth);
    auto Qw = Q(U), Qm = Q(U - 1), Qp = Q(U + 1);
    auto Qm_inv = dp_inv(Qm);
    auto lhs = dp_mul(dp_mul(X, Qw), Qm_inv);
    auto one = dp_scalar(2, lhs.dim, 1.0, depth, P.hbar);
    auto ratio = dp_mul(Qp, Qm_inv);
    auto nb = dp_mul(Q2(U - AffineShift::half(1)), dp_inv(Q2(U + AffineShift::half(1))));
    auto rhs = dp_add(one, dp_mul(ratio, nb));
    auto rhs_lit = dp_add(one, ratio);
    auto keep = [depth](std::map<DepthVector, double> m) {
        for (auto it = m.begin(); it != m.end();) it = total_depth(it->first) > depth ? m.erase(it) : std::next(it);
        return m;
    };
    rep.per_depth = keep(dp_norms(dp_add(lhs, rhs, -1.0), lam));
    rep.literal_per_depth = keep(dp_norms(dp_add(lhs, rhs_lit, -1.0), lam));
    for (const auto& [d, v] : rep.per_depth) rep.max_residual = std::max(rep.max_residual, v);
    for (const auto& [d, v] : rep.literal_per_depth) rep.literal_max = std::max(rep.literal_max, v);
    return rep;
}

std::map<DepthVector, double> shift_law_residual(const QuantumSpaceConfig& cfg, cplx u, const AffineShift& x,
                                                 const Assignment& assign, const CVec& lam, int depth) {
    if (cfg.N != 2) throw std::invalid_argument("shift law is implemented for N = 2");
    const auto& P = cfg.P;
    Assignment as = assign;
    as["u"] = u / P.hbar;
    const AffineShift U = AffineShift::var("u");
    auto lhs = dp_mul(q_operator(cfg, 1, U + x, as, depth), dp_inv(q_operator(cfg, 1, U, as, depth)));
    EModule Wx = asymptotic_sl2_module(x, as, depth + cfg.ell, P);
    EModule W0 = asymptotic_sl2_module(AffineShift(0), as, depth + cfg.ell, P);
    auto rhs = dp_mul(transfer_matrix(Wx, cfg, u, depth), dp_inv(transfer_matrix(W0, cfg, u, depth)));
    return dp_norms(dp_add(lhs, rhs, -1.0), lam);
}

CMat q_specialized(const QuantumSpaceConfig& cfg, int r, cplx u, cplx p, const CVec& lam, int depth) {
    auto Q = q_operator(cfg, r, u, depth);
    DpTerms t = Q.at(lam);
    CMat S = CMat::Zero(static_cast<Eigen::Index>(Q.dim), static_cast<Eigen::Index>(Q.dim));
    for (const auto& [d, M] : t) S += std::pow(p, total_depth(d)) * M;
    return S;
}

cplx newton_root(const std::function<cplx(cplx)>& f, cplx u0, bool* ok, int max_iter) {
    cplx u = u0, fu = f(u);
    *ok = false;
    for (int it = 0; it < max_iter; ++it) {
        const double h = 1e-6;
        cplx d = (f(u + h) - f(u - h)) / (2.0 * h);
        if (std::abs(d) < 1e-300) return u;
        cplx step = fu / d;
        double damp = 1.0;
        cplx un, fn;
        for (int k = 0; k < 40; ++k) {
            un = u - damp * step;
            fn = f(un);
            if (std::abs(fn) < std::abs(fu) || damp < 1e-6) break;
            damp *= 0.5;
        }
        u = un;
        fu = fn;
        if (std::abs(damp * step) < 1e-13 * (1 + std::abs(u))) {
            *ok = true;
            return u;
        }
    }
    *ok = std::abs(fu) < 1e-10;
    return u;
}

namespace {
Eigen::VectorXcd eigs(const CMat& M) { return Eigen::ComplexEigenSolver<CMat>(M, false).eigenvalues(); }

// follow eigenvalue `idx` of F along the segment u0 -> u1
cplx track(const std::function<CMat(cplx)>& F, cplx u0, cplx u1, Eigen::Index idx, bool* crossing, int steps = 24) {
    Eigen::VectorXcd ev = eigs(F(u0));
    cplx cur = ev(idx);
    for (int s = 1; s <= steps; ++s) {
        cplx u = u0 + (u1 - u0) * (static_cast<double>(s) / steps);
        Eigen::VectorXcd e2 = eigs(F(u));
        Eigen::Index best = 0, second = -1;
        for (Eigen::Index i = 1; i < e2.size(); ++i)
            if (std::abs(e2(i) - cur) < std::abs(e2(best) - cur)) best = i;
        for (Eigen::Index i = 0; i < e2.size(); ++i)
            if (i != best && (second < 0 || std::abs(e2(i) - cur) < std::abs(e2(second) - cur))) second = i;
        if (second >= 0 && std::abs(e2(second) - cur) < 2.0 * std::abs(e2(best) - cur)) *crossing = true;
        cur = e2(best);
    }
    return cur;
}

std::vector<cplx> find_roots(const std::function<cplx(cplx)>& f, const SearchBox& box, const std::vector<cplx>& extra = {}) {
    std::vector<cplx> starts = extra, roots;
    for (int i = 0; i < box.grid; ++i)
        for (int j = 0; j < box.grid; ++j)
            starts.emplace_back(box.re_lo + (box.re_hi - box.re_lo) * (i + 0.5) / box.grid,
                                box.im_lo + (box.im_hi - box.im_lo) * (j + 0.5) / box.grid);
    for (cplx s : starts) {
        bool ok = false;
        cplx u;
        try {
            u = newton_root(f, s, &ok);
        } catch (const std::exception&) {
            continue;
        }
        if (!ok) continue;
        if (u.real() < box.re_lo || u.real() > box.re_hi || u.imag() < box.im_lo || u.imag() > box.im_hi) continue;
        bool dup = false;
        for (cplx v : roots)
            if (std::abs(v - u) < 1e-7) dup = true;
        if (!dup) roots.push_back(u);
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag()); });
    return roots;
}
}  // namespace

BetheReport bethe_residual(const QuantumSpaceConfig& cfg, cplx p, int depth, const SearchBox& box, const CVec& lam) {
    if (cfg.N != 2) throw std::invalid_argument("Bethe check is implemented for N = 2");
    if (std::abs(p) >= 1) throw std::invalid_argument("|p| must be below 1");
    const auto& P = cfg.P;
    BetheReport rep;
    rep.truncation = std::pow(std::abs(p), depth + 1);
    auto F = [&](cplx u) { return q_specialized(cfg, 1, u, p, lam, depth); };
    auto det = [&](cplx u) { return F(u).determinant(); };
    for (cplx u : find_roots(det, box)) {
        BetheRoot br;
        br.u = u;
        Eigen::VectorXcd e0 = eigs(F(u));
        Eigen::Index idx = 0;
        for (Eigen::Index i = 1; i < e0.size(); ++i)
            if (std::abs(e0(i)) < std::abs(e0(idx))) idx = i;
        br.q_value = std::abs(e0(idx));
        cplx qp = track(F, u, u + P.hbar, idx, &br.branch_crossing);
        cplx qm = track(F, u, u - P.hbar, idx, &br.branch_crossing);
        // p^{alpha} specializes to 1/p; the Q_2 ratio is prod theta(u+a_i)/theta(u+a_i+h)
        cplx nb = 1.0;
        for (cplx a : cfg.a) nb *= theta_reduced(u + a, P) / theta_reduced(u + a + P.hbar, P);
        br.residual = std::abs(qp / qm / p * nb + 1.0);
        rep.roots.push_back(br);
    }
    if (rep.roots.empty()) rep.notes.push_back("no root found in the search box");
    for (const auto& r : rep.roots)
        if (r.branch_crossing) rep.notes.push_back("eigenvalue branch crossing near u = " + std::to_string(r.u.real()) + "+" + std::to_string(r.u.imag()) + "i");
    return rep;
}

ClosedRootReport qn_root_check(const QuantumSpaceConfig& cfg, const CVec& lam) {
    const auto& P = cfg.P;
    ClosedRootReport rep;
    auto f = [&](cplx u) { return q_specialized(cfg, cfg.N, u, 0.0, lam, 0)(0, 0); };
    for (cplx a : cfg.a) {
        cplx target = -a - 0.5 * P.hbar;
        bool ok = false;
        cplx u = newton_root(f, target + cplx(0.03, -0.02), &ok);
        rep.located.push_back(u);
        // distance modulo Z + Z tau
        cplx d = u - target;
        auto red = reduce_to_strip(d, P.tau);
        double err = ok ? std::abs(red.z0) : 1.0;
        rep.max_error = std::max(rep.max_error, err);
    }
    return rep;
}

std::vector<std::pair<double, double>> bethe_continuity(const QuantumSpaceConfig& cfg, const std::vector<double>& ps, int depth,
                                                        const SearchBox& box, const CVec& lam) {
    auto det0 = [&](cplx u) { return q_specialized(cfg, 1, u, 0.0, lam, 0).determinant(); };
    auto base = find_roots(det0, box);
    std::vector<std::pair<double, double>> out;
    for (double p : ps) {
        auto detp = [&](cplx u) { return q_specialized(cfg, 1, u, p, lam, depth).determinant(); };
        double worst = 0;
        for (cplx b : base) {
            bool ok = false;
            cplx u = newton_root(detp, b, &ok);
            worst = std::max(worst, ok ? std::abs(u - b) : 1.0);
        }
        out.emplace_back(p, base.empty() ? 1.0 : worst);
    }
    return out;
}

} // namespace ellq
