#include "ellq/tableaux.hpp"

#include <algorithm>
#include <stdexcept>

namespace ellq {

int Partition::size() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

Partition make_partition(std::vector<int> parts, int N) {
    if (static_cast<int>(parts.size()) > N) {
        for (size_t i = static_cast<size_t>(N); i < parts.size(); ++i)
            if (parts[i] != 0) throw std::invalid_argument("partition has more than N parts");
        parts.resize(static_cast<size_t>(N));
    }
    parts.resize(static_cast<size_t>(N), 0);
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 0) throw std::invalid_argument("negative part");
        if (i && parts[i] > parts[i - 1]) throw std::invalid_argument("parts must be weakly decreasing");
    }
    return Partition{parts};
}

std::vector<int> Tableau::reading() const {
    std::vector<int> r;
    for (size_t i = rows.size(); i-- > 0;)
        for (size_t j = rows[i].size(); j-- > 0;) r.push_back(rows[i][j]);
    return r;
}

namespace {
struct Filler {
    const Partition& mu;
    int N;
    std::vector<std::pair<int, int>> cells;  // reading order (i,j)
    Tableau cur;
    std::vector<Tableau> out;

    void go(size_t idx) {
        if (idx == cells.size()) {
            out.push_back(cur);
            return;
        }
        auto [i, j] = cells[idx];
        int lo = 1, hi = N;
        // left neighbour in the picture is (i, j+1), already filled
        if (j < mu.parts[static_cast<size_t>(i - 1)]) lo = std::max(lo, cur.at(i, j + 1));
        // the row above is i+1, already filled
        if (i < N && j <= mu.parts[static_cast<size_t>(i)]) lo = std::max(lo, cur.at(i + 1, j) + 1);
        for (int v = lo; v <= hi; ++v) {
            cur.rows[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = v;
            go(idx + 1);
        }
    }
};
}  // namespace

std::vector<Tableau> enumerate_tableaux(const Partition& mu, int N) {
    Partition m = make_partition(mu.parts, N);
    Filler f{m, N, {}, {}, {}};
    f.cur.shape = m;
    for (int i = 1; i <= N; ++i) f.cur.rows.emplace_back(static_cast<size_t>(m.parts[static_cast<size_t>(i - 1)]), 0);
    for (int i = N; i >= 1; --i)
        for (int j = m.parts[static_cast<size_t>(i - 1)]; j >= 1; --j) f.cells.emplace_back(i, j);
    f.go(0);
    return f.out;
}

EWeight tableau_monomial(const Tableau& T, const AffineShift& a, int N) {
    EWeight e(N);
    for (size_t i = 0; i < T.rows.size(); ++i)
        for (size_t j = 0; j < T.rows[i].size(); ++j)
            e *= gen_box(N, T.rows[i][j], a + AffineShift(static_cast<long long>(j) - static_cast<long long>(i)));
    return e;
}

QCharacter qchar_evaluation(const Partition& mu, const AffineShift& a, int N) {
    QCharacter q(N);
    for (const auto& T : enumerate_tableaux(mu, N)) q.add(tableau_monomial(T, a, N), 1);
    if (q.size() == 0) q = QCharacter::unit(N);
    return q;
}

QCharacter qchar_KR(int r, int k, const AffineShift& a, int N) {
    if (r < 1 || r >= N) throw std::out_of_range("KR level out of range");
    if (k < 0) throw std::invalid_argument("KR size must be non-negative");
    std::vector<int> parts(static_cast<size_t>(N), 0);
    for (int i = 0; i < r; ++i) parts[static_cast<size_t>(i)] = k;
    return qchar_evaluation(Partition{parts}, a - AffineShift(ell_of(N, r)), N);
}

} // namespace ellq
