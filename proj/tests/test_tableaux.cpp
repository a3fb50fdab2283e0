#include <doctest.h>

#include <functional>
#include <set>

#include "ellq/checks.hpp"
#include "oracles.hpp"

using namespace ellq;

namespace {
AffineShift h(long long num, long long den = 2) { return AffineShift(Rational(num, den)); }

// all partitions with at most N parts and size <= n
std::vector<std::vector<int>> partitions(int N, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int cap) {
        if (static_cast<int>(cur.size()) == N) {
            out.push_back(cur);
            return;
        }
        for (int x = std::min(left, cap); x >= 0; --x) {
            cur.push_back(x);
            rec(left - x, x);
            cur.pop_back();
        }
    };
    for (int s = 0; s <= n; ++s) rec(s, s);
    return out;
}
}

TEST_CASE("eight tableaux of shape (2,1,0), fourth one as displayed") {
    auto mu = make_partition({2, 1, 0}, 3);
    auto tabs = enumerate_tableaux(mu, 3);
    REQUIRE(tabs.size() == 8);
    AffineShift a = AffineShift::var("a");
    EWeight fourth = gen_box(3, 2, a + h(1, 1)) * gen_box(3, 3, a) * gen_box(3, 1, a - h(1, 1));
    CHECK(tableau_monomial(tabs[3], a, 3) == fourth);
    std::set<std::vector<int>> seen;
    for (const auto& T : tabs) seen.insert(T.reading());
    CHECK(seen.size() == 8);
}

TEST_CASE("tableau conditions hold") {
    for (int N : {2, 3, 4})
        for (const auto& m : partitions(N, 4))
            for (const auto& T : enumerate_tableaux(make_partition(m, N), N))
                for (int i = 1; i <= N; ++i)
                    for (int j = 1; j <= m[static_cast<size_t>(i - 1)]; ++j) {
                        int v = T.at(i, j);
                        CHECK(v >= 1);
                        CHECK(v <= N);
                        if (j + 1 <= m[static_cast<size_t>(i - 1)]) CHECK(v >= T.at(i, j + 1));
                        if (i + 1 <= N && j <= m[static_cast<size_t>(i)]) CHECK(v > T.at(i + 1, j));
                    }
}

TEST_CASE("counts match the Weyl dimension formula") {
    for (int N : {1, 2, 3, 4})
        for (const auto& m : partitions(N, 5)) {
            auto mu = make_partition(m, N);
            CHECK(static_cast<long long>(enumerate_tableaux(mu, N).size()) == oracle::weyl_dimension(m));
            CHECK(qchar_evaluation(mu, 0, N).total() == oracle::weyl_dimension(m));
        }
}

TEST_CASE("vector representation is a sum of boxes") {
    for (int N : {2, 3, 4}) {
        AffineShift a = AffineShift::var("a");
        QCharacter want(N);
        for (int k = 1; k <= N; ++k) want.add(gen_box(N, k, a), 1);
        CHECK(qchar_evaluation(make_partition({1}, N), a, N) == want);
    }
}

TEST_CASE("sl2 fundamental KR character") {
    QCharacter want = QCharacter::monomial(gen_Y(2, 1, h(1))) +
                      QCharacter::monomial(gen_Y(2, 1, h(-1)).inverse() * gen_Y(2, 2, 0));
    CHECK(qchar_KR(1, 1, 0, 2) == want);
}

TEST_CASE("KR leading term and right-negative tail") {
    for (int N : {2, 3})
        for (int r = 1; r < N; ++r)
            for (int k = 1; k <= 3; ++k) {
                AffineShift a = h(1);
                QCharacter q = qchar_KR(r, k, a, N);
                EWeight top = highest_term(q);
                CHECK(top == gen_psi(N, r, a + h(k, 1)) * gen_psi(N, r, a).inverse());
                for (const auto& [e, c] : q.terms())
                    if (!(e == top)) CHECK(is_right_negative(e * top.inverse()));
            }
}

TEST_CASE("bad partitions") {
    CHECK_THROWS(make_partition({1, 2}, 3));
    CHECK_THROWS(make_partition({1, 1, 1, 1}, 3));
    CHECK_THROWS(make_partition({-1}, 2));
}
