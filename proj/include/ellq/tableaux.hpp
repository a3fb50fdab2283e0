#pragma once
#include <vector>

#include "ellq/eweights.hpp"

namespace ellq {

struct Partition {
    std::vector<int> parts;  // weakly decreasing, padded to N
    int size() const;
};

Partition make_partition(std::vector<int> parts, int N);

// Row i counts from the bottom (row 1 is the longest), column j from the right.
// so T(i,j) >= T(i,j+1) and T(i,j) > T(i+1,j).
struct Tableau {
    Partition shape;
    std::vector<std::vector<int>> rows;  // rows[i-1][j-1] = T(i,j)
    int at(int i, int j) const { return rows[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]; }
    std::vector<int> reading() const;  // top row first, left to right
};

std::vector<Tableau> enumerate_tableaux(const Partition& mu, int N);

EWeight tableau_monomial(const Tableau& T, const AffineShift& a, int N);
QCharacter qchar_evaluation(const Partition& mu, const AffineShift& a, int N);
QCharacter qchar_KR(int r, int k, const AffineShift& a, int N);

} // namespace ellq
