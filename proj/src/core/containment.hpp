// Submatrix containment up to row/column permutation, multiplicity-aware:
// F appears in M iff rows and columns of M can be selected (injectively)
// so that the selected submatrix equals F after reordering. contains()
// returns the lexicographically least witness (row map first, then column
// map); contains_any() is the fast boolean used by freeness checks.
#pragma once

#include <optional>
#include <vector>

#include "core/matrix.hpp"

namespace satkit {

struct ContainmentWitness {
  std::vector<int> row_map;  // 0-based: F row i sits at M row row_map[i]
  std::vector<int> col_map;  // 0-based: F col j sits at M col col_map[j]
};

// Requires F.l <= M.l (a [0,l']-matrix is a legal pattern inside a [0,l]
// host for l >= l'); throws otherwise.
std::optional<ContainmentWitness> contains(const Matrix& M, const Matrix& F);
bool contains_any(const Matrix& M, const Matrix& F);

}  // namespace satkit
