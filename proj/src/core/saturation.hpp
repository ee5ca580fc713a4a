// Saturation machinery: the saturation / m-saturation checkers, greedy
// closure to a saturated superset, the row-duplication extension, Bondy row
// selection, and the row-balance necessary condition for complete-family
// witnesses.
#pragma once

#include <optional>
#include <vector>

#include "core/containment.hpp"
#include "core/family.hpp"
#include "core/matrix.hpp"

namespace satkit {

enum class SatVerdict { Saturated, NotAdmissible, Extendable };

struct SaturationReport {
  SatVerdict verdict = SatVerdict::Saturated;
  // NotAdmissible: which member is embedded and where (member index into
  // fam.members(), -1 for derived families).
  int violating_member = -1;
  std::optional<ContainmentWitness> violation;
  // Extendable: a column whose addition keeps the matrix admissible.
  std::optional<Column> extension;
};

// M simple and family-free, and every absent column's addition embeds a
// member. Absent columns are scanned in ColumnId order, so the reported
// extension witness is the least one.
SaturationReport is_saturated(const Matrix& M, const ForbiddenFamily& fam);

// Monotone saturation: M simple (freeness NOT required), and for every
// absent column C there is a row subset A with M(A,.) family-free but
// [M,C](A,.) not. The default checker restricts A to |A| = v(F) per member F
// (equivalent: shrink any witness A to the embedded member's row image);
// the literal checker quantifies over every A and exists for cross-checks.
SaturationReport is_m_saturated(const Matrix& M, const ForbiddenFamily& fam);
SaturationReport is_m_saturated_literal(const Matrix& M, const ForbiddenFamily& fam);

enum class CloseOrder { IdAscending, IdDescending, GreedyMinExtensions };

// Adds admissible absent columns until saturated. IdAscending/IdDescending
// take one pass in that id order (sound: rejection is monotone under column
// addition). GreedyMinExtensions repeatedly adds the admissible column whose
// addition leaves the fewest admissible columns, tie-broken by least id.
Matrix close(const Matrix& M, const ForbiddenFamily& fam, CloseOrder order = CloseOrder::IdAscending);
// Advanced: test exactly the given candidate ids, in order. The result is
// saturated only if `order` covers the whole column space.
Matrix close_over(const Matrix& M, const ForbiddenFamily& fam, const std::vector<ColId>& order);

struct DuplicationResult {
  Matrix matrix;            // saturated extension on n+1 rows
  int pair_count = 0;       // d: unordered column pairs differing only in row i
  std::vector<Column> added;
};

// Duplicates row i of the saturated matrix M (the copy becomes the last
// row), then closes over exactly the candidate columns (C', a, c) with
// a != c and both (C', a), (C', c) columns of M — the only columns whose
// addition can keep the duplicated matrix admissible. Guarantees
// e' <= e + 2d. Errors if the duplicated matrix is not family-free.
DuplicationResult extend_by_duplication(const Matrix& M, const ForbiddenFamily& fam, int i);

// Least row (1-based) whose deletion keeps the columns of M distinct, if
// any. For a simple matrix with e(M) <= v(M) such a row always exists.
std::optional<int> find_bondy_row(const Matrix& M);

// Necessary condition for membership in m-SAT(n, K_k): every row has at
// least 2^(k-1) - 1 zeros and as many ones. Binary matrices with n >= k.
bool row_balance_check(const Matrix& M, int k);

}  // namespace satkit
