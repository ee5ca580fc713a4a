// Core matrix type for (0,l)-matrix combinatorics: columns over the alphabet
// {0,...,l} with multiplicity, column identity via base-(l+1) encoding, row
// and column operations, canonical form under row/column permutation, and a
// plain text serialization format.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace satkit {

// All precondition and input errors surface as satkit::Error; callers that
// need a usage/parse distinction get it from the message context.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A column is the vector of its entries, row 1 first (0-indexed internally).
using Column = std::vector<std::uint8_t>;

// ColumnId: the integer whose base-(l+1) digits, most significant first, are
// the column's entries from row 1 down. Total order on columns of a fixed
// (n, l); ids run over [0, (l+1)^n).
using ColId = std::uint64_t;

// 1-based strictly increasing row indices (public-facing row subsets).
using RowSubset = std::vector<int>;

struct Matrix {
  int n = 0;                 // number of rows
  int l = 1;                 // entries lie in {0,...,l}
  std::vector<Column> cols;  // column multiset, in given order
  bool simple = true;        // true iff no repeated column (maintained)

  int m() const { return static_cast<int>(cols.size()); }
  std::uint8_t at(int i, int j) const { return cols[static_cast<size_t>(j)][static_cast<size_t>(i)]; }

  bool operator==(const Matrix&) const = default;
};

// Validates entries/lengths, recomputes `simple`, and returns the matrix.
Matrix make_matrix(int n, int l, std::vector<Column> cols);

ColId column_id(const Column& c, int l);
Column column_from_id(ColId id, int n, int l);
// (l+1)^n, guarded; throws when it would not fit comfortably in 64 bits.
std::uint64_t column_space_size(int n, int l);

// chi(Y, n): the n-row 0/1 column with ones exactly at the (1-based) rows Y.
Column chi(const RowSubset& Y, int n);

// T_k^{[lo,hi]}: all k-row 0/1 columns with column sum in [lo, hi], columns
// in increasing ColumnId order. build_K(k) = T_k^{[0,k]} is the complete
// simple 0/1 matrix; build_K_l(k, l) is the complete k-row (0,l)-matrix.
Matrix build_T(int k, int lo, int hi);
Matrix build_K(int k);
Matrix build_K_l(int k, int l);

// rows: 1-based strictly increasing subset of [n]; cols: 1-based strictly
// increasing subset of [m]. Keeps order, keeps multiplicity.
Matrix submatrix(const Matrix& M, const RowSubset& rows, const std::vector<int>& cols);
Matrix submatrix_rows(const Matrix& M, const RowSubset& rows);

Matrix complement(const Matrix& M);          // 0/1 only: flips every entry
Matrix transpose(const Matrix& M);           // 0/1 semantics not required
Matrix duplicate_row(const Matrix& M, int i);  // appends a copy of row i (1-based) as the new last row
Matrix delete_row(const Matrix& M, int i);     // removes row i (1-based)
Matrix concat(const Matrix& A, const Matrix& B);  // [A, B]: same n; alphabet = max(A.l, B.l)
Matrix append_zero_rows(const Matrix& M, int d);

// Canonical form: columns sorted by ColumnId, with the row order chosen to
// lexicographically minimize the resulting sorted ColumnId sequence. Two
// matrices are equal up to row/column permutation iff their canonical forms
// are identical (n, l, and column multiset sizes must match as well).
Matrix canonical_form(const Matrix& M);
// True iff no row permutation yields a sorted ColumnId sequence strictly
// smaller than the identity's. Requires M.cols already sorted by ColumnId.
bool is_canonical(const Matrix& M);
bool isomorphic(const Matrix& A, const Matrix& B);

// Text format: header "n m l", then n lines of m digits (requires l <= 9).
// n = 0 or m = 0 matrices serialize as the header alone.
Matrix parse_matrix(std::string_view text);
std::string format_matrix(const Matrix& M);

// Sorted ColumnId vector of M (identity row order). Helper shared by the
// canonical-form machinery and tests.
std::vector<ColId> sorted_ids(const Matrix& M);

std::uint64_t binomial_u64(int n, int k);  // exact; throws on 64-bit overflow

}  // namespace satkit
