// Exact counting bounds and the shifting (compression) operation.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "core/matrix.hpp"

namespace satkit {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial_big(int n, int k);

// f(n, k) = sum_{i=0}^{k} C(n, i). The maximum column count of a simple
// 0/1 matrix on n rows avoiding the complete configuration K_{k+1} is
// f(n, k) (Sauer-Shelah); sauer_forb(n, k) = f(n, k-1) phrases the same
// bound for hosts forbidding K_k.
BigInt f_bound(int n, int k);
BigInt sauer_forb(int n, int k);

// l-ary analogue: the maximum column count of a simple [0,l]-matrix on n
// rows avoiding the complete [0,l] configuration on k rows equals
// sum_{i=0}^{k-1} l^(n-i) C(n, i).
BigInt sauer_forb_l(int n, int k, int l);

// Compression of row i (1-based) of a simple matrix: columns that agree
// outside row i form a class whose row-i entries are distinct; replace them
// by 0..s-1 preserving their relative order. Preserves simplicity and
// column count, never increases the entry sum, and preserves K_k^l-freeness.
Matrix shift_row(const Matrix& M, int i);

// Applies shift_row over all rows until no entry changes. In any fixpoint
// that is K_k^l-free, every column has at most k-1 entries equal to l.
Matrix shift_fixpoint(const Matrix& M);

}  // namespace satkit
