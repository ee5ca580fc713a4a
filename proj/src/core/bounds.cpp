// Counting bounds (exact big-integer arithmetic) and row compression.
#include "core/bounds.hpp"

#include <algorithm>
#include <map>

namespace satkit {

BigInt binomial_big(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // exact: r is C(n-k+i, i) after this step
  }
  return r;
}

BigInt f_bound(int n, int k) {
  if (n < 0) throw Error("f_bound: n must be non-negative");
  BigInt s = 0;
  for (int i = 0; i <= k; ++i) s += binomial_big(n, i);
  return s;
}

BigInt sauer_forb(int n, int k) {
  if (k < 1 || n < k - 1) throw Error("sauer_forb: requires k >= 1 and n >= k-1");
  return f_bound(n, k - 1);
}

BigInt sauer_forb_l(int n, int k, int l) {
  if (k < 1 || l < 1 || n < k - 1) throw Error("sauer_forb_l: requires k,l >= 1 and n >= k-1");
  BigInt s = 0;
  for (int i = 0; i < k; ++i) {
    BigInt t = binomial_big(n, i);
    for (int j = 0; j < n - i; ++j) t *= l;
    s += t;
  }
  return s;
}

Matrix shift_row(const Matrix& M, int i) {
  if (!M.simple) throw Error("shift_row: matrix must be simple");
  if (i < 1 || i > M.n) throw Error("shift_row: row index out of range");
  // Bucket columns by their content outside row i; inside a bucket the
  // row-i entries are pairwise distinct (simplicity), so ranking them
  // assigns 0..s-1 in their original relative order.
  std::map<Column, std::vector<std::pair<std::uint8_t, int>>> groups;
  for (int j = 0; j < M.m(); ++j) {
    Column reduced = M.cols[static_cast<size_t>(j)];
    reduced.erase(reduced.begin() + (i - 1));
    groups[reduced].emplace_back(M.at(i - 1, j), j);
  }
  std::vector<Column> cols = M.cols;
  for (auto& [reduced, entries] : groups) {
    std::sort(entries.begin(), entries.end());
    for (size_t rank = 0; rank < entries.size(); ++rank)
      cols[static_cast<size_t>(entries[rank].second)][static_cast<size_t>(i - 1)] =
          static_cast<std::uint8_t>(rank);
  }
  Matrix out = make_matrix(M.n, M.l, std::move(cols));
  if (!out.simple) throw std::logic_error("shift_row: compression broke simplicity");
  return out;
}

Matrix shift_fixpoint(const Matrix& M) {
  Matrix cur = M;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i <= cur.n; ++i) {
      Matrix next = shift_row(cur, i);
      if (next.cols != cur.cols) {
        cur = std::move(next);
        changed = true;
      }
    }
  }
  return cur;
}

}  // namespace satkit
