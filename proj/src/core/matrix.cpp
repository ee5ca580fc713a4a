// Matrix construction, ColumnId codec, row/column operations, canonical form
// under row/column permutation (branch-and-bound over row orders), and the
// text serialization format.
#include "core/matrix.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <sstream>

namespace satkit {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > limit / base) throw Error("column space too large for this operation");
    r *= base;
  }
  return r;
}

}  // namespace

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) throw Error("binomial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t column_space_size(int n, int l) {
  if (n < 0 || l < 1) throw Error("column_space_size: need n >= 0 and l >= 1");
  // Cap far below 2^63 so downstream id arithmetic stays safe.
  return pow_u64(static_cast<std::uint64_t>(l) + 1, n, (1ull << 62));
}

Matrix make_matrix(int n, int l, std::vector<Column> cols) {
  if (n < 0) throw Error("matrix: negative row count");
  if (l < 1) throw Error("matrix: alphabet bound l must be >= 1");
  for (const Column& c : cols) {
    if (static_cast<int>(c.size()) != n) throw Error("matrix: column length differs from row count");
    for (std::uint8_t v : c)
      if (v > l) throw Error("matrix: entry exceeds alphabet bound");
  }
  Matrix M;
  M.n = n;
  M.l = l;
  M.cols = std::move(cols);
  std::vector<Column> sorted = M.cols;
  std::sort(sorted.begin(), sorted.end());
  M.simple = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return M;
}

ColId column_id(const Column& c, int l) {
  ColId id = 0;
  const ColId base = static_cast<ColId>(l) + 1;
  for (std::uint8_t v : c) {
    if (v > l) throw Error("column_id: entry exceeds alphabet bound");
    id = id * base + v;
  }
  return id;
}

Column column_from_id(ColId id, int n, int l) {
  const ColId base = static_cast<ColId>(l) + 1;
  Column c(static_cast<size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    c[static_cast<size_t>(r)] = static_cast<std::uint8_t>(id % base);
    id /= base;
  }
  if (id != 0) throw Error("column_from_id: id out of range for (n, l)");
  return c;
}

Column chi(const RowSubset& Y, int n) {
  Column c(static_cast<size_t>(n), 0);
  int prev = 0;
  for (int i : Y) {
    if (i <= prev || i > n) throw Error("chi: row subset must be strictly increasing within [1, n]");
    c[static_cast<size_t>(i - 1)] = 1;
    prev = i;
  }
  return c;
}

Matrix build_T(int k, int lo, int hi) {
  if (k < 0 || lo < 0 || hi > k || lo > hi) throw Error("build_T: need 0 <= lo <= hi <= k");
  std::vector<Column> cols;
  const std::uint64_t total = column_space_size(k, 1);
  for (std::uint64_t id = 0; id < total; ++id) {
    int pc = std::popcount(id);
    if (pc >= lo && pc <= hi) cols.push_back(column_from_id(id, k, 1));
  }
  return make_matrix(k, 1, std::move(cols));
}

Matrix build_K(int k) { return build_T(k, 0, k); }

Matrix build_K_l(int k, int l) {
  if (k < 0 || l < 1) throw Error("build_K_l: need k >= 0 and l >= 1");
  std::vector<Column> cols;
  const std::uint64_t total = column_space_size(k, l);
  cols.reserve(total);
  for (std::uint64_t id = 0; id < total; ++id) cols.push_back(column_from_id(id, k, l));
  return make_matrix(k, l, std::move(cols));
}

Matrix submatrix(const Matrix& M, const RowSubset& rows, const std::vector<int>& cols) {
  int prev = 0;
  for (int i : rows) {
    if (i <= prev || i > M.n) throw Error("submatrix: bad row subset");
    prev = i;
  }
  prev = 0;
  for (int j : cols) {
    if (j <= prev || j > M.m()) throw Error("submatrix: bad column subset");
    prev = j;
  }
  std::vector<Column> out;
  out.reserve(cols.size());
  for (int j : cols) {
    Column c;
    c.reserve(rows.size());
    for (int i : rows) c.push_back(M.at(i - 1, j - 1));
    out.push_back(std::move(c));
  }
  return make_matrix(static_cast<int>(rows.size()), M.l, std::move(out));
}

Matrix submatrix_rows(const Matrix& M, const RowSubset& rows) {
  std::vector<int> all(static_cast<size_t>(M.m()));
  std::iota(all.begin(), all.end(), 1);
  return submatrix(M, rows, all);
}

Matrix complement(const Matrix& M) {
  if (M.l != 1) throw Error("complement: defined for 0/1 matrices only");
  std::vector<Column> cols = M.cols;
  for (Column& c : cols)
    for (std::uint8_t& v : c) v = static_cast<std::uint8_t>(1 - v);
  return make_matrix(M.n, 1, std::move(cols));
}

Matrix transpose(const Matrix& M) {
  std::vector<Column> cols(static_cast<size_t>(M.n), Column(static_cast<size_t>(M.m())));
  for (int i = 0; i < M.n; ++i)
    for (int j = 0; j < M.m(); ++j) cols[static_cast<size_t>(i)][static_cast<size_t>(j)] = M.at(i, j);
  return make_matrix(M.m(), M.l, std::move(cols));
}

Matrix duplicate_row(const Matrix& M, int i) {
  if (i < 1 || i > M.n) throw Error("duplicate_row: row index out of range");
  std::vector<Column> cols = M.cols;
  for (Column& c : cols) c.push_back(c[static_cast<size_t>(i - 1)]);
  return make_matrix(M.n + 1, M.l, std::move(cols));
}

Matrix delete_row(const Matrix& M, int i) {
  if (i < 1 || i > M.n) throw Error("delete_row: row index out of range");
  std::vector<Column> cols = M.cols;
  for (Column& c : cols) c.erase(c.begin() + (i - 1));
  return make_matrix(M.n - 1, M.l, std::move(cols));
}

Matrix concat(const Matrix& A, const Matrix& B) {
  if (A.n != B.n) throw Error("concat: row counts differ");
  std::vector<Column> cols = A.cols;
  cols.insert(cols.end(), B.cols.begin(), B.cols.end());
  return make_matrix(A.n, std::max(A.l, B.l), std::move(cols));
}

Matrix append_zero_rows(const Matrix& M, int d) {
  if (d < 0) throw Error("append_zero_rows: negative count");
  std::vector<Column> cols = M.cols;
  for (Column& c : cols) c.insert(c.end(), static_cast<size_t>(d), 0);
  return make_matrix(M.n + d, M.l, std::move(cols));
}

std::vector<ColId> sorted_ids(const Matrix& M) {
  std::vector<ColId> ids;
  ids.reserve(M.cols.size());
  for (const Column& c : M.cols) ids.push_back(column_id(c, M.l));
  std::sort(ids.begin(), ids.end());
  return ids;
}

// ------------------------------------------------------------------------
// Canonical form. Objective: over all row permutations, minimize the sorted
// column sequence, compared column-by-column (each column digit-by-digit,
// new row order top-down). Branch-and-bound over row prefixes:
//   * columns are kept bucketed by their current digit prefix (refined one
//     level per chosen row), which *is* the sorted order restricted to the
//     known prefix;
//   * a partial assignment's best possible completion pads every column
//     prefix with zeros, so a node whose zero-padded sequence already
//     exceeds the incumbent cannot improve it and is pruned;
//   * unchosen rows that are entrywise identical lead to identical subtrees
//     and are tried once.
// The same engine answers the decision question "is the identity row order
// already optimal" (is_canonical) by fixing the incumbent to the identity's
// sequence and looking for any strictly smaller leaf.

namespace {

struct CanonCtx {
  int n = 0, m = 0;
  // digit(r, j): entry of column j (in a fixed column indexing) at original
  // row r. Columns enter sorted by ColumnId so ties break deterministically.
  std::vector<std::uint8_t> dig;  // n * m, row-major
  std::uint8_t digit(int r, int j) const { return dig[static_cast<size_t>(r) * m + j]; }

  // Incumbent: m columns by n digits, sorted-column order.
  std::vector<Column> best;
  bool have_best = false;
  bool decision_mode = false;   // is_canonical: stop on first strictly-smaller leaf
  bool found_smaller = false;

  std::vector<int> perm;        // chosen original rows, in order
  std::vector<char> used;       // original row -> chosen?
  std::vector<int> row_group;   // duplicate-row dedupe: representative index
};

// Compare the zero-padded candidate prefix (depth t digits known per column,
// columns given by `order`) against ctx.best. Returns -1/0/+1.
int lb_compare(const CanonCtx& ctx, const std::vector<int>& order, int t) {
  for (int s = 0; s < ctx.m; ++s) {
    const Column& q = ctx.best[static_cast<size_t>(s)];
    int j = order[static_cast<size_t>(s)];
    for (int d = 0; d < t; ++d) {
      std::uint8_t a = ctx.digit(ctx.perm[static_cast<size_t>(d)], j);
      if (a != q[static_cast<size_t>(d)]) return a < q[static_cast<size_t>(d)] ? -1 : 1;
    }
    for (int d = t; d < ctx.n; ++d)
      if (q[static_cast<size_t>(d)] != 0) return -1;  // zeros can only undercut
  }
  return 0;
}

void canon_rec(CanonCtx& ctx, std::vector<int>& order, std::vector<int>& class_end, int t) {
  if (ctx.found_smaller) return;
  if (ctx.have_best) {
    int c = lb_compare(ctx, order, t);
    if (c > 0) return;
    if (t == ctx.n) {
      if (c < 0) {
        if (ctx.decision_mode) {
          ctx.found_smaller = true;
          return;
        }
        for (int s = 0; s < ctx.m; ++s)
          for (int d = 0; d < ctx.n; ++d)
            ctx.best[static_cast<size_t>(s)][static_cast<size_t>(d)] =
                ctx.digit(ctx.perm[static_cast<size_t>(d)], order[static_cast<size_t>(s)]);
      }
      return;
    }
  } else if (t == ctx.n) {
    ctx.best.assign(static_cast<size_t>(ctx.m), Column(static_cast<size_t>(ctx.n)));
    for (int s = 0; s < ctx.m; ++s)
      for (int d = 0; d < ctx.n; ++d)
        ctx.best[static_cast<size_t>(s)][static_cast<size_t>(d)] =
            ctx.digit(ctx.perm[static_cast<size_t>(d)], order[static_cast<size_t>(s)]);
    ctx.have_best = true;
    return;
  }

  // Candidate rows: unused, one per duplicate-row group, ordered by the
  // digit string they would contribute at this level (per sorted class, the
  // digits of the class's columns in ascending order).
  struct Cand {
    int row;
    std::vector<std::uint8_t> key;
  };
  std::vector<Cand> cands;
  for (int r = 0; r < ctx.n; ++r) {
    if (ctx.used[static_cast<size_t>(r)]) continue;
    // Interchangeable rows: only the first unused member of each group
    // branches; later members reach the same subtree.
    bool deferred = false;
    for (int q = ctx.row_group[static_cast<size_t>(r)]; q < r; ++q)
      if (ctx.row_group[static_cast<size_t>(q)] == ctx.row_group[static_cast<size_t>(r)] &&
          !ctx.used[static_cast<size_t>(q)]) {
        deferred = true;
        break;
      }
    if (deferred) continue;
    Cand c;
    c.row = r;
    c.key.reserve(static_cast<size_t>(ctx.m));
    int begin = 0;
    for (int end : class_end) {
      size_t mark = c.key.size();
      for (int s = begin; s < end; ++s)
        c.key.push_back(ctx.digit(r, order[static_cast<size_t>(s)]));
      std::sort(c.key.begin() + mark, c.key.end());
      begin = end;
    }
    cands.push_back(std::move(c));
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cand& a, const Cand& b) { return a.key < b.key; });

  for (const Cand& cand : cands) {
    int r = cand.row;
    ctx.perm.push_back(r);
    ctx.used[static_cast<size_t>(r)] = 1;
    // Refine: stable-sort each class by the new digit.
    std::vector<int> new_order = order;
    std::vector<int> new_end;
    int begin = 0;
    for (int end : class_end) {
      std::stable_sort(new_order.begin() + begin, new_order.begin() + end,
                       [&](int a, int b) { return ctx.digit(r, a) < ctx.digit(r, b); });
      for (int s = begin; s < end; ++s)
        if (s + 1 == end || ctx.digit(r, new_order[static_cast<size_t>(s)]) !=
                                ctx.digit(r, new_order[static_cast<size_t>(s + 1)]))
          new_end.push_back(s + 1);
      begin = end;
    }
    canon_rec(ctx, new_order, new_end, t + 1);
    ctx.used[static_cast<size_t>(r)] = 0;
    ctx.perm.pop_back();
    if (ctx.found_smaller) return;
  }
}

CanonCtx make_ctx(const Matrix& M, bool require_sorted) {
  CanonCtx ctx;
  ctx.n = M.n;
  ctx.m = M.m();
  std::vector<ColId> ids(static_cast<size_t>(ctx.m));
  std::vector<int> by_id(static_cast<size_t>(ctx.m));
  for (int j = 0; j < ctx.m; ++j) ids[static_cast<size_t>(j)] = column_id(M.cols[static_cast<size_t>(j)], M.l);
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(),
            [&](int a, int b) { return ids[static_cast<size_t>(a)] < ids[static_cast<size_t>(b)]; });
  if (require_sorted)
    for (int j = 0; j + 1 < ctx.m; ++j)
      if (ids[static_cast<size_t>(j)] > ids[static_cast<size_t>(j + 1)])
        throw Error("is_canonical: columns must be sorted by ColumnId");
  ctx.dig.resize(static_cast<size_t>(ctx.n) * ctx.m);
  for (int s = 0; s < ctx.m; ++s) {
    const Column& c = M.cols[static_cast<size_t>(by_id[static_cast<size_t>(s)])];
    for (int r = 0; r < ctx.n; ++r) ctx.dig[static_cast<size_t>(r) * ctx.m + s] = c[static_cast<size_t>(r)];
  }
  ctx.used.assign(static_cast<size_t>(ctx.n), 0);
  ctx.perm.reserve(static_cast<size_t>(ctx.n));
  // Duplicate rows: same entries in every column => interchangeable.
  ctx.row_group.resize(static_cast<size_t>(ctx.n));
  for (int r = 0; r < ctx.n; ++r) {
    ctx.row_group[static_cast<size_t>(r)] = r;
    for (int q = 0; q < r; ++q) {
      bool same = true;
      for (int j = 0; j < ctx.m && same; ++j) same = ctx.digit(r, j) == ctx.digit(q, j);
      if (same) {
        ctx.row_group[static_cast<size_t>(r)] = ctx.row_group[static_cast<size_t>(q)];
        break;
      }
    }
  }
  return ctx;
}

}  // namespace

Matrix canonical_form(const Matrix& M) {
  if (M.n == 0 || M.m() == 0) {
    std::vector<Column> cols = M.cols;
    std::sort(cols.begin(), cols.end());
    return make_matrix(M.n, M.l, std::move(cols));
  }
  CanonCtx ctx = make_ctx(M, /*require_sorted=*/false);
  std::vector<int> order(static_cast<size_t>(ctx.m));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> class_end{ctx.m};
  canon_rec(ctx, order, class_end, 0);
  return make_matrix(M.n, M.l, std::move(ctx.best));
}

bool is_canonical(const Matrix& M) {
  if (M.n == 0 || M.m() == 0) return true;
  CanonCtx ctx = make_ctx(M, /*require_sorted=*/true);
  ctx.best = M.cols;  // columns already sorted: identity is the incumbent
  ctx.have_best = true;
  ctx.decision_mode = true;
  std::vector<int> order(static_cast<size_t>(ctx.m));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> class_end{ctx.m};
  canon_rec(ctx, order, class_end, 0);
  return !ctx.found_smaller;
}

bool isomorphic(const Matrix& A, const Matrix& B) {
  if (A.n != B.n || A.l != B.l || A.m() != B.m()) return false;
  auto sums = [](const Matrix& M) {
    std::vector<int> col_sums, row_sums(static_cast<size_t>(M.n), 0);
    for (const Column& c : M.cols) {
      int s = 0;
      for (int r = 0; r < M.n; ++r) {
        s += c[static_cast<size_t>(r)];
        row_sums[static_cast<size_t>(r)] += c[static_cast<size_t>(r)];
      }
      col_sums.push_back(s);
    }
    std::sort(col_sums.begin(), col_sums.end());
    std::sort(row_sums.begin(), row_sums.end());
    return std::pair(col_sums, row_sums);
  };
  if (sums(A) != sums(B)) return false;
  return canonical_form(A).cols == canonical_form(B).cols;
}

// ------------------------------------------------------------------- text --

Matrix parse_matrix(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  auto is_blank = [](std::string_view s) {
    return s.find_first_not_of(" \t\r") == std::string_view::npos;
  };
  size_t li = 0;
  while (li < lines.size() && is_blank(lines[li])) ++li;
  if (li == lines.size()) throw Error("matrix parse: empty input, expected header line \"n m l\"");

  const size_t header_line = li;
  std::istringstream hs{std::string(lines[li])};
  long long n = -1, m = -1, l = -1;
  std::string extra;
  if (!(hs >> n >> m >> l) || (hs >> extra))
    throw Error("matrix parse: line " + std::to_string(header_line + 1) +
                ": header must be three integers \"n m l\"");
  if (n < 0 || m < 0) throw Error("matrix parse: line " + std::to_string(header_line + 1) +
                                  ": n and m must be non-negative");
  if (l < 1 || l > 9) throw Error("matrix parse: line " + std::to_string(header_line + 1) +
                                  ": alphabet bound l must be in [1, 9]");
  ++li;

  std::vector<Column> cols(static_cast<size_t>(m), Column(static_cast<size_t>(n)));
  const int rows_expected = (m == 0) ? 0 : static_cast<int>(n);
  for (int r = 0; r < rows_expected; ++r, ++li) {
    if (li >= lines.size())
      throw Error("matrix parse: expected " + std::to_string(rows_expected) + " row lines, got " +
                  std::to_string(r));
    std::string_view row = lines[li];
    while (!row.empty() && (row.back() == '\r' || row.back() == ' ' || row.back() == '\t'))
      row.remove_suffix(1);
    if (static_cast<long long>(row.size()) != m)
      throw Error("matrix parse: line " + std::to_string(li + 1) + ": expected " + std::to_string(m) +
                  " digits, got " + std::to_string(row.size()));
    for (long long j = 0; j < m; ++j) {
      char ch = row[static_cast<size_t>(j)];
      if (ch < '0' || ch > '9')
        throw Error("matrix parse: line " + std::to_string(li + 1) + ", column " + std::to_string(j + 1) +
                    ": expected a digit");
      int v = ch - '0';
      if (v > l)
        throw Error("matrix parse: line " + std::to_string(li + 1) + ", column " + std::to_string(j + 1) +
                    ": entry " + std::to_string(v) + " exceeds alphabet bound " + std::to_string(l));
      cols[static_cast<size_t>(j)][static_cast<size_t>(r)] = static_cast<std::uint8_t>(v);
    }
  }
  for (; li < lines.size(); ++li)
    if (!is_blank(lines[li]))
      throw Error("matrix parse: line " + std::to_string(li + 1) + ": unexpected content after matrix");
  return make_matrix(static_cast<int>(n), static_cast<int>(l), std::move(cols));
}

std::string format_matrix(const Matrix& M) {
  if (M.l > 9) throw Error("format_matrix: alphabet bound exceeds single-digit format");
  std::string out = std::to_string(M.n) + " " + std::to_string(M.m()) + " " + std::to_string(M.l) + "\n";
  if (M.m() == 0) return out;
  for (int r = 0; r < M.n; ++r) {
    for (int j = 0; j < M.m(); ++j) out += static_cast<char>('0' + M.at(r, j));
    out += '\n';
  }
  return out;
}

}  // namespace satkit
