// Containment search: depth-first assignment of pattern rows to host rows in
// natural order (so the first complete assignment is the lexicographically
// least row map), pruned by an exact counting test on digit-prefix classes:
// pattern columns and host columns are bucketed by their entries on the rows
// assigned so far, and every bucket must hold at least as many host columns
// as pattern columns demand. Buckets with distinct prefixes can never trade
// columns, so the test is Hall-exact per bucket; at full depth it decides
// feasibility outright.
#include "core/containment.hpp"

#include <algorithm>
#include <unordered_map>

namespace satkit {

namespace {

struct ContainCtx {
  const Matrix* M;
  const Matrix* F;
  int vF, vM, base;
  // Distinct pattern columns ("classes") with multiplicities.
  std::vector<Column> class_col;
  std::vector<int> class_need;
  std::vector<int> fclass;  // F column -> class
  std::vector<int> assigned;  // F row -> host row
  std::vector<char> used;     // host row used?
  // Prefix codes, updated per depth: base-(M.l+1) value of the entries on
  // assigned rows, in assignment order.
  std::vector<std::uint64_t> host_pfx;   // per host column
  std::vector<std::uint64_t> class_pfx;  // per pattern class
  bool want_witness = false;
  std::optional<ContainmentWitness> result;
};

bool feasible_counts(const ContainCtx& ctx) {
  std::unordered_map<std::uint64_t, long long> slack;
  slack.reserve(ctx.host_pfx.size());
  for (std::uint64_t p : ctx.host_pfx) ++slack[p];
  for (size_t c = 0; c < ctx.class_pfx.size(); ++c) {
    auto it = slack.find(ctx.class_pfx[c]);
    if (it == slack.end() || (it->second -= ctx.class_need[c]) < 0) return false;
  }
  return true;
}

void emit_witness(ContainCtx& ctx) {
  ContainmentWitness w;
  w.row_map = ctx.assigned;
  // Lex-least column map: classes have pairwise distinct full patterns, so
  // their candidate host pools are disjoint; give each pattern column, in
  // original order, the smallest unused matching host column.
  std::vector<std::vector<int>> pool(ctx.class_need.size());
  for (int j = 0; j < ctx.M->m(); ++j)
    for (size_t c = 0; c < ctx.class_pfx.size(); ++c)
      if (ctx.host_pfx[static_cast<size_t>(j)] == ctx.class_pfx[c]) {
        pool[c].push_back(j);
        break;
      }
  std::vector<size_t> next(ctx.class_need.size(), 0);
  w.col_map.resize(static_cast<size_t>(ctx.F->m()));
  for (int j = 0; j < ctx.F->m(); ++j) {
    int c = ctx.fclass[static_cast<size_t>(j)];
    w.col_map[static_cast<size_t>(j)] = pool[static_cast<size_t>(c)][next[static_cast<size_t>(c)]++];
  }
  // Replay the witness against the raw matrices; a mismatch means the
  // search engine itself is broken, not the input.
  std::vector<char> seen_r(static_cast<size_t>(ctx.vM), 0), seen_c(static_cast<size_t>(ctx.M->m()), 0);
  for (int i = 0; i < ctx.vF; ++i) {
    if (seen_r[static_cast<size_t>(w.row_map[static_cast<size_t>(i)])]++)
      throw std::logic_error("containment: row map not injective");
  }
  for (int j = 0; j < ctx.F->m(); ++j) {
    if (seen_c[static_cast<size_t>(w.col_map[static_cast<size_t>(j)])]++)
      throw std::logic_error("containment: column map not injective");
    for (int i = 0; i < ctx.vF; ++i)
      if (ctx.M->at(w.row_map[static_cast<size_t>(i)], w.col_map[static_cast<size_t>(j)]) != ctx.F->at(i, j))
        throw std::logic_error("containment: witness fails replay");
  }
  ctx.result = std::move(w);
}

bool rec(ContainCtx& ctx, int depth) {
  if (depth == ctx.vF) {
    if (!feasible_counts(ctx)) return false;
    if (ctx.want_witness) emit_witness(ctx);
    return true;
  }
  std::vector<std::uint64_t> save_host = ctx.host_pfx, save_class = ctx.class_pfx;
  for (int r = 0; r < ctx.vM; ++r) {
    if (ctx.used[static_cast<size_t>(r)]) continue;
    for (int j = 0; j < ctx.M->m(); ++j)
      ctx.host_pfx[static_cast<size_t>(j)] =
          save_host[static_cast<size_t>(j)] * ctx.base + ctx.M->at(r, j);
    for (size_t c = 0; c < ctx.class_pfx.size(); ++c)
      ctx.class_pfx[c] = save_class[c] * ctx.base + ctx.class_col[c][static_cast<size_t>(depth)];
    if (feasible_counts(ctx)) {
      ctx.assigned[static_cast<size_t>(depth)] = r;
      ctx.used[static_cast<size_t>(r)] = 1;
      if (rec(ctx, depth + 1)) return true;
      ctx.used[static_cast<size_t>(r)] = 0;
    }
  }
  ctx.host_pfx = std::move(save_host);
  ctx.class_pfx = std::move(save_class);
  return false;
}

bool run_containment(const Matrix& M, const Matrix& F, bool want_witness,
                     std::optional<ContainmentWitness>& out) {
  if (F.l > M.l)
    throw Error("containment: pattern alphabet bound " + std::to_string(F.l) +
                " exceeds host bound " + std::to_string(M.l));
  if (F.n > M.n || F.m() > M.m()) return false;
  ContainCtx ctx;
  ctx.M = &M;
  ctx.F = &F;
  ctx.vF = F.n;
  ctx.vM = M.n;
  ctx.base = M.l + 1;
  ctx.want_witness = want_witness;
  ctx.fclass.resize(static_cast<size_t>(F.m()));
  for (int j = 0; j < F.m(); ++j) {
    const Column& c = F.cols[static_cast<size_t>(j)];
    size_t k = 0;
    for (; k < ctx.class_col.size(); ++k)
      if (ctx.class_col[k] == c) break;
    if (k == ctx.class_col.size()) {
      ctx.class_col.push_back(c);
      ctx.class_need.push_back(0);
    }
    ctx.fclass[static_cast<size_t>(j)] = static_cast<int>(k);
    ++ctx.class_need[k];
  }
  ctx.assigned.resize(static_cast<size_t>(ctx.vF));
  ctx.used.assign(static_cast<size_t>(ctx.vM), 0);
  ctx.host_pfx.assign(static_cast<size_t>(M.m()), 0);
  ctx.class_pfx.assign(ctx.class_col.size(), 0);
  bool hit = rec(ctx, 0);
  if (hit && want_witness) out = std::move(ctx.result);
  return hit;
}

}  // namespace

std::optional<ContainmentWitness> contains(const Matrix& M, const Matrix& F) {
  std::optional<ContainmentWitness> w;
  run_containment(M, F, /*want_witness=*/true, w);
  return w;
}

bool contains_any(const Matrix& M, const Matrix& F) {
  std::optional<ContainmentWitness> w;
  return run_containment(M, F, /*want_witness=*/false, w);
}

}  // namespace satkit
