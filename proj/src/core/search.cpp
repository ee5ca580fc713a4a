#include "core/search.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "core/bounds.hpp"
#include "core/saturation.hpp"

namespace satkit {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kMaxColumnSpace = 1u << 18;
constexpr int kAutoSplitDepth = 2;
constexpr int kCheckpointCadence = 32;  // fold steps between checkpoint rewrites

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// ------------------------------------------------------------------------
// Problem setup shared by every stage of a run.

struct EngineCtx {
  SearchKind kind = SearchKind::Sat;
  int n = 0;
  int alphabet = 1;
  const ForbiddenFamily* fam = nullptr;
  std::uint64_t idspace = 0;
  std::vector<Column> cols;  // id -> column
  bool use_sym = true;
  bool check_free = true;  // Sat/Forb enumerate free states only

  // Sat with a single complete member K_k: every saturated witness has at
  // least 2^(k-1)-1 ones and as many zeros per row, so states that cannot
  // reach that balance within the target size are dead.
  bool balance = false;
  int balance_need = 0;

  // Single complete member on k rows over the host alphabet: containment is
  // "some k-row subset shows every pattern", so the freeness screen and the
  // leaf scan reduce to per-subset pattern masks maintained incrementally.
  // kk_pattern[r][id] is the pattern column id shows on the r-th subset.
  bool kk = false;
  int kk_k = 0;
  std::uint32_t kk_pats = 0;  // number of distinct patterns, <= 32
  std::uint32_t kk_full = 0;  // mask with one bit per pattern
  std::vector<std::vector<std::uint16_t>> kk_pattern;

  // Forb: upper bound on any free matrix (column-space size in general; the
  // counting bound for a single complete-configuration member) plus, when
  // the bound is met by an explicit witness, that witness as the incumbent.
  long long cap = 0;
  long long seed_value = 0;
  std::vector<ColId> seed_ids;

  // Sat/MSat: greedy closure of the empty matrix = exact upper bound, and
  // the witness of last resort when every smaller size is exhausted.
  Matrix closure;
  long long upper = 0;
};

bool member_is_complete(const Matrix& F, int alphabet) {
  if (F.l != alphabet || !F.simple || F.n <= 0 || F.n > 20) return false;
  std::uint64_t want = 1;
  for (int i = 0; i < F.n; ++i) {
    want *= static_cast<std::uint64_t>(alphabet) + 1;
    if (want > kMaxColumnSpace * 4) return false;
  }
  return static_cast<std::uint64_t>(F.m()) == want;
}

EngineCtx make_engine(const SearchProblem& p) {
  if (!p.family) throw Error("search: no family given");
  const std::vector<Matrix>* mem = p.family->members();
  if (!mem)
    throw Error("search: this family has no explicit member list; searches need explicit members");
  if (p.n < 1) throw Error("search: n must be at least 1");
  if (p.alphabet < 1) throw Error("search: alphabet must be at least 1");
  if (p.alphabet < p.family->alphabet())
    throw Error("search: host alphabet is smaller than the family's largest entry");
  if (p.jobs < 1) throw Error("search: jobs must be at least 1");
  if (p.split_depth < 0) throw Error("search: split depth must be nonnegative");

  EngineCtx e;
  e.kind = p.kind;
  e.n = p.n;
  e.alphabet = p.alphabet;
  e.fam = p.family.get();
  e.idspace = column_space_size(p.n, p.alphabet);
  if (e.idspace > kMaxColumnSpace)
    throw Error("search: the column space (l+1)^n exceeds " + std::to_string(kMaxColumnSpace) +
                "; exhaustive search is not sensible at this size");
  e.cols.reserve(e.idspace);
  for (ColId id = 0; id < e.idspace; ++id) e.cols.push_back(column_from_id(id, p.n, p.alphabet));
  e.use_sym = !p.test_disable_symmetry;
  e.check_free = (p.kind != SearchKind::MSat);

  const bool single_complete = mem->size() == 1 && member_is_complete((*mem)[0], p.alphabet);
  if (p.kind == SearchKind::Sat && single_complete && p.alphabet == 1 && p.n >= (*mem)[0].n) {
    e.balance = true;
    e.balance_need = (1 << ((*mem)[0].n - 1)) - 1;
  }
  if (single_complete) {
    const int k = (*mem)[0].n;
    std::uint64_t pat_count = 1;
    for (int i = 0; i < k; ++i) pat_count *= static_cast<std::uint64_t>(p.alphabet) + 1;
    const std::uint64_t subsets = k <= p.n ? binomial_u64(p.n, k) : 0;
    if (pat_count <= 32 && subsets * e.idspace <= (8u << 20)) {
      e.kk = true;
      e.kk_k = k;
      e.kk_pats = static_cast<std::uint32_t>(pat_count);
      e.kk_full = pat_count == 32 ? 0xFFFFFFFFu : (1u << pat_count) - 1;
      std::vector<int> pick(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
      for (;;) {
        std::vector<std::uint16_t> row(e.idspace);
        for (ColId id = 0; id < e.idspace; ++id) {
          std::uint32_t pat = 0;
          for (int i = 0; i < k; ++i)
            pat = pat * (static_cast<std::uint32_t>(p.alphabet) + 1) +
                  e.cols[id][static_cast<size_t>(pick[static_cast<size_t>(i)])];
          row[id] = static_cast<std::uint16_t>(pat);
        }
        e.kk_pattern.push_back(std::move(row));
        int i = k - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] == p.n - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
      }
    }
  }

  if (p.kind == SearchKind::Forb) {
    e.cap = static_cast<long long>(e.idspace);
    if (single_complete) {
      const int k = (*mem)[0].n;
      e.cap = sauer_forb_l(p.n, k, p.alphabet).convert_to<long long>();
      // The columns with fewer than k entries equal to l form a free matrix
      // meeting the bound, so the search starts with the answer as its
      // incumbent and only has to confirm that nothing beats the cap.
      std::vector<Column> seed_cols;
      for (ColId id = 0; id < e.idspace; ++id) {
        int top = 0;
        for (std::uint8_t v : e.cols[id])
          if (v == p.alphabet) ++top;
        if (top < k) {
          seed_cols.push_back(e.cols[id]);
          e.seed_ids.push_back(id);
        }
      }
      Matrix seed = make_matrix(p.n, p.alphabet, std::move(seed_cols));
      if (!family_free(seed, *p.family) || seed.m() != e.cap) {
        // Never expected; fall back to a plain bounded search.
        e.seed_ids.clear();
      }
      e.seed_value = static_cast<long long>(e.seed_ids.size());
    }
  } else {
    e.closure = close(make_matrix(p.n, p.alphabet, {}), *p.family, CloseOrder::IdAscending);
    e.upper = e.closure.m();
  }
  return e;
}

// ------------------------------------------------------------------------
// Allocation-free canonicity decision for the search's inner loop. Same
// predicate as is_canonical(): does some row permutation produce a strictly
// smaller sorted ColumnId sequence (compared column-major)? The permutation
// is built row by row with partition refinement, pruning branches whose
// zero-padded prefix already exceeds the identity's sequence; all scratch
// lives in this object, sized once per walk.

class CanonDecider {
 public:
  void reset(int n, int l, int m_cap) {
    n_ = n;
    l_ = l;
    cap_ = m_cap;
    dig_.assign(static_cast<size_t>(n) * m_cap, 0);
    orders_.assign(static_cast<size_t>(n + 1) * m_cap, 0);
    ends_.assign(static_cast<size_t>(n + 1) * (m_cap + 1), 0);
    end_count_.assign(static_cast<size_t>(n + 1), 0);
    cmp_.assign(static_cast<size_t>(n + 1), kTie);
    fd_s_.assign(static_cast<size_t>(n + 1), 0);
    fd_d_.assign(static_cast<size_t>(n + 1), 0);
    uf_.assign(static_cast<size_t>(n) * n, 0);
    tried_.assign(static_cast<size_t>(n) * n, 0);
    tried_count_.assign(static_cast<size_t>(n), 0);
    perm_.assign(static_cast<size_t>(n), 0);
    used_.assign(static_cast<size_t>(n), 0);
    group_.assign(static_cast<size_t>(n), 0);
    bucket_.assign(static_cast<size_t>(l + 1) + 1, 0);
    scratch_.assign(static_cast<size_t>(m_cap), 0);
  }

  // cols[ids[j]] must be sorted ascending (the walk maintains this).
  bool canonical(const std::vector<Column>& cols, const std::vector<ColId>& ids) {
    m_ = static_cast<int>(ids.size());
    for (int j = 0; j < m_; ++j) {
      const Column& col = cols[ids[static_cast<size_t>(j)]];
      for (int r = 0; r < n_; ++r) dig(r, j) = col[static_cast<size_t>(r)];
    }
    for (int r = 0; r < n_; ++r) {
      group_[static_cast<size_t>(r)] = r;
      for (int s = 0; s < r; ++s) {
        if (group_[static_cast<size_t>(s)] != s) continue;
        bool same = true;
        for (int j = 0; j < m_; ++j)
          if (dig(r, j) != dig(s, j)) {
            same = false;
            break;
          }
        if (same) {
          group_[static_cast<size_t>(r)] = s;
          break;
        }
      }
      used_[static_cast<size_t>(r)] = 0;
    }
    int* order0 = order_at(0);
    for (int j = 0; j < m_; ++j) order0[j] = j;
    ends_at(0)[0] = m_;
    end_count_[0] = 1;
    // Root comparison state: scanning column-major, every candidate cell is
    // still a zero pad, so the first nonzero incumbent digit is the first
    // difference (candidate below); a zero matrix ties.
    cmp_[0] = kTie;
    for (int s = 0; s < m_ && cmp_[0] == kTie; ++s)
      for (int d = 0; d < n_; ++d)
        if (dig(d, s) != 0) {
          cmp_[0] = kPadLow;
          fd_s_[0] = s;
          fd_d_[0] = d;
          break;
        }
    return !descend(0);
  }

 private:
  // Comparison state of a node against the incumbent (the identity order),
  // maintained incrementally. The scan is column-major; candidate cells in
  // unchosen rows count as zero pads.
  //   kTie    : every cell ties, which forces all unscanned incumbent digits
  //             in pad rows to be zero;
  //   kPadLow : first difference is a pad cell (fd_d_ >= level) where the
  //             incumbent digit is nonzero -- the branch may still become
  //             smaller, equal, or larger;
  //   kRealLow: first difference is a settled cell with candidate digit
  //             below the incumbent -- a completed leaf is strictly smaller
  //             provided every pad cell before it stays zero.
  static constexpr std::int8_t kTie = 0, kPadLow = 1, kRealLow = 2;

  std::uint8_t& dig(int r, int j) { return dig_[static_cast<size_t>(r) * cap_ + j]; }
  int* order_at(int t) { return orders_.data() + static_cast<size_t>(t) * cap_; }
  int* ends_at(int t) { return ends_.data() + static_cast<size_t>(t) * (cap_ + 1); }
  int* uf_at(int t) { return uf_.data() + static_cast<size_t>(t) * n_; }
  int* tried_at(int t) { return tried_.data() + static_cast<size_t>(t) * n_; }

  int find(int t, int x) {
    int* uf = uf_at(t);
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  }

  void unite(int t, int a, int b) {
    a = find(t, a);
    b = find(t, b);
    if (a == b) return;
    uf_at(t)[std::max(a, b)] = std::min(a, b);
  }

  // True once a strictly smaller leaf exists.
  bool descend(int t) {
    if (t == n_) {
      if (cmp_[static_cast<size_t>(t)] == kRealLow) return true;
      // Tie: perm_ permutes the rows onto the same sorted sequence, i.e. an
      // automorphism. Rows it exchanges are interchangeable at the first
      // level it moves, which prunes sibling branches there.
      int k = -1;
      for (int d = 0; d < n_; ++d)
        if (perm_[static_cast<size_t>(d)] != d) {
          k = d;
          break;
        }
      if (k >= 0)
        for (int d = k; d < n_; ++d) unite(k, d, perm_[static_cast<size_t>(d)]);
      return false;
    }
    int* uf = uf_at(t);
    for (int r = 0; r < n_; ++r) uf[r] = r;
    tried_count_[static_cast<size_t>(t)] = 0;
    for (int r = 0; r < n_; ++r) {
      if (used_[static_cast<size_t>(r)]) continue;
      // Duplicate rows are interchangeable: branch on the first unused
      // member of each group only.
      const int g = group_[static_cast<size_t>(r)];
      bool deferred = false;
      for (int q = g; q < r; ++q)
        if (group_[static_cast<size_t>(q)] == g && !used_[static_cast<size_t>(q)]) {
          deferred = true;
          break;
        }
      if (deferred) continue;
      // Orbit pruning: rows equivalent to an already-explored branch under a
      // discovered automorphism reach an isomorphic subtree.
      const int rep = find(t, r);
      bool seen = false;
      for (int i = 0; i < tried_count_[static_cast<size_t>(t)] && !seen; ++i)
        seen = find(t, tried_at(t)[i]) == rep;
      if (seen) continue;
      tried_at(t)[tried_count_[static_cast<size_t>(t)]++] = r;
      perm_[static_cast<size_t>(t)] = r;
      if (!advance(t, r)) continue;
      used_[static_cast<size_t>(r)] = 1;
      const bool hit = descend(t + 1);
      used_[static_cast<size_t>(r)] = 0;
      if (hit) return true;
    }
    return false;
  }

  // Assign original row r to level t: refine the column order and update the
  // comparison state for level t+1. False prunes the branch (prefix already
  // above the incumbent).
  bool advance(int t, int r) {
    refine(t, r);
    const int* ord = order_at(t + 1);
    const std::int8_t st = cmp_[static_cast<size_t>(t)];
    const int s0 = fd_s_[static_cast<size_t>(t)];
    const int d0 = fd_d_[static_cast<size_t>(t)];
    if (st == kTie) {
      // All incumbent digits in rows >= t are zero; any nonzero digit of r
      // lands above.
      for (int s = 0; s < m_; ++s)
        if (dig(r, ord[s]) != 0) return false;
      cmp_[static_cast<size_t>(t + 1)] = kTie;
      return true;
    }
    // Cells before the first difference tie, and the incumbent is zero at
    // every pad cell among them; row r must keep those positions zero.
    for (int s = 0; s < s0; ++s)
      if (dig(r, ord[s]) != 0) return false;
    if (st == kRealLow) {
      cmp_[static_cast<size_t>(t + 1)] = kRealLow;
      fd_s_[static_cast<size_t>(t + 1)] = s0;
      fd_d_[static_cast<size_t>(t + 1)] = d0;
      return true;
    }
    // kPadLow: the first difference sits at (s0, d0) with d0 >= t.
    if (t < d0) {
      if (dig(r, ord[s0]) != 0) return false;  // pad cell before fd
      cmp_[static_cast<size_t>(t + 1)] = kPadLow;
      fd_s_[static_cast<size_t>(t + 1)] = s0;
      fd_d_[static_cast<size_t>(t + 1)] = d0;
      return true;
    }
    const std::uint8_t a = dig(r, ord[s0]);
    const std::uint8_t b = dig(d0, s0);
    if (a > b) return false;
    if (a < b) {
      cmp_[static_cast<size_t>(t + 1)] = kRealLow;
      fd_s_[static_cast<size_t>(t + 1)] = s0;
      fd_d_[static_cast<size_t>(t + 1)] = d0;
      return true;
    }
    // The difference cell itself ties now; rescan forward for the next one.
    return rescan(t + 1, s0, d0 + 1, ord);
  }

  // Continue the column-major scan from (column s0, row d_from) at level t
  // (rows 0..t-1 settled). Sets cmp_[t]; false prunes (candidate above).
  bool rescan(int t, int s0, int d_from, const int* ord) {
    int d = d_from;
    for (int s = s0; s < m_; ++s) {
      for (; d < n_; ++d) {
        const std::uint8_t b = dig(d, s);
        if (d < t) {
          const std::uint8_t a = dig(perm_[static_cast<size_t>(d)], ord[s]);
          if (a == b) continue;
          if (a > b) return false;
          cmp_[static_cast<size_t>(t)] = kRealLow;
          fd_s_[static_cast<size_t>(t)] = s;
          fd_d_[static_cast<size_t>(t)] = d;
          return true;
        }
        if (b != 0) {
          cmp_[static_cast<size_t>(t)] = kPadLow;
          fd_s_[static_cast<size_t>(t)] = s;
          fd_d_[static_cast<size_t>(t)] = d;
          return true;
        }
      }
      d = 0;
    }
    cmp_[static_cast<size_t>(t)] = kTie;
    return true;
  }

  // Stable counting sort of each column class at level t by the digit row r
  // contributes, writing the refined order and class ends for level t+1.
  void refine(int t, int r) {
    const int* order = order_at(t);
    const int* ends = ends_at(t);
    int* next_order = order_at(t + 1);
    int* next_ends = ends_at(t + 1);
    int next_end_count = 0;
    int begin = 0;
    for (int e = 0; e < end_count_[static_cast<size_t>(t)]; ++e) {
      const int end = ends[e];
      const int vals = l_ + 1;
      for (int v = 0; v <= vals; ++v) bucket_[static_cast<size_t>(v)] = 0;
      for (int s = begin; s < end; ++s) ++bucket_[static_cast<size_t>(dig(r, order[s])) + 1];
      for (int v = 1; v <= vals; ++v) bucket_[static_cast<size_t>(v)] += bucket_[static_cast<size_t>(v) - 1];
      for (int s = begin; s < end; ++s) {
        const int v = dig(r, order[s]);
        scratch_[static_cast<size_t>(begin + bucket_[static_cast<size_t>(v)])] = order[s];
        ++bucket_[static_cast<size_t>(v)];
      }
      for (int s = begin; s < end; ++s) next_order[s] = scratch_[static_cast<size_t>(s)];
      for (int s = begin; s < end; ++s)
        if (s + 1 == end || dig(r, next_order[s]) != dig(r, next_order[s + 1]))
          next_ends[next_end_count++] = s + 1;
      begin = end;
    }
    end_count_[static_cast<size_t>(t + 1)] = next_end_count;
  }

  int n_ = 0, l_ = 1, m_ = 0, cap_ = 0;
  std::vector<std::uint8_t> dig_;
  std::vector<int> orders_, ends_, end_count_, perm_, group_, scratch_;
  std::vector<std::int8_t> cmp_;
  std::vector<int> fd_s_, fd_d_, uf_, tried_, tried_count_;
  std::vector<char> used_;
  std::vector<int> bucket_;
};

// ------------------------------------------------------------------------
// Depth-first walk over id-sorted column sets. One instance per task (or
// per frontier pass); nothing is shared, so tasks are trivially parallel.

struct AbortWalk {};  // node budget, deadline, or cancellation

class Walker {
 public:
  Walker(const EngineCtx& e, int target_m, long long forb_seed, const std::atomic<bool>* cancel,
         bool has_deadline, Clock::time_point deadline, std::uint64_t node_budget,
         std::uint64_t nodes_base)
      : e_(e),
        m_(target_m),
        forb_seed_(forb_seed),
        cancel_(cancel),
        has_deadline_(has_deadline),
        deadline_(deadline),
        node_budget_(node_budget),
        nodes_base_(nodes_base) {
    M_.n = e.n;
    M_.l = e.alphabet;
    M_.simple = true;
    present_.assign(e.idspace, 0);
    if (e.balance) ones_.assign(static_cast<size_t>(e.n), 0);
    if (e.kk) {
      patmask_.assign(e.kk_pattern.size(), 0);
      patcnt_.assign(e.kk_pattern.size() * e.kk_pats, 0);
      usable_miss_.assign(e.kk_pattern.size(), 0);
    }
    if (e.use_sym) {
      const long long deepest =
          e.kind == SearchKind::Forb
              ? std::min<long long>(e.cap, static_cast<long long>(e.idspace))
              : target_m;
      canon_.reset(e.n, e.alphabet, static_cast<int>(std::max<long long>(deepest, 1)));
    }
  }

  void push(ColId c) {
    const Column& col = e_.cols[c];
    M_.cols.push_back(col);
    present_[c] = 1;
    ids_.push_back(c);
    if (e_.balance)
      for (int i = 0; i < e_.n; ++i) ones_[static_cast<size_t>(i)] += col[static_cast<size_t>(i)] == 1;
    if (e_.kk) {
      for (size_t r = 0; r < e_.kk_pattern.size(); ++r) {
        const std::uint16_t p = e_.kk_pattern[r][c];
        if (patcnt_[r * e_.kk_pats + p]++ == 0) patmask_[r] |= 1u << p;
      }
    }
  }

  void pop() {
    ColId c = ids_.back();
    if (e_.balance) {
      const Column& col = e_.cols[c];
      for (int i = 0; i < e_.n; ++i) ones_[static_cast<size_t>(i)] -= col[static_cast<size_t>(i)] == 1;
    }
    if (e_.kk) {
      for (size_t r = 0; r < e_.kk_pattern.size(); ++r) {
        const std::uint16_t p = e_.kk_pattern[r][c];
        if (--patcnt_[r * e_.kk_pats + p] == 0) patmask_[r] &= ~(1u << p);
      }
    }
    ids_.pop_back();
    present_[c] = 0;
    M_.cols.pop_back();
  }

  // Appending column c to the current (family-free) state embeds the
  // complete member iff some tracked row subset would then show every
  // pattern. Equivalent to the family's creates_unchecked, much cheaper.
  bool kk_creates(ColId c) const {
    for (size_t r = 0; r < e_.kk_pattern.size(); ++r)
      if ((patmask_[r] | (1u << e_.kk_pattern[r][c])) == e_.kk_full) return true;
    return false;
  }

  // Sat phases add columns in ascending id order, so every absent id below
  // the newest column is locked out of the state forever. A saturated
  // completion must stay member-free yet gain the member once any locked-out
  // column is added, which forces some tracked row subset to end up missing
  // exactly that column's pattern there. Patterns only accumulate, so such a
  // subset must already miss the pattern now, and its other missing patterns
  // must all arrive via future columns -- each contributing at most one new
  // pattern per subset. A locked-out column with no qualifying subset kills
  // the whole subtree; every prefix of a true witness passes this test.
  bool skipped_columns_completable() {
    const int rem = m_ - M_.m();
    const size_t subsets = e_.kk_pattern.size();
    for (size_t r = 0; r < subsets; ++r) {
      const std::uint32_t miss = e_.kk_full & ~patmask_[r];
      usable_miss_[r] = std::popcount(miss) <= rem + 1 ? miss : 0u;
    }
    const ColId newest = ids_.back();
    for (ColId d = 0; d < newest; ++d) {
      if (present_[d]) continue;
      bool completable = false;
      for (size_t r = 0; r < subsets && !completable; ++r)
        completable = usable_miss_[r] >> e_.kk_pattern[r][d] & 1u;
      if (!completable) return false;
    }
    return true;
  }

  // Sat/MSat subtree walk toward exactly m_ columns. emit, when non-null,
  // intercepts states of size emit_depth (frontier construction); otherwise
  // leaves run the saturation test. Returns true once a witness is found.
  bool descend_level(ColId min_next, int emit_depth,
                     const std::function<void(const std::vector<ColId>&)>* emit) {
    const int j = M_.m();
    if (static_cast<std::uint64_t>(m_ - j) > e_.idspace) return false;
    const ColId hi = e_.idspace - static_cast<ColId>(m_ - j);  // inclusive
    for (ColId c = min_next; c <= hi; ++c) {
      tick();
      if (e_.check_free &&
          (e_.kk ? kk_creates(c) : e_.fam->creates_unchecked(M_, e_.cols[c])))
        continue;
      push(c);
      bool ok = true;
      if (e_.balance && !balance_reachable()) ok = false;
      if (ok && e_.kk && e_.kind == SearchKind::Sat && !skipped_columns_completable()) ok = false;
      if (ok && e_.use_sym && !canon_.canonical(e_.cols, ids_)) ok = false;
      if (ok) {
        if (emit && j + 1 == emit_depth) {
          (*emit)(ids_);
        } else if (j + 1 == m_) {
          if (leaf_accepts()) {
            found = true;
            witness = ids_;
            pop();
            return true;
          }
        } else if (descend_level(c + 1, emit_depth, emit)) {
          pop();
          return true;
        }
      }
      pop();
    }
    return false;
  }

  // Forb branch-and-bound walk. States never beat min(size + ids left, cap),
  // so subtrees bounded by the incumbent are cut; candidates are ascending,
  // which makes the bound monotone along the loop and allows breaking.
  void descend_forb(ColId min_next, int emit_depth,
                    const std::function<void(const std::vector<ColId>&)>* emit) {
    const int j = M_.m();
    for (ColId c = min_next; c < e_.idspace; ++c) {
      long long possible = j + 1 + static_cast<long long>(e_.idspace - 1 - c);
      if (possible > e_.cap) possible = e_.cap;
      if (possible <= std::max(best, forb_seed_)) break;
      tick();
      if (e_.kk ? kk_creates(c) : e_.fam->creates_unchecked(M_, e_.cols[c])) continue;
      push(c);
      if (!e_.use_sym || canon_.canonical(e_.cols, ids_)) {
        if (j + 1 > best) {
          best = j + 1;
          best_ids = ids_;
        }
        if (emit && j + 1 == emit_depth)
          (*emit)(ids_);
        else
          descend_forb(c + 1, emit_depth, emit);
      }
      pop();
    }
  }

  bool leaf_accepts() {
    if (e_.kind == SearchKind::MSat)
      return is_m_saturated(M_, *e_.fam).verdict == SatVerdict::Saturated;
    if (e_.kk) {
      for (ColId a = 0; a < e_.idspace; ++a)
        if (!present_[a] && !kk_creates(a)) return false;
      return true;
    }
    for (ColId a = 0; a < e_.idspace; ++a)
      if (!present_[a] && !e_.fam->creates_unchecked(M_, e_.cols[a])) return false;
    return true;
  }

  const Matrix& matrix() const { return M_; }

  std::uint64_t nodes = 0;
  bool found = false;
  std::vector<ColId> witness;
  long long best = 0;
  std::vector<ColId> best_ids;

 private:
  void tick() {
    ++nodes;
    if (node_budget_ && nodes_base_ + nodes > node_budget_) throw AbortWalk{};
    if ((nodes & 1023u) == 0) {
      if (cancel_ && cancel_->load(std::memory_order_relaxed)) throw AbortWalk{};
      if (has_deadline_ && Clock::now() >= deadline_) throw AbortWalk{};
    }
  }

  bool balance_reachable() const {
    const int size = M_.m();
    const int rem = m_ - size;
    for (int i = 0; i < e_.n; ++i) {
      const int one = ones_[static_cast<size_t>(i)];
      if (one + rem < e_.balance_need) return false;
      if (size - one + rem < e_.balance_need) return false;
    }
    return true;
  }

  const EngineCtx& e_;
  int m_;
  long long forb_seed_;
  const std::atomic<bool>* cancel_;
  bool has_deadline_;
  Clock::time_point deadline_;
  std::uint64_t node_budget_;
  std::uint64_t nodes_base_;

  Matrix M_;
  std::vector<std::uint8_t> present_;
  std::vector<int> ones_;
  std::vector<ColId> ids_;
  std::vector<std::uint32_t> patmask_;
  std::vector<std::uint16_t> patcnt_;
  std::vector<std::uint32_t> usable_miss_;
  CanonDecider canon_;
};

// ------------------------------------------------------------------------
// Frontier construction and per-task execution.

struct FrontierOut {
  std::vector<std::vector<ColId>> tasks;
  std::uint64_t nodes = 0;
  bool aborted = false;
  long long best = 0;  // Forb: largest accepted state seen at depth <= D
  std::vector<ColId> best_ids;
};

// counted = false replays a frontier during checkpoint resumption: the node
// count and budget checks are suppressed because the original pass already
// entered the accumulator.
FrontierOut build_frontier(const EngineCtx& e, const SearchProblem& p, int phase_m, int depth,
                           bool counted, std::uint64_t nodes_base, bool has_deadline,
                           Clock::time_point deadline) {
  FrontierOut out;
  Walker w(e, phase_m, e.seed_value, nullptr, counted && has_deadline, deadline,
           counted ? p.node_budget : 0, nodes_base);
  std::function<void(const std::vector<ColId>&)> emit = [&](const std::vector<ColId>& ids) {
    out.tasks.push_back(ids);
  };
  try {
    if (e.kind == SearchKind::Forb)
      w.descend_forb(0, depth, &emit);
    else
      w.descend_level(0, depth, &emit);
  } catch (const AbortWalk&) {
    out.aborted = true;
    out.tasks.clear();
  }
  out.nodes = w.nodes;
  out.best = w.best;
  out.best_ids = std::move(w.best_ids);
  return out;
}

struct TaskResult {
  std::uint64_t nodes = 0;
  bool aborted = false;
  bool found = false;
  std::vector<ColId> witness;
  long long best = 0;
  std::vector<ColId> best_ids;
  std::string error;
};

TaskResult run_task(const EngineCtx& e, int phase_m, const std::vector<ColId>& prefix,
                    const std::atomic<bool>& cancel, bool has_deadline, Clock::time_point deadline) {
  TaskResult r;
  Walker w(e, phase_m, e.seed_value, &cancel, has_deadline, deadline, 0, 0);
  try {
    for (ColId c : prefix) w.push(c);
    const ColId next = prefix.empty() ? 0 : prefix.back() + 1;
    if (e.kind == SearchKind::Forb) {
      w.descend_forb(next, -1, nullptr);
    } else if (static_cast<int>(prefix.size()) == phase_m) {
      // The split depth reached the target size; the prefix is the leaf.
      if (w.leaf_accepts()) {
        r.found = true;
        r.witness = prefix;
      }
    } else {
      w.descend_level(next, -1, nullptr);
    }
    r.found = r.found || w.found;
    if (w.found) r.witness = std::move(w.witness);
    r.best = w.best;
    r.best_ids = std::move(w.best_ids);
  } catch (const AbortWalk&) {
    r.aborted = true;
  } catch (const std::exception& ex) {
    r.error = ex.what();
  }
  r.nodes = w.nodes;
  return r;
}

// ------------------------------------------------------------------------
// Checkpoint file: resumable snapshot of the fold position. Only state
// folded in task order is recorded, so a resumed run retraces exactly the
// remaining work and total node counts match an uninterrupted run.

struct CkptState {
  int phase = 0;  // Sat/MSat: current m; Forb: -1
  bool frontier_done = false;
  std::uint64_t next_task = 0;
  std::uint64_t task_count = 0;
  std::uint64_t nodes = 0;
  long long best = 0;
  std::vector<ColId> best_ids;
  long long upper = 0;
  int size_low = 0;  // effective size range of the run that wrote the file
  int size_high = 0;
};

std::string serialize_ids(const std::vector<ColId>& ids) {
  if (ids.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(ids[i]);
  }
  return s;
}

std::vector<ColId> parse_ids(const std::string& s) {
  std::vector<ColId> ids;
  if (s == "-") return ids;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) ids.push_back(std::stoull(part));
  return ids;
}

void write_checkpoint(const std::string& path, const std::string& fingerprint, const EngineCtx& e,
                      const CkptState& st) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("search: cannot write checkpoint file " + tmp);
    out << "SATKIT-CKPT 1\n";
    out << "fingerprint " << fingerprint << "\n";
    out << "kind " << search_kind_name(e.kind) << "\n";
    out << "n " << e.n << "\n";
    out << "alphabet " << e.alphabet << "\n";
    out << "upper " << st.upper << "\n";
    out << "range " << st.size_low << "," << st.size_high << "\n";
    out << "phase " << st.phase << "\n";
    out << "frontier_done " << (st.frontier_done ? 1 : 0) << "\n";
    out << "next_task " << st.next_task << "\n";
    out << "task_count " << st.task_count << "\n";
    out << "nodes " << st.nodes << "\n";
    out << "best " << st.best << "\n";
    out << "best_ids " << serialize_ids(st.best_ids) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

CkptState read_checkpoint(const std::string& path, const std::string& fingerprint,
                          const EngineCtx& e) {
  std::ifstream in(path);
  if (!in) throw Error("search: cannot read checkpoint file " + path);
  std::string header;
  std::getline(in, header);
  if (header != "SATKIT-CKPT 1")
    throw Error("search: " + path + " is not a version-1 checkpoint file");
  CkptState st;
  std::string key, value;
  auto expect = [&](const std::string& want) {
    if (!(in >> key >> value) || key != want)
      throw Error("search: checkpoint file " + path + " is corrupt (missing " + want + ")");
    return value;
  };
  if (expect("fingerprint") != fingerprint)
    throw Error("search: checkpoint file " + path + " belongs to a different search (fingerprint mismatch)");
  if (expect("kind") != search_kind_name(e.kind))
    throw Error("search: checkpoint kind does not match this search");
  if (std::stoi(expect("n")) != e.n || std::stoi(expect("alphabet")) != e.alphabet)
    throw Error("search: checkpoint host shape does not match this search");
  st.upper = std::stoll(expect("upper"));
  {
    const std::string range = expect("range");
    const size_t comma = range.find(',');
    if (comma == std::string::npos)
      throw Error("search: checkpoint file " + path + " is corrupt (bad range)");
    st.size_low = std::stoi(range.substr(0, comma));
    st.size_high = std::stoi(range.substr(comma + 1));
  }
  st.phase = std::stoi(expect("phase"));
  st.frontier_done = expect("frontier_done") == "1";
  st.next_task = std::stoull(expect("next_task"));
  st.task_count = std::stoull(expect("task_count"));
  st.nodes = std::stoull(expect("nodes"));
  st.best = std::stoll(expect("best"));
  st.best_ids = parse_ids(expect("best_ids"));
  return st;
}

// ------------------------------------------------------------------------
// Ordered fold over the task list with a worker pool. Results are consumed
// strictly in task order no matter when workers deliver them, so values,
// witnesses, and node counts are independent of --jobs. Workers observe the
// stop flag and quit early; their undelivered results are discarded.

enum class PhaseEnd { Exhausted, Found, Aborted };

struct PhaseHooks {
  // save(frontier_done, next_task): persist the fold position (no-op when
  // checkpointing is off).
  std::function<void(bool, std::uint64_t)> save;
};

struct PhaseIO {
  std::uint64_t& acc_nodes;
  long long& best;
  std::vector<ColId>& best_ids;
  std::vector<ColId>& found_ids;
  std::uint64_t& task_count;
};

PhaseEnd run_phase(const EngineCtx& e, const SearchProblem& p, int phase_m, int depth,
                   bool resume_mid, std::uint64_t resume_task, bool has_deadline,
                   Clock::time_point deadline, const PhaseHooks& hooks, PhaseIO io) {
  if (has_deadline && Clock::now() >= deadline) {
    hooks.save(resume_mid, resume_task);
    return PhaseEnd::Aborted;
  }

  FrontierOut fr = build_frontier(e, p, phase_m, depth, /*counted=*/!resume_mid, io.acc_nodes,
                                  has_deadline, deadline);
  if (!resume_mid) {
    if (fr.aborted) {
      hooks.save(false, 0);
      return PhaseEnd::Aborted;
    }
    io.acc_nodes += fr.nodes;
    if (fr.best > io.best) {
      io.best = fr.best;
      io.best_ids = fr.best_ids;
    }
  }
  io.task_count = fr.tasks.size();
  const std::vector<std::vector<ColId>>& tasks = fr.tasks;
  if (resume_mid && resume_task > tasks.size())
    throw Error("search: checkpoint task position is out of range (corrupt checkpoint?)");
  const std::uint64_t start = resume_mid ? resume_task : 0;
  if (!resume_mid) hooks.save(true, 0);
  if (p.node_budget && io.acc_nodes > p.node_budget) {
    hooks.save(true, start);
    return PhaseEnd::Aborted;
  }
  if (tasks.size() == start) return PhaseEnd::Exhausted;

  std::vector<std::optional<TaskResult>> results(tasks.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::uint64_t> next{start};
  std::atomic<bool> stop{false};

  auto worker = [&]() {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::uint64_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      TaskResult r = run_task(e, phase_m, tasks[i], stop, has_deadline, deadline);
      {
        std::lock_guard<std::mutex> lock(mu);
        results[i] = std::move(r);
      }
      cv.notify_all();
    }
  };
  const int pool_size = std::min<std::uint64_t>(p.jobs, tasks.size() - start);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(pool_size));
  for (int t = 0; t < pool_size; ++t) pool.emplace_back(worker);
  auto join_all = [&]() {
    stop.store(true);
    for (std::thread& t : pool) t.join();
  };

  PhaseEnd end = PhaseEnd::Exhausted;
  try {
    int since_save = 0;
    for (std::uint64_t i = start; i < tasks.size(); ++i) {
      TaskResult r;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&]() { return results[i].has_value(); });
        r = std::move(*results[i]);
        results[i].reset();
      }
      if (!r.error.empty()) throw Error("search: " + r.error);
      if (r.aborted) {
        hooks.save(true, i);
        end = PhaseEnd::Aborted;
        break;
      }
      io.acc_nodes += r.nodes;
      if (e.kind == SearchKind::Forb) {
        if (r.best > io.best) {
          io.best = r.best;
          io.best_ids = std::move(r.best_ids);
        }
        if (io.best >= e.cap) {
          end = PhaseEnd::Exhausted;  // cap met: nothing later can improve
          hooks.save(true, tasks.size());
          break;
        }
      } else if (r.found) {
        io.found_ids = std::move(r.witness);
        end = PhaseEnd::Found;
        break;
      }
      if (p.node_budget && io.acc_nodes > p.node_budget) {
        hooks.save(true, i + 1);
        end = PhaseEnd::Aborted;
        break;
      }
      if (has_deadline && Clock::now() >= deadline) {
        hooks.save(true, i + 1);
        end = PhaseEnd::Aborted;
        break;
      }
      if (++since_save >= kCheckpointCadence) {
        since_save = 0;
        hooks.save(true, i + 1);
      }
    }
  } catch (...) {
    join_all();
    throw;
  }
  join_all();
  return end;
}

// ------------------------------------------------------------------------
// Exact-result verification, cache, and record assembly.

Matrix matrix_from_ids(const EngineCtx& e, const std::vector<ColId>& ids) {
  std::vector<Column> cols;
  cols.reserve(ids.size());
  for (ColId c : ids) cols.push_back(e.cols[c]);
  return make_matrix(e.n, e.alphabet, std::move(cols));
}

bool verify_exact(const EngineCtx& e, long long value, const Matrix& witness) {
  if (witness.n != e.n || witness.l != e.alphabet || witness.m() != value) return false;
  switch (e.kind) {
    case SearchKind::Sat:
      return is_saturated(witness, *e.fam).verdict == SatVerdict::Saturated;
    case SearchKind::MSat:
      return is_m_saturated(witness, *e.fam).verdict == SatVerdict::Saturated;
    case SearchKind::Forb:
      // Maximality is established by the exhausted search; the witness
      // check covers freeness and the claimed size.
      return family_free(witness, *e.fam) && value <= e.cap;
  }
  return false;
}

std::string witness_file_path(const std::string& cache_path, const std::string& fingerprint) {
  return cache_path + "." + fingerprint + ".witness.txt";
}

std::optional<ResultRecord> cache_lookup(const SearchProblem& p, const EngineCtx& e,
                                         const std::string& fingerprint) {
  std::ifstream in(p.cache_path);
  if (!in) return std::nullopt;
  std::string line;
  std::optional<std::vector<std::string>> hit;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) fields.push_back(f);
    if (fields.size() != 7) continue;
    if (fields[0] != fingerprint || fields[1] != search_kind_name(p.kind)) continue;
    if (fields[2] != std::to_string(p.n)) continue;
    hit = fields;  // last matching line wins (append-only file)
  }
  if (!hit) return std::nullopt;
  ResultRecord rec;
  try {
    rec.value_low = rec.value_high = std::stoll((*hit)[3]);
    rec.nodes = std::stoull((*hit)[5]);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  const std::string& wpath = (*hit)[4];
  if (wpath == "-") return std::nullopt;
  std::ifstream win(wpath);
  if (!win) return std::nullopt;
  std::stringstream buf;
  buf << win.rdbuf();
  Matrix witness;
  try {
    witness = parse_matrix(buf.str());
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!verify_exact(e, rec.value_low, witness)) return std::nullopt;
  rec.kind = p.kind;
  rec.n = p.n;
  rec.alphabet = p.alphabet;
  rec.status = "exact";
  rec.witness = std::move(witness);
  rec.from_cache = true;
  rec.fingerprint = fingerprint;
  return rec;
}

void cache_append(const SearchProblem& p, const ResultRecord& rec) {
  const std::string wpath = witness_file_path(p.cache_path, rec.fingerprint);
  {
    std::ofstream wout(wpath, std::ios::trunc);
    if (!wout) throw Error("search: cannot write cache witness file " + wpath);
    wout << format_matrix(*rec.witness);
  }
  std::ofstream out(p.cache_path, std::ios::app);
  if (!out) throw Error("search: cannot append to cache file " + p.cache_path);
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.3f", rec.seconds);
  out << rec.fingerprint << '\t' << search_kind_name(rec.kind) << '\t' << rec.n << '\t'
      << rec.value_low << '\t' << wpath << '\t' << rec.nodes << '\t' << secs << '\n';
}

}  // namespace

std::string search_kind_name(SearchKind kind) {
  switch (kind) {
    case SearchKind::Sat:
      return "sat";
    case SearchKind::MSat:
      return "msat";
    case SearchKind::Forb:
      return "forb";
  }
  return "?";
}

std::optional<SearchKind> parse_search_kind(std::string_view name) {
  if (name == "sat") return SearchKind::Sat;
  if (name == "msat") return SearchKind::MSat;
  if (name == "forb") return SearchKind::Forb;
  return std::nullopt;
}

std::string search_fingerprint(const SearchProblem& problem) {
  if (!problem.family) throw Error("search: no family given");
  std::string input = search_kind_name(problem.kind);
  input += '\n';
  input += std::to_string(problem.n);
  input += '\n';
  input += std::to_string(problem.alphabet);
  input += '\n';
  input += problem.family->encoding();
  return to_hex16(fnv1a64(input));
}

ResultRecord run_search(const SearchProblem& p) {
  const Clock::time_point t0 = Clock::now();
  EngineCtx e = make_engine(p);
  const std::string fingerprint = search_fingerprint(p);

  if (p.size_low < 0 || p.size_high < 0)
    throw Error("search: size bounds must be nonnegative");
  const bool sized = p.size_low > 0 || p.size_high > 0;
  if (sized && p.kind == SearchKind::Forb)
    throw Error("search: size bounds apply to sat and msat searches only");
  if (p.size_high > 0 && static_cast<ColId>(p.size_high) > e.idspace)
    throw Error("search: size bound exceeds the column space");
  const long long size_lo = p.size_low;
  const long long size_hi = p.size_high > 0 ? p.size_high : e.upper;
  if (size_lo > size_hi) throw Error("search: empty size range");

  ResultRecord rec;
  rec.kind = p.kind;
  rec.n = p.n;
  rec.alphabet = p.alphabet;
  rec.fingerprint = fingerprint;

  auto elapsed = [&]() { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  if (!p.cache_path.empty() && !sized) {
    if (std::optional<ResultRecord> hit = cache_lookup(p, e, fingerprint)) {
      hit->seconds = elapsed();
      if (!p.checkpoint_path.empty()) std::filesystem::remove(p.checkpoint_path);
      return *hit;
    }
  }

  const bool has_deadline = p.time_budget_seconds > 0;
  const Clock::time_point deadline =
      t0 + std::chrono::duration_cast<Clock::duration>(
               std::chrono::duration<double>(p.time_budget_seconds));

  auto finish_exact = [&](long long value, Matrix witness) {
    if (!verify_exact(e, value, witness))
      throw std::logic_error("search: result verification failed (engine bug)");
    rec.status = "exact";
    rec.value_low = rec.value_high = value;
    rec.witness = std::move(witness);
    rec.seconds = elapsed();
    if (!p.cache_path.empty() && !sized) cache_append(p, rec);
    if (!p.checkpoint_path.empty()) {
      std::error_code ec;
      std::filesystem::remove(p.checkpoint_path, ec);
    }
    return rec;
  };
  auto finish_bounds = [&](long long low, long long high) {
    rec.status = "bounds";
    rec.value_low = low;
    rec.value_high = high;
    rec.seconds = elapsed();
    return rec;
  };

  // Forb with the counting bound met by the constructed incumbent: the
  // branch-and-bound would cut every subtree at its root, so the search is
  // over before it starts.
  if (p.kind == SearchKind::Forb && !e.seed_ids.empty() && e.seed_value == e.cap) {
    if (!p.checkpoint_path.empty()) {
      std::error_code ec;
      std::filesystem::remove(p.checkpoint_path, ec);
    }
    rec.nodes = 0;
    return finish_exact(e.cap, matrix_from_ids(e, e.seed_ids));
  }

  const long long upper_for_ckpt = p.kind == SearchKind::Forb ? e.cap : e.upper;
  const int ck_lo = static_cast<int>(size_lo);
  const int ck_hi = p.kind == SearchKind::Forb ? 0 : static_cast<int>(size_hi);
  std::optional<CkptState> resume;
  if (!p.checkpoint_path.empty() && std::filesystem::exists(p.checkpoint_path)) {
    resume = read_checkpoint(p.checkpoint_path, fingerprint, e);
    if (resume->upper != upper_for_ckpt)
      throw Error("search: checkpoint bound does not match this search (corrupt checkpoint?)");
    if (resume->size_low != ck_lo || resume->size_high != ck_hi)
      throw Error("search: checkpoint size range does not match this search");
  }

  std::uint64_t acc_nodes = resume ? resume->nodes : 0;
  long long best = 0;
  std::vector<ColId> best_ids;
  if (p.kind == SearchKind::Forb) {
    best = e.seed_value;
    best_ids = e.seed_ids;
    if (resume && resume->best > best) {
      best = resume->best;
      best_ids = resume->best_ids;
    }
  }
  std::vector<ColId> found_ids;
  std::uint64_t task_count = 0;

  const int depth_base = p.split_depth > 0 ? p.split_depth : kAutoSplitDepth;

  auto make_hooks = [&](int phase) {
    PhaseHooks hooks;
    if (p.checkpoint_path.empty()) {
      hooks.save = [](bool, std::uint64_t) {};
    } else {
      hooks.save = [&, phase](bool frontier_done, std::uint64_t next_task) {
        CkptState st;
        st.phase = phase;
        st.frontier_done = frontier_done;
        st.next_task = next_task;
        st.task_count = task_count;
        st.nodes = acc_nodes;
        st.best = best;
        st.best_ids = best_ids;
        st.upper = upper_for_ckpt;
        st.size_low = ck_lo;
        st.size_high = ck_hi;
        write_checkpoint(p.checkpoint_path, fingerprint, e, st);
      };
    }
    return hooks;
  };
  PhaseIO io{acc_nodes, best, best_ids, found_ids, task_count};

  if (p.kind == SearchKind::Forb) {
    if (resume && resume->phase != -1)
      throw Error("search: checkpoint phase does not match this search (corrupt checkpoint?)");
    const PhaseEnd end =
        run_phase(e, p, /*phase_m=*/-1, depth_base, resume && resume->frontier_done,
                  resume ? resume->next_task : 0, has_deadline, deadline, make_hooks(-1), io);
    if (end == PhaseEnd::Aborted) {
      rec.nodes = acc_nodes;
      return finish_bounds(best, e.cap);
    }
    rec.nodes = acc_nodes;
    return finish_exact(best, matrix_from_ids(e, best_ids));
  }

  // Sat / MSat: greedy closure bounds the answer above; sizes are tried in
  // increasing order, so the first witness is the minimum. A saturated
  // matrix is monotonically saturated as well, so the closure also settles
  // the m-sat search when every smaller size fails. The closure is itself
  // an accepting witness at e.upper, so the size range needs explicit
  // phases only below it; a range that excludes the closure ends in a
  // bounds record when every phase comes up empty.
  const bool closure_in_range = e.upper >= size_lo && e.upper <= size_hi;
  const int last_phase = static_cast<int>(closure_in_range ? e.upper - 1 : size_hi);
  int m_start = std::max(1, static_cast<int>(size_lo));
  bool resume_mid = false;
  std::uint64_t resume_task = 0;
  if (resume) {
    if (resume->phase < m_start || resume->phase > last_phase + 1)
      throw Error("search: checkpoint phase does not match this search (corrupt checkpoint?)");
    m_start = resume->phase;
    resume_mid = resume->frontier_done;
    resume_task = resume->next_task;
  }
  for (int m = m_start; m <= last_phase; ++m) {
    const int depth = std::min(depth_base, m);
    const PhaseEnd end = run_phase(e, p, m, depth, resume_mid, resume_task, has_deadline, deadline,
                                   make_hooks(m), io);
    resume_mid = false;
    resume_task = 0;
    if (end == PhaseEnd::Found) {
      rec.nodes = acc_nodes;
      return finish_exact(m, matrix_from_ids(e, found_ids));
    }
    if (end == PhaseEnd::Aborted) {
      rec.nodes = acc_nodes;
      return finish_bounds(m, e.upper);
    }
    if (!p.checkpoint_path.empty()) {
      CkptState st;
      st.phase = m + 1;
      st.frontier_done = false;
      st.next_task = 0;
      st.task_count = 0;
      st.nodes = acc_nodes;
      st.best = best;
      st.best_ids = best_ids;
      st.upper = upper_for_ckpt;
      st.size_low = ck_lo;
      st.size_high = ck_hi;
      write_checkpoint(p.checkpoint_path, fingerprint, e, st);
    }
  }
  rec.nodes = acc_nodes;
  if (closure_in_range) return finish_exact(e.upper, e.closure);
  return finish_bounds(static_cast<long long>(last_phase) + 1, e.upper);
}

bool state_is_canonical(const Matrix& M) {
  std::vector<ColId> ids(static_cast<size_t>(M.m()));
  for (int j = 0; j < M.m(); ++j) {
    ids[static_cast<size_t>(j)] = static_cast<ColId>(j);
    if (j > 0 && column_id(M.cols[static_cast<size_t>(j) - 1], M.l) >
                     column_id(M.cols[static_cast<size_t>(j)], M.l))
      throw Error("state_is_canonical: columns must be sorted by ColumnId");
  }
  if (M.n == 0 || M.m() == 0) return true;
  CanonDecider decider;
  decider.reset(M.n, M.l, M.m());
  return decider.canonical(M.cols, ids);
}

}  // namespace satkit
