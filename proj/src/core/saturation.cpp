// Saturation checkers and constructions on top of the containment engine.
#include "core/saturation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

namespace satkit {

namespace {

constexpr std::uint64_t kMaxEnumerableColumns = 1ull << 26;

std::uint64_t guarded_space(const Matrix& M, const char* who) {
  std::uint64_t total = column_space_size(M.n, M.l);
  if (total > kMaxEnumerableColumns)
    throw Error(std::string(who) + ": column space (l+1)^n is too large to enumerate");
  return total;
}

std::unordered_set<ColId> id_set(const Matrix& M) {
  std::unordered_set<ColId> s;
  s.reserve(M.cols.size() * 2);
  for (const Column& c : M.cols) s.insert(column_id(c, M.l));
  return s;
}

SaturationReport admissibility(const Matrix& M, const ForbiddenFamily& fam) {
  SaturationReport rep;
  if (const std::vector<Matrix>* mem = fam.members()) {
    for (size_t i = 0; i < mem->size(); ++i)
      if (auto w = contains(M, (*mem)[i])) {
        rep.verdict = SatVerdict::NotAdmissible;
        rep.violating_member = static_cast<int>(i);
        rep.violation = std::move(w);
        return rep;
      }
  } else if (fam.violates(M)) {
    rep.verdict = SatVerdict::NotAdmissible;
  }
  return rep;
}

// All |A| = k subsets of [n] (0-based rows), in increasing combinadic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > n || k < 0) return;
  std::vector<int> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

}  // namespace

SaturationReport is_saturated(const Matrix& M, const ForbiddenFamily& fam) {
  if (!M.simple) throw Error("is_saturated: matrix must be simple");
  if (fam.alphabet() > M.l)
    throw Error("is_saturated: family alphabet exceeds matrix alphabet bound");
  SaturationReport rep = admissibility(M, fam);
  if (rep.verdict == SatVerdict::NotAdmissible) return rep;

  const std::uint64_t total = guarded_space(M, "is_saturated");
  std::unordered_set<ColId> present = id_set(M);
  for (ColId id = 0; id < total; ++id) {
    if (present.count(id)) continue;
    Column c = column_from_id(id, M.n, M.l);
    if (!fam.creates_unchecked(M, c)) {
      rep.verdict = SatVerdict::Extendable;
      rep.extension = std::move(c);
      return rep;
    }
  }
  rep.verdict = SatVerdict::Saturated;
  return rep;
}

namespace {

SaturationReport m_saturated_impl(const Matrix& M, const ForbiddenFamily& fam, bool literal) {
  if (!M.simple) throw Error("is_m_saturated: matrix must be simple");
  const std::vector<Matrix>* mem = fam.members();
  if (!mem) throw Error("is_m_saturated: requires an explicit family");
  if (fam.alphabet() > M.l)
    throw Error("is_m_saturated: family alphabet exceeds matrix alphabet bound");

  // Candidate row subsets: every size if literal, else one size per member.
  std::set<int> sizes;
  if (literal) {
    for (int s = 0; s <= M.n; ++s) sizes.insert(s);
  } else {
    for (const Matrix& F : *mem)
      if (F.n <= M.n) sizes.insert(F.n);
  }
  // Precompute the family-free row subsets once; they do not depend on C.
  std::vector<std::pair<std::vector<int>, Matrix>> free_subsets;
  for (int s : sizes) {
    for_each_subset(M.n, s, [&](const std::vector<int>& rows0) {
      RowSubset rows;
      rows.reserve(rows0.size());
      for (int r : rows0) rows.push_back(r + 1);
      Matrix MR = submatrix_rows(M, rows);
      if (family_free(MR, fam)) free_subsets.emplace_back(rows0, std::move(MR));
    });
  }

  SaturationReport rep;
  const std::uint64_t total = guarded_space(M, "is_m_saturated");
  std::unordered_set<ColId> present = id_set(M);
  for (ColId id = 0; id < total; ++id) {
    if (present.count(id)) continue;
    Column c = column_from_id(id, M.n, M.l);
    bool created = false;
    for (const auto& [rows0, MR] : free_subsets) {
      Column cr;
      cr.reserve(rows0.size());
      for (int r : rows0) cr.push_back(c[static_cast<size_t>(r)]);
      if (fam.creates_unchecked(MR, cr)) {
        created = true;
        break;
      }
    }
    if (!created) {
      rep.verdict = SatVerdict::Extendable;
      rep.extension = std::move(c);
      return rep;
    }
  }
  rep.verdict = SatVerdict::Saturated;
  return rep;
}

}  // namespace

SaturationReport is_m_saturated(const Matrix& M, const ForbiddenFamily& fam) {
  return m_saturated_impl(M, fam, /*literal=*/false);
}

SaturationReport is_m_saturated_literal(const Matrix& M, const ForbiddenFamily& fam) {
  return m_saturated_impl(M, fam, /*literal=*/true);
}

Matrix close_over(const Matrix& M, const ForbiddenFamily& fam, const std::vector<ColId>& order) {
  if (!M.simple) throw Error("close: matrix must be simple");
  if (fam.violates(M)) throw Error("close: matrix is not family-free");
  Matrix cur = M;
  std::unordered_set<ColId> present = id_set(M);
  for (ColId id : order) {
    if (present.count(id)) continue;
    Column c = column_from_id(id, cur.n, cur.l);
    if (!fam.creates_unchecked(cur, c)) {
      cur.cols.push_back(std::move(c));
      present.insert(id);
    }
  }
  cur.simple = true;  // only absent columns were appended
  return cur;
}

Matrix close(const Matrix& M, const ForbiddenFamily& fam, CloseOrder order) {
  if (order == CloseOrder::GreedyMinExtensions) {
    if (!M.simple) throw Error("close: matrix must be simple");
    if (fam.violates(M)) throw Error("close: matrix is not family-free");
    const std::uint64_t total = guarded_space(M, "close");
    Matrix cur = M;
    std::unordered_set<ColId> present = id_set(M);
    // Current admissible absent columns; addition only shrinks this set.
    std::vector<ColId> adm;
    for (ColId id = 0; id < total; ++id)
      if (!present.count(id) && !fam.creates_unchecked(cur, column_from_id(id, cur.n, cur.l)))
        adm.push_back(id);
    while (!adm.empty()) {
      ColId best_id = adm[0];
      size_t best_left = adm.size();
      std::vector<ColId> best_adm;
      for (ColId cand : adm) {
        Matrix next = cur;
        next.cols.push_back(column_from_id(cand, cur.n, cur.l));
        std::vector<ColId> left;
        for (ColId other : adm)
          if (other != cand && !fam.creates_unchecked(next, column_from_id(other, cur.n, cur.l)))
            left.push_back(other);
        if (left.size() < best_left) {
          best_left = left.size();
          best_id = cand;
          best_adm = std::move(left);
        }
      }
      cur.cols.push_back(column_from_id(best_id, cur.n, cur.l));
      present.insert(best_id);
      adm = std::move(best_adm);
    }
    cur.simple = true;
    return cur;
  }
  const std::uint64_t total = guarded_space(M, "close");
  std::vector<ColId> ids(total);
  for (std::uint64_t i = 0; i < total; ++i)
    ids[static_cast<size_t>(i)] = (order == CloseOrder::IdAscending) ? i : total - 1 - i;
  return close_over(M, fam, ids);
}

DuplicationResult extend_by_duplication(const Matrix& M, const ForbiddenFamily& fam, int i) {
  if (!M.simple) throw Error("extend_by_duplication: matrix must be simple");
  if (i < 1 || i > M.n) throw Error("extend_by_duplication: row index out of range");
  Matrix dup = duplicate_row(M, i);
  if (fam.violates(dup))
    throw Error("extend_by_duplication: duplicating row " + std::to_string(i) +
                " breaks family-freeness");

  // Columns that agree outside row i: only (C', a, c) with a != c and both
  // (C', a), (C', c) in M can be admissible for the duplicated matrix (any
  // other new column restricted to the original rows is either present with
  // a matching pair entry or absent from M, and M was saturated).
  std::map<Column, std::vector<std::uint8_t>> groups;
  for (const Column& c : M.cols) {
    Column reduced = c;
    reduced.erase(reduced.begin() + (i - 1));
    groups[reduced].push_back(c[static_cast<size_t>(i - 1)]);
  }
  DuplicationResult out;
  std::vector<ColId> cand;
  for (auto& [reduced, vals] : groups) {
    if (vals.size() < 2) continue;
    std::sort(vals.begin(), vals.end());
    out.pair_count += static_cast<int>(vals.size() * (vals.size() - 1) / 2);
    for (std::uint8_t a : vals)
      for (std::uint8_t c : vals) {
        if (a == c) continue;
        Column col = reduced;
        col.insert(col.begin() + (i - 1), a);
        col.push_back(c);
        cand.push_back(column_id(col, dup.l));
      }
  }
  std::sort(cand.begin(), cand.end());
  Matrix ext = close_over(dup, fam, cand);
  out.added.assign(ext.cols.begin() + dup.m(), ext.cols.end());
  if (ext.m() > M.m() + 2 * out.pair_count)
    throw std::logic_error("extend_by_duplication: size bound e' <= e + 2d violated");
  out.matrix = std::move(ext);
  return out;
}

std::optional<int> find_bondy_row(const Matrix& M) {
  if (!M.simple) throw Error("find_bondy_row: matrix must be simple");
  for (int i = 1; i <= M.n; ++i)
    if (delete_row(M, i).simple) return i;
  return std::nullopt;
}

bool row_balance_check(const Matrix& M, int k) {
  if (M.l != 1) throw Error("row_balance_check: binary matrices only");
  if (k < 1 || M.n < k) throw Error("row_balance_check: requires v(M) >= k >= 1");
  const int need = (1 << (k - 1)) - 1;
  for (int r = 0; r < M.n; ++r) {
    int ones = 0;
    for (int j = 0; j < M.m(); ++j) ones += M.at(r, j);
    if (ones < need || M.m() - ones < need) return false;
  }
  return true;
}

}  // namespace satkit
