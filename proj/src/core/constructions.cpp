// Gallery builders, text-asset loading, and the general polynomial-size
// saturated-matrix pipeline (layer parameters, hypergraph seed, star
// reduction, closure).
#include "core/constructions.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "core/saturation.hpp"

namespace satkit {

namespace {

Matrix from_columns(int n, std::vector<Column> cols) { return make_matrix(n, 1, std::move(cols)); }

// {lo, ..., hi} as a row subset; empty when lo > hi.
RowSubset interval_set(int lo, int hi) {
  RowSubset r;
  for (int i = lo; i <= hi; ++i) r.push_back(i);
  return r;
}

// [n] \ {i}.
RowSubset complement_set(int n, int i) {
  RowSubset r;
  for (int j = 1; j <= n; ++j)
    if (j != i) r.push_back(j);
  return r;
}

int column_sum(const Column& c) { return std::accumulate(c.begin(), c.end(), 0); }

// Calls fn on every r-subset of [n] (1-based, ascending) in lex order.
void for_each_subset_lex(int n, int r, const std::function<void(const RowSubset&)>& fn) {
  RowSubset cur;
  cur.reserve(static_cast<size_t>(r));
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == r) {
      fn(cur);
      return;
    }
    int remaining = r - static_cast<int>(cur.size());
    for (int v = next; v + remaining - 1 <= n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
}

// ------------------------------------------------------------- families ----

std::shared_ptr<const ExplicitFamily> k_family(int k) { return single_member_family(build_K(k)); }

// One row, m zeros and l ones.
std::shared_ptr<const ExplicitFamily> one_row_family(int m, int l) {
  std::vector<Column> cols;
  cols.insert(cols.end(), static_cast<size_t>(m), Column{0});
  cols.insert(cols.end(), static_cast<size_t>(l), Column{1});
  return single_member_family(make_matrix(1, 1, std::move(cols)));
}

// l copies of the two-row all-ones column.
std::shared_ptr<const ExplicitFamily> l_t22_family(int l) {
  std::vector<Column> cols(static_cast<size_t>(l), Column{1, 1});
  return single_member_family(make_matrix(2, 1, std::move(cols)));
}

// [(0,1)^T, l copies of (1,1)^T].
std::shared_ptr<const ExplicitFamily> l_t22_plus01_family(int l) {
  std::vector<Column> cols{Column{0, 1}};
  cols.insert(cols.end(), static_cast<size_t>(l), Column{1, 1});
  return single_member_family(make_matrix(2, 1, std::move(cols)));
}

// ------------------------------------------------------------- builders ----

Matrix build_k3_sat(int n, const ForbiddenFamily& fam) {
  if (n == 4) return load_matrix_asset("gallery/k3_sat_4.txt");
  Matrix m6 = load_matrix_asset("gallery/k3_sat_6.txt");
  if (n == 5) {
    // The least row of the 6x10 matrix whose deletion stays saturated.
    for (int i = 1; i <= 6; ++i) {
      Matrix d = delete_row(m6, i);
      if (d.simple && is_saturated(d, fam).verdict == SatVerdict::Saturated) return d;
    }
    throw std::logic_error("K3_SAT: no row deletion of the 6x10 matrix stays saturated");
  }
  Matrix m = m6;
  while (m.n < n) m = extend_by_duplication(m, fam, 1).matrix;
  return m;
}

bool one_row_supported(int n, int m, int l) {
  if (l < 1 || m < 0 || m > l) return false;
  if (l == 1) return n >= 1;  // m is 0 or 1
  if (m == 0) return n >= std::max(1, l - 1);
  if (m == 1) return l == 2 && n >= l;
  return n >= l;  // 2 <= m <= l; avoids the chi_{[m-1,l-1]} = all-ones collision at n = l-1
}

int one_row_expected_size(int m, int l) {
  if (l == 1) return 1;
  if (m == 0) return l == 2 ? 2 : l + 1;
  return l + m - 1;
}

Matrix build_one_row(int n, int m, int l) {
  const Column zero(static_cast<size_t>(n), 0), ones(static_cast<size_t>(n), 1);
  std::vector<Column> cols;
  if (l == 1) {
    cols.push_back(zero);
  } else if (m == 0 && l == 2) {
    cols = {zero, ones};
  } else if (m == 0) {  // l >= 3: every row carries exactly l-1 ones
    cols.push_back(zero);
    cols.push_back(ones);
    for (int i = 1; i <= l - 2; ++i) cols.push_back(chi(complement_set(n, i), n));
    cols.push_back(chi(interval_set(1, l - 2), n));
  } else if (m == 1 && l == 2) {
    cols = {ones, chi(complement_set(n, 1), n)};
  } else {  // 2 <= m <= l: every row carries exactly l ones and m-1 zeros
    cols.push_back(ones);
    for (int i = 1; i <= m - 2; ++i) cols.push_back(chi(RowSubset{i}, n));
    for (int i = 1; i <= l - 1; ++i) cols.push_back(chi(complement_set(n, i), n));
    cols.push_back(chi(interval_set(m - 1, l - 1), n));
  }
  return from_columns(n, std::move(cols));
}

Matrix build_lt22_sat(int n, int l) {
  if (l == 1) return build_T(n, 0, 1);
  if (l == 2) return concat(build_T(n, 0, 1), build_T(n, n, n));
  // l == 3.
  if (n == 4) {
    // Rows encode all 3-subsets of [4]: column j is chi_{[4] minus {j}}.
    std::vector<Column> cols = build_T(4, 0, 1).cols;
    for (int j = 1; j <= 4; ++j) cols.push_back(chi(complement_set(4, j), 4));
    return from_columns(4, std::move(cols));
  }
  if (n == 7) {
    // Rows encode the complements of the Fano plane's lines.
    static const int kFano[7][3] = {{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7},
                                    {5, 6, 1}, {6, 7, 2}, {7, 1, 3}};
    std::vector<Column> cols = build_T(7, 0, 1).cols;
    for (int j = 1; j <= 7; ++j) {
      Column c(7, 0);
      for (int i = 0; i < 7; ++i) {
        bool on_line = kFano[i][0] == j || kFano[i][1] == j || kFano[i][2] == j;
        c[static_cast<size_t>(i)] = on_line ? 0 : 1;
      }
      cols.push_back(std::move(c));
    }
    return from_columns(7, std::move(cols));
  }
  std::vector<Column> cols = build_T(n, 0, 1).cols;
  cols.push_back(chi(interval_set(1, n - 1), n));
  cols.push_back(Column(static_cast<size_t>(n), 1));
  for (int i = 1; i <= n - 1; ++i) cols.push_back(chi(RowSubset{i, n}, n));
  return from_columns(n, std::move(cols));
}

Matrix build_lt22_remark(int n, int l, const ForbiddenFamily& fam) {
  std::vector<Column> cols;
  for (int i = 1; i <= l; ++i) cols.push_back(chi(complement_set(n, i), n));
  return close(from_columns(n, std::move(cols)), fam);
}

Matrix build_chain(int n) {
  std::vector<Column> cols;
  for (int i = 0; i <= n; ++i) cols.push_back(chi(interval_set(1, i), n));
  return from_columns(n, std::move(cols));
}

Matrix build_sat3(int n) {
  std::vector<Column> cols{chi(complement_set(n, 1), n), chi(complement_set(n, 2), n),
                           chi(interval_set(3, n), n)};
  return from_columns(n, std::move(cols));
}

Matrix build_t30t33(int n) {
  if (n == 4) return load_matrix_asset("gallery/t30t33_4.txt");
  if (n == 5) return load_matrix_asset("gallery/t30t33_5.txt");
  return append_zero_rows(load_matrix_asset("gallery/t30t33_6.txt"), n - 6);
}

Matrix build_t30t32t33(int n) {
  if (n == 4) return load_matrix_asset("gallery/t30t32t33_4.txt");
  if (n == 5) return load_matrix_asset("gallery/t30t32t33_5.txt");
  Matrix m = load_matrix_asset("gallery/t30t32t33_6.txt");
  while (m.n < n) m = duplicate_row(m, m.n);  // repeat the last row
  return m;
}

Matrix build_t3le2(int n) {
  if (n == 4) return load_matrix_asset("gallery/t3le2_4.txt");
  Matrix m = load_matrix_asset("gallery/t3le2_5.txt");
  static const std::uint8_t kExtraRow[10] = {1, 1, 0, 0, 0, 0, 1, 0, 1, 1};
  std::vector<Column> cols = m.cols;
  for (int extra = 5; extra < n; ++extra)
    for (size_t j = 0; j < cols.size(); ++j) cols[j].push_back(kExtraRow[j]);
  return from_columns(n, std::move(cols));
}

Matrix build_t32_sat(int n) {
  std::vector<Column> cols;
  cols.push_back(Column(static_cast<size_t>(n), 0));
  for (int i = 1; i <= n; ++i) cols.push_back(chi(RowSubset{i}, n));
  cols.push_back(Column(static_cast<size_t>(n), 1));
  // Weight-2 columns touching row 1 or row n, but not both.
  for (int j = 2; j <= n - 1; ++j) cols.push_back(chi(RowSubset{1, j}, n));
  for (int i = 2; i <= n - 1; ++i) cols.push_back(chi(RowSubset{i, n}, n));
  return from_columns(n, std::move(cols));
}

// Columns of the complete k-row configuration with per-layer multiplicity:
// `below` copies of each column of sum < at_layer, `at` copies at sum ==
// at_layer, one copy above.
Matrix layered_matrix(int k, int at_layer, int below, int at) {
  std::vector<Column> cols;
  for (const Column& c : build_K(k).cols) {
    int s = column_sum(c);
    int copies = s < at_layer ? below : (s == at_layer ? at : 1);
    cols.insert(cols.end(), static_cast<size_t>(copies), c);
  }
  return make_matrix(k, 1, std::move(cols));
}

// Hypergraph edges: (l+1)-subsets of [n] whose element sum is congruent to
// some j in {1, ..., d-1} modulo n, in lex order.
std::vector<RowSubset> seed_hypergraph(int n, int l, int d) {
  std::vector<RowSubset> edges;
  if (d <= 1 || l + 1 > n) return edges;
  for_each_subset_lex(n, l + 1, [&](const RowSubset& y) {
    int r = std::accumulate(y.begin(), y.end(), 0) % n;
    if (r >= 1 && r <= d - 1) edges.push_back(y);
  });
  return edges;
}

// Derived family for the star reduction: M is a violator iff appending d
// zero rows and the d near-complete columns to it embeds a base member.
class StarFamily final : public ForbiddenFamily {
 public:
  StarFamily(std::shared_ptr<const ForbiddenFamily> base, int k, int d)
      : base_(std::move(base)), k_(k), d_(d) {}

  bool violates(const Matrix& M) const override {
    if (M.l != 1) throw Error("star family: binary matrices only");
    return base_->violates(concat(append_zero_rows(M, d_), build_N_s(M.n, d_)));
  }

  bool creates_unchecked(const Matrix& M, const Column& C) const override {
    Matrix ext = M;
    ext.cols.push_back(C);
    ext.simple = false;  // only containment runs on ext
    return violates(ext);
  }

  int alphabet() const override { return 1; }
  int multiplicity_cap() const override { return base_->multiplicity_cap(); }

  std::string encoding() const override {
    return "family/star k=" + std::to_string(k_) + " d=" + std::to_string(d_) + "\n" +
           base_->encoding();
  }

 private:
  std::shared_ptr<const ForbiddenFamily> base_;
  int k_, d_;
};

}  // namespace

// --------------------------------------------------------------- assets ----

std::string data_directory() {
  if (const char* env = std::getenv("SATKIT_DATA"); env != nullptr && *env != '\0') return env;
  return SATKIT_SOURCE_DATA_DIR;
}

Matrix load_matrix_asset(const std::string& relpath) {
  std::filesystem::path path = std::filesystem::path(data_directory()) / relpath;
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix asset: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

// ------------------------------------------------------------- gallery ----

std::vector<std::string> gallery_ids() {
  return {"K2_SAT",      "K3_SAT", "ONE_ROW", "LT22_SAT",  "LT22_REMARK", "CHAIN",
          "SAT3",        "T30T33", "T30T32T33", "T3LE2",   "T32_SAT"};
}

GalleryEntry gallery(const std::string& id, int n, std::optional<int> m, std::optional<int> l) {
  GalleryEntry e;
  e.id = id;
  e.n = n;
  e.property = "saturated";
  auto reject_params = [&] {
    if (m || l) throw Error("gallery: " + id + " takes no m/l parameters");
  };
  auto unsupported = [&]() -> Error {
    std::string msg = "gallery: unsupported parameters for " + id + ": n=" + std::to_string(n);
    if (m) msg += " m=" + std::to_string(*m);
    if (l) msg += " l=" + std::to_string(*l);
    return Error(msg);
  };

  if (id == "K2_SAT") {
    reject_params();
    if (n < 1) throw unsupported();
    e.matrix = build_T(n, 0, 1);
    e.family = k_family(2);
    e.expected_size = n + 1;
  } else if (id == "K3_SAT") {
    reject_params();
    if (n < 4) throw unsupported();
    e.family = k_family(3);
    e.matrix = build_k3_sat(n, *e.family);
    e.expected_size = 10;
  } else if (id == "ONE_ROW") {
    if (!m || !l) throw Error("gallery: ONE_ROW requires m and l parameters");
    if (!one_row_supported(n, *m, *l)) throw unsupported();
    e.m_param = *m;
    e.l_param = *l;
    e.matrix = build_one_row(n, *m, *l);
    e.family = one_row_family(*m, *l);
    e.expected_size = one_row_expected_size(*m, *l);
  } else if (id == "LT22_SAT") {
    if (m || !l) throw Error("gallery: LT22_SAT requires the l parameter (and no m)");
    if (*l < 1 || *l > 3 || n < (*l == 3 ? 3 : 2)) throw unsupported();
    e.l_param = *l;
    e.matrix = build_lt22_sat(n, *l);
    e.family = l_t22_family(*l);
    if (*l <= 2)
      e.expected_size = n + *l;
    else
      e.expected_size = n == 4 ? 9 : (n == 7 ? 15 : 2 * n + 2);
  } else if (id == "LT22_REMARK") {
    if (m || !l) throw Error("gallery: LT22_REMARK requires the l parameter (and no m)");
    if (n < 2 || *l < 1 || *l > n) throw unsupported();
    e.l_param = *l;
    e.family = l_t22_plus01_family(*l);
    e.matrix = build_lt22_remark(n, *l, *e.family);
    e.size_upper_bound = 2 << *l;  // 2 * 2^l
  } else if (id == "CHAIN") {
    reject_params();
    if (n < 2) throw unsupported();
    e.matrix = build_chain(n);
    e.family = single_member_family(build_T(2, 1, 1));
    e.expected_size = n + 1;
  } else if (id == "SAT3") {
    reject_params();
    if (n < 2) throw unsupported();
    e.matrix = build_sat3(n);
    e.family = single_member_family(concat(build_T(2, 0, 0), build_T(2, 2, 2)));
    e.expected_size = 3;
  } else if (id == "T30T33") {
    reject_params();
    if (n < 4) throw unsupported();
    e.matrix = build_t30t33(n);
    e.family = single_member_family(concat(build_T(3, 0, 0), build_T(3, 3, 3)));
    e.expected_size = n <= 5 ? 10 : 7;
  } else if (id == "T30T32T33") {
    reject_params();
    if (n < 4) throw unsupported();
    e.matrix = build_t30t32t33(n);
    e.family = single_member_family(
        concat(concat(build_T(3, 0, 0), build_T(3, 2, 2)), build_T(3, 3, 3)));
    e.expected_size = n <= 5 ? 9 : 7;
  } else if (id == "T3LE2") {
    reject_params();
    if (n < 4) throw unsupported();
    e.matrix = build_t3le2(n);
    e.family = single_member_family(build_T(3, 0, 2));
    e.expected_size = 10;
  } else if (id == "T32_SAT") {
    reject_params();
    if (n < 3) throw unsupported();
    e.matrix = build_t32_sat(n);
    e.family = single_member_family(build_T(3, 2, 2));
    e.also_saturated_for.push_back(
        single_member_family(concat(build_T(3, 2, 2), build_T(3, 3, 3))));
    e.expected_size = 3 * n - 2;
  } else {
    throw Error("gallery: unknown id \"" + id + "\"");
  }
  return e;
}

std::vector<GalleryKey> gallery_supported(const std::string& id, int max_n) {
  std::vector<GalleryKey> out;
  auto span = [&](int lo) {
    for (int n = lo; n <= max_n; ++n) out.push_back({n, std::nullopt, std::nullopt});
  };
  if (id == "K2_SAT") {
    span(1);
  } else if (id == "K3_SAT") {
    span(4);
  } else if (id == "ONE_ROW") {
    for (int l = 1; l <= 4; ++l)
      for (int m = 0; m <= l; ++m) {
        if (m == 1 && l >= 3) continue;  // no verified generator for this case
        for (int n = 1; n <= max_n; ++n)
          if (one_row_supported(n, m, l)) out.push_back({n, m, l});
      }
  } else if (id == "LT22_SAT") {
    for (int l = 1; l <= 3; ++l)
      for (int n = (l == 3 ? 3 : 2); n <= max_n; ++n) out.push_back({n, std::nullopt, l});
  } else if (id == "LT22_REMARK") {
    for (int n = 2; n <= max_n; ++n)
      for (int l = 1; l <= std::min(6, n); ++l) out.push_back({n, std::nullopt, l});
  } else if (id == "CHAIN" || id == "SAT3") {
    span(2);
  } else if (id == "T30T33" || id == "T30T32T33" || id == "T3LE2") {
    span(4);
  } else if (id == "T32_SAT") {
    span(3);
  } else {
    throw Error("gallery: unknown id \"" + id + "\"");
  }
  return out;
}

std::string verify_gallery_entry(const GalleryEntry& e) {
  if (!e.matrix.simple) return "matrix is not simple";
  if (e.expected_size && e.matrix.m() != *e.expected_size)
    return "size " + std::to_string(e.matrix.m()) + " differs from expected " +
           std::to_string(*e.expected_size);
  if (e.size_upper_bound && e.matrix.m() > *e.size_upper_bound)
    return "size " + std::to_string(e.matrix.m()) + " exceeds bound " +
           std::to_string(*e.size_upper_bound);
  if (e.property != "saturated") return "unknown property \"" + e.property + "\"";
  if (!e.family) return "entry carries no family";

  auto check = [&](const ForbiddenFamily& fam) -> std::string {
    SaturationReport r = is_saturated(e.matrix, fam);
    if (r.verdict == SatVerdict::Saturated) return "";
    if (r.verdict == SatVerdict::NotAdmissible) return "matrix embeds a forbidden member";
    return "matrix extendable by column id " +
           std::to_string(column_id(*r.extension, e.matrix.l));
  };
  if (std::string err = check(*e.family); !err.empty()) return err;
  for (const auto& fam : e.also_saturated_for)
    if (std::string err = check(*fam); !err.empty()) return err + " (secondary family)";
  return "";
}

// ----------------------------------------------------- general pipeline ----

FamilyParams family_params(const ForbiddenFamily& fam, int k) {
  if (k < 1) throw Error("family_params: need k >= 1");
  if (fam.alphabet() != 1) throw Error("family_params: binary families only");
  if (fam.violates(build_K(k)))
    throw Error("family_params: the complete configuration on k rows already embeds a member");
  const int cap = fam.multiplicity_cap();
  auto is_free = [&](const Matrix& M) { return !fam.violates(M); };

  FamilyParams p;
  p.l = -1;
  for (int cand = 0; cand <= k; ++cand)
    if (!is_free(layered_matrix(k, cand, cap, cap))) {
      p.l = cand;
      break;
    }
  if (p.l < 0)
    throw std::logic_error("family_params: no finite layer threshold (members lack k rows?)");
  for (int cand = 0; cand < p.l; ++cand)
    if (!is_free(layered_matrix(k, cand, cap + 3, cap + 3)))
      throw std::logic_error("family_params: multiplicity cap unstable at layer threshold");

  p.d = 0;
  while (p.d + 1 <= cap && is_free(layered_matrix(k, p.l, cap, p.d + 1))) ++p.d;
  if (p.d < 1) throw std::logic_error("family_params: layer multiplicity collapsed below one");
  if (!is_free(layered_matrix(k, p.l, cap + 3, p.d)))
    throw std::logic_error("family_params: multiplicity cap unstable at layer multiplicity");

  p.m = 1;
  while (is_free(layered_matrix(k, p.l, p.m, p.d + 1))) {
    ++p.m;
    if (p.m > cap)
      throw std::logic_error("family_params: no finite multiplicity for the threshold breach");
  }
  return p;
}

Matrix hsf_seed(int n, const ForbiddenFamily& fam, int k) {
  if (n < k) throw Error("hsf_seed: need n >= k");
  FamilyParams p = family_params(fam, k);
  if (p.l >= k)
    throw Error("hsf_seed: layer threshold equals the member row count; use the star reduction");
  std::vector<Column> cols;
  for (const RowSubset& y : seed_hypergraph(n, p.l, p.d)) cols.push_back(chi(y, n));
  for (const Column& c : build_T(n, p.l, p.l).cols) cols.push_back(c);
  Matrix seed = from_columns(n, std::move(cols));
  if (fam.violates(seed)) throw std::logic_error("hsf_seed: seed matrix is not family-free");
  return seed;
}

std::int64_t bad_k_set_count(int n, int k, int l, int d) {
  if (!(0 <= l && l < k && k <= n)) throw Error("bad_k_set_count: need 0 <= l < k <= n");
  if (d < 1) throw Error("bad_k_set_count: need d >= 1");
  if (d == 1) return 0;  // the covering requirement "<= d-2" cannot hold
  std::vector<RowSubset> edges = seed_hypergraph(n, l, d);
  std::int64_t bad = 0;
  for_each_subset_lex(n, k, [&](const RowSubset& x) {
    bool x_bad = false;
    for_each_subset_lex(k, l, [&](const RowSubset& pick) {
      if (x_bad) return;
      std::set<int> a, rest(x.begin(), x.end());
      for (int idx : pick) {
        a.insert(x[static_cast<size_t>(idx - 1)]);
        rest.erase(x[static_cast<size_t>(idx - 1)]);
      }
      int covering = 0;
      for (const RowSubset& y : edges) {
        bool superset = std::includes(y.begin(), y.end(), a.begin(), a.end());
        if (!superset) continue;
        bool disjoint = true;
        for (int v : y)
          if (rest.count(v)) {
            disjoint = false;
            break;
          }
        if (disjoint) ++covering;
      }
      if (covering <= d - 2) x_bad = true;
    });
    if (x_bad) ++bad;
  });
  return bad;
}

Matrix star_pad(const Matrix& M, int d) { return append_zero_rows(M, d); }

Matrix build_N_s(int s, int d) {
  if (s < 0 || d < 1) throw Error("build_N_s: need s >= 0 and d >= 1");
  std::vector<Column> cols;
  for (int i = s + 1; i <= s + d; ++i) cols.push_back(chi(complement_set(s + d, i), s + d));
  return make_matrix(s + d, 1, std::move(cols));
}

std::shared_ptr<const ForbiddenFamily> star_family(std::shared_ptr<const ForbiddenFamily> fam,
                                                   int k) {
  if (!fam) throw Error("star_family: null family");
  FamilyParams p = family_params(*fam, k);
  if (p.l != k)
    throw Error("star_family: layer threshold is below the member row count; no reduction needed");
  return std::make_shared<StarFamily>(std::move(fam), k, p.d);
}

Matrix hsf_saturated(int n, std::shared_ptr<const ForbiddenFamily> fam, int k) {
  if (!fam) throw Error("hsf_saturated: null family");
  if (n < 1 || k < 1) throw Error("hsf_saturated: need n >= 1 and k >= 1");
  if (fam->alphabet() != 1) throw Error("hsf_saturated: binary families only");
  const Matrix empty = make_matrix(n, 1, {});
  if (fam->violates(build_K(k))) return close(empty, *fam);
  FamilyParams p = family_params(*fam, k);
  if (p.l < k) {
    if (n < k) return close(empty, *fam);
    return close(hsf_seed(n, *fam, k), *fam);
  }
  if (n - p.d < k) return close(empty, *fam);  // too few rows for the star reduction
  std::shared_ptr<const ForbiddenFamily> fstar = star_family(fam, k);
  Matrix reduced = hsf_saturated(n - p.d, fstar, k);
  Matrix padded = append_zero_rows(reduced, p.d);
  std::set<Column> present(padded.cols.begin(), padded.cols.end());
  std::vector<Column> cols = padded.cols;
  for (const Column& c : build_N_s(reduced.n, p.d).cols)
    if (!present.count(c)) cols.push_back(c);
  return close(from_columns(n, std::move(cols)), *fam);
}

}  // namespace satkit
