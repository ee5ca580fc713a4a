// Named saturated-matrix constructions (the gallery), text assets for the
// hard-coded matrices, and the general O(n^(k-1)) saturated-matrix pipeline
// (hypergraph seed, star reduction, closure).
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/family.hpp"
#include "core/matrix.hpp"

namespace satkit {

// ------------------------------------------------------------- gallery ----

struct GalleryEntry {
  std::string id;
  int n = 0;
  std::optional<int> m_param, l_param;
  Matrix matrix;
  std::shared_ptr<const ForbiddenFamily> family;
  // Extra families the same matrix is claimed saturated for (e.g. the
  // T32_SAT matrix is saturated for both {T_3^2} and {[T_3^2, T_3^3]}).
  std::vector<std::shared_ptr<const ForbiddenFamily>> also_saturated_for;
  std::string property;
  std::optional<int> expected_size;     // exact size claim, when one exists
  std::optional<int> size_upper_bound;  // e.g. LT22_REMARK's 2*2^l
};

// Supported ids: K2_SAT, K3_SAT, ONE_ROW(m,l), LT22_SAT(l), LT22_REMARK(l),
// CHAIN, SAT3, T30T33, T30T32T33, T3LE2, T32_SAT.
std::vector<std::string> gallery_ids();
GalleryEntry gallery(const std::string& id, int n, std::optional<int> m = std::nullopt,
                     std::optional<int> l = std::nullopt);

struct GalleryKey {
  int n;
  std::optional<int> m, l;
};
// Every parameter tuple supported for `id` with n <= max_n (sweep helper).
std::vector<GalleryKey> gallery_supported(const std::string& id, int max_n);

// Re-checks the entry's claims (simple, saturated for each family, size
// bounds). Returns "" on pass, else a failure description.
std::string verify_gallery_entry(const GalleryEntry& e);

// --------------------------------------------------------------- assets ----

// Directory holding the text assets; SATKIT_DATA overrides the compiled-in
// source-tree default.
std::string data_directory();
Matrix load_matrix_asset(const std::string& relpath);

// ----------------------------------------------------- general pipeline ----

// Parameters of the O(n^(k-1)) construction for a family of k-row matrices:
//   l: least value such that [m T_k^{<=l}, T_k^{>l}] embeds a member for
//      some multiplicity m;
//   d: greatest value such that [m T_k^{<l}, d T_k^l, T_k^{>l}] stays
//      member-free for every m;
//   m: least multiplicity making [m T_k^{<l}, (d+1) T_k^l, T_k^{>l}] embed
//      a member.
// Multiplicity quantifiers are decided by testing m up to 1 + the largest
// member size (more copies of a column cannot help embed a fixed member),
// and cross-checked at that bound plus three.
struct FamilyParams {
  int l = 0, d = 0, m = 0;
};
FamilyParams family_params(const ForbiddenFamily& fam, int k);

// Seed matrix [N, T_n^l] where N's columns are chi_Y for the (l+1)-subsets
// Y of [n] with element sum congruent to some j in [1, d-1] modulo n.
// Requires l(fam) < k; the result is family-free for every n >= k.
Matrix hsf_seed(int n, const ForbiddenFamily& fam, int k);

// Exact count of k-subsets X for which some l-subset A of X is covered by
// at most d-2 hypergraph edges avoiding X \ A. Satisfies the bound
// 2(d-1) C(n,l-1) C(n,k-l) + C(n,l) (d-1) C(n,k-l-1); zero when d = 1
// (the condition "<= d-2 = -1" cannot hold for a non-negative count).
std::int64_t bad_k_set_count(int n, int k, int l, int d);

Matrix star_pad(const Matrix& M, int d);  // appends d zero rows
// N_s(d): the (d+s) x d matrix with columns chi_{[s+d] minus {i}} for
// i in [s+1, s+d]; every column sum is s+d-1.
Matrix build_N_s(int s, int d);

// Derived family F*: M violates F* iff [star_pad(M, d), N_{v(M)}(d)] embeds
// a member of the base family, with d = family_params(base, k).d. Used by
// the l = k branch of hsf_saturated; satisfies l(F*) < k.
std::shared_ptr<const ForbiddenFamily> star_family(std::shared_ptr<const ForbiddenFamily> fam, int k);

// Full pipeline: a fam-saturated n-row matrix of size O(n^(k-1)) for any
// family of k-row matrices. Branches: close(empty) when K_k embeds a
// member; close(hsf_seed) when l < k; otherwise recurse on the star family
// with n-d rows, un-star, and close.
Matrix hsf_saturated(int n, std::shared_ptr<const ForbiddenFamily> fam, int k);

}  // namespace satkit
