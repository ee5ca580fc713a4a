// Exhaustive searches over simple matrices on n rows: minimum saturated
// size (sat), minimum monotone-saturated size (m-sat), and maximum
// family-free size (forb). Symmetry is broken by canonical augmentation:
// states are id-sorted column sets, extended only by larger ids and kept
// only when is_canonical() holds, so each row/column-permutation class is
// expanded exactly once. Work is decomposed into an ordered list of
// independent subtree tasks (the frontier at a fixed split depth); tasks
// never share discovered bounds, and results are folded in task order, so
// the reported value, witness, and node count are identical for any --jobs
// and reproducible across runs. Budgets degrade the status to "bounds"
// (never abort the process), checkpoints make interrupted runs resumable,
// and exact results can be memoized in an append-only cache file.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "core/family.hpp"
#include "core/matrix.hpp"

namespace satkit {

enum class SearchKind { Sat, MSat, Forb };

std::string search_kind_name(SearchKind kind);                 // "sat" | "msat" | "forb"
std::optional<SearchKind> parse_search_kind(std::string_view);

struct SearchProblem {
  SearchKind kind = SearchKind::Sat;
  int n = 0;
  std::shared_ptr<const ForbiddenFamily> family;  // explicit members required
  int alphabet = 1;  // host alphabet l; must be >= family->alphabet()

  // Budgets; 0 means unlimited. Node budget is deterministic for serial
  // runs; the time budget depends on the wall clock by nature.
  std::uint64_t node_budget = 0;
  double time_budget_seconds = 0;

  int jobs = 1;
  int split_depth = 0;  // 0: automatic (currently 2)

  // Inclusive range of sizes to try (sat/msat only); 0 means automatic:
  // everything from the empty matrix up to the greedy closure of the empty
  // matrix, whose size always brackets the answer from above. A nonzero low
  // end skips the smaller sizes, so it asserts that no smaller witness
  // exists; the search then reports the least qualifying size inside the
  // range, or a bounds record when the range holds none. Explicit bounds
  // bypass the cache — cached records answer the unrestricted question.
  int size_low = 0;
  int size_high = 0;

  // Non-empty enables the feature. A checkpoint file that exists and
  // matches the problem fingerprint is resumed; it is removed once the
  // search completes with an exact value. Only exact results enter the
  // cache; hits are re-verified before being trusted.
  std::string checkpoint_path;
  std::string cache_path;

  // Tests only: disable the canonicity pruning (every id set is visited,
  // isomorphic duplicates included). Values must agree with the pruned
  // search; node counts and witnesses legitimately differ.
  bool test_disable_symmetry = false;
};

struct ResultRecord {
  SearchKind kind = SearchKind::Sat;
  int n = 0;
  int alphabet = 1;
  std::string status;   // "exact" or "bounds"
  long long value_low = 0;
  long long value_high = 0;
  std::optional<Matrix> witness;  // exact only; re-verified before return
  std::uint64_t nodes = 0;        // states expanded (deterministic)
  bool from_cache = false;
  std::string fingerprint;  // 16 hex digits, see search_fingerprint()
  double seconds = 0;       // informational; excluded from machine output
};

// FNV-1a 64 over (kind, n, alphabet, family encoding), as 16 hex digits.
// Keys the cache and guards checkpoint resumption.
std::string search_fingerprint(const SearchProblem& problem);

ResultRecord run_search(const SearchProblem& problem);

// The symmetry screen the walk applies to every state, exposed so tests can
// cross-check it against is_canonical. Columns must be sorted by ColumnId.
bool state_is_canonical(const Matrix& M);

}  // namespace satkit
