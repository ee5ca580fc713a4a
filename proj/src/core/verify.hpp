// Claim table behind `satkit verify-paper` and the acceptance binary.
//
// Every row is an independently checkable claim: a saturation number found
// by exact search, a closure-based bound, a gallery certificate, or a
// property suite run on randomized instances with pinned seeds.  Rows are
// grouped; a group passes when all of its rows pass.  The quick suite runs
// every row without a multi-hour budget; the full suite adds the large
// exact searches and runs everything.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace satkit {

enum class Suite { Quick, Full };

std::optional<Suite> parse_suite(std::string_view name);  // "quick" / "full"
std::string suite_name(Suite suite);

struct RowReport {
  int group = 0;           // 1-based index into the group table
  std::string group_name;  // short stable label, e.g. "sat-K2"
  std::string id;          // stable row id, e.g. "sat-K2-n4"
  bool full_only = false;  // row runs only in the full suite
  bool pass = false;
  std::string detail;      // stable summary; never includes timings
  double seconds = 0.0;    // wall-clock time for this row (informational)
};

// Number of row groups and the 1-based name of each.
int verify_group_count();
std::string verify_group_name(int group);

// Hard wall-clock limit, in seconds, that the rows of `group` must fit in
// collectively, as published alongside the claims; 0 when the group has
// per-row limits instead (already enforced row-by-row).
double verify_group_time_limit(int group, Suite suite);

// Runs the suite in table order.  Each finished row is handed to `on_row`
// (may be null) as soon as it completes, so callers can stream output.
// A row that throws is reported as a failure, never propagated.
std::vector<RowReport> run_verify(Suite suite,
                                  const std::function<void(const RowReport&)>& on_row);

}  // namespace satkit
