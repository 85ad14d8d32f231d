#pragma once
// Seeded verification suite: every group re-checks one of the library's
// structural identities (divergence ordering, variational optimality, limit
// continuity, symmetric-subspace bounds, closed-form cross-checks, capacity
// and conversion identities) on randomly drawn instances.  Failures are
// report entries, never exceptions, so a broken identity is visible in the
// same run that detects it.

#include <cstdint>
#include <string>
#include <vector>

namespace qrd {

struct VerifyCheck {
  std::string name;
  double observed;   // worst deviation (or negative margin) seen
  double tolerance;  // the check passes iff observed <= tolerance
  bool passed;
  std::string note;
};

struct VerifyGroup {
  std::string name;
  std::vector<VerifyCheck> checks;
  bool passed() const;
};

struct VerifyReport {
  std::uint64_t seed;
  std::vector<VerifyGroup> groups;
  bool all_passed() const;
};

// Group names accepted in a selection, in execution order.
std::vector<std::string> verify_group_names();

// Runs the selected groups ("all" or a list of names).  Each group derives
// its generator from the seed and its own name, so a group's instances do
// not depend on which other groups run.
VerifyReport run_verify_suite(std::uint64_t seed, const std::vector<std::string>& selection);

std::string report_to_json(const VerifyReport& report);

}  // namespace qrd
