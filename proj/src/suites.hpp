#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqinc/harness.hpp"

namespace fqinc::detail {

using TrialFn = std::vector<CsvRow> (*)(const Field& f, const ExperimentConfig& c, std::size_t trial,
                                        std::uint64_t seed);

struct SuiteDef {
  std::string name;
  std::vector<std::string> columns;  // suite-specific, between the shared ones
  TrialFn run;
  /// Fixed number of trials regardless of the config, if the suite is a
  /// deterministic scan rather than a random sweep.
  std::optional<std::size_t> fixed_trials;
};

[[nodiscard]] const std::vector<SuiteDef>& suite_defs();

}  // namespace fqinc::detail
