#pragma once

// Job description and dispatcher behind the `macring` command-line tool.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mac {

enum class Command { Betti, Ring, Verify, Table, RegradeCheck };
enum class OutputFormat { Text, Structured };

Command parse_command(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

struct JobSpec {
  /// Inline complex text (`m=...; facets=...` or JSON) or a file path.
  std::string complex;
  /// Pair family descriptor, see parse_pair_family.
  std::string pairs = "disk-sphere:2";
  std::string coefficients = "Z";
  Command command = Command::Betti;
  OutputFormat format = OutputFormat::Text;
  /// Simplex budget for geometric models. When unset, `verify` also
  /// enforces the default size policy for disk-sphere families.
  std::optional<std::size_t> budget;
  /// Second suspension vector for `regrade-check`; defaults to the first one
  /// plus 2 in every coordinate.
  std::optional<std::vector<int>> compare_suspend;
};

struct JobResult {
  int exit_code = 0;  // 0 ok, 1 verification failure, 2 input error, 3 budget exceeded
  std::string report;
};

/// Runs one job. Never throws; errors become exit codes with a message in
/// the report. Reports are deterministic.
JobResult run(const JobSpec& spec);

}  // namespace mac
