#pragma once

// Fixed suite of published reference values, recomputed from scratch.

#include <string>
#include <vector>

namespace orthosteer {

struct ReproRow {
  std::string item;
  double reference = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  /// The published value is known to be wrong; a mismatch is reported as
  /// "paper-deviation" instead of "fail".
  bool known_deviation = false;

  double delta() const;
  /// "pass", "fail" or "paper-deviation".
  std::string status() const;
};

std::vector<ReproRow> paper_repro();

/// Fixed-width table: item, reference, computed, |delta|, status.
std::string format_repro_table(const std::vector<ReproRow>& rows);

}  // namespace orthosteer
