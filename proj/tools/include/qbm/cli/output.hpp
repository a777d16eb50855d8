// output.hpp: CSV and JSON rendering of a SweepOutput.
#pragma once

#include <string>

#include "qbm/cli/scenario.hpp"
#include "qbm/cli/sweeps.hpp"

namespace qbm::cli {

/// printf %.{precision}g; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v, int precision);

/// `# name = value` metadata lines, a column row, then data rows.
std::string render_csv(const SweepOutput& out, int precision);

/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}. Values are
/// rounded to the same digits as the CSV; non-finite values become null.
std::string render_json(const SweepOutput& out, int precision);

std::string render(const SweepOutput& out, Format format, int precision);

}  // namespace qbm::cli
