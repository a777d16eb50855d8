// sweeps.hpp: the computations behind each subcommand.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qbm/cli/scenario.hpp"

namespace qbm::cli {

struct SweepOutput {
    std::string command;
    /// Program, version and command, the scenario echo, then run results.
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    /// Per-row "ok" or an error message; empty when the command has no
    /// row-wise failure mode.
    std::vector<std::string> status;
    /// True when some numerical step failed; rows may be partial.
    bool failed = false;
};

/// t, s, c and, for ohmic and none baths, s_closed and c_closed.
SweepOutput run_kernels(const Scenario& s);
/// t, s, c, w2.
SweepOutput run_spread(const Scenario& s);
/// t, s, c, w2, a, and a_no_dissipation when T > 0.
SweepOutput run_attenuation(const Scenario& s);
/// x, P at the fixed time; attenuation and width in the metadata.
SweepOutput run_interference(const Scenario& s);
/// x1, x2, W_closed, W_oracle, abs_err on the x grid squared; L∞ in the
/// metadata. Needs a tabulated bath (UnsupportedVariantError otherwise) and
/// sigma2 > 0.
SweepOutput run_oracle(const Scenario& s);
/// One record: τ_d, thermal scales, regime flags (1/0), and for ohmic baths
/// γτ_d and the long-time rate.
SweepOutput run_decoherence_time(const Scenario& s);

/// Dispatches on the subcommand name; throws UsageError for an unknown one.
SweepOutput run_command(const std::string& command, const Scenario& s);

/// Subcommand names in help order.
const std::vector<std::string>& commands();

}  // namespace qbm::cli
