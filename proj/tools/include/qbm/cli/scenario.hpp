// scenario.hpp: the parameter set behind every qbm subcommand.
//
// Every setting has one name, used both as the long flag (--t-start) and as
// the key in a scenario file (t-start = 0.1). Precedence, lowest first:
// built-in defaults, scenario file, QBM_* environment overrides (quadrature
// tolerances only), command-line flags.
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbm/bath.hpp"
#include "qbm/kernels.hpp"
#include "qbm/quadrature.hpp"

namespace qbm::cli {

/// Malformed flag, file or value. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Spacing { Linear, Log };
enum class Format { Csv, Json };
enum class KernelSource { Quadrature, Closed };

struct TimeGrid {
    double start = 0.0;
    double end = 1.0;
    std::size_t points = 11;
    Spacing spacing = Spacing::Linear;

    /// Throws UsageError for end <= start, points < 2, or log spacing with
    /// start <= 0.
    void validate() const;
    std::vector<double> values() const;
};

struct XGrid {
    double min = -20.0;
    double max = 20.0;
    std::size_t points = 401;

    void validate() const;
    std::vector<double> values() const;
};

struct Scenario {
    std::string bath = "ohmic";  // ohmic | none | tabulated:<file>
    std::shared_ptr<const TabulatedBath> table;  // loaded for tabulated:<file>

    double gamma = 1.0;
    double temp = 1.0;
    double sigma1 = 1.0;
    double sigma2 = 0.0;
    double d = 10.0;
    double hbar = 1.0;
    double mass = 1.0;
    double kb = 1.0;

    TimeGrid time;
    double t_fixed = -1.0;  // < 0: use time.end
    XGrid x;

    QuadratureConfig quad;
    ThermalWeight thermal = ThermalWeight::Exact;
    KernelSource kernels = KernelSource::Quadrature;

    int precision = 12;
    Format format = Format::Csv;
    std::string out = "-";
    unsigned threads = 0;  // 0: hardware concurrency

    UnitSystem units() const;
    Temperature temperature() const;
    BathSpec bath_spec() const;
    double fixed_time() const { return t_fixed < 0.0 ? time.end : t_fixed; }

    /// Full range/consistency check; throws UsageError.
    void validate() const;
};

struct SettingInfo {
    std::string_view name;
    std::string_view help;
};

/// All setting names in canonical (echo) order.
const std::vector<SettingInfo>& settings();

/// Parses value for the named setting into s. Throws UsageError on an
/// unknown name or an unparsable value.
void apply_setting(Scenario& s, std::string_view name, const std::string& value);

/// Reads `name = value` lines; blank lines and `#` comments are ignored.
void apply_scenario_text(Scenario& s, std::string_view text, const std::string& origin = "<text>");
void apply_scenario_file(Scenario& s, const std::string& path);

/// QBM_REL_TOL, QBM_ABS_TOL, QBM_MAX_PANELS, looked up through getenv.
using EnvLookup = std::function<const char*(const char*)>;
void apply_environment(Scenario& s, const EnvLookup& lookup);

/// Shortest decimal that reads back as exactly v.
std::string round_trip(double v);

/// Canonical echo of every setting as (name, value) pairs; floating values
/// use round_trip().
std::vector<std::pair<std::string, std::string>> describe(const Scenario& s);

/// Two-column (ω, Im α) text table; `#` comments, whitespace or comma
/// separated.
TabulatedBath read_bath_table(const std::string& path);

}  // namespace qbm::cli
