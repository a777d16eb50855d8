#include "qbm/cli/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qbm/errors.hpp"

namespace qbm::cli {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view name, const std::string& text) {
    const std::string v = trim(text);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw UsageError(std::string(name) + ": expected a number, got '" + text + "'");
    }
    return out;
}

std::size_t parse_count(std::string_view name, const std::string& text) {
    const std::string v = trim(text);
    unsigned long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
        throw UsageError(std::string(name) + ": expected a non-negative integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(out);
}

template <class E>
E parse_choice(std::string_view name, const std::string& text,
               std::initializer_list<std::pair<std::string_view, E>> choices) {
    const std::string v = trim(text);
    std::string allowed;
    for (const auto& [label, value] : choices) {
        if (v == label) return value;
        allowed += allowed.empty() ? "" : "|";
        allowed += label;
    }
    throw UsageError(std::string(name) + ": expected one of {" + allowed + "}, got '" + text + "'");
}

const std::vector<SettingInfo> kSettings{
    {"bath", "bath model: ohmic | none | tabulated:<file>"},
    {"gamma", "Ohmic damping rate"},
    {"temp", "temperature"},
    {"sigma1", "width of the first (preparing) slit"},
    {"sigma2", "width of the second slit, 0 for a sharp position reading"},
    {"d", "separation of the two packets"},
    {"t-start", "first time of the sweep grid"},
    {"t-end", "last time of the sweep grid"},
    {"t-points", "number of time points"},
    {"t-scale", "time spacing: linear | log"},
    {"t", "fixed time for interference and oracle (default: t-end)"},
    {"x-min", "first x of the profile grid"},
    {"x-max", "last x of the profile grid"},
    {"x-points", "number of x points"},
    {"hbar", "Planck constant"},
    {"mass", "particle mass"},
    {"kb", "Boltzmann constant"},
    {"rel-tol", "quadrature relative tolerance"},
    {"abs-tol", "quadrature absolute tolerance"},
    {"max-panels", "quadrature panel budget"},
    {"thermal", "thermal weight: exact | high-t"},
    {"kernels", "kernel source for observables: quadrature | closed"},
    {"precision", "significant digits in the output"},
    {"format", "output format: csv | json"},
    {"out", "output path, - for stdout"},
    {"threads", "worker threads for row sweeps, 0 for all cores"},
};

}  // namespace

void TimeGrid::validate() const {
    if (points < 2) throw UsageError("time grid: t-points must be >= 2");
    if (!(start >= 0.0)) throw UsageError("time grid: t-start must be >= 0");
    if (!(end > start)) throw UsageError("time grid: t-end must exceed t-start");
    if (spacing == Spacing::Log && !(start > 0.0)) {
        throw UsageError("time grid: log spacing requires t-start > 0");
    }
}

std::vector<double> TimeGrid::values() const {
    validate();
    std::vector<double> out(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / n;
        out[i] = spacing == Spacing::Linear ? start + (end - start) * f
                                            : start * std::pow(end / start, f);
    }
    out.back() = end;
    return out;
}

void XGrid::validate() const {
    if (points < 2) throw UsageError("x grid: x-points must be >= 2");
    if (!(max > min)) throw UsageError("x grid: x-max must exceed x-min");
}

std::vector<double> XGrid::values() const {
    validate();
    std::vector<double> out(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) out[i] = min + (max - min) * static_cast<double>(i) / n;
    out.back() = max;
    return out;
}

UnitSystem Scenario::units() const {
    try {
        return UnitSystem(hbar, kb, mass);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

Temperature Scenario::temperature() const {
    try {
        return Temperature(temp);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

BathSpec Scenario::bath_spec() const {
    if (bath == "ohmic") {
        if (!(gamma > 0.0)) throw UsageError("gamma must be > 0 for an Ohmic bath");
        return BathSpec::ohmic(gamma);
    }
    if (bath == "none") return BathSpec::no_dissipation();
    if (!table) throw UsageError("bath '" + bath + "' has no table loaded");
    return BathSpec::tabulated(std::vector<double>(table->grid().begin(), table->grid().end()),
                               std::vector<double>(table->values().begin(), table->values().end()));
}

void Scenario::validate() const {
    units();
    temperature();
    bath_spec();
    time.validate();
    x.validate();
    if (!(sigma1 > 0.0)) throw UsageError("sigma1 must be > 0");
    if (!(sigma2 >= 0.0)) throw UsageError("sigma2 must be >= 0");
    if (!(d > 0.0)) throw UsageError("d must be > 0");
    if (t_fixed < 0.0 && t_fixed != -1.0) throw UsageError("t must be >= 0");
    if (precision < 1 || precision > 17) throw UsageError("precision must be in [1, 17]");
    try {
        quad.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (kernels == KernelSource::Closed && bath_spec().is_tabulated()) {
        throw UsageError("kernels = closed needs an ohmic or none bath");
    }
}

const std::vector<SettingInfo>& settings() { return kSettings; }

std::string round_trip(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void apply_setting(Scenario& s, std::string_view name, const std::string& value) {
    if (name == "bath") {
        const std::string v = trim(value);
        constexpr std::string_view prefix = "tabulated:";
        if (v == "ohmic" || v == "none") {
            s.bath = v;
            s.table.reset();
        } else if (v.rfind(prefix, 0) == 0 && v.size() > prefix.size()) {
            s.table = std::make_shared<const TabulatedBath>(read_bath_table(v.substr(prefix.size())));
            s.bath = v;
        } else {
            throw UsageError("bath: expected ohmic | none | tabulated:<file>, got '" + value + "'");
        }
    } else if (name == "gamma") {
        s.gamma = parse_double(name, value);
    } else if (name == "temp") {
        s.temp = parse_double(name, value);
    } else if (name == "sigma1") {
        s.sigma1 = parse_double(name, value);
    } else if (name == "sigma2") {
        s.sigma2 = parse_double(name, value);
    } else if (name == "d") {
        s.d = parse_double(name, value);
    } else if (name == "t-start") {
        s.time.start = parse_double(name, value);
    } else if (name == "t-end") {
        s.time.end = parse_double(name, value);
    } else if (name == "t-points") {
        s.time.points = parse_count(name, value);
    } else if (name == "t-scale") {
        s.time.spacing = parse_choice<Spacing>(name, value, {{"linear", Spacing::Linear}, {"log", Spacing::Log}});
    } else if (name == "t") {
        s.t_fixed = parse_double(name, value);
        if (s.t_fixed < 0.0) throw UsageError("t must be >= 0");
    } else if (name == "x-min") {
        s.x.min = parse_double(name, value);
    } else if (name == "x-max") {
        s.x.max = parse_double(name, value);
    } else if (name == "x-points") {
        s.x.points = parse_count(name, value);
    } else if (name == "hbar") {
        s.hbar = parse_double(name, value);
    } else if (name == "mass") {
        s.mass = parse_double(name, value);
    } else if (name == "kb") {
        s.kb = parse_double(name, value);
    } else if (name == "rel-tol") {
        s.quad.rel_tol = parse_double(name, value);
    } else if (name == "abs-tol") {
        s.quad.abs_tol = parse_double(name, value);
    } else if (name == "max-panels") {
        s.quad.max_panels = parse_count(name, value);
    } else if (name == "thermal") {
        s.thermal = parse_choice<ThermalWeight>(
            name, value, {{"exact", ThermalWeight::Exact}, {"high-t", ThermalWeight::HighTemperature}});
    } else if (name == "kernels") {
        s.kernels = parse_choice<KernelSource>(
            name, value, {{"quadrature", KernelSource::Quadrature}, {"closed", KernelSource::Closed}});
    } else if (name == "precision") {
        s.precision = static_cast<int>(parse_count(name, value));
    } else if (name == "format") {
        s.format = parse_choice<Format>(name, value, {{"csv", Format::Csv}, {"json", Format::Json}});
    } else if (name == "out") {
        s.out = trim(value);
        if (s.out.empty()) throw UsageError("out: empty path");
    } else if (name == "threads") {
        s.threads = static_cast<unsigned>(parse_count(name, value));
    } else {
        throw UsageError("unknown setting '" + std::string(name) + "'");
    }
}

void apply_scenario_text(Scenario& s, std::string_view text, const std::string& origin) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw UsageError(origin + ":" + std::to_string(lineno) + ": expected 'name = value'");
        }
        try {
            apply_setting(s, trim(std::string_view(body).substr(0, eq)), body.substr(eq + 1));
        } catch (const UsageError& e) {
            throw UsageError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void apply_scenario_file(Scenario& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    apply_scenario_text(s, buf.str(), path);
}

void apply_environment(Scenario& s, const EnvLookup& lookup) {
    constexpr std::pair<const char*, std::string_view> vars[] = {
        {"QBM_REL_TOL", "rel-tol"}, {"QBM_ABS_TOL", "abs-tol"}, {"QBM_MAX_PANELS", "max-panels"}};
    for (const auto& [var, name] : vars) {
        const char* v = lookup(var);
        if (!v) continue;
        try {
            apply_setting(s, name, v);
        } catch (const UsageError& e) {
            throw UsageError(std::string(var) + ": " + e.what());
        }
    }
}

std::vector<std::pair<std::string, std::string>> describe(const Scenario& s) {
    auto spacing = s.time.spacing == Spacing::Linear ? "linear" : "log";
    auto thermal = s.thermal == ThermalWeight::Exact ? "exact" : "high-t";
    auto kernels = s.kernels == KernelSource::Quadrature ? "quadrature" : "closed";
    return {
        {"bath", s.bath},
        {"gamma", round_trip(s.gamma)},
        {"temp", round_trip(s.temp)},
        {"sigma1", round_trip(s.sigma1)},
        {"sigma2", round_trip(s.sigma2)},
        {"d", round_trip(s.d)},
        {"t-start", round_trip(s.time.start)},
        {"t-end", round_trip(s.time.end)},
        {"t-points", std::to_string(s.time.points)},
        {"t-scale", spacing},
        {"t", round_trip(s.fixed_time())},
        {"x-min", round_trip(s.x.min)},
        {"x-max", round_trip(s.x.max)},
        {"x-points", std::to_string(s.x.points)},
        {"hbar", round_trip(s.hbar)},
        {"mass", round_trip(s.mass)},
        {"kb", round_trip(s.kb)},
        {"rel-tol", round_trip(s.quad.rel_tol)},
        {"abs-tol", round_trip(s.quad.abs_tol)},
        {"max-panels", std::to_string(s.quad.max_panels)},
        {"thermal", thermal},
        {"kernels", kernels},
        {"precision", std::to_string(s.precision)},
    };
}

TabulatedBath read_bath_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open bath table '" + path + "'");
    std::vector<double> grid, values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (char& ch : line) {
            if (ch == ',') ch = ' ';
        }
        std::istringstream row(line);
        std::string a, b, extra;
        if (!(row >> a)) continue;
        if (!(row >> b) || (row >> extra)) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected two columns");
        }
        try {
            grid.push_back(parse_double("omega", a));
            values.push_back(parse_double("im_alpha", b));
        } catch (const UsageError& e) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    try {
        return TabulatedBath(std::move(grid), std::move(values));
    } catch (const DomainError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

}  // namespace qbm::cli
