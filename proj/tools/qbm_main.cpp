// qbm: quantum Brownian motion measurement statistics from the command line.
//
//   qbm kernels --bath ohmic --gamma 1 --temp 10 --t-start 0.1 --t-end 10 --t-points 3 --t-scale log
//
// Exit codes: 0 success, 1 numerical failure (partial output written),
// 2 usage or configuration error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qbm/cli/output.hpp"
#include "qbm/cli/scenario.hpp"
#include "qbm/cli/sweeps.hpp"
#include "qbm/errors.hpp"
#include "qbm/version.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNumerical = 1;
constexpr int kUsage = 2;

struct Flags {
    std::optional<std::string> scenario;
    std::map<std::string, std::string> values;
};

void add_setting_flags(CLI::App* cmd, Flags& flags) {
    cmd->add_option("--scenario", flags.scenario, "key = value scenario file; flags override it");
    for (const auto& info : qbm::cli::settings()) {
        const std::string name(info.name);
        cmd->add_option_function<std::string>(
            "--" + name, [&flags, name](const std::string& v) { flags.values[name] = v; },
            std::string(info.help));
    }
}

int run(const std::string& command, const Flags& flags) {
    using namespace qbm::cli;
    Scenario s;
    if (flags.scenario) apply_scenario_file(s, *flags.scenario);
    apply_environment(s, [](const char* name) -> const char* { return std::getenv(name); });
    for (const auto& info : settings()) {
        const auto it = flags.values.find(std::string(info.name));
        if (it != flags.values.end()) apply_setting(s, info.name, it->second);
    }
    s.validate();

    const SweepOutput out = run_command(command, s);
    const std::string text = render(out, s.format, s.precision);
    if (s.out == "-") {
        std::cout << text << std::flush;
    } else {
        std::ofstream file(s.out, std::ios::binary);
        if (!file) throw UsageError("cannot write '" + s.out + "'");
        file << text;
        if (!file.flush()) throw UsageError("cannot write '" + s.out + "'");
    }
    for (std::size_t i = 0; i < out.status.size(); ++i) {
        if (out.status[i] != "ok") std::cerr << "qbm: row " << i << ": " << out.status[i] << "\n";
    }
    for (const auto& [name, value] : out.metadata) {
        if (name == "error") std::cerr << "qbm: " << value << "\n";
    }
    return out.failed ? kNumerical : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Brownian motion: kernels, spreading, interference and decoherence"};
    app.set_version_flag("--version", std::string("qbm ") + qbm::kVersion);
    app.require_subcommand(1);

    const std::map<std::string, std::string> about{
        {"kernels", "mean square displacement s(t) and commutator c(t) over the time grid"},
        {"spread", "packet width w^2(t) over the time grid"},
        {"interference", "two-packet conditional probability P(x) at --t"},
        {"attenuation", "interference attenuation factor a(t) over the time grid"},
        {"oracle", "closed-form W(1,2) against the inverted characteristic function"},
        {"decoherence-time", "decoherence time, regime flags and long-time rate"},
    };
    Flags flags;
    for (const auto& name : qbm::cli::commands()) add_setting_flags(app.add_subcommand(name, about.at(name)), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, flags);
    } catch (const qbm::cli::UsageError& e) {
        std::cerr << "qbm: " << e.what() << "\n";
        return kUsage;
    } catch (const qbm::DomainError& e) {
        std::cerr << "qbm: " << e.what() << "\n";
        return kUsage;
    } catch (const qbm::UnsupportedVariantError& e) {
        std::cerr << "qbm: unsupported scenario: " << e.what() << "\n";
        return kUsage;
    } catch (const qbm::InconsistentInputsError& e) {
        std::cerr << "qbm: inconsistent inputs: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "qbm: " << e.what() << "\n";
        return kNumerical;
    }
}
