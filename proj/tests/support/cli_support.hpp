// Helpers for tests that drive the qbm command-line layer.
#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "qbm/cli/scenario.hpp"
#include "test_baths.hpp"

namespace qbm::testing {

// Writes the damped-oscillator table to path as "omega im_alpha" lines.
inline void write_oscillator_table(const std::filesystem::path& path) {
    const auto bath = damped_oscillator_bath();
    const auto& tab = std::get<TabulatedBath>(bath.variant());
    std::ofstream out(path);
    out << "# omega  im_alpha\n";
    for (std::size_t i = 0; i < tab.grid().size(); ++i) {
        out << cli::round_trip(tab.grid()[i]) << ' ' << cli::round_trip(tab.values()[i]) << '\n';
    }
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("qbm_test_" + name);
    std::filesystem::create_directories(dir);
    return dir;
}

struct Captured {
    int exit_code = -1;
    std::string out;
};

// Runs a shell command, capturing stdout and the exit status.
inline Captured capture(const std::string& command) {
    Captured result;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace qbm::testing
