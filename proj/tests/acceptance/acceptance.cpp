// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Lines starting with "info" are diagnostics only.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "qbm/cli/output.hpp"
#include "qbm/cli/sweeps.hpp"
#include "qbm/errors.hpp"
#include "qbm/qbm.hpp"
#include "test_baths.hpp"

using namespace qbm;
using qbm::testing::relative_error;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
}

void info(const std::string& text) { std::printf("info      %s\n", text.c_str()); }

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

const UnitSystem unit{};

Outcome kernel_correctness() {
    // γ = 1, kT = 10³ ħγ. Compared in the high-temperature weight the closed
    // forms are derived in; the exact-coth gap is printed below.
    const auto bath = BathSpec::ohmic(1.0);
    const Temperature T(1e3);
    double worst_s = 0.0, worst_c = 0.0, coth_gap = 0.0;
    for (double t : logspace(1e-2, 10.0, 50)) {
        const auto q = kernel_pair(bath, unit, T, t, {}, ThermalWeight::HighTemperature);
        const auto ref = ohmic_high_t_kernels(1.0, unit, T, t);
        worst_s = std::max(worst_s, relative_error(q.s, ref.s));
        worst_c = std::max(worst_c, relative_error(q.c, ref.c));
        const double exact = mean_square_displacement(bath, unit, T, t);
        coth_gap = std::max(coth_gap, relative_error(exact, ref.s));
    }
    info("criterion 1: exact coth weight differs from the high-T closed form by up to " +
         fmt("%.3g", coth_gap) + " (quantum correction, largest at small t)");
    const bool ok = worst_s < 1e-6 && worst_c < 1e-6;
    return {ok, "max rel err s " + fmt("%.3g", worst_s) + ", c " + fmt("%.3g", worst_c) + " (tol 1e-6)"};
}

Outcome no_dissipation_limit() {
    const auto bath = BathSpec::ohmic(1e-4);
    const Temperature T(1.0);
    double worst_s = 0.0, worst_c = 0.0;
    for (double t : logspace(1e-2, 1.0, 25)) {
        const auto q = kernel_pair(bath, unit, T, t);
        const auto free = no_dissipation_kernels(unit, T, t);
        worst_s = std::max(worst_s, relative_error(q.s, free.s));
        worst_c = std::max(worst_c, relative_error(q.c, free.c));
    }
    const bool ok = worst_s < 1e-3 && worst_c < 1e-3;
    return {ok, "gamma 1e-4, kT 1, t in [0.01, 1]: max rel err s " + fmt("%.3g", worst_s) + ", c " +
                    fmt("%.3g", worst_c) + " (tol 1e-3)"};
}

Outcome cold_spreading() {
    double worst = 0.0;
    for (double hbar : {0.5, 1.0, 3.0}) {
        for (double mass : {0.2, 1.0, 7.0}) {
            const UnitSystem units(hbar, 1.0, mass);
            for (double s1 : {0.1, 1.0, 4.0}) {
                for (double t : linspace(0.0, 20.0, 41)) {
                    const auto k = no_dissipation_kernels(units, Temperature(0.0), t);
                    const double w2 = packet_width(s1, 0.0, k).w2;
                    const double want = s1 * s1 + hbar * hbar * t * t / (4.0 * mass * mass * s1 * s1);
                    worst = std::max(worst, relative_error(w2, want));
                }
            }
        }
    }
    const double tol = 4.0 * std::numeric_limits<double>::epsilon();
    return {worst <= tol, "max rel err " + fmt("%.3g", worst) + " (tol 4 eps)"};
}

Outcome attenuation_identity() {
    double worst = 0.0;
    for (double t : logspace(1e-3, 1e3, 10)) {
        for (double d : logspace(0.1, 100.0, 10)) {
            for (double temp : logspace(1e-2, 1e2, 10)) {
                const Temperature T(temp);
                const double general = attenuation(d, 1.0, 0.0, no_dissipation_kernels(unit, T, t));
                const double closed = attenuation_no_dissipation(t, d, 1.0, unit, T);
                worst = std::max(worst, relative_error(general, closed));
            }
        }
    }
    return {worst < 1e-12, "10x10x10 (t, d, T) grid, max rel err " + fmt("%.3g", worst) + " (tol 1e-12)"};
}

Outcome decoherence_without_dissipation() {
    const Temperature T(1.0);  // λ̄ = 1
    const double late = attenuation(10.0, 1.0, 0.0, no_dissipation_kernels(unit, T, 1e6));
    const double err_late = relative_error(late, std::exp(-10.0));
    const double taus[] = {
        decoherence_time(10.0, 1.0, unit, T, BathSpec::no_dissipation()).tau_d,
        decoherence_time(10.0, 1.0, unit, T, BathSpec::ohmic(1e-3)).tau_d,
        decoherence_time(10.0, 1.0, unit, T, BathSpec::ohmic(1e-1)).tau_d,
    };
    double err_tau = 0.0;
    for (double tau : taus) err_tau = std::max(err_tau, relative_error(tau, 0.1));
    const bool ok = err_late < 1e-6 && err_tau < 1e-14;
    return {ok, "a(t=1e6) rel err vs e^-10 " + fmt("%.3g", err_late) + " (tol 1e-6); tau_d for gamma in {0, 1e-3, 1e-1} "
                + fmt("%.3g", err_tau) + " from 0.1"};
}

Outcome long_time_rate() {
    // Dimensionless units with λ̄ = 1 (ħ = m = k_B = kT = 1); γ = 0.1 puts kT
    // at 10 ħγ. The ratio slope/(d²γ/λ̄²) depends only on σ₁/λ̄ and γt.
    const double gamma = 0.1, d = 1.0, s1 = 1e-3;
    const Temperature T(1.0);
    const double rate = long_time_attenuation_rate(d, unit, T, gamma);
    auto minus_log_a = [&](double t) {
        return -std::log(attenuation(d, s1, 0.0, ohmic_high_t_kernels(gamma, unit, T, t)));
    };
    const auto gt = linspace(5.0, 10.0, 1001);
    double mx = 0.0, my = 0.0;
    std::vector<double> t(gt.size()), y(gt.size());
    for (std::size_t i = 0; i < gt.size(); ++i) {
        t[i] = gt[i] / gamma;
        y[i] = minus_log_a(t[i]);
        mx += t[i];
        my += y[i];
    }
    mx /= static_cast<double>(t.size());
    my /= static_cast<double>(t.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        sxy += (t[i] - mx) * (y[i] - my);
        sxx += (t[i] - mx) * (t[i] - mx);
    }
    const double lsq = sxy / sxx / rate;
    const double secant = (y.back() - y.front()) / (t.back() - t.front()) / rate;
    const double h = 1e-3 / gamma;
    const double local = (minus_log_a(10.0 / gamma + h) - minus_log_a(10.0 / gamma - h)) / (2.0 * h) / rate;
    info("criterion 6: slope/(d^2 gamma/lambda^2) least squares " + fmt("%.6f", lsq) + ", secant " +
         fmt("%.6f", secant) + ", local at gamma t=10 " + fmt("%.6f", local) +
         "; the e^{-gamma t} transient keeps the window average about 1% low");
    const double dev = std::abs(lsq - 1.0);
    return {dev < 0.01, "least-squares slope over gamma t in [5, 10], sigma1 = 1e-3 lambda: deviation " +
                            fmt("%.4f", 100.0 * dev) + "% (tol 1%)"};
}

Outcome oracle_equivalence() {
    cli::Scenario s;
    const auto bath = qbm::testing::damped_oscillator_bath();
    s.bath = "tabulated:damped-oscillator";
    s.table = std::make_shared<const TabulatedBath>(std::get<TabulatedBath>(bath.variant()));
    s.temp = 1.0;
    s.sigma1 = 0.6;
    s.sigma2 = 0.3;
    s.t_fixed = 1.5;
    s.x = {-4.0, 4.0, 64};
    const auto out = cli::run_oracle(s);
    if (out.failed) return {false, "oracle run failed"};
    double linf = 0.0;
    for (const auto& row : out.rows) linf = std::max(linf, row[4]);
    return {out.rows.size() == 64 * 64 && linf < 1e-4,
            "tabulated damped oscillator, 64x64 grid: L-inf " + fmt("%.3g", linf) + " (tol 1e-4)"};
}

Outcome profile_consistency() {
    // ħ = 0.01 keeps kT ≥ 10 ħγ at γτ_d = 1; σ₁ = 1, d = 10, kT = m = 1, τ_d = 0.1.
    const UnitSystem units(0.01, 1.0, 1.0);
    const Temperature T(1.0);
    const double s1 = 1.0, d = 10.0, tau_d = 0.1;
    struct Case {
        const char* name;
        std::function<KernelPair(double)> kernels;
    };
    const Case cases[] = {
        {"no dissipation", [&](double t) { return no_dissipation_kernels(units, T, t); }},
        {"gamma tau_d=1e-3", [&](double t) { return ohmic_high_t_kernels(1e-3 / tau_d, units, T, t); }},
        {"gamma tau_d=1", [&](double t) { return ohmic_high_t_kernels(1.0 / tau_d, units, T, t); }},
    };
    double worst_norm = 0.0, worst_under = 0.0, worst_ratio = 0.0;
    for (const auto& c : cases) {
        for (double t : {0.3 * tau_d, tau_d, 3.0 * tau_d}) {
            const auto k = c.kernels(t);
            const double w = std::sqrt(packet_width(s1, 0.0, k).w2);
            const double reach = 0.5 * d + 14.0 * w;
            const auto xs = linspace(-reach, reach, 40001);
            const auto p = interference_profile(xs, d, s1, 0.0, k);
            worst_norm = std::max(worst_norm, std::abs(trapezoid(p.x_grid, p.p) - 1.0));
            for (double v : p.p) worst_under = std::max(worst_under, -v);
            for (double r : fringe_to_envelope_ratio(p)) worst_ratio = std::max(worst_ratio, std::abs(r - p.attenuation));
        }
    }
    const bool ok = worst_norm < 1e-8 && worst_under <= 1e-8 && worst_ratio < 1e-10;
    return {ok, "3 scenarios x 3 times: |norm-1| " + fmt("%.3g", worst_norm) + " (tol 1e-8), undershoot " +
                    fmt("%.3g", worst_under) + " (tol 1e-8), |ratio-a| " + fmt("%.3g", worst_ratio) +
                    " (tol 1e-10)"};
}

Outcome small_separation() {
    double worst = 0.0;
    const double s1 = 0.8;
    const KernelPair ks[] = {no_dissipation_kernels(unit, Temperature(1.0), 1.0),
                             ohmic_high_t_kernels(0.5, unit, Temperature(10.0), 2.0)};
    for (const auto& k : ks) {
        const auto xs = linspace(-15.0, 15.0, 3001);
        const auto p = interference_profile(xs, 1e-8 * s1, s1, 0.2, k);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            worst = std::max(worst, std::abs(p.p[i] - conditional_spread(xs[i], s1, 0.2, k)));
        }
    }
    return {worst < 1e-6, "d = 1e-8 sigma1: max |P - conditional spread| " + fmt("%.3g", worst) + " (tol 1e-6)"};
}

Outcome cli_determinism() {
    const auto dir = qbm::testing::scratch_dir("acceptance");
    qbm::testing::write_oscillator_table(dir / "osc.tab");
    const std::string exe = QBM_EXE;
    const std::string tab = " --bath tabulated:" + (dir / "osc.tab").string();
    const std::string runs[] = {
        " kernels --gamma 0.5 --temp 2 --t-start 0.01 --t-end 10 --t-points 12 --t-scale log",
        " spread" + tab + " --temp 0.5 --t-points 9",
        " interference --bath ohmic --gamma 0.01 --t 0.2 --x-points 401",
        " attenuation --bath none --t-points 21 --format json",
        " oracle" + tab + " --sigma1 0.6 --sigma2 0.3 --t 1.5 --x-min -4 --x-max 4 --x-points 16",
        " decoherence-time --bath ohmic --gamma 0.2",
    };
    int identical = 0;
    std::string first_bad;
    for (const auto& args : runs) {
        const auto a = qbm::testing::capture(exe + args + " --threads 1");
        const auto b = qbm::testing::capture(exe + args);
        const auto c = qbm::testing::capture(exe + args);
        if (a.exit_code == 0 && !a.out.empty() && a.out == b.out && b.out == c.out) {
            ++identical;
        } else if (first_bad.empty()) {
            first_bad = args;
        }
    }
    return {identical == 6, std::to_string(identical) + "/6 subcommands byte-identical over 3 runs" +
                                (first_bad.empty() ? "" : "; differs:" + first_bad)};
}

}  // namespace

int main() {
    report(1, "kernel correctness", kernel_correctness);
    report(2, "no-dissipation limits", no_dissipation_limit);
    report(3, "elementary spreading", cold_spreading);
    report(4, "attenuation identity", attenuation_identity);
    report(5, "decoherence without dissipation", decoherence_without_dissipation);
    report(6, "long-time rate", long_time_rate);
    report(7, "oracle equivalence", oracle_equivalence);
    report(8, "profile consistency", profile_consistency);
    report(9, "small-separation reduction", small_separation);
    report(10, "cli determinism", cli_determinism);
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
