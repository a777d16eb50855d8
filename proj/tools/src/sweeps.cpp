#include "qbm/cli/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "qbm/errors.hpp"
#include "qbm/measurement.hpp"
#include "qbm/observables.hpp"
#include "qbm/version.hpp"

namespace qbm::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepOutput start(const std::string& command, const Scenario& s) {
    s.validate();
    SweepOutput out;
    out.command = command;
    out.metadata = {{"program", "qbm"}, {"version", kVersion}, {"command", command}};
    for (auto& kv : describe(s)) out.metadata.push_back(std::move(kv));
    return out;
}

unsigned worker_count(const Scenario& s, std::size_t jobs) {
    unsigned n = s.threads == 0 ? std::thread::hardware_concurrency() : s.threads;
    n = std::max(1u, n);
    return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

// Runs job(i) for i < count on a small pool. Each job writes only its own
// slot, so the result does not depend on scheduling.
template <class Job>
void for_each_index(std::size_t count, unsigned workers, Job job) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) job(i);
        });
    }
}

KernelPair kernels_at(const Scenario& s, const BathSpec& bath, double t) {
    const UnitSystem units = s.units();
    const Temperature T = s.temperature();
    if (s.kernels == KernelSource::Closed) {
        if (bath.is_no_dissipation()) return no_dissipation_kernels(units, T, t);
        return ohmic_high_t_kernels(bath.damping_rate(), units, T, t);
    }
    return kernel_pair(bath, units, T, t, s.quad, s.thermal);
}

// Shared driver for the time sweeps: row(t) returns the numeric columns.
template <class Row>
void time_sweep(SweepOutput& out, const Scenario& s, Row row) {
    const auto times = s.time.values();
    out.rows.assign(times.size(), {});
    out.status.assign(times.size(), "ok");
    const std::size_t width = out.header.size();
    for_each_index(times.size(), worker_count(s, times.size()), [&](std::size_t i) {
        try {
            out.rows[i] = row(times[i]);
        } catch (const ConvergenceError& e) {
            out.rows[i].assign(width, kNaN);
            out.rows[i][0] = times[i];
            out.status[i] = std::string("convergence: ") + e.what();
        }
    });
    out.failed = std::any_of(out.status.begin(), out.status.end(), [](const auto& st) { return st != "ok"; });
}

}  // namespace

SweepOutput run_kernels(const Scenario& s) {
    auto out = start("kernels", s);
    const BathSpec bath = s.bath_spec();
    const UnitSystem units = s.units();
    const Temperature T = s.temperature();
    const bool closed = !bath.is_tabulated();
    out.header = {"t", "s", "c"};
    if (closed) {
        out.header.push_back("s_closed");
        out.header.push_back("c_closed");
    }
    time_sweep(out, s, [&](double t) {
        const auto k = kernel_pair(bath, units, T, t, s.quad, s.thermal);
        std::vector<double> row{t, k.s, k.c};
        if (closed) {
            const auto ref = bath.is_ohmic() ? ohmic_high_t_kernels(bath.damping_rate(), units, T, t)
                                             : no_dissipation_kernels(units, T, t);
            row.push_back(ref.s);
            row.push_back(ref.c);
        }
        return row;
    });
    return out;
}

SweepOutput run_spread(const Scenario& s) {
    auto out = start("spread", s);
    const BathSpec bath = s.bath_spec();
    out.header = {"t", "s", "c", "w2"};
    time_sweep(out, s, [&](double t) {
        const auto k = kernels_at(s, bath, t);
        return std::vector<double>{t, k.s, k.c, packet_width(s.sigma1, s.sigma2, k).w2};
    });
    return out;
}

SweepOutput run_attenuation(const Scenario& s) {
    auto out = start("attenuation", s);
    const BathSpec bath = s.bath_spec();
    const UnitSystem units = s.units();
    const Temperature T = s.temperature();
    const bool reference = !T.is_zero();
    out.header = {"t", "s", "c", "w2", "a"};
    if (reference) out.header.push_back("a_no_dissipation");
    time_sweep(out, s, [&](double t) {
        const auto k = kernels_at(s, bath, t);
        std::vector<double> row{t, k.s, k.c, packet_width(s.sigma1, s.sigma2, k).w2,
                                attenuation(s.d, s.sigma1, s.sigma2, k)};
        if (reference) row.push_back(attenuation_no_dissipation(t, s.d, s.sigma1, units, T));
        return row;
    });
    return out;
}

SweepOutput run_interference(const Scenario& s) {
    auto out = start("interference", s);
    const BathSpec bath = s.bath_spec();
    out.header = {"x", "P"};
    try {
        const auto k = kernels_at(s, bath, s.fixed_time());
        const auto xs = s.x.values();
        const auto profile = interference_profile(xs, s.d, s.sigma1, s.sigma2, k);
        out.metadata.emplace_back("s", round_trip(k.s));
        out.metadata.emplace_back("c", round_trip(k.c));
        out.metadata.emplace_back("w2", round_trip(packet_width(s.sigma1, s.sigma2, k).w2));
        out.metadata.emplace_back("attenuation", round_trip(profile.attenuation));
        for (std::size_t i = 0; i < xs.size(); ++i) out.rows.push_back({xs[i], profile.p[i]});
    } catch (const ConvergenceError& e) {
        out.metadata.emplace_back("error", std::string("convergence: ") + e.what());
        out.failed = true;
    }
    return out;
}

SweepOutput run_oracle(const Scenario& s) {
    auto out = start("oracle", s);
    const BathSpec bath = s.bath_spec();
    if (!bath.is_tabulated()) {
        throw UnsupportedVariantError(
            "oracle: <x^2> diverges for this bath; use a finite-variance bath (tabulated:<file>)");
    }
    if (!(s.sigma2 > 0.0)) throw UsageError("oracle: sigma2 must be > 0");
    out.header = {"x1", "x2", "W_closed", "W_oracle", "abs_err"};

    const UnitSystem units = s.units();
    const Temperature T = s.temperature();
    try {
        const double t = s.fixed_time();
        const Variance v = equilibrium_variance(bath, units, T, s.quad);
        const KernelPair k = kernel_pair(bath, units, T, t, s.quad, s.thermal);
        const JointGaussian jg = joint_gaussian_params(s.sigma1, s.sigma2, v, k);
        const Covariance2 cov{v.value(), v.value() - 0.5 * k.s, v.value()};

        // k-grid from the closed-form covariance: wide enough for |ξ| to fall
        // below 1e-14 of its peak, fine enough that periodic images of W are
        // ten standard deviations away from the x grid.
        const double sxx = jg.sigma * jg.sigma, syy = jg.tau * jg.tau;
        const double sxy = jg.rho * jg.sigma * jg.tau;
        const double mid = 0.5 * (sxx + syy);
        const double lambda_min = mid - std::hypot(0.5 * (sxx - syy), sxy);
        const double reach = std::sqrt(2.0 * std::log(1e14) / lambda_min);
        const auto xs = s.x.values();
        const double x_abs = std::max(std::abs(s.x.min), std::abs(s.x.max));
        auto axis = [&](double sd) {
            const double period = 1.05 * std::max(2.0 * x_abs, x_abs + 10.0 * sd);
            const double step = 2.0 * std::numbers::pi / period;
            const auto half = static_cast<std::size_t>(std::ceil(reach / step));
            if (half > 1024) throw AliasingError("oracle: k-grid would need more than 2049 points per axis");
            return UniformGrid{-static_cast<double>(half) * step, step, 2 * half + 1};
        };
        const UniformGrid k1 = axis(jg.sigma);
        const UniformGrid k2 = axis(jg.tau);
        out.metadata.emplace_back("k1-points", std::to_string(k1.count));
        out.metadata.emplace_back("k2-points", std::to_string(k2.count));

        const auto mf1 = MeasuringFunction::gaussian(s.sigma1);
        const auto mf2 = MeasuringFunction::gaussian(s.sigma2);
        std::vector<complex> xi(k1.count * k2.count);
        for_each_index(k1.count, worker_count(s, k1.count), [&](std::size_t i) {
            for (std::size_t j = 0; j < k2.count; ++j) {
                xi[i * k2.count + j] = xi_joint(mf1, mf2, cov, k.c, k1[i], k2[j], s.quad);
            }
        });
        const auto inv = invert_characteristic(k1, k2, xi, xs, xs);

        double linf = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = 0; j < xs.size(); ++j) {
                const double closed = joint_distribution(jg, xs[i], xs[j]);
                const double oracle = inv(i, j);
                const double err = std::abs(closed - oracle);
                linf = std::max(linf, err);
                out.rows.push_back({xs[i], xs[j], closed, oracle, err});
            }
        }
        out.metadata.emplace_back("variance", round_trip(v.value()));
        out.metadata.emplace_back("s", round_trip(k.s));
        out.metadata.emplace_back("c", round_trip(k.c));
        out.metadata.emplace_back("max_imag_residue", round_trip(inv.max_imag_residue));
        out.metadata.emplace_back("linf", round_trip(linf));
    } catch (const ConvergenceError& e) {
        out.metadata.emplace_back("error", std::string("convergence: ") + e.what());
        out.failed = true;
    } catch (const AliasingError& e) {
        out.metadata.emplace_back("error", std::string("aliasing: ") + e.what());
        out.failed = true;
    }
    return out;
}

SweepOutput run_decoherence_time(const Scenario& s) {
    auto out = start("decoherence-time", s);
    const BathSpec bath = s.bath_spec();
    const UnitSystem units = s.units();
    const Temperature T = s.temperature();
    const auto est = decoherence_time(s.d, s.sigma1, units, T, bath);
    const auto scales = thermal_scales(units, T);
    out.header = {"tau_d", "lambda_bar", "v_bar", "d_ge_10_sigma1", "d_gt_10_lambda_bar"};
    std::vector<double> row{est.tau_d, scales.lambda_bar, scales.v_bar,
                            est.flags.separation_exceeds_width ? 1.0 : 0.0,
                            est.flags.separation_exceeds_wavelength ? 1.0 : 0.0};
    if (bath.is_ohmic()) {
        const double gamma = bath.damping_rate();
        out.header.insert(out.header.end(), {"gamma_tau_d", "weak_damping", "long_time_rate"});
        row.push_back(gamma * est.tau_d);
        row.push_back(*est.flags.weak_damping ? 1.0 : 0.0);
        row.push_back(long_time_attenuation_rate(s.d, units, T, gamma));
    }
    out.rows.push_back(std::move(row));
    return out;
}

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"kernels",     "spread", "interference",
                                                "attenuation", "oracle", "decoherence-time"};
    return names;
}

SweepOutput run_command(const std::string& command, const Scenario& s) {
    if (command == "kernels") return run_kernels(s);
    if (command == "spread") return run_spread(s);
    if (command == "interference") return run_interference(s);
    if (command == "attenuation") return run_attenuation(s);
    if (command == "oracle") return run_oracle(s);
    if (command == "decoherence-time") return run_decoherence_time(s);
    throw UsageError("unknown command '" + command + "'");
}

}  // namespace qbm::cli
