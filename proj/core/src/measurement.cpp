#include "qbm/measurement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qbm/errors.hpp"

namespace qbm {
namespace {

constexpr double kPi = std::numbers::pi;

// Beyond |q| = 8/σ the Gaussian weight e^{−2σ²q²} is below e^{−128}.
constexpr double kQCutoff = 8.0;

// ∫ dq/2π ᾶ(q − k/2)* ᾶ(q + k/2) e^{i q phase_rate}.
complex overlap_integral(const MeasuringFunction& mf, double k, double phase_rate,
                         const QuadratureConfig& quad) {
    const double q_max = kQCutoff / mf.sigma();
    auto integrand = [&](double q) {
        const complex w = std::conj(alpha_fourier(mf, q - 0.5 * k)) * alpha_fourier(mf, q + 0.5 * k);
        if (phase_rate == 0.0) return w;
        return w * std::polar(1.0, q * phase_rate);
    };
    std::vector<double> pts{-q_max, 0.0, q_max};
    // Oscillating factors (double-slit cosines, commutator phase) get a mesh.
    double rate = std::abs(phase_rate);
    if (const auto* ds = std::get_if<DoubleSlit>(&mf.variant())) rate += ds->separation;
    if (rate > 0.0) {
        const double spacing = 2.0 * kPi / rate;
        const double n = 2.0 * q_max / spacing;
        if (n > 1.0 && n < 1e5) {
            for (double q = -q_max + spacing; q < q_max; q += spacing) pts.push_back(q);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    QuadratureConfig cfg = quad;
    cfg.abs_tol = std::min(quad.abs_tol, 1e-14);
    return quad::integrate(integrand, std::span<const double>(pts), cfg).value / (2.0 * kPi);
}

void check_decay(std::span<const complex> samples, std::span<const std::size_t> edge,
                 const InversionOptions& opts) {
    if (!opts.enforce_decay) return;
    double peak = 0.0;
    for (const auto& v : samples) peak = std::max(peak, std::abs(v));
    double edge_max = 0.0;
    for (std::size_t i : edge) edge_max = std::max(edge_max, std::abs(samples[i]));
    if (edge_max > opts.decay_threshold * peak) {
        throw AliasingError("invert_characteristic: |xi| has not decayed at the k-grid boundary");
    }
}

void check_period(const UniformGrid& k, std::span<const double> x) {
    const double half_period = kPi / std::abs(k.step);
    for (double xi : x) {
        if (std::abs(xi) > half_period * (1.0 + 1e-12)) {
            throw AliasingError("invert_characteristic: x outside the period 2pi/dk of the k-grid");
        }
    }
}

void check_grid(const UniformGrid& k, std::size_t n_samples) {
    if (k.count < 2 || !(k.step != 0.0)) throw DomainError("invert_characteristic: k-grid needs >= 2 points");
    if (n_samples != k.count) throw DomainError("invert_characteristic: sample count mismatch");
}

// phases[i·x.size() + m] = e^{−i k_i x_m}
std::vector<complex> phase_table(const UniformGrid& k, std::span<const double> x) {
    std::vector<complex> out(k.count * x.size());
    for (std::size_t i = 0; i < k.count; ++i) {
        for (std::size_t m = 0; m < x.size(); ++m) out[i * x.size() + m] = std::polar(1.0, -k[i] * x[m]);
    }
    return out;
}

}  // namespace

MeasuringFunction MeasuringFunction::gaussian(double sigma, double center) {
    if (!(sigma > 0.0)) throw DomainError("GaussianSlit: sigma must be > 0");
    return MeasuringFunction(GaussianSlit{sigma, center});
}

MeasuringFunction MeasuringFunction::double_slit(double separation, double sigma, double center) {
    if (!(sigma > 0.0)) throw DomainError("DoubleSlit: sigma must be > 0");
    if (!(separation > 0.0)) throw DomainError("DoubleSlit: separation must be > 0");
    return MeasuringFunction(DoubleSlit{separation, sigma, center});
}

double MeasuringFunction::sigma() const noexcept {
    return std::visit([](const auto& m) { return m.sigma; }, v_);
}

double double_slit_normalization(double separation, double sigma) {
    const double overlap = 1.0 + std::exp(-separation * separation / (8.0 * sigma * sigma));
    return std::pow(8.0 * kPi * sigma * sigma * overlap * overlap, 0.25);
}

double alpha_value(const MeasuringFunction& mf, double x) {
    if (const auto* g = std::get_if<GaussianSlit>(&mf.variant())) {
        const double u = x - g->center;
        return std::pow(2.0 * kPi * g->sigma * g->sigma, -0.25) *
               std::exp(-u * u / (4.0 * g->sigma * g->sigma));
    }
    const auto& d = std::get<DoubleSlit>(mf.variant());
    const double s2 = 4.0 * d.sigma * d.sigma;
    const double a = x - d.center - 0.5 * d.separation;
    const double b = x - d.center + 0.5 * d.separation;
    return (std::exp(-a * a / s2) + std::exp(-b * b / s2)) /
           double_slit_normalization(d.separation, d.sigma);
}

complex alpha_fourier(const MeasuringFunction& mf, double q) {
    if (const auto* g = std::get_if<GaussianSlit>(&mf.variant())) {
        const double amp = std::pow(8.0 * kPi * g->sigma * g->sigma, 0.25) *
                           std::exp(-g->sigma * g->sigma * q * q);
        return std::polar(amp, -q * g->center);
    }
    // Each packet transforms to sqrt(4πσ²) e^{−σ²q²} e^{−iq(center ± d/2)}.
    const auto& d = std::get<DoubleSlit>(mf.variant());
    const double amp = std::sqrt(4.0 * kPi * d.sigma * d.sigma) * std::exp(-d.sigma * d.sigma * q * q) *
                       2.0 * std::cos(0.5 * q * d.separation) /
                       double_slit_normalization(d.separation, d.sigma);
    return std::polar(1.0, -q * d.center) * amp;
}

complex xi_single(const MeasuringFunction& mf, const Variance& x2_mean, double k1,
                  const QuadratureConfig& quad) {
    const double v = x2_mean.value();
    quad.validate();
    return std::exp(-0.5 * k1 * k1 * v) * overlap_integral(mf, k1, 0.0, quad);
}

complex xi_joint(const MeasuringFunction& mf1, const MeasuringFunction& mf2, const Covariance2& cov,
                 double c12, double k1, double k2, const QuadratureConfig& quad) {
    const double scale = std::max({std::abs(cov.xx), std::abs(cov.yy), std::abs(cov.xy), 1e-300});
    if (cov.xx < 0.0 || cov.yy < 0.0 || cov.xx * cov.yy - cov.xy * cov.xy < -1e-12 * scale * scale) {
        throw DomainError("xi_joint: covariance is not positive semidefinite");
    }
    quad.validate();
    const double gauss = std::exp(-0.5 * (cov.xx * k1 * k1 + 2.0 * cov.xy * k1 * k2 + cov.yy * k2 * k2));
    if (gauss == 0.0) return {0.0, 0.0};
    return gauss * overlap_integral(mf1, k1, k2 * c12, quad) * overlap_integral(mf2, k2, 0.0, quad);
}

std::vector<double> UniformGrid::points() const {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = (*this)[i];
    return out;
}

UniformGrid UniformGrid::spanning(double lo, double hi, std::size_t count) {
    if (count < 2) throw DomainError("UniformGrid: need at least 2 points");
    return {lo, (hi - lo) / static_cast<double>(count - 1), count};
}

Inversion1D invert_characteristic(const UniformGrid& k, std::span<const complex> samples,
                                  std::span<const double> x, const InversionOptions& opts) {
    check_grid(k, samples.size());
    const std::array<std::size_t, 2> edge{0, k.count - 1};
    check_decay(samples, edge, opts);
    check_period(k, x);

    const auto phases = phase_table(k, x);
    const double weight = std::abs(k.step) / (2.0 * kPi);
    Inversion1D out{{x.begin(), x.end()}, std::vector<double>(x.size()), 0.0};
    for (std::size_t m = 0; m < x.size(); ++m) {
        complex acc{};
        for (std::size_t i = 0; i < k.count; ++i) acc += samples[i] * phases[i * x.size() + m];
        acc *= weight;
        out.density[m] = acc.real();
        out.max_imag_residue = std::max(out.max_imag_residue, std::abs(acc.imag()));
    }
    return out;
}

Inversion2D invert_characteristic(const UniformGrid& k1, const UniformGrid& k2,
                                  std::span<const complex> samples, std::span<const double> x1,
                                  std::span<const double> x2, const InversionOptions& opts) {
    if (k1.count < 2 || k2.count < 2) throw DomainError("invert_characteristic: k-grids need >= 2 points");
    if (samples.size() != k1.count * k2.count) {
        throw DomainError("invert_characteristic: sample count mismatch");
    }
    std::vector<std::size_t> edge;
    for (std::size_t i = 0; i < k1.count; ++i) {
        edge.push_back(i * k2.count);
        edge.push_back(i * k2.count + k2.count - 1);
    }
    for (std::size_t j = 0; j < k2.count; ++j) {
        edge.push_back(j);
        edge.push_back((k1.count - 1) * k2.count + j);
    }
    check_decay(samples, edge, opts);
    check_period(k1, x1);
    check_period(k2, x2);

    const auto p1 = phase_table(k1, x1);
    const auto p2 = phase_table(k2, x2);
    const std::size_t n2 = x2.size();

    // Contract k2 first: partial[i1·n2 + m] = Σ_{i2} ξ(i1, i2) e^{−i k2 x2_m}.
    std::vector<complex> partial(k1.count * n2);
    for (std::size_t i1 = 0; i1 < k1.count; ++i1) {
        for (std::size_t i2 = 0; i2 < k2.count; ++i2) {
            const complex v = samples[i1 * k2.count + i2];
            if (v == complex{}) continue;
            for (std::size_t m = 0; m < n2; ++m) partial[i1 * n2 + m] += v * p2[i2 * n2 + m];
        }
    }

    const double weight = std::abs(k1.step) * std::abs(k2.step) / (4.0 * kPi * kPi);
    Inversion2D out{{x1.begin(), x1.end()}, {x2.begin(), x2.end()}, std::vector<double>(x1.size() * n2), 0.0};
    for (std::size_t l = 0; l < x1.size(); ++l) {
        for (std::size_t m = 0; m < n2; ++m) {
            complex acc{};
            for (std::size_t i1 = 0; i1 < k1.count; ++i1) acc += partial[i1 * n2 + m] * p1[i1 * x1.size() + l];
            acc *= weight;
            out.density[l * n2 + m] = acc.real();
            out.max_imag_residue = std::max(out.max_imag_residue, std::abs(acc.imag()));
        }
    }
    return out;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("trapezoid: size mismatch");
    double sum = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return sum;
}

}  // namespace qbm
