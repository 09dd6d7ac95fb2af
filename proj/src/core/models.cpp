#include "models.hpp"

#include <cmath>

#include "fdd_core.hpp"

namespace fdd {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validate(const ModelParams& m) {
    std::visit([](const auto& p) { p.validate(); }, m);
}

std::string family_name(const ModelParams& m) {
    struct Visitor {
        std::string operator()(const Fopdt&) const { return "fopdt"; }
        std::string operator()(const Fo2pdt&) const { return "fo2pdt"; }
        std::string operator()(const Fopfdd&) const { return "fopfdd"; }
    };
    return std::visit(Visitor{}, m);
}

void model_point(const ModelParams& m, double omega, double& mag, double& phase) {
    struct Visitor {
        double w;
        double mag = 0.0, phase = 0.0;
        void operator()(const Fopdt& p) {
            mag = p.K / std::hypot(1.0, w * p.tau);
            phase = -std::atan(w * p.tau) - w * p.L;
        }
        void operator()(const Fo2pdt& p) {
            const double wa = std::pow(w, p.alpha);
            const double re = 1.0 + p.tau * wa * std::cos(p.alpha * kPi / 2.0);
            const double im = p.tau * wa * std::sin(p.alpha * kPi / 2.0);
            mag = p.K / std::hypot(re, im);
            phase = -std::atan2(im, re) - w * p.L;
        }
        void operator()(const Fopfdd& p) {
            const double r = std::pow(p.L * w, p.alpha);
            mag = p.K * std::exp(-r * std::cos(p.alpha * kPi / 2.0)) / std::hypot(1.0, w * p.tau);
            phase = -std::atan(w * p.tau) - r * std::sin(p.alpha * kPi / 2.0);
        }
    } v{omega};
    std::visit([&](const auto& p) { v(p); }, m);
    mag = v.mag;
    phase = v.phase;
}

Complex model_value(const ModelParams& m, double omega) {
    double mag = 0.0, phase = 0.0;
    model_point(m, omega, mag, phase);
    return std::polar(mag, phase);
}

FrequencyResponseSamples model_freq_response(const ModelParams& m,
                                             std::span<const double> omegas) {
    validate(m);
    std::vector<Complex> values(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) values[i] = model_value(m, omegas[i]);
    return FrequencyResponseSamples(std::vector<double>(omegas.begin(), omegas.end()),
                                    std::move(values));
}

SampledSignal fopdt_step_response(const Fopdt& m, const TimeGrid& grid) {
    m.validate();
    std::vector<double> values(grid.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double t = grid.time(k);
        values[k] = t < m.L ? 0.0 : m.K * (1.0 - std::exp(-(t - m.L) / m.tau));
    }
    return SampledSignal(grid, std::move(values));
}

SampledSignal fo2pdt_step_response(const Fo2pdt& m, const TimeGrid& grid,
                                   const TalbotConfig& config) {
    m.validate();
    LaplaceFunction F;
    F.eval = [K = m.K, tau = m.tau, alpha = m.alpha](Complex s) {
        return K / (s * (tau * std::pow(s, alpha) + 1.0));
    };
    std::vector<double> values(grid.size(), 0.0);
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double t = grid.time(k) - m.L;
        if (t > 0.0) values[k] = ilt_point(F, t, config);
    }
    return SampledSignal(grid, std::move(values));
}

SampledSignal fopfdd_step_response(const Fopfdd& m, const TimeGrid& grid,
                                   const SeriesConfig& config) {
    m.validate();
    const FddParams fp(m.L, m.alpha);
    // the filter threshold must clear the true kernel peak; the spectral bound
    // is rigorous, so use it whenever it exceeds the configured P
    SeriesConfig kernel_config = config;
    kernel_config.peak_threshold =
        std::max(config.peak_threshold, 10.0 * impulse_peak_bound(fp));
    SampledSignal kernel = impulse_response_unchecked(fp, grid, kernel_config);

    const std::size_t K = grid.size();
    std::vector<double> weights(K);
    double mass = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
        weights[j] = kernel.values[j] * grid.t_s;
        mass += weights[j];
    }
    require(mass > 0.0, Errc::non_convergent,
            "fopfdd_step_response: FDD kernel vanished on the grid");
    for (double& w : weights) w /= mass; // unit discrete mass (Lemma-2 area)

    std::vector<double> first_order(K + 1);
    first_order[0] = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        first_order[k + 1] = m.K * (1.0 - std::exp(-grid.time(k) / m.tau));

    std::vector<double> values(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        double acc = 0.0;
        // y(t_k) = sum_j f1(t_k - t_j) w_j; t_k - t_j = (k - j) * t_s
        for (std::size_t j = 0; j <= k; ++j) acc += first_order[k - j] * weights[j];
        values[k] = acc;
    }
    return SampledSignal(grid, std::move(values));
}

SampledSignal model_step_response(const ModelParams& m, const TimeGrid& grid) {
    struct Visitor {
        const TimeGrid& grid;
        SampledSignal operator()(const Fopdt& p) const { return fopdt_step_response(p, grid); }
        SampledSignal operator()(const Fo2pdt& p) const { return fo2pdt_step_response(p, grid); }
        SampledSignal operator()(const Fopfdd& p) const { return fopfdd_step_response(p, grid); }
    };
    return std::visit(Visitor{grid}, m);
}

} // namespace fdd
