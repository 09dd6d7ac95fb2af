#pragma once

#include <span>
#include <string>
#include <variant>

#include "ilt.hpp"
#include "types.hpp"

namespace fdd {

/// H1(s) = K e^{-Ls} / (tau s + 1)
struct Fopdt {
    double K, tau, L;
    void validate() const {
        require(tau > 0.0, Errc::invalid_argument, "Fopdt: tau must be > 0");
        require(L >= 0.0, Errc::invalid_argument, "Fopdt: L must be >= 0");
    }
};

/// H2(s) = K e^{-Ls} / (tau s^alpha + 1), alpha in (0, 2)
struct Fo2pdt {
    double K, tau, L, alpha;
    void validate() const {
        require(tau > 0.0, Errc::invalid_argument, "Fo2pdt: tau must be > 0");
        require(L >= 0.0, Errc::invalid_argument, "Fo2pdt: L must be >= 0");
        require(alpha > 0.0 && alpha < 2.0, Errc::invalid_argument,
                "Fo2pdt: alpha must lie in (0,2)");
    }
};

/// H3(s) = K e^{-(Ls)^alpha} / (tau s + 1), alpha in (0, 1)
struct Fopfdd {
    double K, tau, L, alpha;
    void validate() const {
        require(tau > 0.0, Errc::invalid_argument, "Fopfdd: tau must be > 0");
        require(L > 0.0, Errc::invalid_argument, "Fopfdd: L must be > 0");
        require(alpha > 0.0 && alpha < 1.0, Errc::invalid_argument,
                "Fopfdd: alpha must lie in (0,1)");
    }
};

using ModelParams = std::variant<Fopdt, Fo2pdt, Fopfdd>;

void validate(const ModelParams& m);
std::string family_name(const ModelParams& m);

/// Magnitude (linear) and continuous phase (radians, analytic, no unwrap
/// needed) at one frequency.
void model_point(const ModelParams& m, double omega, double& mag, double& phase);

Complex model_value(const ModelParams& m, double omega);

FrequencyResponseSamples model_freq_response(const ModelParams& m,
                                             std::span<const double> omegas);

/// y(t) = 0 for t < L, else K (1 - e^{-(t-L)/tau}).
SampledSignal fopdt_step_response(const Fopdt& m, const TimeGrid& grid);

/// Talbot inversion of K / (s (tau s^alpha + 1)), shifted right by L.
SampledSignal fo2pdt_step_response(const Fo2pdt& m, const TimeGrid& grid,
                                   const TalbotConfig& config = {});

/// First-order step response convolved with the FDD impulse kernel
/// (rectangle rule, kernel rescaled to unit discrete mass on the grid).
SampledSignal fopfdd_step_response(const Fopfdd& m, const TimeGrid& grid,
                                   const SeriesConfig& config = {});

SampledSignal model_step_response(const ModelParams& m, const TimeGrid& grid);

} // namespace fdd
