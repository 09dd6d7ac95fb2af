#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace fdd {

using Complex = std::complex<double>;

/// The pair (L, alpha) defining one fractional diffusive delay term
/// exp(-(L s)^alpha).  L is the delay scale in seconds, alpha the
/// fractional exponent, restricted to the open interval (0, 1).
struct FddParams {
    double L;
    double alpha;

    FddParams(double L_, double alpha_) : L(L_), alpha(alpha_) {
        require(std::isfinite(L) && L > 0.0, Errc::invalid_argument,
                "FddParams: L must be finite and > 0");
        require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, Errc::invalid_argument,
                "FddParams: alpha must lie in the open interval (0,1)");
    }
};

/// Uniform time grid t_k = k*t_s for k = 1..K, K = floor(t_max/t_s).
/// The grid deliberately starts at t_s, never at 0.
struct TimeGrid {
    double t_s;
    double t_max;

    TimeGrid(double ts, double tmax) : t_s(ts), t_max(tmax) {
        require(std::isfinite(ts) && ts > 0.0, Errc::invalid_argument,
                "TimeGrid: t_s must be finite and > 0");
        require(std::isfinite(tmax) && tmax > ts, Errc::invalid_argument,
                "TimeGrid: t_max must exceed t_s");
    }

    std::size_t size() const {
        return static_cast<std::size_t>(std::floor(t_max / t_s + 1e-12));
    }
    double time(std::size_t k) const { return static_cast<double>(k + 1) * t_s; }

    std::vector<double> times() const {
        std::vector<double> t(size());
        for (std::size_t k = 0; k < t.size(); ++k) t[k] = time(k);
        return t;
    }
};

/// Truncation and filtering knobs of the impulse-response series evaluation.
struct SeriesConfig {
    int n_terms = 200;           // maximum series index N
    double peak_threshold = 10.0; // P, first post-filter pass threshold
    double integer_tol = 1e-9;   // |i*alpha - round(i*alpha)| below this counts as integer
    int precision_digits = 200;  // significant digits for the extended-precision path

    void validate() const {
        require(n_terms >= 1, Errc::invalid_argument, "SeriesConfig: n_terms must be >= 1");
        require(peak_threshold > 0.0, Errc::invalid_argument,
                "SeriesConfig: peak_threshold must be > 0");
        require(integer_tol > 0.0 && integer_tol < 1e-3, Errc::invalid_argument,
                "SeriesConfig: integer_tol must lie in (0, 1e-3)");
        require(precision_digits >= 16, Errc::invalid_argument,
                "SeriesConfig: precision_digits must be >= 16");
    }
};

/// Values sampled on a uniform time grid.
struct SampledSignal {
    TimeGrid grid;
    std::vector<double> values;

    SampledSignal(TimeGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
        require(values.size() == grid.size(), Errc::invalid_argument,
                "SampledSignal: value count must match the grid");
    }
};

/// Complex response samples on a strictly increasing positive frequency grid.
struct FrequencyResponseSamples {
    std::vector<double> omegas;
    std::vector<Complex> values;

    FrequencyResponseSamples() = default;
    FrequencyResponseSamples(std::vector<double> w, std::vector<Complex> v)
        : omegas(std::move(w)), values(std::move(v)) {
        require(omegas.size() == values.size(), Errc::invalid_argument,
                "FrequencyResponseSamples: length mismatch");
        for (std::size_t i = 0; i < omegas.size(); ++i) {
            require(omegas[i] > 0.0, Errc::invalid_argument,
                    "FrequencyResponseSamples: omegas must be > 0");
            require(i == 0 || omegas[i] > omegas[i - 1], Errc::invalid_argument,
                    "FrequencyResponseSamples: omegas must be strictly increasing");
        }
    }

    std::size_t size() const { return omegas.size(); }
};

/// 200 log-spaced frequencies per decade pair around a center frequency.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

} // namespace fdd
