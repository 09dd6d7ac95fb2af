#pragma once

#include <span>
#include <vector>

#include "types.hpp"

namespace fdd {

/// exp(-(L s)^alpha) evaluated at s = j*omega.
/// Modulus exp(-(L w)^a cos(a pi/2)), phase -(L w)^a sin(a pi/2); exactly 1 at omega = 0.
Complex frequency_response(const FddParams& params, double omega);

/// One term of the truncated series in log form:
/// term_i(t) = sign * exp(log_coef + power * ln t), power = -alpha*i - 1.
/// Terms with i*alpha within integer_tol of an integer are dropped (zero contribution).
struct SeriesTerm {
    double log_coef;
    double sign;
    double power;
};

/// Coefficient table for the truncated impulse-response series of a given (L, alpha, N).
class SeriesTable {
public:
    SeriesTable(const FddParams& params, const SeriesConfig& config);

    /// Truncated series value at a single time (no filtering).  Non-finite
    /// accumulations are clamped to a huge finite magnitude so that the
    /// post-filter passes can dispose of them deterministically.
    double evaluate(double t) const;

    /// Series values over an arbitrary positive, increasing time array.
    std::vector<double> evaluate(std::span<const double> t) const;

    /// Exact integral of the truncated series over (T, infinity).
    /// Valid once T is past the region where the series has converged.
    double tail_integral(double T) const;

    const std::vector<SeriesTerm>& terms() const { return terms_; }

private:
    std::vector<SeriesTerm> terms_;
    double alpha_;
};

/// Algorithm: zero every sample up to and including the last index where
/// |F| > peak_threshold, then up to and including the last index where F < 0.
void apply_peak_filters(std::vector<double>& values, double peak_threshold);

/// Truncated-series impulse response on the grid with the two post-filter
/// passes applied.  Throws Errc::non_convergent when filtering leaves the
/// signal identically zero and Errc::config when the captured area plus the
/// analytic series tail misses 1 by more than 10%.
SampledSignal impulse_response(const FddParams& params, const TimeGrid& grid,
                               const SeriesConfig& config = {});

/// Same evaluation without the convergence certificates; used by the
/// windowed quadratures where a single window never carries the whole area.
SampledSignal impulse_response_unchecked(const FddParams& params, const TimeGrid& grid,
                                         const SeriesConfig& config = {});

/// Closed-form inverse transform of exp(-Lambda sqrt(s)) with Lambda = sqrt(L),
/// i.e. the alpha = 1/2 impulse response: g(t) = Lambda/(2 sqrt(pi) t^{3/2}) exp(-Lambda^2/(4t)).
SampledSignal impulse_closed_form_half(double L, const TimeGrid& grid);
double impulse_closed_form_half_at(double L, double t);

/// Trapezoidal integral over (0, t_max], treating the signal as 0 at t = 0.
double area(const SampledSignal& signal);

/// Trapezoidal integral of the squared signal over (0, t_max].
double energy_numeric(const SampledSignal& signal);

/// Parseval closed form: (1/pi) Gamma(1 + 1/alpha) / (2 L^alpha cos(alpha pi/2))^{1/alpha}.
double energy_spectral(const FddParams& params);

/// Rigorous amplitude bound (1/pi) * integral of |F(j w)| dw =
/// Gamma(1 + 1/alpha) / (pi L cos(alpha pi/2)^{1/alpha}).
double impulse_peak_bound(const FddParams& params);

/// Result of the adaptive quadrature used as the Lemma-2/Lemma-3 certificate.
struct QuadratureCertificate {
    double value;        // integral of f (or f^2) over (0, inf)
    double t_left;       // smallest time reached by the descent
    double t_right;      // largest time integrated directly (tail added analytically)
    int windows;         // number of geometric windows evaluated
    bool left_truncated; // descent stopped on series garbage rather than the mass bound
};

/// Integral of the filtered truncated series over (0, inf), by geometric
/// windows in both directions plus the analytic tail.  The grid is extended
/// adaptively; a single uniform grid cannot reach the heavy t^{-alpha-1}
/// tail for small alpha.
QuadratureCertificate area_certificate(const FddParams& params, const SeriesConfig& config = {});

/// Same machinery for the energy integral of f^2.
QuadratureCertificate energy_certificate(const FddParams& params, const SeriesConfig& config = {});

} // namespace fdd
