#include "vpa.hpp"

#include <cmath>
#include <mpfr.h>

#include "fdd_core.hpp"

namespace fdd {

SampledSignal impulse_response_vpa(const FddParams& params, const TimeGrid& grid,
                                   const SeriesConfig& config) {
    config.validate();
    const mpfr_prec_t prec =
        static_cast<mpfr_prec_t>(std::ceil(config.precision_digits * 3.3219280948873626)) + 16;

    mpfr_t alpha, L, x, coef, tmp, tpow, t;
    mpfr_inits2(prec, alpha, L, x, coef, tmp, tpow, t, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(alpha, params.alpha, MPFR_RNDN);
    mpfr_set_d(L, params.L, MPFR_RNDN);

    const std::size_t K = grid.size();
    std::vector<mpfr_t> acc(K);
    for (auto& a : acc) {
        mpfr_init2(a, prec);
        mpfr_set_zero(a, 1);
    }

    for (int i = 1; i <= config.n_terms; ++i) {
        const double xi = params.alpha * static_cast<double>(i);
        if (std::abs(xi - std::round(xi)) < config.integer_tol) continue;

        // coef = (-1)^i * L^(alpha i) / (i! * Gamma(-alpha i))
        mpfr_mul_si(x, alpha, i, MPFR_RNDN);
        mpfr_pow(coef, L, x, MPFR_RNDN);
        mpfr_fac_ui(tmp, static_cast<unsigned long>(i), MPFR_RNDN);
        mpfr_div(coef, coef, tmp, MPFR_RNDN);
        mpfr_neg(tmp, x, MPFR_RNDN);
        mpfr_gamma(tmp, tmp, MPFR_RNDN);
        mpfr_div(coef, coef, tmp, MPFR_RNDN);
        if (i % 2 != 0) mpfr_neg(coef, coef, MPFR_RNDN);

        // exponent of the time power: -alpha i - 1
        mpfr_neg(x, x, MPFR_RNDN);
        mpfr_sub_ui(x, x, 1, MPFR_RNDN);
        for (std::size_t k = 0; k < K; ++k) {
            mpfr_set_d(t, grid.time(k), MPFR_RNDN);
            mpfr_pow(tpow, t, x, MPFR_RNDN);
            mpfr_mul(tpow, tpow, coef, MPFR_RNDN);
            mpfr_add(acc[k], acc[k], tpow, MPFR_RNDN);
        }
    }

    std::vector<double> values(K);
    for (std::size_t k = 0; k < K; ++k) {
        values[k] = mpfr_get_d(acc[k], MPFR_RNDN);
        mpfr_clear(acc[k]);
    }
    mpfr_clears(alpha, L, x, coef, tmp, tpow, t, static_cast<mpfr_ptr>(nullptr));
    mpfr_free_cache();

    apply_peak_filters(values, config.peak_threshold);
    return SampledSignal(grid, std::move(values));
}

} // namespace fdd
