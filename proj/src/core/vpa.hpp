#pragma once

#include "types.hpp"

namespace fdd {

/// Impulse-response series evaluated with variable-precision arithmetic at
/// config.precision_digits significant digits, mirroring the escalation step
/// of the original algorithm term by term (factorial, Gamma(-i alpha) and
/// L^{alpha i} formed at full precision, then multiplied).  Slow; intended as
/// a cross-validation mode for the log-domain path, not for production grids.
SampledSignal impulse_response_vpa(const FddParams& params, const TimeGrid& grid,
                                   const SeriesConfig& config = {});

} // namespace fdd
