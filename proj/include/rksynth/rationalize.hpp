#pragma once

#include "rksynth/rational.hpp"
#include "rksynth/rk2.hpp"

namespace rksynth {

// Best rational approximation p/q to x with q <= max_denominator, found via
// continued-fraction convergents and semiconvergents. Ties in |x - p/q| go to
// the smaller denominator, then the smaller numerator.
rational best_rational(double x, long long max_denominator);

// c2 = a21, b2 = 1/(2*a21), b1 = 1 - b2, all exact; the result satisfies the
// order conditions by construction. Throws zero_abscissa_error if a21 = 0.
tableau2<rational> complete_tableau(const rational &a21);

} // namespace rksynth
