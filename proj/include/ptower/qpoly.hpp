#pragma once

#include <utility>
#include <vector>

#include "ptower/padic.hpp"

namespace ptower {

// Dense polynomial over Qp, coefficient c[i] on X^i. Small degrees only
// (characteristic polynomials, quotient-ring reductions); the heavy series
// work lives in pseries/lambda with their own representations.
using QPoly = std::vector<PadicScalar>;

QPoly qp_trim(QPoly f);
QPoly qp_add(const QPoly& f, const QPoly& g);
QPoly qp_sub(const QPoly& f, const QPoly& g);
QPoly qp_mul(const QPoly& f, const QPoly& g);
QPoly qp_scale(const PadicScalar& c, const QPoly& f);
PadicScalar qp_eval(const QPoly& f, const PadicScalar& x);
// Remainder of f by a monic divisor g (exact long division).
QPoly qp_rem(QPoly f, const QPoly& g);

// Newton polygon of a monic polynomial: list of (root valuation, multiplicity),
// ascending in valuation. Root valuations are the negated slopes of the lower
// convex hull of (i, v(c_i)). Throws if a needed coefficient has indeterminate
// valuation (BigOh with the hull passing below its bound).
std::vector<std::pair<Frac, int>> newton_slopes(const QPoly& f);

}  // namespace ptower
