#pragma once

#include <vector>

#include "chordcount/multirat.hpp"
#include "chordcount/series.hpp"

namespace chordcount {

// The substitution x = sqrt(mu) (z + 1/z) rationalizes sqrt(x^2 - 4 mu);
// series work is done in the variable xi = 1/x.
inline const char* kXiVar = "xi";

// z(x) = x/u - u/x - u^3/x^3 - 2 u^5/x^5 - ..., the |z| > 1 branch, exact
// through xi^order.
TSeries zhukovsky_inverse(int order);

// x(z) applied to a xi-series
TSeries zhukovsky_x(const TSeries& z);

// dx/dz = u (1 - z^-2) evaluated on a xi-series for z
TSeries zhukovsky_dx_dz(const TSeries& z);

TSeries eval_zpoly(const ZPoly& p, const std::vector<TSeries>& vals);
TSeries eval_multirat(const MultiRat& f, const std::vector<TSeries>& vals);

// Expansion of a univariate rational function at 0 or infinity in its own
// variable, to the requested order. For expansion at infinity the returned
// series is in xi = 1/var.
TSeries laurent_expand_at_zero(const MultiRat& f, const std::string& var_name, int order);
TSeries laurent_expand_at_infinity(const MultiRat& f, int order);

}  // namespace chordcount
