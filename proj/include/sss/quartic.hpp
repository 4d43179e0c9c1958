#pragma once

#include <vector>

namespace sss {

// Real roots of c4 y^4 + c3 y^3 + c2 y^2 + c1 y + c0, ascending, duplicates merged.
// Leading coefficients that vanish relative to the rest drop the degree.
std::vector<double> solve_quartic(double c4, double c3, double c2, double c1, double c0);

// Only the real roots in [lo, hi].
std::vector<double> solve_quartic_in(double c4, double c3, double c2, double c1, double c0, double lo, double hi);

// Same for an arbitrary coefficient list, lowest degree first (degree <= 8).
std::vector<double> solve_poly(const std::vector<double>& coeffs);

double eval_poly(const std::vector<double>& coeffs, double x);

} // namespace sss
