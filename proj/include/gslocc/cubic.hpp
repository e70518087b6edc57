#pragma once

#include <vector>

namespace gslocc {

/// Real roots of c3 u^3 + c2 u^2 + c1 u + c0 in ascending order.
///
/// Uses the trigonometric form when there are three real roots and Cardano's
/// formula otherwise, followed by one Newton step per root. Leading
/// coefficients below 1e-14 of the largest coefficient are dropped, so the
/// same routine serves quadratic and linear inputs. An identically zero
/// polynomial yields no roots.
std::vector<double> solve_cubic(double c3, double c2, double c1, double c0);

}  // namespace gslocc
