#include "gslocc/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gslocc {

namespace {

std::vector<double> solve_quadratic(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  // Avoids cancellation in the smaller-magnitude root.
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  std::vector<double> roots;
  if (q != 0.0) {
    roots = {q / a, c / q};
  } else {
    roots = {0.0, 0.0};
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<double> solve_cubic(double c3, double c2, double c1, double c0) {
  const double scale = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) return {};
  const double eps = 1e-14 * scale;
  if (std::abs(c3) <= eps) {
    if (std::abs(c2) <= eps) {
      if (std::abs(c1) <= eps) return {};
      return {-c0 / c1};
    }
    return solve_quadratic(c2, c1, c0);
  }

  // Depressed cubic t^3 + p t + q with u = t - b/3.
  const double b = c2 / c3;
  const double c = c1 / c3;
  const double d = c0 / c3;
  const double shift = b / 3.0;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double disc = q * q / 4.0 + p * p * p / 27.0;

  std::vector<double> roots;
  if (disc < 0.0) {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double phi = std::acos(std::clamp(3.0 * q / (p * r), -1.0, 1.0)) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift);
    }
  } else {
    const double sq = std::sqrt(disc);
    const double a_term = std::cbrt(-q / 2.0 + sq);
    const double b_term = std::cbrt(-q / 2.0 - sq);
    roots.push_back(a_term + b_term - shift);
    if (disc == 0.0) roots.push_back(-0.5 * (a_term + b_term) - shift);
  }

  for (double& u : roots) {
    const double f = ((c3 * u + c2) * u + c1) * u + c0;
    const double df = (3.0 * c3 * u + 2.0 * c2) * u + c1;
    if (df != 0.0) u -= f / df;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace gslocc
