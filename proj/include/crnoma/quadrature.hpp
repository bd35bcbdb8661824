#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace crnoma {

// Gauss-Chebyshev rule of the first kind on (-1, 1): equal weight pi/count,
// nodes cos((2n-1)pi/(2 count)).  Used everywhere a closed-form integral is
// replaced by a finite exponential sum.
struct ChebyshevRule {
  int count = 0;
  std::vector<double> nodes;
  double weight = 0.0;
};

inline ChebyshevRule chebyshev_rule(int count) {
  if (count < 1) {
    throw std::invalid_argument("chebyshev_rule: count must be >= 1");
  }
  ChebyshevRule rule;
  rule.count = count;
  rule.weight = std::numbers::pi / count;
  rule.nodes.resize(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) {
    rule.nodes[static_cast<std::size_t>(n - 1)] =
        std::cos((2.0 * n - 1.0) * std::numbers::pi / (2.0 * count));
  }
  return rule;
}

namespace detail {

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double fa, double b,
                            double fb, double m, double fm, double whole,
                            double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace detail

// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
template <typename F>
double integrate(const F& f, double a, double b, double tol = 1e-12,
                 int max_depth = 48) {
  if (!(a <= b)) {
    throw std::invalid_argument("integrate: requires a <= b");
  }
  if (a == b) {
    return 0.0;
  }
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol,
                                      max_depth);
}

}  // namespace crnoma
