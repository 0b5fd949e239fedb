#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

namespace credible {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;           // estimated absolute error
  std::size_t intervals = 0;    // subintervals in the final partition
};

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [a, b].
///
/// `breakpoints` are known kinks of f; points outside (a, b) are ignored.
/// Subdivides the interval with the largest error estimate until the summed
/// estimate is below abs_tol. Throws QuadratureError when `max_intervals`
/// subintervals are not enough.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    std::span<const double> breakpoints, double abs_tol,
                                    std::size_t max_intervals = 2000);

}  // namespace credible
