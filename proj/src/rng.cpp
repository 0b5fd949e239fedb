#include "credible/rng.hpp"

namespace credible {

IdealDraw draw_ideals(Rng& rng) {
  // -u lies in (-1, 0]; x_R = u' lies in [0, 1).
  const double x_L = -rng.uniform();
  const double x_R = rng.uniform();
  return {x_L, x_R};
}

}  // namespace credible
