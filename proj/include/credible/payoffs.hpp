#pragma once

// One-shot expected payoff v_{self,opponent}(d) of candidate L over the
// uniform ideal-point draws, computed three independent ways: hard-coded
// closed forms, quadrature over the strategy tables, and Monte Carlo.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>

#include "credible/stage_game.hpp"

namespace credible {

struct ReputationPair {
  RepStatus self;
  RepStatus opponent;

  friend bool operator==(const ReputationPair&, const ReputationPair&) = default;
};

inline constexpr ReputationPair kGG{RepStatus::Good, RepStatus::Good};
inline constexpr ReputationPair kGB{RepStatus::Good, RepStatus::Bad};
inline constexpr ReputationPair kBG{RepStatus::Bad, RepStatus::Good};
inline constexpr ReputationPair kBB{RepStatus::Bad, RepStatus::Bad};

std::string_view pair_name(ReputationPair p);

/// Which closed form to trust where the printed result and its own
/// integrands disagree (only the non-naive v_GB).
enum class PayoffSource { AsPrinted, IntegrandFaithful };

std::string_view source_name(PayoffSource s);

enum class PayoffMethod { ClosedPrinted, ClosedIntegrandFaithful, Quadrature, MonteCarlo };

struct PayoffValue {
  double value = 0.0;
  PayoffMethod method = PayoffMethod::ClosedPrinted;
  double stderr_ = 0.0;  // Monte Carlo only
  std::size_t samples = 0;
};

PayoffValue v_closed(const VoterRegime& regime, ReputationPair pair, Reach d, PayoffSource source);

/// v_{G,opp} - v_{B,opp} from the closed forms.
double delta_v(const VoterRegime& regime, RepStatus opponent, Reach d, PayoffSource source);

struct QuadratureOptions {
  double abs_tol = 1e-8;
  std::size_t max_intervals = 2000;
  PromiseMode mode = PromiseMode::PaperLiteral;
};

PayoffValue v_quadrature(const VoterRegime& regime, ReputationPair pair, Reach d,
                         const QuadratureOptions& opts = {});

/// Integrates f(x_L, x_R) over [-1, 0] x [0, 1] (unit area, so this is the
/// expectation under uniform draws). The inner x_L integral is split at the
/// strategy-table boundaries for reach d, the outer x_R integral at the
/// points where those boundaries cross each other or the domain edges.
double integrate_over_ideals(const std::function<double(double x_L, double x_R)>& f, double d,
                             const QuadratureOptions& opts = {});

/// Sample mean of L's utility over n independent draws; stderr is the
/// sample standard deviation over sqrt(n) (0 when n == 1). Results depend
/// only on (seed, n), not on the number of worker threads.
PayoffValue v_monte_carlo(const VoterRegime& regime, ReputationPair pair, Reach d, std::size_t n,
                          std::uint64_t seed, PromiseMode mode = PromiseMode::PaperLiteral);

}  // namespace credible
