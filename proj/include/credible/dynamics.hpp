#pragma once

// Finite-horizon simulation of the repeated election with reputation state
// machines, plus the analytic one-step-deviation check.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "credible/equilibrium.hpp"
#include "credible/payoffs.hpp"
#include "credible/stage_game.hpp"

namespace credible {

/// When a winning Good candidate breaks its promise.
class DeviationPolicy {
 public:
  enum class Kind { Never, Always, OneShotAtPeriod };

  static DeviationPolicy never() { return {Kind::Never, 0}; }
  static DeviationPolicy always() { return {Kind::Always, 0}; }
  static DeviationPolicy at_period(std::size_t t) { return {Kind::OneShotAtPeriod, t}; }

  Kind kind() const { return kind_; }
  std::size_t period() const { return period_; }
  bool deviates_at(std::size_t t) const {
    return kind_ == Kind::Always || (kind_ == Kind::OneShotAtPeriod && t == period_);
  }

 private:
  DeviationPolicy(Kind kind, std::size_t period) : kind_(kind), period_(period) {}
  Kind kind_;
  std::size_t period_;
};

struct PeriodRecord {
  std::size_t period = 0;
  double x_L = 0.0;
  double x_R = 0.0;
  Reputation rep_L = Reputation::good();  // entering the period
  Reputation rep_R = Reputation::good();
  StageOutcome outcome;                   // after any reneging
};

struct Trajectory {
  std::vector<PeriodRecord> periods;
  /// sum over t of delta^t * utility in period t (t = 0 is the first period)
  double discounted_L = 0.0;
  double discounted_R = 0.0;
};

struct SimulationConfig {
  VoterRegime regime = VoterRegime::naive();
  double delta = 0.0;
  double d = 0.0;
  std::size_t horizon = 1;
  std::uint64_t seed = 0;
  DeviationPolicy policy_L = DeviationPolicy::never();
  DeviationPolicy policy_R = DeviationPolicy::never();
  Reputation initial_L = Reputation::good();
  Reputation initial_R = Reputation::good();
  PromiseMode mode = PromiseMode::PaperLiteral;
};

/// Each period: draw ideal points, play the stage with the current
/// reputations, let a Good winner renege per its policy (implementing its
/// ideal point instead of a different promised one), then update
/// reputations. Reneging makes a candidate Bad for the regime's punishment
/// length starting next period.
Trajectory simulate_history(const SimulationConfig& cfg);

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Monte Carlo estimate of sum_{t=1..horizon} delta^t * u_L with
/// reputations held fixed at `pair`.
Estimate empirical_discounted_value(const VoterRegime& regime, ReputationPair pair, DiscountFactor delta,
                                    Reach d, std::size_t horizon, std::size_t reps, std::uint64_t seed,
                                    PromiseMode mode = PromiseMode::PaperLiteral);

/// Bound on the discounted utility beyond `horizon`: delta^(horizon+1) * 2 / (1 - delta).
double truncation_tail_bound(DiscountFactor delta, std::size_t horizon);

struct DeviationCheck {
  double gap = 0.0;   // cost of reneging minus the gain d
  bool profitable = false;
};

/// Compares the stream of one-shot payoffs after keeping a promise with the
/// stream after reneging `offset` periods from now, holding the opponent's
/// reputation path fixed. `opponent` is the opponent's reputation now; when
/// it is Bad for a limited window, offset must fall inside that window.
DeviationCheck deviation_profitability(const VoterRegime& regime, const Reputation& opponent,
                                       DiscountFactor delta, Reach d, std::size_t offset,
                                       PayoffSource source = PayoffSource::IntegrandFaithful);

}  // namespace credible
