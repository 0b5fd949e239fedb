#include "credible/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "credible/rng.hpp"
#include "parallel.hpp"

namespace credible {

namespace {

Reputation after_reneging(const VoterRegime& regime) {
  return regime.kind() == VoterRegime::Kind::LimitedPunishment
             ? Reputation::bad_for(regime.punishment_length())
             : Reputation::bad_forever();
}

}  // namespace

Trajectory simulate_history(const SimulationConfig& cfg) {
  if (cfg.horizon == 0) throw std::invalid_argument("simulation horizon must be at least 1");
  const DiscountFactor delta{cfg.delta};
  const Reach d{cfg.d};

  Trajectory traj;
  traj.periods.reserve(cfg.horizon);
  Rng rng(cfg.seed);
  Reputation rep_L = cfg.initial_L;
  Reputation rep_R = cfg.initial_R;
  double weight = 1.0;

  for (std::size_t t = 0; t < cfg.horizon; ++t) {
    const IdealDraw x = draw_ideals(rng);
    PeriodRecord rec;
    rec.period = t;
    rec.x_L = x.x_L;
    rec.x_R = x.x_R;
    rec.rep_L = rep_L;
    rec.rep_R = rep_R;
    rec.outcome = play_stage(cfg.regime, rep_L, rep_R, IdealPoint::left(x.x_L), IdealPoint::right(x.x_R), d,
                             cfg.mode, derive_seed(cfg.seed, t));

    StageOutcome& o = rec.outcome;
    const bool left_won = o.winner == Side::Left;
    const Reputation& winner_rep = left_won ? rep_L : rep_R;
    const DeviationPolicy& policy = left_won ? cfg.policy_L : cfg.policy_R;
    const double winner_ideal = left_won ? x.x_L : x.x_R;
    if (winner_rep.is_good() && policy.deviates_at(t) && o.implemented != winner_ideal) {
      o.implemented = winner_ideal;
      o.utility_L = -std::abs(winner_ideal - x.x_L);
      o.utility_R = -std::abs(winner_ideal - x.x_R);
      o.reneged = true;
    }

    traj.discounted_L += weight * o.utility_L;
    traj.discounted_R += weight * o.utility_R;
    weight *= delta.value();
    traj.periods.push_back(rec);

    rep_L = rep_L.advanced();
    rep_R = rep_R.advanced();
    if (o.reneged) (left_won ? rep_L : rep_R) = after_reneging(cfg.regime);
  }
  return traj;
}

Estimate empirical_discounted_value(const VoterRegime& regime, ReputationPair pair, DiscountFactor delta,
                                    Reach d, std::size_t horizon, std::size_t reps, std::uint64_t seed,
                                    PromiseMode mode) {
  if (reps == 0) throw std::invalid_argument("need at least one repetition");
  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (reps + kChunk - 1) / kChunk;
  const Reputation rl = Reputation::of(pair.self);
  const Reputation rr = Reputation::of(pair.opponent);

  std::vector<detail::Moments> partial(chunks);
  detail::for_each_index(chunks, [&](std::size_t c) {
    detail::Moments m;
    const std::size_t end = std::min(reps, (c + 1) * kChunk);
    for (std::size_t r = c * kChunk; r < end; ++r) {
      Rng rng(derive_seed(seed, r));
      double weight = delta.value();
      double total = 0.0;
      for (std::size_t t = 1; t <= horizon; ++t) {
        const IdealDraw x = draw_ideals(rng);
        total += weight * play_stage(regime, rl, rr, IdealPoint::left(x.x_L), IdealPoint::right(x.x_R), d,
                                     mode, rng.bits())
                              .utility_L;
        weight *= delta.value();
      }
      m.add(total);
    }
    partial[c] = m;
  });

  detail::Moments all;
  for (const auto& m : partial) all.merge(m);
  return {all.mean, all.stderr_of_mean()};
}

double truncation_tail_bound(DiscountFactor delta, std::size_t horizon) {
  const double dl = delta.value();
  return std::pow(dl, static_cast<double>(horizon + 1)) * 2.0 / (1.0 - dl);
}

DeviationCheck deviation_profitability(const VoterRegime& regime, const Reputation& opponent,
                                       DiscountFactor delta, Reach d, std::size_t offset,
                                       PayoffSource source) {
  const bool limited = regime.kind() == VoterRegime::Kind::LimitedPunishment;
  if (!opponent.is_good()) {
    if (limited && opponent.is_forever()) {
      throw std::invalid_argument("limited punishment cannot keep the opponent Bad forever");
    }
    if (!limited && !opponent.is_forever()) {
      throw std::invalid_argument("permanent-punishment regimes keep a Bad opponent Bad forever");
    }
    if (limited && offset >= opponent.punishment_remaining()) {
      throw std::invalid_argument("deviation offset " + std::to_string(offset) +
                                  " lies outside the opponent's punishment window of " +
                                  std::to_string(opponent.punishment_remaining()) + " periods");
    }
  }

  const double dl = delta.value();
  auto v = [&](RepStatus self, RepStatus opp) { return v_closed(regime, {self, opp}, d, source).value; };

  // Relative to the deviation period j = 0; the opponent is Bad at j while
  // offset + j stays inside its window.
  auto opponent_at = [&](std::size_t j) {
    if (opponent.is_good()) return RepStatus::Good;
    if (opponent.is_forever()) return RepStatus::Bad;
    return offset + j < opponent.punishment_remaining() ? RepStatus::Bad : RepStatus::Good;
  };

  // Keep:   v_{G,opp(j)} for every j >= 1.
  // Renege: v_{B,opp(j)} for 1 <= j <= punishment length, then v_{G,opp(j)}.
  double cost = 0.0;
  if (limited) {
    double weight = dl;
    for (unsigned j = 1; j <= regime.punishment_length(); ++j) {
      const RepStatus opp = opponent_at(j);
      cost += weight * (v(RepStatus::Good, opp) - v(RepStatus::Bad, opp));
      weight *= dl;
    }
  } else {
    const RepStatus opp = opponent_at(1);
    cost = dl / (1.0 - dl) * (v(RepStatus::Good, opp) - v(RepStatus::Bad, opp));
  }

  DeviationCheck out;
  out.gap = cost - d.value();
  out.profitable = out.gap < 0.0;
  return out;
}

}  // namespace credible
