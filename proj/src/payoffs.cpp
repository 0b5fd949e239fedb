#include "credible/payoffs.hpp"

#include <array>
#include <stdexcept>
#include <vector>

#include "credible/quadrature.hpp"
#include "credible/rng.hpp"
#include "parallel.hpp"

namespace credible {

std::string_view pair_name(ReputationPair p) {
  const bool s = p.self == RepStatus::Good;
  const bool o = p.opponent == RepStatus::Good;
  if (s && o) return "GG";
  if (s) return "GB";
  if (o) return "BG";
  return "BB";
}

std::string_view source_name(PayoffSource s) {
  return s == PayoffSource::AsPrinted ? "printed" : "faithful";
}

namespace {

double cube(double x) { return x * x * x; }

// Naive (benchmark) one-shot payoffs, as published.
//   v_GG = -1/2
//   v_GB = -1/6 - (1-d)^3/3
//   v_BG = -5/6 + (1-d)^3/3
//   v_BB = -1/2
double naive_closed(ReputationPair p, double d) {
  if (p == kGG || p == kBB) return -0.5;
  if (p == kGB) return -1.0 / 6.0 - cube(1.0 - d) / 3.0;
  return -5.0 / 6.0 + cube(1.0 - d) / 3.0;
}

// Non-naive one-shot payoffs.
//   v_GG = (1-d)^3/2 - d^2/2 + d - 1
//   v_GB = -d^2/6 - 1/2                   published total
//        = d^3/2 - 3d^2/2 + d/2 - 1/2     integral of the published terms
//                                         (-d on every L win, GB1 unchanged)
//   v_BG, v_BB unchanged from the benchmark
double non_naive_closed(ReputationPair p, double d, PayoffSource source) {
  if (p == kGG) return cube(1.0 - d) / 2.0 - d * d / 2.0 + d - 1.0;
  if (p == kGB) {
    if (source == PayoffSource::AsPrinted) return -d * d / 6.0 - 0.5;
    return cube(d) / 2.0 - 1.5 * d * d + d / 2.0 - 0.5;
  }
  return naive_closed(p, d);
}

}  // namespace

PayoffValue v_closed(const VoterRegime& regime, ReputationPair pair, Reach d, PayoffSource source) {
  PayoffValue out;
  out.method = source == PayoffSource::AsPrinted ? PayoffMethod::ClosedPrinted
                                                 : PayoffMethod::ClosedIntegrandFaithful;
  out.value = regime.uses_non_naive_tables() ? non_naive_closed(pair, d.value(), source)
                                             : naive_closed(pair, d.value());
  return out;
}

double delta_v(const VoterRegime& regime, RepStatus opponent, Reach d, PayoffSource source) {
  return v_closed(regime, {RepStatus::Good, opponent}, d, source).value -
         v_closed(regime, {RepStatus::Bad, opponent}, d, source).value;
}

double integrate_over_ideals(const std::function<double(double, double)>& f, double d,
                             const QuadratureOptions& opts) {
  const double inner_tol = opts.abs_tol / 4.0;
  const std::array<double, 5> outer_cuts{d / 2.0, d, 1.5 * d, 2.0 * d, 1.0 - d};

  auto inner = [&](double xr) {
    const std::array<double, 6> cuts{-xr - d, -xr, -xr + d, -d, -d / 2.0, xr - d};
    auto g = [&](double xl) { return f(xl, xr); };
    return integrate_adaptive(g, -1.0, 0.0, cuts, inner_tol, opts.max_intervals).value;
  };
  return integrate_adaptive(inner, 0.0, 1.0, outer_cuts, opts.abs_tol / 2.0, opts.max_intervals).value;
}

PayoffValue v_quadrature(const VoterRegime& regime, ReputationPair pair, Reach d,
                         const QuadratureOptions& opts) {
  const Reputation rl = Reputation::of(pair.self);
  const Reputation rr = Reputation::of(pair.opponent);
  auto utility_L = [&](double xl, double xr) {
    return play_stage(regime, rl, rr, IdealPoint::left(xl), IdealPoint::right(xr), d, opts.mode).utility_L;
  };
  PayoffValue out;
  out.method = PayoffMethod::Quadrature;
  out.value = integrate_over_ideals(utility_L, d.value(), opts);
  return out;
}

PayoffValue v_monte_carlo(const VoterRegime& regime, ReputationPair pair, Reach d, std::size_t n,
                          std::uint64_t seed, PromiseMode mode) {
  if (n == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
  constexpr std::size_t kChunk = 1U << 16;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  const Reputation rl = Reputation::of(pair.self);
  const Reputation rr = Reputation::of(pair.opponent);

  std::vector<detail::Moments> partial(chunks);
  detail::for_each_index(chunks, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(n, begin + kChunk);
    detail::Moments m;
    for (std::size_t i = begin; i < end; ++i) {
      const IdealDraw x = draw_ideals(rng);
      const auto o = play_stage(regime, rl, rr, IdealPoint::left(x.x_L), IdealPoint::right(x.x_R), d, mode,
                                derive_seed(seed ^ 0x7469655f62726bULL, i));
      m.add(o.utility_L);
    }
    partial[c] = m;
  });

  detail::Moments total;
  for (const auto& m : partial) total.merge(m);

  PayoffValue out;
  out.method = PayoffMethod::MonteCarlo;
  out.value = total.mean;
  out.stderr_ = total.stderr_of_mean();
  out.samples = n;
  return out;
}

}  // namespace credible
