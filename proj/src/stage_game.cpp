#include "credible/stage_game.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "credible/rng.hpp"

namespace credible {

PolicyPoint::PolicyPoint(double value) : value_(value) {
  if (!(value >= -1.0 && value <= 1.0)) {
    throw std::invalid_argument("policy point outside [-1, 1]: " + std::to_string(value));
  }
}

IdealPoint::IdealPoint(Side side, double value) : side_(side), value_(value) {
  const bool ok = side == Side::Left ? (value >= -1.0 && value <= 0.0) : (value >= 0.0 && value <= 1.0);
  if (!ok) {
    throw std::invalid_argument(std::string("ideal point outside the ") +
                                (side == Side::Left ? "left [-1, 0]" : "right [0, 1]") +
                                " interval: " + std::to_string(value));
  }
}

Reach::Reach(double d) : d_(d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw std::invalid_argument("reach outside [0, 1]: " + std::to_string(d));
  }
}

Reputation Reputation::bad_for(unsigned periods) {
  if (periods == 0) throw std::invalid_argument("a Bad reputation needs at least one period");
  return Reputation{periods};
}

Reputation Reputation::advanced() const {
  if (remaining_ == 0 || remaining_ == kForever) return *this;
  return Reputation{remaining_ - 1};
}

VoterRegime VoterRegime::limited(unsigned k) {
  if (k == 0) throw std::invalid_argument("limited punishment needs k >= 1");
  return VoterRegime{Kind::LimitedPunishment, k};
}

unsigned VoterRegime::punishment_length() const {
  return kind_ == Kind::LimitedPunishment ? k_ + 1 : Reputation::kForever;
}

std::string_view VoterRegime::name() const {
  switch (kind_) {
    case Kind::Naive: return "naive";
    case Kind::NonNaive: return "nonnaive";
    case Kind::LimitedPunishment: return "limited";
  }
  return "?";
}

std::string_view region_name(Region r) {
  switch (r) {
    case Region::N1: return "N1";
    case Region::N5: return "N5";
    case Region::N3: return "N3";
    case Region::N4: return "N4";
    case Region::N2: return "N2";
    case Region::GB1: return "GB1";
    case Region::GB23: return "GB23";
    case Region::GB4: return "GB4";
    case Region::BG1: return "BG1";
    case Region::BG2: return "BG2";
    case Region::BG3: return "BG3";
    case Region::BG4: return "BG4";
    case Region::BB: return "BB";
  }
  return "?";
}

double utility(PolicyPoint x, PolicyPoint ideal) { return -std::abs(x.value() - ideal.value()); }

PolicyPoint max_credible_promise(IdealPoint ideal, Reach d, PromiseMode mode) {
  double p = ideal.side() == Side::Left ? ideal.value() + d.value() : ideal.value() - d.value();
  if (mode == PromiseMode::CappedAtMedian) {
    p = ideal.side() == Side::Left ? std::min(p, 0.0) : std::max(p, 0.0);
  }
  return PolicyPoint{p};
}

namespace {

using Predicate = bool (*)(double xl, double xr, double d);
using PolicyRule = double (*)(double xl, double xr, double d, PromiseMode mode, Side winner);

struct Row {
  Region id;
  Predicate matches;
  Winner winner;
  PolicyRule policy;
};

// Good winner pushed to its maximal credible promise.
double pushed_left(double xl, double d, PromiseMode mode) {
  const double p = xl + d;
  return mode == PromiseMode::CappedAtMedian ? std::min(p, 0.0) : p;
}
double pushed_right(double xr, double d, PromiseMode mode) {
  const double p = xr - d;
  return mode == PromiseMode::CappedAtMedian ? std::max(p, 0.0) : p;
}

// Region predicates.
bool in_n1(double xl, double xr, double d) { return xr <= 1.0 - d && xl <= -xr - d; }
bool in_n5(double xl, double xr, double d) { return xl <= -d && -xl - d <= xr && xr <= -xl; }
bool in_n3(double xl, double xr, double d) { return xr <= d && xl >= -d; }
bool in_n4(double xl, double xr, double d) { return xr >= d && -xr <= xl && xl <= -xr + d; }
bool in_n2(double xl, double xr, double d) { return xr >= d && xl >= -xr + d; }

bool in_gb23(double xl, double xr, double d) { return xl <= -xr && (xl >= -xr - d || xr >= 1.0 - d); }
bool in_gb4(double xl, double xr, double) { return xl >= -xr; }

bool in_bg1(double xl, double xr, double) { return xl <= -xr; }
bool in_bg2(double xl, double xr, double d) { return xr >= d && -xr <= xl && xl <= -xr + d; }
bool in_bg3(double xl, double xr, double d) { return xr <= d && xl >= -xr; }

bool always(double, double, double) { return true; }

// Policy rules.
double at_xr(double, double xr, double, PromiseMode, Side) { return xr; }
double at_xl(double xl, double, double, PromiseMode, Side) { return xl; }
double at_median(double, double, double, PromiseMode, Side) { return 0.0; }
double at_neg_xl_minus_d(double xl, double, double d, PromiseMode, Side) { return -xl - d; }
double at_neg_xr_plus_d(double, double xr, double d, PromiseMode, Side) { return -xr + d; }
double at_neg_xr(double, double xr, double, PromiseMode, Side) { return -xr; }
double at_neg_xl(double xl, double, double, PromiseMode, Side) { return -xl; }
double push_l(double xl, double, double d, PromiseMode m, Side) { return pushed_left(xl, d, m); }
double push_r(double, double xr, double d, PromiseMode m, Side) { return pushed_right(xr, d, m); }
double at_winner_ideal(double xl, double xr, double, PromiseMode, Side w) {
  return w == Side::Left ? xl : xr;
}

constexpr std::array kNaiveGG{
    Row{Region::N1, in_n1, Winner::Right, at_xr},
    Row{Region::N5, in_n5, Winner::Right, at_neg_xl_minus_d},
    Row{Region::N3, in_n3, Winner::CloserIdeal, at_median},
    Row{Region::N4, in_n4, Winner::Left, at_neg_xr_plus_d},
    Row{Region::N2, in_n2, Winner::Left, at_xl},
};

// Same regions; winning Good candidates pushed to ideal +/- d except in N1.
constexpr std::array kNonNaiveGG{
    Row{Region::N1, in_n1, Winner::Right, at_xr},
    Row{Region::N5, in_n5, Winner::Right, push_r},
    Row{Region::N3, in_n3, Winner::CloserIdeal, at_median},
    Row{Region::N4, in_n4, Winner::Left, push_l},
    Row{Region::N2, in_n2, Winner::Left, push_l},
};

constexpr std::array kNaiveGB{
    Row{Region::GB1, in_n1, Winner::Right, at_xr},
    Row{Region::GB23, in_gb23, Winner::Left, at_neg_xr},
    Row{Region::GB4, in_gb4, Winner::Left, at_xl},
};

constexpr std::array kNonNaiveGB{
    Row{Region::GB1, in_n1, Winner::Right, at_xr},
    Row{Region::GB23, in_gb23, Winner::Left, push_l},
    Row{Region::GB4, in_gb4, Winner::Left, push_l},
};

// Shared by both regimes: the Good candidate R is never pushed here.
constexpr std::array kBG{
    Row{Region::BG1, in_bg1, Winner::Right, at_xr},
    Row{Region::BG2, in_bg2, Winner::Right, at_neg_xl},
    Row{Region::BG3, in_bg3, Winner::Right, at_neg_xl},
    Row{Region::BG4, in_n2, Winner::Left, at_xl},
};

constexpr std::array kBB{
    Row{Region::BB, always, Winner::CloserIdeal, at_winner_ideal},
};

std::span<const Row> table_for(bool non_naive, RepStatus l, RepStatus r) {
  const bool gl = l == RepStatus::Good;
  const bool gr = r == RepStatus::Good;
  if (gl && gr) return non_naive ? std::span<const Row>(kNonNaiveGG) : std::span<const Row>(kNaiveGG);
  if (gl) return non_naive ? std::span<const Row>(kNonNaiveGB) : std::span<const Row>(kNaiveGB);
  if (gr) return kBG;
  return kBB;
}

Side closer_ideal(double xl, double xr, std::uint64_t tie_seed) {
  const double dl = -xl;
  if (dl < xr) return Side::Left;
  if (dl > xr) return Side::Right;
  return (mix64(tie_seed) & 1U) == 0 ? Side::Left : Side::Right;
}

}  // namespace

StageOutcome play_stage(const VoterRegime& regime, const Reputation& rep_L, const Reputation& rep_R,
                        IdealPoint x_L, IdealPoint x_R, Reach d, PromiseMode mode, std::uint64_t tie_seed) {
  if (x_L.side() != Side::Left || x_R.side() != Side::Right) {
    throw std::invalid_argument("play_stage expects a left ideal point for L and a right one for R");
  }
  const double xl = x_L.value();
  const double xr = x_R.value();
  const double dv = d.value();

  const auto rows = table_for(regime.uses_non_naive_tables(), rep_L.status(), rep_R.status());
  const auto row = std::find_if(rows.begin(), rows.end(), [&](const Row& r) { return r.matches(xl, xr, dv); });
  if (row == rows.end()) {
    // Unreachable for ideal points inside their half-lines.
    throw std::logic_error("strategy table has no row for (" + std::to_string(xl) + ", " +
                           std::to_string(xr) + ")");
  }

  StageOutcome out;
  out.region = row->id;
  switch (row->winner) {
    case Winner::Left: out.winner = Side::Left; break;
    case Winner::Right: out.winner = Side::Right; break;
    case Winner::CloserIdeal: out.winner = closer_ideal(xl, xr, tie_seed); break;
  }
  out.implemented = PolicyPoint{row->policy(xl, xr, dv, mode, out.winner)}.value();
  out.utility_L = -std::abs(out.implemented - xl);
  out.utility_R = -std::abs(out.implemented - xr);

  auto promise = [&](Side who, const Reputation& rep, IdealPoint ideal) -> std::optional<double> {
    if (!rep.is_good()) return 0.0;  // disbelieved
    if (who == out.winner) return out.implemented;
    return max_credible_promise(ideal, d, PromiseMode::CappedAtMedian).value();
  };
  out.promise_L = promise(Side::Left, rep_L, x_L);
  out.promise_R = promise(Side::Right, rep_R, x_R);
  return out;
}

std::vector<Region> matching_regions(const VoterRegime& regime, RepStatus rep_L, RepStatus rep_R,
                                     double x_L, double x_R, double d) {
  std::vector<Region> hits;
  for (const Row& r : table_for(regime.uses_non_naive_tables(), rep_L, rep_R)) {
    if (r.matches(x_L, x_R, d)) hits.push_back(r.id);
  }
  return hits;
}

StageOutcome mirrored(const StageOutcome& o) {
  StageOutcome m = o;
  auto neg = [](const std::optional<double>& p) -> std::optional<double> {
    if (!p) return std::nullopt;
    return -*p;
  };
  m.promise_L = neg(o.promise_R);
  m.promise_R = neg(o.promise_L);
  m.winner = opposite(o.winner);
  m.implemented = -o.implemented;
  m.utility_L = o.utility_R;
  m.utility_R = o.utility_L;
  return m;
}

}  // namespace credible
