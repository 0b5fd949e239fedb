#pragma once

// Cost of reneging, maximal incentive-compatible promise d*(delta), and the
// published closed forms for d* and its derivative.

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "credible/payoffs.hpp"
#include "credible/stage_game.hpp"

namespace credible {

/// Per-period weight on future payoffs, in [0, 1).
class DiscountFactor {
 public:
  explicit DiscountFactor(double delta);
  double value() const { return delta_; }

 private:
  double delta_;
};

/// Which equilibrium condition to solve: the benchmark (naive voters,
/// permanent punishment), non-naive voters with a Good or Bad opponent, or
/// naive voters with punishment label k.
class Variant {
 public:
  enum class Kind { Benchmark, NonNaiveG, NonNaiveB, LimitedK };

  static Variant benchmark() { return Variant{Kind::Benchmark, 0}; }
  static Variant non_naive_good() { return Variant{Kind::NonNaiveG, 0}; }
  static Variant non_naive_bad() { return Variant{Kind::NonNaiveB, 0}; }
  static Variant limited(unsigned k);

  /// Parses "benchmark", "nonnaive-g", "nonnaive-b" or "limited-k<N>".
  static Variant parse(std::string_view name);

  Kind kind() const { return kind_; }
  unsigned k() const { return k_; }
  std::string name() const;

  VoterRegime regime() const;
  RepStatus opponent() const;

  friend bool operator==(const Variant&, const Variant&) = default;

 private:
  Variant(Kind kind, unsigned k) : kind_(kind), k_(k) {}
  Kind kind_;
  unsigned k_;
};

enum class SolveMethod { ClosedPrinted, NumericRoot };

std::string_view method_name(SolveMethod m);

struct EquilibriumPoint {
  double delta = 0.0;
  Variant variant = Variant::benchmark();
  double d_star = 0.0;
  /// Closed form: the printed formula's output before clamping (NaN when
  /// undefined). Numeric: equal to d_star.
  double raw = 0.0;
  SolveMethod method = SolveMethod::NumericRoot;
  bool clamped = false;
  std::optional<PayoffSource> source;
  std::string note;
};

/// Discounted weight of the punishment window: delta/(1-delta) for
/// permanent punishment, delta(1 + ... + delta^k) for k+1 Bad periods.
double punishment_weight(const VoterRegime& regime, DiscountFactor delta);

double cost_of_reneging(const VoterRegime& regime, RepStatus opponent, Reach d, DiscountFactor delta,
                        PayoffSource source = PayoffSource::IntegrandFaithful);

/// Cost of reneging minus the gain d; nonnegative means a promise at
/// distance d is kept.
double incentive_gap(const VoterRegime& regime, RepStatus opponent, Reach d, DiscountFactor delta,
                     PayoffSource source = PayoffSource::IntegrandFaithful);

struct RootScan {
  double d = 0.0;
  bool clamped = false;
};

/// Largest d in [0, 1] with gap(d) >= 0. Scans down from d = 1 on a uniform
/// grid, then geometrically toward kScanFloor, and bisects the first sign
/// change to kRootTolerance. gap(0) is assumed to be 0.
RootScan largest_incentive_compatible(const std::function<double(double)>& gap);

inline constexpr int kScanSteps = 1000;
inline constexpr double kScanFloor = 1e-8;
inline constexpr double kRootTolerance = 1e-10;
inline constexpr double kThresholdTolerance = 1e-12;

/// NonNaiveB needs an explicit source; the other variants default to the
/// faithful payoffs (identical to the printed ones for them).
EquilibriumPoint d_star_numeric(const Variant& variant, DiscountFactor delta,
                                std::optional<PayoffSource> source = std::nullopt);

/// Evaluates the published piecewise formula, clamps it to [0, 1], and notes
/// any clamping or disagreement between its branch point and the exact
/// threshold. LimitedK is only published for k in {1, 2, 3}.
EquilibriumPoint d_star_closed(const Variant& variant, DiscountFactor delta);

/// The published branch point below which d* is stated to be 0.
std::optional<double> printed_threshold(const Variant& variant);

/// The published derivative of d* with respect to delta, for delta strictly
/// inside the branch where d* lies in (0, 1).
double d_star_sensitivity(const Variant& variant, DiscountFactor delta);

/// Smallest delta at which d_star_numeric is positive (bisection on delta);
/// nullopt when it stays 0 on [0, 1).
std::optional<double> threshold_delta(const Variant& variant,
                                      std::optional<PayoffSource> source = std::nullopt);

}  // namespace credible
