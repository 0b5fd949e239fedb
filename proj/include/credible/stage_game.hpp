#pragma once

// One-shot election: campaign, vote, office.
//
// Outcomes are read off explicit per-region strategy tables keyed by the
// voter regime and the pair of effective reputations. All tables are written
// from candidate L's perspective with x_L in [-1, 0] and x_R in [0, 1]; the
// first matching row wins, so boundary cases (measure zero) resolve by row
// order.

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace credible {

enum class Side { Left, Right };

constexpr Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

/// A position on the policy line [-1, 1]. The median voter sits at 0.
class PolicyPoint {
 public:
  explicit PolicyPoint(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// A candidate's ideal point, constrained to the candidate's half of the line.
class IdealPoint {
 public:
  IdealPoint(Side side, double value);
  static IdealPoint left(double value) { return {Side::Left, value}; }
  static IdealPoint right(double value) { return {Side::Right, value}; }

  Side side() const { return side_; }
  double value() const { return value_; }

 private:
  Side side_;
  double value_;
};

/// Maximal credible promise distance d in [0, 1].
class Reach {
 public:
  explicit Reach(double d);
  double value() const { return d_; }

 private:
  double d_;
};

enum class RepStatus { Good, Bad };

/// Good, or Bad for a number of remaining periods (the current one included).
class Reputation {
 public:
  static constexpr unsigned kForever = std::numeric_limits<unsigned>::max();

  static Reputation good() { return Reputation{0}; }
  static Reputation bad_forever() { return Reputation{kForever}; }
  static Reputation bad_for(unsigned periods);
  static Reputation of(RepStatus s) { return s == RepStatus::Good ? good() : bad_forever(); }

  RepStatus status() const { return remaining_ == 0 ? RepStatus::Good : RepStatus::Bad; }
  bool is_good() const { return remaining_ == 0; }
  bool is_forever() const { return remaining_ == kForever; }
  unsigned punishment_remaining() const { return remaining_; }

  /// Reputation entering the next period when no new reneging occurs.
  Reputation advanced() const;

  friend bool operator==(const Reputation&, const Reputation&) = default;

 private:
  explicit Reputation(unsigned remaining) : remaining_(remaining) {}
  unsigned remaining_;
};

class VoterRegime {
 public:
  enum class Kind { Naive, NonNaive, LimitedPunishment };

  static VoterRegime naive() { return VoterRegime{Kind::Naive, 0}; }
  static VoterRegime non_naive() { return VoterRegime{Kind::NonNaive, 0}; }
  static VoterRegime limited(unsigned k);

  Kind kind() const { return kind_; }
  /// Punishment label k; only meaningful for LimitedPunishment.
  unsigned k() const { return k_; }
  /// Number of Bad periods that follow a reneging: k + 1, or forever.
  unsigned punishment_length() const;
  /// LimitedPunishment plays the naive tables.
  bool uses_non_naive_tables() const { return kind_ == Kind::NonNaive; }

  std::string_view name() const;

  friend bool operator==(const VoterRegime&, const VoterRegime&) = default;

 private:
  VoterRegime(Kind kind, unsigned k) : kind_(kind), k_(k) {}
  Kind kind_;
  unsigned k_;
};

enum class PromiseMode {
  PaperLiteral,   // ideal +/- d, may cross the median
  CappedAtMedian  // additionally clamped toward 0
};

enum class Winner { Left, Right, CloserIdeal };

/// Row identifiers of the strategy tables.
enum class Region {
  N1, N5, N3, N4, N2,          // (Good, Good)
  GB1, GB23, GB4,              // (Good L, Bad R)
  BG1, BG2, BG3, BG4,          // (Bad L, Good R)
  BB                           // (Bad, Bad)
};

std::string_view region_name(Region r);

struct StageOutcome {
  std::optional<double> promise_L;
  std::optional<double> promise_R;
  Side winner = Side::Left;
  double implemented = 0.0;
  double utility_L = 0.0;
  double utility_R = 0.0;
  bool reneged = false;
  Region region = Region::BB;
};

/// u_i(x) = -|x - x_i|
double utility(PolicyPoint x, PolicyPoint ideal);
inline double utility(double x, double ideal) { return utility(PolicyPoint{x}, PolicyPoint{ideal}); }

/// The platform at distance d from the ideal point toward the median.
PolicyPoint max_credible_promise(IdealPoint ideal, Reach d, PromiseMode mode);

/// Plays one election. Limited punishment uses the naive tables; only the
/// Good/Bad status of each reputation matters here. `tie_seed` drives the coin
/// flip for exact ties between equidistant ideal points.
StageOutcome play_stage(const VoterRegime& regime, const Reputation& rep_L, const Reputation& rep_R,
                        IdealPoint x_L, IdealPoint x_R, Reach d,
                        PromiseMode mode = PromiseMode::PaperLiteral, std::uint64_t tie_seed = 0);

/// Every row of the applicable table whose predicate holds, in precedence
/// order. Interior points match exactly one row.
std::vector<Region> matching_regions(const VoterRegime& regime, RepStatus rep_L, RepStatus rep_R,
                                     double x_L, double x_R, double d);

/// Maps an outcome to the one obtained after reflecting the ideal points
/// (x_L, x_R) -> (-x_R, -x_L) and swapping the candidate labels.
StageOutcome mirrored(const StageOutcome& o);

}  // namespace credible
