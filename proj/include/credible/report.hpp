#pragma once

// Parameter sweeps and figure tables as CSV, and the verification report
// that checks the published formulas against the numeric oracles.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "credible/equilibrium.hpp"
#include "credible/payoffs.hpp"

namespace credible {

/// Failure to read or write a file; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed "%.10g" formatting used by every CSV and report field.
std::string format_number(double v);

struct SweepSpec {
  std::vector<Variant> variants;
  double delta_from = 0.5;
  double delta_to = 0.99;
  std::size_t steps = 50;
  std::vector<PayoffSource> sources{PayoffSource::IntegrandFaithful};
  std::filesystem::path out;
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument unless from < to < 1, from >= 0, steps >= 2
/// and the variant and source lists are nonempty.
void validate(const SweepSpec& spec);

/// Evenly spaced grid from delta_from to delta_to inclusive.
std::vector<double> sweep_grid(const SweepSpec& spec);

/// CSV with header delta,variant,source,d_star,method,clamped,threshold_flag
/// and one row per (delta, variant, source) in grid order. threshold_flag is
/// "below" or "above" the exact threshold, or "disputed" when delta lies
/// between the printed and exact thresholds.
std::string sweep_csv(const SweepSpec& spec);

/// Writes sweep_csv(spec) to spec.out.
void run_sweep(const SweepSpec& spec);

struct FigureFiles {
  std::filesystem::path comparison;  // figure1.csv
  std::filesystem::path limited;     // figure2.csv
};

/// Grid delta = 0.50, 0.51, ..., 0.99.
std::vector<double> figure_grid();
std::string figure1_csv();
std::string figure2_csv();

/// Writes figure1.csv and figure2.csv into `dir`, creating it if needed.
FigureFiles emit_figures(const std::filesystem::path& dir);

enum class CheckStatus { Match, DocumentedDiscrepancy, UnexpectedMismatch };

std::string_view status_name(CheckStatus s);

struct Check {
  std::string claim_id;
  std::string location;
  std::string expected;
  std::string computed;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Match;
  std::string note;
};

struct VerificationReport {
  std::vector<Check> checks;

  std::size_t count(CheckStatus s) const;
  bool has_unexpected() const { return count(CheckStatus::UnexpectedMismatch) > 0; }
  /// CSV: claim_id,location,expected,computed,tolerance,status,note
  std::string to_csv() const;
  std::string summary() const;
};

struct Tolerances {
  double payoff = 1e-6;
  double symmetry = 1e-12;
  double fixed_point = 1e-9;
  double closed_form = 1e-8;
  double threshold = 1e-6;
  double derivative = 1e-5;  // relative
  double invariance = 1e-12;
  double ordering = 0.0;     // strict inequalities need a margin above -ordering
  double convergence = 1e-6;
  double monte_carlo_sigmas = 4.0;

  /// Every field set to `t`.
  static Tolerances uniform(double t);
};

/// Expected value of L's one-shot utility under the strategy tables.
using PayoffOracle = std::function<double(const VoterRegime&, ReputationPair, Reach)>;

struct VerifyOptions {
  Tolerances tolerances;
  PayoffOracle oracle;  // defaults to v_quadrature
  std::uint64_t seed = 1;
  std::size_t monte_carlo_samples = 200000;
};

/// A claim known to be inconsistent in the published model.
struct LedgerEntry {
  std::string_view claim_id;
  std::string_view reason;
};

std::span<const LedgerEntry> discrepancy_ledger();

/// A check outside its tolerance is a documented discrepancy when its claim
/// id is in the ledger and an unexpected mismatch otherwise.
VerificationReport verify_consistency(const VerifyOptions& options = {});

}  // namespace credible
