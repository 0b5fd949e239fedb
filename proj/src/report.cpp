#include "credible/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "credible/dynamics.hpp"
#include "parallel.hpp"

namespace credible {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.10g", v);
  return buf.data();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os << content;
  os.close();
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

// ---------------------------------------------------------------- sweep

void validate(const SweepSpec& spec) {
  if (spec.variants.empty()) throw std::invalid_argument("sweep needs at least one variant");
  if (spec.sources.empty()) throw std::invalid_argument("sweep needs at least one payoff source");
  if (spec.steps < 2) throw std::invalid_argument("sweep needs steps >= 2");
  if (!(spec.delta_from >= 0.0)) throw std::invalid_argument("delta-from must be >= 0");
  if (!(spec.delta_from < spec.delta_to)) throw std::invalid_argument("delta-from must be below delta-to");
  if (!(spec.delta_to < 1.0)) throw std::invalid_argument("delta-to must be below 1");
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<double> grid(spec.steps);
  const double span = spec.delta_to - spec.delta_from;
  const double last = static_cast<double>(spec.steps - 1);
  for (std::size_t i = 0; i < spec.steps; ++i) {
    grid[i] = spec.delta_from + span * static_cast<double>(i) / last;
  }
  grid.back() = spec.delta_to;
  return grid;
}

std::string sweep_csv(const SweepSpec& spec) {
  validate(spec);
  const std::vector<double> grid = sweep_grid(spec);

  struct Series {
    Variant variant;
    PayoffSource source;
    std::optional<double> exact;
    std::optional<double> printed;
  };
  std::vector<Series> series;
  for (const auto& v : spec.variants) {
    for (const auto s : spec.sources) series.push_back({v, s, std::nullopt, printed_threshold(v)});
  }
  detail::for_each_index(series.size(),
                         [&](std::size_t i) { series[i].exact = threshold_delta(series[i].variant, series[i].source); });

  std::vector<std::string> rows(grid.size() * series.size());
  detail::for_each_index(rows.size(), [&](std::size_t idx) {
    const double dl = grid[idx / series.size()];
    const Series& s = series[idx % series.size()];
    const EquilibriumPoint p = d_star_numeric(s.variant, DiscountFactor{dl}, s.source);

    std::string flag = s.exact && dl >= *s.exact ? "above" : "below";
    if (s.printed && s.exact && std::abs(*s.printed - *s.exact) > 1e-6) {
      const double lo = std::min(*s.printed, *s.exact);
      const double hi = std::max(*s.printed, *s.exact);
      if (dl >= lo && dl < hi) flag = "disputed";
    }

    std::ostringstream row;
    row << format_number(dl) << ',' << s.variant.name() << ',' << source_name(s.source) << ','
        << format_number(p.d_star) << ',' << method_name(p.method) << ',' << (p.clamped ? "true" : "false")
        << ',' << flag << '\n';
    rows[idx] = row.str();
  });

  std::string out = "delta,variant,source,d_star,method,clamped,threshold_flag\n";
  for (const auto& r : rows) out += r;
  return out;
}

void run_sweep(const SweepSpec& spec) {
  const std::string csv = sweep_csv(spec);
  write_file(spec.out, csv);
}

// ---------------------------------------------------------------- figures

std::vector<double> figure_grid() {
  std::vector<double> grid;
  for (int i = 50; i <= 99; ++i) grid.push_back(i / 100.0);
  return grid;
}

namespace {

struct Column {
  Variant variant;
  std::optional<PayoffSource> source;
};

std::string figure_csv(std::string header, const std::vector<Column>& columns) {
  const std::vector<double> grid = figure_grid();
  std::vector<double> cells(grid.size() * columns.size());
  detail::for_each_index(cells.size(), [&](std::size_t idx) {
    const Column& c = columns[idx % columns.size()];
    cells[idx] = d_star_numeric(c.variant, DiscountFactor{grid[idx / columns.size()]}, c.source).d_star;
  });
  std::string out = std::move(header) + "\n";
  for (std::size_t r = 0; r < grid.size(); ++r) {
    out += format_number(grid[r]);
    for (std::size_t c = 0; c < columns.size(); ++c) out += "," + format_number(cells[r * columns.size() + c]);
    out += "\n";
  }
  return out;
}

}  // namespace

std::string figure1_csv() {
  return figure_csv("delta,benchmark,nonnaive_g,nonnaive_b_printed,nonnaive_b_faithful",
                    {{Variant::benchmark(), std::nullopt},
                     {Variant::non_naive_good(), std::nullopt},
                     {Variant::non_naive_bad(), PayoffSource::AsPrinted},
                     {Variant::non_naive_bad(), PayoffSource::IntegrandFaithful}});
}

std::string figure2_csv() {
  return figure_csv("delta,benchmark,limited_k1,limited_k2,limited_k3",
                    {{Variant::benchmark(), std::nullopt},
                     {Variant::limited(1), std::nullopt},
                     {Variant::limited(2), std::nullopt},
                     {Variant::limited(3), std::nullopt}});
}

FigureFiles emit_figures(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  FigureFiles files{dir / "figure1.csv", dir / "figure2.csv"};
  write_file(files.comparison, figure1_csv());
  write_file(files.limited, figure2_csv());
  return files;
}

// ---------------------------------------------------------------- verification

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Match: return "match";
    case CheckStatus::DocumentedDiscrepancy: return "documented-discrepancy";
    case CheckStatus::UnexpectedMismatch: return "unexpected-mismatch";
  }
  return "?";
}

std::size_t VerificationReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == s; }));
}

std::string VerificationReport::to_csv() const {
  std::string out = "claim_id,location,expected,computed,tolerance,status,note\n";
  for (const auto& c : checks) {
    out += csv_field(c.claim_id) + ',' + csv_field(c.location) + ',' + csv_field(c.expected) + ',' +
           csv_field(c.computed) + ',' + format_number(c.tolerance) + ',' + std::string(status_name(c.status)) +
           ',' + csv_field(c.note) + '\n';
  }
  return out;
}

std::string VerificationReport::summary() const {
  return std::to_string(checks.size()) + " checks: " + std::to_string(count(CheckStatus::Match)) + " match, " +
         std::to_string(count(CheckStatus::DocumentedDiscrepancy)) + " documented-discrepancy, " +
         std::to_string(count(CheckStatus::UnexpectedMismatch)) + " unexpected-mismatch";
}

Tolerances Tolerances::uniform(double t) {
  Tolerances tol;
  tol.payoff = tol.symmetry = tol.fixed_point = tol.closed_form = tol.threshold = tol.derivative = t;
  tol.invariance = tol.ordering = tol.convergence = tol.monte_carlo_sigmas = t;
  return tol;
}

namespace {

constexpr std::array<LedgerEntry, 10> kLedger{{
    {"payoff.nonnaive.GB.printed-total",
     "the printed non-naive v_GB total -d^2/6 - 1/2 does not follow from its own integrands"},
    {"payoff.naive.GB.printed-integrand",
     "the printed naive v_GB integrand u_L(x_L) on the GB2 strip contradicts the printed total; u_L(-x_R) reproduces it"},
    {"payoff.naive.GG.printed-integrand",
     "the restated naive v_GG integral prints u_L(-x_R-d) on the N5 strip; only u_L(-x_L-d) gives -1/2"},
    {"closed-form.nonnaive-b.sign", "the printed d_B* = 6(1 - 1/delta) is negative for every delta < 1"},
    {"derivative.nonnaive-b.printed", "the printed derivative 1/delta^2 is not the derivative of 6(1 - 1/delta)"},
    {"threshold.nonnaive-g.printed", "printed branch point 3/5 contradicts the radicand 3 - 2/delta"},
    {"threshold.limited-k1.printed", "printed branch point 3/5 approximates the root of delta(1 + delta) = 1"},
    {"threshold.limited-k2.printed", "printed branch point 11/20 lies above the root of delta(1 + delta + delta^2) = 1"},
    {"threshold.limited-k3.printed", "printed branch point 3/5 lies above the root of delta(1 + ... + delta^3) = 1"},
    {"claim.nonnaive-b.positive", "d_B* is stated to be positive for every delta"},
}};

bool documented(std::string_view id) {
  return std::any_of(kLedger.begin(), kLedger.end(), [&](const LedgerEntry& e) { return e.claim_id == id; });
}

class Builder {
 public:
  void numeric(std::string id, std::string location, double expected, double computed, double tol,
               std::string note = {}, bool relative = false) {
    const double err = std::abs(expected - computed);
    const bool ok = relative ? err <= tol * std::abs(expected) : err <= tol;
    add({std::move(id), std::move(location), format_number(expected), format_number(computed), tol,
         CheckStatus::Match, std::move(note)},
        ok);
  }

  /// Holds when margin > -tol (strict) or margin >= -tol.
  void inequality(std::string id, std::string location, std::string expected, std::string computed, double margin,
                  double tol, bool strict, std::string note = {}) {
    const bool ok = strict ? margin > -tol : margin >= -tol;
    add({std::move(id), std::move(location), std::move(expected), std::move(computed), tol, CheckStatus::Match,
         std::move(note)},
        ok);
  }

  std::vector<Check> take() { return std::move(checks_); }

 private:
  void add(Check c, bool ok) {
    if (!ok) c.status = documented(c.claim_id) ? CheckStatus::DocumentedDiscrepancy : CheckStatus::UnexpectedMismatch;
    checks_.push_back(std::move(c));
  }
  std::vector<Check> checks_;
};

std::string regime_label(const VoterRegime& r) { return std::string(r.name()); }

std::vector<double> unit_grid(int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(static_cast<double>(i) / n);
  return g;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / (n - 1));
  g.back() = b;
  return g;
}

double root_of_power_sum(unsigned terms) {
  // delta + delta^2 + ... + delta^terms = 1
  auto f = [&](double x) {
    double s = 0.0;
    double p = 1.0;
    for (unsigned i = 0; i < terms; ++i) {
      p *= x;
      s += p;
    }
    return s - 1.0;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double dstar(const Variant& v, double delta, std::optional<PayoffSource> s = std::nullopt) {
  return d_star_numeric(v, DiscountFactor{delta}, s).d_star;
}

double dstar_closed(const Variant& v, double delta) { return d_star_closed(v, DiscountFactor{delta}).d_star; }

std::string chain(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " < " : "") + format_number(xs[i]);
  return s;
}

double min_step(const std::vector<double>& xs) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < xs.size(); ++i) m = std::min(m, xs[i] - xs[i - 1]);
  return m;
}

void payoff_checks(Builder& b, const VerifyOptions& opt, const PayoffOracle& oracle) {
  const Tolerances& tol = opt.tolerances;
  const std::vector<double> grid = unit_grid(10);

  for (const auto& regime : {VoterRegime::naive(), VoterRegime::non_naive()}) {
    for (const auto pair : {kGG, kGB, kBG, kBB}) {
      std::vector<double> got(grid.size());
      detail::for_each_index(grid.size(), [&](std::size_t i) { got[i] = oracle(regime, pair, Reach{grid[i]}); });
      std::size_t worst = 0;
      double worst_err = -1.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double err =
            std::abs(got[i] - v_closed(regime, pair, Reach{grid[i]}, PayoffSource::IntegrandFaithful).value);
        if (err > worst_err) {
          worst_err = err;
          worst = i;
        }
      }
      const double d = grid[worst];
      b.numeric("payoff." + regime_label(regime) + "." + std::string(pair_name(pair)) + ".oracle",
                "one-shot payoff v_" + std::string(pair_name(pair)) + ", " + regime_label(regime) + " voters",
                v_closed(regime, pair, Reach{d}, PayoffSource::IntegrandFaithful).value, got[worst], tol.payoff,
                "largest deviation over d = 0, 0.1, ..., 1 at d = " + format_number(d));
    }
  }

  const Reach half{0.5};
  b.numeric("payoff.nonnaive.GB.printed-total", "non-naive v_GB, stated result",
            v_closed(VoterRegime::non_naive(), kGB, half, PayoffSource::AsPrinted).value,
            oracle(VoterRegime::non_naive(), kGB, half), tol.payoff, "d = 0.5");

  // The printed integrands taken literally on the strips where they differ.
  auto literal = [&](const VoterRegime& regime, const Reputation& opp, auto substitute, double d) {
    return integrate_over_ideals(
        [&](double xl, double xr) {
          const StageOutcome o =
              play_stage(regime, Reputation::good(), opp, IdealPoint::left(xl), IdealPoint::right(xr), Reach{d});
          return substitute(o, xl, xr, d).value_or(o.utility_L);
        },
        d);
  };
  b.numeric("payoff.naive.GB.printed-integrand", "naive v_GB, second term of the integral",
            v_closed(VoterRegime::naive(), kGB, half, PayoffSource::AsPrinted).value,
            literal(
                VoterRegime::naive(), Reputation::bad_forever(),
                [](const StageOutcome& o, double, double xr, double d) -> std::optional<double> {
                  if (o.region == Region::GB23 && xr <= 1.0 - d) return 0.0;  // u_L(x_L)
                  return std::nullopt;
                },
                0.5),
            tol.payoff, "computed integrates u_L(x_L) on the strip -x_R-d <= x_L <= -x_R, d = 0.5");
  b.numeric("payoff.naive.GG.printed-integrand", "naive v_GG restated in the V_GG vs V_BG comparison, fifth term",
            -0.5,
            literal(
                VoterRegime::naive(), Reputation::good(),
                [](const StageOutcome& o, double xl, double xr, double d) -> std::optional<double> {
                  if (o.region == Region::N5) return -std::abs(-xr - d - xl);
                  return std::nullopt;
                },
                0.5),
            tol.payoff, "computed integrates u_L(-x_R-d) on the N5 strip, d = 0.5");

  double sym = 0.0;
  for (double d : grid) {
    sym = std::max(sym, std::abs(delta_v(VoterRegime::naive(), RepStatus::Good, Reach{d}, PayoffSource::AsPrinted) -
                                 delta_v(VoterRegime::naive(), RepStatus::Bad, Reach{d}, PayoffSource::AsPrinted)));
  }
  b.numeric("payoff.naive.symmetry", "v_GG - v_BG = v_GB - v_BB under naive voters", 0.0, sym, tol.symmetry,
            "largest difference over d = 0, 0.1, ..., 1");

  const double asym =
      delta_v(VoterRegime::non_naive(), RepStatus::Good, half, PayoffSource::IntegrandFaithful) -
      delta_v(VoterRegime::non_naive(), RepStatus::Bad, half, PayoffSource::IntegrandFaithful);
  b.inequality("payoff.nonnaive.asymmetry", "cost of reneging differs with the rival's reputation",
               "|delta_v(G) - delta_v(B)| > 0", format_number(std::abs(asym)), std::abs(asym), tol.ordering, true,
               "d = 0.5, faithful payoffs");

  const double d04 = 0.4;
  for (const auto& regime : {VoterRegime::naive(), VoterRegime::non_naive()}) {
    for (const auto pair : {kGG, kGB, kBG, kBB}) {
      const PayoffValue mc = v_monte_carlo(regime, pair, Reach{d04}, opt.monte_carlo_samples, opt.seed);
      const std::string id = regime_label(regime) + "." + std::string(pair_name(pair));
      b.numeric("montecarlo." + id, "one-shot payoff v_" + std::string(pair_name(pair)) + ", " +
                                        regime_label(regime) + " voters, sampled",
                oracle(regime, pair, Reach{d04}), mc.value, tol.monte_carlo_sigmas * mc.stderr_,
                "d = 0.4, n = " + std::to_string(mc.samples) + ", seed = " + std::to_string(opt.seed) +
                    ", stderr = " + format_number(mc.stderr_));
    }
  }
}

void cost_checks(Builder& b, const Tolerances& tol) {
  const DiscountFactor d7{0.7};
  auto naive_dv = [](double d) { return d - d * d + d * d * d / 3.0; };
  b.numeric("cost.naive.G", "cost of reneging, naive voters",
            0.7 / 0.3 * naive_dv(0.5), cost_of_reneging(VoterRegime::naive(), RepStatus::Good, Reach{0.5}, d7),
            tol.fixed_point, "d = 0.5, delta = 0.7");
  b.numeric("cost.limited-k1.G", "cost of reneging, punishment for two periods",
            0.7 * 1.7 * naive_dv(0.2), cost_of_reneging(VoterRegime::limited(1), RepStatus::Good, Reach{0.2}, d7),
            tol.fixed_point, "d = 0.2, delta = 0.7");
  const double dg = d_star_closed(Variant::non_naive_good(), d7).d_star;
  b.numeric("cost.nonnaive.G.fixed-point", "non-naive cost at the published d_G*", dg,
            cost_of_reneging(VoterRegime::non_naive(), RepStatus::Good, Reach{dg}, d7, PayoffSource::AsPrinted),
            tol.fixed_point, "delta = 0.7, printed payoffs");
}

void equilibrium_checks(Builder& b, const Tolerances& tol) {
  struct Case {
    Variant v;
    double delta;
    std::optional<PayoffSource> source;
  };
  std::vector<Case> cases{
      {Variant::benchmark(), 0.55, {}},      {Variant::benchmark(), 0.6, {}},
      {Variant::benchmark(), 0.7, {}},       {Variant::non_naive_good(), 0.68, {}},
      {Variant::non_naive_good(), 0.7, {}},  {Variant::non_naive_good(), 0.74, {}},
      {Variant::limited(1), 0.7, {}},        {Variant::limited(2), 0.7, {}},
      {Variant::limited(3), 0.7, {}},        {Variant::non_naive_bad(), 0.7, PayoffSource::IntegrandFaithful},
  };
  for (const auto& c : cases) {
    const DiscountFactor dl{c.delta};
    const EquilibriumPoint p = d_star_numeric(c.v, dl, c.source);
    const PayoffSource src = c.source.value_or(PayoffSource::IntegrandFaithful);
    const std::string id = c.v.name() + "@" + format_number(c.delta);
    b.numeric("fixed-point." + id, "cost of reneging equals the gain at d*", 0.0,
              incentive_gap(c.v.regime(), c.v.opponent(), Reach{p.d_star}, dl, src), tol.fixed_point,
              "d* = " + format_number(p.d_star));
    if (p.d_star + 1e-4 <= 1.0) {
      const double beyond = incentive_gap(c.v.regime(), c.v.opponent(), Reach{p.d_star + 1e-4}, dl, src);
      b.inequality("fixed-point." + id + ".beyond", "promises beyond d* are broken", "gap(d* + 1e-4) < 0",
                   format_number(beyond), -beyond, tol.ordering, true);
    }
  }

  auto agreement = [&](const std::string& id, const std::string& location, const Variant& v,
                       const std::vector<double>& grid, std::optional<double> forced = std::nullopt) {
    std::vector<double> numeric(grid.size());
    std::vector<double> closed(grid.size());
    detail::for_each_index(grid.size(), [&](std::size_t i) {
      numeric[i] = dstar(v, grid[i]);
      closed[i] = forced.value_or(dstar_closed(v, grid[i]));
    });
    std::size_t worst = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::abs(numeric[i] - closed[i]) > std::abs(numeric[worst] - closed[worst])) worst = i;
    }
    b.numeric(id, location, closed[worst], numeric[worst], tol.closed_form,
              std::to_string(grid.size()) + " points on [" + format_number(grid.front()) + ", " +
                  format_number(grid.back()) + "], largest gap at delta = " + format_number(grid[worst]));
  };
  agreement("closed-vs-numeric.benchmark", "benchmark d*(delta), piecewise closed form", Variant::benchmark(),
            linspace(0.5, 0.99, 100));
  agreement("closed-vs-numeric.nonnaive-g", "non-naive d_G*(delta), closed form", Variant::non_naive_good(),
            linspace(2.0 / 3.0 + 1e-6, 0.75, 50));
  agreement("closed-vs-numeric.nonnaive-g.saturated", "non-naive d_G* equals 1 for high delta",
            Variant::non_naive_good(), linspace(0.75, 0.99, 25), 1.0);
  agreement("closed-vs-numeric.benchmark.saturated", "benchmark d* equals 1 for high delta", Variant::benchmark(),
            linspace(0.75, 0.99, 25), 1.0);
  for (unsigned k = 1; k <= 3; ++k) {
    const Variant v = Variant::limited(k);
    const double start = std::max(*printed_threshold(v), *threshold_delta(v)) + 1e-3;
    agreement("closed-vs-numeric." + v.name(), "limited punishment d_k" + std::to_string(k) + "*, closed form", v,
              linspace(start, 0.99, 50));
  }

  const double faithful_b = dstar(Variant::non_naive_bad(), 0.7, PayoffSource::IntegrandFaithful);
  const EquilibriumPoint closed_b = d_star_closed(Variant::non_naive_bad(), DiscountFactor{0.7});
  b.numeric("closed-form.nonnaive-b.sign", "non-naive d_B*(delta) = 6(1 - 1/delta)", closed_b.raw, faithful_b,
            tol.closed_form,
            "computed from faithful payoffs; printed payoffs give " +
                format_number(dstar(Variant::non_naive_bad(), 0.7, PayoffSource::AsPrinted)) + ", delta = 0.7");

  struct Threshold {
    Variant v;
    double exact;
  };
  const std::array<Threshold, 5> thresholds{{
      {Variant::benchmark(), 0.5},
      {Variant::non_naive_good(), 2.0 / 3.0},
      {Variant::limited(1), root_of_power_sum(2)},
      {Variant::limited(2), root_of_power_sum(3)},
      {Variant::limited(3), root_of_power_sum(4)},
  }};
  for (const auto& t : thresholds) {
    const double found = *threshold_delta(t.v);
    b.numeric("threshold." + t.v.name() + ".exact", "smallest delta with d* > 0", t.exact, found, tol.threshold,
              "expected from an independent polynomial root");
    b.numeric("threshold." + t.v.name() + ".printed", "published branch point of d*(delta)",
              *printed_threshold(t.v), found, tol.threshold);
  }

  auto fd = [](const Variant& v, double x) {
    constexpr double h = 1e-5;
    return (d_star_closed(v, DiscountFactor{x + h}).raw - d_star_closed(v, DiscountFactor{x - h}).raw) / (2 * h);
  };
  b.numeric("derivative.benchmark@0.6", "slope of benchmark d*(delta)",
            d_star_sensitivity(Variant::benchmark(), DiscountFactor{0.6}), fd(Variant::benchmark(), 0.6),
            tol.derivative, "relative; central difference h = 1e-5", true);
  b.numeric("derivative.nonnaive-g@0.7", "slope of non-naive d_G*(delta)",
            d_star_sensitivity(Variant::non_naive_good(), DiscountFactor{0.7}), fd(Variant::non_naive_good(), 0.7),
            tol.derivative, "relative; central difference h = 1e-5", true);
  b.numeric("derivative.nonnaive-b.differentiated", "slope of 6(1 - 1/delta)", 6.0 / 0.49,
            fd(Variant::non_naive_bad(), 0.7), tol.derivative, "relative; expected 6/delta^2 at delta = 0.7", true);
  b.numeric("derivative.nonnaive-b.printed", "published slope of non-naive d_B*(delta)",
            d_star_sensitivity(Variant::non_naive_bad(), DiscountFactor{0.7}), fd(Variant::non_naive_bad(), 0.7),
            tol.derivative, "relative; computed is the central difference of 6(1 - 1/delta) at delta = 0.7", true);
}

void ordering_checks(Builder& b, const Tolerances& tol) {
  auto ordered = [&](const std::string& id, const std::string& location, const std::string& claim,
                     const std::vector<double>& xs, std::string note = {}) {
    b.inequality(id, location, claim, chain(xs), min_step(xs), tol.ordering, true, std::move(note));
  };

  const Variant A = Variant::benchmark();
  const Variant G = Variant::non_naive_good();
  const Variant B = Variant::non_naive_bad();
  for (const auto src : {PayoffSource::AsPrinted, PayoffSource::IntegrandFaithful}) {
    ordered("ordering.comparison.numeric." + std::string(source_name(src)),
            "comparison of d_A*, d_G*, d_B* at delta = 0.7", "d_B* < d_G* < d_A*",
            {dstar(B, 0.7, src), dstar(G, 0.7), dstar(A, 0.7)});
  }
  ordered("ordering.comparison.closed", "comparison of d_A*, d_G*, d_B* at delta = 0.7", "d_B* < d_G* < d_A*",
          {dstar_closed(B, 0.7), dstar_closed(G, 0.7), dstar_closed(A, 0.7)}, "d_B* clamped from a negative value");

  const Variant k1 = Variant::limited(1);
  const Variant k2 = Variant::limited(2);
  const Variant k3 = Variant::limited(3);
  for (const double dl : {0.7, 0.6}) {
    const std::string at = "delta = " + format_number(dl);
    const std::vector<double> numeric{dstar(k1, dl), dstar(k2, dl), dstar(k3, dl), dstar(A, dl)};
    const std::vector<double> closed{dstar_closed(k1, dl), dstar_closed(k2, dl), dstar_closed(k3, dl),
                                     dstar_closed(A, dl)};
    const std::string note = numeric[0] == 0.0 ? "d_k1* = 0: no promise is credible under one-period labels" : "";
    ordered("ordering.limited@" + format_number(dl) + ".numeric", "limited punishment ordering at " + at,
            "d_k1* < d_k2* < d_k3* < d_A*", numeric, note);
    ordered("ordering.limited@" + format_number(dl) + ".closed", "limited punishment ordering at " + at,
            "d_k1* < d_k2* < d_k3* < d_A*", closed, note);
  }

  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  double printed_min = 1.0;
  double faithful_min = 1.0;
  double faithful_first = 1.0;
  for (double dl : grid) {
    printed_min = std::min(printed_min, dstar(B, dl, PayoffSource::AsPrinted));
    const double f = dstar(B, dl, PayoffSource::IntegrandFaithful);
    faithful_min = std::min(faithful_min, f);
    if (f > 0.0) faithful_first = std::min(faithful_first, dl);
  }
  const double lowest = std::min(printed_min, faithful_min);
  b.inequality("claim.nonnaive-b.positive", "d_B* is a positive fraction for all delta",
               "d_B* > 0 for every delta in (0, 1)",
               "printed min " + format_number(printed_min) + "; faithful min " + format_number(faithful_min),
               lowest, tol.ordering, true,
               "faithful d_B* first positive at delta = " + format_number(faithful_first) +
                   " on the 0.01 grid; printed d_B* is 0 throughout");
}

void dynamics_checks(Builder& b, const Tolerances& tol, std::uint64_t seed) {
  const DiscountFactor d7{0.7};
  for (unsigned k = 1; k <= 3; ++k) {
    const VoterRegime regime = VoterRegime::limited(k);
    const Reputation opp = Reputation::bad_for(k + 1);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t off = 0; off < opp.punishment_remaining(); ++off) {
      const double g = deviation_profitability(regime, opp, d7, Reach{0.3}, off).gap;
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    const double good = deviation_profitability(regime, Reputation::good(), d7, Reach{0.3}, 0).gap;
    hi = std::max(hi, good);
    lo = std::min(lo, good);
    b.numeric("timing-invariance.limited-k" + std::to_string(k), "deviation during the rival's punishment window",
              0.0, hi - lo, tol.invariance,
              "spread of the gap over offsets 0.." + std::to_string(k) + " and a Good rival; d = 0.3, delta = 0.7");
  }

  double spread = 0.0;
  double vs_gap = 0.0;
  for (double d : unit_grid(10)) {
    const double g = deviation_profitability(VoterRegime::naive(), Reputation::good(), d7, Reach{d}, 0).gap;
    const double bad = deviation_profitability(VoterRegime::naive(), Reputation::bad_forever(), d7, Reach{d}, 0).gap;
    spread = std::max(spread, std::abs(g - bad));
    vs_gap = std::max(vs_gap, std::abs(g - incentive_gap(VoterRegime::naive(), RepStatus::Good, Reach{d}, d7)));
  }
  b.numeric("deviation.naive.opponent-independence", "gain from a deviation does not depend on the rival", 0.0,
            spread, tol.invariance, "largest difference over d = 0, 0.1, ..., 1 at delta = 0.7");
  b.numeric("deviation.naive.incentive-gap", "deviation streams reproduce the incentive condition", 0.0, vs_gap,
            tol.invariance, "largest difference over d = 0, 0.1, ..., 1 at delta = 0.7");

  SimulationConfig cfg;
  cfg.regime = VoterRegime::limited(1);
  cfg.delta = 0.7;
  cfg.d = 0.5;
  cfg.horizon = 60;
  cfg.seed = seed;
  cfg.policy_L = DeviationPolicy::always();
  const Trajectory tr = simulate_history(cfg);
  std::optional<std::size_t> first;
  for (const auto& rec : tr.periods) {
    if (rec.outcome.reneged && rec.outcome.winner == Side::Left) {
      first = rec.period;
      break;
    }
  }
  std::string computed = "no reneging within the horizon";
  double margin = -1.0;
  if (first && *first + 3 < tr.periods.size()) {
    const auto& p = tr.periods;
    const std::size_t t = *first;
    const bool ok = !p[t + 1].rep_L.is_good() && !p[t + 2].rep_L.is_good() && p[t + 3].rep_L.is_good();
    margin = ok ? 1.0 : -1.0;
    computed = std::string("t = ") + std::to_string(t) + ": " + (p[t + 1].rep_L.is_good() ? "G" : "B") +
               (p[t + 2].rep_L.is_good() ? "G" : "B") + (p[t + 3].rep_L.is_good() ? "G" : "B");
  }
  b.inequality("dynamics.limited-k1.restoration", "reputation after reneging with k = 1",
               "t = reneging period: BBG at t+1, t+2, t+3", computed, margin, tol.ordering, true);
}

void monotonicity_checks(Builder& b, const Tolerances& tol) {
  struct Series {
    Variant v;
    std::optional<PayoffSource> src;
    std::string label;
  };
  const std::vector<Series> series{
      {Variant::benchmark(), {}, "benchmark"},
      {Variant::non_naive_good(), {}, "nonnaive-g"},
      {Variant::non_naive_bad(), PayoffSource::AsPrinted, "nonnaive-b.printed"},
      {Variant::non_naive_bad(), PayoffSource::IntegrandFaithful, "nonnaive-b.faithful"},
      {Variant::limited(1), {}, "limited-k1"},
      {Variant::limited(2), {}, "limited-k2"},
      {Variant::limited(3), {}, "limited-k3"},
  };
  constexpr int kPoints = 1000;
  for (const auto& s : series) {
    std::vector<double> values(kPoints);
    detail::for_each_index(kPoints, [&](std::size_t i) { values[i] = dstar(s.v, i / double(kPoints), s.src); });
    const double step = min_step(values);
    b.inequality("monotonicity." + s.label, "d* increases with the discount factor",
                 "nondecreasing on delta = 0, 0.001, ..., 0.999", "smallest step " + format_number(step), step,
                 tol.ordering, false);
  }

  b.numeric("convergence.limited-k50@0.7", "limited punishment approaches the benchmark", dstar(Variant::benchmark(), 0.7),
            dstar(Variant::limited(50), 0.7), tol.convergence);
}

}  // namespace

std::span<const LedgerEntry> discrepancy_ledger() { return kLedger; }

VerificationReport verify_consistency(const VerifyOptions& options) {
  const PayoffOracle oracle = options.oracle ? options.oracle
                                             : PayoffOracle([](const VoterRegime& r, ReputationPair p, Reach d) {
                                                 return v_quadrature(r, p, d).value;
                                               });
  Builder b;
  payoff_checks(b, options, oracle);
  cost_checks(b, options.tolerances);
  equilibrium_checks(b, options.tolerances);
  ordering_checks(b, options.tolerances);
  dynamics_checks(b, options.tolerances, options.seed);
  monotonicity_checks(b, options.tolerances);
  return {b.take()};
}

}  // namespace credible
