#include "credible/equilibrium.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace credible {

DiscountFactor::DiscountFactor(double delta) : delta_(delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("discount factor must lie in [0, 1), got " + std::to_string(delta));
  }
}

Variant Variant::limited(unsigned k) {
  if (k == 0) throw std::invalid_argument("limited punishment needs k >= 1");
  return Variant{Kind::LimitedK, k};
}

Variant Variant::parse(std::string_view name) {
  if (name == "benchmark") return benchmark();
  if (name == "nonnaive-g") return non_naive_good();
  if (name == "nonnaive-b") return non_naive_bad();
  constexpr std::string_view prefix = "limited-k";
  if (name.starts_with(prefix)) {
    const std::string_view digits = name.substr(prefix.size());
    unsigned k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && k > 0) return limited(k);
  }
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

std::string Variant::name() const {
  switch (kind_) {
    case Kind::Benchmark: return "benchmark";
    case Kind::NonNaiveG: return "nonnaive-g";
    case Kind::NonNaiveB: return "nonnaive-b";
    case Kind::LimitedK: return "limited-k" + std::to_string(k_);
  }
  return "?";
}

VoterRegime Variant::regime() const {
  switch (kind_) {
    case Kind::Benchmark: return VoterRegime::naive();
    case Kind::NonNaiveG:
    case Kind::NonNaiveB: return VoterRegime::non_naive();
    case Kind::LimitedK: return VoterRegime::limited(k_);
  }
  return VoterRegime::naive();
}

RepStatus Variant::opponent() const {
  return kind_ == Kind::NonNaiveB ? RepStatus::Bad : RepStatus::Good;
}

std::string_view method_name(SolveMethod m) {
  return m == SolveMethod::ClosedPrinted ? "closed" : "numeric";
}

double punishment_weight(const VoterRegime& regime, DiscountFactor delta) {
  const double dl = delta.value();
  if (regime.kind() != VoterRegime::Kind::LimitedPunishment) return dl / (1.0 - dl);
  // delta + delta^2 + ... + delta^(k+1)
  double term = dl;
  double sum = 0.0;
  for (unsigned i = 0; i <= regime.k(); ++i) {
    sum += term;
    term *= dl;
  }
  return sum;
}

double cost_of_reneging(const VoterRegime& regime, RepStatus opponent, Reach d, DiscountFactor delta,
                        PayoffSource source) {
  return punishment_weight(regime, delta) * delta_v(regime, opponent, d, source);
}

double incentive_gap(const VoterRegime& regime, RepStatus opponent, Reach d, DiscountFactor delta,
                     PayoffSource source) {
  return cost_of_reneging(regime, opponent, d, delta, source) - d.value();
}

RootScan largest_incentive_compatible(const std::function<double(double)>& gap) {
  if (gap(1.0) >= 0.0) return {1.0, gap(1.0) > 0.0};

  auto bisect = [&](double lo, double hi) {
    // gap(lo) >= 0 > gap(hi)
    while (hi - lo > kRootTolerance) {
      const double mid = 0.5 * (lo + hi);
      if (gap(mid) >= 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  };

  double above = 1.0;
  for (int i = kScanSteps - 1; i >= 1; --i) {
    const double d = static_cast<double>(i) / kScanSteps;
    if (gap(d) >= 0.0) return {bisect(d, above), false};
    above = d;
  }
  for (double d = above / 10.0; d >= kScanFloor; d /= 10.0) {
    if (gap(d) >= 0.0) return {bisect(d, above), false};
    above = d;
  }
  return {0.0, true};
}

namespace {

PayoffSource resolve_source(const Variant& variant, std::optional<PayoffSource> source) {
  if (variant.kind() == Variant::Kind::NonNaiveB && !source) {
    throw std::invalid_argument("nonnaive-b needs an explicit payoff source (printed or faithful)");
  }
  return source.value_or(PayoffSource::IntegrandFaithful);
}

double geometric_sum(double delta, unsigned k) {
  // 1 + delta + ... + delta^k
  double sum = 0.0;
  double term = 1.0;
  for (unsigned i = 0; i <= k; ++i) {
    sum += term;
    term *= delta;
  }
  return sum;
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void append_note(std::string& note, const std::string& text) {
  if (!note.empty()) note += "; ";
  note += text;
}

}  // namespace

EquilibriumPoint d_star_numeric(const Variant& variant, DiscountFactor delta,
                                std::optional<PayoffSource> source) {
  const PayoffSource src = resolve_source(variant, source);
  const VoterRegime regime = variant.regime();
  const RepStatus opp = variant.opponent();
  const RootScan scan = largest_incentive_compatible(
      [&](double d) { return incentive_gap(regime, opp, Reach{d}, delta, src); });

  EquilibriumPoint p;
  p.delta = delta.value();
  p.variant = variant;
  p.d_star = scan.d;
  p.raw = scan.d;
  p.method = SolveMethod::NumericRoot;
  p.clamped = scan.clamped;
  p.source = src;
  if (scan.clamped) {
    p.note = scan.d == 1.0 ? "condition holds at d = 1" : "condition fails for every d > 0";
  }
  return p;
}

std::optional<double> printed_threshold(const Variant& variant) {
  switch (variant.kind()) {
    case Variant::Kind::Benchmark: return 0.5;
    case Variant::Kind::NonNaiveG: return 0.6;
    case Variant::Kind::NonNaiveB: return std::nullopt;
    case Variant::Kind::LimitedK:
      switch (variant.k()) {
        case 1: return 0.6;
        case 2: return 0.55;
        case 3: return 0.6;
        default: return std::nullopt;
      }
  }
  return std::nullopt;
}

EquilibriumPoint d_star_closed(const Variant& variant, DiscountFactor delta) {
  const double dl = delta.value();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double raw = nan;

  switch (variant.kind()) {
    case Variant::Kind::Benchmark:
      if (dl <= 0.5) {
        raw = 0.0;
      } else if (dl <= 0.75) {
        raw = 1.5 * (1.0 - std::sqrt((4.0 - 5.0 * dl) / (3.0 * dl)));
      } else {
        raw = 1.0;
      }
      break;
    case Variant::Kind::NonNaiveG:
      raw = dl <= 0.6 ? 0.0 : std::sqrt(3.0) * std::sqrt(3.0 - 2.0 / dl);
      break;
    case Variant::Kind::NonNaiveB:
      raw = dl > 0.0 ? 6.0 * (1.0 - 1.0 / dl) : nan;
      break;
    case Variant::Kind::LimitedK: {
      if (variant.k() > 3) {
        throw std::invalid_argument("no published closed form for " + variant.name());
      }
      const double branch = *printed_threshold(variant);
      const double sum = geometric_sum(dl, variant.k());
      raw = dl < branch ? 0.0 : 1.5 * (1.0 - std::sqrt(4.0 / (3.0 * dl * sum) - 1.0 / 3.0));
      break;
    }
  }

  EquilibriumPoint p;
  p.delta = dl;
  p.variant = variant;
  p.raw = raw;
  p.method = SolveMethod::ClosedPrinted;
  if (std::isnan(raw)) {
    p.d_star = 0.0;
    p.clamped = true;
    append_note(p.note, "printed formula undefined at this delta");
  } else {
    p.d_star = std::clamp(raw, 0.0, 1.0);
    p.clamped = raw != p.d_star;
    if (p.clamped) append_note(p.note, "printed value " + format_value(raw) + " clamped to [0, 1]");
  }

  if (const auto printed = printed_threshold(variant)) {
    if (const auto exact = threshold_delta(variant, PayoffSource::IntegrandFaithful)) {
      const double lo = std::min(*printed, *exact);
      const double hi = std::max(*printed, *exact);
      if (std::abs(*printed - *exact) > 1e-6 && dl >= lo && dl < hi) {
        append_note(p.note, "printed branch point " + format_value(*printed) +
                                " disagrees with exact threshold " + format_value(*exact));
      }
    }
  }
  return p;
}

double d_star_sensitivity(const Variant& variant, DiscountFactor delta) {
  const double dl = delta.value();
  auto require_inside = [&](double lo, double hi) {
    if (!(dl > lo && dl < hi)) {
      throw std::invalid_argument(variant.name() + " derivative is only defined for delta in (" +
                                  format_value(lo) + ", " + format_value(hi) + ")");
    }
  };
  switch (variant.kind()) {
    case Variant::Kind::Benchmark:
      require_inside(0.5, 0.75);
      return std::sqrt(3.0 * dl / (4.0 - 5.0 * dl)) / (dl * dl);
    case Variant::Kind::NonNaiveG:
      require_inside(2.0 / 3.0, 0.75);
      return std::sqrt(3.0 * dl / (3.0 * dl - 2.0)) / (dl * dl);
    case Variant::Kind::NonNaiveB:
      require_inside(0.0, 1.0);
      return 1.0 / (dl * dl);
    case Variant::Kind::LimitedK:
      break;
  }
  throw std::invalid_argument("no published derivative for " + variant.name());
}

std::optional<double> threshold_delta(const Variant& variant, std::optional<PayoffSource> source) {
  const PayoffSource src = resolve_source(variant, source);
  auto positive = [&](double dl) { return d_star_numeric(variant, DiscountFactor{dl}, src).d_star > 0.0; };

  double lo = 0.0;
  double hi = 1.0 - 1e-9;
  if (!positive(hi)) return std::nullopt;
  while (hi - lo > kThresholdTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (positive(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace credible
