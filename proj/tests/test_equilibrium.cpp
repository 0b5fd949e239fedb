#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "credible/equilibrium.hpp"

using namespace credible;

namespace {

double numeric(const Variant& v, double dl, std::optional<PayoffSource> s = std::nullopt) {
  return d_star_numeric(v, DiscountFactor{dl}, s).d_star;
}

// Independent closed-form oracles: each root solves delta * S * dv(d) = d.
double benchmark_oracle(double dl) { return 1.5 * (1.0 - std::sqrt((4.0 - 5.0 * dl) / (3.0 * dl))); }
double faithful_b_oracle(double dl) { return (3.0 - std::sqrt(5.0 + 8.0 * (1.0 - dl) / dl)) / 2.0; }

}  // namespace

TEST_CASE("discount factor domain") {
  CHECK_THROWS_AS(DiscountFactor{1.0}, std::invalid_argument);
  CHECK_THROWS_AS(DiscountFactor{-0.1}, std::invalid_argument);
  CHECK_NOTHROW(DiscountFactor{0.0});
}

TEST_CASE("variant names round-trip") {
  for (const char* n : {"benchmark", "nonnaive-g", "nonnaive-b", "limited-k1", "limited-k12"}) {
    CHECK(Variant::parse(n).name() == n);
  }
  CHECK_THROWS_AS(Variant::parse("limited-k0"), std::invalid_argument);
  CHECK_THROWS_AS(Variant::parse("limited-kx"), std::invalid_argument);
  CHECK_THROWS_AS(Variant::parse("other"), std::invalid_argument);
}

TEST_CASE("cost of reneging") {
  const DiscountFactor d7{0.7};
  CHECK(cost_of_reneging(VoterRegime::naive(), RepStatus::Good, Reach{0.5}, d7) ==
        doctest::Approx(0.6805555556).epsilon(1e-10));
  CHECK(cost_of_reneging(VoterRegime::limited(1), RepStatus::Good, Reach{0.2}, d7) ==
        doctest::Approx(0.1935733333).epsilon(1e-9));
  const double dg = std::sqrt(3.0) * std::sqrt(3.0 - 2.0 / 0.7);
  CHECK(cost_of_reneging(VoterRegime::non_naive(), RepStatus::Good, Reach{dg}, d7, PayoffSource::AsPrinted) ==
        doctest::Approx(dg).epsilon(1e-12));
  CHECK(cost_of_reneging(VoterRegime::non_naive(), RepStatus::Bad, Reach{0.0}, d7) == 0.0);
  CHECK(punishment_weight(VoterRegime::limited(2), d7) == doctest::Approx(0.7 + 0.49 + 0.343));
}

TEST_CASE("incentive gap") {
  const DiscountFactor d7{0.7};
  CHECK(incentive_gap(VoterRegime::naive(), RepStatus::Good, Reach{0.5}, d7) ==
        doctest::Approx(0.1805555556).epsilon(1e-9));
  // (7/3) * (0.9 - 0.81 + 0.243) - 0.9 = -0.123
  CHECK(incentive_gap(VoterRegime::naive(), RepStatus::Good, Reach{0.9}, d7) == doctest::Approx(-0.123));
}

TEST_CASE("numeric d* against independent oracles") {
  CHECK(numeric(Variant::benchmark(), 0.5) == 0.0);
  CHECK(numeric(Variant::benchmark(), 0.7) == doctest::Approx(benchmark_oracle(0.7)).epsilon(1e-9));
  CHECK(numeric(Variant::benchmark(), 0.7) == doctest::Approx(0.7680749453).epsilon(1e-9));
  CHECK(numeric(Variant::non_naive_good(), 0.7, PayoffSource::AsPrinted) ==
        doctest::Approx(0.6546536707).epsilon(1e-9));
  const auto g8 = d_star_numeric(Variant::non_naive_good(), DiscountFactor{0.8});
  CHECK(g8.d_star == 1.0);
  CHECK(g8.clamped);
  const auto bp = d_star_numeric(Variant::non_naive_bad(), DiscountFactor{0.7}, PayoffSource::AsPrinted);
  CHECK(bp.d_star == 0.0);
  CHECK(bp.clamped);
  CHECK(numeric(Variant::non_naive_bad(), 0.7, PayoffSource::IntegrandFaithful) ==
        doctest::Approx(faithful_b_oracle(0.7)).epsilon(1e-9));
  CHECK(numeric(Variant::non_naive_bad(), 0.7, PayoffSource::IntegrandFaithful) ==
        doctest::Approx(0.0483998976).epsilon(1e-8));
  CHECK(numeric(Variant::limited(2), 0.7) == doctest::Approx(0.4013885298).epsilon(1e-9));
  CHECK_THROWS_AS(d_star_numeric(Variant::non_naive_bad(), DiscountFactor{0.7}), std::invalid_argument);
}

TEST_CASE("closed forms") {
  CHECK(d_star_closed(Variant::benchmark(), DiscountFactor{0.75}).d_star == 1.0);
  CHECK(d_star_closed(Variant::benchmark(), DiscountFactor{0.6}).d_star == doctest::Approx(0.3819660113));
  const auto b = d_star_closed(Variant::non_naive_bad(), DiscountFactor{0.7});
  CHECK(b.raw == doctest::Approx(-2.5714285714));
  CHECK(b.d_star == 0.0);
  CHECK(b.clamped);
  CHECK_FALSE(b.note.empty());
  CHECK(d_star_closed(Variant::limited(1), DiscountFactor{0.7}).d_star == doctest::Approx(0.1692076032));
  CHECK(d_star_closed(Variant::limited(3), DiscountFactor{0.7}).d_star == doctest::Approx(0.5294579099));
  CHECK_THROWS_AS(d_star_closed(Variant::limited(4), DiscountFactor{0.7}), std::invalid_argument);

  const auto k2 = d_star_closed(Variant::limited(2), DiscountFactor{0.545});
  CHECK(k2.d_star == 0.0);
  CHECK(k2.note.find("disagrees") != std::string::npos);
  CHECK(d_star_closed(Variant::benchmark(), DiscountFactor{0.5}).note.empty());
}

TEST_CASE("derivatives") {
  CHECK(d_star_sensitivity(Variant::benchmark(), DiscountFactor{0.6}) == doctest::Approx(3.7267799625));
  CHECK(d_star_sensitivity(Variant::non_naive_good(), DiscountFactor{0.7}) == doctest::Approx(9.3521952958));
  CHECK(d_star_sensitivity(Variant::non_naive_bad(), DiscountFactor{0.7}) == doctest::Approx(2.0408163265));
  CHECK_THROWS_AS(d_star_sensitivity(Variant::benchmark(), DiscountFactor{0.75}), std::invalid_argument);
  CHECK_THROWS_AS(d_star_sensitivity(Variant::limited(1), DiscountFactor{0.7}), std::invalid_argument);
}

TEST_CASE("thresholds") {
  CHECK(*threshold_delta(Variant::benchmark()) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(*threshold_delta(Variant::non_naive_good()) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(*threshold_delta(Variant::limited(1)) == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-6));
  CHECK(*threshold_delta(Variant::limited(2)) == doctest::Approx(0.5436890127).epsilon(1e-6));
  CHECK(*threshold_delta(Variant::limited(3)) == doctest::Approx(0.5187900637).epsilon(1e-6));
  CHECK(*threshold_delta(Variant::non_naive_bad(), PayoffSource::IntegrandFaithful) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK_FALSE(threshold_delta(Variant::non_naive_bad(), PayoffSource::AsPrinted).has_value());
}

TEST_CASE("largest root selection") {
  // gap positive on (0, 0.2) and (0.5, 0.7): the larger root wins
  auto gap = [](double d) { return d * (d - 0.2) * (d - 0.5) * (d - 0.7) * -1.0; };
  CHECK(largest_incentive_compatible(gap).d == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(largest_incentive_compatible([](double d) { return -d; }).d == 0.0);
  CHECK(largest_incentive_compatible([](double d) { return d; }).d == 1.0);
}
