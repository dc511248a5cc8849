#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "wienerwave/decaylab.hpp"
#include "wienerwave/errors.hpp"
#include "wienerwave/nlw.hpp"

using namespace ww;

namespace {

TimeNormTable power_table(const std::vector<double>& ts, double c, double slope) {
  TimeNormTable t;
  for (double x : ts) t.push_back({x, c * std::pow(x, slope)});
  return t;
}

ExperimentConfig small_config(std::vector<double> ts) {
  ExperimentConfig c;
  c.tuple.r = Rational(9, 2);
  c.tuple.r_tilde = Rational(24, 5);
  c.gamma = Rational(8, 5);
  c.t_grid = std::move(ts);
  c.source = KernelSource::closed_form;
  c.resolution.uniform_points = 1024;
  return c;
}

}  // namespace

TEST_CASE("regime grids") {
  const auto s = regime_grid(DecayRegime::small_t);
  const auto l = regime_grid(DecayRegime::large_t);
  REQUIRE(s.size() == 12);
  REQUIRE(l.size() == 12);
  CHECK(s.front() == doctest::Approx(1.0 / 64));
  CHECK(s.back() == doctest::Approx(0.5));
  CHECK(l.front() == doctest::Approx(4.0));
  CHECK(l.back() == doctest::Approx(64.0));
  CHECK(to_string(DecayRegime::small_t) == "small");
  CHECK(to_string(Estimator::surrogate) == "surrogate");
}

TEST_CASE("decay fit recovers a synthetic power law") {
  const auto t = power_table(regime_grid(DecayRegime::large_t), 3.0, -0.7);
  const DecayFit f = fit_decay(t, DecayRegime::large_t);
  CHECK(f.slope == doctest::Approx(-0.7).epsilon(1e-10));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.points == 12);
  CHECK(f.residual_rms <= 1e-12);

  std::mt19937 rng(7);
  std::normal_distribution<double> nd(0.0, 0.01);
  auto noisy = power_table(regime_grid(DecayRegime::small_t), 0.5, -17.0 / 30);
  for (auto& row : noisy) row.norm *= 1.0 + nd(rng);
  CHECK(std::abs(fit_decay(noisy, DecayRegime::small_t).slope + 17.0 / 30) <= 0.02);

  const auto few = power_table({4, 5, 6, 7, 8}, 1.0, -1.0);
  CHECK_THROWS_AS((void)fit_decay(few, DecayRegime::large_t), DomainError);
  CHECK_THROWS_AS((void)fit_decay(t, DecayRegime::small_t), DomainError);
  auto bad = t;
  bad[3].norm = 0.0;
  CHECK_THROWS_AS((void)fit_decay(bad, DecayRegime::large_t), DomainError);
}

TEST_CASE("windowed time norm") {
  std::vector<double> ts;
  for (int i = 0; i <= 400; ++i) ts.push_back(0.5 + 0.25 * i);
  const TimeNormTable one = power_table(ts, 1.0, 0.0);
  const Window indicator{1.0, WindowProfile::indicator, false};
  const Rational qt(3);
  for (const auto& row : windowed_time_norm_profile(one, qt, indicator, 2, 20))
    CHECK(row.value == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-10));

  const TimeNormTable root = power_table(ts, 1.0, -0.5);
  const auto rows = windowed_time_norm_profile(root, qt, Window{}, 4, 64);
  CHECK(rows.size() == 61);
  CHECK(fit_windowed(rows).slope == doctest::Approx(-0.5).epsilon(0.02));

  CHECK_THROWS_AS((void)windowed_time_norm_profile(root, qt, Window{}, 4, 100), DomainError);
  CHECK_THROWS_AS((void)fit_windowed(std::vector<WindowedRow>(rows.begin(), rows.begin() + 5)), DomainError);
}

TEST_CASE("zero profile has zero norm") {
  RadialProfile z;
  for (int i = 0; i <= 100; ++i) {
    z.radii.push_back(0.1 * i);
    z.values.emplace_back(0.0);
  }
  CHECK(profile_norm(z, Rational(12, 5), Rational(9, 4), Estimator::direct) == 0.0);
  CHECK(profile_norm(z, Rational(12, 5), Rational(9, 4), Estimator::surrogate) == 0.0);
}

TEST_CASE("kernel time profiles") {
  auto cfg = small_config({8.0});
  const auto one = kernel_time_profile(cfg);
  REQUIRE(one.size() == 1);
  CHECK(one[0].t == 8.0);
  CHECK(one[0].norm > 0.0);

  const auto both = kernel_time_profiles(cfg, {Estimator::direct, Estimator::surrogate});
  REQUIRE(both.size() == 2);
  CHECK(both[0][0].norm == one[0].norm);

  // Closed-form source is deterministic to the bit.
  cfg.t_grid = {4.0, 8.0, 16.0};
  CHECK(time_profile_csv(kernel_time_profile(cfg), cfg) == time_profile_csv(kernel_time_profile(cfg), cfg));

  auto bad = cfg;
  bad.tuple.r = Rational(2);
  bad.tuple.r_tilde = Rational(2);
  CHECK_THROWS_AS((void)kernel_time_profile(bad), AdmissibilityError);
}

TEST_CASE("time profile CSV") {
  const auto cfg = small_config({1.0});
  const std::string csv = time_profile_csv({{0.5, 2.0}}, cfg);
  CHECK(csv.rfind("t,norm,estimator,gamma,r,r_tilde\n", 0) == 0);
  CHECK(csv.find("0.5,2,direct,8/5,9/2,24/5") != std::string::npos);
}

TEST_CASE("Strichartz quotient") {
  ExponentTuple t;
  t.q_tilde = Rational(4);
  t.q = Rational(7);
  t.r = Rational(7, 2);
  t.r_tilde = Rational(7, 2);
  const QuotientBox box{4.0, 8.0, 33, RadialGrid{16.0, 2047}};
  const RadialProfile gauss = sample_profile(RadialGrid{8.0, 1023}, [](double r) { return std::exp(-r * r); });
  const RadialProfile ring =
      sample_profile(RadialGrid{8.0, 1023}, [](double r) { return r * r * std::exp(-r * r); });
  const auto rows = strichartz_quotient(Rational(1, 2), t, {gauss, ring}, {1.0}, box);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].quotient > 0.0);
  CHECK(rows[1].quotient > 0.0);
  CHECK(std::abs(rows[0].quotient / rows[1].quotient - 1.0) > 1e-3);

  RadialProfile zero = gauss;
  for (auto& v : zero.values) v = 0.0;
  CHECK_THROWS_AS((void)strichartz_quotient(Rational(1, 2), t, {zero}, {1.0}, box), DomainError);
  auto bad = t;
  bad.r = Rational(2);
  CHECK_THROWS_AS((void)strichartz_quotient(Rational(1, 2), bad, {gauss}, {1.0}, box), AdmissibilityError);
}

TEST_CASE("retarded check rejects inadmissible tuples") {
  ExponentTuple t;
  t.q_tilde = Rational(3);
  t.q = Rational(30);
  t.r = Rational(9, 2);
  t.r_tilde = Rational(24, 5);
  CHECK_THROWS_AS((void)retarded_norm_check(3, Rational(8, 5), t, small_config({})), AdmissibilityError);
  t.dual = DualIndices{Rational::infinity(), Rational::infinity(), Rational(9, 2), Rational(24, 5)};
  CHECK_THROWS_AS((void)retarded_norm_check(3, Rational(8, 5), t, small_config({})), AdmissibilityError);
}
