#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "wienerwave/errors.hpp"
#include "wienerwave/kernel.hpp"
#include "wienerwave/quadrature.hpp"

using namespace ww;
constexpr double pi = std::numbers::pi;
const double k_origin = std::sqrt(pi / 2) / (2 * pi * pi);

TEST_CASE("value at r = 1, t = 0") {
  const KernelValue v = kernel_eval(KernelQuery{3, 1.5, 1.0, 0.0});
  CHECK(v.value.real() == doctest::Approx(k_origin).epsilon(1e-10));
  CHECK(std::abs(v.value.imag()) < 1e-10);
  CHECK(v.abs_error_estimate >= 0.0);
  CHECK(v.value.real() == doctest::Approx(0.0634936359342).epsilon(1e-11));
}

TEST_CASE("damping shrinks the value and eps <= 0 is rejected") {
  const KernelQuery q{3, 1.5, 1.0, 0.0};
  CHECK(std::abs(kernel_damped(q, 10.0)) < std::abs(kernel_damped(q, 0.01)));
  CHECK(kernel_damped(q, 1e-4).real() == doctest::Approx(k_origin).epsilon(1e-3));
  CHECK_THROWS_AS((void)kernel_damped(q, 0.0), DomainError);
}

TEST_CASE("closed form agrees with the extrapolated quadrature at random points") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> g(0.3, 2.9), r(0.1, 10.0), t(-20.0, 20.0);
  int done = 0;
  while (done < 20) {
    const KernelQuery q{3, g(rng), r(rng), t(rng)};
    if (std::abs(q.gamma - 2.0) < 0.05 || in_cone_band(q.radius, q.time)) continue;
    const complex a = kernel_eval(q).value, b = kernel_closed_form_n3(q.gamma, q.radius, q.time);
    CAPTURE(q.gamma);
    CAPTURE(q.radius);
    CAPTURE(q.time);
    CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
    ++done;
  }
}

TEST_CASE("time reversal conjugates") {
  for (double t : {0.3, 4.0, 17.0}) {
    const complex a = kernel_eval(KernelQuery{3, 1.2, 2.0, t}).value;
    const complex b = kernel_eval(KernelQuery{3, 1.2, 2.0, -t}).value;
    CHECK(std::abs(a - std::conj(b)) <= 1e-8 * std::abs(a));
  }
}

TEST_CASE("closed form at t = 0 is real and decays along t") {
  CHECK(kernel_closed_form_n3(1.5, 1.0, 0.0).real() == doctest::Approx(k_origin).epsilon(1e-14));
  CHECK(kernel_closed_form_n3(1.5, 3.0, 0.0).imag() == 0.0);
  const double a = std::abs(kernel_closed_form_n3(1.5, 1.0, 100.0));
  const double b = std::abs(kernel_closed_form_n3(1.5, 1.0, 1000.0));
  CHECK(a < std::abs(kernel_closed_form_n3(1.5, 1.0, 10.0)));
  CHECK(b < a);
  CHECK_THROWS_AS((void)kernel_closed_form_n3(1.5, 2.0, 2.0), DomainError);
  CHECK_THROWS_AS((void)kernel_closed_form_n3(2.0, 1.0, 0.0), DomainError);
}

TEST_CASE("cone band") {
  CHECK(cone_band_width(0.5) == doctest::Approx(0.05));
  CHECK(cone_band_width(10.0) == doctest::Approx(0.5));
  CHECK(in_cone_band(10.0, 9.6));
  CHECK_FALSE(in_cone_band(10.0, 9.4));
  CHECK_THROWS_AS((void)kernel_eval(KernelQuery{3, 1.5, 1.0, 1.01}), ConeBandError);
  CHECK_THROWS_AS((void)kernel_eval(KernelQuery{3, 2.0, 1.0, 1.01}), ConeBandError);
  const KernelValue v = kernel_eval(KernelQuery{3, 2.5, 1.0, 1.01});
  CHECK(v.method == KernelMethod::closed_form_n3);
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(validate(KernelQuery{3, 3.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(KernelQuery{3, 1.5, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(KernelQuery{1, 0.5, 1.0, 0.0}), DomainError);
}

TEST_CASE("pointwise bound branches") {
  CHECK(pointwise_bound(KernelQuery{3, 1.5, 1.0, 4.0}) == doctest::Approx(0.25));
  CHECK(pointwise_bound(KernelQuery{3, 1.5, 4.0, 2.0}) == doctest::Approx(0.25 * std::pow(2.0, -0.5)));
  CHECK(pointwise_bound(KernelQuery{3, 1.5, 1.0, 0.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)pointwise_bound(KernelQuery{3, 2.5, 1.0, 0.0}), DomainError);
}

TEST_CASE("verify_pointwise") {
  const std::vector<std::pair<double, double>> one{{1.0, 0.0}};
  const PointwiseReport r = verify_pointwise(3, 1.5, one);
  CHECK(r.max_ratio == doctest::Approx(k_origin).epsilon(1e-9));
  CHECK(r.grid_size == 1);
  CHECK_THROWS_AS((void)verify_pointwise(3, 1.5, std::vector<std::pair<double, double>>{}), DomainError);
}

TEST_CASE("interior decay along r = 1") {
  std::vector<double> lt, lk;
  for (double t : log_space(4.0, 64.0, 12)) {
    lt.push_back(std::log(t));
    lk.push_back(std::log(std::abs(kernel_eval(KernelQuery{3, 1.5, 1.0, t}).value)));
  }
  CHECK(fit_line(lt, lk).slope <= -0.9);
}
