#include <doctest.h>

#include <cmath>
#include <vector>

#include "liars/control_curve.hpp"
#include "liars/errors.hpp"
#include "oracles.hpp"

using namespace liars;

namespace {

// Pointwise reduced cost whose stationary points the curve tracks:
// scaled_penalty/2 (y - goal)^2 + (x - goal) P(y - x)(y - x).
double reduced(double y, double x, double penalty, double goal, double inner, double outer) {
  return 0.5 * penalty * (y - goal) * (y - goal) + (x - goal) * oracle::smoothed(y - x, inner, outer) * (y - x);
}

}  // namespace

TEST_CASE("residual at the goal and far from it") {
  const SmoothedBounded k{0.1, 0.2};
  for (double y : {-0.4, 0.0, 0.3}) CHECK(curve_residual(y, 0.2, 0.7, 0.2, k) == doctest::Approx(0.7 * (y - 0.2)));
  for (double x : {0.5, -0.8, 0.95}) CHECK(curve_residual(0.0, x, 0.1, 0.0, k) == 0.0);
}

TEST_CASE("residual derivative agrees with the reduced cost") {
  const double h = 1e-6;
  for (double x : {0.05, 0.3, -0.6})
    for (double y : {-0.5, 0.0, 0.22, 0.41}) {
      const double fd = (reduced(y + h, x, 0.3, 0.1, 0.1, 0.2) - reduced(y - h, x, 0.3, 0.1, 0.1, 0.2)) / (2 * h);
      CHECK(curve_residual(y, x, 0.3, 0.1, SmoothedBounded{0.1, 0.2}) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("second root inside the transition band") {
  const SmoothedBounded k{0.1, 0.2};
  const double x = 0.972;
  int changes = 0;
  double steepest = 0.0;
  double prev = curve_residual(x - 0.2 + 1e-9, x, 0.1, 0.0, k);
  for (int i = 1; i <= 10000; ++i) {
    const double y = x - 0.2 + 1e-9 + i * (0.1 - 2e-9) / 10000;
    const double g = curve_residual(y, x, 0.1, 0.0, k);
    if (g * prev < 0.0) ++changes;
    steepest = std::max(steepest, std::abs(g - prev) / ((0.1 - 2e-9) / 10000));
    prev = g;
  }
  CHECK(changes >= 1);
  CHECK(steepest > 10.0);
  CHECK(curve_residual(0.0, x, 0.1, 0.0, k) == 0.0);
}

TEST_CASE("closed form near the goal") {
  const SmoothedBounded k{0.1, 0.2};
  for (double scaled : {0.01, 0.5, 3.0}) {
    const auto c = control_curve(k, scaled, 0.2, 201);
    CHECK(c.xs.size() == 202);
    const double band = 0.1 * scaled / (scaled + 1.0);
    for (std::size_t i = 0; i < c.xs.size(); ++i) {
      if (std::abs(c.xs[i] - 0.2) < band) CHECK(c.ys[i] == doctest::Approx(0.2 - (c.xs[i] - 0.2) / scaled).epsilon(1e-14));
      CHECK(std::abs(c.ys[i]) <= 1.0);
    }
  }
}

TEST_CASE("goal point tells the truth") {
  const auto c = control_curve(SmoothedBounded{0.1, 0.2}, 0.1, 0.0, 200);
  CHECK(c.xs[100] == doctest::Approx(0.0).scale(1.0));
  CHECK(c.ys[100] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("cheap lies hug the band and are genuine roots") {
  const SmoothedBounded k{0.1, 0.2};
  const double scaled = 0.01;
  const auto c = control_curve(k, scaled, 0.0, 501);
  int hugging = 0;
  for (std::size_t i = 0; i < c.xs.size(); ++i) {
    const double x = c.xs[i], y = c.ys[i];
    CHECK(c.residuals[i] < 1e-8);
    if (y != 0.0 && std::abs(y) < 1.0) CHECK(std::abs(curve_residual(y, x, scaled, 0.0, k)) < 1e-8);
    if (std::abs(x) > 0.2) {
      const double offset = std::abs(y - x);
      CHECK(offset > 0.1);
      CHECK(offset < 0.2);
      CHECK((y - x) * x < 0.0);
      ++hugging;
      // and the root is a minimiser of the pointwise cost on the band side
      const double lo = x > 0 ? x - 0.2 : x + 0.1, hi = x > 0 ? x - 0.1 : x + 0.2;
      const double best = oracle::argmin_1d([&](double v) { return reduced(v, x, scaled, 0.0, 0.1, 0.2); }, lo, hi, 2001);
      CHECK(y == doctest::Approx(best).epsilon(1e-5).scale(1.0));
    }
  }
  CHECK(hugging > 300);
}

TEST_CASE("curve validation") {
  CHECK_THROWS_AS(control_curve(SmoothedBounded{0.1, 0.2}, 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(control_curve(SmoothedBounded{0.1, 0.2}, 0.1, 0.0, 0), InvalidArgument);
  CHECK_THROWS_AS(control_curve(SmoothedBounded{0.1, 0.2}, 0.1, 0.0, 100, -1), InvalidArgument);
}
