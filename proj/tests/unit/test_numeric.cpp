#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "wof/numeric.hpp"

using namespace wof;
using namespace wof::numeric;

TEST_CASE("bisect finds sqrt(2)") {
  const double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("bisect rejects a bracket without a sign change") {
  CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                  NumericError);
}

TEST_CASE("golden section finds an interior maximum") {
  const double x = golden_section_max(
      [](double t) { return -(t - 0.3) * (t - 0.3) + 4.0; }, -2.0, 5.0);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-7));
}

TEST_CASE("linspace and logspace endpoints") {
  const auto a = linspace(1.0, 3.0, 5);
  REQUIRE(a.size() == 5);
  CHECK(a.front() == 1.0);
  CHECK(a.back() == 3.0);
  CHECK(a[2] == doctest::Approx(2.0));
  const auto b = logspace(1.0, 1e4, 5);
  CHECK(b[1] == doctest::Approx(10.0));
  CHECK(b.back() == doctest::Approx(1e4));
}

TEST_CASE("entropies") {
  const std::vector<double> uniform(8, 0.125);
  CHECK(shannon_entropy(uniform) == doctest::Approx(std::log(8.0)));
  const std::vector<double> with_zero{0.5, 0.0, 0.5};
  CHECK(shannon_entropy(with_zero) == doctest::Approx(std::log(2.0)));
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
}

TEST_CASE("pairwise sum is exact on integers") {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  CHECK(pairwise_sum(v) == 500500.0);
}

TEST_CASE("1-D quadrature against antiderivatives") {
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 8) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("2-D quadrature of a Gaussian") {
  auto g = [](double x, double y) {
    return std::exp(-(x * x + y * y) / 2.0) / kTwoPi;
  };
  const double v = integrate_2d(g, -9, 9, -9, 9, 8);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("2-D quadrature is bit-identical across worker counts") {
  auto g = [](double x, double y) { return std::cos(x * y) * std::exp(-x * x - y * y); };
  const double serial = integrate_2d(g, -4, 4, -3, 5, 16, 1);
  const double parallel = integrate_2d(g, -4, 4, -3, 5, 16, 4);
  CHECK(serial == parallel);
}

TEST_CASE("adaptive 2-D quadrature converges") {
  auto g = [](double x, double y) { return std::exp(-(x * x + y * y)); };
  const auto r = integrate_2d_adaptive(g, -6, 6, -6, 6, 1e-10);
  CHECK(r.value == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(r.error_estimate < 1e-10);
  CHECK(r.panels >= 1);
}
