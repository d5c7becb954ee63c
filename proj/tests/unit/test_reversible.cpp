#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wof/numeric.hpp"
#include "wof/reversible.hpp"
#include "wof/thermo.hpp"

using namespace wof;
using namespace wof::reversible;

TEST_CASE("entropy balance holds at the solved occupation") {
  for (int modes : {2, 3, 7}) {
    const ModeEnsemble e{modes, 20.0, 1.0};
    const double nf = solve_final_occupancy(e);
    CHECK(modes * thermo::entropy(nf) ==
          doctest::Approx(thermo::entropy(20.0) + (modes - 1) * thermo::entropy(1.0))
              .epsilon(1e-12));
    CHECK(nf > 1.0);
    CHECK(nf < 20.0);
  }
}

TEST_CASE("benchmark works") {
  CHECK(extract({2, 20.0, 1.0}).work == doctest::Approx(11.0).epsilon(0.01));
  CHECK(extract({5, 20.0, 1.0}).work == doctest::Approx(13.9).epsilon(0.01));
}

TEST_CASE("strokes account for the extracted work") {
  const auto out = extract({4, 30.0, 2.0});
  const auto& s = out.strokes;
  CHECK(s.total_work() == doctest::Approx(-out.work).epsilon(1e-10));
  CHECK(s.heat_released_hot == doctest::Approx(s.heat_absorbed_cold).epsilon(1e-10));
  CHECK(s.omega_hot < 1.0);
  CHECK(s.omega_cold > 1.0);
}

TEST_CASE("equal occupations give no work") {
  const auto out = extract({3, 4.0, 4.0});
  CHECK(out.work == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("work grows with mode count toward the infinite-mode limit") {
  double prev = 0.0;
  for (int modes : {2, 4, 16, 256, 65536}) {
    const double w = extract({modes, 20.0, 1.0}).work;
    CHECK(w > prev);
    prev = w;
  }
  CHECK(prev / 20.0 ==
        doctest::Approx(efficiency_infinite_modes_exact(20.0, 1.0)).epsilon(1e-3));
}

TEST_CASE("classical infinite-mode form in the classical regime") {
  CHECK(efficiency_infinite_modes(1e4, 1e2) ==
        doctest::Approx(efficiency_infinite_modes_exact(1e4, 1e2)).epsilon(1e-3));
  CHECK(efficiency_infinite_modes(5.0, 0.0) == 1.0);
}

TEST_CASE("geometric-mean final occupation for two classical modes") {
  const double nf = solve_final_occupancy({2, 1e4, 1e2});
  CHECK(nf / std::sqrt(1e4 * 1e2) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("invalid ensembles") {
  CHECK_THROWS_AS(extract({1, 20.0, 1.0}), DomainError);
  CHECK_THROWS_AS(extract({2, -1.0, 1.0}), DomainError);
}
