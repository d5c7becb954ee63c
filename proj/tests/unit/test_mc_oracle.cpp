#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "wof/coarse_sign.hpp"
#include "wof/homodyne.hpp"
#include "wof/mc_oracle.hpp"
#include "wof/numeric.hpp"
#include "wof/photocount.hpp"
#include "wof/thermo.hpp"

using namespace wof;
using namespace wof::mc;

namespace {

bool within(double value, double expected, double se, double extra = 0.0) {
  return std::abs(value - expected) <= 4.0 * se + extra;
}

}  // namespace

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 3, 1), b(42, 3, 1), c(42, 4, 1), d(42, 3, 2);
  const double va = a.uniform();
  CHECK(va == b.uniform());
  CHECK(va != c.uniform());
  CHECK(va != d.uniform());
  CHECK(a.poisson(0.0) == 0);
}

TEST_CASE("Welford moments against a two-pass computation") {
  std::vector<double> v;
  RngStream rng(1, 0);
  for (int i = 0; i < 10'000; ++i) v.push_back(1e6 + rng.normal());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  Moments all;
  std::vector<Moments> parts(7);
  for (std::size_t i = 0; i < v.size(); ++i) {
    all.add(v[i]);
    parts[i % 7].add(v[i]);
  }
  CHECK(all.mean == doctest::Approx(mean).epsilon(1e-14));
  CHECK(all.variance() == doctest::Approx(ss / (v.size() - 1)).epsilon(1e-9));
  const Moments merged = reduce_pairwise(parts);
  CHECK(merged.count == v.size());
  CHECK(merged.mean == doctest::Approx(mean).epsilon(1e-14));
  CHECK(merged.variance() == doctest::Approx(ss / (v.size() - 1)).epsilon(1e-9));
}

TEST_CASE("chunking covers every sample") {
  CHECK(chunk_count(1) == 1);
  CHECK(chunk_count(kChunkSize) == 1);
  CHECK(chunk_count(kChunkSize + 1) == 2);
  CHECK(chunk_length(kChunkSize + 1, 1) == 1);
}

TEST_CASE("thermal amplitudes have the right energy") {
  const auto e = estimate_mean(200'000, 9, 0, 1, [](RngStream& r) {
    const auto a = sample_thermal_alpha(7.0, r);
    return 0.5 * (a.x * a.x + a.p * a.p);
  });
  CHECK(within(e.mean, 7.0, e.std_error));
}

TEST_CASE("photocount marginals") {
  const auto m = estimate_mean(200'000, 9, 1, 1, [](RngStream& r) {
    return static_cast<double>(simulate_photocount(sample_thermal_alpha(10.0, r), 0.6, r));
  });
  CHECK(within(m.mean, 4.0, m.std_error));
  const auto n = estimate_mean(200'000, 9, 2, 1, [](RngStream& r) {
    return static_cast<double>(simulate_transmitted_count(sample_thermal_alpha(10.0, r), 0.6, r));
  });
  CHECK(within(n.mean, 6.0, n.std_error));
}

TEST_CASE("exact homodyne chain conditional moments") {
  const double xi = 6.0;
  const double eps = 0.2;
  const PhasePoint a{3.0, -2.0};
  const double beta = std::sqrt(xi / 2);
  const auto mean = estimate_mean(200'000, 4, 0, 1, [&](RngStream& r) {
    return simulate_homodyne(a, xi, eps, r).dn_x;
  });
  const double var = 0.25 * eps * 13.0 + beta * beta;
  CHECK(within(mean.mean, std::sqrt(eps) * beta * 3.0, mean.std_error));
  CHECK(mean.std_error * mean.std_error * 200'000 == doctest::Approx(var).epsilon(0.02));
}

TEST_CASE("homodyne work against the closed form") {
  const auto o = homodyne::optimize(30.0);
  for (auto chain : {Chain::exact, Chain::gaussian}) {
    const auto e = estimate_work_homodyne(30.0, o.xi, o.epsilon, 200'000, 1, 1, chain);
    CHECK(within(e.mean, o.w_max, e.std_error));
  }
}

TEST_CASE("photocount work against the closed form") {
  const auto e = estimate_work_photocount(5.0, 0.75, 200'000, 2);
  CHECK(within(e.mean, photocount::average_work(5.0, 0.75), e.std_error));
}

TEST_CASE("sign work exceeds the 1/(2 pi) form") {
  const auto o = coarse_sign::optimize_sign(100.0);
  const auto e = estimate_work_sign(100.0, o.xi, o.epsilon, 100'000, 1);
  const double bayes = coarse_sign::sign_gain_bayes(100.0, o.xi, o.epsilon) - o.xi;
  CHECK(e.mean > o.w_max);
  CHECK(within(e.mean, bayes, e.std_error, 0.02 * bayes));
}

TEST_CASE("information estimators against closed forms") {
  SchemeParams pc{20.0, 0.75};
  const auto mi = estimate_mutual_information(Scheme::photocount, pc, 200'000, 3);
  CHECK(within(mi.estimate.mean, photocount::mutual_information(20.0, 0.75),
               mi.estimate.std_error, mi.bias));
  const auto hd = estimate_detector_entropy(Scheme::photocount, pc, 200'000, 3);
  CHECK(within(hd.estimate.mean, photocount::detector_entropy(20.0, 0.75),
               hd.estimate.std_error, hd.bias));

  const auto o = homodyne::optimize(30.0);
  SchemeParams h{30.0, 1.0, o.xi, o.epsilon};
  const auto hm = estimate_mutual_information(Scheme::homodyne, h, 200'000, 3);
  CHECK(within(hm.estimate.mean, homodyne::mutual_information(30.0, o.xi, o.epsilon),
               hm.estimate.std_error, hm.bias));

  const auto s = estimate_detector_entropy(Scheme::sign, h, 200'000, 3);
  CHECK(within(s.estimate.mean, std::log(4.0), s.estimate.std_error, s.bias));
}

TEST_CASE("undersampled histograms are flagged") {
  SchemeParams pc{2000.0, 0.5};
  const auto mi = estimate_mutual_information(Scheme::photocount, pc, 5000, 1);
  CHECK(mi.undersampled_fraction > 0.1);
  CHECK_FALSE(mi.warning.empty());
}

TEST_CASE("estimates are bit-identical across worker counts") {
  const auto o = homodyne::optimize(30.0);
  const auto a = estimate_work_homodyne(30.0, o.xi, o.epsilon, 50'000, 8, 1);
  const auto b = estimate_work_homodyne(30.0, o.xi, o.epsilon, 50'000, 8, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  const auto c = estimate_work_photocount(5.0, 0.75, 20'000, 8, 1);
  const auto d = estimate_work_photocount(5.0, 0.75, 20'000, 8, 3);
  CHECK(c.mean == d.mean);
  SchemeParams sp{30.0, 1.0, o.xi, o.epsilon};
  const auto e = estimate_mutual_information(Scheme::sign, sp, 50'000, 8, 1);
  const auto f = estimate_mutual_information(Scheme::sign, sp, 50'000, 8, 4);
  CHECK(e.estimate.mean == f.estimate.mean);
  CHECK(e.bias == f.bias);
}

TEST_CASE("scheme names") {
  CHECK(parse_scheme("sign") == Scheme::sign);
  CHECK_THROWS_AS(parse_scheme("bogus"), DomainError);
}
