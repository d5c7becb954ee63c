#pragma once

// Seeded Monte Carlo of the physical measurement chains: thermal amplitudes,
// beam splitter, photocounting and eight-port homodyne detection.
//
// Samples are cut into fixed chunks of kChunkSize. Chunk c draws from its own
// engine seeded with (seed, c, salt), so the sample sequence does not depend
// on how chunks are scheduled; chunk partial results are reduced pairwise in
// chunk order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wof/kernels.hpp"

namespace wof::mc {

inline constexpr std::size_t kChunkSize = 4096;

struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::mt19937_64 engine;

  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t salt = 0);

  double normal();
  double uniform();
  long long poisson(double mean);
};

/// Streaming moments (count, mean, sum of squared deviations).
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v);
  static Moments merge(const Moments& a, const Moments& b);
  double variance() const { return count > 1.0 ? m2 / (count - 1.0) : 0.0; }
};

/// Pairwise merge in index order.
Moments reduce_pairwise(const std::vector<Moments>& parts);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
};

inline std::size_t chunk_count(std::size_t n_samples) {
  return (n_samples + kChunkSize - 1) / kChunkSize;
}

inline std::size_t chunk_length(std::size_t n_samples, std::size_t chunk) {
  const std::size_t begin = chunk * kChunkSize;
  return std::min(kChunkSize, n_samples - begin);
}

/// Runs fn(chunk_index, length, rng) for every chunk; results in chunk order.
template <typename R, typename Fn>
std::vector<R> run_chunks(std::size_t n_samples, std::uint64_t seed,
                          std::uint64_t salt, int workers, Fn&& fn) {
  return kernels::map<R>(
      chunk_count(n_samples),
      [&](std::size_t c) {
        RngStream rng(seed, c, salt);
        return fn(c, chunk_length(n_samples, c), rng);
      },
      workers);
}

/// Mean of a per-sample statistic with its standard error.
template <typename SampleFn>
McEstimate estimate_mean(std::size_t n_samples, std::uint64_t seed,
                         std::uint64_t salt, int workers, SampleFn&& sample) {
  const auto parts = run_chunks<Moments>(
      n_samples, seed, salt, workers,
      [&](std::size_t, std::size_t len, RngStream& rng) {
        Moments m;
        for (std::size_t i = 0; i < len; ++i) m.add(sample(rng));
        return m;
      });
  const Moments total = reduce_pairwise(parts);
  McEstimate e;
  e.mean = total.mean;
  e.n_samples = n_samples;
  e.std_error = n_samples > 1 ? std::sqrt(total.variance() / total.count) : 0.0;
  return e;
}

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

/// Draw from P(x, p) = exp(-(x^2 + p^2) / 2 nbar) / (2 pi nbar).
PhasePoint sample_thermal_alpha(double nbar, RngStream& rng);

/// Counts on the reflected arm: Poisson with mean (1 - kappa^2) |alpha|^2,
/// alpha = (x + i p) / sqrt(2).
long long simulate_photocount(PhasePoint alpha, double kappa_sq, RngStream& rng);

/// Transmitted-mode counts: Poisson with mean kappa^2 |alpha|^2.
long long simulate_transmitted_count(PhasePoint alpha, double kappa_sq,
                                     RngStream& rng);

struct HomodyneCounts {
  double dn_x = 0.0;
  double dn_p = 0.0;
};

/// Eight-port detector. The reflected amplitude b = sqrt(eps) alpha splits
/// into two arms, each mixed with the local oscillator on a balanced
/// splitter; detector amplitudes are b/2 +- beta/sqrt(2) and
/// b/2 +- i beta/sqrt(2). Four Poisson counts, dn_x = n1 - n2, dn_p = n3 - n4.
HomodyneCounts simulate_homodyne(PhasePoint alpha, double xi, double epsilon,
                                 RngStream& rng);

/// Large-count approximation: dn ~ N(sqrt(eps) beta x, eps |alpha|^2/2 + beta^2).
HomodyneCounts simulate_homodyne_gaussian(PhasePoint alpha, double xi,
                                          double epsilon, RngStream& rng);

enum class Chain { exact, gaussian };

/// E[(kappa/gamma)^2 (dn_x^2 + dn_p^2) / 2] - xi.
McEstimate estimate_work_homodyne(double nbar, double xi, double epsilon,
                                  std::size_t n_samples, std::uint64_t seed,
                                  int workers = 1, Chain chain = Chain::exact);

/// Average permutation work. A pilot run ranks the transmitted populations
/// for each m; the estimate is the mean of n - rank_m(n) over an independent
/// run of n_samples, so it is a plain sample mean (slightly below the
/// optimum where the pilot ranking is wrong). The pilot holds
/// pilot_factor * n_samples draws.
McEstimate estimate_work_photocount(double nbar, double kappa_sq,
                                    std::size_t n_samples, std::uint64_t seed,
                                    int workers = 1, std::size_t pilot_factor = 4);

/// Net sign work with each quadrant displaced by its empirical conditional
/// mean of the transmitted amplitude. Standard error from batch means.
McEstimate estimate_work_sign(double nbar, double xi, double epsilon,
                              std::size_t n_samples, std::uint64_t seed,
                              int workers = 1);

enum class Scheme { photocount, homodyne, sign };

Scheme parse_scheme(std::string_view name);

struct SchemeParams {
  double nbar = 0.0;
  double kappa_sq = 1.0;  // photocount
  double xi = 0.0;        // homodyne, sign
  double epsilon = 0.0;   // homodyne, sign
  int bins = 48;          // sign: histogram cells per input quadrature
};

struct InformationEstimate {
  McEstimate estimate;
  double bias = 0.0;  // Miller-Madow magnitude, reported, not subtracted
  double undersampled_fraction = 0.0;  // occupied cells with < 5 counts
  std::string warning;
};

/// photocount: plug-in MI of the joint histogram (input count n, detector
/// count m). sign: plug-in MI of (binned x, binned p, quadrant).
/// homodyne: Gaussian estimator -1/2 ln(1 - r^2) per axis from sample
/// correlations of (x, dn_x), (p, dn_p), exact chain.
InformationEstimate estimate_mutual_information(Scheme scheme,
                                                const SchemeParams& params,
                                                std::size_t n_samples,
                                                std::uint64_t seed,
                                                int workers = 1);

/// Plug-in entropy of the detector record: m (photocount), quadrant (sign),
/// joint (dn_x, dn_p) from the exact chain (homodyne).
InformationEstimate estimate_detector_entropy(Scheme scheme,
                                              const SchemeParams& params,
                                              std::size_t n_samples,
                                              std::uint64_t seed,
                                              int workers = 1);

}  // namespace wof::mc
