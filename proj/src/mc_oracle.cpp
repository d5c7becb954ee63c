#include "wof/mc_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "wof/homodyne.hpp"
#include "wof/numeric.hpp"

namespace wof::mc {

RngStream::RngStream(std::uint64_t seed_, std::uint64_t stream_id_,
                     std::uint64_t salt)
    : seed(seed_), stream_id(stream_id_) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed_),
                    static_cast<std::uint32_t>(seed_ >> 32),
                    static_cast<std::uint32_t>(stream_id_),
                    static_cast<std::uint32_t>(stream_id_ >> 32),
                    static_cast<std::uint32_t>(salt)};
  engine.seed(seq);
}

double RngStream::normal() { return std::normal_distribution<double>{}(engine); }

double RngStream::uniform() {
  return std::uniform_real_distribution<double>{}(engine);
}

long long RngStream::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  return std::poisson_distribution<long long>{mean}(engine);
}

void Moments::add(double v) {
  count += 1.0;
  const double d = v - mean;
  mean += d / count;
  m2 += d * (v - mean);
}

Moments Moments::merge(const Moments& a, const Moments& b) {
  if (a.count == 0.0) return b;
  if (b.count == 0.0) return a;
  Moments out;
  out.count = a.count + b.count;
  const double d = b.mean - a.mean;
  out.mean = a.mean + d * b.count / out.count;
  out.m2 = a.m2 + b.m2 + d * d * a.count * b.count / out.count;
  return out;
}

namespace {

template <typename T, typename Merge>
T reduce_tree(const std::vector<T>& parts, std::size_t lo, std::size_t hi,
              Merge&& merge) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(reduce_tree(parts, lo, mid, merge), reduce_tree(parts, mid, hi, merge));
}

}  // namespace

Moments reduce_pairwise(const std::vector<Moments>& parts) {
  if (parts.empty()) return {};
  return reduce_tree(parts, 0, parts.size(), Moments::merge);
}

PhasePoint sample_thermal_alpha(double nbar, RngStream& rng) {
  if (!(nbar >= 0.0)) throw DomainError("sample_thermal_alpha: nbar must be >= 0");
  if (nbar == 0.0) return {};
  const double sd = std::sqrt(nbar);
  const double x = sd * rng.normal();
  const double p = sd * rng.normal();
  return {x, p};
}

long long simulate_photocount(PhasePoint a, double kappa_sq, RngStream& rng) {
  return rng.poisson((1.0 - kappa_sq) * 0.5 * (a.x * a.x + a.p * a.p));
}

long long simulate_transmitted_count(PhasePoint a, double kappa_sq,
                                     RngStream& rng) {
  return rng.poisson(kappa_sq * 0.5 * (a.x * a.x + a.p * a.p));
}

HomodyneCounts simulate_homodyne(PhasePoint a, double xi, double epsilon,
                                 RngStream& rng) {
  const double root_eps = std::sqrt(epsilon);
  // b = sqrt(eps) (x + i p) / sqrt(2); arm amplitudes b/2 +- lo.
  const double b_re = root_eps * a.x / std::sqrt(2.0);
  const double b_im = root_eps * a.p / std::sqrt(2.0);
  const double lo = std::sqrt(0.5 * xi) / std::sqrt(2.0);
  auto intensity = [](double re, double im) { return re * re + im * im; };
  const double n1 = intensity(0.5 * b_re + lo, 0.5 * b_im);
  const double n2 = intensity(0.5 * b_re - lo, 0.5 * b_im);
  const double n3 = intensity(0.5 * b_re, 0.5 * b_im + lo);
  const double n4 = intensity(0.5 * b_re, 0.5 * b_im - lo);
  HomodyneCounts c;
  c.dn_x = static_cast<double>(rng.poisson(n1) - rng.poisson(n2));
  c.dn_p = static_cast<double>(rng.poisson(n3) - rng.poisson(n4));
  return c;
}

HomodyneCounts simulate_homodyne_gaussian(PhasePoint a, double xi,
                                          double epsilon, RngStream& rng) {
  const double beta = std::sqrt(0.5 * xi);
  const double root_eps = std::sqrt(epsilon);
  const double sd = std::sqrt(0.25 * epsilon * (a.x * a.x + a.p * a.p) + beta * beta);
  HomodyneCounts c;
  c.dn_x = root_eps * beta * a.x + sd * rng.normal();
  c.dn_p = root_eps * beta * a.p + sd * rng.normal();
  return c;
}

McEstimate estimate_work_homodyne(double nbar, double xi, double epsilon,
                                  std::size_t n_samples, std::uint64_t seed,
                                  int workers, Chain chain) {
  if (xi == 0.0) return {0.0, 0.0, n_samples};
  const double g = homodyne::stats(nbar, xi, epsilon).mean_gain;
  const double g_sq = g * g;
  return estimate_mean(n_samples, seed, 1, workers, [&](RngStream& rng) {
    const PhasePoint a = sample_thermal_alpha(nbar, rng);
    const HomodyneCounts c = chain == Chain::exact
                                 ? simulate_homodyne(a, xi, epsilon, rng)
                                 : simulate_homodyne_gaussian(a, xi, epsilon, rng);
    return 0.5 * g_sq * (c.dn_x * c.dn_x + c.dn_p * c.dn_p) - xi;
  });
}

namespace {

using Key = std::pair<long long, long long>;
using Histogram = std::map<Key, long long>;

Histogram merge_histograms(const std::vector<Histogram>& parts) {
  Histogram total;
  for (const auto& h : parts) {
    for (const auto& [k, c] : h) total[k] += c;
  }
  return total;
}

InformationEstimate plug_in_mi(const Histogram& joint) {
  std::map<long long, long long> ma;
  std::map<long long, long long> mb;
  double n = 0.0;
  for (const auto& [k, c] : joint) {
    ma[k.first] += c;
    mb[k.second] += c;
    n += static_cast<double>(c);
  }
  InformationEstimate out;
  if (n == 0.0) return out;
  double mi = 0.0;
  double second = 0.0;
  std::size_t sparse = 0;
  for (const auto& [k, c] : joint) {
    const double dc = static_cast<double>(c);
    const double pointwise = std::log(dc * n / (static_cast<double>(ma[k.first]) *
                                                static_cast<double>(mb[k.second])));
    mi += dc / n * pointwise;
    second += dc / n * pointwise * pointwise;
    if (c < 5) ++sparse;
  }
  out.estimate.mean = mi;
  out.estimate.n_samples = static_cast<std::size_t>(n);
  out.estimate.std_error = std::sqrt(std::max(0.0, second - mi * mi) / n);
  out.bias = (static_cast<double>(joint.size()) - static_cast<double>(ma.size()) -
              static_cast<double>(mb.size()) + 1.0) /
             (2.0 * n);
  out.undersampled_fraction =
      static_cast<double>(sparse) / static_cast<double>(joint.size());
  if (out.undersampled_fraction > 0.1) {
    out.warning = "more than 10% of occupied cells hold fewer than 5 counts";
  }
  return out;
}

InformationEstimate plug_in_entropy(const Histogram& hist) {
  double n = 0.0;
  for (const auto& [k, c] : hist) n += static_cast<double>(c);
  InformationEstimate out;
  if (n == 0.0) return out;
  double h = 0.0;
  double second = 0.0;
  std::size_t sparse = 0;
  for (const auto& [k, c] : hist) {
    const double dc = static_cast<double>(c);
    const double surprise = -std::log(dc / n);
    h += dc / n * surprise;
    second += dc / n * surprise * surprise;
    if (c < 5) ++sparse;
  }
  out.estimate.mean = h;
  out.estimate.n_samples = static_cast<std::size_t>(n);
  out.estimate.std_error = std::sqrt(std::max(0.0, second - h * h) / n);
  out.bias = (static_cast<double>(hist.size()) - 1.0) / (2.0 * n);
  out.undersampled_fraction =
      static_cast<double>(sparse) / static_cast<double>(hist.size());
  if (out.undersampled_fraction > 0.1) {
    out.warning = "more than 10% of occupied cells hold fewer than 5 counts";
  }
  return out;
}

int quadrant_of(const HomodyneCounts& c) {
  return (c.dn_x >= 0.0 ? 0 : 2) + (c.dn_p >= 0.0 ? 0 : 1);
}

constexpr std::size_t kBatches = 16;

// Standard error of a nonlinear estimator from kBatches interleaved batches
// of chunks (chunk c belongs to batch c % kBatches).
template <typename Acc, typename Estimator>
McEstimate batch_estimate(const std::vector<Acc>& chunks, std::size_t n_samples,
                          Estimator&& estimator) {
  McEstimate e;
  e.n_samples = n_samples;
  Acc total{};
  std::vector<Acc> batches(std::min(kBatches, chunks.size()));
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    total += chunks[c];
    batches[c % batches.size()] += chunks[c];
  }
  e.mean = estimator(total);
  if (batches.size() < 2) {
    e.std_error = std::numeric_limits<double>::infinity();
    return e;
  }
  Moments m;
  for (const auto& b : batches) m.add(estimator(b));
  e.std_error = std::sqrt(m.variance() / m.count);
  return e;
}

struct QuadrantAcc {
  std::array<double, 4> count{};
  std::array<double, 4> sum_x{};
  std::array<double, 4> sum_p{};

  QuadrantAcc& operator+=(const QuadrantAcc& o) {
    for (int q = 0; q < 4; ++q) {
      count[q] += o.count[q];
      sum_x[q] += o.sum_x[q];
      sum_p[q] += o.sum_p[q];
    }
    return *this;
  }
};

struct CoMoments {
  double n = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;

  void add(double x, double y) {
    n += 1.0;
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  CoMoments& operator+=(const CoMoments& o) {
    n += o.n;
    sx += o.sx;
    sy += o.sy;
    sxx += o.sxx;
    syy += o.syy;
    sxy += o.sxy;
    return *this;
  }
  double correlation_sq() const {
    const double cxx = sxx / n - (sx / n) * (sx / n);
    const double cyy = syy / n - (sy / n) * (sy / n);
    const double cxy = sxy / n - (sx / n) * (sy / n);
    return cxy * cxy / (cxx * cyy);
  }
};

struct AxisPair {
  CoMoments x;
  CoMoments p;
  AxisPair& operator+=(const AxisPair& o) {
    x += o.x;
    p += o.p;
    return *this;
  }
};

void require_params(const SchemeParams& s, Scheme scheme) {
  if (!(s.nbar > 0.0)) throw DomainError("mc: nbar must be > 0");
  if (scheme == Scheme::photocount) {
    if (!(s.kappa_sq > 0.0) || !(s.kappa_sq < 1.0)) {
      throw DomainError("mc: photocount needs 0 < kappa_sq < 1");
    }
  } else {
    if (!(s.xi > 0.0) || !(s.epsilon > 0.0) || s.epsilon >= 1.0) {
      throw DomainError("mc: needs xi > 0 and 0 < epsilon < 1");
    }
  }
  if (s.bins < 2) throw DomainError("mc: bins must be >= 2");
}

}  // namespace

McEstimate estimate_work_photocount(double nbar, double kappa_sq,
                                    std::size_t n_samples, std::uint64_t seed,
                                    int workers, std::size_t pilot_factor) {
  require_params({nbar, kappa_sq, 0.0, 0.0, 48}, Scheme::photocount);
  if (pilot_factor < 1) throw DomainError("estimate_work_photocount: pilot_factor >= 1");
  auto draw = [&](RngStream& rng) {
    const PhasePoint a = sample_thermal_alpha(nbar, rng);
    const long long m = simulate_photocount(a, kappa_sq, rng);
    const long long n = simulate_transmitted_count(a, kappa_sq, rng);
    return Key{m, n};
  };
  const Histogram pilot = merge_histograms(run_chunks<Histogram>(
      pilot_factor * n_samples, seed, 2, workers, [&](std::size_t, std::size_t len, RngStream& rng) {
        Histogram h;
        for (std::size_t i = 0; i < len; ++i) ++h[draw(rng)];
        return h;
      }));

  // rank[m][n] for n up to the largest pilot n seen with this m.
  std::vector<std::vector<long long>> rank;
  for (auto it = pilot.begin(); it != pilot.end();) {
    const long long m = it->first.first;
    std::vector<std::pair<long long, long long>> seen;  // (count, n)
    for (; it != pilot.end() && it->first.first == m; ++it) {
      seen.emplace_back(it->second, it->first.second);
    }
    std::sort(seen.begin(), seen.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    long long n_max = 0;
    for (const auto& s : seen) n_max = std::max(n_max, s.second);
    std::vector<long long> r(static_cast<std::size_t>(n_max + 1), -1);
    for (std::size_t k = 0; k < seen.size(); ++k) {
      r[static_cast<std::size_t>(seen[k].second)] = static_cast<long long>(k);
    }
    // Unseen levels follow the seen ones in ascending n.
    long long next = static_cast<long long>(seen.size());
    for (auto& v : r) {
      if (v < 0) v = next++;
    }
    if (rank.size() <= static_cast<std::size_t>(m)) rank.resize(static_cast<std::size_t>(m) + 1);
    rank[static_cast<std::size_t>(m)] = std::move(r);
  }

  return estimate_mean(n_samples, seed, 3, workers, [&](RngStream& rng) {
    const auto [m, n] = draw(rng);
    if (static_cast<std::size_t>(m) >= rank.size()) return 0.0;
    const auto& r = rank[static_cast<std::size_t>(m)];
    if (r.empty() || static_cast<std::size_t>(n) >= r.size()) return 0.0;
    return static_cast<double>(n - r[static_cast<std::size_t>(n)]);
  });
}

McEstimate estimate_work_sign(double nbar, double xi, double epsilon,
                              std::size_t n_samples, std::uint64_t seed,
                              int workers) {
  require_params({nbar, 0.5, xi, epsilon, 48}, Scheme::sign);
  const double kappa = std::sqrt(1.0 - epsilon);
  const auto chunks = run_chunks<QuadrantAcc>(
      n_samples, seed, 4, workers, [&](std::size_t, std::size_t len, RngStream& rng) {
        QuadrantAcc acc;
        for (std::size_t i = 0; i < len; ++i) {
          const PhasePoint a = sample_thermal_alpha(nbar, rng);
          const int q = quadrant_of(simulate_homodyne_gaussian(a, xi, epsilon, rng));
          acc.count[q] += 1.0;
          acc.sum_x[q] += kappa * a.x;
          acc.sum_p[q] += kappa * a.p;
        }
        return acc;
      });
  return batch_estimate(chunks, n_samples, [&](const QuadrantAcc& acc) {
    double n = 0.0;
    for (double c : acc.count) n += c;
    double w = 0.0;
    for (int q = 0; q < 4; ++q) {
      if (acc.count[q] == 0.0) continue;
      const double mx = acc.sum_x[q] / acc.count[q];
      const double mp = acc.sum_p[q] / acc.count[q];
      w += acc.count[q] / n * 0.5 * (mx * mx + mp * mp);
    }
    return w - xi;
  });
}

Scheme parse_scheme(std::string_view name) {
  if (name == "photocount") return Scheme::photocount;
  if (name == "homodyne") return Scheme::homodyne;
  if (name == "sign") return Scheme::sign;
  throw DomainError("unknown MC scheme: " + std::string(name));
}

InformationEstimate estimate_mutual_information(Scheme scheme,
                                                const SchemeParams& s,
                                                std::size_t n_samples,
                                                std::uint64_t seed, int workers) {
  require_params(s, scheme);
  switch (scheme) {
    case Scheme::photocount: {
      const auto joint = merge_histograms(run_chunks<Histogram>(
          n_samples, seed, 5, workers,
          [&](std::size_t, std::size_t len, RngStream& rng) {
            Histogram h;
            for (std::size_t i = 0; i < len; ++i) {
              const PhasePoint a = sample_thermal_alpha(s.nbar, rng);
              const long long m = simulate_photocount(a, s.kappa_sq, rng);
              const long long n = m + simulate_transmitted_count(a, s.kappa_sq, rng);
              ++h[{n, m}];
            }
            return h;
          }));
      return plug_in_mi(joint);
    }
    case Scheme::sign: {
      const double half = 5.0 * std::sqrt(s.nbar);
      const double width = 2.0 * half / s.bins;
      auto bin = [&](double v) {
        const auto b = static_cast<long long>(std::floor((v + half) / width));
        return std::clamp<long long>(b, 0, s.bins - 1);
      };
      const auto joint = merge_histograms(run_chunks<Histogram>(
          n_samples, seed, 6, workers,
          [&](std::size_t, std::size_t len, RngStream& rng) {
            Histogram h;
            for (std::size_t i = 0; i < len; ++i) {
              const PhasePoint a = sample_thermal_alpha(s.nbar, rng);
              const int q =
                  quadrant_of(simulate_homodyne_gaussian(a, s.xi, s.epsilon, rng));
              ++h[{bin(a.x) * s.bins + bin(a.p), q}];
            }
            return h;
          }));
      return plug_in_mi(joint);
    }
    case Scheme::homodyne: {
      const auto chunks = run_chunks<AxisPair>(
          n_samples, seed, 7, workers,
          [&](std::size_t, std::size_t len, RngStream& rng) {
            AxisPair acc;
            for (std::size_t i = 0; i < len; ++i) {
              const PhasePoint a = sample_thermal_alpha(s.nbar, rng);
              const HomodyneCounts c = simulate_homodyne(a, s.xi, s.epsilon, rng);
              acc.x.add(a.x, c.dn_x);
              acc.p.add(a.p, c.dn_p);
            }
            return acc;
          });
      InformationEstimate out;
      out.estimate = batch_estimate(chunks, n_samples, [](const AxisPair& acc) {
        return -0.5 * std::log1p(-acc.x.correlation_sq()) -
               0.5 * std::log1p(-acc.p.correlation_sq());
      });
      return out;
    }
  }
  throw DomainError("estimate_mutual_information: unknown scheme");
}

InformationEstimate estimate_detector_entropy(Scheme scheme,
                                              const SchemeParams& s,
                                              std::size_t n_samples,
                                              std::uint64_t seed, int workers) {
  require_params(s, scheme);
  const auto hist = merge_histograms(run_chunks<Histogram>(
      n_samples, seed, 8, workers, [&](std::size_t, std::size_t len, RngStream& rng) {
        Histogram h;
        for (std::size_t i = 0; i < len; ++i) {
          const PhasePoint a = sample_thermal_alpha(s.nbar, rng);
          switch (scheme) {
            case Scheme::photocount:
              ++h[{simulate_photocount(a, s.kappa_sq, rng), 0}];
              break;
            case Scheme::sign:
              ++h[{quadrant_of(simulate_homodyne_gaussian(a, s.xi, s.epsilon, rng)), 0}];
              break;
            case Scheme::homodyne: {
              const HomodyneCounts c = simulate_homodyne(a, s.xi, s.epsilon, rng);
              ++h[{static_cast<long long>(c.dn_x), static_cast<long long>(c.dn_p)}];
              break;
            }
          }
        }
        return h;
      }));
  return plug_in_entropy(hist);
}

}  // namespace wof::mc
