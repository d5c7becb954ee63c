#include "wof/photocount.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "wof/kernels.hpp"
#include "wof/numeric.hpp"
#include "wof/thermo.hpp"

namespace wof::photocount {

namespace {

void require_inputs(double nbar, double kappa_sq, const char* where) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw DomainError(std::string(where) + ": nbar must be finite and >= 0");
  }
  if (!(kappa_sq > 0.0) || kappa_sq > 1.0) {
    throw DomainError(std::string(where) + ": kappa_sq must lie in (0, 1]");
  }
}

// ln p(m) for the reflected geometric law; -inf when impossible.
double log_count_probability(double nbar, double kappa_sq, int m) {
  const double mean = (1.0 - kappa_sq) * nbar;
  if (mean == 0.0) {
    return m == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  return m * std::log(mean) - (m + 1.0) * std::log1p(mean);
}

struct NegBinomial {
  double log_q;       // ln(kappa^2 nbar / (nbar+1))
  double log_one_mq;  // ln((1 + R nbar) / (nbar+1))
};

NegBinomial neg_binomial(double nbar, double kappa_sq) {
  const double r = 1.0 - kappa_sq;
  return {std::log(kappa_sq) + std::log(nbar) - std::log1p(nbar),
          std::log1p(r * nbar) - std::log1p(nbar)};
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Shannon entropy of Binomial(n, r), nats.
double binomial_entropy(int n, double r) {
  if (n == 0 || r <= 0.0 || r >= 1.0) return 0.0;
  const double log_r = std::log(r);
  const double log_1mr = std::log1p(-r);
  const double mean = n * r;
  const double sd = std::sqrt(n * r * (1.0 - r));
  const int k_lo = std::max(0, static_cast<int>(std::floor(mean - 12.0 * sd - 10.0)));
  const int k_hi = std::min(n, static_cast<int>(std::ceil(mean + 12.0 * sd + 10.0)));
  double h = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double lb = log_binomial(n, k) + k * log_r + (n - k) * log_1mr;
    h -= std::exp(lb) * lb;
  }
  return h;
}

}  // namespace

void SplitterTap::validate() const {
  if (!(kappa_sq > 0.0) || kappa_sq > 1.0) {
    throw DomainError("SplitterTap: kappa_sq must lie in (0, 1]");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw DomainError("SplitterTap: beta must be finite and >= 0");
  }
}

double ConditionalFockState::mean_energy() const {
  double e = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) e += static_cast<double>(n) * probs[n];
  return e;
}

double reflected_count_probability(double nbar, double kappa_sq, int m) {
  require_inputs(nbar, kappa_sq, "reflected_count_probability");
  if (m < 0) throw DomainError("reflected_count_probability: m must be >= 0");
  return std::exp(log_count_probability(nbar, kappa_sq, m));
}

double conditional_probability(double nbar, double kappa_sq, int n, int m) {
  require_inputs(nbar, kappa_sq, "conditional_probability");
  if (n < 0 || m < 0) throw DomainError("conditional_probability: n, m must be >= 0");
  if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
  const NegBinomial nb = neg_binomial(nbar, kappa_sq);
  return std::exp(log_binomial(n + m, m) + n * nb.log_q + (m + 1.0) * nb.log_one_mq);
}

double conditional_probability_stirling(double nbar, double kappa_sq, int n,
                                        int m) {
  require_inputs(nbar, kappa_sq, "conditional_probability_stirling");
  if (n < 1 || m < 1) {
    throw DomainError("conditional_probability_stirling: needs n, m >= 1");
  }
  if (nbar == 0.0) return 0.0;
  const double dn = n;
  const double dm = m;
  const double log_c = 0.5 * std::log((dn + dm) / (kTwoPi * dn * dm)) +
                       dm * std::log(dn / dm) + (dn + dm) * std::log1p(dm / dn);
  const NegBinomial nb = neg_binomial(nbar, kappa_sq);
  return std::exp(log_c + dn * nb.log_q + (dm + 1.0) * nb.log_one_mq);
}

ConditionalFockState conditional_distribution(double nbar, double kappa_sq,
                                              int m, double mass_tol,
                                              int max_levels) {
  require_inputs(nbar, kappa_sq, "conditional_distribution");
  if (m < 0) throw DomainError("conditional_distribution: m must be >= 0");
  if (m > 0 && (nbar == 0.0 || kappa_sq == 1.0)) {
    throw DomainError("conditional_distribution: outcome m > 0 has zero probability");
  }
  ConditionalFockState state;
  state.outcome_m = m;
  state.nbar_in = nbar;
  state.kappa_sq = kappa_sq;
  if (nbar == 0.0) {
    state.probs = {1.0};
    return state;
  }

  const NegBinomial nb = neg_binomial(nbar, kappa_sq);
  const double q = std::exp(nb.log_q);
  const double mode = m * q / (1.0 - q);
  const double log_m_fact = std::lgamma(m + 1.0);
  double sum = 0.0;
  for (int n = 0; n < max_levels; ++n) {
    const double lp = std::lgamma(n + m + 1.0) - std::lgamma(n + 1.0) - log_m_fact +
                      n * nb.log_q + (m + 1.0) * nb.log_one_mq;
    const double p = std::exp(lp);
    state.probs.push_back(p);
    sum += p;
    if (n > mode) {
      // Past the mode the term ratio r decreases, so the tail is below p r / (1 - r).
      const double r = q * (n + m + 1.0) / (n + 1.0);
      if (r < 1.0 && p * r / (1.0 - r) < mass_tol) {
        state.truncation_mass = 1.0 - sum;
        return state;
      }
    }
  }
  throw NumericError("conditional_distribution: mass not converged within " +
                     std::to_string(max_levels) + " levels");
}

double conditional_mean_energy(double nbar, double kappa_sq, int m) {
  require_inputs(nbar, kappa_sq, "conditional_mean_energy");
  return (1.0 + m) * kappa_sq * nbar / (1.0 + (1.0 - kappa_sq) * nbar);
}

double g2_zero(int m) {
  if (m < 0) throw DomainError("g2_zero: m must be >= 0");
  return 1.0 + 1.0 / (1.0 + m);
}

double g2_zero_direct(const ConditionalFockState& state) {
  double first = 0.0;
  double second = 0.0;
  for (std::size_t n = 0; n < state.probs.size(); ++n) {
    const double dn = static_cast<double>(n);
    first += dn * state.probs[n];
    second += dn * (dn - 1.0) * state.probs[n];
  }
  if (first == 0.0) throw DomainError("g2_zero_direct: vacuum state");
  return second / (first * first);
}

bool is_passive(std::span<const double> probs) {
  return std::is_sorted(probs.begin(), probs.end(), std::greater<>());
}

double passive_energy(std::span<const double> probs) {
  std::vector<double> sorted(probs.begin(), probs.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double e = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) e += static_cast<double>(k) * sorted[k];
  return e;
}

double passivize_work(const ConditionalFockState& state) {
  return state.mean_energy() - passive_energy(state.probs);
}

double average_work(double nbar, double kappa_sq, int workers) {
  require_inputs(nbar, kappa_sq, "average_work");
  const double refl_mean = (1.0 - kappa_sq) * nbar;
  if (nbar == 0.0 || refl_mean == 0.0) return 0.0;
  const double r = refl_mean / (1.0 + refl_mean);
  const double energy_scale = kappa_sq * nbar / (1.0 + refl_mean);

  constexpr int kBlock = 64;
  double total = 0.0;
  for (int m0 = 0;; m0 += kBlock) {
    const auto block = kernels::map<double>(
        kBlock,
        [&](std::size_t i) {
          const int m = m0 + static_cast<int>(i);
          const double pm = std::exp(log_count_probability(nbar, kappa_sq, m));
          if (pm == 0.0) return 0.0;
          return pm * passivize_work(conditional_distribution(nbar, kappa_sq, m));
        },
        workers);
    for (int i = 0; i < kBlock; ++i) {
      total += block[static_cast<std::size_t>(i)];
      // Tail bound: W_m <= E_m = (1+m) * energy_scale.
      const double k = m0 + i + 1.0;
      const double tail = energy_scale * std::pow(r, k) * (k + 1.0 + r / (1.0 - r));
      if (tail == 0.0 || (total > 0.0 && tail < 1e-10 * total)) return total;
    }
  }
}

double detector_entropy(double nbar, double kappa_sq) {
  require_inputs(nbar, kappa_sq, "detector_entropy");
  return thermo::entropy((1.0 - kappa_sq) * nbar);
}

double detector_entropy_direct(double nbar, double kappa_sq) {
  require_inputs(nbar, kappa_sq, "detector_entropy_direct");
  const double mean = (1.0 - kappa_sq) * nbar;
  if (mean == 0.0) return 0.0;
  const double r = mean / (1.0 + mean);
  const int m_max = static_cast<int>(std::ceil(std::log(1e-16) / std::log(r))) + 1;
  double h = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    const double lp = log_count_probability(nbar, kappa_sq, m);
    h -= std::exp(lp) * lp;
  }
  return h;
}

double mutual_information(double nbar, double kappa_sq, int workers) {
  require_inputs(nbar, kappa_sq, "mutual_information");
  const double r = 1.0 - kappa_sq;
  if (nbar == 0.0 || r == 0.0) return 0.0;
  const double ratio = nbar / (nbar + 1.0);
  const auto n_max = static_cast<std::size_t>(
      std::ceil(std::log(1e-13) / std::log(ratio)) + 1.0);
  const double log_ratio = std::log(ratio);
  const double log_norm = -std::log1p(nbar);
  const auto terms = kernels::map<double>(
      n_max + 1,
      [&](std::size_t n) {
        const int ni = static_cast<int>(n);
        return std::exp(ni * log_ratio + log_norm) * binomial_entropy(ni, r);
      },
      workers);
  const double conditional = numeric::pairwise_sum(terms);
  return thermo::entropy(r * nbar) - conditional;
}

WorkBudget budget(double nbar, double kappa_sq, double theta_d, int workers) {
  WorkBudget b;
  b.nbar = nbar;
  b.gross_work = average_work(nbar, kappa_sq, workers);
  b.lo_cost = 0.0;
  b.feedforward_bound = theta_d * mutual_information(nbar, kappa_sq, workers);
  b.erasure_heat = theta_d * detector_entropy(nbar, kappa_sq);
  return b;
}

double conditional_p_density(double nbar, double kappa_sq, int m, double x,
                             double p) {
  require_inputs(nbar, kappa_sq, "conditional_p_density");
  if (nbar == 0.0) throw DomainError("conditional_p_density: vacuum input has no density");
  if (m < 0) throw DomainError("conditional_p_density: m must be >= 0");
  const double lpm = log_count_probability(nbar, kappa_sq, m);
  if (std::isinf(lpm)) {
    throw DomainError("conditional_p_density: outcome m has zero probability");
  }
  // Transmitted amplitude kappa*alpha: map back to the input point.
  const double r2_in = (x * x + p * p) / kappa_sq;
  const double alpha_sq = 0.5 * r2_in;
  const double lambda = (1.0 - kappa_sq) * alpha_sq;
  double log_poisson = -lambda - std::lgamma(m + 1.0);
  if (m > 0) log_poisson += m * std::log(lambda);
  const double log_prior = -r2_in / (2.0 * nbar) - std::log(kTwoPi * nbar);
  return std::exp(log_poisson + log_prior - lpm) / kappa_sq;
}

std::vector<PhasePoint> p_distribution_grid(double nbar, double kappa_sq, int m,
                                            std::span<const double> xs,
                                            std::span<const double> ps) {
  std::vector<PhasePoint> out;
  out.reserve(xs.size() * ps.size());
  for (double x : xs) {
    for (double p : ps) {
      out.push_back({x, p, conditional_p_density(nbar, kappa_sq, m, x, p)});
    }
  }
  return out;
}

}  // namespace wof::photocount
