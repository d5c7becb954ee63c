#include "wof/coarse_sign.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wof/numeric.hpp"

namespace wof::coarse_sign {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

void require_resolution(double resolution) {
  if (!(resolution > 0.0)) throw DomainError("resolution must be > 0");
}

// Standard normal CDF difference Phi(hi) - Phi(lo), accurate in both tails.
double normal_mass(double lo, double hi) {
  if (lo >= 0.0) return 0.5 * (std::erfc(lo / kSqrt2) - std::erfc(hi / kSqrt2));
  if (hi <= 0.0) return 0.5 * (std::erfc(-hi / kSqrt2) - std::erfc(-lo / kSqrt2));
  return 0.5 * (std::erf(hi / kSqrt2) - std::erf(lo / kSqrt2));
}

// E[Z 1{lo <= Z < hi}] for Z ~ N(0, 1).
double normal_partial_mean(double lo, double hi) {
  auto phi = [](double z) {
    return std::isinf(z) ? 0.0 : std::exp(-0.5 * z * z) / std::sqrt(kTwoPi);
  };
  return phi(lo) - phi(hi);
}

}  // namespace

double block_probability(double /*mu*/, double sigma, double resolution, int block) {
  if (!(sigma > 0.0)) throw DomainError("block_probability: sigma must be > 0");
  require_resolution(resolution);
  if (std::isinf(resolution)) return block == 0 ? 1.0 : 0.0;
  const double lo = (block - 0.5) * resolution / sigma;
  const double hi = (block + 0.5) * resolution / sigma;
  return normal_mass(lo, hi);
}

int block_range(double sigma, double resolution) {
  require_resolution(resolution);
  if (std::isinf(resolution)) return 0;
  return static_cast<int>(std::ceil(9.0 * sigma / resolution + 0.5));
}

double coarse_gain(double nbar, double xi, double epsilon, double resolution) {
  require_resolution(resolution);
  if (xi == 0.0 || epsilon == 0.0 || nbar == 0.0) return 0.0;
  const auto s = homodyne::stats(nbar, xi, epsilon);
  if (std::isinf(resolution)) return 0.0;
  const double sigma = std::sqrt(s.sigma_dn_sq);
  const double r = resolution / sigma;
  const int m_max = block_range(sigma, resolution);
  // Per axis: sum_M E[dn 1_M]^2 / p_M, symmetric in M.
  double sum = 0.0;
  for (int m = m_max; m >= 1; --m) {
    const double lo = (m - 0.5) * r;
    const double hi = m == m_max ? std::numeric_limits<double>::infinity()
                                 : (m + 0.5) * r;
    const double p = normal_mass(lo, hi);
    if (p <= 0.0) continue;
    const double pm = normal_partial_mean(lo, hi);
    sum += 2.0 * pm * pm / p;
  }
  // Block 0 has zero mean by symmetry. Each axis contributes half.
  return s.mean_gain * s.mean_gain * s.sigma_dn_sq * sum;
}

double coarse_work(double nbar, double xi, double epsilon, double resolution) {
  return coarse_gain(nbar, xi, epsilon, resolution) - xi;
}

QuadrantWork sign_work(double nbar, double xi, double epsilon) {
  QuadrantWork q;
  q.lo_cost = xi;
  if (xi > 0.0 && epsilon > 0.0 && nbar > 0.0) {
    const auto s = homodyne::stats(nbar, xi, epsilon);
    const double each = s.mean_gain * s.mean_gain / 16.0 *
                        (2.0 * s.sigma_dn_sq / kPi);
    q.w_pp = q.w_pm = q.w_mp = q.w_mm = each;
    q.total_gross = q.w_pp + q.w_pm + q.w_mp + q.w_mm;
  }
  q.net = q.total_gross - q.lo_cost;
  return q;
}

double sign_gain_bayes(double nbar, double xi, double epsilon) {
  return 2.0 / kPi * homodyne::displacement_gain(nbar, xi, epsilon);
}

homodyne::OptimalParams optimize_sign(double nbar) {
  return homodyne::optimize_scaled(nbar, kTwoPi);
}

homodyne::OptimalParams approximate_sign_optimum(double nbar) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw DomainError("approximate_sign_optimum: nbar must be finite and >= 0");
  }
  homodyne::OptimalParams out;
  if (nbar <= kTwoPi) return out;
  out.epsilon = (std::sqrt(nbar - std::sqrt(kTwoPi * nbar) + 1.0) - 1.0) / nbar;
  out.xi = (std::sqrt(nbar * (1.0 - out.epsilon) / kTwoPi) - 1.0) /
           (1.0 + 1.0 / (out.epsilon * nbar));
  out.w_max = sign_work(nbar, out.xi, out.epsilon).net;
  out.operational = out.w_max > 0.0;
  return out;
}

double sign_work_large_n(double nbar) {
  const double r = std::sqrt(kTwoPi);
  return (nbar - 2.0 * (1.0 + r) * std::sqrt(nbar) + 1.0 + r) / kTwoPi;
}

std::array<double, 4> quadrant_probabilities(double x, double p, double xi,
                                             double epsilon) {
  if (!(xi >= 0.0) || !(epsilon >= 0.0) || epsilon > 1.0) {
    throw DomainError("quadrant_probabilities: invalid xi or epsilon");
  }
  const double beta = std::sqrt(0.5 * xi);
  const double var = 0.25 * epsilon * (x * x + p * p) + beta * beta;
  if (var == 0.0) return {0.25, 0.25, 0.25, 0.25};
  const double scale = std::sqrt(epsilon) * beta / (kSqrt2 * std::sqrt(var));
  const double qx = 0.5 * std::erfc(-scale * x);
  const double qp = 0.5 * std::erfc(-scale * p);
  return {qx * qp, qx * (1.0 - qp), (1.0 - qx) * qp, (1.0 - qx) * (1.0 - qp)};
}

SignInformation sign_mutual_information(double nbar, double xi, double epsilon,
                                        double tol, int workers) {
  if (!(nbar >= 0.0) || !(xi >= 0.0) || !(epsilon >= 0.0) || epsilon > 1.0) {
    throw DomainError("sign_mutual_information: invalid parameters");
  }
  SignInformation out;
  if (nbar == 0.0 || xi == 0.0 || epsilon == 0.0) return out;
  const double beta = std::sqrt(0.5 * xi);
  const double root_eps = std::sqrt(epsilon);
  auto h_of = [&](double x, double p) {
    const double var = 0.25 * epsilon * (x * x + p * p) + beta * beta;
    const double scale = root_eps * beta / (kSqrt2 * std::sqrt(var));
    return numeric::binary_entropy(0.5 * std::erfc(-scale * x)) +
           numeric::binary_entropy(0.5 * std::erfc(-scale * p));
  };
  auto integrand = [&](double x, double p) {
    const double w = std::exp(-(x * x + p * p) / (2.0 * nbar)) / (kTwoPi * nbar);
    return w * (std::log(4.0) - h_of(x, p));
  };
  const double half = 8.0 * std::sqrt(nbar);
  const auto r = numeric::integrate_2d_adaptive(integrand, -half, half, -half,
                                                half, tol, workers);
  out.value = r.value;
  out.error_estimate = r.error_estimate;
  out.panels = r.panels;
  return out;
}

double sign_detector_entropy() { return std::log(4.0); }

WorkBudget sign_budget(double nbar, double xi, double epsilon, double theta_d,
                       int workers) {
  WorkBudget b;
  b.nbar = nbar;
  const auto q = sign_work(nbar, xi, epsilon);
  b.gross_work = q.total_gross;
  b.lo_cost = q.lo_cost;
  b.feedforward_bound =
      theta_d * sign_mutual_information(nbar, xi, epsilon, 1e-6, workers).value;
  b.erasure_heat = theta_d * sign_detector_entropy();
  return b;
}

}  // namespace wof::coarse_sign
