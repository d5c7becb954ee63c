#include "wof/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wof/numeric.hpp"

namespace wof::homodyne {

namespace {

void require(double nbar, double xi, double epsilon, const char* where) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw DomainError(std::string(where) + ": nbar must be finite and >= 0");
  }
  if (!(xi >= 0.0) || !std::isfinite(xi)) {
    throw DomainError(std::string(where) + ": xi must be finite and >= 0");
  }
  if (!(epsilon >= 0.0) || epsilon > 1.0) {
    throw DomainError(std::string(where) + ": epsilon must lie in [0, 1]");
  }
}

double sigma_sq(double nbar, double xi, double epsilon) {
  const double beta_sq = 0.5 * xi;
  return beta_sq + nbar * epsilon * (beta_sq + 0.5);
}

}  // namespace

HomodyneStats stats(double nbar, double xi, double epsilon) {
  require(nbar, xi, epsilon, "stats");
  if (nbar == 0.0 || xi == 0.0 || epsilon == 0.0) {
    throw DomainError("stats: needs nbar, xi, epsilon > 0");
  }
  HomodyneStats s;
  const double beta = std::sqrt(0.5 * xi);
  s.sigma_dn_sq = sigma_sq(nbar, xi, epsilon);
  s.gamma = beta * std::sqrt(epsilon) *
            (1.0 + 1.0 / (nbar * epsilon) + 1.0 / xi);
  s.mean_gain = std::sqrt(1.0 - epsilon) / s.gamma;
  s.correlation_sq = epsilon * beta * beta * nbar / s.sigma_dn_sq;
  s.sigma_x_sq = (1.0 - epsilon) * nbar * (1.0 - s.correlation_sq);
  return s;
}

double displacement_gain(double nbar, double xi, double epsilon) {
  require(nbar, xi, epsilon, "displacement_gain");
  if (xi == 0.0 || epsilon == 0.0 || nbar == 0.0) return 0.0;
  return nbar * (1.0 - epsilon) / (1.0 + 1.0 / xi + 1.0 / (epsilon * nbar));
}

double gross_work(double nbar, double xi, double epsilon) {
  return displacement_gain(nbar, xi, epsilon) - xi;
}

OptimalParams optimize_scaled(double nbar, double c) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw DomainError("optimize: nbar must be finite and >= 0");
  }
  if (!(c > 0.0)) throw DomainError("optimize: scale must be positive");
  OptimalParams out;
  if (nbar <= c) return out;

  // With s = sqrt(n(1-eps)/c), the xi-optimum is xi = (s-1)/(1 + 1/(eps n))
  // and the reduced work (eps n/(eps n + 1))(s-1)^2 peaks where
  // c s (s-1) = a (a+1), a = eps n. Solved for ln a: a ~ sqrt(n) sits far
  // below n, where n - c s^2 would cancel.
  auto s_of = [&](double a) { return std::sqrt((nbar - a) / c); };
  auto condition = [&](double log_a) {
    const double a = std::exp(log_a);
    const double s = s_of(a);
    return c * s * (s - 1.0) - a * (a + 1.0);
  };
  const double span = nbar - c;
  const double a_lo = std::min(1e-3 * span, 0.5 * std::sqrt(span));
  // Within rounding of the threshold the work is unresolvable (and ~0).
  if (!(condition(std::log(a_lo)) > 0.0)) return out;
  const double a = std::exp(numeric::bisect(condition, std::log(a_lo), std::log(span)));
  const double s = s_of(a);
  out.epsilon = a / nbar;
  out.xi = (s - 1.0) / (1.0 + 1.0 / a);
  out.w_max = a / (a + 1.0) * (s - 1.0) * (s - 1.0);
  out.operational = out.w_max > 0.0;
  return out;
}

OptimalParams optimize(double nbar) { return optimize_scaled(nbar, 1.0); }

OptimalParams approximate_optimum(double nbar) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw DomainError("approximate_optimum: nbar must be finite and >= 0");
  }
  OptimalParams out;
  if (nbar <= 1.0) return out;
  const double root = std::sqrt(nbar - std::sqrt(nbar) + 1.0);
  out.epsilon = (root - 1.0) / nbar;
  out.xi = (std::sqrt(nbar * (1.0 - out.epsilon)) - 1.0) /
           (1.0 + 1.0 / (out.epsilon * nbar));
  out.w_max = (root - 1.0) * (root - 1.0) * (1.0 - 1.0 / std::sqrt(nbar));
  out.operational = out.w_max > 0.0;
  return out;
}

double mutual_information(double nbar, double xi, double epsilon) {
  require(nbar, xi, epsilon, "mutual_information");
  const double sig = sigma_sq(nbar, xi, epsilon);
  if (sig == 0.0) {
    if (nbar == 0.0 || epsilon == 0.0) return 0.0;
    throw DomainError("mutual_information: degenerate outcome variance");
  }
  const double rho_sq = epsilon * 0.5 * xi * nbar / sig;
  return -std::log1p(-rho_sq);
}

double detector_entropy(double nbar, double xi, double epsilon) {
  require(nbar, xi, epsilon, "detector_entropy");
  const double sig = sigma_sq(nbar, xi, epsilon);
  if (sig == 0.0) throw DomainError("detector_entropy: degenerate outcome variance");
  return 1.0 + std::log(kTwoPi * sig);
}

double entire_field_entropy(double nbar, double xi) {
  require(nbar, xi, 0.0, "entire_field_entropy");
  const double two_sigma_sq = xi + nbar * (xi + 1.0);
  if (two_sigma_sq == 0.0) {
    throw DomainError("entire_field_entropy: degenerate outcome variance");
  }
  return 1.0 + std::log(kPi * two_sigma_sq);
}

double entire_field_entropy_large_n(double nbar) {
  if (!(nbar > 0.0)) throw DomainError("entire_field_entropy_large_n: nbar must be > 0");
  const double r = std::sqrt(nbar);
  return 1.0 + std::log(kPi * (nbar * r + nbar + r));
}

WorkBudget budget(double nbar, double xi, double epsilon, double theta_d) {
  WorkBudget b;
  b.nbar = nbar;
  b.gross_work = displacement_gain(nbar, xi, epsilon);
  b.lo_cost = xi;
  b.feedforward_bound = theta_d * mutual_information(nbar, xi, epsilon);
  b.erasure_heat = theta_d * detector_entropy(nbar, xi, epsilon);
  return b;
}

}  // namespace wof::homodyne
