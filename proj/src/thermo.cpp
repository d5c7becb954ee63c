#include "wof/thermo.hpp"

#include <cmath>
#include <limits>

#include "wof/numeric.hpp"

namespace wof::thermo {

namespace {

void require_nbar(double nbar, const char* where) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw DomainError(std::string(where) + ": nbar must be finite and >= 0");
  }
}

void require_omega(double omega, const char* where) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError(std::string(where) + ": omega must be finite and > 0");
  }
}

}  // namespace

void OscillatorMode::validate() const {
  require_nbar(nbar, "OscillatorMode");
  require_omega(omega, "OscillatorMode");
}

double entropy(double nbar) {
  require_nbar(nbar, "entropy");
  if (nbar == 0.0) return 0.0;
  // ln(1+n) + n ln(1+1/n): no cancellation at large n, and the tiny-n
  // branch n(1 - ln n) + n^2/2 avoids 0*ln 0 noise.
  if (nbar < 1e-8) return nbar * (1.0 - std::log(nbar)) + 0.5 * nbar * nbar;
  return std::log1p(nbar) + nbar * std::log1p(1.0 / nbar);
}

double entropy_derivative(double nbar) {
  require_nbar(nbar, "entropy_derivative");
  if (nbar == 0.0) return std::numeric_limits<double>::infinity();
  return std::log1p(1.0 / nbar);
}

double temperature(double nbar, double omega) {
  require_nbar(nbar, "temperature");
  require_omega(omega, "temperature");
  if (nbar == 0.0) return 0.0;
  return omega / std::log1p(1.0 / nbar);
}

double nbar_of_temperature(double theta, double omega) {
  require_omega(omega, "nbar_of_temperature");
  if (!(theta >= 0.0)) {
    throw DomainError("nbar_of_temperature: theta must be >= 0");
  }
  if (theta == 0.0) return 0.0;
  if (std::isinf(theta)) return std::numeric_limits<double>::infinity();
  return 1.0 / std::expm1(omega / theta);
}

double partition_function(double nbar) {
  require_nbar(nbar, "partition_function");
  return nbar + 1.0;
}

double free_energy(double nbar, double omega) {
  require_nbar(nbar, "free_energy");
  require_omega(omega, "free_energy");
  if (nbar == 0.0) return 0.0;
  return -temperature(nbar, omega) * std::log1p(nbar);
}

double pressure(double nbar) {
  require_nbar(nbar, "pressure");
  return nbar;
}

WorkHeat isothermal_work(double nbar1, double omega1, double omega2) {
  require_nbar(nbar1, "isothermal_work");
  require_omega(omega1, "isothermal_work");
  require_omega(omega2, "isothermal_work");
  if (omega1 == omega2 || nbar1 == 0.0) return {0.0, 0.0};
  const double theta = temperature(nbar1, omega1);
  const double nbar2 = nbar_of_temperature(theta, omega2);
  const double work = free_energy(nbar2, omega2) - free_energy(nbar1, omega1);
  const double heat = theta * (entropy(nbar2) - entropy(nbar1));
  return {work, heat};
}

WorkHeat compress_to_infinity(double nbar, double omega) {
  require_nbar(nbar, "compress_to_infinity");
  require_omega(omega, "compress_to_infinity");
  if (nbar == 0.0) return {0.0, 0.0};
  const double w = -free_energy(nbar, omega);
  return {w, -(omega * nbar + w)};
}

}  // namespace wof::thermo
