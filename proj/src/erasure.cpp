#include "wof/erasure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wof/numeric.hpp"
#include "wof/thermo.hpp"

namespace wof::erasure {

Scheme parse_scheme(std::string_view name) {
  if (name == "entire-energy") return Scheme::entire_energy;
  if (name == "photocount-small") return Scheme::photocount_small;
  if (name == "homodyne-small") return Scheme::homodyne_small;
  if (name == "homodyne-entire") return Scheme::homodyne_entire_field;
  throw DomainError("unknown erasure scheme: " + std::string(name));
}

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::entire_energy:
      return "entire-energy";
    case Scheme::photocount_small:
      return "photocount-small";
    case Scheme::homodyne_small:
      return "homodyne-small";
    case Scheme::homodyne_entire_field:
      return "homodyne-entire";
  }
  return "?";
}

double td_bound(Scheme scheme, double nbar) {
  if (!(nbar > 0.0) || !std::isfinite(nbar)) {
    throw DomainError("td_bound: nbar must be finite and > 0");
  }
  const double ln_n = std::log(nbar);
  switch (scheme) {
    case Scheme::entire_energy:
      return nbar / (1.0 + ln_n);
    case Scheme::photocount_small:
      return 2.0 * nbar / (2.0 + ln_n);
    case Scheme::homodyne_small:
      return nbar / (1.0 + std::log(kPi * nbar));
    case Scheme::homodyne_entire_field:
      return nbar / (1.0 + std::log(kPi) + 1.5 * ln_n);
  }
  throw DomainError("td_bound: unknown scheme");
}

double nbar_threshold_form(double nbar_d) {
  if (!(nbar_d > 0.0) || !std::isfinite(nbar_d)) {
    throw DomainError("nbar_threshold_form: nbar_D must be finite and > 0");
  }
  return nbar_d + 1.0 / (1.0 - std::log(nbar_d) / std::log1p(nbar_d));
}

double detector_heating(double nbar, double kappa_sq, double beta) {
  if (!(nbar >= 0.0) || !(kappa_sq > 0.0) || kappa_sq > 1.0 || !(beta >= 0.0)) {
    throw DomainError("detector_heating: invalid parameters");
  }
  return (1.0 - kappa_sq) * nbar / 4.0 + beta * beta / 2.0;
}

double entropy_increase(double nbar_d, double delta_nbar_d, bool literal_form) {
  if (!(nbar_d >= 0.0) || !(delta_nbar_d >= 0.0)) {
    throw DomainError("entropy_increase: occupations must be >= 0");
  }
  const double after = thermo::entropy(nbar_d + delta_nbar_d);
  const double before = thermo::entropy(nbar_d);
  return literal_form ? 4.0 * after - before : 4.0 * (after - before);
}

double entropy_increase_large_n(double delta_nbar_d) {
  if (!(delta_nbar_d > 0.0)) {
    throw DomainError("entropy_increase_large_n: heating must be > 0");
  }
  return 1.0 + std::log(delta_nbar_d);
}

double information_large_n(double nbar) {
  if (!(nbar > 0.0)) throw DomainError("information_large_n: nbar must be > 0");
  return 0.5 * std::log(nbar / 4.0);
}

void DetectorBank::validate() const {
  if (count < 1) throw DomainError("DetectorBank: count must be >= 1");
  if (!(nbar_d >= 0.0) || !(theta_d >= 0.0) || !(delta_nbar_d >= 0.0)) {
    throw DomainError("DetectorBank: occupations and temperature must be >= 0");
  }
  const double expected = thermo::temperature(nbar_d);
  if (std::abs(expected - theta_d) > 1e-9 * std::max(1.0, theta_d)) {
    throw DomainError("DetectorBank: nbar_d inconsistent with theta_d");
  }
}

DetectorBank DetectorBank::at_temperature(int count, double theta_d,
                                          double delta_nbar_d) {
  DetectorBank bank;
  bank.count = count;
  bank.theta_d = theta_d;
  bank.nbar_d = theta_d > 0.0 ? thermo::nbar_of_temperature(theta_d) : 0.0;
  bank.delta_nbar_d = delta_nbar_d;
  bank.validate();
  return bank;
}

ResetLedger optimal_reset(double nbar_d, double omega, double theta_d) {
  if (!(nbar_d > 0.0) || !(omega > 0.0) || !(theta_d > 0.0) ||
      !std::isfinite(nbar_d) || !std::isfinite(theta_d)) {
    throw DomainError("optimal_reset: need nbar_D, omega, theta_D > 0");
  }
  ResetLedger r;
  r.omega_prime = theta_d * std::log1p(1.0 / nbar_d);
  r.w1 = 4.0 * (omega - r.omega_prime) * nbar_d;
  r.w2 = 4.0 * theta_d * std::log1p(nbar_d);
  r.w3 = 0.0;
  r.q_d = 4.0 * theta_d * thermo::entropy(nbar_d);
  r.w_r = r.w2 - r.w1;
  return r;
}

double reset_breakeven(double omega, double theta_d) {
  const double ratio = omega / theta_d;
  if (!(omega > 0.0) || !(theta_d > 0.0) || !std::isfinite(ratio) || ratio == 0.0) {
    throw DomainError("reset_breakeven: omega/theta_D must be finite and > 0");
  }
  auto w_r = [&](double n) { return optimal_reset(n, omega, theta_d).w_r; };
  const double lo = std::max(1.0 / std::expm1(ratio), 1e-300);
  double hi = 2.0 * lo + 1.0;
  for (int i = 0; w_r(hi) >= 0.0; ++i) {
    if (i > 200) throw NumericError("reset_breakeven: no sign change found");
    hi *= 2.0;
  }
  return numeric::bisect(w_r, lo, hi);
}

}  // namespace wof::erasure
