#pragma once

// Cost of resetting the detectors that hold the measurement record, and
// the three-step protocol that resets them at minimal work.

#include <string_view>

namespace wof::erasure {

enum class Scheme {
  entire_energy,         // photocount the whole beam
  photocount_small,      // photocount a small reflected fraction
  homodyne_small,        // homodyne a small reflected fraction
  homodyne_entire_field  // homodyne the whole beam
};

Scheme parse_scheme(std::string_view name);
std::string_view scheme_name(Scheme scheme);

/// Largest detector temperature theta_D for positive net efficiency,
/// large-nbar forms.
double td_bound(Scheme scheme, double nbar);

/// n_D + 1 / (1 - ln n_D / ln(n_D + 1)).
double nbar_threshold_form(double nbar_d);

/// Mean quanta added to each of the four homodyne detectors,
/// (1 - kappa^2) nbar / 4 + beta^2 / 2.
double detector_heating(double nbar, double kappa_sq, double beta);

/// 4 [S(n_D + dn) - S(n_D)]. With `literal_form`, 4 S(n_D + dn) - S(n_D).
double entropy_increase(double nbar_d, double delta_nbar_d,
                        bool literal_form = false);

/// Per-detector large-nbar entropy 1 + ln(dn).
double entropy_increase_large_n(double delta_nbar_d);

/// (1/2) ln(nbar / 4).
double information_large_n(double nbar);

struct DetectorBank {
  int count = 4;
  double nbar_d = 0.0;
  double theta_d = 0.0;
  double delta_nbar_d = 0.0;

  /// Throws unless count >= 1, occupations >= 0 and nbar_d matches theta_d.
  void validate() const;
  static DetectorBank at_temperature(int count, double theta_d,
                                     double delta_nbar_d = 0.0);
};

/// Works "on the detectors" for the four-detector reset, units of hbar omega.
struct ResetLedger {
  double omega_prime = 0.0;  // frequency at which detectors reach theta_D
  double w1 = 0.0;           // recovered by the adiabatic step omega -> omega'
  double w2 = 0.0;           // spent compressing isothermally to infinity
  double w3 = 0.0;           // returning empty modes to omega: always 0
  double q_d = 0.0;          // heat dumped at theta_D
  double w_r = 0.0;          // w2 - w1
};

ResetLedger optimal_reset(double nbar_d, double omega, double theta_d);

/// n_D at which w_r = 0, i.e. S(n_D)/n_D = omega/theta_D. The root lies
/// above the ambient occupation 1/(exp(omega/theta_D) - 1).
double reset_breakeven(double omega, double theta_d);

}  // namespace wof::erasure
