#pragma once

// Thermodynamics of a single harmonic-oscillator mode in thermal
// equilibrium. All energies are in units of hbar*omega_0, entropies in
// units of k_B and temperatures as theta = k_B T / (hbar omega_0); `omega`
// is the mode frequency in units of omega_0 (default 1).

namespace wof::thermo {

struct OscillatorMode {
  double nbar = 0.0;
  double omega = 1.0;

  /// Throws DomainError unless nbar >= 0 and omega > 0.
  void validate() const;
};

/// S(nbar) = (nbar+1) ln(nbar+1) - nbar ln nbar; S(0) = 0.
double entropy(double nbar);

/// dS/dnbar = ln(1 + 1/nbar); +inf at nbar = 0.
double entropy_derivative(double nbar);

/// theta = omega / ln(1 + 1/nbar). Returns exactly 0 for nbar = 0 (the
/// zero-temperature limit, unreachable for any positive nbar).
double temperature(double nbar, double omega = 1.0);

/// Inverse of `temperature`: nbar = 1 / (exp(omega/theta) - 1).
double nbar_of_temperature(double theta, double omega = 1.0);

/// Z = nbar + 1.
double partition_function(double nbar);

/// F = -theta ln Z = -omega ln(1+nbar) / ln(1+1/nbar); F(0) = 0.
double free_energy(double nbar, double omega = 1.0);

/// Generalised pressure (dF/domega)_T = nbar, in units of hbar.
double pressure(double nbar);

struct WorkHeat {
  double work;  // work done on the mode
  double heat;  // heat entering the mode
};

/// Isothermal frequency change omega1 -> omega2 at the temperature fixed by
/// (nbar1, omega1). Work is the free-energy difference, heat theta*dS.
WorkHeat isothermal_work(double nbar1, double omega1, double omega2);

/// Isothermal compression omega -> infinity. W + Q = -omega*nbar.
WorkHeat compress_to_infinity(double nbar, double omega = 1.0);

}  // namespace wof::thermo
