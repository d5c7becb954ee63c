#pragma once

// Reversible (isentropic) work extraction from one hot mode and N-1
// identical cold modes by adiabatic and isothermal frequency strokes.

namespace wof::reversible {

struct ModeEnsemble {
  int modes = 2;          // N >= 2
  double nbar_hot = 0.0;  // occupation of the single hot mode
  double nbar_cold = 0.0; // occupation of each of the N-1 cold modes

  void validate() const;
};

/// Works and heats of the two strokes, all "done on the system" in units of
/// hbar*omega. Cold-mode entries are totals over the N-1 cold modes.
struct StrokeDetail {
  double theta_common = 0.0;  // temperature reached at the end of stroke 1
  double omega_hot = 1.0;     // hot-mode frequency after stroke 1
  double omega_cold = 1.0;    // cold-mode frequency after stroke 1 (inf if nbar_cold = 0)
  double work_hot_adiabatic = 0.0;
  double work_cold_adiabatic = 0.0;
  double work_hot_isothermal = 0.0;
  double work_cold_isothermal = 0.0;
  double heat_released_hot = 0.0;   // Q_h, released by the hot mode in stroke 2
  double heat_absorbed_cold = 0.0;  // Q_c, absorbed by the cold modes in stroke 2

  double total_work() const {
    return work_hot_adiabatic + work_cold_adiabatic + work_hot_isothermal +
           work_cold_isothermal;
  }
};

struct ReversibleOutcome {
  double nbar_final = 0.0;
  double work = 0.0;        // extracted, n + (N-1) n_c - N n_f
  double efficiency = 0.0;  // work / nbar_hot
  StrokeDetail strokes;
};

/// Root of N S(n_f) = S(n) + (N-1) S(n_c), bracketed between the two input
/// occupations.
double solve_final_occupancy(const ModeEnsemble& ensemble);

ReversibleOutcome extract(const ModeEnsemble& ensemble);

/// N -> infinity efficiency in its classical form
/// 1 - (n_c/n)(1 + ln(n/n_c)); 1 for n_c = 0.
double efficiency_infinite_modes(double nbar_hot, double nbar_cold);

/// Exact N -> infinity limit of the entropy balance for quantum occupations:
/// the cold reservoir absorbs entropy at fixed slope ln(1 + 1/n_c), giving
/// W = n - n_c - (S(n) - S(n_c)) / ln(1 + 1/n_c). Reduces to the classical
/// form when n, n_c >> 1.
double efficiency_infinite_modes_exact(double nbar_hot, double nbar_cold);

}  // namespace wof::reversible
