#pragma once

// Work by observation and feedforward (WOF) from photocounting the
// reflected fraction of a thermal beam split on a beam splitter of
// transmissivity kappa^2. The transmitted beam, conditioned on m counts,
// is diagonal in the Fock basis; work comes from the permutation that
// sorts its populations into a passive order.

#include <span>
#include <vector>

#include "wof/budget.hpp"

namespace wof::photocount {

/// Measurement configuration shared by the photocount and homodyne schemes.
struct SplitterTap {
  double kappa_sq = 1.0;  // transmissivity, 0 < kappa^2 <= 1
  double beta = 0.0;      // local-oscillator amplitude (homodyne only)

  void validate() const;
  double reflectivity() const { return 1.0 - kappa_sq; }
};

/// Transmitted-mode Fock populations p(n|m), n = 0..size-1, after m counts.
struct ConditionalFockState {
  std::vector<double> probs;
  int outcome_m = 0;
  double nbar_in = 0.0;
  double kappa_sq = 1.0;
  double truncation_mass = 0.0;  // 1 - sum(probs)

  /// Sum_n n p(n|m), in units of hbar*omega.
  double mean_energy() const;
};

/// Geometric law of reflected counts with mean (1-kappa^2) nbar.
double reflected_count_probability(double nbar, double kappa_sq, int m);

/// p(n|m) from log-gamma evaluation of the exact negative-binomial form.
double conditional_probability(double nbar, double kappa_sq, int n, int m);

/// Same quantity with the binomial coefficient replaced by its Stirling
/// approximation; requires n, m >= 1.
double conditional_probability_stirling(double nbar, double kappa_sq, int n,
                                        int m);

/// Builds p(n|m) with the cutoff grown until a geometric bound on the
/// missing mass is below `mass_tol`. Throws NumericError if the cutoff
/// exceeds `max_levels`.
ConditionalFockState conditional_distribution(double nbar, double kappa_sq,
                                              int m, double mass_tol = 1e-9,
                                              int max_levels = 50'000'000);

/// Closed form (1+m) kappa^2 nbar / (1 + (1-kappa^2) nbar).
double conditional_mean_energy(double nbar, double kappa_sq, int m);

/// g2(0) = 1 + 1/(1+m), independent of nbar and kappa^2.
double g2_zero(int m);

/// g2(0) = sum n(n-1) p(n|m) / (sum n p(n|m))^2 by direct summation.
double g2_zero_direct(const ConditionalFockState& state);

/// True iff populations are non-increasing in n (ties allowed).
bool is_passive(std::span<const double> probs);

/// Energy of the passive rearrangement: populations sorted descending,
/// paired with the ascending ladder E_k = k.
double passive_energy(std::span<const double> probs);

/// W_m = E_m - E'_m for a diagonal state.
double passivize_work(const ConditionalFockState& state);

/// W = sum_m p_m W_m. The m-sum stops once the geometric tail bound of the
/// remaining terms falls below 1e-10 of the accumulated work.
double average_work(double nbar, double kappa_sq, int workers = 1);

/// Detector record entropy -sum p_m ln p_m in closed form, S((1-kappa^2) nbar).
double detector_entropy(double nbar, double kappa_sq);

/// Same quantity by direct summation of the count distribution.
double detector_entropy_direct(double nbar, double kappa_sq);

/// I = S(p(m)) - sum_n p(n) S(Binomial(n, 1-kappa^2)), nats.
double mutual_information(double nbar, double kappa_sq, int workers = 1);

/// Budget at detector temperature theta_D (no local oscillator).
WorkBudget budget(double nbar, double kappa_sq, double theta_d, int workers = 1);

/// Glauber-Sudarshan density of the transmitted mode conditioned on m
/// counts, as a density in the quadratures (x, p) with alpha = (x+ip)/sqrt(2):
/// integrates to 1 over the plane.
double conditional_p_density(double nbar, double kappa_sq, int m, double x,
                             double p);

struct PhasePoint {
  double x;
  double p;
  double density;
};

/// conditional_p_density on the tensor grid xs x ps (row-major in xs).
std::vector<PhasePoint> p_distribution_grid(double nbar, double kappa_sq, int m,
                                            std::span<const double> xs,
                                            std::span<const double> ps);

}  // namespace wof::photocount
