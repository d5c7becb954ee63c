#pragma once

// Homodyne WOF with finite detector resolution: count differences are only
// known up to blocks of width R. The sign measurement is the two-block
// extreme, where only the quadrant of (dn_x, dn_p) is recorded.

#include <array>

#include "wof/budget.hpp"
#include "wof/homodyne.hpp"

namespace wof::coarse_sign {

/// P(mu + (M - 1/2) R <= X < mu + (M + 1/2) R) for X ~ N(mu, sigma^2).
/// R = +inf collapses everything into block 0.
double block_probability(double mu, double sigma, double resolution, int block);

/// Largest |M| resolved by coarse_gain, about 9 sigma out; the outermost
/// blocks absorb the tails.
int block_range(double sigma, double resolution);

/// Displacement gain when each axis is resolved into blocks of width R:
/// sum over blocks of p_M <x>_M^2, both axes together.
double coarse_gain(double nbar, double xi, double epsilon, double resolution);

/// coarse_gain - xi.
double coarse_work(double nbar, double xi, double epsilon, double resolution);

struct QuadrantWork {
  double w_pp = 0.0;
  double w_pm = 0.0;
  double w_mp = 0.0;
  double w_mm = 0.0;
  double total_gross = 0.0;
  double lo_cost = 0.0;
  double net = 0.0;
};

/// Sign-scheme work with quadrant works (kappa^2 / (16 gamma^2)) (2 sigma^2 / pi).
/// The total gross work equals the fine-grained gain divided by 2 pi.
QuadrantWork sign_work(double nbar, double xi, double epsilon);

/// Gain obtained by displacing each quadrant by its exact conditional mean
/// <x>_+ = (kappa / gamma) sigma sqrt(2/pi); equals (2/pi) times the
/// fine-grained gain.
double sign_gain_bayes(double nbar, double xi, double epsilon);

/// Exact maximiser of sign_work(...).net.
homodyne::OptimalParams optimize_sign(double nbar);

/// Closed forms: eps = (sqrt(n - sqrt(2 pi n) + 1) - 1)/n,
/// xi = (sqrt(n(1-eps)/(2 pi)) - 1)/(1 + 1/(eps n)); w_max is the net sign
/// work there.
homodyne::OptimalParams approximate_sign_optimum(double nbar);

/// Large-nbar net work (n - 2(1 + sqrt(2 pi)) sqrt(n) + 1 + sqrt(2 pi)) / (2 pi).
double sign_work_large_n(double nbar);

/// Quadrant probabilities {++, +-, -+, --} given the input point (x, p).
std::array<double, 4> quadrant_probabilities(double x, double p, double xi,
                                             double epsilon);

struct SignInformation {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

/// I = ln 4 - E_P[H(quadrant | x, p)] by adaptive 2-D quadrature over the
/// thermal P-distribution. Throws NumericError above `tol`.
SignInformation sign_mutual_information(double nbar, double xi, double epsilon,
                                        double tol = 1e-6, int workers = 1);

/// Always ln 4.
double sign_detector_entropy();

WorkBudget sign_budget(double nbar, double xi, double epsilon, double theta_d,
                       int workers = 1);

}  // namespace wof::coarse_sign
