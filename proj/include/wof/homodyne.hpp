#pragma once

// Small-fraction homodyne WOF. A fraction epsilon = 1 - kappa^2 of the beam
// is reflected into an eight-port homodyne detector driven by a local
// oscillator of energy xi = 2 beta^2; the count differences (dn_x, dn_p)
// fix a displacement of the transmitted beam.

#include "wof/budget.hpp"

namespace wof::homodyne {

/// Outcome statistics per quadrature axis in the Gaussian (large-count)
/// approximation.
struct HomodyneStats {
  double sigma_dn_sq = 0.0;  // Var(dn_x) = beta^2 + nbar eps (beta^2 + 1/2)
  double gamma = 0.0;        // <x> = kappa dn_x / gamma
  double sigma_x_sq = 0.0;   // conditional P-variance of the transmitted x
  double mean_gain = 0.0;    // kappa / gamma
  double correlation_sq = 0.0;  // squared correlation of x and dn_x
};

HomodyneStats stats(double nbar, double xi, double epsilon);

/// n(1-eps) / (1 + 1/xi + 1/(eps n)); zero at xi = 0 or eps = 0.
double displacement_gain(double nbar, double xi, double epsilon);

/// displacement_gain - xi.
double gross_work(double nbar, double xi, double epsilon);

struct OptimalParams {
  double xi = 0.0;
  double epsilon = 0.0;
  double w_max = 0.0;
  bool operational = false;  // false when no (xi, eps) gives positive work
};

/// Exact maximiser of gain / c - xi over (xi, eps). c = 1 is the
/// fine-grained scheme. Operational iff nbar > c.
OptimalParams optimize_scaled(double nbar, double c);

/// optimize_scaled(nbar, 1).
OptimalParams optimize(double nbar);

/// Closed forms from the small-eps expansion:
/// eps = (sqrt(n - sqrt(n) + 1) - 1)/n, xi = (sqrt(n(1-eps)) - 1)/(1 + 1/(eps n)),
/// W = (sqrt(n - sqrt(n) + 1) - 1)^2 (1 - 1/sqrt(n)).
OptimalParams approximate_optimum(double nbar);

/// Gaussian mutual information between input quadratures and both count
/// differences, -ln(1 - rho^2), nats.
double mutual_information(double nbar, double xi, double epsilon);

/// Record entropy of the two count differences, 1 + ln(2 pi sigma^2).
double detector_entropy(double nbar, double xi, double epsilon);

/// Record entropy when the whole field is homodyned:
/// 1 + ln(pi (xi + nbar (xi + 1))).
double entire_field_entropy(double nbar, double xi);

/// Large-nbar form at xi = sqrt(nbar): 1 + ln(pi (n sqrt(n) + n + sqrt(n))).
double entire_field_entropy_large_n(double nbar);

WorkBudget budget(double nbar, double xi, double epsilon, double theta_d);

}  // namespace wof::homodyne
