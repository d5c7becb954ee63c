#pragma once

// Small numerical toolkit shared by the work-extraction modules: bracketed
// root finding, golden-section search, composite Gauss-Legendre quadrature
// and Shannon entropies.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wof {

/// Raised when an argument lies outside the domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an iterative procedure (root bracket, cutoff, quadrature)
/// fails to meet its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

namespace numeric {

/// Bisection on a bracket [lo, hi] where f changes sign. Stops when the
/// bracket can no longer shrink or after `max_iter` halvings.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              int max_iter = 200);

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Returns the abscissa; terminates when the bracket is below `tol`
/// relative to its midpoint magnitude (absolute below 1).
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol = 1e-10);

std::vector<double> linspace(double first, double last, std::size_t count);
std::vector<double> logspace(double first, double last, std::size_t count);

/// -sum p ln p in nats; zero entries contribute nothing.
double shannon_entropy(std::span<const double> probs);

/// Binary entropy -q ln q - (1-q) ln(1-q) in nats.
double binary_entropy(double q);

/// Pairwise summation; the result depends only on the order of `values`.
double pairwise_sum(std::span<const double> values);

/// Composite Gauss-Legendre rule on [a, b] with `panels` equal panels and
/// an order-20 rule per panel.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels);

/// Composite tensor-product Gauss-Legendre over [a, b] x [c, d].
/// `workers` > 1 evaluates panels with OpenMP; the panel sums are reduced
/// in a fixed order so the result does not depend on the worker count.
double integrate_2d(const std::function<double(double, double)>& f, double a,
                    double b, double c, double d, int panels, int workers = 1);

struct AdaptiveResult {
  double value;
  double error_estimate;
  int panels;
};

/// Doubles the panel count of `integrate_2d` until successive estimates
/// differ by less than `tol` (absolute). Throws NumericError otherwise.
AdaptiveResult integrate_2d_adaptive(
    const std::function<double(double, double)>& f, double a, double b,
    double c, double d, double tol, int workers = 1, int max_panels = 512);

}  // namespace numeric
}  // namespace wof
