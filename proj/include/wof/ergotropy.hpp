#pragma once

// Ergotropy and passive states of finite-dimensional systems, the
// non-selective-measurement (NSM) no-go check on a split thermal beam, and
// the NSM-driven four-stroke engine.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wof::ergotropy {

using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr int kMaxDimension = 64;

/// Throws DomainError unless rho is Hermitian and unit-trace to 1e-12 with
/// eigenvalues >= -1e-12.
void validate_density(const Matrix& rho);

Matrix diagonal_state(const std::vector<double>& populations);
Matrix hamiltonian(const std::vector<double>& energies);

/// Tr(rho H) - sum_k r_k E_k with r descending and E ascending.
double ergotropy(const Matrix& rho, const Matrix& h);
double ergotropy(const Matrix& rho, const std::vector<double>& energies);

/// sum_k r_k |E_k><E_k|, expressed in the basis of the inputs.
Matrix passive_state(const Matrix& rho, const Matrix& h);

double von_neumann_entropy(const Matrix& rho);

struct GaussianStateSummary {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.5;
  double var_p = 0.5;
};

/// (<x>^2 + <p>^2) / 2.
double displacement_ergotropy(const GaussianStateSummary& s);

struct KrausSet {
  std::vector<Matrix> ops;

  int dimension() const;
  /// Throws unless sum_j M_j^dag M_j = 1 to `tol`.
  void validate(double tol = 1e-10) const;
};

/// Projectors onto the columns of a unitary.
KrausSet projective_kraus(const Matrix& basis);

Matrix apply_kraus(const Matrix& rho, const KrausSet& kraus);

/// T_mn = sum_j |<m|M_j|n>|^2.
RealMatrix transition_matrix(const KrausSet& kraus);

std::vector<double> gibbs_populations(const std::vector<double>& energies,
                                      double theta);

/// Entropy and energy of the Gibbs state at theta; theta = inf is uniform.
double thermal_entropy(const std::vector<double>& energies, double theta);
double thermal_energy(const std::vector<double>& energies, double theta);

struct CycleReport {
  double w1 = 0.0;   // stroke I, work on the system
  double q_m = 0.0;  // heat imparted by the measurement
  double w2 = 0.0;   // stroke II, work on the system
  double efficiency = 0.0;  // -(w1 + w2) / q_m
  std::vector<double> p_nsm;
  RealMatrix transition;
  Matrix rho_nsm;
  double entropy_nsm = 0.0;
  double theta_prime = 0.0;  // Gibbs temperature with S equal to S(rho_nsm)
  double delta_w_nsm = 0.0;  // E(rho_nsm) - E(theta')
  double eta_carnot = 0.0;   // 1 - theta_c / theta_m
  double eta_max = 0.0;
  bool driven = false;       // q_m > 0
};

/// Kraus operators act in the shared eigenbasis of H_i and H_f.
CycleReport nsm_cycle(const std::vector<double>& energies_i,
                      const std::vector<double>& energies_f,
                      const std::vector<double>& p_eq, const KrausSet& kraus,
                      double theta_c, double theta_m);

struct NsmConfig {
  std::vector<double> energies_i;
  std::vector<double> energies_f;
  double theta_hot = 1.0;
  double theta_c = 0.5;
  double theta_m = 2.0;
  std::vector<double> p_eq;  // Gibbs(H_i, theta_hot) unless given
  KrausSet kraus;
};

/// JSON object with keys energies_initial, energies_final, theta_hot,
/// theta_cold, theta_m, optional populations, and kraus: a list of
/// {"re": [[...]], "im": [[...]]} matrices ("im" optional).
NsmConfig parse_nsm_config(const std::string& json_text);

/// Outcome probabilities p(i | x, p) of a measurement on the reflected beam.
struct Povm {
  std::string name;
  std::function<std::vector<double>(double x, double p)> probabilities;
};

enum class PovmFamily { photocount, sign, identity };

PovmFamily parse_povm_family(const std::string& name);

/// Photocount: Poisson counts of (1 - kappa^2)|alpha|^2, truncated where the
/// tail bound is below 1e-16 of the accumulated mass. Sign: quadrants of the homodyne record with LO
/// energy xi. Identity: a single outcome.
Povm make_povm(PovmFamily family, double kappa_sq, double xi = 1.0);

struct MomentCheck {
  double value = 0.0;
  double std_error = 0.0;
  double expected = 0.0;
  double z() const;
};

struct NoGoReport {
  std::size_t n_samples = 0;
  std::size_t outcomes_seen = 0;
  double completeness_error = 0.0;
  MomentCheck mean_x, mean_p, var_x, var_p, energy;
  double ergotropy = 0.0;        // displacement ergotropy of averaged means
  double ergotropy_bound = 0.0;  // same quantity at 4 standard errors
  double selective_ergotropy = 0.0;  // sum_i p_i ergotropy of outcome i's means
  bool consistent(double z_max = 4.0) const;
};

/// Samples alpha from the thermal P-distribution, an outcome from the POVM,
/// and accumulates the transmitted amplitude kappa alpha per outcome; the
/// outcome-averaged ensemble is compared with Gibbs(kappa^2 nbar).
NoGoReport nsm_no_go_check(double nbar, double kappa_sq, const Povm& povm,
                           std::size_t n_samples, std::uint64_t seed,
                           int workers = 1);

}  // namespace wof::ergotropy
