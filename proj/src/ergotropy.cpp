#include "wof/ergotropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "wof/coarse_sign.hpp"
#include "wof/mc_oracle.hpp"
#include "wof/numeric.hpp"

namespace wof::ergotropy {

namespace {

constexpr double kEigenFloor = -1e-12;

void require_dimension(Eigen::Index d, const char* where) {
  if (d < 1 || d > kMaxDimension) {
    throw DomainError(std::string(where) + ": dimension must lie in [1, 64]");
  }
}

// Eigenvalues of a density matrix, clipped at kEigenFloor and renormalised.
Eigen::VectorXd clipped_spectrum(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  Eigen::VectorXd r = es.eigenvalues();
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r[i] < kEigenFloor) throw DomainError("density matrix has negative eigenvalue");
    r[i] = std::max(r[i], 0.0);
  }
  return r / r.sum();
}

double shifted_min(const std::vector<double>& e) {
  return *std::min_element(e.begin(), e.end());
}

}  // namespace

void validate_density(const Matrix& rho) {
  require_dimension(rho.rows(), "validate_density");
  if (rho.rows() != rho.cols()) throw DomainError("density matrix must be square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("density matrix must be Hermitian");
  }
  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-12) {
    throw DomainError("density matrix must have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kEigenFloor) {
    throw DomainError("density matrix has negative eigenvalue");
  }
}

Matrix diagonal_state(const std::vector<double>& populations) {
  Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(populations.size()),
                            static_cast<Eigen::Index>(populations.size()));
  for (std::size_t i = 0; i < populations.size(); ++i) {
    rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = populations[i];
  }
  return rho;
}

Matrix hamiltonian(const std::vector<double>& energies) {
  return diagonal_state(energies);
}

double ergotropy(const Matrix& rho, const Matrix& h) {
  validate_density(rho);
  if (h.rows() != rho.rows() || h.cols() != rho.cols()) {
    throw DomainError("ergotropy: dimension mismatch");
  }
  const Eigen::VectorXd r = clipped_spectrum(rho);  // ascending
  Eigen::SelfAdjointEigenSolver<Matrix> eh(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& e = eh.eigenvalues();       // ascending
  const Eigen::Index d = r.size();
  double passive = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) passive += r[d - 1 - k] * e[k];
  const double energy = (rho * h).trace().real();
  return std::max(0.0, energy - passive);
}

double ergotropy(const Matrix& rho, const std::vector<double>& energies) {
  return ergotropy(rho, hamiltonian(energies));
}

Matrix passive_state(const Matrix& rho, const Matrix& h) {
  validate_density(rho);
  if (h.rows() != rho.rows()) throw DomainError("passive_state: dimension mismatch");
  const Eigen::VectorXd r = clipped_spectrum(rho);
  Eigen::SelfAdjointEigenSolver<Matrix> eh(h);
  const Eigen::Index d = r.size();
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const auto v = eh.eigenvectors().col(k);
    out += r[d - 1 - k] * v * v.adjoint();
  }
  return out;
}

double von_neumann_entropy(const Matrix& rho) {
  validate_density(rho);
  const Eigen::VectorXd r = clipped_spectrum(rho);
  std::vector<double> probs(r.data(), r.data() + r.size());
  return numeric::shannon_entropy(probs);
}

double displacement_ergotropy(const GaussianStateSummary& s) {
  if (s.var_x < 0.0 || s.var_p < 0.0) {
    throw DomainError("displacement_ergotropy: negative variance");
  }
  return 0.5 * (s.mean_x * s.mean_x + s.mean_p * s.mean_p);
}

int KrausSet::dimension() const {
  return ops.empty() ? 0 : static_cast<int>(ops.front().rows());
}

void KrausSet::validate(double tol) const {
  if (ops.empty()) throw DomainError("KrausSet: no operators");
  const Eigen::Index d = ops.front().rows();
  require_dimension(d, "KrausSet");
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& m : ops) {
    if (m.rows() != d || m.cols() != d) throw DomainError("KrausSet: mixed dimensions");
    sum += m.adjoint() * m;
  }
  const double err = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > tol) {
    throw DomainError("KrausSet: completeness violated by " + std::to_string(err));
  }
}

KrausSet projective_kraus(const Matrix& basis) {
  KrausSet k;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const auto v = basis.col(j);
    k.ops.push_back(v * v.adjoint());
  }
  return k;
}

Matrix apply_kraus(const Matrix& rho, const KrausSet& kraus) {
  kraus.validate();
  if (rho.rows() != kraus.dimension()) throw DomainError("apply_kraus: dimension mismatch");
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& m : kraus.ops) out += m * rho * m.adjoint();
  return out;
}

RealMatrix transition_matrix(const KrausSet& kraus) {
  kraus.validate();
  const Eigen::Index d = kraus.dimension();
  RealMatrix t = RealMatrix::Zero(d, d);
  for (const auto& m : kraus.ops) t += m.cwiseAbs2();
  return t;
}

std::vector<double> gibbs_populations(const std::vector<double>& energies,
                                      double theta) {
  if (energies.empty()) throw DomainError("gibbs_populations: empty spectrum");
  if (!(theta > 0.0)) throw DomainError("gibbs_populations: theta must be > 0");
  const double e0 = shifted_min(energies);
  std::vector<double> p(energies.size());
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::isinf(theta) ? 1.0 : std::exp(-(energies[i] - e0) / theta);
    z += p[i];
  }
  for (auto& v : p) v /= z;
  return p;
}

double thermal_entropy(const std::vector<double>& energies, double theta) {
  return numeric::shannon_entropy(gibbs_populations(energies, theta));
}

double thermal_energy(const std::vector<double>& energies, double theta) {
  const auto p = gibbs_populations(energies, theta);
  double e = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) e += p[i] * energies[i];
  return e;
}

CycleReport nsm_cycle(const std::vector<double>& energies_i,
                      const std::vector<double>& energies_f,
                      const std::vector<double>& p_eq, const KrausSet& kraus,
                      double theta_c, double theta_m) {
  kraus.validate();
  const auto d = static_cast<std::size_t>(kraus.dimension());
  if (energies_i.size() != d || energies_f.size() != d || p_eq.size() != d) {
    throw DomainError("nsm_cycle: dimension mismatch");
  }
  double total = 0.0;
  for (double p : p_eq) {
    if (p < 0.0) throw DomainError("nsm_cycle: negative population");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("nsm_cycle: populations not normalised");
  if (!(theta_c > 0.0) || !(theta_m > 0.0)) {
    throw DomainError("nsm_cycle: temperatures must be > 0");
  }

  CycleReport r;
  r.transition = transition_matrix(kraus);
  r.p_nsm.assign(d, 0.0);
  for (std::size_t n = 0; n < d; ++n) {
    r.w1 += (energies_f[n] - energies_i[n]) * p_eq[n];
    for (std::size_t m = 0; m < d; ++m) {
      const double t = r.transition(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
      r.q_m += (energies_f[m] - energies_f[n]) * t * p_eq[n];
      r.p_nsm[m] += t * p_eq[n];
    }
  }
  for (std::size_t n = 0; n < d; ++n) r.w2 += (energies_i[n] - energies_f[n]) * r.p_nsm[n];
  r.driven = r.q_m > 0.0;
  r.efficiency = r.driven ? -(r.w1 + r.w2) / r.q_m
                          : std::numeric_limits<double>::quiet_NaN();

  r.rho_nsm = apply_kraus(diagonal_state(p_eq), kraus);
  r.entropy_nsm = von_neumann_entropy(r.rho_nsm);
  const double energy_nsm = (r.rho_nsm * hamiltonian(energies_f)).trace().real();

  const double s_max = std::log(static_cast<double>(d));
  const double e_lo = shifted_min(energies_f);
  const double spread = *std::max_element(energies_f.begin(), energies_f.end()) - e_lo;
  if (spread == 0.0 || r.entropy_nsm >= s_max - 1e-12) {
    r.theta_prime = std::numeric_limits<double>::infinity();
  } else {
    auto gap = [&](double log_theta) {
      return thermal_entropy(energies_f, std::exp(log_theta)) - r.entropy_nsm;
    };
    double lo = std::log(spread) - 3.0;
    double hi = std::log(spread);
    for (int i = 0; gap(lo) > 0.0; ++i) {
      if (i > 200) {
        // S(rho_nsm) at or below the ground-degeneracy entropy.
        lo = -std::numeric_limits<double>::infinity();
        break;
      }
      lo -= 1.0;
    }
    for (int i = 0; gap(hi) < 0.0; ++i) {
      if (i > 200) throw NumericError("nsm_cycle: entropy match not bracketed");
      hi += 1.0;
    }
    r.theta_prime = std::isinf(lo) ? 0.0 : std::exp(numeric::bisect(gap, lo, hi));
  }
  const double e_prime =
      r.theta_prime == 0.0 ? e_lo : thermal_energy(energies_f, r.theta_prime);
  r.delta_w_nsm = energy_nsm - e_prime;
  r.eta_carnot = 1.0 - theta_c / theta_m;
  r.eta_max = r.driven ? 1.0 - (theta_c / theta_m) * r.q_m / (r.q_m + r.delta_w_nsm)
                       : std::numeric_limits<double>::quiet_NaN();
  return r;
}

NsmConfig parse_nsm_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("nsm config: ") + e.what());
  }
  if (j.contains("nsm")) j = j.at("nsm");
  NsmConfig c;
  try {
    c.energies_i = j.at("energies_initial").get<std::vector<double>>();
    c.energies_f = j.at("energies_final").get<std::vector<double>>();
    c.theta_hot = j.value("theta_hot", c.theta_hot);
    c.theta_c = j.value("theta_cold", c.theta_c);
    c.theta_m = j.value("theta_m", c.theta_m);
    for (const auto& op : j.at("kraus")) {
      const auto re = op.at("re").get<std::vector<std::vector<double>>>();
      std::vector<std::vector<double>> im;
      if (op.contains("im")) im = op.at("im").get<std::vector<std::vector<double>>>();
      const auto d = static_cast<Eigen::Index>(re.size());
      Matrix m = Matrix::Zero(d, d);
      for (Eigen::Index a = 0; a < d; ++a) {
        const auto& row = re[static_cast<std::size_t>(a)];
        if (static_cast<Eigen::Index>(row.size()) != d) {
          throw DomainError("nsm config: kraus matrices must be square");
        }
        for (Eigen::Index b = 0; b < d; ++b) {
          double imag = 0.0;
          if (!im.empty()) imag = im.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b));
          m(a, b) = {row[static_cast<std::size_t>(b)], imag};
        }
      }
      c.kraus.ops.push_back(m);
    }
    if (j.contains("populations")) {
      c.p_eq = j.at("populations").get<std::vector<double>>();
    } else {
      c.p_eq = gibbs_populations(c.energies_i, c.theta_hot);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("nsm config: ") + e.what());
  }
  c.kraus.validate();
  return c;
}

PovmFamily parse_povm_family(const std::string& name) {
  if (name == "photocount") return PovmFamily::photocount;
  if (name == "sign") return PovmFamily::sign;
  if (name == "identity") return PovmFamily::identity;
  throw DomainError("unknown POVM family: " + name);
}

Povm make_povm(PovmFamily family, double kappa_sq, double xi) {
  if (!(kappa_sq > 0.0) || kappa_sq > 1.0) throw DomainError("make_povm: kappa_sq in (0, 1]");
  const double eps = 1.0 - kappa_sq;
  switch (family) {
    case PovmFamily::photocount:
      return {"photocount", [eps](double x, double p) {
                const double lambda = 0.5 * eps * (x * x + p * p);
                std::vector<double> out;
                if (lambda == 0.0) return std::vector<double>{1.0};
                const double log_l = std::log(lambda);
                double cum = 0.0;
                for (int m = 0;; ++m) {
                  const double v = std::exp(m * log_l - lambda - std::lgamma(m + 1.0));
                  out.push_back(v);
                  cum += v;
                  // Remaining mass is below v r / (1 - r), r = lambda / (m + 1).
                  const double r = lambda / (m + 1.0);
                  if (r < 0.5 && v * r / (1.0 - r) < 1e-16 * cum) break;
                }
                return out;
              }};
    case PovmFamily::sign:
      return {"sign", [eps, xi](double x, double p) {
                const auto q = coarse_sign::quadrant_probabilities(x, p, xi, eps);
                return std::vector<double>(q.begin(), q.end());
              }};
    case PovmFamily::identity:
      return {"identity", [](double, double) { return std::vector<double>{1.0}; }};
  }
  throw DomainError("make_povm: unknown family");
}

double MomentCheck::z() const {
  if (std_error == 0.0) return value == expected ? 0.0 : std::numeric_limits<double>::infinity();
  return (value - expected) / std_error;
}

bool NoGoReport::consistent(double z_max) const {
  for (const auto* m : {&mean_x, &mean_p, &var_x, &var_p, &energy}) {
    if (std::abs(m->z()) > z_max) return false;
  }
  return ergotropy <= ergotropy_bound;
}

namespace {

struct PowerSums {
  double n = 0.0;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;

  void add(double v) {
    const double v2 = v * v;
    n += 1.0;
    s1 += v;
    s2 += v2;
    s3 += v2 * v;
    s4 += v2 * v2;
  }
  PowerSums& operator+=(const PowerSums& o) {
    n += o.n;
    s1 += o.s1;
    s2 += o.s2;
    s3 += o.s3;
    s4 += o.s4;
    return *this;
  }
  double mean() const { return s1 / n; }
  double variance() const { return s2 / n - mean() * mean(); }
  double central4() const {
    const double mu = mean();
    return s4 / n - 4.0 * mu * s3 / n + 6.0 * mu * mu * s2 / n - 3.0 * mu * mu * mu * mu;
  }
};

struct OutcomeAcc {
  PowerSums x, p, e;
  OutcomeAcc& operator+=(const OutcomeAcc& o) {
    x += o.x;
    p += o.p;
    e += o.e;
    return *this;
  }
};

using OutcomeTable = std::vector<OutcomeAcc>;

}  // namespace

NoGoReport nsm_no_go_check(double nbar, double kappa_sq, const Povm& povm,
                           std::size_t n_samples, std::uint64_t seed, int workers) {
  if (!(nbar > 0.0)) throw DomainError("nsm_no_go_check: nbar must be > 0");
  if (!(kappa_sq > 0.0) || kappa_sq > 1.0) throw DomainError("nsm_no_go_check: kappa_sq in (0, 1]");
  if (n_samples < 2) throw DomainError("nsm_no_go_check: needs >= 2 samples");

  NoGoReport rep;
  rep.n_samples = n_samples;
  {
    mc::RngStream rng(seed, 0, 99);
    for (int i = 0; i < 1000; ++i) {
      const auto a = mc::sample_thermal_alpha(nbar, rng);
      double sum = 0.0;
      for (double v : povm.probabilities(a.x, a.p)) {
        if (v < 0.0) throw DomainError("POVM " + povm.name + ": negative probability");
        sum += v;
      }
      rep.completeness_error = std::max(rep.completeness_error, std::abs(sum - 1.0));
    }
    if (rep.completeness_error > 1e-10) {
      throw DomainError("POVM " + povm.name + ": completeness violated by " +
                        std::to_string(rep.completeness_error));
    }
  }

  const double kappa = std::sqrt(kappa_sq);
  const auto chunks = mc::run_chunks<OutcomeTable>(
      n_samples, seed, 10, workers,
      [&](std::size_t, std::size_t len, mc::RngStream& rng) {
        OutcomeTable table;
        for (std::size_t i = 0; i < len; ++i) {
          const auto a = mc::sample_thermal_alpha(nbar, rng);
          const auto probs = povm.probabilities(a.x, a.p);
          const double u = rng.uniform();
          std::size_t k = 0;
          double cum = probs[0];
          while (u >= cum && k + 1 < probs.size()) cum += probs[++k];
          if (table.size() <= k) table.resize(k + 1);
          const double xt = kappa * a.x;
          const double pt = kappa * a.p;
          table[k].x.add(xt);
          table[k].p.add(pt);
          table[k].e.add(0.5 * (xt * xt + pt * pt));
        }
        return table;
      });

  // Outcome-averaged ensemble: per-outcome sums merged in chunk order, then
  // combined across outcomes with weights p_i = N_i / N.
  OutcomeTable merged;
  for (const auto& t : chunks) {
    if (merged.size() < t.size()) merged.resize(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) merged[k] += t[k];
  }
  OutcomeAcc all;
  for (const auto& o : merged) {
    if (o.x.n > 0.0) ++rep.outcomes_seen;
    all += o;
  }

  const double n = all.x.n;
  for (const auto& o : merged) {
    if (o.x.n == 0.0) continue;
    rep.selective_ergotropy +=
        o.x.n / n * displacement_ergotropy({o.x.mean(), o.p.mean(), 0.5, 0.5});
  }
  const double thermal = kappa_sq * nbar;
  auto mean_check = [&](const PowerSums& s, double expected) {
    return MomentCheck{s.mean(), std::sqrt(s.variance() / n), expected};
  };
  auto var_check = [&](const PowerSums& s) {
    const double v = s.variance();
    return MomentCheck{v, std::sqrt(std::max(0.0, s.central4() - v * v) / n), thermal};
  };
  rep.mean_x = mean_check(all.x, 0.0);
  rep.mean_p = mean_check(all.p, 0.0);
  rep.var_x = var_check(all.x);
  rep.var_p = var_check(all.p);
  rep.energy = mean_check(all.e, thermal);
  rep.ergotropy = displacement_ergotropy({rep.mean_x.value, rep.mean_p.value, rep.var_x.value,
                                          rep.var_p.value});
  rep.ergotropy_bound = displacement_ergotropy(
      {4.0 * rep.mean_x.std_error, 4.0 * rep.mean_p.std_error, 0.0, 0.0});
  return rep;
}

}  // namespace wof::ergotropy
