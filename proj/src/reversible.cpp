#include "wof/reversible.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wof/numeric.hpp"
#include "wof/thermo.hpp"

namespace wof::reversible {

void ModeEnsemble::validate() const {
  if (modes < 2) throw DomainError("ModeEnsemble: modes must be >= 2");
  if (!(nbar_hot >= 0.0) || !(nbar_cold >= 0.0) || !std::isfinite(nbar_hot) ||
      !std::isfinite(nbar_cold)) {
    throw DomainError("ModeEnsemble: occupations must be finite and >= 0");
  }
}

double solve_final_occupancy(const ModeEnsemble& e) {
  e.validate();
  if (e.nbar_hot == e.nbar_cold) return e.nbar_hot;
  const double n_modes = e.modes;
  const double target =
      thermo::entropy(e.nbar_hot) + (n_modes - 1.0) * thermo::entropy(e.nbar_cold);
  const double lo = std::min(e.nbar_hot, e.nbar_cold);
  const double hi = std::max(e.nbar_hot, e.nbar_cold);
  return numeric::bisect(
      [&](double nf) { return n_modes * thermo::entropy(nf) - target; }, lo, hi);
}

ReversibleOutcome extract(const ModeEnsemble& e) {
  ReversibleOutcome out;
  out.nbar_final = solve_final_occupancy(e);
  const double n = e.nbar_hot;
  const double nc = e.nbar_cold;
  const double nf = out.nbar_final;
  const double cold = e.modes - 1.0;
  out.work = n + cold * nc - e.modes * nf;
  out.efficiency = n > 0.0 ? out.work / n : 0.0;

  StrokeDetail& s = out.strokes;
  if (nf == 0.0) return out;  // everything empty: no strokes

  // Stroke 1 targets the final equilibrium temperature, so stroke 2 is a
  // single isotherm back to omega = 1.
  const double theta = thermo::temperature(nf);
  s.theta_common = theta;
  auto adiabatic_frequency = [&](double occ) {
    return occ > 0.0 ? theta * std::log1p(1.0 / occ)
                     : std::numeric_limits<double>::infinity();
  };
  s.omega_hot = adiabatic_frequency(n);
  s.omega_cold = adiabatic_frequency(nc);
  s.work_hot_adiabatic = n > 0.0 ? n * (s.omega_hot - 1.0) : 0.0;
  s.work_cold_adiabatic = nc > 0.0 ? cold * nc * (s.omega_cold - 1.0) : 0.0;

  // F = -theta ln(1 + occ) along the common isotherm.
  auto f_iso = [&](double occ) { return -theta * std::log1p(occ); };
  s.work_hot_isothermal = f_iso(nf) - f_iso(n);
  s.work_cold_isothermal = cold * (f_iso(nf) - f_iso(nc));
  s.heat_released_hot = theta * (thermo::entropy(n) - thermo::entropy(nf));
  s.heat_absorbed_cold = cold * theta * (thermo::entropy(nf) - thermo::entropy(nc));
  return out;
}

double efficiency_infinite_modes(double nbar_hot, double nbar_cold) {
  if (!(nbar_hot > 0.0) || !(nbar_cold >= 0.0)) {
    throw DomainError("efficiency_infinite_modes: need nbar_hot > 0, nbar_cold >= 0");
  }
  if (nbar_cold == 0.0) return 1.0;
  const double r = nbar_cold / nbar_hot;
  return 1.0 - r * (1.0 + std::log(nbar_hot / nbar_cold));
}

double efficiency_infinite_modes_exact(double nbar_hot, double nbar_cold) {
  if (!(nbar_hot > 0.0) || !(nbar_cold >= 0.0)) {
    throw DomainError(
        "efficiency_infinite_modes_exact: need nbar_hot > 0, nbar_cold >= 0");
  }
  if (nbar_cold == 0.0) return 1.0;
  const double w = nbar_hot - nbar_cold -
                   (thermo::entropy(nbar_hot) - thermo::entropy(nbar_cold)) /
                       thermo::entropy_derivative(nbar_cold);
  return w / nbar_hot;
}

}  // namespace wof::reversible
