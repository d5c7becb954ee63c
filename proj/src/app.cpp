#include "wof/app.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "wof/coarse_sign.hpp"
#include "wof/erasure.hpp"
#include "wof/homodyne.hpp"
#include "wof/kernels.hpp"
#include "wof/numeric.hpp"
#include "wof/photocount.hpp"
#include "wof/reversible.hpp"
#include "wof/thermo.hpp"

namespace wof::app {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double get(const Params& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

double require_key(const Params& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end()) throw DomainError("missing parameter: " + key);
  return it->second;
}

// (xi, eps) from beta / kappa_sq when given, otherwise from `opt`.
std::pair<double, double> operating_point(const Params& p,
                                          const homodyne::OptimalParams& opt) {
  const auto beta = p.find("beta");
  const auto kappa = p.find("kappa_sq");
  const double xi = beta != p.end() ? 2.0 * beta->second * beta->second : opt.xi;
  const double eps = kappa != p.end() ? 1.0 - kappa->second : opt.epsilon;
  return {xi, eps};
}

double efficiency(double work, double nbar) { return nbar > 0.0 ? work / nbar : 0.0; }

}  // namespace

SchemeId parse_scheme_id(const std::string& name) {
  static const std::map<std::string, SchemeId> ids = {
      {"reversible", SchemeId::reversible}, {"photocount", SchemeId::photocount},
      {"homodyne", SchemeId::homodyne},     {"sign", SchemeId::sign},
      {"coarse", SchemeId::coarse},         {"erasure", SchemeId::erasure},
      {"nsm", SchemeId::nsm}};
  const auto it = ids.find(name);
  if (it == ids.end()) throw DomainError("unknown scheme: " + name);
  return it->second;
}

std::string scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::reversible: return "reversible";
    case SchemeId::photocount: return "photocount";
    case SchemeId::homodyne: return "homodyne";
    case SchemeId::sign: return "sign";
    case SchemeId::coarse: return "coarse";
    case SchemeId::erasure: return "erasure";
    case SchemeId::nsm: return "nsm";
  }
  return "?";
}

std::vector<std::string> output_columns(SchemeId id) {
  switch (id) {
    case SchemeId::reversible:
      return {"nbar_final", "work", "efficiency", "efficiency_infinite_modes"};
    case SchemeId::photocount:
      return {"gross_work", "efficiency", "mutual_information", "detector_entropy",
              "feedforward_bound", "erasure_heat", "eta_feedforward", "eta_erasure"};
    case SchemeId::homodyne:
      return {"xi", "epsilon", "gain", "lo_cost", "net_work", "efficiency",
              "mutual_information", "detector_entropy", "feedforward_bound",
              "erasure_heat", "eta_feedforward", "eta_erasure"};
    case SchemeId::sign:
      return {"xi", "epsilon", "gain", "gain_bayes", "lo_cost", "net_work",
              "efficiency", "mutual_information", "detector_entropy",
              "feedforward_bound", "erasure_heat", "eta_feedforward", "eta_erasure"};
    case SchemeId::coarse:
      return {"xi", "epsilon", "sigma_dn", "resolution_used", "coarse_work",
              "fine_work", "ratio"};
    case SchemeId::erasure:
      return {"td_entire_energy", "td_photocount_small", "td_homodyne_small",
              "td_homodyne_entire", "nbar_d_used", "omega_prime", "w1", "w2", "w3",
              "q_d", "w_r", "breakeven_nbar_d", "delta_nbar_d", "entropy_increase"};
    case SchemeId::nsm:
      return {"w1", "q_m", "w2", "efficiency", "entropy_nsm", "theta_prime",
              "delta_w_nsm", "eta_carnot", "eta_max"};
  }
  return {};
}

std::vector<double> evaluate(SchemeId id, const Params& p, int workers) {
  switch (id) {
    case SchemeId::reversible: {
      reversible::ModeEnsemble e;
      e.modes = static_cast<int>(get(p, "modes", 2.0));
      e.nbar_hot = require_key(p, "nbar");
      e.nbar_cold = get(p, "nbar_cold", 0.0);
      const auto out = reversible::extract(e);
      const double inf_eta =
          e.nbar_hot > 0.0 ? reversible::efficiency_infinite_modes(e.nbar_hot, e.nbar_cold)
                           : kNan;
      return {out.nbar_final, out.work, out.efficiency, inf_eta};
    }
    case SchemeId::photocount: {
      const double nbar = require_key(p, "nbar");
      const double kappa_sq = get(p, "kappa_sq", 0.75);
      const double theta = get(p, "theta_d", 1.0);
      const auto b = photocount::budget(nbar, kappa_sq, theta, workers);
      const double theta_safe = theta > 0.0 ? theta : 1.0;
      return {b.gross_work,
              b.efficiency(),
              b.feedforward_bound / theta_safe,
              b.erasure_heat / theta_safe,
              b.feedforward_bound,
              b.erasure_heat,
              b.efficiency(CostMode::feedforward),
              b.efficiency(CostMode::erasure)};
    }
    case SchemeId::homodyne:
    case SchemeId::sign: {
      const double nbar = require_key(p, "nbar");
      const double theta = get(p, "theta_d", 1.0);
      const bool sign = id == SchemeId::sign;
      const auto opt = sign ? coarse_sign::optimize_sign(nbar) : homodyne::optimize(nbar);
      const auto [xi, eps] = operating_point(p, opt);
      if (!(xi > 0.0) || !(eps > 0.0)) {
        throw DomainError("no operating point: nbar below threshold and no beta/kappa_sq given");
      }
      const WorkBudget b = sign ? coarse_sign::sign_budget(nbar, xi, eps, theta, workers)
                                : homodyne::budget(nbar, xi, eps, theta);
      const double info = sign ? b.feedforward_bound / theta
                               : homodyne::mutual_information(nbar, xi, eps);
      const double record = sign ? coarse_sign::sign_detector_entropy()
                                 : homodyne::detector_entropy(nbar, xi, eps);
      std::vector<double> row = {xi, eps, b.gross_work};
      if (sign) row.push_back(coarse_sign::sign_gain_bayes(nbar, xi, eps));
      const std::vector<double> rest = {b.lo_cost,
                                        b.net_work(),
                                        b.efficiency(),
                                        info,
                                        record,
                                        b.feedforward_bound,
                                        b.erasure_heat,
                                        b.efficiency(CostMode::feedforward),
                                        b.efficiency(CostMode::erasure)};
      row.insert(row.end(), rest.begin(), rest.end());
      return row;
    }
    case SchemeId::coarse: {
      const double nbar = require_key(p, "nbar");
      const auto [xi, eps] = operating_point(p, homodyne::optimize(nbar));
      if (!(xi > 0.0) || !(eps > 0.0)) throw DomainError("no operating point");
      const double sigma = std::sqrt(homodyne::stats(nbar, xi, eps).sigma_dn_sq);
      const double r = get(p, "resolution", sigma);
      const double coarse = coarse_sign::coarse_work(nbar, xi, eps, r);
      const double fine = homodyne::gross_work(nbar, xi, eps);
      return {xi, eps, sigma, r, coarse, fine, coarse / fine};
    }
    case SchemeId::erasure: {
      const double nbar = require_key(p, "nbar");
      const double theta = get(p, "theta_d", 1.0);
      const double omega = get(p, "omega", 1.0);
      const auto opt = homodyne::optimize(nbar);
      const double heating =
          opt.operational
              ? erasure::detector_heating(nbar, 1.0 - opt.epsilon, std::sqrt(0.5 * opt.xi))
              : 0.0;
      const double ambient = thermo::nbar_of_temperature(theta, omega);
      const double nbar_d = get(p, "nbar_d", ambient + heating);
      const auto ledger = erasure::optimal_reset(nbar_d, omega, theta);
      using erasure::Scheme;
      return {erasure::td_bound(Scheme::entire_energy, nbar),
              erasure::td_bound(Scheme::photocount_small, nbar),
              erasure::td_bound(Scheme::homodyne_small, nbar),
              erasure::td_bound(Scheme::homodyne_entire_field, nbar),
              nbar_d,
              ledger.omega_prime,
              ledger.w1,
              ledger.w2,
              ledger.w3,
              ledger.q_d,
              ledger.w_r,
              erasure::reset_breakeven(omega, theta),
              heating,
              erasure::entropy_increase(ambient, heating)};
    }
    case SchemeId::nsm: {
      const auto cfg = builtin_nsm_instance(get(p, "angle", 0.4), get(p, "theta_hot", 2.0),
                                            get(p, "theta_c", 0.5), get(p, "theta_m", 2.0));
      const auto r = ergotropy::nsm_cycle(cfg.energies_i, cfg.energies_f, cfg.p_eq,
                                          cfg.kraus, cfg.theta_c, cfg.theta_m);
      return {r.w1,          r.q_m,         r.w2,          r.efficiency, r.entropy_nsm,
              r.theta_prime, r.delta_w_nsm, r.eta_carnot, r.eta_max};
    }
  }
  throw DomainError("evaluate: unknown scheme");
}

Table scheme_table(SchemeId id, const Params& params, unsigned long long seed,
                   int workers) {
  Table t;
  t.comments = standard_comments(seed);
  t.comments.push_back("scheme: " + scheme_name(id));
  std::vector<std::string> row;
  for (const auto& [k, v] : params) {
    t.columns.push_back(k);
    row.push_back(format_number(v));
  }
  for (const auto& c : output_columns(id)) t.columns.push_back(c);
  for (double v : evaluate(id, params, workers)) row.push_back(format_number(v));
  t.add_row(std::move(row));
  return t;
}

ergotropy::NsmConfig builtin_nsm_instance(double angle, double theta_hot,
                                          double theta_c, double theta_m) {
  ergotropy::NsmConfig c;
  c.energies_i = {0.0, 1.0, 2.0};
  c.energies_f = {0.0, 2.0, 4.0};
  c.theta_hot = theta_hot;
  c.theta_c = theta_c;
  c.theta_m = theta_m;
  c.p_eq = ergotropy::gibbs_populations(c.energies_i, theta_hot);
  Eigen::Matrix3d r01 = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d r12 = Eigen::Matrix3d::Identity();
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  r01(0, 0) = cs;
  r01(0, 1) = -sn;
  r01(1, 0) = sn;
  r01(1, 1) = cs;
  r12(1, 1) = cs;
  r12(1, 2) = -sn;
  r12(2, 1) = sn;
  r12(2, 2) = cs;
  const Eigen::Matrix3d basis = r01 * r12;
  c.kraus = ergotropy::projective_kraus(basis.cast<std::complex<double>>());
  return c;
}

Table nsm_table(const ergotropy::NsmConfig& cfg, unsigned long long seed) {
  const auto r = ergotropy::nsm_cycle(cfg.energies_i, cfg.energies_f, cfg.p_eq,
                                      cfg.kraus, cfg.theta_c, cfg.theta_m);
  Table t;
  t.comments = standard_comments(seed);
  t.comments.push_back("scheme: nsm");
  t.columns = {"theta_c", "theta_m"};
  for (const auto& c : output_columns(SchemeId::nsm)) t.columns.push_back(c);
  t.add_row({format_number(cfg.theta_c), format_number(cfg.theta_m), format_number(r.w1),
             format_number(r.q_m), format_number(r.w2), format_number(r.efficiency),
             format_number(r.entropy_nsm), format_number(r.theta_prime),
             format_number(r.delta_w_nsm), format_number(r.eta_carnot),
             format_number(r.eta_max)});
  return t;
}

Axis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw DomainError("axis must look like name=...: " + spec);
  Axis a;
  a.name = spec.substr(0, eq);
  const std::string body = spec.substr(eq + 1);
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
  };
  auto to_double = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw DomainError("");
      return v;
    } catch (const std::exception&) {
      throw DomainError("axis " + a.name + ": bad number '" + s + "'");
    }
  };
  if (body.rfind("lin:", 0) == 0 || body.rfind("log:", 0) == 0) {
    const auto parts = split(body.substr(4), ':');
    if (parts.size() != 3) throw DomainError("axis " + a.name + ": expected kind:first:last:count");
    const double first = to_double(parts[0]);
    const double last = to_double(parts[1]);
    const double count = to_double(parts[2]);
    if (!(count >= 1.0) || count != std::floor(count)) {
      throw DomainError("axis " + a.name + ": count must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(count);
    a.values = body[1] == 'i' ? numeric::linspace(first, last, n)
                              : numeric::logspace(first, last, n);
  } else if (!body.empty()) {
    for (const auto& s : split(body, ',')) a.values.push_back(to_double(s));
  }
  for (double v : a.values) {
    if (!std::isfinite(v)) throw DomainError("axis " + a.name + ": non-finite value");
  }
  return a;
}

void SweepSpec::validate() const {
  if (axes.empty()) throw DomainError("sweep: at least one axis is required");
  double points = 1.0;
  for (const auto& a : axes) {
    if (a.values.empty()) throw DomainError("sweep: axis " + a.name + " is empty");
    points *= static_cast<double>(a.values.size());
  }
  if (points > static_cast<double>(max_points)) {
    throw DomainError("sweep: grid exceeds " + std::to_string(max_points) + " points");
  }
}

Table run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  std::size_t total = 1;
  for (const auto& a : spec.axes) total *= a.values.size();

  Table t;
  t.comments = standard_comments(spec.seed);
  t.comments.push_back("sweep: " + scheme_name(spec.scheme));
  for (const auto& a : spec.axes) t.columns.push_back(a.name);
  std::vector<std::string> fixed_names;
  for (const auto& [k, v] : spec.fixed) {
    bool on_axis = false;
    for (const auto& a : spec.axes) on_axis = on_axis || a.name == k;
    if (!on_axis) {
      fixed_names.push_back(k);
      t.columns.push_back(k);
    }
  }
  const auto outputs = output_columns(spec.scheme);
  for (const auto& c : outputs) t.columns.push_back(c);
  t.columns.push_back("error");

  // Rows are independent; the inner evaluation stays serial.
  auto rows = kernels::map<std::vector<std::string>>(
      total,
      [&](std::size_t index) {
        Params params = spec.fixed;
        std::vector<std::string> row;
        std::size_t rem = index;
        std::vector<double> coords(spec.axes.size());
        for (std::size_t k = spec.axes.size(); k-- > 0;) {
          const auto& a = spec.axes[k];
          coords[k] = a.values[rem % a.values.size()];
          rem /= a.values.size();
        }
        for (std::size_t k = 0; k < spec.axes.size(); ++k) {
          params[spec.axes[k].name] = coords[k];
          row.push_back(format_number(coords[k]));
        }
        for (const auto& k : fixed_names) row.push_back(format_number(spec.fixed.at(k)));
        try {
          for (double v : evaluate(spec.scheme, params, 1)) row.push_back(format_number(v));
          row.emplace_back();
        } catch (const std::exception& e) {
          for (std::size_t i = 0; i < outputs.size(); ++i) row.emplace_back();
          row.emplace_back(e.what());
        }
        return row;
      },
      workers);
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

FigureId parse_figure_id(const std::string& name) {
  if (name == "carnot-efficiency") return FigureId::carnot_efficiency;
  if (name == "photocount-dist") return FigureId::photocount_dist;
  if (name == "efficiency-compare") return FigureId::efficiency_compare;
  if (name == "sign-efficiency") return FigureId::sign_efficiency;
  if (name == "cost-curves") return FigureId::cost_curves;
  if (name == "reset-path") return FigureId::reset_path;
  throw DomainError("unknown figure: " + name);
}

std::vector<std::string> figure_names() {
  return {"carnot-efficiency", "photocount-dist", "efficiency-compare",
          "sign-efficiency",   "cost-curves",     "reset-path"};
}

namespace {

std::vector<std::string> fmt(std::initializer_list<double> values) {
  std::vector<std::string> out;
  for (double v : values) out.push_back(format_number(v));
  return out;
}

Table carnot_efficiency() {
  Table t;
  t.columns = {"modes", "nbar", "nbar_cold", "nbar_final", "work", "efficiency",
               "efficiency_infinite_modes"};
  for (double nc : {0.0, 1.0}) {
    for (int n = 2; n <= 50; ++n) {
      const auto out = reversible::extract({n, 20.0, nc});
      t.add_row(fmt({static_cast<double>(n), 20.0, nc, out.nbar_final, out.work,
                     out.efficiency, reversible::efficiency_infinite_modes(20.0, nc)}));
    }
  }
  return t;
}

Table photocount_dist() {
  Table t;
  t.columns = {"nbar", "kappa_sq", "m", "n", "probability", "passive"};
  for (int m : {0, 1, 5, 10}) {
    const auto s = photocount::conditional_distribution(20.0, 0.9, m);
    const double passive = photocount::is_passive(s.probs) ? 1.0 : 0.0;
    for (std::size_t n = 0; n < s.probs.size() && n <= 200; ++n) {
      t.add_row(fmt({20.0, 0.9, static_cast<double>(m), static_cast<double>(n),
                     s.probs[n], passive}));
    }
  }
  return t;
}

Table efficiency_compare(int workers) {
  Table t;
  t.columns = {"nbar", "eta_photocount", "eta_homodyne", "eta_sign", "eta_reversible_limit"};
  const auto grid = numeric::logspace(1.0, 1e4, 25);
  const auto rows = kernels::map<std::vector<std::string>>(
      grid.size(),
      [&](std::size_t i) {
        const double n = grid[i];
        const double pc =
            n <= 1000.0 ? photocount::average_work(n, 0.75) / n : kNan;
        return fmt({n, pc, efficiency(homodyne::optimize(n).w_max, n),
                    efficiency(coarse_sign::optimize_sign(n).w_max, n), 1.0});
      },
      workers);
  for (const auto& r : rows) t.add_row(r);
  return t;
}

Table sign_efficiency() {
  Table t;
  t.columns = {"nbar", "eta_sign", "eta_sign_closed_form", "eta_sign_large_n",
               "asymptote"};
  for (double n : numeric::logspace(kTwoPi * 1.01, 1e5, 40)) {
    t.add_row(fmt({n, efficiency(coarse_sign::optimize_sign(n).w_max, n),
                   efficiency(coarse_sign::approximate_sign_optimum(n).w_max, n),
                   efficiency(coarse_sign::sign_work_large_n(n), n), 1.0 / kTwoPi}));
  }
  return t;
}

Table cost_curves(int workers) {
  Table t;
  t.columns = {"nbar",        "w_photocount", "qd_photocount", "ef_photocount",
               "w_homodyne",  "qd_homodyne",  "ef_homodyne",   "w_sign",
               "qd_sign",     "ef_sign"};
  const auto grid = numeric::logspace(8.0, 1e4, 20);
  const auto rows = kernels::map<std::vector<std::string>>(
      grid.size(),
      [&](std::size_t i) {
        const double n = grid[i];
        double wp = kNan, qp = kNan, ep = kNan;
        if (n <= 1000.0) {
          const auto b = photocount::budget(n, 0.75, 1.0);
          wp = b.net_work();
          qp = b.erasure_heat;
          ep = b.feedforward_bound;
        }
        const auto ho = homodyne::optimize(n);
        const auto hb = homodyne::budget(n, ho.xi, ho.epsilon, 1.0);
        const auto so = coarse_sign::optimize_sign(n);
        const auto sb = coarse_sign::sign_budget(n, so.xi, so.epsilon, 1.0);
        return fmt({n, wp, qp, ep, hb.net_work(), hb.erasure_heat, hb.feedforward_bound,
                    sb.net_work(), sb.erasure_heat, sb.feedforward_bound});
      },
      workers);
  for (const auto& r : rows) t.add_row(r);
  return t;
}

Table reset_path() {
  Table t;
  t.columns = {"step", "omega", "nbar_d", "work_cumulative"};
  const double theta = 1.0;
  const double omega = 1.0;
  const double nbar_d = 2.0;
  const auto ledger = erasure::optimal_reset(nbar_d, omega, theta);
  // Step 1: adiabatic omega -> omega' at fixed occupation.
  for (double w : numeric::linspace(omega, ledger.omega_prime, 11)) {
    t.add_row(fmt({1.0, w, nbar_d, -4.0 * (omega - w) * nbar_d}));
  }
  // Step 2: isothermal compression at theta_D; work is the free-energy change.
  const double w_after_1 = -ledger.w1;
  const double f0 = thermo::free_energy(nbar_d, ledger.omega_prime);
  for (double w : numeric::logspace(ledger.omega_prime, 40.0 * ledger.omega_prime, 20)) {
    const double n = thermo::nbar_of_temperature(theta, w);
    t.add_row(fmt({2.0, w, n, w_after_1 + 4.0 * (thermo::free_energy(n, w) - f0)}));
  }
  // Step 3: empty modes returned to omega at no cost.
  t.add_row(fmt({3.0, omega, 0.0, ledger.w_r}));
  return t;
}

}  // namespace

Table figure(FigureId id, unsigned long long seed, int workers) {
  Table t;
  switch (id) {
    case FigureId::carnot_efficiency: t = carnot_efficiency(); break;
    case FigureId::photocount_dist: t = photocount_dist(); break;
    case FigureId::efficiency_compare: t = efficiency_compare(workers); break;
    case FigureId::sign_efficiency: t = sign_efficiency(); break;
    case FigureId::cost_curves: t = cost_curves(workers); break;
    case FigureId::reset_path: t = reset_path(); break;
  }
  auto comments = standard_comments(seed);
  comments.insert(comments.begin() + 1, "figure: " + figure_names()[static_cast<std::size_t>(id)]);
  t.comments = comments;
  return t;
}

}  // namespace wof::app
