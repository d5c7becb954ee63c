// wof: command-line front end. Exit codes: 0 success, 2 usage error,
// 3 numeric failure.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "wof/app.hpp"
#include "wof/coarse_sign.hpp"
#include "wof/homodyne.hpp"
#include "wof/mc_oracle.hpp"
#include "wof/numeric.hpp"
#include "wof/photocount.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kNumeric = 3;

struct Common {
  std::optional<double> nbar, nbar_cold, modes, kappa_sq, beta, resolution, theta_d,
      nbar_d;
  std::optional<unsigned long long> seed;
  std::optional<std::size_t> samples;
  std::optional<int> workers;
  std::string out;
  std::string format = "csv";
  std::string config;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--nbar", c.nbar, "mean quanta of the input mode");
  sub->add_option("--nbar-cold", c.nbar_cold, "occupation of each cold mode");
  sub->add_option("--modes", c.modes, "number of modes N");
  sub->add_option("--kappa-sq", c.kappa_sq, "beam-splitter transmissivity");
  sub->add_option("--beta", c.beta, "local-oscillator amplitude");
  sub->add_option("--resolution", c.resolution, "detector block width (counts)");
  sub->add_option("--theta-d", c.theta_d, "detector temperature k_B T_D / hbar omega");
  sub->add_option("--nbar-d", c.nbar_d, "detector occupation");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--samples", c.samples, "Monte Carlo samples");
  sub->add_option("--workers", c.workers, "OpenMP threads");
  sub->add_option("--out", c.out, "output path (default stdout)");
  sub->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--config", c.config, "JSON config file");
}

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw wof::DomainError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw wof::DomainError(std::string("config: ") + e.what());
  }
}

// Parameters from the config section `scheme`, then overridden by flags.
wof::app::Params gather(const Common& c, const nlohmann::json& cfg,
                        const std::string& scheme) {
  wof::app::Params p;
  if (cfg.contains(scheme)) {
    for (const auto& [k, v] : cfg.at(scheme).items()) {
      if (v.is_number()) p[k] = v.get<double>();
    }
  }
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) p[key] = *v;
  };
  put("nbar", c.nbar);
  put("nbar_cold", c.nbar_cold);
  put("modes", c.modes);
  put("kappa_sq", c.kappa_sq);
  put("beta", c.beta);
  put("resolution", c.resolution);
  put("theta_d", c.theta_d);
  put("nbar_d", c.nbar_d);
  return p;
}

template <typename T>
T pick(const std::optional<T>& flag, const nlohmann::json& cfg, const char* key,
       T fallback) {
  if (flag) return *flag;
  if (cfg.contains(key)) return cfg.at(key).get<T>();
  return fallback;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw wof::DomainError("cannot write " + out);
  f << text;
}

void emit_table(const wof::Table& t, const Common& c) {
  emit(c.format == "json" ? wof::to_json(t) : wof::to_csv(t), c.out);
}

std::string mc_verify(const std::string& scheme_name, const std::string& quantity,
                      const wof::app::Params& p, std::size_t samples,
                      unsigned long long seed, int workers) {
  using namespace wof;
  const auto scheme = mc::parse_scheme(scheme_name);
  mc::SchemeParams sp;
  sp.nbar = p.count("nbar") ? p.at("nbar") : 20.0;
  double closed = 0.0;
  double mc_mean = 0.0;
  double se = 0.0;
  double bias = 0.0;
  std::string warning;
  if (scheme == mc::Scheme::photocount) {
    sp.kappa_sq = p.count("kappa_sq") ? p.at("kappa_sq") : 0.75;
  } else {
    const auto opt = scheme == mc::Scheme::sign ? coarse_sign::optimize_sign(sp.nbar)
                                                : homodyne::optimize(sp.nbar);
    sp.xi = p.count("beta") ? 2.0 * p.at("beta") * p.at("beta") : opt.xi;
    sp.epsilon = p.count("kappa_sq") ? 1.0 - p.at("kappa_sq") : opt.epsilon;
  }
  auto take = [&](const mc::McEstimate& e) {
    mc_mean = e.mean;
    se = e.std_error;
  };
  auto take_info = [&](const mc::InformationEstimate& e) {
    take(e.estimate);
    bias = e.bias;
    warning = e.warning;
  };
  if (quantity == "work") {
    switch (scheme) {
      case mc::Scheme::photocount:
        closed = photocount::average_work(sp.nbar, sp.kappa_sq, workers);
        take(mc::estimate_work_photocount(sp.nbar, sp.kappa_sq, samples, seed, workers));
        break;
      case mc::Scheme::homodyne:
        closed = homodyne::gross_work(sp.nbar, sp.xi, sp.epsilon);
        take(mc::estimate_work_homodyne(sp.nbar, sp.xi, sp.epsilon, samples, seed, workers));
        break;
      case mc::Scheme::sign:
        closed = coarse_sign::sign_work(sp.nbar, sp.xi, sp.epsilon).net;
        take(mc::estimate_work_sign(sp.nbar, sp.xi, sp.epsilon, samples, seed, workers));
        break;
    }
  } else if (quantity == "mi") {
    switch (scheme) {
      case mc::Scheme::photocount:
        closed = photocount::mutual_information(sp.nbar, sp.kappa_sq, workers);
        break;
      case mc::Scheme::homodyne:
        closed = homodyne::mutual_information(sp.nbar, sp.xi, sp.epsilon);
        break;
      case mc::Scheme::sign:
        closed = coarse_sign::sign_mutual_information(sp.nbar, sp.xi, sp.epsilon, 1e-6,
                                                      workers)
                     .value;
        break;
    }
    take_info(mc::estimate_mutual_information(scheme, sp, samples, seed, workers));
  } else if (quantity == "entropy") {
    switch (scheme) {
      case mc::Scheme::photocount:
        closed = photocount::detector_entropy(sp.nbar, sp.kappa_sq);
        break;
      case mc::Scheme::homodyne:
        closed = homodyne::detector_entropy(sp.nbar, sp.xi, sp.epsilon);
        break;
      case mc::Scheme::sign:
        closed = coarse_sign::sign_detector_entropy();
        break;
    }
    take_info(mc::estimate_detector_entropy(scheme, sp, samples, seed, workers));
  } else {
    throw DomainError("quantity must be work, mi or entropy");
  }
  nlohmann::ordered_json j;
  j["comment"] = std::string("wof ") + kVersion + " seed=" + std::to_string(seed);
  j["version"] = kVersion;
  j["seed"] = seed;
  j["scheme"] = scheme_name;
  j["quantity"] = quantity;
  j["n_samples"] = samples;
  j["closed_form"] = closed;
  j["mc_mean"] = mc_mean;
  j["mc_std_error"] = se;
  j["z_score"] = se > 0.0 ? (mc_mean - closed) / se : 0.0;
  if (quantity != "work") j["bias"] = bias;
  if (!warning.empty()) j["warning"] = warning;
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Work extraction from single-mode thermal noise"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wof::kVersion);

  Common c;
  std::string positional_a;
  std::string positional_b;
  std::vector<std::string> axes;

  const char* schemes[] = {"reversible", "photocount", "homodyne", "sign",
                           "coarse",     "erasure",    "nsm"};
  std::vector<CLI::App*> scheme_subs;
  for (const char* name : schemes) {
    auto* sub = app.add_subcommand(name, std::string("evaluate the ") + name + " scheme");
    add_common(sub, c);
    scheme_subs.push_back(sub);
  }
  auto* mc_sub = app.add_subcommand("mc-verify", "closed form vs Monte Carlo oracle");
  add_common(mc_sub, c);
  mc_sub->add_option("scheme", positional_a, "photocount, homodyne or sign")->required();
  mc_sub->add_option("quantity", positional_b, "work, mi or entropy")->required();
  auto* sweep_sub = app.add_subcommand("sweep", "grid sweep over parameters");
  add_common(sweep_sub, c);
  sweep_sub->add_option("scheme", positional_a, "scheme to sweep")->required();
  sweep_sub->add_option("--axis", axes, "name=lin:a:b:n | name=log:a:b:n | name=v1,v2");
  auto* fig_sub = app.add_subcommand("figure", "figure data tables");
  add_common(fig_sub, c);
  fig_sub->add_option("id", positional_a, "figure id")
      ->required()
      ->check(CLI::IsMember(wof::app::figure_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    const auto cfg = load_config(c.config);
    const auto seed = pick<unsigned long long>(c.seed, cfg, "seed", 1ULL);
    const int workers = pick<int>(c.workers, cfg, "workers", 1);
    if (workers < 1) throw wof::DomainError("--workers must be >= 1");
    const auto samples = pick<std::size_t>(c.samples, cfg, "samples", 1'000'000);

    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "mc-verify") {
      emit(mc_verify(positional_a, positional_b, gather(c, cfg, positional_a), samples,
                     seed, workers),
           c.out);
    } else if (name == "sweep") {
      wof::app::SweepSpec spec;
      spec.scheme = wof::app::parse_scheme_id(positional_a);
      spec.seed = seed;
      spec.fixed = gather(c, cfg, positional_a);
      if (cfg.contains("sweep") && cfg.at("sweep").contains("axes")) {
        for (const auto& [k, v] : cfg.at("sweep").at("axes").items()) {
          axes.push_back(k + "=" + v.get<std::string>());
        }
      }
      for (const auto& a : axes) spec.axes.push_back(wof::app::parse_axis(a));
      emit_table(wof::app::run_sweep(spec, workers), c);
    } else if (name == "figure") {
      emit_table(wof::app::figure(wof::app::parse_figure_id(positional_a), seed, workers), c);
    } else if (name == "nsm") {
      const auto section = cfg.contains("nsm") ? cfg.at("nsm") : nlohmann::json::object();
      if (section.contains("kraus")) {
        emit_table(wof::app::nsm_table(wof::ergotropy::parse_nsm_config(section.dump()), seed),
                   c);
      } else {
        emit_table(wof::app::scheme_table(wof::app::SchemeId::nsm, gather(c, cfg, name), seed,
                                          workers),
                   c);
      }
    } else {
      emit_table(wof::app::scheme_table(wof::app::parse_scheme_id(name), gather(c, cfg, name),
                                        seed, workers),
                 c);
    }
  } catch (const wof::DomainError& e) {
    std::cerr << "wof: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "wof: config: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "wof: numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
  return 0;
}
