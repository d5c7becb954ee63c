#pragma once

// Scheme evaluation, parameter sweeps and figure-data tables shared by the
// command-line front end and the tests.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "wof/ergotropy.hpp"
#include "wof/table.hpp"

namespace wof::app {

using Params = std::map<std::string, double>;

enum class SchemeId { reversible, photocount, homodyne, sign, coarse, erasure, nsm };

SchemeId parse_scheme_id(const std::string& name);
std::string scheme_name(SchemeId id);

/// Output columns of `evaluate`, in order.
std::vector<std::string> output_columns(SchemeId id);

/// Recognised input keys for each scheme:
///  reversible: modes, nbar, nbar_cold
///  photocount: nbar, kappa_sq, theta_d
///  homodyne, sign: nbar, theta_d, and optionally beta / kappa_sq
///    (missing ones are taken from the optimum)
///  coarse: nbar, resolution (count units; default sigma_dn), beta, kappa_sq
///  erasure: nbar, theta_d, nbar_d (default ambient + optimal heating), omega
///  nsm: theta_hot, theta_c, theta_m, angle (built-in qutrit instance)
std::vector<double> evaluate(SchemeId id, const Params& params, int workers = 1);

/// One row: the given inputs followed by the outputs.
Table scheme_table(SchemeId id, const Params& params, unsigned long long seed,
                   int workers = 1);

/// Qutrit with H_i = (0, 1, 2), H_f = (0, 2, 4) measured projectively in a
/// basis rotated by `angle` in the (0,1) and (1,2) planes.
ergotropy::NsmConfig builtin_nsm_instance(double angle, double theta_hot,
                                          double theta_c, double theta_m);

Table nsm_table(const ergotropy::NsmConfig& config, unsigned long long seed);

struct Axis {
  std::string name;
  std::vector<double> values;
};

/// "name=lin:a:b:n", "name=log:a:b:n" or "name=v1,v2,...".
Axis parse_axis(const std::string& spec);

struct SweepSpec {
  SchemeId scheme = SchemeId::homodyne;
  std::vector<Axis> axes;
  Params fixed;
  unsigned long long seed = 0;
  std::size_t max_points = 1'000'000;

  /// Throws DomainError on empty axes or grids above max_points.
  void validate() const;
};

/// Rows in lexicographic grid order (first axis slowest). Rows whose inputs
/// are invalid carry the message in the trailing `error` column.
Table run_sweep(const SweepSpec& spec, int workers = 1);

enum class FigureId {
  carnot_efficiency,
  photocount_dist,
  efficiency_compare,
  sign_efficiency,
  cost_curves,
  reset_path
};

FigureId parse_figure_id(const std::string& name);
std::vector<std::string> figure_names();

Table figure(FigureId id, unsigned long long seed, int workers = 1);

}  // namespace wof::app
