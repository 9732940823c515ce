#pragma once

#include "unruh_steer/qmat.hpp"
#include "unruh_steer/steering.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace unruh_steer {

enum class Quantity {
  kSic,              // inputs tau, a|R
  kFFunctional,      // inputs tau, a|R
  kBoundaryVerdict,  // inputs a, z, L
  kTrajectory,       // inputs a (initial state fixed), convergence metadata per point
  kNode,             // inputs tau
  kTheorem,          // inputs index (random states from seed)
};

std::string_view to_string(Quantity q);

enum class Scale { kLinear, kLog };

/// One named sweep parameter. Parameter names: a, tau, R, z, L, index.
struct GridAxis {
  std::string name;
  std::vector<double> values;

  /// Throws Error(kDomain) unless count >= 2, min < max and (log) min > 0.
  static GridAxis range(std::string name, double min, double max, int count, Scale scale);
  static GridAxis list(std::string name, std::vector<double> values);
  /// "name:linear|log:min:max:count".
  static GridAxis parse(std::string_view text);
};

struct SweepSpec {
  Quantity quantity = Quantity::kSic;
  std::vector<GridAxis> axes;
  /// Parameters held constant (same names as axes, plus t_end for trajectories).
  std::map<std::string, double> fixed;
  double omega = 1.0;
  /// Use |tau - R^2| / (3 + R^2) instead of the optimizer for the free equilibrium.
  bool closed_form = false;
  SearchOptions search;
  std::uint64_t seed = 0;
  FanoState initial;  // trajectory start
};

/// Rows are in lexicographic grid order with the first axis outermost. Boolean outputs are 0/1.
struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> diagnostics;  // one per row, empty when the point succeeded

  bool has_diagnostics() const;
  std::size_t column(std::string_view name) const;
  bool operator==(const SweepResult&) const = default;
};

/// Output columns for a spec; throws Error(kDomain) for a missing or unknown parameter.
std::vector<std::string> sweep_columns(const SweepSpec& spec);

/// Evaluates every grid point with `jobs` workers. Per-point library errors become diagnostics;
/// output is identical for any number of jobs.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 1);

/// 17 significant digits, header row, LF endings; a trailing "diagnostic" column only when
/// some row carries one.
void write_csv(const SweepResult& r, std::ostream& out);
SweepResult read_csv(std::istream& in);

/// {"meta": meta, "rows": [{column: value, ...}, ...]}; NaN is written as null.
void write_json(const SweepResult& r, const nlohmann::ordered_json& meta, std::ostream& out);

/// Gnuplot script plotting `y` against `x` from the CSV at `data_path`, one curve per value of
/// `series` when non-empty.
std::string plot_script(const SweepResult& r, const std::string& data_path, const std::string& x,
                        const std::string& y, const std::string& series = {});

}  // namespace unruh_steer
