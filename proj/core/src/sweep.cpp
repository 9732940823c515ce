#include "unruh_steer/sweep.hpp"

#include "unruh_steer/errors.hpp"
#include "unruh_steer/random_states.hpp"
#include "unruh_steer/unruh_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace unruh_steer {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Point {
 public:
  Point(const SweepSpec& spec, const std::vector<double>& values) : spec_(spec), values_(values) {}

  std::optional<double> find(std::string_view name) const {
    for (std::size_t i = 0; i < spec_.axes.size(); ++i)
      if (spec_.axes[i].name == name) return values_[i];
    if (auto it = spec_.fixed.find(std::string(name)); it != spec_.fixed.end()) return it->second;
    return std::nullopt;
  }

  double get(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw Error(ErrorCode::kDomain, "sweep parameter '" + std::string(name) + "' is not set");
  }

  /// R taken directly if given, otherwise derived from the acceleration.
  double ratio() const {
    if (auto r = find("R")) return *r;
    return ratio_from_acceleration(spec_.omega, get("a"));
  }

 private:
  const SweepSpec& spec_;
  const std::vector<double>& values_;
};

bool is_given(const SweepSpec& spec, std::string_view name) {
  return spec.fixed.count(std::string(name)) > 0 ||
         std::any_of(spec.axes.begin(), spec.axes.end(), [&](const GridAxis& a) { return a.name == name; });
}

std::vector<std::string> derived_columns(const SweepSpec& spec) {
  const bool needs_r = !is_given(spec, "R");
  std::vector<std::string> cols;
  switch (spec.quantity) {
    case Quantity::kSic:
      if (needs_r) cols.push_back("R");
      cols.insert(cols.end(), {"sic", "concurrence", "min_eigenvalue"});
      break;
    case Quantity::kFFunctional:
      if (needs_r) cols.push_back("R");
      cols.insert(cols.end(), {"f_literal", "f_absolute", "literal_exceeds", "absolute_exceeds"});
      break;
    case Quantity::kBoundaryVerdict:
      cols = {"R", "A1", "A2", "B1", "B2", "x1", "x3", "ratio", "satisfied"};
      break;
    case Quantity::kTrajectory:
      cols = {"R", "horizon", "t_end", "equilibrium_deviation", "max_tau_drift", "settled_time"};
      break;
    case Quantity::kNode:
      cols = {"node_kind", "a_star", "R_star", "sic_at_node"};
      break;
    case Quantity::kTheorem:
      cols = {"sic", "mid", "residual", "concurrence"};
      break;
  }
  return cols;
}

std::vector<std::string> required_inputs(const SweepSpec& spec) {
  switch (spec.quantity) {
    case Quantity::kSic:
    case Quantity::kFFunctional:
      return is_given(spec, "R") ? std::vector<std::string>{"tau", "R"} : std::vector<std::string>{"tau", "a"};
    case Quantity::kBoundaryVerdict: return {"a", "z", "L"};
    case Quantity::kTrajectory: return {"a"};
    case Quantity::kNode: return {"tau"};
    case Quantity::kTheorem: return {"index"};
  }
  return {};
}

double sic_of(const SweepSpec& spec, double tau, double R, const FanoState& state) {
  if (spec.closed_form) return equilibrium_sic_closed_form(tau, R);
  return steering_induced_coherence(state, spec.search).value;
}

/// Fills `out` (pre-sized to the derived columns, NaN) for one grid point.
void evaluate(const SweepSpec& spec, const Point& p, std::vector<double>& out, std::string& diagnostic) {
  std::size_t col = 0;
  const auto put = [&](double v) { out[col++] = v; };
  const bool needs_r = !is_given(spec, "R");

  switch (spec.quantity) {
    case Quantity::kSic: {
      const double tau = p.get("tau");
      const double R = p.ratio();
      if (needs_r) put(R);
      const FanoState eq = equilibrium_free(tau, R);
      const DensityMatrix4 m = fano_to_matrix(eq);
      put(sic_of(spec, tau, R, eq));
      put(concurrence(m));
      put(min_eigenvalue(m));
      break;
    }
    case Quantity::kFFunctional: {
      const double tau = p.get("tau");
      const double R = p.ratio();
      if (needs_r) put(R);
      const auto f = steerability_functional_free(tau, R);
      put(f.literal);
      put(f.absolute);
      put(f.literal_exceeds);
      put(f.absolute_exceeds);
      if (f.singular) diagnostic = "singular: R^2 - R(tau+3) + 3 = 0";
      break;
    }
    case Quantity::kBoundaryVerdict: {
      const auto k = kossakowski_boundary(UnruhParams{spec.omega, p.get("a")}, p.get("z"), p.get("L"));
      put(k.free.R);
      put(k.A1);
      put(k.A2);
      put(k.B1);
      put(k.B2);
      out[col + 3] = 0.0;  // not satisfied unless evaluated
      const auto v = steerability_verdict_boundary(k);
      put(v.x1);
      put(v.x3);
      put(v.ratio);
      put(v.satisfied);
      break;
    }
    case Quantity::kTrajectory: {
      const auto k = kossakowski_free(UnruhParams{spec.omega, p.get("a")});
      const double horizon = 20.0 / (4.0 * k.A);
      const double t_end = p.find("t_end").value_or(horizon);
      put(k.R);
      put(horizon);
      put(t_end);
      const auto r = evolve(spec.initial, k, UnitVector::z(), t_end, EvolveOptions{{t_end}, Flow::kCoefficientOde});
      put(r.equilibrium_deviation);
      put(r.max_tau_drift);
      put(r.settled_time.value_or(kNaN));
      break;
    }
    case Quantity::kNode: {
      const double tau = p.get("tau");
      const auto node = steering_node_acceleration(tau, spec.omega);
      put(static_cast<double>(node.kind));
      if (node.kind == SteeringNode::Kind::kFinite) {
        put(node.accel);
        put(node.R);
        put(sic_of(spec, tau, node.R, equilibrium_free(tau, node.R)));
      } else if (node.kind == SteeringNode::Kind::kZeroAccelerationLimit) {
        put(0.0);
        put(1.0);
        put(sic_of(spec, tau, 1.0, equilibrium_free(tau, 1.0)));
      }
      break;
    }
    case Quantity::kTheorem: {
      const auto index = static_cast<std::uint64_t>(p.get("index"));
      auto gen = RandomStateGenerator::for_index(spec.seed, index);
      const DensityMatrix4 m = gen.mixed_state();
      const FanoState s = matrix_to_fano(m);
      const double sic = steering_induced_coherence(s, spec.search).value;
      const double mid = one_sided_mid(s, spec.search).value;
      put(sic);
      put(mid);
      put(std::abs(sic - mid));
      put(concurrence(m));
      break;
    }
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::kSic: return "sic";
    case Quantity::kFFunctional: return "f_functional";
    case Quantity::kBoundaryVerdict: return "boundary_verdict";
    case Quantity::kTrajectory: return "trajectory";
    case Quantity::kNode: return "node";
    case Quantity::kTheorem: return "theorem";
  }
  return "unknown";
}

GridAxis GridAxis::range(std::string name, double min, double max, int count, Scale scale) {
  if (count < 2) throw Error(ErrorCode::kDomain, "grid '" + name + "' needs at least 2 points");
  if (!(min < max)) throw Error(ErrorCode::kDomain, "grid '" + name + "' needs min < max");
  if (scale == Scale::kLog && !(min > 0.0)) throw Error(ErrorCode::kDomain, "log grid '" + name + "' needs min > 0");
  GridAxis axis{std::move(name), {}};
  axis.values.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    axis.values[static_cast<std::size_t>(i)] =
        scale == Scale::kLinear ? min + (max - min) * f : std::exp(std::log(min) + (std::log(max) - std::log(min)) * f);
  }
  // Pin the endpoints exactly.
  axis.values.front() = min;
  axis.values.back() = max;
  return axis;
}

GridAxis GridAxis::list(std::string name, std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kDomain, "parameter list '" + name + "' is empty");
  return GridAxis{std::move(name), std::move(values)};
}

GridAxis GridAxis::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 5) throw Error(ErrorCode::kDomain, "grid must look like name:linear|log:min:max:count");
  Scale scale;
  if (parts[1] == "linear" || parts[1] == "lin")
    scale = Scale::kLinear;
  else if (parts[1] == "log")
    scale = Scale::kLog;
  else
    throw Error(ErrorCode::kDomain, "grid scale must be linear or log");
  try {
    std::size_t used = 0;
    const double lo = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("min");
    const double hi = std::stod(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("max");
    const int count = std::stoi(parts[4], &used);
    if (used != parts[4].size()) throw std::invalid_argument("count");
    return range(parts[0], lo, hi, count, scale);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kDomain, "cannot parse grid '" + std::string(text) + "'");
  }
}

bool SweepResult::has_diagnostics() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const std::string& d) { return !d.empty(); });
}

std::size_t SweepResult::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw Error(ErrorCode::kDomain, "no column '" + std::string(name) + "'");
}

std::vector<std::string> sweep_columns(const SweepSpec& spec) {
  static const std::vector<std::string> known = {"a", "tau", "R", "z", "L", "index", "t_end"};
  for (const auto& axis : spec.axes) {
    if (std::find(known.begin(), known.end(), axis.name) == known.end())
      throw Error(ErrorCode::kDomain, "unknown sweep parameter '" + axis.name + "'");
    if (axis.values.empty()) throw Error(ErrorCode::kDomain, "sweep axis '" + axis.name + "' is empty");
  }
  for (const auto& name : required_inputs(spec))
    if (!is_given(spec, name)) throw Error(ErrorCode::kDomain, "sweep parameter '" + name + "' is not set");

  std::vector<std::string> cols;
  for (const auto& axis : spec.axes) cols.push_back(axis.name);
  for (auto& c : derived_columns(spec)) cols.push_back(std::move(c));
  return cols;
}

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
  SweepResult result;
  result.columns = sweep_columns(spec);
  const std::size_t n_axes = spec.axes.size();
  const std::size_t n_derived = result.columns.size() - n_axes;

  std::size_t total = 1;
  for (const auto& axis : spec.axes) total *= axis.values.size();
  result.rows.assign(total, std::vector<double>(result.columns.size(), kNaN));
  result.diagnostics.assign(total, std::string());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    std::vector<double> coords(n_axes);
    std::vector<double> derived(n_derived);
    for (std::size_t idx = next++; idx < total; idx = next++) {
      std::size_t rest = idx;
      for (std::size_t a = n_axes; a-- > 0;) {
        const auto& values = spec.axes[a].values;
        coords[a] = values[rest % values.size()];
        rest /= values.size();
      }
      std::fill(derived.begin(), derived.end(), kNaN);
      std::string diagnostic;
      try {
        evaluate(spec, Point(spec, coords), derived, diagnostic);
      } catch (const std::exception& e) {
        diagnostic = e.what();
      }
      auto& row = result.rows[idx];
      std::copy(coords.begin(), coords.end(), row.begin());
      std::copy(derived.begin(), derived.end(), row.begin() + static_cast<std::ptrdiff_t>(n_axes));
      result.diagnostics[idx] = std::move(diagnostic);
    }
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(total, 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return result;
}

void write_csv(const SweepResult& r, std::ostream& out) {
  const bool diag = r.has_diagnostics();
  for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << r.columns[c];
  if (diag) out << ",diagnostic";
  out << '\n';
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    for (std::size_t c = 0; c < r.rows[i].size(); ++c) out << (c ? "," : "") << format_number(r.rows[i][c]);
    if (diag) out << ',' << quote_csv(r.diagnostics[i]);
    out << '\n';
  }
}

SweepResult read_csv(std::istream& in) {
  SweepResult r;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kDomain, "empty CSV input");
  r.columns = split_csv_line(line);
  const bool diag = !r.columns.empty() && r.columns.back() == "diagnostic";
  if (diag) r.columns.pop_back();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != r.columns.size() + (diag ? 1 : 0))
      throw Error(ErrorCode::kDomain, "CSV row has " + std::to_string(fields.size()) + " fields");
    std::vector<double> row;
    row.reserve(r.columns.size());
    for (std::size_t c = 0; c < r.columns.size(); ++c) row.push_back(std::strtod(fields[c].c_str(), nullptr));
    r.rows.push_back(std::move(row));
    r.diagnostics.push_back(diag ? fields.back() : std::string());
  }
  return r;
}

void write_json(const SweepResult& r, const nlohmann::ordered_json& meta, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["meta"] = meta;
  doc["columns"] = r.columns;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      const double v = r.rows[i][c];
      if (std::isfinite(v))
        row[r.columns[c]] = v == 0.0 ? 0.0 : v;
      else
        row[r.columns[c]] = nullptr;
    }
    if (!r.diagnostics[i].empty()) row["diagnostic"] = r.diagnostics[i];
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

std::string plot_script(const SweepResult& r, const std::string& data_path, const std::string& x,
                        const std::string& y, const std::string& series) {
  const auto xi = r.column(x) + 1;
  const auto yi = r.column(y) + 1;
  std::ostringstream s;
  s << "# gnuplot script\n"
    << "set datafile separator ','\n"
    << "set key outside\n"
    << "set xlabel '" << x << "'\n"
    << "set ylabel '" << y << "'\n";
  if (x == "a") s << "set logscale x\n";
  if (series.empty()) {
    s << "plot '" << data_path << "' using " << xi << ":" << yi << " every ::1 with lines title '" << y << "'\n";
    return s.str();
  }
  const auto si = r.column(series);
  std::vector<double> levels;
  for (const auto& row : r.rows)
    if (std::find(levels.begin(), levels.end(), row[si]) == levels.end()) levels.push_back(row[si]);
  s << "plot ";
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const std::string level = format_number(levels[k]);
    s << (k ? ", \\\n     " : "") << "'" << data_path << "' using " << xi << ":($" << si + 1 << "==" << level
      << " ? $" << yi << " : 1/0) every ::1 with lines title '" << series << "=" << level << "'";
  }
  s << "\n";
  return s.str();
}

}  // namespace unruh_steer
