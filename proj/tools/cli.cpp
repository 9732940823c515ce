#include "cli.hpp"

#include "unruh_steer/errors.hpp"
#include "unruh_steer/random_states.hpp"
#include "unruh_steer/steering.hpp"
#include "unruh_steer/sweep.hpp"
#include "unruh_steer/unruh_model.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef UNRUH_STEER_VERSION
#define UNRUH_STEER_VERSION "0.0.0"
#endif

namespace unruh_steer::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  double omega = 1.0;
  std::string accel;
  std::string tau;
  std::string z;
  std::string sep;
  std::vector<std::string> grids;
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 0;
  int jobs = 1;
  bool plot = false;
  std::string preset;
  bool closed_form = false;
  std::string init = "singlet";
  std::string fano;
  double t_end = 0.0;
  int samples = 101;
  int count = 1000;
};

std::string fmt(double v, int digits = 17) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

/// Comma-separated reals; "inf" is accepted.
std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || std::isnan(v))
      throw UsageError("--" + flag + ": cannot parse '" + item + "' as a number");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("--" + flag + " needs at least one value");
  return values;
}

std::vector<std::string> fano_columns() {
  std::vector<std::string> cols;
  for (int i = 1; i <= 3; ++i) cols.push_back("rho" + std::to_string(i) + "0");
  for (int i = 1; i <= 3; ++i) cols.push_back("rho0" + std::to_string(i));
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) cols.push_back("rho" + std::to_string(i) + std::to_string(j));
  return cols;
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Runner {
 public:
  Runner(std::string command, const Options& opt, std::ostream& out, std::ostream& err)
      : command_(std::move(command)), opt_(opt), out_(out), err_(err) {}

  int run() {
    if (command_ == "equilibrium") return equilibrium();
    if (command_ == "evolve") return evolve_command();
    if (command_ == "sic-sweep") return sic_sweep();
    if (command_ == "tau-sweep") return tau_sweep();
    if (command_ == "steerability-surface") return surface();
    if (command_ == "boundary-scan") return boundary_scan();
    if (command_ == "node") return node();
    if (command_ == "theorem-check") return theorem_check();
    throw UsageError("unknown command '" + command_ + "'");
  }

 private:
  /// Summaries go to stdout when the data goes to a file, otherwise to the error stream.
  std::ostream& summary() { return opt_.out == "-" ? err_ : out_; }

  SweepSpec base_spec(Quantity q) const {
    SweepSpec spec;
    spec.quantity = q;
    spec.omega = opt_.omega;
    spec.closed_form = opt_.closed_form;
    spec.seed = opt_.seed;
    return spec;
  }

  /// List flags become axes (outermost first, in the order tau, a, z, L), then --grid axes,
  /// then any default grid whose parameter was not supplied.
  void add_axes(SweepSpec& spec, const std::vector<std::string>& default_grids) const {
    const std::pair<const std::string*, const char*> lists[] = {
        {&opt_.tau, "tau"}, {&opt_.accel, "a"}, {&opt_.z, "z"}, {&opt_.sep, "L"}};
    const char* flags[] = {"tau", "accel", "z", "sep"};
    for (std::size_t i = 0; i < 4; ++i)
      if (!lists[i].first->empty())
        spec.axes.push_back(GridAxis::list(lists[i].second, parse_list(*lists[i].first, flags[i])));
    for (const auto& g : opt_.grids) spec.axes.push_back(parse_grid(g));
    for (const auto& g : default_grids) {
      const auto axis = parse_grid(g);
      if (!has_axis(spec, axis.name)) spec.axes.push_back(axis);
    }
    for (std::size_t i = 0; i < spec.axes.size(); ++i)
      for (std::size_t j = i + 1; j < spec.axes.size(); ++j)
        if (spec.axes[i].name == spec.axes[j].name)
          throw UsageError("parameter '" + spec.axes[i].name + "' is given more than once");
  }

  static GridAxis parse_grid(const std::string& text) {
    try {
      return GridAxis::parse(text);
    } catch (const Error& e) {
      throw UsageError("--grid " + text + ": " + e.what());
    }
  }

  static bool has_axis(const SweepSpec& spec, const std::string& name) {
    for (const auto& a : spec.axes)
      if (a.name == name) return true;
    return false;
  }

  nlohmann::ordered_json meta(const SweepSpec* spec) const {
    nlohmann::ordered_json m;
    m["tool"] = "unruh-steer";
    m["tool_version"] = UNRUH_STEER_VERSION;
    m["timestamp"] = timestamp();
    m["command"] = command_;
    nlohmann::ordered_json config;
    config["omega"] = opt_.omega;
    config["accel"] = opt_.accel;
    config["tau"] = opt_.tau;
    config["z"] = opt_.z;
    config["sep"] = opt_.sep;
    config["grid"] = opt_.grids;
    config["preset"] = opt_.preset;
    config["closed_form"] = opt_.closed_form;
    config["format"] = opt_.format;
    config["out"] = opt_.out;
    if (command_ == "theorem-check") {
      config["seed"] = opt_.seed;
      config["count"] = opt_.count;
    }
    if (command_ == "evolve") {
      config["init"] = opt_.init;
      config["fano"] = opt_.fano;
      config["t_end"] = opt_.t_end;
      config["samples"] = opt_.samples;
    }
    m["config"] = config;
    if (spec) {
      nlohmann::ordered_json axes = nlohmann::ordered_json::array();
      for (const auto& a : spec->axes) axes.push_back({{"name", a.name}, {"count", a.values.size()}});
      m["quantity"] = std::string(to_string(spec->quantity));
      m["axes"] = axes;
      m["fixed"] = spec->fixed;
      const auto& s = spec->search;
      m["search"] = {{"alice_grid", {s.alice.theta_points, s.alice.phi_points}},
                     {"tolerance", s.tolerance},
                     {"degeneracy_threshold", s.degeneracy_threshold}};
    }
    return m;
  }

  void emit(const SweepResult& r, const SweepSpec* spec, const std::string& x, const std::string& y,
            const std::string& series = {}) {
    const auto write = [&](std::ostream& os) {
      if (opt_.format == "json")
        write_json(r, meta(spec), os);
      else
        write_csv(r, os);
    };
    if (opt_.out == "-") {
      if (opt_.plot) throw UsageError("--plot needs --out <file>");
      write(out_);
    } else {
      std::ofstream file(opt_.out, std::ios::binary);
      if (!file) throw IoError("cannot open '" + opt_.out + "' for writing");
      write(file);
      file.flush();
      if (!file) throw IoError("write to '" + opt_.out + "' failed");
    }
    if (opt_.plot) {
      std::string data = opt_.out;
      if (opt_.format == "json") {
        // Plot scripts read CSV; write a sibling copy.
        data = opt_.out + ".csv";
        std::ofstream csv(data, std::ios::binary);
        write_csv(r, csv);
        if (!csv) throw IoError("write to '" + data + "' failed");
      }
      const std::string script_path = opt_.out + ".gp";
      std::ofstream script(script_path, std::ios::binary);
      script << plot_script(r, data, x, y, series);
      if (!script) throw IoError("write to '" + script_path + "' failed");
    }
  }

  SweepResult sweep(const SweepSpec& spec) { return run_sweep(spec, opt_.jobs); }

  int equilibrium() {
    if (opt_.tau.empty() && opt_.z.empty()) throw UsageError("equilibrium needs --tau (free) or --z/--sep (boundary)");
    if (opt_.accel.empty()) throw UsageError("equilibrium needs --accel");
    const auto accels = parse_list(opt_.accel, "accel");
    const bool boundary = !opt_.z.empty() || !opt_.sep.empty();
    SweepResult r;
    const auto fano = fano_columns();
    if (boundary) {
      if (opt_.z.empty() || opt_.sep.empty()) throw UsageError("boundary equilibrium needs both --z and --sep");
      const auto zs = parse_list(opt_.z, "z");
      const auto ls = parse_list(opt_.sep, "sep");
      r.columns = {"a", "z", "L", "R", "tau_eq", "trace_mismatch"};
      r.columns.insert(r.columns.end(), fano.begin(), fano.end());
      r.columns.insert(r.columns.end(), {"sic", "concurrence", "min_eigenvalue"});
      for (double a : accels)
        for (double z : zs)
          for (double L : ls) {
            const auto k = kossakowski_boundary(UnruhParams{opt_.omega, a}, z, L);
            const auto eq = equilibrium_boundary(k);
            const auto m = fano_to_matrix(eq.state);
            std::vector<double> row = {a, z, L, k.free.R, eq.tau_eq, eq.trace_mismatch};
            for (double v : eq.state.to_array()) row.push_back(v);
            row.push_back(steering_induced_coherence(eq.state).value);
            row.push_back(concurrence(m));
            row.push_back(min_eigenvalue(m));
            r.rows.push_back(std::move(row));
          }
    } else {
      const auto taus = parse_list(opt_.tau, "tau");
      r.columns = {"tau", "a", "R", "A", "B", "C"};
      r.columns.insert(r.columns.end(), fano.begin(), fano.end());
      r.columns.insert(r.columns.end(), {"sic", "concurrence", "min_eigenvalue"});
      for (double tau : taus)
        for (double a : accels) {
          const auto k = kossakowski_free(UnruhParams{opt_.omega, a});
          const auto eq = equilibrium_free(tau, k.R);
          const auto m = fano_to_matrix(eq);
          std::vector<double> row = {tau, a, k.R, k.A, k.B, k.C};
          for (double v : eq.to_array()) row.push_back(v);
          row.push_back(opt_.closed_form ? equilibrium_sic_closed_form(tau, k.R) : steering_induced_coherence(eq).value);
          row.push_back(concurrence(m));
          row.push_back(min_eigenvalue(m));
          r.rows.push_back(std::move(row));
        }
    }
    r.diagnostics.assign(r.rows.size(), std::string());
    emit(r, nullptr, boundary ? "a" : "tau", "sic");
    return kExitOk;
  }

  FanoState initial_state() const {
    if (!opt_.fano.empty()) {
      const auto v = parse_list(opt_.fano, "fano");
      if (v.size() != 15) throw UsageError("--fano needs 15 values (rho10..rho30, rho01..rho03, rho11..rho33)");
      std::array<double, 15> arr{};
      std::copy(v.begin(), v.end(), arr.begin());
      const auto s = FanoState::from_array(arr);
      if (!is_physical(s)) throw Error(ErrorCode::kNotPositive, "--fano state is not positive semidefinite");
      return s;
    }
    FanoState s;
    if (opt_.init == "singlet") {
      s.T = -Mat3::Identity();
    } else if (opt_.init == "phi-plus") {
      s.T = Vec3(1.0, -1.0, 1.0).asDiagonal();
    } else if (opt_.init == "up-up") {
      s.a = Vec3::UnitZ();
      s.b = Vec3::UnitZ();
      s.T(2, 2) = 1.0;
    } else if (opt_.init == "up-down") {
      s.a = Vec3::UnitZ();
      s.b = -Vec3::UnitZ();
      s.T(2, 2) = -1.0;
    } else if (opt_.init == "mixed") {
    } else if (opt_.init == "random") {
      s = RandomStateGenerator(opt_.seed).mixed_fano_state();
    } else {
      throw UsageError("--init must be one of singlet, phi-plus, up-up, up-down, mixed, random");
    }
    return s;
  }

  int evolve_command() {
    if (opt_.accel.empty()) throw UsageError("evolve needs --accel");
    const auto accels = parse_list(opt_.accel, "accel");
    if (accels.size() != 1) throw UsageError("evolve takes a single --accel value");
    if (opt_.samples < 2) throw UsageError("--samples must be at least 2");
    const auto k = kossakowski_free(UnruhParams{opt_.omega, accels[0]});
    if (!std::isfinite(k.A)) throw Error(ErrorCode::kDomain, "evolve needs a finite acceleration");
    const FanoState s0 = initial_state();
    const double horizon = 20.0 / (4.0 * k.A);
    const double t_end = opt_.t_end > 0.0 ? opt_.t_end : horizon;
    EvolveOptions eo;
    for (int i = 0; i < opt_.samples; ++i) eo.sample_times.push_back(t_end * i / (opt_.samples - 1));
    eo.sample_times.back() = t_end;
    const auto res = evolve(s0, k, UnitVector::z(), t_end, eo);
    const FanoState eq = equilibrium_free(res.tau, k.R);

    SweepResult r;
    r.columns = {"t"};
    const auto fano = fano_columns();
    r.columns.insert(r.columns.end(), fano.begin(), fano.end());
    r.columns.insert(r.columns.end(), {"tau", "min_eigenvalue", "equilibrium_distance"});
    for (const auto& p : res.samples) {
      std::vector<double> row = {p.t};
      for (double v : p.state.to_array()) row.push_back(v);
      row.push_back(p.state.correlation_trace());
      row.push_back(p.min_eigenvalue);
      row.push_back(max_abs_difference(p.state, eq));
      r.rows.push_back(std::move(row));
    }
    r.diagnostics.assign(r.rows.size(), std::string());
    emit(r, nullptr, "t", "equilibrium_distance");
    summary() << "tau = " << fmt(res.tau) << ", R = " << fmt(k.R) << ", step = " << fmt(res.step)
              << ", horizon 20/(4A) = " << fmt(res.horizon) << (res.reached_horizon ? " (reached)" : " (not reached)")
              << ", equilibrium deviation = " << fmt(res.equilibrium_deviation, 6)
              << ", max tau drift = " << fmt(res.max_tau_drift, 6) << ", settled "
              << (res.settled_time ? "at t = " + fmt(*res.settled_time, 9) : std::string("no")) << '\n';
    return kExitOk;
  }

  int sic_sweep() {
    if (opt_.preset == "fig1") {
      if (opt_.tau.empty()) opt_.tau = "-3,-2,-1,-0.5,0.5,1";
    } else if (!opt_.preset.empty()) {
      throw UsageError("sic-sweep supports --preset fig1");
    }
    if (opt_.tau.empty()) throw UsageError("sic-sweep needs --tau (or --preset fig1)");
    SweepSpec spec = base_spec(Quantity::kSic);
    std::vector<std::string> grids;
    if (!has_r_grid() && opt_.accel.empty()) grids.push_back("a:log:0.5:100:200");
    add_axes(spec, grids);
    const auto r = sweep(spec);
    report_failures(r);
    emit(r, &spec, has_axis(spec, "R") ? "R" : "a", "sic", "tau");
    return kExitOk;
  }

  bool has_r_grid() const {
    for (const auto& g : opt_.grids)
      if (g.rfind("R:", 0) == 0) return true;
    return false;
  }

  int tau_sweep() {
    if (opt_.preset == "fig2") {
      if (opt_.accel.empty()) {
        const double node = steering_node_acceleration(0.25, opt_.omega).accel;
        opt_.accel = "0.5," + fmt(node) + ",100";
      }
      if (opt_.grids.empty()) opt_.grids = {"tau:linear:-3:1:201"};
    } else if (!opt_.preset.empty()) {
      throw UsageError("tau-sweep supports --preset fig2");
    }
    const bool r_given = has_r_grid();
    if (opt_.accel.empty() && !r_given) opt_.accel = "inf";
    SweepSpec spec = base_spec(Quantity::kSic);
    add_axes(spec, {"tau:linear:-3:1:101"});
    const auto r = sweep(spec);
    report_failures(r);
    emit(r, &spec, "tau", "sic", r_given ? "R" : "a");
    return kExitOk;
  }

  int surface() {
    if (!opt_.preset.empty() && opt_.preset != "fig3") throw UsageError("steerability-surface supports --preset fig3");
    SweepSpec spec = base_spec(Quantity::kFFunctional);
    std::vector<std::string> grids = {"tau:linear:-3:1:500"};
    if (!has_axis_flag("a")) grids.push_back("R:linear:0:1:500");
    add_axes(spec, grids);
    const auto r = sweep(spec);
    emit(r, &spec, "tau", "f_literal", "");
    const auto tau_col = r.column("tau");
    const auto r_col = r.column("R");
    for (const char* form : {"literal", "absolute"}) {
      const auto col = r.column(std::string("f_") + form);
      std::optional<std::size_t> best;
      std::size_t singular = 0;
      for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const double v = r.rows[i][col];
        if (std::isnan(v)) {
          ++singular;
          continue;
        }
        if (!best || v > r.rows[*best][col]) best = i;
      }
      if (!best) {
        summary() << form << " form: no regular grid points\n";
        continue;
      }
      const auto& row = r.rows[*best];
      summary() << form << " form: max f = " << fmt(row[col], 12) << " at (tau*, R*) = (" << fmt(row[tau_col], 12)
                << ", " << fmt(row[r_col], 12) << "), threshold sqrt(6) "
                << (row[col] > kSteeringBound ? "EXCEEDED" : "NOT exceeded") << " (" << singular
                << " singular points excluded)\n";
    }
    return kExitOk;
  }

  bool has_axis_flag(const std::string& name) const {
    if (name == "a" && !opt_.accel.empty()) return true;
    for (const auto& g : opt_.grids)
      if (g.rfind(name + ":", 0) == 0) return true;
    return false;
  }

  int boundary_scan() {
    SweepSpec spec = base_spec(Quantity::kBoundaryVerdict);
    add_axes(spec, {"a:log:0.5:100:50", "z:log:0.1:10:50", "L:log:0.1:10:50"});
    const auto r = sweep(spec);
    emit(r, &spec, "a", "ratio", "");
    const auto sat = r.column("satisfied");
    std::size_t satisfied = 0;
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      if (r.rows[i][sat] == 1.0) ++satisfied;
      if (!r.diagnostics[i].empty()) ++flagged;
    }
    summary() << "criterion x3/(1+x1) > sqrt(6) satisfied at " << satisfied << " of " << r.rows.size() << " points ("
              << flagged << " flagged singular)\n";
    return kExitOk;
  }

  int node() {
    if (opt_.tau.empty()) throw UsageError("node needs --tau");
    SweepSpec spec = base_spec(Quantity::kNode);
    add_axes(spec, {});
    const auto r = sweep(spec);
    report_failures(r);
    emit(r, &spec, "tau", "a_star", "");
    const auto kind = r.column("node_kind");
    for (const auto& row : r.rows) {
      summary() << "tau = " << fmt(row[0], 12) << ": ";
      switch (static_cast<int>(row[kind])) {
        case 0: summary() << "no steering node (requires tau > 0)\n"; break;
        case 1:
          summary() << "a* = " << fmt(row[kind + 1], 12) << ", R* = " << fmt(row[kind + 2], 12)
                    << ", sic(a*) = " << fmt(row[kind + 3], 6) << '\n';
          break;
        default: summary() << "node only in the a -> 0 limit (R* = 1), sic = " << fmt(row[kind + 3], 6) << '\n';
      }
    }
    return kExitOk;
  }

  int theorem_check() {
    if (opt_.count < 1) throw UsageError("--count must be positive");
    SweepSpec spec = base_spec(Quantity::kTheorem);
    std::vector<double> index(static_cast<std::size_t>(opt_.count));
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
    spec.axes.push_back(GridAxis::list("index", index));
    const auto r = sweep(spec);
    report_failures(r);
    emit(r, &spec, "index", "residual", "");
    const auto col = r.column("residual");
    double worst = 0.0;
    for (const auto& row : r.rows)
      if (std::isnan(row[col]) || row[col] > worst) worst = row[col];
    constexpr double kTolerance = 1e-4;
    const bool ok = worst <= kTolerance;
    summary() << "theorem check: max |SIC - MID| = " << fmt(worst, 6) << " over " << r.rows.size()
              << " states (seed " << opt_.seed << "), tolerance 1e-4 " << (ok ? "met" : "NOT met") << '\n';
    return ok ? kExitOk : 1;
  }

  void report_failures(const SweepResult& r) {
    std::size_t n = 0;
    for (const auto& d : r.diagnostics)
      if (!d.empty()) ++n;
    if (n) err_ << "warning: " << n << " of " << r.rows.size() << " points failed; see the diagnostic column\n";
  }

  std::string command_;
  Options opt_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  if (const char* env = std::getenv("UNRUH_STEER_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      err << "error: UNRUH_STEER_JOBS must be a positive integer\n";
      return kExitUsage;
    }
    opt.jobs = static_cast<int>(v);
  }

  CLI::App app{"Equilibrium coherence and steering of two accelerated qubits", "unruh-steer"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(UNRUH_STEER_VERSION));
  app.add_option("--omega", opt.omega, "Qubit transition frequency")->check(CLI::PositiveNumber);
  app.add_option("--accel", opt.accel, "Acceleration value(s), comma separated; 'inf' allowed");
  app.add_option("--tau", opt.tau, "Correlation trace value(s) in [-3, 1], comma separated");
  app.add_option("--z", opt.z, "Distance(s) from the boundary, comma separated");
  app.add_option("--sep", opt.sep, "Inter-atom separation(s) L, comma separated");
  app.add_option("--grid", opt.grids, "Grid axis name:linear|log:min:max:count (name in a, tau, R, z, L)");
  app.add_option("--out", opt.out, "Output path, '-' for stdout");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", opt.seed, "Random seed (theorem-check, evolve --init random)");
  app.add_option("--jobs", opt.jobs, "Worker threads (default: $UNRUH_STEER_JOBS or 1)")->check(CLI::PositiveNumber);
  app.add_flag("--plot", opt.plot, "Also write a gnuplot script next to --out");
  app.add_option("--preset", opt.preset, "Representative figure presets")->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  app.add_flag("--closed-form", opt.closed_form, "Use the closed-form SIC of the free equilibrium");

  const std::pair<const char*, const char*> commands[] = {
      {"equilibrium", "Equilibrium state(s) with SIC and concurrence"},
      {"evolve", "Integrate the master equation from an initial state"},
      {"sic-sweep", "SIC of the free equilibrium against acceleration"},
      {"tau-sweep", "SIC of the free equilibrium against tau"},
      {"steerability-surface", "Coherence-steerability functional over (tau, R)"},
      {"boundary-scan", "Steerability criterion with a reflecting boundary over (a, z, L)"},
      {"node", "Steering node acceleration for given tau"},
      {"theorem-check", "Compare SIC and one-sided MID on seeded random states"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&chosen, n = std::string(name)] { chosen = n; });
    if (std::string(name) == "evolve") {
      sub->add_option("--init", opt.init, "singlet, phi-plus, up-up, up-down, mixed or random");
      sub->add_option("--fano", opt.fano, "Initial state as 15 Fano coefficients");
      sub->add_option("--t-end", opt.t_end, "End time (default 20/(4A))");
      sub->add_option("--samples", opt.samples, "Number of output samples");
    }
    if (std::string(name) == "theorem-check") sub->add_option("--count", opt.count, "Number of random states");
  }

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return Runner(chosen, opt, out, err).run();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace unruh_steer::cli
