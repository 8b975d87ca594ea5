#include "ringwalk/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ringwalk/analysis.hpp"
#include "ringwalk/asymptotics.hpp"
#include "ringwalk/dynamics.hpp"
#include "ringwalk/io.hpp"
#include "ringwalk/ring.hpp"
#include "ringwalk/special.hpp"
#include "ringwalk/spectral.hpp"
#include "ringwalk/testing.hpp"
#include "ringwalk/version.hpp"

namespace ringwalk {

namespace {

using io::CsvTable;
using io::format_double;
using io::format_gamma;
using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<double> kStandardGammas = {2.0, 3.0, 4.0, kInf};

bool is_one_of(const std::string& v, std::initializer_list<const char*> options) {
  for (const char* o : options) {
    if (v == o) return true;
  }
  return false;
}

std::string join_gammas(const std::vector<double>& gammas) {
  std::string out;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (i) out += ",";
    out += format_gamma(gammas[i]);
  }
  return out;
}

struct ResolvedConfig {
  ExperimentConfig cfg;
  std::vector<double> gammas;  // figure recipes
  std::string prefix;
  std::string format;
};

ResolvedConfig resolve(const ExperimentConfig& config) {
  ResolvedConfig r;
  r.cfg = config;
  if (!is_one_of(config.experiment,
                 {"spectrum", "dos", "dos-fit", "return", "msd", "spa", "classify",
                  "figure1", "figure2", "figure3"})) {
    throw std::invalid_argument("unknown experiment '" + config.experiment + "'");
  }
  if (!(config.t_min < config.t_max)) {
    throw std::invalid_argument("config needs t_min < t_max");
  }
  if (config.points_per_decade < 1) {
    throw std::invalid_argument("config needs points_per_decade >= 1");
  }
  if (config.bins < 2) {
    throw std::invalid_argument("config needs bins >= 2");
  }
  if (!is_one_of(config.kind, {"classical", "quantum"})) {
    throw std::invalid_argument("kind must be classical or quantum");
  }
  if (!is_one_of(config.method, {"analytic", "diag"})) {
    throw std::invalid_argument("method must be analytic or diag");
  }
  if (!is_one_of(config.system, {"finite", "infinite"})) {
    throw std::invalid_argument("system must be finite or infinite");
  }
  bool figure = config.experiment.rfind("figure", 0) == 0;
  if (figure) {
    r.gammas = config.gammas.empty() ? kStandardGammas : config.gammas;
  } else if (config.gamma == 0.0 && config.gammas.size() == 1) {
    r.cfg.gamma = config.gammas[0];
  } else if (config.gamma == 0.0) {
    throw std::invalid_argument("this experiment needs --gamma (use inf for nearest-neighbor)");
  }
  r.prefix = config.out_prefix.empty() ? config.experiment : config.out_prefix;
  if (config.format.empty()) {
    bool json_default = config.experiment == "dos-fit" || config.experiment == "classify";
    r.format = json_default ? "json" : "csv";
  } else if (is_one_of(config.format, {"csv", "json"})) {
    r.format = config.format;
  } else {
    throw std::invalid_argument("format must be csv or json");
  }
  return r;
}

RingSpec make_spec(const ExperimentConfig& cfg, double gamma) {
  if (cfg.r_max > 0) return RingSpec(cfg.n_nodes, gamma, cfg.r_max);
  return RingSpec(cfg.n_nodes, gamma);
}

TimeGrid make_grid(const ExperimentConfig& cfg) {
  if (cfg.dt > 0.0) return linear_time_grid(cfg.t_min, cfg.t_max, cfg.dt);
  return log_time_grid(cfg.t_min, cfg.t_max, cfg.points_per_decade);
}

std::vector<std::pair<std::string, std::string>> config_metadata(const ResolvedConfig& r) {
  const ExperimentConfig& c = r.cfg;
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("version", kVersion);
  meta.emplace_back("experiment", c.experiment);
  meta.emplace_back("n_nodes", std::to_string(c.n_nodes));
  if (r.gammas.empty()) {
    meta.emplace_back("gamma", format_gamma(c.gamma));
  } else {
    meta.emplace_back("gammas", join_gammas(r.gammas));
  }
  meta.emplace_back("r_max", std::to_string(c.r_max));
  meta.emplace_back("bins", std::to_string(c.bins));
  meta.emplace_back("t_min", format_double(c.t_min));
  meta.emplace_back("t_max", format_double(c.t_max));
  meta.emplace_back("points_per_decade", std::to_string(c.points_per_decade));
  meta.emplace_back("dt", format_double(c.dt));
  meta.emplace_back("kind", c.kind);
  meta.emplace_back("method", c.method);
  meta.emplace_back("system", c.system);
  meta.emplace_back("format", r.format);
  return meta;
}

json config_json(const ResolvedConfig& r) {
  const ExperimentConfig& c = r.cfg;
  json j;
  j["version"] = kVersion;
  j["experiment"] = c.experiment;
  j["n_nodes"] = c.n_nodes;
  if (r.gammas.empty()) {
    j["gamma"] = format_gamma(c.gamma);
  } else {
    json arr = json::array();
    for (double g : r.gammas) arr.push_back(format_gamma(g));
    j["gammas"] = arr;
  }
  j["r_max"] = c.r_max;
  j["bins"] = c.bins;
  j["t_min"] = c.t_min;
  j["t_max"] = c.t_max;
  j["points_per_decade"] = c.points_per_decade;
  j["dt"] = c.dt;
  j["kind"] = c.kind;
  j["method"] = c.method;
  j["system"] = c.system;
  j["format"] = r.format;
  return j;
}

json cell_json(double v) {
  if (std::isfinite(v)) return json(v);
  return json(format_double(v));
}

json fit_json(const FitResult& fit) {
  json j;
  json params;
  for (const auto& [key, value] : fit.params) params[key] = cell_json(value);
  j["params"] = params;
  j["residual"] = fit.residual;
  j["window"] = json::array({fit.window_lo, fit.window_hi});
  j["n_points"] = fit.n_points;
  j["converged"] = fit.converged;
  return j;
}

// numeric table -> one output file in the chosen format
std::string write_table(const ResolvedConfig& r, const std::string& path_stem,
                        const std::vector<std::pair<std::string, std::string>>& extra_meta,
                        const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& rows) {
  std::string path = path_stem + "." + r.format;
  if (r.format == "csv") {
    CsvTable t;
    t.metadata = config_metadata(r);
    for (const auto& m : extra_meta) t.metadata.push_back(m);
    t.header = header;
    for (const auto& row : rows) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (double v : row) cells.push_back(format_double(v));
      t.rows.push_back(std::move(cells));
    }
    io::atomic_write_file(path, render_csv(t));
  } else {
    json j;
    j["config"] = config_json(r);
    for (const auto& [key, value] : extra_meta) j["config"][key] = value;
    json result;
    result["columns"] = header;
    json data = json::array();
    for (const auto& row : rows) {
      json jrow = json::array();
      for (double v : row) jrow.push_back(cell_json(v));
      data.push_back(jrow);
    }
    result["rows"] = data;
    j["result"] = result;
    j["version"] = kVersion;
    io::atomic_write_file(path, j.dump(2) + "\n");
  }
  return path;
}

std::string write_fit(const ResolvedConfig& r, const std::string& path_stem,
                      const std::vector<std::pair<std::string, std::string>>& extra_meta,
                      const json& result) {
  std::string path = path_stem + "." + r.format;
  if (r.format == "json") {
    json j;
    j["config"] = config_json(r);
    for (const auto& [key, value] : extra_meta) j["config"][key] = value;
    j["result"] = result;
    j["version"] = kVersion;
    io::atomic_write_file(path, j.dump(2) + "\n");
  } else {
    CsvTable t;
    t.metadata = config_metadata(r);
    for (const auto& m : extra_meta) t.metadata.push_back(m);
    t.header = {"key", "value"};
    std::function<void(const std::string&, const json&)> flatten =
        [&](const std::string& prefix, const json& node) {
          if (node.is_object()) {
            for (auto it = node.begin(); it != node.end(); ++it) {
              flatten(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
            }
          } else if (node.is_array()) {
            for (std::size_t i = 0; i < node.size(); ++i) {
              flatten(prefix + "." + std::to_string(i), node[i]);
            }
          } else {
            std::string v = node.is_string() ? node.get<std::string>() : node.dump();
            t.rows.push_back({prefix, v});
          }
        };
    flatten("", result);
    io::atomic_write_file(path, render_csv(t));
  }
  return path;
}

std::vector<std::string> run_spectrum(const ResolvedConfig& r) {
  RingSpec spec = make_spec(r.cfg, r.cfg.gamma);
  Spectrum s = (r.cfg.method == "diag") ? diagonalize_spectrum(spec) : full_spectrum(spec);
  std::vector<std::vector<double>> rows;
  for (int m = 0; m < spec.n_nodes; ++m) {
    double theta = (s.source == SpectrumSource::analytic)
                       ? 2.0 * M_PI * m / spec.n_nodes
                       : std::nan("");
    rows.push_back({static_cast<double>(m), theta, s.eigenvalues(m)});
  }
  return {write_table(r, r.prefix, {}, {"mode", "theta", "energy"}, rows)};
}

std::vector<std::vector<double>> dos_rows(const DosEstimate& est) {
  std::vector<std::vector<double>> rows;
  for (Eigen::Index b = 0; b < est.density.size(); ++b) {
    rows.push_back({est.bin_edges(b), est.bin_edges(b + 1), est.density(b),
                    static_cast<double>(est.counts(b))});
  }
  return rows;
}

std::vector<std::string> run_dos(const ResolvedConfig& r) {
  Spectrum s = full_spectrum(make_spec(r.cfg, r.cfg.gamma));
  DosEstimate est = dos_histogram(s, r.cfg.bins);
  return {write_table(r, r.prefix, {}, {"bin_lo", "bin_hi", "density", "count"},
                      dos_rows(est))};
}

std::vector<std::string> run_dos_fit(const ResolvedConfig& r) {
  Spectrum s = full_spectrum(make_spec(r.cfg, r.cfg.gamma));
  DosEstimate est = dos_histogram(s, r.cfg.bins);
  FitResult fit = fit_dos_exponents(est, est.bin_edges(est.density.size()));
  return {write_fit(r, r.prefix, {}, fit_json(fit))};
}

std::vector<std::string> run_series(const ResolvedConfig& r) {
  Spectrum s = full_spectrum(make_spec(r.cfg, r.cfg.gamma));
  TimeGrid grid = make_grid(r.cfg);
  WalkKind kind = (r.cfg.kind == "classical") ? WalkKind::classical : WalkKind::quantum;
  TimeSeries series;
  if (r.cfg.experiment == "return") {
    series = (kind == WalkKind::classical) ? classical_return_avg(s, grid)
                                           : quantum_return_avg(s, grid);
  } else {
    series = msd_series(s, grid, kind);
  }
  std::vector<std::vector<double>> rows;
  for (Eigen::Index i = 0; i < series.times.size(); ++i) {
    rows.push_back({series.times(i), series.values(i)});
  }
  return {write_table(r, r.prefix, {}, {"t", "value"}, rows)};
}

std::vector<std::string> run_spa(const ResolvedConfig& r) {
  TimeGrid grid = make_grid(r.cfg);
  std::vector<std::vector<double>> rows;
  if (r.cfg.system == "infinite") {
    for (Eigen::Index i = 0; i < grid.times.size(); ++i) {
      double t = grid.times(i);
      rows.push_back({t, spa_return_infinite(r.cfg.gamma, t)});
    }
  } else {
    RingSpec spec = make_spec(r.cfg, r.cfg.gamma);
    for (Eigen::Index i = 0; i < grid.times.size(); ++i) {
      double t = grid.times(i);
      rows.push_back({t, spa_return_finite(spec, t)});
    }
  }
  return {write_table(r, r.prefix, {}, {"t", "value"}, rows)};
}

std::vector<std::string> run_classify(const ResolvedConfig& r) {
  RingClassification c = classify_ring(make_spec(r.cfg, r.cfg.gamma));
  json result;
  json fits;
  for (const auto& [name, fit] : c.fits) fits[name] = fit_json(fit);
  result["fits"] = fits;
  result["classical_verdict"] = c.report.classical_verdict;
  result["quantum_verdict"] = c.report.quantum_verdict;
  return {write_fit(r, r.prefix, {}, result)};
}

std::string script_path_for(const std::string& prefix) { return prefix + ".gp"; }

std::string basename_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

std::vector<std::string> run_figure1(const ResolvedConfig& r) {
  std::vector<std::string> written;
  std::vector<std::pair<double, FitResult>> inset;
  std::vector<std::string> plot_clauses;
  for (double g : r.gammas) {
    RingSpec spec = make_spec(r.cfg, g);
    Spectrum s = full_spectrum(spec);
    DosEstimate est = dos_histogram(s, r.cfg.bins);
    double e_top = est.bin_edges(est.density.size());
    std::string label = format_gamma(g);

    std::string dos_path =
        write_table(r, r.prefix + "_dos_gamma" + label, {{"curve", "histogram"}, {"curve_gamma", label}},
                    {"bin_lo", "bin_hi", "density", "count"}, dos_rows(est));
    written.push_back(dos_path);
    plot_clauses.push_back("\"" + basename_of(dos_path) +
                           "\" using (0.5*($1+$2)):3 with steps title \"gamma=" + label + "\"");

    // closed-form overlays where they exist, fitted curve otherwise
    std::vector<std::vector<double>> curve;
    bool closed = std::isinf(g) || g == 2.0 || g == 4.0;
    FitResult fit = fit_dos_exponents(est, e_top);
    inset.emplace_back(g, fit);
    for (Eigen::Index b = 1; b + 1 < est.density.size(); ++b) {
      double center = 0.5 * (est.bin_edges(b) + est.bin_edges(b + 1));
      double value;
      if (closed) {
        try {
          value = analytic_dos(g, center);
        } catch (const std::domain_error&) {
          continue;
        }
      } else {
        if (!(center > 0.0) || !(center < e_top)) continue;
        value = generalized_dos(fit.params.at("alpha"), fit.params.at("beta"), e_top, center);
      }
      curve.push_back({center, value});
    }
    std::string curve_path = write_table(
        r, r.prefix + (closed ? "_analytic_gamma" : "_fit_gamma") + label,
        {{"curve", closed ? "closed-form" : "fitted"}, {"curve_gamma", label}},
        {"energy", "density"}, curve);
    written.push_back(curve_path);
    plot_clauses.push_back("\"" + basename_of(curve_path) +
                           "\" using 1:2 with lines title \"gamma=" + label +
                           (closed ? " closed form\"" : " fit\""));
  }

  std::vector<std::vector<double>> inset_rows;
  for (const auto& [g, fit] : inset) {
    inset_rows.push_back({g, fit.params.at("alpha"), fit.params.at("beta"), fit.residual});
  }
  std::string inset_path = write_table(r, r.prefix + "_inset", {{"curve", "inset"}},
                                       {"gamma", "alpha", "beta", "residual"}, inset_rows);
  written.push_back(inset_path);

  std::string gp;
  gp += "set datafile separator \",\"\n";
  gp += "set terminal pngcairo size 900,700\n";
  gp += "set output \"" + basename_of(r.prefix) + ".png\"\n";
  gp += "set multiplot\n";
  gp += "set xlabel \"E\"\nset ylabel \"density of states\"\n";
  gp += "set yrange [0:1.2]\n";
  gp += "plot ";
  for (std::size_t i = 0; i < plot_clauses.size(); ++i) {
    if (i) gp += ", \\\n     ";
    gp += plot_clauses[i];
  }
  gp += "\n";
  gp += "set origin 0.55,0.55\nset size 0.4,0.4\n";
  gp += "set xlabel \"gamma\"\nset ylabel \"exponent\"\n";
  gp += "unset yrange\n";
  gp += "plot \"" + basename_of(inset_path) + "\" using 1:2 with points title \"alpha\", \\\n";
  gp += "     \"" + basename_of(inset_path) + "\" using 1:3 with points title \"beta\"\n";
  gp += "unset multiplot\n";
  std::string script = script_path_for(r.prefix);
  io::atomic_write_file(script, gp);
  written.push_back(script);
  return written;
}

std::vector<std::string> run_figure2(const ResolvedConfig& r) {
  std::vector<std::string> written;
  struct Panel {
    const char* observable;
    WalkKind kind;
    bool msd;
  };
  const Panel panels[] = {
      {"classical_return", WalkKind::classical, false},
      {"classical_msd", WalkKind::classical, true},
      {"quantum_return", WalkKind::quantum, false},
      {"quantum_msd", WalkKind::quantum, true},
  };
  for (double g : r.gammas) {
    RingSpec spec = make_spec(r.cfg, g);
    Spectrum s = full_spectrum(spec);
    std::string label = format_gamma(g);
    for (const Panel& p : panels) {
      TimeGrid grid = p.kind == WalkKind::classical
                          ? log_time_grid(10.0, 1000.0, r.cfg.points_per_decade)
                          : (p.msd ? log_time_grid(1.0, 100.0, r.cfg.points_per_decade)
                                   : linear_time_grid(1.0, 200.0, 0.02));
      TimeSeries series;
      if (p.msd) {
        series = msd_series(s, grid, p.kind);
      } else {
        series = (p.kind == WalkKind::classical) ? classical_return_avg(s, grid)
                                                 : quantum_return_avg(s, grid);
      }
      std::vector<std::vector<double>> rows;
      for (Eigen::Index i = 0; i < series.times.size(); ++i) {
        rows.push_back({series.times(i), series.values(i)});
      }
      written.push_back(write_table(r, r.prefix + "_" + p.observable + "_gamma" + label,
                                    {{"observable", p.observable}, {"curve_gamma", label}},
                                    {"t", "value"}, rows));
    }
  }
  std::string gp;
  gp += "set datafile separator \",\"\n";
  gp += "set terminal pngcairo size 1100,900\n";
  gp += "set output \"" + basename_of(r.prefix) + ".png\"\n";
  gp += "set logscale xy\n";
  gp += "set multiplot layout 2,2\n";
  const char* titles[] = {"classical return", "classical msd", "quantum return", "quantum msd"};
  for (int p = 0; p < 4; ++p) {
    gp += "set title \"" + std::string(titles[p]) + "\"\n";
    gp += "plot ";
    for (std::size_t i = 0; i < r.gammas.size(); ++i) {
      if (i) gp += ", \\\n     ";
      std::string label = format_gamma(r.gammas[i]);
      gp += "\"" + basename_of(r.prefix) + "_" + panels[p].observable + "_gamma" + label +
            "." + r.format + "\" using 1:2 with lines title \"gamma=" + label + "\"";
    }
    gp += "\n";
  }
  gp += "unset multiplot\n";
  std::string script = script_path_for(r.prefix);
  io::atomic_write_file(script, gp);
  written.push_back(script);
  return written;
}

std::vector<std::string> run_figure3(const ResolvedConfig& r) {
  std::vector<std::string> written;
  for (double g : r.gammas) {
    RingSpec spec = make_spec(r.cfg, g);
    Spectrum s = full_spectrum(spec);
    std::string label = format_gamma(g);
    TimeGrid grid = linear_time_grid(1.0, 100.0, 0.02);
    TimeSeries exact = quantum_return_avg(s, grid);
    std::vector<std::vector<double>> exact_rows, spa_rows;
    for (Eigen::Index i = 0; i < grid.times.size(); ++i) {
      double t = grid.times(i);
      exact_rows.push_back({t, exact.values(i)});
      spa_rows.push_back({t, spa_return_finite(spec, t)});
    }
    written.push_back(write_table(r, r.prefix + "_exact_gamma" + label,
                                  {{"curve", "exact"}, {"curve_gamma", label}},
                                  {"t", "value"}, exact_rows));
    written.push_back(write_table(r, r.prefix + "_spa_gamma" + label,
                                  {{"curve", "spa"}, {"curve_gamma", label}},
                                  {"t", "value"}, spa_rows));
  }
  std::string gp;
  gp += "set datafile separator \",\"\n";
  gp += "set terminal pngcairo size 900,700\n";
  gp += "set output \"" + basename_of(r.prefix) + ".png\"\n";
  gp += "set logscale xy\n";
  gp += "set xlabel \"t\"\nset ylabel \"average return probability\"\n";
  gp += "plot ";
  bool first = true;
  for (double g : r.gammas) {
    std::string label = format_gamma(g);
    if (!first) gp += ", \\\n     ";
    first = false;
    gp += "\"" + basename_of(r.prefix) + "_exact_gamma" + label + "." + r.format +
          "\" using 1:2 with lines title \"gamma=" + label + " exact\"";
    gp += ", \\\n     \"" + basename_of(r.prefix) + "_spa_gamma" + label + "." + r.format +
          "\" using 1:2 with lines dashtype 2 title \"gamma=" + label + " spa\"";
  }
  gp += "\n";
  std::string script = script_path_for(r.prefix);
  io::atomic_write_file(script, gp);
  written.push_back(script);
  return written;
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& config) {
  ResolvedConfig r = resolve(config);
  const std::string& e = config.experiment;
  if (e == "spectrum") return run_spectrum(r);
  if (e == "dos") return run_dos(r);
  if (e == "dos-fit") return run_dos_fit(r);
  if (e == "return" || e == "msd") return run_series(r);
  if (e == "spa") return run_spa(r);
  if (e == "classify") return run_classify(r);
  if (e == "figure1") return run_figure1(r);
  if (e == "figure2") return run_figure2(r);
  return run_figure3(r);
}

namespace {

struct Check {
  const char* name;
  std::function<bool(std::string&)> fn;
};

std::string err_detail(const char* what, double value) {
  return std::string(what) + " = " + format_double(value);
}

std::vector<Check> selfcheck_registry() {
  std::vector<Check> checks;

  checks.push_back({"spectrum-oracle", [](std::string& d) {
    double worst = 0.0;
    for (int n : {16, 64, 256}) {
      for (double g : {2.0, 3.0, kInf}) {
        RingSpec spec(n, g);
        Eigen::VectorXd a = full_spectrum(spec).eigenvalues;
        std::sort(a.data(), a.data() + a.size());
        Eigen::VectorXd b = diagonalize_spectrum(spec).eigenvalues;
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
      }
    }
    d = err_detail("max |analytic - diagonalized|", worst);
    return worst <= 1e-9;
  }});

  checks.push_back({"hamiltonian-invariants", [](std::string& d) {
    RingSpec spec(32, 2.5);
    Eigen::MatrixXd h = build_hamiltonian(spec);
    double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
    double row_sum = h.rowwise().sum().cwiseAbs().maxCoeff();
    double circ = 0.0;
    for (int i = 1; i < spec.n_nodes; ++i) {
      for (int j = 0; j < spec.n_nodes; ++j) {
        circ = std::max(circ, std::abs(h(i, j) - h(0, (j - i + spec.n_nodes) % spec.n_nodes)));
      }
    }
    double worst = std::max({asym, row_sum, circ});
    d = err_detail("max violation (symmetry, row sums, circulant)", worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"profile-normalization", [](std::string& d) {
    double worst = 0.0;
    for (int n : {16, 257}) {
      for (double g : {2.5, kInf}) {
        Spectrum s = full_spectrum(RingSpec(n, g));
        for (double t : {0.7, 3.1}) {
          for (WalkKind k : {WalkKind::classical, WalkKind::quantum}) {
            Eigen::VectorXd p = transition_probabilities(s, t, k);
            worst = std::max(worst, std::abs(p.sum() - 1.0));
            worst = std::max(worst, std::max(0.0, -p.minCoeff()));
          }
        }
      }
    }
    d = err_detail("max |sum - 1| or negativity", worst);
    return worst <= 1e-9;
  }});

  checks.push_back({"t0-identities", [](std::string& d) {
    Spectrum s = full_spectrum(RingSpec(64, 3.0));
    double worst = std::abs(classical_return_at(s, 0.0) - 1.0);
    worst = std::max(worst, std::abs(quantum_return_at(s, 0.0) - 1.0));
    for (WalkKind k : {WalkKind::classical, WalkKind::quantum}) {
      Eigen::VectorXd p = transition_probabilities(s, 0.0, k);
      worst = std::max(worst, std::abs(mean_squared_displacement(p)));
    }
    d = err_detail("max deviation at t = 0", worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"matexp-oracle", [](std::string& d) {
    double worst = 0.0;
    for (int n : {16, 64}) {
      for (double g : {2.0, kInf}) {
        Spectrum s = full_spectrum(RingSpec(n, g));
        for (double t : {0.9, 2.3}) {
          for (WalkKind k : {WalkKind::classical, WalkKind::quantum}) {
            Eigen::VectorXd fast = transition_probabilities(s, t, k);
            Eigen::VectorXd slow = testing::profile_via_matrix_exponential(s.spec, t, k);
            worst = std::max(worst, (fast - slow).cwiseAbs().maxCoeff());
          }
        }
      }
    }
    d = err_detail("max |mode sum - matrix exponential|", worst);
    return worst <= 1e-9;
  }});

  checks.push_back({"bessel-identity", [](std::string& d) {
    Spectrum s = full_spectrum(RingSpec(512, kInf));
    double worst = 0.0;
    for (int i = 0; i <= 80; ++i) {
      double t = 0.25 * i;
      double j0 = bessel_j0(2.0 * t);
      worst = std::max(worst, std::abs(quantum_return_at(s, t) - j0 * j0));
    }
    d = err_detail("max |ring return - line return| on [0,20]", worst);
    return worst <= 1e-6;
  }});

  checks.push_back({"special-values", [](std::string& d) {
    double worst = std::abs(riemann_zeta(2.0) - M_PI * M_PI / 6.0);
    worst = std::max(worst, std::abs(riemann_zeta(4.0) - std::pow(M_PI, 4) / 90.0));
    worst = std::max(worst, std::abs(dirichlet_eta(1.0) - std::log(2.0)));
    worst = std::max(worst, std::abs(bessel_j0(0.0) - 1.0));
    worst = std::max(worst, std::abs(bessel_j0(2.404825557695773)));
    d = err_detail("max error at known values", worst);
    return worst <= 1e-10;
  }});

  checks.push_back({"eta-zeta-identity", [](std::string& d) {
    double worst = 0.0;
    for (double s : {0.5, 1.5, 2.5, 4.0, 7.0, 10.0}) {
      double lhs = dirichlet_eta(s);
      double rhs = (1.0 - std::pow(2.0, 1.0 - s)) * riemann_zeta(s);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    d = err_detail("max |eta - (1 - 2^{1-s}) zeta|", worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"dos-normalization", [](std::string& d) {
    double worst = 0.0;
    for (double g : {2.0, 4.0, kInf}) {
      Spectrum s = full_spectrum(RingSpec(512, g));
      DosEstimate est = dos_histogram(s, 31);
      double integral = 0.0;
      for (Eigen::Index b = 0; b < est.density.size(); ++b) {
        integral += est.density(b) * (est.bin_edges(b + 1) - est.bin_edges(b));
      }
      worst = std::max(worst, std::abs(integral - 1.0));
    }
    d = err_detail("max |integral - 1|", worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"band-family-closed-forms", [](std::string& d) {
    double worst = 0.0;
    for (int i = 1; i < 40; ++i) {
      double e4 = 4.0 * i / 40.0;
      worst = std::max(worst, std::abs(generalized_dos(1.0, 2.0, 4.0, e4) -
                                       analytic_dos(kInf, e4)));
      double top2 = M_PI * M_PI / 2.0;
      double e2 = top2 * i / 40.0;
      worst = std::max(worst, std::abs(generalized_dos(0.0, 1.0, top2, e2) -
                                       analytic_dos(2.0, e2)));
      double top4 = std::pow(M_PI, 4) / 24.0;
      double e44 = top4 * i / 40.0;
      worst = std::max(worst, std::abs(generalized_dos(1.0, 1.5, top4, e44) -
                                       analytic_dos(4.0, e44)));
    }
    d = err_detail("max |band family - closed form|", worst);
    return worst <= 1e-8;
  }});

  checks.push_back({"spa-closed-forms", [](std::string& d) {
    double worst = 0.0;
    for (double t : {3.0, 17.0, 88.0}) {
      worst = std::max(worst, std::abs(spa_return_infinite(2.0, t) * 2.0 * M_PI * t - 1.0));
      worst = std::max(worst,
                       std::abs(spa_return_infinite(3.0, t) * 2.0 * M_PI * std::log(2.0) * t - 1.0));
      double s = std::sin(2.0 * t + M_PI / 4.0);
      worst = std::max(worst,
                       std::abs(spa_return_infinite(kInf, t) - s * s / (M_PI * t)));
    }
    d = err_detail("max closed-form deviation", worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"power-law-fitter", [](std::string& d) {
    TimeGrid grid = log_time_grid(1.0, 100.0, 30);
    TimeSeries series;
    series.times = grid.times;
    series.values = grid.times.array().pow(-0.5);
    FitResult fit = fit_power_law(series, 1.0, 100.0, false);
    double worst = std::abs(fit.params.at("slope") + 0.5);

    TimeGrid env_grid = linear_time_grid(5.0, 500.0, 0.02);
    TimeSeries env;
    env.times = env_grid.times;
    env.values.resize(env_grid.times.size());
    for (Eigen::Index i = 0; i < env_grid.times.size(); ++i) {
      double t = env_grid.times(i);
      double s = std::sin(2.0 * t + M_PI / 4.0);
      env.values(i) = s * s / (M_PI * t);
    }
    FitResult efit = fit_power_law(env, 5.0, 500.0, true);
    double env_err = std::abs(efit.params.at("slope") + 1.0);
    d = "exact slope error = " + format_double(worst) +
        ", envelope slope = " + format_double(efit.params.at("slope"));
    return worst <= 1e-10 && env_err <= 0.02;
  }});

  checks.push_back({"dos-fit-synthetic", [](std::string& d) {
    const double alpha = 0.5, beta = 1.5, e_max = 4.0;
    const int n_bins = 200;
    DosEstimate est;
    est.bin_edges.resize(n_bins + 1);
    est.density.resize(n_bins);
    est.counts = Eigen::VectorXi::Ones(n_bins);
    est.n_total = n_bins;
    double width = e_max / n_bins;
    for (int b = 0; b <= n_bins; ++b) est.bin_edges(b) = width * b;
    for (int b = 0; b < n_bins; ++b) {
      est.density(b) = generalized_dos(alpha, beta, e_max, width * (b + 0.5));
    }
    FitResult fit = fit_dos_exponents(est, e_max);
    double worst = std::max(std::abs(fit.params.at("alpha") - alpha),
                            std::abs(fit.params.at("beta") - beta));
    d = "alpha = " + format_double(fit.params.at("alpha")) +
        ", beta = " + format_double(fit.params.at("beta"));
    return worst <= 0.05 && fit.converged;
  }});

  return checks;
}

}  // namespace

bool selfcheck(bool list_only, std::ostream& out) {
  std::vector<Check> checks = selfcheck_registry();
  if (list_only) {
    for (const Check& c : checks) out << c.name << "\n";
    return true;
  }
  bool all_pass = true;
  for (const Check& c : checks) {
    std::string detail;
    bool pass = false;
    try {
      pass = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    out << (pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << detail << "\n";
    all_pass = all_pass && pass;
  }
  return all_pass;
}

}  // namespace ringwalk
