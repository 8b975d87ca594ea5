#include "ringwalk/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace ringwalk {

std::vector<Eigen::Index> local_maxima_indices(const Eigen::VectorXd& values) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 1; i + 1 < values.size(); ++i) {
    if (values(i) > values(i - 1) && values(i) > values(i + 1)) idx.push_back(i);
  }
  return idx;
}

namespace {

struct LogLogFit {
  double slope;
  double intercept;
  double residual;
};

LogLogFit regress(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (intercept + slope * x[i]);
    sse += r * r;
  }
  return {slope, intercept, std::sqrt(sse / n)};
}

}  // namespace

FitResult fit_power_law(const TimeSeries& series, double t_lo, double t_hi,
                        bool use_envelope) {
  if (!(t_lo < t_hi)) {
    throw std::invalid_argument("fit window needs t_lo < t_hi");
  }
  std::vector<Eigen::Index> candidates;
  if (use_envelope) {
    candidates = local_maxima_indices(series.values);
  } else {
    candidates.resize(static_cast<std::size_t>(series.values.size()));
    for (Eigen::Index i = 0; i < series.values.size(); ++i) {
      candidates[static_cast<std::size_t>(i)] = i;
    }
  }
  std::vector<double> x, y;
  for (Eigen::Index i : candidates) {
    double t = series.times(i);
    double v = series.values(i);
    if (t < t_lo || t > t_hi) continue;
    if (!(v > 0.0) || !(t > 0.0)) continue;  // log coordinates need both positive
    x.push_back(std::log(t));
    y.push_back(std::log(v));
  }
  if (x.size() < 10) {
    throw std::invalid_argument("power-law fit needs at least 10 usable points");
  }
  LogLogFit f = regress(x, y);
  FitResult result;
  result.params["slope"] = f.slope;
  result.params["intercept"] = f.intercept;
  result.residual = f.residual;
  result.window_lo = t_lo;
  result.window_hi = t_hi;
  result.n_points = static_cast<int>(x.size());
  result.converged = true;
  return result;
}

namespace {

struct DosObjective {
  std::vector<double> energy;  // interior bin centers
  std::vector<double> y;       // density^-2
  double e_max;

  // profiled-scale sum of squares; box violations get a wall
  double operator()(double alpha, double beta, double* scale_out = nullptr) const {
    if (alpha < 0.0 || alpha > 1.0 || beta < 1.0 || beta > 2.0 || beta <= alpha + 1e-9) {
      return 1e300;
    }
    double c = std::pow(e_max, beta - alpha);
    double sym = 0.0, smm = 0.0;
    std::vector<double> m(energy.size());
    for (std::size_t i = 0; i < energy.size(); ++i) {
      m[i] = c * std::pow(energy[i], alpha) - std::pow(energy[i], beta);
      sym += y[i] * m[i];
      smm += m[i] * m[i];
    }
    if (!(smm > 0.0)) return 1e300;
    double s = sym / smm;
    if (scale_out) *scale_out = s;
    double sse = 0.0;
    for (std::size_t i = 0; i < energy.size(); ++i) {
      double r = y[i] - s * m[i];
      sse += r * r;
    }
    return sse;
  }
};

struct SimplexPoint {
  double a, b, f;
};

// deterministic two-parameter Nelder-Mead inside the (alpha, beta) box
SimplexPoint nelder_mead(const DosObjective& obj, double a0, double b0) {
  auto eval = [&](double a, double b) { return SimplexPoint{a, b, obj(a, b)}; };
  double da = (a0 + 0.1 <= 1.0) ? 0.1 : -0.1;
  double db = (b0 + 0.1 <= 2.0) ? 0.1 : -0.1;
  std::array<SimplexPoint, 3> s = {eval(a0, b0), eval(a0 + da, b0), eval(a0, b0 + db)};
  for (int iter = 0; iter < 300; ++iter) {
    std::sort(s.begin(), s.end(),
              [](const SimplexPoint& p, const SimplexPoint& q) { return p.f < q.f; });
    if (std::abs(s[0].a - s[2].a) + std::abs(s[0].b - s[2].b) < 1e-12) break;
    double ca = 0.5 * (s[0].a + s[1].a);
    double cb = 0.5 * (s[0].b + s[1].b);
    SimplexPoint refl = eval(ca + (ca - s[2].a), cb + (cb - s[2].b));
    if (refl.f < s[0].f) {
      SimplexPoint exp_ = eval(ca + 2.0 * (ca - s[2].a), cb + 2.0 * (cb - s[2].b));
      s[2] = (exp_.f < refl.f) ? exp_ : refl;
    } else if (refl.f < s[1].f) {
      s[2] = refl;
    } else {
      SimplexPoint con = eval(ca + 0.5 * (s[2].a - ca), cb + 0.5 * (s[2].b - cb));
      if (con.f < s[2].f) {
        s[2] = con;
      } else {
        s[1] = eval(s[0].a + 0.5 * (s[1].a - s[0].a), s[0].b + 0.5 * (s[1].b - s[0].b));
        s[2] = eval(s[0].a + 0.5 * (s[2].a - s[0].a), s[0].b + 0.5 * (s[2].b - s[0].b));
      }
    }
  }
  std::sort(s.begin(), s.end(),
            [](const SimplexPoint& p, const SimplexPoint& q) { return p.f < q.f; });
  return s[0];
}

}  // namespace

FitResult fit_dos_exponents(const DosEstimate& dos, double e_max) {
  if (!(e_max > 0.0)) {
    throw std::invalid_argument("dos exponent fit needs e_max > 0");
  }
  const int n_bins = static_cast<int>(dos.density.size());
  DosObjective obj;
  obj.e_max = e_max;
  for (int b = 1; b + 1 < n_bins; ++b) {  // outermost bin at each edge excluded
    double d = dos.density(b);
    if (!(d > 0.0)) continue;
    double center = 0.5 * (dos.bin_edges(b) + dos.bin_edges(b + 1));
    if (!(center < e_max)) continue;
    obj.energy.push_back(center);
    obj.y.push_back(1.0 / (d * d));
  }
  if (obj.energy.size() < 20) {
    throw std::invalid_argument("dos exponent fit needs >= 20 positive interior bins");
  }

  SimplexPoint best{0.0, 0.0, 1e301};
  for (double a0 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double b0 : {1.0, 1.25, 1.5, 1.75, 2.0}) {
      if (b0 <= a0 + 1e-9) continue;
      SimplexPoint cand = nelder_mead(obj, a0, b0);
      bool better = cand.f < best.f - 1e-18 ||
                    (std::abs(cand.f - best.f) <= 1e-18 && cand.b < best.b);
      if (better) best = cand;
    }
  }

  double scale = 0.0;
  double sse = obj(best.a, best.b, &scale);
  double n = static_cast<double>(obj.energy.size());
  double rms_y = 0.0;
  for (double v : obj.y) rms_y += v * v;
  rms_y = std::sqrt(rms_y / n);

  FitResult result;
  result.params["alpha"] = best.a;
  result.params["beta"] = best.b;
  result.params["scale"] = scale;
  result.residual = std::sqrt(sse / n);
  result.window_lo = obj.energy.front();
  result.window_hi = obj.energy.back();
  result.n_points = static_cast<int>(obj.energy.size());
  result.converged = result.residual <= 0.25 * rms_y;
  return result;
}

FitResult msd_return_relation_check(const RingSpec& spec, const TimeGrid& grid,
                                    WalkKind kind) {
  if (kind == WalkKind::classical && !(spec.gamma > 3.0)) {
    throw std::invalid_argument(
        "the classical msd-return relation holds for gamma > 3 only");
  }
  Spectrum s = full_spectrum(spec);
  std::vector<double> x, y;
  if (kind == WalkKind::classical) {
    for (Eigen::Index i = 0; i < grid.times.size(); ++i) {
      double t = grid.times(i);
      if (!(t > 0.0)) continue;
      double ret = classical_return_at(s, t);
      double msd = mean_squared_displacement(
          transition_probabilities(s, t, WalkKind::classical));
      if (!(ret > 0.0) || !(msd > 0.0)) continue;
      x.push_back(-2.0 * std::log(ret));
      y.push_back(std::log(msd));
    }
  } else {
    TimeSeries ret = quantum_return_avg(s, grid);
    for (Eigen::Index i : local_maxima_indices(ret.values)) {
      double t = ret.times(i);
      double r = ret.values(i);
      if (!(t > 0.0) || !(r > 0.0)) continue;
      double msd = mean_squared_displacement(
          transition_probabilities(s, t, WalkKind::quantum));
      if (!(msd > 0.0)) continue;
      x.push_back(-2.0 * std::log(r));
      y.push_back(std::log(msd));
    }
  }
  if (x.size() < 10) {
    throw std::invalid_argument("msd-return regression needs at least 10 usable points");
  }
  LogLogFit f = regress(x, y);
  FitResult result;
  result.params["slope"] = f.slope;
  result.params["intercept"] = f.intercept;
  result.residual = f.residual;
  result.window_lo = grid.times(0);
  result.window_hi = grid.times(grid.times.size() - 1);
  result.n_points = static_cast<int>(x.size());
  result.converged = true;
  return result;
}

UniversalityReport classify_universality(const RingSpec& spec,
                                         const std::map<std::string, FitResult>& fits) {
  (void)spec;
  for (const char* key : {"classical_return", "quantum_return_envelope",
                          "classical_msd", "quantum_msd"}) {
    if (fits.find(key) == fits.end()) {
      throw std::invalid_argument(std::string("classification needs fit '") + key + "'");
    }
  }
  double ret = fits.at("classical_return").params.at("slope");
  double env = fits.at("quantum_return_envelope").params.at("slope");
  double msd_c = fits.at("classical_msd").params.at("slope");
  double msd_q = fits.at("quantum_msd").params.at("slope");
  UniversalityReport report;
  bool normal = std::abs(ret + 0.5) <= 0.1 && std::abs(msd_c - 1.0) <= 0.1;
  bool universal = std::abs(env + 1.0) <= 0.1 && std::abs(msd_q - 2.0) <= 0.1;
  report.classical_verdict = normal ? "normal-diffusive" : "anomalous";
  report.quantum_verdict = universal ? "universal" : "non-universal";
  return report;
}

RingClassification classify_ring(const RingSpec& spec) {
  Spectrum s = full_spectrum(spec);
  RingClassification out;

  TimeGrid slow = log_time_grid(10.0, 1000.0, 50);
  out.fits["classical_return"] =
      fit_power_law(classical_return_avg(s, slow), 10.0, 1000.0, false);
  out.fits["classical_msd"] =
      fit_power_law(msd_series(s, slow, WalkKind::classical), 10.0, 1000.0, false);

  TimeGrid osc = linear_time_grid(20.0, 200.0, 0.02);
  out.fits["quantum_return_envelope"] =
      fit_power_law(quantum_return_avg(s, osc), 20.0, 200.0, true);

  TimeGrid ballistic = log_time_grid(1.0, 100.0, 50);
  out.fits["quantum_msd"] =
      fit_power_law(msd_series(s, ballistic, WalkKind::quantum), 1.0, 100.0, false);

  out.report = classify_universality(spec, out.fits);
  return out;
}

}  // namespace ringwalk
