#include "ringwalk/dynamics.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ringwalk {

TimeGrid::TimeGrid(Eigen::VectorXd t) : times(std::move(t)) {
  if (times.size() == 0) {
    throw std::invalid_argument("time grid must not be empty");
  }
  if (!(times(0) >= 0.0)) {
    throw std::invalid_argument("time grid must start at t >= 0");
  }
  for (Eigen::Index i = 1; i < times.size(); ++i) {
    if (!(times(i) > times(i - 1))) {
      throw std::invalid_argument("time grid must be strictly increasing");
    }
  }
}

TimeGrid log_time_grid(double t_min, double t_max, int points_per_decade) {
  if (!(t_min > 0.0) || !(t_max > t_min)) {
    throw std::invalid_argument("log time grid needs 0 < t_min < t_max");
  }
  if (points_per_decade < 1) {
    throw std::invalid_argument("log time grid needs points_per_decade >= 1");
  }
  int n = static_cast<int>(std::floor(points_per_decade * std::log10(t_max / t_min) + 1e-9)) + 1;
  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) {
    t(i) = t_min * std::pow(10.0, static_cast<double>(i) / points_per_decade);
  }
  return TimeGrid(std::move(t));
}

TimeGrid linear_time_grid(double t_min, double t_max, double dt) {
  if (!(t_min >= 0.0) || !(t_max > t_min) || !(dt > 0.0)) {
    throw std::invalid_argument("linear time grid needs 0 <= t_min < t_max and dt > 0");
  }
  int n = static_cast<int>(std::floor((t_max - t_min) / dt + 1e-9)) + 1;
  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) t(i) = t_min + dt * static_cast<double>(i);
  return TimeGrid(std::move(t));
}

double classical_return_at(const Spectrum& spectrum, double t) {
  const Eigen::Index n = spectrum.eigenvalues.size();
  double acc = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) acc += std::exp(-spectrum.eigenvalues(m) * t);
  return acc / static_cast<double>(n);
}

double quantum_return_at(const Spectrum& spectrum, double t) {
  const Eigen::Index n = spectrum.eigenvalues.size();
  double re = 0.0, im = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    double phase = spectrum.eigenvalues(m) * t;
    re += std::cos(phase);
    im -= std::sin(phase);
  }
  re /= static_cast<double>(n);
  im /= static_cast<double>(n);
  return re * re + im * im;
}

namespace {

TimeSeries tabulate(const Spectrum& spectrum, const TimeGrid& grid,
                    double (*f)(const Spectrum&, double)) {
  TimeSeries s;
  s.times = grid.times;
  s.values.resize(grid.times.size());
  for (Eigen::Index i = 0; i < grid.times.size(); ++i) {
    s.values(i) = f(spectrum, grid.times(i));
  }
  return s;
}

}  // namespace

TimeSeries classical_return_avg(const Spectrum& spectrum, const TimeGrid& grid) {
  return tabulate(spectrum, grid, classical_return_at);
}

TimeSeries quantum_return_avg(const Spectrum& spectrum, const TimeGrid& grid) {
  return tabulate(spectrum, grid, quantum_return_at);
}

Eigen::VectorXd transition_probabilities(const Spectrum& spectrum, double t, WalkKind kind) {
  if (spectrum.source != SpectrumSource::analytic) {
    throw std::invalid_argument(
        "transition_probabilities needs a mode-indexed spectrum; "
        "sorted eigenvalues lose the mode-to-node pairing");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("transition_probabilities needs t >= 0");
  }
  const int n = static_cast<int>(spectrum.eigenvalues.size());
  std::vector<std::complex<double>> modes(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    double e = spectrum.eigenvalues(m);
    if (kind == WalkKind::quantum) {
      modes[static_cast<std::size_t>(m)] = std::polar(1.0, -e * t);
    } else {
      modes[static_cast<std::size_t>(m)] = std::exp(-e * t);
    }
  }
  // inverse DFT: amp_k = (1/N) sum_m modes_m exp(+2 pi i m k / N)
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> amp;
  fft.inv(amp, modes);
  Eigen::VectorXd p(n);
  for (int k = 0; k < n; ++k) {
    const auto& a = amp[static_cast<std::size_t>(k)];
    p(k) = (kind == WalkKind::quantum) ? std::norm(a) : a.real();
  }
  return p;
}

double mean_squared_displacement(const Eigen::VectorXd& profile) {
  const Eigen::Index n = profile.size();
  if (n == 0) throw std::invalid_argument("empty profile");
  double acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    double d = static_cast<double>(std::min(k, n - k));
    acc += d * d * profile(k);
  }
  return acc;
}

TimeSeries msd_series(const Spectrum& spectrum, const TimeGrid& grid, WalkKind kind) {
  TimeSeries s;
  s.times = grid.times;
  s.values.resize(grid.times.size());
  for (Eigen::Index i = 0; i < grid.times.size(); ++i) {
    s.values(i) = mean_squared_displacement(
        transition_probabilities(spectrum, grid.times(i), kind));
  }
  return s;
}

}  // namespace ringwalk
