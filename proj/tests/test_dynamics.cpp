#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "ringwalk/dynamics.hpp"
#include "ringwalk/special.hpp"
#include "ringwalk/testing.hpp"

using namespace ringwalk;

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("time grid validation") {
  CHECK_THROWS_AS(log_time_grid(0.0, 10.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(log_time_grid(10.0, 5.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(log_time_grid(1.0, 10.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(linear_time_grid(-1.0, 10.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(linear_time_grid(0.0, 10.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(linear_time_grid(3.0, 3.0, 0.5), std::invalid_argument);

  Eigen::VectorXd bad(3);
  bad << 0.0, 2.0, 2.0;
  CHECK_THROWS_AS(TimeGrid{bad}, std::invalid_argument);
  Eigen::VectorXd neg(2);
  neg << -1.0, 2.0;
  CHECK_THROWS_AS(TimeGrid{neg}, std::invalid_argument);
  Eigen::VectorXd single(1);
  single << 0.0;
  CHECK_NOTHROW(TimeGrid{single});
}

TEST_CASE("log grid covers decades evenly") {
  TimeGrid g = log_time_grid(10.0, 1000.0, 50);
  CHECK(g.times.size() == 101);
  CHECK(g.times(0) == 10.0);
  CHECK(g.times(100) == doctest::Approx(1000.0).epsilon(1e-12));
  double ratio = std::pow(10.0, 1.0 / 50.0);
  for (int i = 1; i < 101; ++i) {
    CHECK(g.times(i) / g.times(i - 1) == doctest::Approx(ratio).epsilon(1e-12));
  }
}

TEST_CASE("linear grid includes both ends") {
  TimeGrid g = linear_time_grid(0.0, 1.0, 0.25);
  CHECK(g.times.size() == 5);
  CHECK(g.times(0) == 0.0);
  CHECK(g.times(4) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("walk starts as a point mass at node 0") {
  for (double gamma : {2.0, kInf}) {
    Spectrum s = full_spectrum(RingSpec(64, gamma));
    for (WalkKind kind : {WalkKind::classical, WalkKind::quantum}) {
      Eigen::VectorXd p = transition_probabilities(s, 0.0, kind);
      CHECK(std::abs(p(0) - 1.0) < 1e-12);
      for (int k = 1; k < 64; ++k) CHECK(std::abs(p(k)) < 1e-13);
    }
    CHECK(classical_return_at(s, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(quantum_return_at(s, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("profiles stay normalized, nonnegative and reflection symmetric") {
  for (int n : {16, 257}) {
    for (double gamma : {2.0, 3.5, kInf}) {
      Spectrum s = full_spectrum(RingSpec(n, gamma));
      for (WalkKind kind : {WalkKind::classical, WalkKind::quantum}) {
        for (double t : {0.7, 3.1, 12.0}) {
          Eigen::VectorXd p = transition_probabilities(s, t, kind);
          CHECK(std::abs(p.sum() - 1.0) < 1e-9);
          CHECK(p.minCoeff() > -1e-12);
          for (int k = 1; k < n; ++k) {
            CHECK(std::abs(p(k) - p(n - k)) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("classical walk equilibrates to the uniform distribution") {
  Spectrum s = full_spectrum(RingSpec(32, kInf));
  Eigen::VectorXd p = transition_probabilities(s, 1000.0, WalkKind::classical);
  for (int k = 0; k < 32; ++k) {
    CHECK(std::abs(p(k) - 1.0 / 32.0) < 1e-12);
  }
}

TEST_CASE("classical return decays monotonically toward 1/N") {
  Spectrum s = full_spectrum(RingSpec(64, 3.0));
  TimeSeries ret = classical_return_avg(s, log_time_grid(0.1, 100.0, 10));
  for (Eigen::Index i = 0; i < ret.values.size(); ++i) {
    CHECK(ret.values(i) >= 1.0 / 64.0 - 1e-15);
    if (i > 0) CHECK(ret.values(i) < ret.values(i - 1));
  }
}

TEST_CASE("return average equals the node-0 profile entry") {
  Spectrum s = full_spectrum(RingSpec(128, 2.0));
  for (double t : {0.5, 7.3}) {
    Eigen::VectorXd pc = transition_probabilities(s, t, WalkKind::classical);
    Eigen::VectorXd pq = transition_probabilities(s, t, WalkKind::quantum);
    CHECK(std::abs(classical_return_at(s, t) - pc(0)) < 1e-12);
    CHECK(std::abs(quantum_return_at(s, t) - pq(0)) < 1e-12);
  }
}

TEST_CASE("spectral propagation matches the matrix exponential oracle") {
  for (int n : {8, 16, 64}) {
    for (double gamma : {2.0, 3.0, kInf}) {
      RingSpec spec(n, gamma);
      Spectrum s = full_spectrum(spec);
      for (WalkKind kind : {WalkKind::classical, WalkKind::quantum}) {
        for (double t : {0.3, 1.0, 2.7}) {
          Eigen::VectorXd p = transition_probabilities(s, t, kind);
          Eigen::VectorXd q = testing::profile_via_matrix_exponential(spec, t, kind);
          CHECK((p - q).cwiseAbs().maxCoeff() < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("nearest-neighbor quantum return follows the squared bessel function") {
  // before the wavefront wraps, the 512-ring is indistinguishable from the line
  Spectrum s = full_spectrum(RingSpec(512, kInf));
  TimeGrid g = linear_time_grid(0.0, 20.0, 0.25);
  for (Eigen::Index i = 0; i < g.times.size(); ++i) {
    double t = g.times(i);
    double j = bessel_j0(2.0 * t);
    CHECK(std::abs(quantum_return_at(s, t) - j * j) < 1e-6);
  }
}

TEST_CASE("nearest-neighbor spread laws before wrap") {
  Spectrum s = full_spectrum(RingSpec(512, kInf));
  // ballistic: msd = 2 t^2; diffusive: msd = 2 t
  for (double t : {0.5, 2.0, 5.0}) {
    double mq = mean_squared_displacement(transition_probabilities(s, t, WalkKind::quantum));
    double mc = mean_squared_displacement(transition_probabilities(s, t, WalkKind::classical));
    CHECK(mq == doctest::Approx(2.0 * t * t).epsilon(1e-8));
    CHECK(mc == doctest::Approx(2.0 * t).epsilon(1e-8));
  }
  double m0 = mean_squared_displacement(transition_probabilities(s, 0.0, WalkKind::quantum));
  CHECK(std::abs(m0) < 1e-12);
}

TEST_CASE("msd series walks the grid") {
  Spectrum s = full_spectrum(RingSpec(128, kInf));
  TimeGrid g = linear_time_grid(0.5, 2.0, 0.5);
  TimeSeries m = msd_series(s, g, WalkKind::quantum);
  CHECK(m.times.size() == 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(m.values(i) == doctest::Approx(2.0 * m.times(i) * m.times(i)).epsilon(1e-8));
  }
}

TEST_CASE("profiles reject sorted spectra and negative times") {
  Spectrum d = diagonalize_spectrum(RingSpec(16, 2.0));
  CHECK_THROWS_AS(transition_probabilities(d, 1.0, WalkKind::quantum),
                  std::invalid_argument);
  Spectrum a = full_spectrum(RingSpec(16, 2.0));
  CHECK_THROWS_AS(transition_probabilities(a, -0.5, WalkKind::classical),
                  std::invalid_argument);
}
