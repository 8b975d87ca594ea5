#include "ringwalk/special.hpp"

#include <cmath>
#include <stdexcept>

namespace ringwalk {

namespace {

// B_2, B_4, ..., B_24
constexpr double kBernoulli[12] = {
    1.0 / 6.0,          -1.0 / 30.0,        1.0 / 42.0,
    -1.0 / 30.0,        5.0 / 66.0,         -691.0 / 2730.0,
    7.0 / 6.0,          -3617.0 / 510.0,    43867.0 / 798.0,
    -174611.0 / 330.0,  854513.0 / 138.0,   -236364091.0 / 2730.0};

}  // namespace

double riemann_zeta(double s) {
  if (std::isnan(s) || s <= 0.0 || s == 1.0)
    throw std::invalid_argument("riemann_zeta: need s in (0,1) or s > 1");
  if (std::isinf(s)) return 1.0;

  constexpr int M = 20;
  long double acc = 0.0L;
  for (int n = 1; n < M; ++n) acc += std::pow(static_cast<long double>(n), -(long double)s);
  const long double lm = static_cast<long double>(M);
  acc += std::pow(lm, 1.0L - (long double)s) / ((long double)s - 1.0L);
  acc += 0.5L * std::pow(lm, -(long double)s);

  // Euler-Maclaurin tail: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * M^{-s-2j+1}
  long double rising = (long double)s;        // s(s+1)...(s+2j-2)
  long double factorial = 2.0L;               // (2j)!
  long double mpow = std::pow(lm, -(long double)s - 1.0L);
  for (int j = 1; j <= 12; ++j) {
    acc += (long double)kBernoulli[j - 1] / factorial * rising * mpow;
    rising *= ((long double)s + 2.0L * j - 1.0L) * ((long double)s + 2.0L * j);
    factorial *= (2.0L * j + 1.0L) * (2.0L * j + 2.0L);
    mpow /= lm * lm;
  }
  return static_cast<double>(acc);
}

double dirichlet_eta(double s) {
  if (std::isnan(s) || s < 0.0)
    throw std::invalid_argument("dirichlet_eta: need s >= 0");
  if (std::isinf(s)) return 1.0;

  constexpr int n = 48;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0, c = -d;
  long double acc = 0.0L;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    acc += (long double)c * std::pow(static_cast<long double>(k + 1), -(long double)s);
    b *= (double)(k + n) * (double)(k - n) / (((double)k + 0.5) * (double)(k + 1));
  }
  return static_cast<double>(acc / (long double)d);
}

namespace {

double j0_series(double x) {
  // sum_k (-1)^k (x/2)^{2k} / (k!)^2; largest term ~1.7e5 at x=16, so
  // long-double accumulation keeps the cancellation error near 1e-14
  const long double q = (long double)x * (long double)x / 4.0L;
  long double term = 1.0L, acc = 1.0L;
  for (int k = 1; k < 80; ++k) {
    term *= -q / ((long double)k * (long double)k);
    acc += term;
    if (std::abs((double)term) < 1e-20) break;
  }
  return static_cast<double>(acc);
}

double j0_asymptotic(double x) {
  // J0(x) ~ sqrt(2/(pi x)) [P cos(x - pi/4) + Q sin(x - pi/4)],
  // u_m = u_{m-1} (2m-1)^2 / m, alternating every second term
  const long double invz = 1.0L / (8.0L * (long double)x);
  long double u = 1.0L, pw = 1.0L, p = 0.0L, q = 0.0L;
  for (int m = 0; m < 12; ++m) {
    if (m > 0) u *= (long double)((2 * m - 1) * (2 * m - 1)) / (long double)m;
    long double sgn = ((m / 2) % 2 == 0) ? 1.0L : -1.0L;
    if (m % 2 == 0)
      p += sgn * u * pw;
    else
      q += sgn * u * pw;
    pw *= invz;
  }
  const long double w = (long double)x - 0.78539816339744830961566084581988L;  // x - pi/4
  long double val = std::sqrt(2.0L / (3.14159265358979323846264338328L * (long double)x)) *
                    (std::cos(w) * p + std::sin(w) * q);
  return static_cast<double>(val);
}

}  // namespace

double bessel_j0(double x) {
  if (std::isnan(x) || x < 0.0) throw std::invalid_argument("bessel_j0: need x >= 0");
  return (x < 16.0) ? j0_series(x) : j0_asymptotic(x);
}

}  // namespace ringwalk
