#pragma once

// Special functions with complex parameters. Every evaluator is templated on
// the argument type so that it runs on plain complex numbers and on jets
// (giving exact derivatives for ODE residual checks).

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dskg/cases.hpp"
#include "dskg/jet.hpp"

namespace dskg::sf {

inline constexpr double kSeriesLimit = 50.0;
inline constexpr double kDegenerateOffset = 1e-3;

cplx gamma(cplx z);
// 1/Gamma(z), zero at the poles.
cplx rgamma(cplx z);
bool near_nonpositive_integer(cplx z, double tol = 1e-12);
bool near_integer(cplx z, double tol);

namespace detail {

inline bool small_sum(double term, double sum) { return term <= 1e-17 * std::max(sum, 1e-300); }

// Symmetric offset in a parameter plus one Richardson step:
// f(p) ~ (4 m(h/2) - m(h)) / 3 with m(h) = (f(p+h) + f(p-h)) / 2.
template <class F>
auto richardson(F&& f, cplx p) {
  double h = kDegenerateOffset;
  // keep every sample clear of the exact integer
  for (double t : {1.0, -1.0, 0.5, -0.5})
    if (near_integer(p + t * h, 1e-9)) h *= 2.0;
  auto m1 = (f(p + h) + f(p - h)) * 0.5;
  auto m2 = (f(p + h / 2) + f(p - h / 2)) * 0.5;
  return (m2 * 4.0 - m1) * (1.0 / 3.0);
}

}  // namespace detail

// Kummer's M(a, b, z) by its Taylor series, |z| <= 50.
template <class T>
T kummer_m(cplx a, cplx b, const T& z) {
  if (near_nonpositive_integer(b)) throw DomainError("kummer_m: b is a nonpositive integer");
  if (std::abs(value_of(z)) > kSeriesLimit) throw DomainError("kummer_m: |z| beyond the series regime");
  T term(1.0);
  T sum = term;
  int quiet = 0;
  for (int k = 0; k < 5000; ++k) {
    cplx ak = a + double(k);
    if (ak == 0.0) break;  // terminating series
    term = term * z * (ak / ((b + double(k)) * double(k + 1)));
    sum = sum + term;
    if (detail::small_sum(mag(term), mag(sum)) && k > std::abs(a) + std::abs(value_of(z))) {
      if (++quiet == 2) break;
    } else {
      quiet = 0;
    }
  }
  return sum;
}

// Tricomi's U through the connection formula with two M's (b not an integer).
template <class T>
T kummer_u_connection(cplx a, cplx b, const T& z) {
  using std::pow;
  T m1 = kummer_m(a, b, z) * (gamma(1.0 - b) * rgamma(a - b + 1.0));
  T m2 = pow(z, 1.0 - b) * kummer_m(a - b + 1.0, 2.0 - b, z) * (gamma(b - 1.0) * rgamma(a));
  return m1 + m2;
}

// Near integer b the connection formula degenerates; the limit is taken by
// an offset in b with Richardson extrapolation.
template <class T>
T kummer_u(cplx a, cplx b, const T& z) {
  if (near_integer(b, 1e-6))
    return detail::richardson([&](cplx bb) { return kummer_u_connection(a, bb, z); }, b);
  return kummer_u_connection(a, b, z);
}

template <class T>
T whittaker_m(cplx alpha, cplx beta, const T& z) {
  using std::exp, std::pow;
  return exp(z * -0.5) * pow(z, 0.5 + beta) * kummer_m(0.5 + beta - alpha, 1.0 + 2.0 * beta, z);
}

template <class T>
T whittaker_w(cplx alpha, cplx beta, const T& z) {
  using std::exp, std::pow;
  return exp(z * -0.5) * pow(z, 0.5 + beta) * kummer_u(0.5 + beta - alpha, 1.0 + 2.0 * beta, z);
}

// J_nu(z) = (z/2)^nu sum_k (-z^2/4)^k / (k! Gamma(nu+k+1)).
template <class T>
T bessel_j(cplx nu, const T& z) {
  using std::pow;
  if (std::abs(value_of(z)) > kSeriesLimit) throw DomainError("bessel_j: |z| beyond the series regime");
  T w = z * z * -0.25;
  cplx c = rgamma(nu + 1.0);
  T p(1.0);
  T sum = p * c;
  int quiet = 0;
  for (int k = 1; k < 5000; ++k) {
    cplx d = nu + double(k);
    c = (c == 0.0) ? rgamma(d + 1.0) / std::tgamma(double(k + 1)) : c / (double(k) * d);
    p = p * w;
    T term = p * c;
    sum = sum + term;
    if (detail::small_sum(mag(term), mag(sum)) && k > std::abs(value_of(z)) && k > std::abs(nu)) {
      if (++quiet == 2) break;
    } else {
      quiet = 0;
    }
  }
  return pow(z * 0.5, nu) * sum;
}

template <class T>
T bessel_y_noninteger(cplx nu, const T& z) {
  const double pi = std::numbers::pi;
  return (bessel_j(nu, z) * std::cos(nu * pi) - bessel_j(-nu, z)) * (1.0 / std::sin(nu * pi));
}

template <class T>
T bessel_y(cplx nu, const T& z) {
  if (near_integer(nu, 1e-6)) return detail::richardson([&](cplx n) { return bessel_y_noninteger(n, z); }, nu);
  return bessel_y_noninteger(nu, z);
}

// sum_k (a)_k (b)_k / (Gamma(c+k) k!) z^k, valid for every c; |z| < 1.
template <class T>
T hyp2f1_regularized(cplx a, cplx b, cplx c, const T& z) {
  if (!(std::abs(value_of(z)) < 1.0)) throw DomainError("hyp2f1: |z| >= 1 outside the series regime");
  // first index with Gamma(c+k) finite; earlier terms vanish
  int k0 = 0;
  while (near_nonpositive_integer(c + double(k0)) && k0 < 10000) ++k0;
  cplx coef = rgamma(c + double(k0));
  for (int j = 0; j < k0; ++j) coef *= (a + double(j)) * (b + double(j)) / double(j + 1);
  T p(1.0);
  for (int j = 0; j < k0; ++j) p = p * z;
  T sum = p * coef;
  int quiet = 0;
  for (int k = k0; k < 200000; ++k) {
    cplx r = (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1));
    if (r == 0.0) break;
    coef *= r;
    p = p * z;
    T term = p * coef;
    sum = sum + term;
    if (detail::small_sum(mag(term), mag(sum)) && k > 4) {
      if (++quiet == 3) break;
    } else {
      quiet = 0;
    }
  }
  return sum;
}

template <class T>
T hyp2f1(cplx a, cplx b, cplx c, const T& z) {
  if (near_nonpositive_integer(c)) throw DomainError("hyp2f1: c is a nonpositive integer");
  return hyp2f1_regularized(a, b, c, z) * gamma(c);
}

// Ferrers function of the first kind on (-1, 1):
// ((1+x)/(1-x))^{sigma/2} 2F1(-nu, nu+1; 1-sigma; (1-x)/2) / Gamma(1-sigma).
template <class T>
T legendre_p(cplx nu, cplx sigma, const T& x) {
  using std::pow;
  double xv = value_of(x).real();
  if (!(xv > -1.0 && xv < 1.0)) throw DomainError("legendre_p: x must lie in (-1, 1)");
  T ratio = (x + 1.0) / (1.0 - x);
  return pow(ratio, sigma * 0.5) * hyp2f1_regularized(-nu, nu + 1.0, 1.0 - sigma, (1.0 - x) * 0.5);
}

// Ferrers function of the second kind,
// pi / (2 sin(sigma pi)) [cos(sigma pi) P^sigma - Gamma(nu+sigma+1)/Gamma(nu-sigma+1) P^-sigma].
template <class T>
T legendre_q_noninteger(cplx nu, cplx sigma, const T& x) {
  const double pi = std::numbers::pi;
  cplx ratio = gamma(nu + sigma + 1.0) * rgamma(nu - sigma + 1.0);
  T comb = legendre_p(nu, sigma, x) * std::cos(sigma * pi) - legendre_p(nu, -sigma, x) * ratio;
  return comb * (pi / (2.0 * std::sin(sigma * pi)));
}

template <class T>
T legendre_q(cplx nu, cplx sigma, const T& x) {
  if (near_integer(sigma, 1e-6))
    return detail::richardson([&](cplx s) { return legendre_q_noninteger(nu, s, x); }, sigma);
  return legendre_q_noninteger(nu, sigma, x);
}

// ---------------------------------------------------------------------------
// Adaptive Dormand-Prince 5(4) with continuous extension.

struct OdeConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  bool dense_output = true;
  double initial_step = 0.0;  // 0 selects automatically
  long max_steps = 2000000;
  void validate() const;
};

using State = Eigen::VectorXcd;
using OdeRhs = std::function<void(double t, const State& y, State& dydt)>;

class OdeSolution {
 public:
  // Dense evaluation anywhere inside the integrated interval.
  State operator()(double t) const;
  double t_begin() const { return t0_; }
  double t_end() const { return t1_; }
  const std::vector<double>& grid() const { return grid_t_; }
  const std::vector<State>& grid_values() const { return grid_y_; }
  long accepted() const { return accepted_; }
  long rejected() const { return rejected_; }

 private:
  struct Segment {
    double t, h;
    State r1, r2, r3, r4, r5;
  };
  friend OdeSolution ode_integrate(const OdeRhs&, double, const State&, double, const OdeConfig&,
                                   const std::vector<double>&);
  double t0_ = 0.0, t1_ = 0.0;
  std::vector<Segment> segs_;
  std::vector<double> grid_t_;
  std::vector<State> grid_y_;
  long accepted_ = 0, rejected_ = 0;
};

// Integrates y' = f(t, y) from t0 to t_end (either direction). Steps are
// clipped so that every node of `grid` lying in the interval is hit exactly.
OdeSolution ode_integrate(const OdeRhs& f, double t0, const State& y0, double t_end, const OdeConfig& cfg = {},
                          const std::vector<double>& grid = {});

// Phi'' + p(v) Phi' + q(v) Phi = 0 as a first-order system, integrated in
// both directions from v0 so that [v_lo, v_hi] is covered.
class SecondOrderSolution {
 public:
  using Coef = std::function<cplx(double)>;
  SecondOrderSolution(Coef p, Coef q, double v0, cplx phi0, cplx dphi0, double v_lo, double v_hi,
                      const OdeConfig& cfg = {});
  // (Phi, Phi') at v.
  std::pair<cplx, cplx> operator()(double v) const;
  double v0() const { return v0_; }

 private:
  double v0_;
  std::vector<OdeSolution> parts_;
};

}  // namespace dskg::sf
