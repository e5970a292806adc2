#include "dskg/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dskg::sf {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  cplx t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

bool near_integer(cplx z, double tol) {
  return std::abs(z.imag()) <= tol && std::abs(z.real() - std::round(z.real())) <= tol;
}

bool near_nonpositive_integer(cplx z, double tol) { return z.real() < 0.5 && near_integer(z, tol); }

cplx gamma(cplx z) {
  if (near_nonpositive_integer(z, 0.0)) throw DomainError("gamma: pole at a nonpositive integer");
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * lanczos(1.0 - z));
  return lanczos(z);
}

cplx rgamma(cplx z) {
  if (near_nonpositive_integer(z, 0.0)) return 0.0;
  if (z.real() < 0.5) return std::sin(kPi * z) * lanczos(1.0 - z) / kPi;
  return 1.0 / lanczos(z);
}

// ---------------------------------------------------------------------------

void OdeConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw DomainError("ode: tolerances must be positive");
  if (max_steps <= 0) throw DomainError("ode: max_steps must be positive");
}

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// continuous extension (Hairer's contd5)
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

double err_norm(const State& e, const State& y0, const State& y1, const OdeConfig& cfg) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    double sc = cfg.atol + cfg.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    double r = std::abs(e[i]) / sc;
    s += r * r;
  }
  return std::sqrt(s / double(std::max<Eigen::Index>(e.size(), 1)));
}

}  // namespace

OdeSolution ode_integrate(const OdeRhs& f, double t0, const State& y0, double t_end, const OdeConfig& cfg,
                          const std::vector<double>& grid) {
  cfg.validate();
  OdeSolution sol;
  sol.t0_ = t0;
  sol.t1_ = t_end;
  const double dir = t_end >= t0 ? 1.0 : -1.0;
  const double span = std::abs(t_end - t0);

  // grid nodes strictly inside (t0, t_end], in integration order
  std::vector<double> nodes;
  for (double g : grid)
    if (dir * (g - t0) > 0.0 && dir * (g - t_end) <= 0.0) nodes.push_back(g);
  std::sort(nodes.begin(), nodes.end(), [dir](double a, double b) { return dir * a < dir * b; });
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (double g : grid)
    if (g == t0) {
      sol.grid_t_.push_back(t0);
      sol.grid_y_.push_back(y0);
      break;
    }
  if (span == 0.0) return sol;

  const Eigen::Index n = y0.size();
  State y = y0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
  double t = t0;
  f(t, y, k1);

  double h = cfg.initial_step;
  if (h <= 0.0) {
    // starting step from the scaled size of y and y'
    double d0 = 0.0, d1n = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double sc = cfg.atol + cfg.rtol * std::abs(y[i]);
      d0 += std::norm(y[i]) / (sc * sc);
      d1n += std::norm(k1[i]) / (sc * sc);
    }
    d0 = std::sqrt(d0 / n);
    d1n = std::sqrt(d1n / n);
    h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h = std::min(h, span);
  }
  h = std::min(h, span);

  std::size_t next_node = 0;
  long steps = 0;
  while (dir * (t_end - t) > 0.0) {
    if (++steps > cfg.max_steps) throw std::runtime_error("ode: maximum number of steps exceeded");
    double target = next_node < nodes.size() ? nodes[next_node] : t_end;
    bool clipped = false;
    if (h >= std::abs(target - t)) {
      h = std::abs(target - t);
      clipped = true;
    }
    if (h <= 1e-14 * std::max(1.0, std::abs(t))) throw std::runtime_error("ode: step size underflow");
    double hs = dir * h;

    ytmp = y + hs * a21 * k1;
    f(t + c2 * hs, ytmp, k2);
    ytmp = y + hs * (a31 * k1 + a32 * k2);
    f(t + c3 * hs, ytmp, k3);
    ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * hs, ytmp, k4);
    ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * hs, ytmp, k5);
    ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + hs, ytmp, k6);
    ynew = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    f(t + hs, ynew, k7);
    State err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double en = err_norm(err, y, ynew, cfg);

    double fac = en == 0.0 ? 10.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 10.0);
    if (en <= 1.0) {
      if (cfg.dense_output) {
        OdeSolution::Segment s;
        s.t = t;
        s.h = hs;
        s.r1 = y;
        State dy = ynew - y;
        s.r2 = dy;
        State bspl = hs * k1 - dy;
        s.r3 = bspl;
        s.r4 = dy - hs * k7 - bspl;
        s.r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        sol.segs_.push_back(std::move(s));
      }
      t = clipped ? target : t + hs;
      y = ynew;
      k1 = k7;
      ++sol.accepted_;
      if (clipped && next_node < nodes.size() && target == nodes[next_node]) {
        sol.grid_t_.push_back(target);
        sol.grid_y_.push_back(y);
        ++next_node;
      }
      h *= fac;
    } else {
      ++sol.rejected_;
      h *= std::min(1.0, fac);
    }
  }
  return sol;
}

State OdeSolution::operator()(double t) const {
  if (segs_.empty()) throw std::runtime_error("ode: no dense output stored");
  const double dir = t1_ >= t0_ ? 1.0 : -1.0;
  const double tol = 1e-12 * std::max(1.0, std::abs(t1_ - t0_));
  if (dir * (t - t0_) < -tol || dir * (t - t1_) > tol) throw DomainError("ode: evaluation outside the integrated interval");
  // segments are ordered along the integration direction
  auto it = std::upper_bound(segs_.begin(), segs_.end(), t,
                             [dir](double tv, const Segment& s) { return dir * tv < dir * s.t; });
  const Segment& s = it == segs_.begin() ? segs_.front() : *std::prev(it);
  double th = (t - s.t) / s.h;
  double th1 = 1.0 - th;
  return s.r1 + th * (s.r2 + th1 * (s.r3 + th * (s.r4 + th1 * s.r5)));
}

SecondOrderSolution::SecondOrderSolution(Coef p, Coef q, double v0, cplx phi0, cplx dphi0, double v_lo, double v_hi,
                                         const OdeConfig& cfg)
    : v0_(v0) {
  OdeRhs rhs = [p, q](double v, const State& y, State& dy) {
    dy[0] = y[1];
    dy[1] = -p(v) * y[1] - q(v) * y[0];
  };
  State y0(2);
  y0 << phi0, dphi0;
  if (v_hi > v0) parts_.push_back(ode_integrate(rhs, v0, y0, v_hi, cfg));
  if (v_lo < v0) parts_.push_back(ode_integrate(rhs, v0, y0, v_lo, cfg));
  if (parts_.empty()) throw DomainError("ode: empty interval");
}

std::pair<cplx, cplx> SecondOrderSolution::operator()(double v) const {
  for (const auto& part : parts_) {
    double lo = std::min(part.t_begin(), part.t_end()), hi = std::max(part.t_begin(), part.t_end());
    const double tol = 1e-12 * std::max(1.0, hi - lo);
    if (v >= lo - tol && v <= hi + tol) {
      State y = part(v);
      return {y[0], y[1]};
    }
  }
  throw DomainError("ode: evaluation outside the integrated interval");
}

}  // namespace dskg::sf
