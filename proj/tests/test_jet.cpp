#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "dskg/jet.hpp"

using namespace dskg;

namespace {

// Central differences as the independent oracle for a scalar function.
template <class F>
cplx fd1(F f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2 * h);
}
template <class F>
cplx fd2(F f, double x, double h = 1e-4) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

TEST_CASE("jet variables carry unit first derivatives in their own slot only") {
  J4 x = J4::variable(1, 0.7);
  CHECK(x.value() == cplx(0.7));
  CHECK(x.d(0) == cplx(0.0));
  CHECK(x.d(1) == cplx(1.0));
  CHECK(x.d(3) == cplx(0.0));
}

TEST_CASE("products and quotients follow Leibniz and quotient rules") {
  const double x0 = 0.4, y0 = -1.3;
  J4 x = J4::variable(0, x0), y = J4::variable(1, y0);
  J4 f = x * x * y / (1.0 + y * y);
  auto ref = [&](double xx, double yy) { return xx * xx * yy / (1 + yy * yy); };
  CHECK(std::abs(f.value() - ref(x0, y0)) < 1e-15);
  CHECK(std::abs(f.d(0) - 2 * x0 * y0 / (1 + y0 * y0)) < 1e-14);
  CHECK(std::abs(f.d(1) - fd1([&](double t) { return cplx(ref(x0, t)); }, y0)) < 1e-9);
  CHECK(std::abs(f.d2(0, 1) - 2 * x0 * (1 - y0 * y0) / std::pow(1 + y0 * y0, 2)) < 1e-13);
}

TEST_CASE("elementary functions match finite-difference derivatives") {
  const double x0 = 0.37;
  J4 x = J4::variable(2, x0);
  struct Case {
    const char* name;
    J4 jet;
    std::function<cplx(double)> ref;
  };
  std::vector<Case> cases = {
      {"exp", exp(x), [](double t) { return cplx(std::exp(t)); }},
      {"log", log(x), [](double t) { return cplx(std::log(t)); }},
      {"sin", sin(x), [](double t) { return cplx(std::sin(t)); }},
      {"cos", cos(x), [](double t) { return cplx(std::cos(t)); }},
      {"tan", tan(x), [](double t) { return cplx(std::tan(t)); }},
      {"tanh", tanh(x), [](double t) { return cplx(std::tanh(t)); }},
      {"sinh", sinh(x), [](double t) { return cplx(std::sinh(t)); }},
      {"cosh", cosh(x), [](double t) { return cplx(std::cosh(t)); }},
      {"sqrt", sqrt(x), [](double t) { return cplx(std::sqrt(t)); }},
      {"pow", pow(x, cplx(0.3, 0.8)), [](double t) { return std::pow(cplx(t), cplx(0.3, 0.8)); }},
  };
  for (const auto& c : cases) {
    INFO(c.name);
    CHECK(std::abs(c.jet.value() - c.ref(x0)) < 1e-14);
    CHECK(std::abs(c.jet.d(2) - fd1(c.ref, x0)) < 1e-8);
    CHECK(std::abs(c.jet.d2(2, 2) - fd2(c.ref, x0)) < 1e-5);
  }
}

TEST_CASE("fourth derivatives of exp(2x) are exact") {
  J4 f = exp(2.0 * J4::variable(0, 0.0));
  J4 d = f;
  for (int k = 1; k <= 4; ++k) {
    d = d.deriv(0);
    CHECK(std::abs(d.value() - std::pow(2.0, k)) < 1e-13);
  }
}

TEST_CASE("complex points propagate through analytic functions") {
  const cplx z0(0.5, 2.0);
  J4 z = J4::variable(0, z0);
  J4 f = exp(-0.5 * z) * pow(z, cplx(1.2, 0.1));
  cplx ref_d = std::exp(-0.5 * z0) * std::pow(z0, cplx(1.2, 0.1)) * (-0.5 + cplx(1.2, 0.1) / z0);
  CHECK(std::abs(f.d(0) - ref_d) < 1e-14);
}

TEST_CASE("seed places chart coordinates and lambda in consecutive slots") {
  auto x = seed<4>(std::array<double, 3>{0.1, 0.2, 0.3}, cplx(0.5, 0.25));
  CHECK(x[0].value() == cplx(0.1));
  CHECK(x[2].d(2) == cplx(1.0));
  CHECK(x[3].value() == cplx(0.5, 0.25));
  CHECK(x[3].d(3) == cplx(1.0));
}
