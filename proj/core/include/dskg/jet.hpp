#pragma once

// Truncated multivariate Taylor series ("jets") over four slots with complex
// coefficients. Slots 0..2 hold chart coordinates, slot 3 holds the auxiliary
// variable lambda. Forward-mode differentiation of any order up to K.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace dskg {

using cplx = std::complex<double>;
inline constexpr int kSlots = 4;

namespace detail {

constexpr int binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

template <int K>
struct JetTables {
  static constexpr int kSize = binom(K + kSlots, kSlots);
  struct Mul {
    std::uint16_t i, j, k;
  };
  std::array<std::array<int, kSlots>, kSize> exps{};
  std::array<int, kSize> degree{};
  // up[m][s]: index of exps[m] + e_s, or -1 if that exceeds order K
  std::array<std::array<int, kSlots>, kSize> up{};
  std::vector<Mul> mul;

  int find(const std::array<int, kSlots>& e) const {
    for (int m = 0; m < kSize; ++m)
      if (exps[m] == e) return m;
    return -1;
  }

  JetTables() {
    int n = 0;
    for (int d = 0; d <= K; ++d)
      for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
          for (int c = d - a - b; c >= 0; --c) {
            exps[n] = {a, b, c, d - a - b - c};
            degree[n] = d;
            ++n;
          }
    for (int m = 0; m < kSize; ++m)
      for (int s = 0; s < kSlots; ++s) {
        auto e = exps[m];
        ++e[s];
        up[m][s] = degree[m] < K ? find(e) : -1;
      }
    for (int i = 0; i < kSize; ++i)
      for (int j = 0; j < kSize; ++j) {
        if (degree[i] + degree[j] > K) continue;
        std::array<int, kSlots> e{};
        for (int s = 0; s < kSlots; ++s) e[s] = exps[i][s] + exps[j][s];
        mul.push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j),
                       static_cast<std::uint16_t>(find(e))});
      }
  }

  static const JetTables& get() {
    static const JetTables t;
    return t;
  }
};

}  // namespace detail

template <int K>
class Jet {
 public:
  static constexpr int kOrder = K;
  static constexpr int kSize = detail::JetTables<K>::kSize;
  using Tables = detail::JetTables<K>;

  Jet() { c_.fill(cplx(0.0)); }
  Jet(double v) : Jet() { c_[0] = v; }  // NOLINT(google-explicit-constructor)
  Jet(cplx v) : Jet() { c_[0] = v; }    // NOLINT(google-explicit-constructor)

  // Independent variable in slot s, expanded about x0.
  static Jet variable(int s, cplx x0) {
    Jet r(x0);
    if (K >= 1) r.c_[1 + s] = 1.0;
    return r;
  }

  const cplx& value() const { return c_[0]; }
  cplx& coeff(int m) { return c_[m]; }
  const cplx& coeff(int m) const { return c_[m]; }

  // First partial derivative d/dslot s at the expansion point.
  cplx d(int s) const { return K >= 1 ? c_[1 + s] : cplx(0.0); }

  // Second partial derivative at the expansion point.
  cplx d2(int s, int t) const {
    if (K < 2) return 0.0;
    const auto& tb = Tables::get();
    int m = tb.up[1 + s][t];
    return s == t ? 2.0 * c_[m] : c_[m];
  }

  // Partial derivative as a jet; the top-order coefficients of the result are
  // zero (valid to order K-1).
  Jet deriv(int s) const {
    const auto& tb = Tables::get();
    Jet r;
    for (int m = 0; m < kSize; ++m) {
      int u = tb.up[m][s];
      if (u >= 0) r.c_[m] = c_[u] * double(tb.exps[m][s] + 1);
    }
    return r;
  }

  // Nilpotent part (everything except the constant term).
  Jet tail() const {
    Jet r = *this;
    r.c_[0] = 0.0;
    return r;
  }

  // Sum_k f_k h^k / k! where f_k are derivatives of a univariate function at
  // value(), h the nilpotent part. Only f_0..f_K are used.
  template <class Derivs>
  Jet compose(const Derivs& f) const {
    Jet h = tail();
    Jet r(f[0]);
    Jet p = h;
    double fact = 1.0;
    for (int k = 1; k <= K; ++k) {
      fact *= k;
      r += p * (f[k] / fact);
      if (k < K) p = p * h;
    }
    return r;
  }

  Jet& operator+=(const Jet& o) {
    for (int m = 0; m < kSize; ++m) c_[m] += o.c_[m];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int m = 0; m < kSize; ++m) c_[m] -= o.c_[m];
    return *this;
  }
  Jet& operator*=(cplx s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    const auto& tb = Tables::get();
    Jet r;
    for (const auto& t : tb.mul) r.c_[t.k] += a.c_[t.i] * b.c_[t.j];
    return r;
  }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, double s) { return a *= cplx(s); }
  friend Jet operator*(double s, Jet a) { return a *= cplx(s); }
  friend Jet operator+(Jet a, cplx s) {
    a.c_[0] += s;
    return a;
  }
  friend Jet operator+(cplx s, Jet a) { return a + s; }
  friend Jet operator+(Jet a, double s) { return a + cplx(s); }
  friend Jet operator+(double s, Jet a) { return a + cplx(s); }
  friend Jet operator-(Jet a, cplx s) { return a + (-s); }
  friend Jet operator-(cplx s, const Jet& a) { return (-a) + s; }
  friend Jet operator-(Jet a, double s) { return a + cplx(-s); }
  friend Jet operator-(double s, const Jet& a) { return (-a) + cplx(s); }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
  friend Jet operator/(Jet a, cplx s) { return a *= (1.0 / s); }
  friend Jet operator/(Jet a, double s) { return a *= cplx(1.0 / s); }
  friend Jet operator/(cplx s, const Jet& b) { return recip(b) * s; }
  friend Jet operator/(double s, const Jet& b) { return recip(b) * s; }

  friend Jet recip(const Jet& x) {
    std::array<cplx, K + 1> f;
    cplx inv = 1.0 / x.value();
    cplx p = inv;
    double fact = 1.0;
    for (int k = 0; k <= K; ++k) {
      if (k > 0) fact *= k;
      f[k] = (k % 2 ? -1.0 : 1.0) * fact * p;
      p *= inv;
    }
    return x.compose(f);
  }

  // Largest coefficient magnitude; used as a convergence gauge in series.
  friend double mag(const Jet& x) {
    double m = 0.0;
    for (const auto& c : x.c_) m = std::max(m, std::abs(c));
    return m;
  }

  // Truncate or zero-extend to another order.
  template <int K2>
  Jet<K2> to() const {
    const auto& src = Tables::get();
    const auto& dst = detail::JetTables<K2>::get();
    Jet<K2> r;
    for (int m = 0; m < Jet<K2>::kSize; ++m) {
      if (dst.degree[m] > K) continue;
      r.coeff(m) = c_[src.find(dst.exps[m])];
    }
    return r;
  }

 private:
  std::array<cplx, kSize> c_;
};

inline double mag(const cplx& z) { return std::abs(z); }
inline double mag(double x) { return std::abs(x); }

template <int K>
cplx value_of(const Jet<K>& x) {
  return x.value();
}
inline cplx value_of(const cplx& x) { return x; }
inline double value_of(double x) { return x; }

template <int K>
Jet<K> exp(const Jet<K>& x) {
  std::array<cplx, K + 1> f;
  f.fill(std::exp(x.value()));
  return x.compose(f);
}

template <int K>
Jet<K> log(const Jet<K>& x) {
  std::array<cplx, K + 1> f;
  f[0] = std::log(x.value());
  cplx inv = 1.0 / x.value();
  cplx p = inv;
  double fact = 1.0;
  for (int k = 1; k <= K; ++k) {
    f[k] = (k % 2 ? 1.0 : -1.0) * fact * p;
    fact *= k;
    p *= inv;
  }
  return x.compose(f);
}

// Principal branch power with constant complex exponent.
template <int K>
Jet<K> pow(const Jet<K>& x, cplx a) {
  std::array<cplx, K + 1> f;
  cplx x0 = x.value();
  cplx coef = 1.0;
  for (int k = 0; k <= K; ++k) {
    f[k] = coef * std::pow(x0, a - double(k));
    coef *= (a - double(k));
  }
  return x.compose(f);
}
template <int K>
Jet<K> pow(const Jet<K>& x, double a) {
  return pow(x, cplx(a));
}

template <int K>
Jet<K> sqrt(const Jet<K>& x) {
  return pow(x, cplx(0.5));
}

template <int K>
Jet<K> sin(const Jet<K>& x) {
  std::array<cplx, K + 1> f;
  cplx s = std::sin(x.value()), c = std::cos(x.value());
  for (int k = 0; k <= K; ++k) {
    switch (k % 4) {
      case 0: f[k] = s; break;
      case 1: f[k] = c; break;
      case 2: f[k] = -s; break;
      default: f[k] = -c; break;
    }
  }
  return x.compose(f);
}

template <int K>
Jet<K> cos(const Jet<K>& x) {
  std::array<cplx, K + 1> f;
  cplx s = std::sin(x.value()), c = std::cos(x.value());
  for (int k = 0; k <= K; ++k) {
    switch (k % 4) {
      case 0: f[k] = c; break;
      case 1: f[k] = -s; break;
      case 2: f[k] = -c; break;
      default: f[k] = s; break;
    }
  }
  return x.compose(f);
}

template <int K>
Jet<K> sinh(const Jet<K>& x) {
  std::array<cplx, K + 1> f;
  cplx s = std::sinh(x.value()), c = std::cosh(x.value());
  for (int k = 0; k <= K; ++k) f[k] = k % 2 ? c : s;
  return x.compose(f);
}

template <int K>
Jet<K> cosh(const Jet<K>& x) {
  std::array<cplx, K + 1> f;
  cplx s = std::sinh(x.value()), c = std::cosh(x.value());
  for (int k = 0; k <= K; ++k) f[k] = k % 2 ? s : c;
  return x.compose(f);
}

template <int K>
Jet<K> tan(const Jet<K>& x) {
  return sin(x) / cos(x);
}
template <int K>
Jet<K> tanh(const Jet<K>& x) {
  return sinh(x) / cosh(x);
}

template <int K>
Jet<K> square(const Jet<K>& x) {
  return x * x;
}
inline double square(double x) { return x * x; }
inline cplx square(const cplx& x) { return x * x; }

// Coordinates of a probe point as independent jet variables.
template <int K>
std::array<Jet<K>, kSlots> seed(const std::array<double, 3>& xi, cplx lambda = 0.0) {
  return {Jet<K>::variable(0, xi[0]), Jet<K>::variable(1, xi[1]),
          Jet<K>::variable(2, xi[2]), Jet<K>::variable(3, lambda)};
}

using Dual2 = Jet<2>;
using J4 = Jet<4>;

}  // namespace dskg
