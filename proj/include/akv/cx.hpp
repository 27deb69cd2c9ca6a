#pragma once

// Minimal complex template over an arbitrary commutative scalar ring.
// std::complex is only specified for the builtin floating types, so the
// frame machinery uses this instead and instantiates it over nested duals.

#include <cmath>

#include "akv/dual.hpp"

namespace akv {

template <class T>
struct Cx {
  T re{};
  T im{};

  constexpr Cx() = default;
  constexpr Cx(const T& r) : re(r), im{} {}
  constexpr Cx(const T& r, const T& i) : re(r), im(i) {}
  template <class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
  constexpr Cx(U r) : re(static_cast<T>(r)), im{} {}

  Cx operator-() const { return {-re, -im}; }
  Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
  Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
  Cx& operator*=(const Cx& o) {
    T r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Cx& operator/=(const Cx& o) {
    T d = o.re * o.re + o.im * o.im;
    T r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
  }

  friend Cx operator+(Cx a, const Cx& b) { return a += b; }
  friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
  friend Cx operator*(Cx a, const Cx& b) { return a *= b; }
  friend Cx operator/(Cx a, const Cx& b) { return a /= b; }
  friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Cx& a, const Cx& b) { return !(a == b); }
};

template <class T> Cx<T> conj(const Cx<T>& z) { return {z.re, -z.im}; }
template <class T> T real(const Cx<T>& z) { return z.re; }
template <class T> T imag(const Cx<T>& z) { return z.im; }

// Magnitude collapsed to double; used for residual reporting and pivoting.
template <class T>
double cx_abs(const Cx<T>& z) {
  double r = value(z.re), i = value(z.im);
  return std::hypot(r, i);
}
inline double cx_abs(double x) { return std::abs(x); }
template <class T> double cx_abs(const Dual<T>& x) { return std::abs(value(x)); }

template <class T>
Cx<double> cx_value(const Cx<T>& z) {
  return {value(z.re), value(z.im)};
}

using C0 = Cx<double>;

}  // namespace akv
