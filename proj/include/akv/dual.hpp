#pragma once

// Forward-mode dual numbers, nestable for higher derivatives.
//
// Evaluating f(Dual(x, 1)) yields f(x) in .val and f'(x) in .der with no
// truncation error. Nesting Dual<Dual<double>> gives exact second
// derivatives; the tensor-field kernels below instantiate up to depth 3
// (third derivatives of metric components).

#include <cmath>
#include <type_traits>

namespace akv {

template <class T>
struct Dual {
  T val{};
  T der{};

  constexpr Dual() = default;
  constexpr Dual(const T& v) : val(v), der{} {}
  constexpr Dual(const T& v, const T& d) : val(v), der(d) {}

  // Implicit promotion from plain doubles so numeric literals work at any
  // nesting depth.
  template <class U, class = std::enable_if_t<std::is_arithmetic_v<U> &&
                                              !std::is_same_v<U, T>>>
  constexpr Dual(U v) : val(static_cast<T>(v)), der{} {}

  static constexpr Dual seeded(const T& v) { return Dual(v, T(1)); }

  Dual operator-() const { return Dual(-val, -der); }

  Dual& operator+=(const Dual& o) { val += o.val; der += o.der; return *this; }
  Dual& operator-=(const Dual& o) { val -= o.val; der -= o.der; return *this; }
  Dual& operator*=(const Dual& o) {
    der = der * o.val + val * o.der;
    val = val * o.val;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    der = (der * o.val - val * o.der) / (o.val * o.val);
    val = val / o.val;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }

  friend bool operator==(const Dual& a, const Dual& b) { return a.val == b.val && a.der == b.der; }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
};

// value(): strip all dual layers.
inline double value(double x) { return x; }
template <class T>
double value(const Dual<T>& x) { return value(x.val); }

using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

template <class T> Dual<T> sin(const Dual<T>& x) { return {sin(x.val), x.der * cos(x.val)}; }
template <class T> Dual<T> cos(const Dual<T>& x) { return {cos(x.val), -x.der * sin(x.val)}; }
template <class T> Dual<T> tan(const Dual<T>& x) {
  T c = cos(x.val);
  return {tan(x.val), x.der / (c * c)};
}
template <class T> Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.val);
  return {e, x.der * e};
}
template <class T> Dual<T> log(const Dual<T>& x) { return {log(x.val), x.der / x.val}; }
template <class T> Dual<T> sqrt(const Dual<T>& x) {
  T s = sqrt(x.val);
  return {s, x.der / (T(2) * s)};
}
template <class T> Dual<T> pow(const Dual<T>& x, double p) {
  T v = pow(x.val, p);
  return {v, x.der * T(p) * pow(x.val, p - 1.0)};
}
template <class T> Dual<T> abs(const Dual<T>& x) { return value(x) >= 0 ? x : -x; }

// Common nesting depths.
using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

}  // namespace akv
