#pragma once
// Forward-mode dual numbers over an arbitrary (complex) scalar type.
// Nesting Dual<Dual<...>> yields higher mixed derivatives; all symbol
// evaluations below are analytic, so only +,-,*,/ and sqrt/exp are needed.

#include <cmath>
#include <complex>

namespace nsk {

template <class T>
struct Dual {
  T v{};  // value
  T d{};  // derivative along the seeded direction

  Dual() = default;
  Dual(T value) : v(value), d(T{}) {}          // NOLINT: implicit promotion wanted
  Dual(T value, T deriv) : v(value), d(deriv) {}
  Dual(double value) : v(T(value)), d(T{}) {}  // NOLINT

  Dual operator-() const { return {-v, -d}; }

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    d = (d * o.v - v * o.d) / (o.v * o.v);
    v /= o.v;
    return *this;
  }
};

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }

template <class T> Dual<T> operator+(Dual<T> a, double b) { return a += Dual<T>(b); }
template <class T> Dual<T> operator+(double a, Dual<T> b) { return b += Dual<T>(a); }
template <class T> Dual<T> operator-(Dual<T> a, double b) { return a -= Dual<T>(b); }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) { return Dual<T>(a) - b; }
template <class T> Dual<T> operator*(Dual<T> a, double b) { return a *= Dual<T>(b); }
template <class T> Dual<T> operator*(double a, Dual<T> b) { return b *= Dual<T>(a); }
template <class T> Dual<T> operator/(Dual<T> a, double b) { return a /= Dual<T>(b); }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(a) / b; }

using std::exp;
using std::sqrt;

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  T r = sqrt(a.v);
  return {r, a.d / (2.0 * r)};
}

template <class T>
Dual<T> exp(const Dual<T>& a) {
  T e = exp(a.v);
  return {e, a.d * e};
}

// Strips all dual layers, returning the innermost value.
inline std::complex<double> value_of(const std::complex<double>& x) { return x; }
inline std::complex<double> value_of(const std::complex<long double>& x) {
  return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
}
template <class T>
auto value_of(const Dual<T>& x) { return value_of(x.v); }

// Promotes a plain complex constant into an arbitrarily nested dual scalar.
template <class C>
struct Promote {
  static C from(std::complex<double> z) { return C(z); }
};
template <class T>
struct Promote<Dual<T>> {
  static Dual<T> from(std::complex<double> z) { return Dual<T>(Promote<T>::from(z)); }
};
template <>
struct Promote<std::complex<double>> {
  static std::complex<double> from(std::complex<double> z) { return z; }
};
template <>
struct Promote<std::complex<long double>> {
  static std::complex<long double> from(std::complex<double> z) {
    return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())};
  }
};

template <class C>
C promote(std::complex<double> z) { return Promote<C>::from(z); }

}  // namespace nsk
