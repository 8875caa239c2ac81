#pragma once

#include <complex>
#include <utility>

namespace reso {

using Cplx = std::complex<double>;

/// First-order dual number over an arbitrary (complex or nested) field.
/// Nesting Jet<Jet<...>> yields exact higher derivatives of analytic
/// expressions without finite-difference noise.
template <class T>
struct Jet {
  T v{};  // value
  T d{};  // derivative w.r.t. the seeded variable

  Jet() = default;
  Jet(T value) : v(std::move(value)) {}
  Jet(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}
  Jet(double x) : v(x) {}
};

template <class T> Jet<T> operator+(const Jet<T>& a, const Jet<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Jet<T> operator-(const Jet<T>& a, const Jet<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Jet<T> operator-(const Jet<T>& a) { return {-a.v, -a.d}; }
template <class T> Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T> Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
  T q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

template <class T> Jet<T> operator+(const Jet<T>& a, double b) { return {a.v + b, a.d}; }
template <class T> Jet<T> operator+(double a, const Jet<T>& b) { return {b.v + a, b.d}; }
template <class T> Jet<T> operator-(const Jet<T>& a, double b) { return {a.v - b, a.d}; }
template <class T> Jet<T> operator-(double a, const Jet<T>& b) { return {a - b.v, -b.d}; }
template <class T> Jet<T> operator*(const Jet<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T> Jet<T> operator*(double a, const Jet<T>& b) { return {b.v * a, b.d * a}; }
template <class T> Jet<T> operator/(const Jet<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T> Jet<T> operator/(double a, const Jet<T>& b) {
  T q = a / b.v;
  return {q, -q * b.d / b.v};
}

using std::cos;
using std::cosh;
using std::exp;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;

template <class T> Jet<T> sin(const Jet<T>& a) { return {sin(a.v), cos(a.v) * a.d}; }
template <class T> Jet<T> cos(const Jet<T>& a) { return {cos(a.v), -sin(a.v) * a.d}; }
template <class T> Jet<T> sinh(const Jet<T>& a) { return {sinh(a.v), cosh(a.v) * a.d}; }
template <class T> Jet<T> cosh(const Jet<T>& a) { return {cosh(a.v), sinh(a.v) * a.d}; }
template <class T> Jet<T> tan(const Jet<T>& a) {
  T t = tan(a.v);
  return {t, (1.0 + t * t) * a.d};
}
template <class T> Jet<T> tanh(const Jet<T>& a) {
  T t = tanh(a.v);
  return {t, (1.0 - t * t) * a.d};
}
template <class T> Jet<T> exp(const Jet<T>& a) {
  T e = exp(a.v);
  return {e, e * a.d};
}
template <class T> Jet<T> sqrt(const Jet<T>& a) {
  T s = sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}

/// Extracts the underlying complex value from an arbitrarily nested jet.
inline Cplx scalar_value(const Cplx& x) { return x; }
template <class T> Cplx scalar_value(const Jet<T>& a) { return scalar_value(a.v); }

/// Lifts a complex constant into an arbitrarily nested jet type.
template <class T>
struct Lift {
  static T from(const Cplx& c) { return T(Lift<decltype(T{}.v)>::from(c)); }
};
template <>
struct Lift<Cplx> {
  static Cplx from(const Cplx& c) { return c; }
};
template <class T>
T lift(const Cplx& c) { return Lift<T>::from(c); }

using Jet1 = Jet<Cplx>;
using Jet2 = Jet<Jet1>;
using Jet3 = Jet<Jet2>;

/// Seeds for derivatives w.r.t. one complex variable.
inline Jet1 seed1(const Cplx& k) { return {k, Cplx(1.0)}; }
inline Jet2 seed2(const Cplx& k) { return {{k, Cplx(1.0)}, {Cplx(1.0), Cplx(0.0)}}; }
inline Jet3 seed3(const Cplx& k) {
  return {{{k, Cplx(1.0)}, {Cplx(1.0), Cplx(0.0)}},
          {{Cplx(1.0), Cplx(0.0)}, {Cplx(0.0), Cplx(0.0)}}};
}

}  // namespace reso
