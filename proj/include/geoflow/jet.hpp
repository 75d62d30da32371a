#pragma once

#include <cmath>
#include <type_traits>

namespace geoflow {

// Second-order bivariate jet: carries a value together with first and
// second partial derivatives with respect to two independent variables
// (u, v).  The coefficient type T may itself be a Jet2, which yields
// higher-order derivatives by nesting.
template <class T>
struct Jet2 {
  T f{};    // value
  T fu{};   // d/du
  T fv{};   // d/dv
  T fuu{};  // d2/du2
  T fuv{};  // d2/dudv
  T fvv{};  // d2/dv2

  Jet2() = default;
  explicit Jet2(const T& value) : f(value) {}
  Jet2(const T& value, const T& du, const T& dv) : f(value), fu(du), fv(dv) {}

  static Jet2 constant(const T& c) { return Jet2(c); }
  static Jet2 var_u(const T& x);
  static Jet2 var_v(const T& y);

  Jet2 operator-() const {
    Jet2 r;
    r.f = -f; r.fu = -fu; r.fv = -fv;
    r.fuu = -fuu; r.fuv = -fuv; r.fvv = -fvv;
    return r;
  }
};

using Jet2d = Jet2<double>;

// Builds a constant of scalar type T from a double, recursing through
// nested jets.
template <class T>
struct ScalarTraits {
  static T constant(double x) { return T(x); }
};
template <class T>
struct ScalarTraits<Jet2<T>> {
  static Jet2<T> constant(double x) { return Jet2<T>(ScalarTraits<T>::constant(x)); }
};
template <class T>
T make_constant(double x) { return ScalarTraits<T>::constant(x); }

template <class T>
Jet2<T> Jet2<T>::var_u(const T& x) {
  Jet2<T> j(x);
  j.fu = make_constant<T>(1.0);
  return j;
}
template <class T>
Jet2<T> Jet2<T>::var_v(const T& y) {
  Jet2<T> j(y);
  j.fv = make_constant<T>(1.0);
  return j;
}

template <class T>
Jet2<T> operator+(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r;
  r.f = a.f + b.f; r.fu = a.fu + b.fu; r.fv = a.fv + b.fv;
  r.fuu = a.fuu + b.fuu; r.fuv = a.fuv + b.fuv; r.fvv = a.fvv + b.fvv;
  return r;
}

template <class T>
Jet2<T> operator-(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r;
  r.f = a.f - b.f; r.fu = a.fu - b.fu; r.fv = a.fv - b.fv;
  r.fuu = a.fuu - b.fuu; r.fuv = a.fuv - b.fuv; r.fvv = a.fvv - b.fvv;
  return r;
}

template <class T>
Jet2<T> operator*(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r;
  r.f = a.f * b.f;
  r.fu = a.fu * b.f + a.f * b.fu;
  r.fv = a.fv * b.f + a.f * b.fv;
  r.fuu = a.fuu * b.f + a.fu * b.fu + a.fu * b.fu + a.f * b.fuu;
  r.fuv = a.fuv * b.f + a.fu * b.fv + a.fv * b.fu + a.f * b.fuv;
  r.fvv = a.fvv * b.f + a.fv * b.fv + a.fv * b.fv + a.f * b.fvv;
  return r;
}

template <class T>
Jet2<T> operator/(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r;
  const T inv = make_constant<T>(1.0) / b.f;
  r.f = a.f * inv;
  r.fu = (a.fu - r.f * b.fu) * inv;
  r.fv = (a.fv - r.f * b.fv) * inv;
  r.fuu = (a.fuu - r.fu * b.fu - r.fu * b.fu - r.f * b.fuu) * inv;
  r.fuv = (a.fuv - r.fu * b.fv - r.fv * b.fu - r.f * b.fuv) * inv;
  r.fvv = (a.fvv - r.fv * b.fv - r.fv * b.fv - r.f * b.fvv) * inv;
  return r;
}

// Mixed scalar forms.
template <class T> Jet2<T> operator+(const Jet2<T>& a, const T& c) { return a + Jet2<T>::constant(c); }
template <class T> Jet2<T> operator+(const T& c, const Jet2<T>& a) { return Jet2<T>::constant(c) + a; }
template <class T> Jet2<T> operator-(const Jet2<T>& a, const T& c) { return a - Jet2<T>::constant(c); }
template <class T> Jet2<T> operator-(const T& c, const Jet2<T>& a) { return Jet2<T>::constant(c) - a; }
template <class T> Jet2<T> operator*(const Jet2<T>& a, const T& c) { return a * Jet2<T>::constant(c); }
template <class T> Jet2<T> operator*(const T& c, const Jet2<T>& a) { return Jet2<T>::constant(c) * a; }
template <class T> Jet2<T> operator/(const Jet2<T>& a, const T& c) { return a / Jet2<T>::constant(c); }
template <class T> Jet2<T> operator/(const T& c, const Jet2<T>& a) { return Jet2<T>::constant(c) / a; }

// double mixed with Jet2<Jet2<double>> and similar: promote through constant().
template <class T>
Jet2<Jet2<T>> operator*(double c, const Jet2<Jet2<T>>& a) {
  return Jet2<Jet2<T>>::constant(Jet2<T>::constant(T(c))) * a;
}

// Composition with a univariate function given value h(f), h'(f), h''(f).
template <class T>
Jet2<T> compose(const Jet2<T>& a, const T& h, const T& h1, const T& h2) {
  Jet2<T> r;
  r.f = h;
  r.fu = h1 * a.fu;
  r.fv = h1 * a.fv;
  r.fuu = h2 * a.fu * a.fu + h1 * a.fuu;
  r.fuv = h2 * a.fu * a.fv + h1 * a.fuv;
  r.fvv = h2 * a.fv * a.fv + h1 * a.fvv;
  return r;
}

using std::sqrt; using std::sin; using std::cos; using std::log;
using std::exp; using std::pow; using std::atan;

template <class T>
Jet2<T> sqrt(const Jet2<T>& a) {
  const T s = sqrt(a.f);
  const T h1 = make_constant<T>(0.5) / s;
  const T h2 = make_constant<T>(-0.25) / (s * a.f);
  return compose(a, s, h1, h2);
}

template <class T>
Jet2<T> sin(const Jet2<T>& a) {
  const T s = sin(a.f), c = cos(a.f);
  return compose(a, s, c, -s);
}

template <class T>
Jet2<T> cos(const Jet2<T>& a) {
  const T s = sin(a.f), c = cos(a.f);
  return compose(a, c, -s, -c);
}

template <class T>
Jet2<T> log(const Jet2<T>& a) {
  const T h1 = make_constant<T>(1.0) / a.f;
  return compose(a, log(a.f), h1, -h1 * h1);
}

template <class T>
Jet2<T> exp(const Jet2<T>& a) {
  const T e = exp(a.f);
  return compose(a, e, e, e);
}

template <class T>
Jet2<T> pow(const Jet2<T>& a, double p) {
  const T h = pow(a.f, p);
  const T h1 = make_constant<T>(p) * pow(a.f, p - 1.0);
  const T h2 = make_constant<T>(p * (p - 1.0)) * pow(a.f, p - 2.0);
  return compose(a, h, h1, h2);
}

template <class T>
Jet2<T> pow(const Jet2<T>& a, const Jet2<T>& b) {
  return exp(b * log(a));
}

template <class T>
Jet2<T> atan(const Jet2<T>& a) {
  const T d = make_constant<T>(1.0) + a.f * a.f;
  const T h1 = make_constant<T>(1.0) / d;
  const T h2 = make_constant<T>(-2.0) * a.f * h1 * h1;
  return compose(a, atan(a.f), h1, h2);
}

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Jet2<T>& a) { return value_of(a.f); }

}  // namespace geoflow
