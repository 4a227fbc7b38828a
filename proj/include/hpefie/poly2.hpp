// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cassert>
#include <cstddef>
#include <map>
#include <vector>

#include "hpefie/rational.hpp"

namespace hpefie {

// Dense bivariate polynomial on the reference triangle, monomial basis,
// coefficients stored by total degree blocks: index(i,j) = (i+j)(i+j+1)/2 + j.
template <class T>
class Poly2 {
 public:
  Poly2() : deg_(-1) {}
  explicit Poly2(int degree) : deg_(degree), c_(size_of(degree), T(0)) {}

  static std::size_t size_of(int degree) {
    return degree < 0 ? 0 : std::size_t((degree + 1) * (degree + 2) / 2);
  }
  static std::size_t index(int i, int j) {
    const int d = i + j;
    return std::size_t(d * (d + 1) / 2 + j);
  }

  static Poly2 constant(const T& v) {
    Poly2 p(0);
    p.c_[0] = v;
    return p;
  }
  static Poly2 monomial(int i, int j, const T& v = T(1)) {
    Poly2 p(i + j);
    p.c_[index(i, j)] = v;
    return p;
  }

  int degree() const { return deg_; }
  bool is_zero() const {
    for (const auto& v : c_)
      if (v != T(0)) return false;
    return true;
  }

  const T& coeff(int i, int j) const {
    static const T zero(0);
    if (i < 0 || j < 0 || i + j > deg_) return zero;
    return c_[index(i, j)];
  }
  T& at(int i, int j) {
    assert(i >= 0 && j >= 0 && i + j <= deg_);
    return c_[index(i, j)];
  }

  void grow_to(int degree) {
    if (degree > deg_) {
      c_.resize(size_of(degree), T(0));
      deg_ = degree;
    }
  }

  // Drops trailing all-zero degree blocks; keeps at least degree 0.
  void trim() {
    while (deg_ > 0) {
      bool zero = true;
      for (int j = 0; j <= deg_; ++j)
        if (c_[index(deg_ - j, j)] != T(0)) zero = false;
      if (!zero) break;
      c_.resize(size_of(deg_ - 1));
      --deg_;
    }
    if (deg_ < 0) {
      deg_ = 0;
      c_.assign(1, T(0));
    }
  }

  Poly2& operator+=(const Poly2& o) {
    grow_to(std::max(deg_, o.deg_));
    for (int d = 0; d <= o.deg_; ++d)
      for (int j = 0; j <= d; ++j) c_[index(d - j, j)] += o.c_[index(d - j, j)];
    return *this;
  }
  Poly2& operator-=(const Poly2& o) {
    grow_to(std::max(deg_, o.deg_));
    for (int d = 0; d <= o.deg_; ++d)
      for (int j = 0; j <= d; ++j) c_[index(d - j, j)] -= o.c_[index(d - j, j)];
    return *this;
  }
  Poly2& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(Poly2 a, const T& s) { return a *= s; }
  friend Poly2 operator*(const T& s, Poly2 a) { return a *= s; }

  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    if (a.deg_ < 0 || b.deg_ < 0) return Poly2(0);
    Poly2 r(a.deg_ + b.deg_);
    for (int da = 0; da <= a.deg_; ++da)
      for (int ja = 0; ja <= da; ++ja) {
        const T& ca = a.c_[index(da - ja, ja)];
        if (ca == T(0)) continue;
        for (int db = 0; db <= b.deg_; ++db)
          for (int jb = 0; jb <= db; ++jb) {
            const T& cb = b.c_[index(db - jb, jb)];
            if (cb == T(0)) continue;
            r.c_[index(da - ja + db - jb, ja + jb)] += ca * cb;
          }
      }
    return r;
  }

  Poly2 dx() const {
    Poly2 r(std::max(deg_ - 1, 0));
    for (int d = 1; d <= deg_; ++d)
      for (int j = 0; j <= d; ++j) {
        const int i = d - j;
        if (i >= 1 && c_[index(i, j)] != T(0))
          r.c_[index(i - 1, j)] += T(i) * c_[index(i, j)];
      }
    return r;
  }
  Poly2 dy() const {
    Poly2 r(std::max(deg_ - 1, 0));
    for (int d = 1; d <= deg_; ++d)
      for (int j = 1; j <= d; ++j) {
        const int i = d - j;
        if (c_[index(i, j)] != T(0)) r.c_[index(i, j - 1)] += T(j) * c_[index(i, j)];
      }
    return r;
  }

  template <class S>
  S evaluate(const S& x, const S& y) const {
    // powers table
    std::vector<S> px(deg_ + 1, S(1)), py(deg_ + 1, S(1));
    for (int i = 1; i <= deg_; ++i) px[i] = px[i - 1] * x;
    for (int j = 1; j <= deg_; ++j) py[j] = py[j - 1] * y;
    S acc(0);
    for (int d = 0; d <= deg_; ++d)
      for (int j = 0; j <= d; ++j) {
        const T& cv = c_[index(d - j, j)];
        if (cv != T(0)) acc += S(cv) * px[d - j] * py[j];
      }
    return acc;
  }

  // Exact integral over the unit triangle {x,y>=0, x+y<=1}:
  // int x^i y^j = i! j! / (i+j+2)!
  T integral_unit_triangle() const {
    T acc(0);
    for (int d = 0; d <= deg_; ++d)
      for (int j = 0; j <= d; ++j) {
        const T& cv = c_[index(d - j, j)];
        if (cv == T(0)) continue;
        const int i = d - j;
        acc += cv * T(Rational(factorial(i) * factorial(j), factorial(i + j + 2)));
      }
    return acc;
  }

  // Composition with the affine map (x,y) = (a11 u + a12 v + b1, a21 u + a22 v + b2).
  Poly2 compose_affine(const std::array<T, 4>& A, const std::array<T, 2>& b) const {
    Poly2 X(1), Y(1);
    X.at(0, 0) = b[0]; X.at(1, 0) = A[0]; X.at(0, 1) = A[1];
    Y.at(0, 0) = b[1]; Y.at(1, 0) = A[2]; Y.at(0, 1) = A[3];
    std::vector<Poly2> px(deg_ + 1), py(deg_ + 1);
    px[0] = constant(T(1)); py[0] = constant(T(1));
    for (int i = 1; i <= deg_; ++i) px[i] = px[i - 1] * X;
    for (int j = 1; j <= deg_; ++j) py[j] = py[j - 1] * Y;
    Poly2 r(deg_ >= 0 ? deg_ : 0);
    for (int d = 0; d <= deg_; ++d)
      for (int j = 0; j <= d; ++j) {
        const T& cv = c_[index(d - j, j)];
        if (cv != T(0)) r += cv * (px[d - j] * py[j]);
      }
    return r;
  }

  template <class S>
  Poly2<S> convert() const {
    Poly2<S> r(deg_ >= 0 ? deg_ : 0);
    for (int d = 0; d <= deg_; ++d)
      for (int j = 0; j <= d; ++j) r.at(d - j, j) = S(c_[index(d - j, j)]);
    return r;
  }

  const std::vector<T>& coeffs() const { return c_; }

 private:
  int deg_;
  std::vector<T> c_;
};

template <>
template <>
inline Poly2<double> Poly2<Rational>::convert<double>() const {
  Poly2<double> r(deg_ >= 0 ? deg_ : 0);
  for (int d = 0; d <= deg_; ++d)
    for (int j = 0; j <= d; ++j) r.at(d - j, j) = to_double(c_[index(d - j, j)]);
  return r;
}

// 2D vector field with polynomial components.
template <class T>
struct VecPoly2 {
  Poly2<T> x, y;

  VecPoly2() = default;
  VecPoly2(Poly2<T> px, Poly2<T> py) : x(std::move(px)), y(std::move(py)) {}

  Poly2<T> divergence() const { return x.dx() + y.dy(); }

  VecPoly2& operator+=(const VecPoly2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  VecPoly2& operator-=(const VecPoly2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend VecPoly2 operator+(VecPoly2 a, const VecPoly2& b) { return a += b; }
  friend VecPoly2 operator-(VecPoly2 a, const VecPoly2& b) { return a -= b; }
  friend VecPoly2 operator*(const T& s, VecPoly2 a) {
    a.x *= s;
    a.y *= s;
    return a;
  }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

// Reference-cell rotated gradient: curl phi = (-d phi/dy, d phi/dx).
// Piola push-forward of this field is the surface curl n x grad_Gamma on a cell
// whose chart columns (a1, a2) satisfy n = (a1 x a2)/J.
template <class T>
VecPoly2<T> ref_curl(const Poly2<T>& phi) {
  return VecPoly2<T>(Poly2<T>(0) - phi.dy(), phi.dx());
}

// Polynomial in the four variables (x1, x2, a1, a2); sparse. Used by the
// Poincare lifting where fields depend jointly on the point and the base point.
template <class T>
class Poly4 {
 public:
  using Key = std::array<int, 4>;

  void add_term(const Key& k, const T& v) {
    if (v == T(0)) return;
    auto it = c_.find(k);
    if (it == c_.end())
      c_.emplace(k, v);
    else {
      it->second += v;
      if (it->second == T(0)) c_.erase(it);
    }
  }

  Poly4& operator+=(const Poly4& o) {
    for (const auto& [k, v] : o.c_) add_term(k, v);
    return *this;
  }
  Poly4& operator*=(const T& s) {
    if (s == T(0)) {
      c_.clear();
      return *this;
    }
    for (auto& [k, v] : c_) v *= s;
    return *this;
  }
  friend Poly4 operator*(const Poly4& a, const Poly4& b) {
    Poly4 r;
    for (const auto& [ka, va] : a.c_)
      for (const auto& [kb, vb] : b.c_)
        r.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]}, va * vb);
    return r;
  }

  // Integrates out (a1, a2) against moment values M(k,l) = int w(a) a1^k a2^l.
  template <class MomentFn>
  Poly2<T> integrate_a(MomentFn&& moment, int xdeg_bound) const {
    Poly2<T> r(xdeg_bound);
    for (const auto& [k, v] : c_) {
      r.grow_to(k[0] + k[1]);
      T m = moment(k[2], k[3]);
      if (m != T(0)) r.at(k[0], k[1]) += v * m;
    }
    return r;
  }

  // Substitutes fixed values for (a1, a2); returns polynomial in (x1, x2).
  Poly2<T> substitute_a(const T& a1, const T& a2) const {
    int dmax = 0;
    for (const auto& [k, v] : c_) dmax = std::max(dmax, k[0] + k[1]);
    Poly2<T> r(dmax);
    for (const auto& [k, v] : c_) {
      T f = v;
      for (int i = 0; i < k[2]; ++i) f *= a1;
      for (int i = 0; i < k[3]; ++i) f *= a2;
      r.at(k[0], k[1]) += f;
    }
    return r;
  }

  const std::map<Key, T>& terms() const { return c_; }

 private:
  std::map<Key, T> c_;
};

}  // namespace hpefie
