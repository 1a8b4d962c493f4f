#ifndef RECTADEL_POLY_HPP
#define RECTADEL_POLY_HPP

#include "rectadel/rational.hpp"

#include <stdexcept>
#include <vector>

namespace rectadel {

/// Element of g tensor C for a coefficient algebra C: one C per basis
/// vector of g. An empty vector is zero of any dimension.
template <class C>
struct GV {
  std::vector<C> c;

  GV() = default;
  explicit GV(int dim) : c(dim) {}

  bool is_zero() const
  {
    for (const auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }
  void add_in(const GV& o)
  {
    if (o.c.empty()) return;
    if (c.empty()) c.resize(o.c.size());
    if (c.size() != o.c.size()) throw std::invalid_argument("GV dimension mismatch");
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  }
  GV scaled(const Scalar& q) const
  {
    GV r;
    if (q == 0) return r;
    r.c.reserve(c.size());
    for (const auto& x : c) r.c.push_back(x.scaled(q));
    return r;
  }
  bool operator==(const GV& o) const
  {
    if (c.size() == o.c.size()) return c == o.c;
    return is_zero() && o.is_zero();
  }
};

// value-type helpers shared by GV coefficients and plain scalars
template <class C>
inline void v_add_in(GV<C>& a, const GV<C>& b) { a.add_in(b); }
template <class C>
inline GV<C> v_scaled(const GV<C>& a, const Scalar& q) { return a.scaled(q); }
template <class C>
inline bool v_is_zero(const GV<C>& a) { return a.is_zero(); }

inline void v_add_in(Scalar& a, const Scalar& b) { a += b; }
inline Scalar v_scaled(const Scalar& a, const Scalar& q) { return a * q; }
inline bool v_is_zero(const Scalar& a) { return a == 0; }

/// Polynomial in one simplex coordinate with V coefficients.
template <class V>
struct Pol1 {
  std::vector<V> a; // a[k] sigma^k

  bool is_zero() const
  {
    for (const auto& v : a)
      if (!v_is_zero(v)) return false;
    return true;
  }
  int degree() const { return static_cast<int>(a.size()) - 1; }
  const V& coeff(int k) const
  {
    static const V zero{};
    return k < static_cast<int>(a.size()) ? a[k] : zero;
  }
  void add_term(int k, const V& v)
  {
    if (v_is_zero(v)) return;
    if (k >= static_cast<int>(a.size())) a.resize(k + 1);
    v_add_in(a[k], v);
  }
  void add_in(const Pol1& o)
  {
    for (int k = 0; k < static_cast<int>(o.a.size()); ++k) add_term(k, o.a[k]);
  }
  Pol1 scaled(const Scalar& q) const
  {
    Pol1 r;
    if (q == 0) return r;
    r.a.reserve(a.size());
    for (const auto& v : a) r.a.push_back(v_scaled(v, q));
    return r;
  }
  V eval(const Scalar& x) const
  {
    V out{};
    Scalar p(1);
    for (const auto& v : a) {
      v_add_in(out, v_scaled(v, p));
      p *= x;
    }
    return out;
  }
  Pol1 deriv() const
  {
    Pol1 r;
    for (int k = 1; k < static_cast<int>(a.size()); ++k) r.add_term(k - 1, v_scaled(a[k], k));
    return r;
  }
  /// Antiderivative vanishing at base (base in {0,1} typically):
  /// integral from base to sigma.
  Pol1 integral_from(const Scalar& base) const
  {
    Pol1 r;
    for (int k = 0; k < static_cast<int>(a.size()); ++k)
      r.add_term(k + 1, v_scaled(a[k], Scalar(1) / (k + 1)));
    V at_base = r.eval(base);
    r.add_term(0, v_scaled(at_base, Scalar(-1)));
    return r;
  }
  bool equals(const Pol1& o) const
  {
    size_t n = std::max(a.size(), o.a.size());
    for (size_t k = 0; k < n; ++k)
      if (!(coeff(static_cast<int>(k)) == o.coeff(static_cast<int>(k)))) return false;
    return true;
  }
};

/// Polynomial in two simplex coordinates (s, u).
template <class V>
struct Pol2 {
  std::vector<std::vector<V>> a; // a[i][j] s^i u^j

  bool is_zero() const
  {
    for (const auto& row : a)
      for (const auto& v : row)
        if (!v_is_zero(v)) return false;
    return true;
  }
  const V& coeff(int i, int j) const
  {
    static const V zero{};
    if (i >= static_cast<int>(a.size())) return zero;
    if (j >= static_cast<int>(a[i].size())) return zero;
    return a[i][j];
  }
  void add_term(int i, int j, const V& v)
  {
    if (v_is_zero(v)) return;
    if (i >= static_cast<int>(a.size())) a.resize(i + 1);
    if (j >= static_cast<int>(a[i].size())) a[i].resize(j + 1);
    v_add_in(a[i][j], v);
  }
  void add_in(const Pol2& o)
  {
    for (int i = 0; i < static_cast<int>(o.a.size()); ++i)
      for (int j = 0; j < static_cast<int>(o.a[i].size()); ++j) add_term(i, j, o.a[i][j]);
  }
  Pol2 scaled(const Scalar& q) const
  {
    Pol2 r;
    if (q == 0) return r;
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
      for (int j = 0; j < static_cast<int>(a[i].size()); ++j) r.add_term(i, j, v_scaled(a[i][j], q));
    return r;
  }
  Pol2 deriv_s() const
  {
    Pol2 r;
    for (int i = 1; i < static_cast<int>(a.size()); ++i)
      for (int j = 0; j < static_cast<int>(a[i].size()); ++j)
        r.add_term(i - 1, j, v_scaled(a[i][j], i));
    return r;
  }
  Pol2 deriv_u() const
  {
    Pol2 r;
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
      for (int j = 1; j < static_cast<int>(a[i].size()); ++j)
        r.add_term(i, j - 1, v_scaled(a[i][j], j));
    return r;
  }
  /// Partial evaluation u = x, leaving a polynomial in s.
  Pol1<V> eval_u(const Scalar& x) const
  {
    Pol1<V> r;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      Scalar p(1);
      for (int j = 0; j < static_cast<int>(a[i].size()); ++j) {
        r.add_term(i, v_scaled(a[i][j], p));
        p *= x;
      }
    }
    return r;
  }
  Pol1<V> eval_s(const Scalar& x) const
  {
    Pol1<V> r;
    Scalar p(1);
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      for (int j = 0; j < static_cast<int>(a[i].size()); ++j) r.add_term(j, v_scaled(a[i][j], p));
      p *= x;
    }
    return r;
  }
  V eval(const Scalar& x, const Scalar& y) const { return eval_u(y).eval(x); }
  bool equals(const Pol2& o) const
  {
    int n = static_cast<int>(std::max(a.size(), o.a.size()));
    for (int i = 0; i < n; ++i) {
      size_t ri = i < static_cast<int>(a.size()) ? a[i].size() : 0;
      size_t ro = i < static_cast<int>(o.a.size()) ? o.a[i].size() : 0;
      int m = static_cast<int>(std::max(ri, ro));
      for (int j = 0; j < m; ++j)
        if (!(coeff(i, j) == o.coeff(i, j))) return false;
    }
    return true;
  }
};

/// Polynomial in (s, u, tau): the prism coordinates used for fiber
/// integration of homotopies.
template <class V>
struct Pol3 {
  std::vector<std::vector<std::vector<V>>> a; // a[i][j][k] s^i u^j tau^k

  bool is_zero() const
  {
    for (const auto& p : a)
      for (const auto& row : p)
        for (const auto& v : row)
          if (!v_is_zero(v)) return false;
    return true;
  }
  void add_term(int i, int j, int k, const V& v)
  {
    if (v_is_zero(v)) return;
    if (i >= static_cast<int>(a.size())) a.resize(i + 1);
    if (j >= static_cast<int>(a[i].size())) a[i].resize(j + 1);
    if (k >= static_cast<int>(a[i][j].size())) a[i][j].resize(k + 1);
    v_add_in(a[i][j][k], v);
  }
  void add_in(const Pol3& o)
  {
    for (int i = 0; i < static_cast<int>(o.a.size()); ++i)
      for (int j = 0; j < static_cast<int>(o.a[i].size()); ++j)
        for (int k = 0; k < static_cast<int>(o.a[i][j].size()); ++k) add_term(i, j, k, o.a[i][j][k]);
  }
  Pol3 scaled(const Scalar& q) const
  {
    Pol3 r;
    if (q == 0) return r;
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
      for (int j = 0; j < static_cast<int>(a[i].size()); ++j)
        for (int k = 0; k < static_cast<int>(a[i][j].size()); ++k)
          r.add_term(i, j, k, v_scaled(a[i][j][k], q));
    return r;
  }
  template <class F>
  void for_terms(F&& fn) const
  {
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
      for (int j = 0; j < static_cast<int>(a[i].size()); ++j)
        for (int k = 0; k < static_cast<int>(a[i][j].size()); ++k)
          if (!v_is_zero(a[i][j][k])) fn(i, j, k, a[i][j][k]);
  }
  /// Definite integral over tau in [0,1], leaving a Pol2 in (s,u).
  Pol2<V> integrate_tau01() const
  {
    Pol2<V> r;
    for_terms([&](int i, int j, int k, const V& v) {
      r.add_term(i, j, v_scaled(v, Scalar(1) / (k + 1)));
    });
    return r;
  }
};

inline Pol3<Scalar> pol3_mul(const Pol3<Scalar>& x, const Pol3<Scalar>& y)
{
  Pol3<Scalar> r;
  x.for_terms([&](int i, int j, int k, const Scalar& v) {
    y.for_terms([&](int i2, int j2, int k2, const Scalar& w) {
      r.add_term(i + i2, j + j2, k + k2, v * w);
    });
  });
  return r;
}

template <class V>
Pol3<V> pol3_scale_by(const Pol3<Scalar>& s, const Pol3<V>& p)
{
  Pol3<V> r;
  s.for_terms([&](int i, int j, int k, const Scalar& c) {
    p.for_terms([&](int i2, int j2, int k2, const V& v) {
      r.add_term(i + i2, j + j2, k + k2, v_scaled(v, c));
    });
  });
  return r;
}

template <class V>
Pol3<V> pol3_of_value(const V& v)
{
  Pol3<V> r;
  r.add_term(0, 0, 0, v);
  return r;
}

/// pow of a scalar polynomial; exponents are tiny here.
inline Pol3<Scalar> pol3_pow(const Pol3<Scalar>& x, int n)
{
  Pol3<Scalar> r = pol3_of_value(Scalar(1));
  for (int k = 0; k < n; ++k) r = pol3_mul(r, x);
  return r;
}

inline Pol3<Scalar> pol3_deriv(const Pol3<Scalar>& x, int var)
{
  Pol3<Scalar> r;
  x.for_terms([&](int i, int j, int k, const Scalar& v) {
    if (var == 0 && i > 0) r.add_term(i - 1, j, k, v * i);
    if (var == 1 && j > 0) r.add_term(i, j - 1, k, v * j);
    if (var == 2 && k > 0) r.add_term(i, j, k - 1, v * k);
  });
  return r;
}

/// Substitute scalar polynomials (arg1, arg2) into a Pol2.
template <class V>
Pol3<V> pol2_compose(const Pol2<V>& f, const Pol3<Scalar>& arg1, const Pol3<Scalar>& arg2)
{
  Pol3<V> out;
  for (int i = 0; i < static_cast<int>(f.a.size()); ++i) {
    for (int j = 0; j < static_cast<int>(f.a[i].size()); ++j) {
      if (v_is_zero(f.a[i][j])) continue;
      Pol3<Scalar> m = pol3_mul(pol3_pow(arg1, i), pol3_pow(arg2, j));
      out.add_in(pol3_scale_by(m, pol3_of_value(f.a[i][j])));
    }
  }
  return out;
}

template <class V>
Pol3<V> pol1_compose(const Pol1<V>& f, const Pol3<Scalar>& arg)
{
  Pol3<V> out;
  for (int k = 0; k < static_cast<int>(f.a.size()); ++k) {
    if (v_is_zero(f.a[k])) continue;
    out.add_in(pol3_scale_by(pol3_pow(arg, k), pol3_of_value(f.a[k])));
  }
  return out;
}

/// Collapse helpers: a Pol3 with no tau dependence to a Pol2, a Pol3 in the
/// first variable only to a Pol1.
template <class V>
Pol2<V> pol3_to_pol2(const Pol3<V>& p)
{
  Pol2<V> r;
  p.for_terms([&](int i, int j, int k, const V& v) {
    if (k != 0) throw std::logic_error("unexpected tau dependence");
    r.add_term(i, j, v);
  });
  return r;
}

template <class V>
Pol1<V> pol2_to_pol1(const Pol2<V>& p)
{
  Pol1<V> r;
  for (int i = 0; i < static_cast<int>(p.a.size()); ++i)
    for (int j = 0; j < static_cast<int>(p.a[i].size()); ++j) {
      if (v_is_zero(p.a[i][j])) continue;
      if (j != 0) throw std::logic_error("unexpected second variable");
      r.add_term(i, p.a[i][j]);
    }
  return r;
}

template <class V>
Pol2<V> pol1_to_pol2(const Pol1<V>& p)
{
  Pol2<V> r;
  for (int k = 0; k < static_cast<int>(p.a.size()); ++k) r.add_term(k, 0, p.a[k]);
  return r;
}

} // namespace rectadel

#endif
