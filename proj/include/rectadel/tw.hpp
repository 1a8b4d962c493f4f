#ifndef RECTADEL_TW_HPP
#define RECTADEL_TW_HPP

#include "rectadel/flags.hpp"
#include "rectadel/labels.hpp"
#include "rectadel/lie.hpp"
#include "rectadel/poly.hpp"

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace rectadel {

/// Coefficient families for the form complexes: local Laurent polynomials
/// and global rational functions.
struct LocalCoef {
  using Value = BiLaurent;
  using Label = LocalLabel;
  static Value mul(const Value& a, const Value& b) { return a * b; }
};

struct GlobalCoef {
  using Value = RationalFn;
  using Label = GlobalLabel;
  static Value mul(const Value& a, const Value& b) { return rational_mul(a, b); }
};

/// A polynomial differential form on each simplex of a flag complex, valued
/// in g tensor C, stored with all cohomological degrees mixed:
///   vertex:    value
///   edge:      e0 + e1 d(sigma)
///   triangle:  t0 + ts ds + tu du + tsu ds^du
/// in the conventions where a 2-simplex (pt, line, E) has pt = (0,0),
/// line = (0,1), E = (1,0) in the (s, u) coordinates.
template <class Coef>
struct TW {
  using C = typename Coef::Value;
  using L = typename Coef::Label;
  using G = GV<C>;

  const FlagComplex* K = nullptr;
  const Assignment<L>* A = nullptr;

  std::vector<G> vval;
  std::vector<Pol1<G>> e0, e1;
  std::vector<Pol2<G>> t0, ts, tu, tsu;

  TW() = default;
  TW(const FlagComplex& k, const Assignment<L>& a)
      : K(&k), A(&a), vval(k.n_vertices()), e0(k.n_edges()), e1(k.n_edges()), t0(k.n_tris()),
        ts(k.n_tris()), tu(k.n_tris()), tsu(k.n_tris())
  {
  }

  bool is_zero() const
  {
    for (const auto& v : vval)
      if (!v.is_zero()) return false;
    for (int e = 0; e < K->n_edges(); ++e)
      if (!e0[e].is_zero() || !e1[e].is_zero()) return false;
    for (int t = 0; t < K->n_tris(); ++t)
      if (!t0[t].is_zero() || !ts[t].is_zero() || !tu[t].is_zero() || !tsu[t].is_zero())
        return false;
    return true;
  }

  void add_in(const TW& o)
  {
    for (int v = 0; v < K->n_vertices(); ++v) vval[v].add_in(o.vval[v]);
    for (int e = 0; e < K->n_edges(); ++e) {
      e0[e].add_in(o.e0[e]);
      e1[e].add_in(o.e1[e]);
    }
    for (int t = 0; t < K->n_tris(); ++t) {
      t0[t].add_in(o.t0[t]);
      ts[t].add_in(o.ts[t]);
      tu[t].add_in(o.tu[t]);
      tsu[t].add_in(o.tsu[t]);
    }
  }
  TW scaled(const Scalar& q) const
  {
    TW r(*K, *A);
    for (int v = 0; v < K->n_vertices(); ++v) r.vval[v] = vval[v].scaled(q);
    for (int e = 0; e < K->n_edges(); ++e) {
      r.e0[e] = e0[e].scaled(q);
      r.e1[e] = e1[e].scaled(q);
    }
    for (int t = 0; t < K->n_tris(); ++t) {
      r.t0[t] = t0[t].scaled(q);
      r.ts[t] = ts[t].scaled(q);
      r.tu[t] = tu[t].scaled(q);
      r.tsu[t] = tsu[t].scaled(q);
    }
    return r;
  }
  friend TW operator+(TW a, const TW& b)
  {
    a.add_in(b);
    return a;
  }
  friend TW operator-(TW a, const TW& b)
  {
    a.add_in(b.scaled(Scalar(-1)));
    return a;
  }

  bool operator==(const TW& o) const
  {
    for (int v = 0; v < K->n_vertices(); ++v)
      if (!(vval[v] == o.vval[v])) return false;
    for (int e = 0; e < K->n_edges(); ++e)
      if (!e0[e].equals(o.e0[e]) || !e1[e].equals(o.e1[e])) return false;
    for (int t = 0; t < K->n_tris(); ++t)
      if (!t0[t].equals(o.t0[t]) || !ts[t].equals(o.ts[t]) || !tu[t].equals(o.tu[t]) ||
          !tsu[t].equals(o.tsu[t]))
        return false;
    return true;
  }

  /// Homogeneous component of cohomological degree k (coefficients sit in
  /// degree zero, so this is the form degree).
  TW component(int k) const
  {
    TW r(*K, *A);
    if (k == 0) {
      r.vval = vval;
      r.e0 = e0;
      r.t0 = t0;
    } else if (k == 1) {
      r.e1 = e1;
      r.ts = ts;
      r.tu = tu;
    } else if (k == 2) {
      r.tsu = tsu;
    }
    return r;
  }

  /// Apply a map to every coefficient (e.g. a sector projection).
  TW map_coeffs(const std::function<C(const C&)>& fn) const
  {
    TW r(*K, *A);
    auto mg = [&](const G& g) {
      G out;
      out.c.reserve(g.c.size());
      for (const auto& x : g.c) out.c.push_back(fn(x));
      return out;
    };
    auto m1 = [&](const Pol1<G>& p) {
      Pol1<G> q;
      for (int k = 0; k < static_cast<int>(p.a.size()); ++k) q.add_term(k, mg(p.a[k]));
      return q;
    };
    auto m2 = [&](const Pol2<G>& p) {
      Pol2<G> q;
      for (int i = 0; i < static_cast<int>(p.a.size()); ++i)
        for (int j = 0; j < static_cast<int>(p.a[i].size()); ++j) q.add_term(i, j, mg(p.a[i][j]));
      return q;
    };
    for (int v = 0; v < K->n_vertices(); ++v) r.vval[v] = mg(vval[v]);
    for (int e = 0; e < K->n_edges(); ++e) {
      r.e0[e] = m1(e0[e]);
      r.e1[e] = m1(e1[e]);
    }
    for (int t = 0; t < K->n_tris(); ++t) {
      r.t0[t] = m2(t0[t]);
      r.ts[t] = m2(ts[t]);
      r.tu[t] = m2(tu[t]);
      r.tsu[t] = m2(tsu[t]);
    }
    return r;
  }
};

using LocalTW = TW<LocalCoef>;
using GlobalTW = TW<GlobalCoef>;

/// Convert an element to another coefficient family over the same complex,
/// applying fn to every coefficient.
template <class CoefB, class CoefA, class Fn>
TW<CoefB> tw_convert(const TW<CoefA>& w, const Assignment<typename CoefB::Label>& A2, Fn&& fn)
{
  TW<CoefB> r(*w.K, A2);
  auto mg = [&](const GV<typename CoefA::Value>& g) {
    GV<typename CoefB::Value> out;
    out.c.reserve(g.c.size());
    for (const auto& x : g.c) out.c.push_back(fn(x));
    return out;
  };
  auto m1 = [&](const Pol1<GV<typename CoefA::Value>>& p) {
    Pol1<GV<typename CoefB::Value>> q;
    for (int k = 0; k < static_cast<int>(p.a.size()); ++k) q.add_term(k, mg(p.a[k]));
    return q;
  };
  auto m2 = [&](const Pol2<GV<typename CoefA::Value>>& p) {
    Pol2<GV<typename CoefB::Value>> q;
    for (int i = 0; i < static_cast<int>(p.a.size()); ++i)
      for (int j = 0; j < static_cast<int>(p.a[i].size()); ++j) q.add_term(i, j, mg(p.a[i][j]));
    return q;
  };
  for (int v = 0; v < w.K->n_vertices(); ++v) r.vval[v] = mg(w.vval[v]);
  for (int e = 0; e < w.K->n_edges(); ++e) {
    r.e0[e] = m1(w.e0[e]);
    r.e1[e] = m1(w.e1[e]);
  }
  for (int t = 0; t < w.K->n_tris(); ++t) {
    r.t0[t] = m2(w.t0[t]);
    r.ts[t] = m2(w.ts[t]);
    r.tu[t] = m2(w.tu[t]);
    r.tsu[t] = m2(w.tsu[t]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// differential, bracket, faces, validation

template <class Coef>
TW<Coef> tw_d(const TW<Coef>& w)
{
  TW<Coef> r(*w.K, *w.A);
  for (int e = 0; e < w.K->n_edges(); ++e) r.e1[e] = w.e0[e].deriv();
  for (int t = 0; t < w.K->n_tris(); ++t) {
    r.ts[t] = w.t0[t].deriv_s();
    r.tu[t] = w.t0[t].deriv_u();
    Pol2<typename TW<Coef>::G> x = w.tu[t].deriv_s();
    x.add_in(w.ts[t].deriv_u().scaled(Scalar(-1)));
    r.tsu[t] = std::move(x);
  }
  return r;
}

template <class Coef>
GV<typename Coef::Value> gv_bracket(const GV<typename Coef::Value>& x,
                                    const GV<typename Coef::Value>& y, const LieStructure& L)
{
  GV<typename Coef::Value> out;
  if (x.c.empty() || y.c.empty()) return out;
  out.c.resize(L.dim());
  for (int a = 0; a < L.dim(); ++a) {
    if (x.c[a].is_zero()) continue;
    for (int b = 0; b < L.dim(); ++b) {
      if (y.c[b].is_zero()) continue;
      typename Coef::Value prod = Coef::mul(x.c[a], y.c[b]);
      for (int k = 0; k < L.dim(); ++k)
        if (L.c(a, b, k) != 0) out.c[k] += prod.scaled(L.c(a, b, k));
    }
  }
  return out;
}

template <class V, class Op>
Pol1<V> pol1_bilinear(const Pol1<V>& f, const Pol1<V>& g, Op&& op)
{
  Pol1<V> r;
  for (int i = 0; i < static_cast<int>(f.a.size()); ++i) {
    if (v_is_zero(f.a[i])) continue;
    for (int j = 0; j < static_cast<int>(g.a.size()); ++j) {
      if (v_is_zero(g.a[j])) continue;
      r.add_term(i + j, op(f.a[i], g.a[j]));
    }
  }
  return r;
}

template <class V, class Op>
Pol2<V> pol2_bilinear(const Pol2<V>& f, const Pol2<V>& g, Op&& op)
{
  Pol2<V> r;
  for (int i = 0; i < static_cast<int>(f.a.size()); ++i)
    for (int j = 0; j < static_cast<int>(f.a[i].size()); ++j) {
      if (v_is_zero(f.a[i][j])) continue;
      for (int i2 = 0; i2 < static_cast<int>(g.a.size()); ++i2)
        for (int j2 = 0; j2 < static_cast<int>(g.a[i2].size()); ++j2) {
          if (v_is_zero(g.a[i2][j2])) continue;
          r.add_term(i + i2, j + j2, op(f.a[i][j], g.a[i2][j2]));
        }
    }
  return r;
}

/// Graded bracket [w1 ^ w2] with the Lie bracket on coefficients. The
/// coefficients live in degree zero, so the sign rule reduces to the usual
/// wedge signs.
template <class Coef>
TW<Coef> tw_bracket(const TW<Coef>& x, const TW<Coef>& y, const LieStructure& L)
{
  if (x.K != y.K || x.A != y.A)
    throw std::invalid_argument("bracket arguments live on different assignments");
  using G = typename TW<Coef>::G;
  auto op = [&](const G& a, const G& b) { return gv_bracket<Coef>(a, b, L); };
  TW<Coef> r(*x.K, *x.A);
  for (int v = 0; v < x.K->n_vertices(); ++v) r.vval[v] = op(x.vval[v], y.vval[v]);
  for (int e = 0; e < x.K->n_edges(); ++e) {
    r.e0[e] = pol1_bilinear(x.e0[e], y.e0[e], op);
    Pol1<G> one = pol1_bilinear(x.e0[e], y.e1[e], op);
    one.add_in(pol1_bilinear(x.e1[e], y.e0[e], op));
    r.e1[e] = std::move(one);
  }
  for (int t = 0; t < x.K->n_tris(); ++t) {
    r.t0[t] = pol2_bilinear(x.t0[t], y.t0[t], op);
    Pol2<G> a = pol2_bilinear(x.t0[t], y.ts[t], op);
    a.add_in(pol2_bilinear(x.ts[t], y.t0[t], op));
    r.ts[t] = std::move(a);
    Pol2<G> b = pol2_bilinear(x.t0[t], y.tu[t], op);
    b.add_in(pol2_bilinear(x.tu[t], y.t0[t], op));
    r.tu[t] = std::move(b);
    Pol2<G> c = pol2_bilinear(x.t0[t], y.tsu[t], op);
    c.add_in(pol2_bilinear(x.tsu[t], y.t0[t], op));
    c.add_in(pol2_bilinear(x.ts[t], y.tu[t], op));
    c.add_in(pol2_bilinear(x.tu[t], y.ts[t], op).scaled(Scalar(-1)));
    r.tsu[t] = std::move(c);
  }
  return r;
}

/// Pullback of the triangle form to its i-th face in the edge coordinate:
/// returns (0-form, 1-form coefficient).
template <class Coef>
std::pair<Pol1<typename TW<Coef>::G>, Pol1<typename TW<Coef>::G>>
tri_face_pullback(const TW<Coef>& w, int t, int i)
{
  using G = typename TW<Coef>::G;
  Pol3<Scalar> sig;
  sig.add_term(1, 0, 0, Scalar(1)); // the edge coordinate, placed in slot s
  Pol3<Scalar> one = pol3_of_value(Scalar(1));
  Pol3<Scalar> s_arg, u_arg;
  Scalar ds_c, du_c; // constant derivatives of (s,u) along the edge
  if (i == 0) { // edge (v1,v2): (s,u) = (sigma, 1-sigma)
    s_arg = sig;
    u_arg = one;
    u_arg.add_in(sig.scaled(Scalar(-1)));
    ds_c = 1;
    du_c = -1;
  } else if (i == 1) { // edge (v0,v2): (s,u) = (sigma, 0)
    s_arg = sig;
    ds_c = 1;
    du_c = 0;
  } else { // edge (v0,v1): (s,u) = (0, sigma)
    u_arg = sig;
    ds_c = 0;
    du_c = 1;
  }
  auto collapse = [](const Pol3<G>& p) { return pol2_to_pol1(pol3_to_pol2(p)); };
  Pol1<G> f = collapse(pol2_compose(w.t0[t], s_arg, u_arg));
  Pol1<G> one_form = collapse(pol2_compose(w.ts[t], s_arg, u_arg)).scaled(ds_c);
  one_form.add_in(collapse(pol2_compose(w.tu[t], s_arg, u_arg)).scaled(du_c));
  return {std::move(f), std::move(one_form)};
}

struct ValidationIssue {
  std::string where;
  std::string what;
};

/// Compatibility of all face pullbacks plus the per-simplex label
/// constraints. Returns every violation found.
template <class Coef>
std::vector<ValidationIssue> tw_validate(const TW<Coef>& w)
{
  using G = typename TW<Coef>::G;
  std::vector<ValidationIssue> issues;
  const FlagComplex& K = *w.K;
  auto gv_in_label = [&](const G& g, const typename Coef::Label& l) {
    for (const auto& c : g.c)
      if (!l.contains(c)) return false;
    return true;
  };
  auto pol1_in_label = [&](const Pol1<G>& p, const typename Coef::Label& l) {
    for (const auto& g : p.a)
      if (!gv_in_label(g, l)) return false;
    return true;
  };
  auto pol2_in_label = [&](const Pol2<G>& p, const typename Coef::Label& l) {
    for (const auto& row : p.a)
      for (const auto& g : row)
        if (!gv_in_label(g, l)) return false;
    return true;
  };
  for (int v = 0; v < K.n_vertices(); ++v)
    if (!gv_in_label(w.vval[v], w.A->vert[v]))
      issues.push_back({"vertex " + K.point(v).str(), "value outside its coefficient space"});
  for (int e = 0; e < K.n_edges(); ++e) {
    const auto& l = w.A->edge[e];
    if (!pol1_in_label(w.e0[e], l) || !pol1_in_label(w.e1[e], l))
      issues.push_back({"edge " + K.point(K.edge(e)[0]).str() + "<" + K.point(K.edge(e)[1]).str(),
                        "form outside its coefficient space"});
    if (!(w.e0[e].eval(Scalar(0)) == w.vval[K.edge(e)[0]]))
      issues.push_back({"edge " + K.point(K.edge(e)[0]).str() + "<" + K.point(K.edge(e)[1]).str(),
                        "pullback to the lower vertex disagrees"});
    if (!(w.e0[e].eval(Scalar(1)) == w.vval[K.edge(e)[1]]))
      issues.push_back({"edge " + K.point(K.edge(e)[0]).str() + "<" + K.point(K.edge(e)[1]).str(),
                        "pullback to the upper vertex disagrees"});
  }
  for (int t = 0; t < K.n_tris(); ++t) {
    const auto& l = w.A->tri[t];
    if (!pol2_in_label(w.t0[t], l) || !pol2_in_label(w.ts[t], l) || !pol2_in_label(w.tu[t], l) ||
        !pol2_in_label(w.tsu[t], l))
      issues.push_back({"triangle " + std::to_string(t), "form outside its coefficient space"});
    for (int i = 0; i < 3; ++i) {
      auto [f, g] = tri_face_pullback(w, t, i);
      int e = K.tri_face(t, i);
      if (!f.equals(w.e0[e]) || !g.equals(w.e1[e])) {
        std::ostringstream os;
        os << "triangle " << t << " face " << i;
        issues.push_back({os.str(), "pullback disagrees with the face form"});
      }
    }
  }
  return issues;
}

template <class Coef>
bool tw_valid(const TW<Coef>& w)
{
  return tw_validate(w).empty();
}

// ---------------------------------------------------------------------------
// simplicial maps: paintings (pullbacks along vertex folds)

/// A map of the complex into itself given on vertices; vertices not listed
/// are fixed. For pullbacks the images of every simplex must span a simplex.
using VertexMap = std::map<int, int>;

inline int vmap_at(const VertexMap& m, int v)
{
  auto it = m.find(v);
  return it == m.end() ? v : it->second;
}

/// Pullback of w along the simplicial map: the value on a simplex is the
/// value of w on the image simplex, composed with the affine coordinate map.
/// When `active` is given, only those simplices are computed (the map need
/// not be simplicial outside them).
template <class Coef>
TW<Coef> fold_pullback(const TW<Coef>& w, const VertexMap& m, const Subcomplex* active = nullptr)
{
  using G = typename TW<Coef>::G;
  const FlagComplex& K = *w.K;
  TW<Coef> r(K, *w.A);

  // barycentric weight polynomials of the source simplex
  auto weights = [&](int dim) {
    std::vector<Pol3<Scalar>> ws;
    Pol3<Scalar> one = pol3_of_value(Scalar(1));
    if (dim == 0) {
      ws.push_back(one);
    } else if (dim == 1) {
      Pol3<Scalar> sig;
      sig.add_term(1, 0, 0, Scalar(1));
      Pol3<Scalar> w0 = one;
      w0.add_in(sig.scaled(Scalar(-1)));
      ws = {w0, sig};
    } else {
      Pol3<Scalar> s, u;
      s.add_term(1, 0, 0, Scalar(1));
      u.add_term(0, 1, 0, Scalar(1));
      Pol3<Scalar> w0 = one;
      w0.add_in(s.scaled(Scalar(-1)));
      w0.add_in(u.scaled(Scalar(-1)));
      ws = {w0, u, s}; // vertices (v0, v1, v2) have (s,u) = (0,0), (0,1), (1,0)
    }
    return ws;
  };

  auto pull = [&](int dim, const std::vector<int>& verts) {
    std::vector<int> imgs;
    for (int v : verts) imgs.push_back(vmap_at(m, v));
    auto tgt = K.span(imgs);
    if (!tgt) throw std::logic_error("vertex map images do not span a simplex");
    auto [tdim, tidx] = *tgt;
    auto ws = weights(dim);
    // coordinate polynomials of the target simplex composed with the map
    Pol3<Scalar> s_arg, u_arg;
    if (tdim >= 1) {
      const auto coord_vertex = [&](int slot) {
        if (tdim == 1) return K.edge(tidx)[slot];
        return K.tri(tidx)[slot];
      };
      for (size_t i = 0; i < verts.size(); ++i) {
        if (tdim == 1) {
          if (imgs[i] == coord_vertex(1)) s_arg.add_in(ws[i]);
        } else {
          if (imgs[i] == coord_vertex(2)) s_arg.add_in(ws[i]);
          if (imgs[i] == coord_vertex(1)) u_arg.add_in(ws[i]);
        }
      }
    }
    // assemble the pulled-back mixed form on the source simplex
    Pol3<G> c0, cs, cu, csu;
    if (tdim == 0) {
      c0 = pol3_of_value(w.vval[tidx]);
    } else if (tdim == 1) {
      c0 = pol1_compose(w.e0[tidx], s_arg);
      Pol3<G> f1 = pol1_compose(w.e1[tidx], s_arg);
      // d(sigma') = ds_s ds + ds_u du with constant coefficients
      Pol3<Scalar> dss = pol3_deriv(s_arg, 0), dsu = pol3_deriv(s_arg, 1);
      cs = pol3_scale_by(dss, f1);
      cu = pol3_scale_by(dsu, f1);
    } else {
      c0 = pol2_compose(w.t0[tidx], s_arg, u_arg);
      Pol3<G> fs = pol2_compose(w.ts[tidx], s_arg, u_arg);
      Pol3<G> fu = pol2_compose(w.tu[tidx], s_arg, u_arg);
      Pol3<G> f2 = pol2_compose(w.tsu[tidx], s_arg, u_arg);
      Pol3<Scalar> Ss = pol3_deriv(s_arg, 0), Su = pol3_deriv(s_arg, 1);
      Pol3<Scalar> Us = pol3_deriv(u_arg, 0), Uu = pol3_deriv(u_arg, 1);
      cs = pol3_scale_by(Ss, fs);
      cs.add_in(pol3_scale_by(Us, fu));
      cu = pol3_scale_by(Su, fs);
      cu.add_in(pol3_scale_by(Uu, fu));
      Pol3<Scalar> jac = pol3_mul(Ss, Uu);
      jac.add_in(pol3_mul(Su, Us).scaled(Scalar(-1)));
      csu = pol3_scale_by(jac, f2);
    }
    return std::array<Pol3<G>, 4>{std::move(c0), std::move(cs), std::move(cu), std::move(csu)};
  };

  for (int v = 0; v < K.n_vertices(); ++v) {
    if (active && !active->verts[v]) continue;
    auto parts = pull(0, {v});
    r.vval[v] = pol3_to_pol2(parts[0]).coeff(0, 0);
  }
  for (int e = 0; e < K.n_edges(); ++e) {
    if (active && !active->edges[e]) continue;
    auto parts = pull(1, {K.edge(e)[0], K.edge(e)[1]});
    r.e0[e] = pol2_to_pol1(pol3_to_pol2(parts[0]));
    r.e1[e] = pol2_to_pol1(pol3_to_pol2(parts[1])); // the edge coordinate sits in slot s
  }
  for (int t = 0; t < K.n_tris(); ++t) {
    if (active && !active->tris[t]) continue;
    auto parts = pull(2, {K.tri(t)[0], K.tri(t)[1], K.tri(t)[2]});
    r.t0[t] = pol3_to_pol2(parts[0]);
    r.ts[t] = pol3_to_pol2(parts[1]);
    r.tu[t] = pol3_to_pol2(parts[2]);
    r.tsu[t] = pol3_to_pol2(parts[3]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// prism fiber integration: the homotopy attached to one fold stage

/// h(w) for the straight-line homotopy from the fold (tau = 0) to the
/// identity (tau = 1): on each simplex pull w back from the carrier simplex
/// spanned by the simplex and its image, and integrate out the dtau part.
/// Satisfies d h + h d = id - fold_pullback exactly.
template <class Coef>
TW<Coef> fold_homotopy(const TW<Coef>& w, const VertexMap& m, const Subcomplex* active = nullptr)
{
  using G = typename TW<Coef>::G;
  const FlagComplex& K = *w.K;
  TW<Coef> r(K, *w.A);

  Pol3<Scalar> one = pol3_of_value(Scalar(1));
  Pol3<Scalar> tau;
  tau.add_term(0, 0, 1, Scalar(1));
  Pol3<Scalar> one_minus_tau = one;
  one_minus_tau.add_in(tau.scaled(Scalar(-1)));

  auto weights = [&](int dim) {
    std::vector<Pol3<Scalar>> ws;
    if (dim == 0) {
      ws.push_back(one);
    } else if (dim == 1) {
      Pol3<Scalar> sig;
      sig.add_term(1, 0, 0, Scalar(1));
      Pol3<Scalar> w0 = one;
      w0.add_in(sig.scaled(Scalar(-1)));
      ws = {w0, sig};
    } else {
      Pol3<Scalar> s, u;
      s.add_term(1, 0, 0, Scalar(1));
      u.add_term(0, 1, 0, Scalar(1));
      Pol3<Scalar> w0 = one;
      w0.add_in(s.scaled(Scalar(-1)));
      w0.add_in(u.scaled(Scalar(-1)));
      ws = {w0, u, s};
    }
    return ws;
  };

  auto handle = [&](int dim, const std::vector<int>& verts, auto&& emit) {
    bool moved = false;
    std::vector<int> imgs;
    for (int v : verts) {
      imgs.push_back(vmap_at(m, v));
      if (imgs.back() != v) moved = true;
    }
    if (!moved) return; // h vanishes on fixed simplices
    std::vector<int> all = verts;
    all.insert(all.end(), imgs.begin(), imgs.end());
    auto car = K.span(all);
    if (!car) throw std::logic_error("fold stage is not contiguous to the identity");
    auto [cdim, cidx] = *car;
    if (cdim == 0) return;
    auto ws = weights(dim);
    auto pos_poly = [&](int slot) {
      // H-coordinate polynomial for the carrier coordinate whose value is 1
      // exactly at carrier vertex `slot`
      int target = cdim == 1 ? K.edge(cidx)[slot] : K.tri(cidx)[slot];
      Pol3<Scalar> at_id, at_fold;
      for (size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] == target) at_id.add_in(ws[i]);
        if (imgs[i] == target) at_fold.add_in(ws[i]);
      }
      Pol3<Scalar> h = pol3_mul(tau, at_id);
      h.add_in(pol3_mul(one_minus_tau, at_fold));
      return h;
    };

    Pol3<G> c0, cs, cu, ct, csu, cst, cut;
    if (cdim == 1) {
      Pol3<Scalar> S = pos_poly(1);
      c0 = pol1_compose(w.e0[cidx], S);
      Pol3<G> f1 = pol1_compose(w.e1[cidx], S);
      cs = pol3_scale_by(pol3_deriv(S, 0), f1);
      cu = pol3_scale_by(pol3_deriv(S, 1), f1);
      ct = pol3_scale_by(pol3_deriv(S, 2), f1);
    } else {
      Pol3<Scalar> S = pos_poly(2), U = pos_poly(1);
      c0 = pol2_compose(w.t0[cidx], S, U);
      Pol3<G> fs = pol2_compose(w.ts[cidx], S, U);
      Pol3<G> fu = pol2_compose(w.tu[cidx], S, U);
      Pol3<G> f2 = pol2_compose(w.tsu[cidx], S, U);
      Pol3<Scalar> Ss = pol3_deriv(S, 0), Su = pol3_deriv(S, 1), St = pol3_deriv(S, 2);
      Pol3<Scalar> Us = pol3_deriv(U, 0), Uu = pol3_deriv(U, 1), Ut = pol3_deriv(U, 2);
      cs = pol3_scale_by(Ss, fs);
      cs.add_in(pol3_scale_by(Us, fu));
      cu = pol3_scale_by(Su, fs);
      cu.add_in(pol3_scale_by(Uu, fu));
      ct = pol3_scale_by(St, fs);
      ct.add_in(pol3_scale_by(Ut, fu));
      auto two_form = [&](const Pol3<Scalar>& a1, const Pol3<Scalar>& b1, const Pol3<Scalar>& a2,
                          const Pol3<Scalar>& b2) {
        Pol3<Scalar> j = pol3_mul(a1, b2);
        j.add_in(pol3_mul(a2, b1).scaled(Scalar(-1)));
        return pol3_scale_by(j, f2);
      };
      csu = two_form(Ss, Us, Su, Uu); // coefficient of ds^du
      cst = two_form(Ss, Us, St, Ut); // ds^dtau
      cut = two_form(Su, Uu, St, Ut); // du^dtau
    }
    // write alpha = beta + dtau ^ gamma and integrate gamma over tau in [0,1]
    Pol2<G> h0 = ct.integrate_tau01();
    Pol2<G> hs = cst.integrate_tau01().scaled(Scalar(-1));
    Pol2<G> hu = cut.integrate_tau01().scaled(Scalar(-1));
    emit(std::move(h0), std::move(hs), std::move(hu));
  };

  for (int v = 0; v < K.n_vertices(); ++v) {
    if (active && !active->verts[v]) continue;
    handle(0, {v}, [&](Pol2<G> h0, Pol2<G>, Pol2<G>) { r.vval[v] = h0.coeff(0, 0); });
  }
  for (int e = 0; e < K.n_edges(); ++e) {
    if (active && !active->edges[e]) continue;
    handle(1, {K.edge(e)[0], K.edge(e)[1]}, [&](Pol2<G> h0, Pol2<G> hs, Pol2<G>) {
      r.e0[e] = pol2_to_pol1(h0);
      r.e1[e] = pol2_to_pol1(hs);
    });
  }
  for (int t = 0; t < K.n_tris(); ++t) {
    if (active && !active->tris[t]) continue;
    handle(2, {K.tri(t)[0], K.tri(t)[1], K.tri(t)[2]}, [&](Pol2<G> h0, Pol2<G> hs, Pol2<G> hu) {
      r.t0[t] = std::move(h0);
      r.ts[t] = std::move(hs);
      r.tu[t] = std::move(hu);
    });
  }
  return r;
}

/// Remove the closed star of the moved vertices from the active set.
inline Subcomplex shrink_active(const FlagComplex& K, const Subcomplex& active, const VertexMap& m)
{
  Subcomplex out = active;
  auto moved = [&](int v) { return m.count(v) && m.at(v) != v; };
  for (int v = 0; v < K.n_vertices(); ++v)
    if (moved(v)) out.verts[v] = false;
  for (int e = 0; e < K.n_edges(); ++e)
    if (moved(K.edge(e)[0]) || moved(K.edge(e)[1])) out.edges[e] = false;
  for (int t = 0; t < K.n_tris(); ++t)
    if (moved(K.tri(t)[0]) || moved(K.tri(t)[1]) || moved(K.tri(t)[2])) out.tris[t] = false;
  return out;
}

/// Composite of fold stages, each applied on the still-active subcomplex and
/// painted back up through the earlier folds. Returns H(w) and R(w) with
/// d H + H d = id - R exactly; R is the composite painting of the
/// restriction of w to the final subcomplex.
template <class Coef>
std::pair<TW<Coef>, TW<Coef>> run_fold_schedule(const TW<Coef>& w,
                                                const std::vector<VertexMap>& stages)
{
  const FlagComplex& K = *w.K;
  std::vector<VertexMap> sts;
  for (const auto& st : stages)
    if (!st.empty()) sts.push_back(st);
  std::vector<Subcomplex> act; // active set before each stage
  std::vector<TW<Coef>> lvl;   // restriction of w before each stage
  act.push_back(Subcomplex::full(K));
  lvl.push_back(w);
  for (const auto& st : sts) {
    Subcomplex next = shrink_active(K, act.back(), st);
    lvl.push_back(fold_pullback(lvl.back(), st, &next));
    act.push_back(next);
  }
  // backward pass: paint homotopy contributions and the final restriction up
  TW<Coef> hacc(K, *w.A);
  TW<Coef> racc = lvl.back();
  for (size_t t = sts.size(); t-- > 0;) {
    TW<Coef> painted_h = fold_pullback(hacc, sts[t], &act[t]);
    painted_h.add_in(fold_homotopy(lvl[t], sts[t], &act[t]));
    hacc = std::move(painted_h);
    racc = fold_pullback(racc, sts[t], &act[t]);
  }
  return {std::move(hacc), std::move(racc)};
}

} // namespace rectadel

#endif
