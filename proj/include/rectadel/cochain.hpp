#ifndef RECTADEL_COCHAIN_HPP
#define RECTADEL_COCHAIN_HPP

#include "rectadel/generators.hpp"
#include "rectadel/tw.hpp"

namespace rectadel {

/// Element of the associated cochain complex of the per-flag products: one
/// constrained coefficient per flag, in degrees 0..2.
template <class Coef>
struct Cochain {
  using G = GV<typename Coef::Value>;
  const FlagComplex* K = nullptr;
  const Assignment<typename Coef::Label>* A = nullptr;
  std::vector<G> c0, c1, c2;

  Cochain() = default;
  Cochain(const FlagComplex& k, const Assignment<typename Coef::Label>& a)
      : K(&k), A(&a), c0(k.n_vertices()), c1(k.n_edges()), c2(k.n_tris())
  {
  }
  void add_in(const Cochain& o)
  {
    for (size_t i = 0; i < c0.size(); ++i) c0[i].add_in(o.c0[i]);
    for (size_t i = 0; i < c1.size(); ++i) c1[i].add_in(o.c1[i]);
    for (size_t i = 0; i < c2.size(); ++i) c2[i].add_in(o.c2[i]);
  }
  Cochain scaled(const Scalar& q) const
  {
    Cochain r(*K, *A);
    for (size_t i = 0; i < c0.size(); ++i) r.c0[i] = c0[i].scaled(q);
    for (size_t i = 0; i < c1.size(); ++i) r.c1[i] = c1[i].scaled(q);
    for (size_t i = 0; i < c2.size(); ++i) r.c2[i] = c2[i].scaled(q);
    return r;
  }
  bool operator==(const Cochain& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
  bool is_zero() const
  {
    for (const auto& g : c0)
      if (!g.is_zero()) return false;
    for (const auto& g : c1)
      if (!g.is_zero()) return false;
    for (const auto& g : c2)
      if (!g.is_zero()) return false;
    return true;
  }
};

/// Alternating sum of the coface maps.
template <class Coef>
Cochain<Coef> cochain_d(const Cochain<Coef>& x)
{
  Cochain<Coef> r(*x.K, *x.A);
  const FlagComplex& K = *x.K;
  for (int e = 0; e < K.n_edges(); ++e) {
    r.c1[e] = x.c0[K.edge(e)[1]];
    r.c1[e].add_in(x.c0[K.edge(e)[0]].scaled(Scalar(-1)));
  }
  for (int t = 0; t < K.n_tris(); ++t) {
    r.c2[t] = x.c1[K.tri_face(t, 0)];
    r.c2[t].add_in(x.c1[K.tri_face(t, 1)].scaled(Scalar(-1)));
    r.c2[t].add_in(x.c1[K.tri_face(t, 2)]);
  }
  return r;
}

/// Whitney integration: vertex values, exact edge integrals, and the signed
/// exact integral of the 2-form part over each triangle. A cochain map onto
/// the associated complex.
template <class Coef>
Cochain<Coef> integrate_to_cochain(const TW<Coef>& w)
{
  using G = GV<typename Coef::Value>;
  Cochain<Coef> r(*w.K, *w.A);
  r.c0 = w.vval;
  for (int e = 0; e < w.K->n_edges(); ++e) r.c1[e] = w.e1[e].integral_from(Scalar(0)).eval(Scalar(1));
  for (int t = 0; t < w.K->n_tris(); ++t) {
    // integral of s^i u^j over {s,u >= 0, s+u <= 1} is i! j! / (i+j+2)!;
    // the orientation fixed by the increasing flag order gives the sign -1
    // relative to ds^du (pinned by the cochain-map identity).
    G total;
    const Pol2<G>& f = w.tsu[t];
    for (int i = 0; i < static_cast<int>(f.a.size()); ++i)
      for (int j = 0; j < static_cast<int>(f.a[i].size()); ++j) {
        if (f.a[i][j].is_zero()) continue;
        Scalar weight(1);
        for (int k = 2; k <= i + j + 2; ++k) weight /= k;
        for (int k = 2; k <= i; ++k) weight *= k;
        for (int k = 2; k <= j; ++k) weight *= k;
        total.add_in(f.a[i][j].scaled(-weight));
      }
    r.c2[t] = std::move(total);
  }
  return r;
}

template <class Coef>
Cochain<Coef> random_cochain(Rng& rng, const FlagComplex& K,
                             const Assignment<typename Coef::Label>& A, const GenParams& p)
{
  Cochain<Coef> x(K, A);
  for (int v = 0; v < K.n_vertices(); ++v) x.c0[v] = random_gv<Coef>(rng, p, A.vert[v]);
  for (int e = 0; e < K.n_edges(); ++e) x.c1[e] = random_gv<Coef>(rng, p, A.edge[e]);
  for (int t = 0; t < K.n_tris(); ++t) x.c2[t] = random_gv<Coef>(rng, p, A.tri[t]);
  return x;
}

/// The level-wise projection onto the restricted products of a face-closed
/// subcomplex: keep surviving components, kill the rest. A morphism of the
/// per-level products commuting with the coface maps.
template <class Coef>
Cochain<Coef> cochain_project(const Cochain<Coef>& x, const Subcomplex& sub)
{
  if (!sub.face_closed(*x.K))
    throw std::invalid_argument("restriction target is not closed under faces");
  Cochain<Coef> r = x;
  for (int v = 0; v < x.K->n_vertices(); ++v)
    if (!sub.verts[v]) r.c0[v] = {};
  for (int e = 0; e < x.K->n_edges(); ++e)
    if (!sub.edges[e]) r.c1[e] = {};
  for (int t = 0; t < x.K->n_tris(); ++t)
    if (!sub.tris[t]) r.c2[t] = {};
  return r;
}

/// Exact cohomology ranks of the windowed associated (adelic) complex,
/// computed monomial block by monomial block.
std::vector<int> adelic_cohomology_ranks(const FlagComplex& K, const LocalAssignment& A,
                                         const Window& win, int dim_g);

/// Exact cohomology ranks of the windowed Thom-Whitney model with the given
/// cap on polynomial degree in the simplex coordinates (cap >= 2).
std::vector<int> tw_cohomology_ranks(const FlagComplex& K, const LocalAssignment& A,
                                     const Window& win, int dim_g, int s_cap);

} // namespace rectadel

#endif
