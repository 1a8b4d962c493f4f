#ifndef RECTADEL_GENERATORS_HPP
#define RECTADEL_GENERATORS_HPP

#include "rectadel/tw.hpp"

#include <random>
#include <string_view>

namespace rectadel {

/// Deterministic source of test data; every property case derives its own
/// stream from (seed, suite, case index).
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}
  int uniform(int lo, int hi) // inclusive
  {
    return static_cast<int>(std::uniform_int_distribution<long>(lo, hi)(eng));
  }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(eng) < p; }
  /// Nonzero integer in [-9, 9].
  Scalar coeff()
  {
    int v = uniform(-9, 8);
    return Scalar(v >= 0 ? v + 1 : v);
  }
};

std::uint64_t case_seed(std::uint64_t seed, std::string_view suite, std::uint64_t index);

struct GenParams {
  Window win = square_window(2);
  MarkedPointsPtr pts;    // for global coefficients
  int dim_g = 3;
  int s_cap = 2;          // polynomial degree in the simplex coordinates
  double density = 0.2;   // fraction of the window cells used per coefficient
  int atom_order_max = 2; // pole orders of random rational atoms
  int grf_terms_max = 2;  // atoms per random rational coefficient
};

BiLaurent random_blp(Rng& rng, const GenParams& p, const LocalLabel& label);
RationalFn random_grf(Rng& rng, const GenParams& p, const GlobalLabel& label);

inline BiLaurent random_coef(Rng& rng, const GenParams& p, const LocalLabel& l)
{
  return random_blp(rng, p, l);
}
inline RationalFn random_coef(Rng& rng, const GenParams& p, const GlobalLabel& l)
{
  return random_grf(rng, p, l);
}

template <class Coef>
GV<typename Coef::Value> random_gv(Rng& rng, const GenParams& p, const typename Coef::Label& l)
{
  GV<typename Coef::Value> g(p.dim_g);
  for (int a = 0; a < p.dim_g; ++a) g.c[a] = random_coef(rng, p, l);
  return g;
}

// polynomial division helpers used by the interpolating generator
template <class V>
Pol1<V> pol1_compose_affine(const Pol1<V>& f, const Scalar& c0, const Scalar& c1)
{
  // f(c0 + c1 sigma) by Horner's rule
  Pol1<V> r;
  for (int k = static_cast<int>(f.a.size()); k-- > 0;) {
    // r = r * (c0 + c1 sigma) + a[k]
    Pol1<V> next;
    for (int i = 0; i < static_cast<int>(r.a.size()); ++i) {
      next.add_term(i, v_scaled(r.a[i], c0));
      next.add_term(i + 1, v_scaled(r.a[i], c1));
    }
    next.add_term(0, f.a[k]);
    r = std::move(next);
  }
  return r;
}

/// q with f = sigma * (sigma - 1) * q, assuming f(0) = f(1) = 0.
template <class V>
Pol1<V> pol1_divide_sigma_sigma_minus_1(const Pol1<V>& f)
{
  if (!f.a.empty() && !v_is_zero(f.a[0])) throw std::logic_error("no root at 0");
  Pol1<V> shifted; // f / sigma
  for (int k = 1; k < static_cast<int>(f.a.size()); ++k) shifted.add_term(k - 1, f.a[k]);
  // divide by (sigma - 1): synthetic division at 1
  Pol1<V> q;
  V carry{};
  for (int k = static_cast<int>(shifted.a.size()); k-- > 0;) {
    V cur = shifted.coeff(k);
    v_add_in(cur, carry);
    if (k == 0) {
      if (!v_is_zero(cur)) throw std::logic_error("no root at 1");
      break;
    }
    q.add_term(k - 1, cur);
    carry = cur;
  }
  return q;
}

/// Random valid element with all degree components populated: vertex values
/// first, edges interpolating them, triangles interpolating their faces,
/// plus interior pieces supported away from the boundary.
template <class Coef>
TW<Coef> random_tw(Rng& rng, const FlagComplex& K, const Assignment<typename Coef::Label>& A,
                   const GenParams& p)
{
  using G = GV<typename Coef::Value>;
  TW<Coef> w(K, A);
  auto rgv = [&](const typename Coef::Label& l) { return random_gv<Coef>(rng, p, l); };
  auto rpol1 = [&](const typename Coef::Label& l, int cap) {
    Pol1<G> q;
    for (int k = 0; k <= cap; ++k) q.add_term(k, rgv(l));
    return q;
  };
  auto rpol2 = [&](const typename Coef::Label& l, int cap) {
    Pol2<G> q;
    for (int i = 0; i <= cap; ++i)
      for (int j = 0; i + j <= cap; ++j) q.add_term(i, j, rgv(l));
    return q;
  };

  for (int v = 0; v < K.n_vertices(); ++v) w.vval[v] = rgv(A.vert[v]);

  for (int e = 0; e < K.n_edges(); ++e) {
    const G& v0 = w.vval[K.edge(e)[0]];
    const G& v1 = w.vval[K.edge(e)[1]];
    Pol1<G> f;
    f.add_term(0, v0);
    f.add_term(1, v0.scaled(Scalar(-1)));
    f.add_term(1, v1);
    Pol1<G> bump = rpol1(A.edge[e], std::max(0, p.s_cap - 2));
    // sigma (1 - sigma) bump
    for (int k = 0; k < static_cast<int>(bump.a.size()); ++k) {
      f.add_term(k + 1, bump.a[k]);
      f.add_term(k + 2, bump.a[k].scaled(Scalar(-1)));
    }
    w.e0[e] = std::move(f);
    w.e1[e] = rpol1(A.edge[e], p.s_cap);
  }

  for (int t = 0; t < K.n_tris(); ++t) {
    // face data: a(s) on (v0,v2), b(u) on (v0,v1), c(sigma) on (v1,v2)
    const Pol1<G>& a = w.e0[K.tri_face(t, 1)];
    const Pol1<G>& b = w.e0[K.tri_face(t, 2)];
    const Pol1<G>& c = w.e0[K.tri_face(t, 0)];
    const G& v0 = w.vval[K.tri(t)[0]];
    Pol2<G> f;
    for (int k = 0; k < static_cast<int>(a.a.size()); ++k) f.add_term(k, 0, a.a[k]);
    for (int k = 0; k < static_cast<int>(b.a.size()); ++k) f.add_term(0, k, b.a[k]);
    f.add_term(0, 0, v0.scaled(Scalar(-1)));
    // delta(sigma) = c - a - b(1 - sigma) + v0 vanishes at 0 and 1
    Pol1<G> delta = c;
    delta.add_in(a.scaled(Scalar(-1)));
    delta.add_in(pol1_compose_affine(b, Scalar(1), Scalar(-1)).scaled(Scalar(-1)));
    delta.add_term(0, v0);
    Pol1<G> eps = pol1_divide_sigma_sigma_minus_1(delta).scaled(Scalar(-1));
    for (int k = 0; k < static_cast<int>(eps.a.size()); ++k) f.add_term(k + 1, 1, eps.a[k]);
    // interior bump s u (1 - s - u) R
    Pol2<G> R = rpol2(A.tri[t], std::max(0, p.s_cap - 3));
    for (int i = 0; i < static_cast<int>(R.a.size()); ++i)
      for (int j = 0; j < static_cast<int>(R.a[i].size()); ++j) {
        const G& v = R.a[i][j];
        f.add_term(i + 1, j + 1, v);
        f.add_term(i + 2, j + 1, v.scaled(Scalar(-1)));
        f.add_term(i + 1, j + 2, v.scaled(Scalar(-1)));
      }
    w.t0[t] = std::move(f);

    // one-forms: fs = alpha(s) + u Delta(s) (+ interior), fu = beta(u) - s Delta(s)
    const Pol1<G>& alpha = w.e1[K.tri_face(t, 1)];
    const Pol1<G>& beta = w.e1[K.tri_face(t, 2)];
    const Pol1<G>& gamma = w.e1[K.tri_face(t, 0)];
    Pol1<G> Delta = gamma;
    Delta.add_in(alpha.scaled(Scalar(-1)));
    Delta.add_in(pol1_compose_affine(beta, Scalar(1), Scalar(-1)));
    Pol2<G> fs, fu;
    for (int k = 0; k < static_cast<int>(alpha.a.size()); ++k) fs.add_term(k, 0, alpha.a[k]);
    for (int k = 0; k < static_cast<int>(Delta.a.size()); ++k) {
      fs.add_term(k, 1, Delta.a[k]);
      fu.add_term(k + 1, 0, Delta.a[k].scaled(Scalar(-1)));
    }
    for (int k = 0; k < static_cast<int>(beta.a.size()); ++k) fu.add_term(0, k, beta.a[k]);
    // interior: fs += u (s W + (s+u-1) Ap), fu += s (u W + (s+u-1) Bp)
    Pol2<G> W = rpol2(A.tri[t], std::max(0, p.s_cap - 2));
    Pol2<G> Ap = rpol2(A.tri[t], std::max(0, p.s_cap - 2));
    Pol2<G> Bp = rpol2(A.tri[t], std::max(0, p.s_cap - 2));
    auto add_mixed = [&](Pol2<G>& dst, const Pol2<G>& src, int ds, int du) {
      for (int i = 0; i < static_cast<int>(src.a.size()); ++i)
        for (int j = 0; j < static_cast<int>(src.a[i].size()); ++j)
          dst.add_term(i + ds, j + du, src.a[i][j]);
    };
    auto add_su_minus_1 = [&](Pol2<G>& dst, const Pol2<G>& src, int ds, int du) {
      // src * (s + u - 1) shifted by (ds, du)
      for (int i = 0; i < static_cast<int>(src.a.size()); ++i)
        for (int j = 0; j < static_cast<int>(src.a[i].size()); ++j) {
          const G& v = src.a[i][j];
          dst.add_term(i + 1 + ds, j + du, v);
          dst.add_term(i + ds, j + 1 + du, v);
          dst.add_term(i + ds, j + du, v.scaled(Scalar(-1)));
        }
    };
    add_mixed(fs, W, 1, 1);
    add_su_minus_1(fs, Ap, 0, 1);
    add_mixed(fu, W, 1, 1);
    add_su_minus_1(fu, Bp, 1, 0);
    w.ts[t] = std::move(fs);
    w.tu[t] = std::move(fu);
    w.tsu[t] = rpol2(A.tri[t], p.s_cap);
  }
  return w;
}

} // namespace rectadel

#endif
