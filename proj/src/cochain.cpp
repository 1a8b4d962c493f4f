#include "rectadel/cochain.hpp"

#include "rectadel/linalg.hpp"

#include <map>

namespace rectadel {

namespace {

// which simplices admit a given monomial
struct Pattern {
  std::vector<bool> v, e, t;
  bool operator<(const Pattern& o) const { return std::tie(v, e, t) < std::tie(o.v, o.e, o.t); }
};

Pattern pattern_of(const FlagComplex& K, const LocalAssignment& A, int i, int j)
{
  BiLaurent m = BiLaurent::monomial(i, j, 1);
  Pattern p;
  p.v.resize(K.n_vertices());
  p.e.resize(K.n_edges());
  p.t.resize(K.n_tris());
  for (int v = 0; v < K.n_vertices(); ++v) p.v[v] = A.vert[v].contains(m);
  for (int e = 0; e < K.n_edges(); ++e) p.e[e] = A.edge[e].contains(m);
  for (int t = 0; t < K.n_tris(); ++t) p.t[t] = A.tri[t].contains(m);
  return p;
}

std::array<int, 3> adelic_pattern_ranks(const FlagComplex& K, const Pattern& p)
{
  // slot indices
  std::vector<int> vi(K.n_vertices(), -1), ei(K.n_edges(), -1), ti(K.n_tris(), -1);
  int nv = 0, ne = 0, nt = 0;
  for (int v = 0; v < K.n_vertices(); ++v)
    if (p.v[v]) vi[v] = nv++;
  for (int e = 0; e < K.n_edges(); ++e)
    if (p.e[e]) ei[e] = ne++;
  for (int t = 0; t < K.n_tris(); ++t)
    if (p.t[t]) ti[t] = nt++;
  QMatrix d0(ne, nv);
  for (int e = 0; e < K.n_edges(); ++e) {
    if (ei[e] < 0) continue;
    int a = K.edge(e)[0], b = K.edge(e)[1];
    if (vi[b] >= 0) d0.at(ei[e], vi[b]) += 1;
    if (vi[a] >= 0) d0.at(ei[e], vi[a]) -= 1;
  }
  QMatrix d1(nt, ne);
  for (int t = 0; t < K.n_tris(); ++t) {
    if (ti[t] < 0) continue;
    const Scalar sign[3] = {Scalar(1), Scalar(-1), Scalar(1)};
    for (int f = 0; f < 3; ++f) {
      int e = K.tri_face(t, f);
      if (ei[e] >= 0) d1.at(ti[t], ei[e]) += sign[f];
    }
  }
  int r0 = d0.rank(), r1 = d1.rank();
  return {nv - r0, ne - r1 - r0, nt - r1};
}

Scalar binom(int n, int k)
{
  if (k < 0 || k > n) return Scalar(0);
  Scalar r(1);
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Thom-Whitney per-monomial ranks at polynomial degree caps (D, D-1, D-2).
std::array<int, 3> tw_pattern_ranks(const FlagComplex& K, const Pattern& p, int D)
{
  if (D < 2) throw std::invalid_argument("need polynomial cap >= 2");
  const int D1 = D - 1, D2 = D - 2;
  auto tri_slots = [](int cap) { return (cap + 1) * (cap + 2) / 2; };
  auto tri_index = [](int cap, int i, int j) {
    // index of s^i u^j among monomials of total degree <= cap
    int idx = 0;
    for (int a = 0; a < i; ++a) idx += cap + 1 - a;
    return idx + j;
  };

  // ----- degree 0 space: constraint kernel
  std::vector<int> vs(K.n_vertices(), -1), es(K.n_edges(), -1), ts(K.n_tris(), -1);
  int n0 = 0;
  for (int v = 0; v < K.n_vertices(); ++v)
    if (p.v[v]) vs[v] = n0++;
  for (int e = 0; e < K.n_edges(); ++e)
    if (p.e[e]) {
      es[e] = n0;
      n0 += D + 1;
    }
  for (int t = 0; t < K.n_tris(); ++t)
    if (p.t[t]) {
      ts[t] = n0;
      n0 += tri_slots(D);
    }
  std::vector<std::vector<Scalar>> rows0;
  auto row0 = [&]() { return std::vector<Scalar>(n0, Scalar(0)); };
  for (int e = 0; e < K.n_edges(); ++e) {
    if (es[e] < 0) continue;
    // eval at 0 and 1 match the vertex values
    std::vector<Scalar> r = row0();
    r[es[e]] = 1;
    if (vs[K.edge(e)[0]] >= 0) r[vs[K.edge(e)[0]]] -= 1;
    rows0.push_back(std::move(r));
    r = row0();
    for (int k = 0; k <= D; ++k) r[es[e] + k] = 1;
    if (vs[K.edge(e)[1]] >= 0) r[vs[K.edge(e)[1]]] -= 1;
    rows0.push_back(std::move(r));
  }
  for (int t = 0; t < K.n_tris(); ++t) {
    if (ts[t] < 0) continue;
    // face 1: u = 0; face 2: s = 0; face 0: (sigma, 1 - sigma)
    for (int k = 0; k <= D; ++k) {
      std::vector<Scalar> r = row0();
      r[ts[t] + tri_index(D, k, 0)] = 1;
      int e = K.tri_face(t, 1);
      if (es[e] >= 0) r[es[e] + k] -= 1;
      rows0.push_back(std::move(r));
      r = row0();
      r[ts[t] + tri_index(D, 0, k)] = 1;
      e = K.tri_face(t, 2);
      if (es[e] >= 0) r[es[e] + k] -= 1;
      rows0.push_back(std::move(r));
    }
    for (int m = 0; m <= D; ++m) {
      std::vector<Scalar> r = row0();
      for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) {
          Scalar c = binom(j, m - i);
          if (c == 0) continue;
          if ((m - i) % 2 != 0) c = -c;
          r[ts[t] + tri_index(D, i, j)] += c;
        }
      int e = K.tri_face(t, 0);
      if (es[e] >= 0 && m <= D) r[es[e] + m] -= 1;
      rows0.push_back(std::move(r));
    }
  }

  // ----- degree 1 space
  std::vector<int> es1(K.n_edges(), -1), tss(K.n_tris(), -1), tus(K.n_tris(), -1);
  int n1 = 0;
  for (int e = 0; e < K.n_edges(); ++e)
    if (p.e[e]) {
      es1[e] = n1;
      n1 += D1 + 1;
    }
  for (int t = 0; t < K.n_tris(); ++t)
    if (p.t[t]) {
      tss[t] = n1;
      n1 += tri_slots(D1);
      tus[t] = n1;
      n1 += tri_slots(D1);
    }
  std::vector<std::vector<Scalar>> rows1;
  auto row1 = [&]() { return std::vector<Scalar>(n1, Scalar(0)); };
  for (int t = 0; t < K.n_tris(); ++t) {
    if (tss[t] < 0) continue;
    for (int k = 0; k <= D1; ++k) {
      std::vector<Scalar> r = row1();
      r[tss[t] + tri_index(D1, k, 0)] = 1;
      int e = K.tri_face(t, 1);
      if (es1[e] >= 0) r[es1[e] + k] -= 1;
      rows1.push_back(std::move(r));
      r = row1();
      r[tus[t] + tri_index(D1, 0, k)] = 1;
      e = K.tri_face(t, 2);
      if (es1[e] >= 0) r[es1[e] + k] -= 1;
      rows1.push_back(std::move(r));
    }
    for (int m = 0; m <= D1; ++m) {
      std::vector<Scalar> r = row1();
      for (int i = 0; i <= D1; ++i)
        for (int j = 0; i + j <= D1; ++j) {
          Scalar c = binom(j, m - i);
          if (c == 0) continue;
          if ((m - i) % 2 != 0) c = -c;
          r[tss[t] + tri_index(D1, i, j)] += c;
          r[tus[t] + tri_index(D1, i, j)] -= c;
        }
      int e = K.tri_face(t, 0);
      if (es1[e] >= 0) r[es1[e] + m] -= 1;
      rows1.push_back(std::move(r));
    }
  }

  // ----- degree 2 space (no constraints)
  int n2 = 0;
  std::vector<int> t2s(K.n_tris(), -1);
  for (int t = 0; t < K.n_tris(); ++t)
    if (p.t[t]) {
      t2s[t] = n2;
      n2 += tri_slots(D2);
    }

  auto kernel_of_rows = [&](std::vector<std::vector<Scalar>>& rows, int ncols) {
    QMatrix m(static_cast<int>(rows.size()), ncols);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      for (int c = 0; c < ncols; ++c) m.at(r, c) = rows[r][c];
    return m.kernel_basis();
  };
  auto V0 = kernel_of_rows(rows0, n0);
  auto V1 = kernel_of_rows(rows1, n1);

  // d0 in raw slots
  auto apply_d0 = [&](const std::vector<Scalar>& x) {
    std::vector<Scalar> y(n1, Scalar(0));
    for (int e = 0; e < K.n_edges(); ++e) {
      if (es1[e] < 0) continue;
      for (int k = 0; k <= D1; ++k) y[es1[e] + k] = Scalar(k + 1) * x[es[e] + k + 1];
    }
    for (int t = 0; t < K.n_tris(); ++t) {
      if (tss[t] < 0) continue;
      for (int i = 0; i <= D1; ++i)
        for (int j = 0; i + j <= D1; ++j) {
          y[tss[t] + tri_index(D1, i, j)] = Scalar(i + 1) * x[ts[t] + tri_index(D, i + 1, j)];
          y[tus[t] + tri_index(D1, i, j)] = Scalar(j + 1) * x[ts[t] + tri_index(D, i, j + 1)];
        }
    }
    return y;
  };
  auto apply_d1 = [&](const std::vector<Scalar>& x) {
    std::vector<Scalar> y(n2, Scalar(0));
    for (int t = 0; t < K.n_tris(); ++t) {
      if (t2s[t] < 0) continue;
      for (int i = 0; i <= D2; ++i)
        for (int j = 0; i + j <= D2; ++j)
          y[t2s[t] + tri_index(D2, i, j)] =
              Scalar(i + 1) * x[tus[t] + tri_index(D1, i + 1, j)] -
              Scalar(j + 1) * x[tss[t] + tri_index(D1, i, j + 1)];
    }
    return y;
  };

  QMatrix m0(static_cast<int>(V0.size()), n1);
  for (int r = 0; r < static_cast<int>(V0.size()); ++r) {
    auto y = apply_d0(V0[r]);
    for (int c = 0; c < n1; ++c) m0.at(r, c) = y[c];
  }
  QMatrix m1(static_cast<int>(V1.size()), n2);
  for (int r = 0; r < static_cast<int>(V1.size()); ++r) {
    auto y = apply_d1(V1[r]);
    for (int c = 0; c < n2; ++c) m1.at(r, c) = y[c];
  }
  int r0 = m0.rank(), r1 = m1.rank();
  int h0 = static_cast<int>(V0.size()) - r0;
  int h1 = static_cast<int>(V1.size()) - r1 - r0;
  int h2 = n2 - r1;
  return {h0, h1, h2};
}

template <class F>
std::vector<int> sum_over_monomials(const FlagComplex& K, const LocalAssignment& A,
                                    const Window& win, int dim_g, F&& pattern_ranks)
{
  std::map<Pattern, int> counts;
  for (int i = win.w_min; i <= win.w_max; ++i)
    for (int j = win.z_min; j <= win.z_max; ++j) counts[pattern_of(K, A, i, j)] += 1;
  std::vector<int> h(3, 0);
  for (const auto& [pat, count] : counts) {
    auto r = pattern_ranks(pat);
    for (int k = 0; k < 3; ++k) h[k] += r[k] * count * dim_g;
  }
  return h;
}

} // namespace

std::vector<int> adelic_cohomology_ranks(const FlagComplex& K, const LocalAssignment& A,
                                         const Window& win, int dim_g)
{
  return sum_over_monomials(K, A, win, dim_g,
                            [&](const Pattern& p) { return adelic_pattern_ranks(K, p); });
}

std::vector<int> tw_cohomology_ranks(const FlagComplex& K, const LocalAssignment& A,
                                     const Window& win, int dim_g, int s_cap)
{
  return sum_over_monomials(K, A, win, dim_g,
                            [&](const Pattern& p) { return tw_pattern_ranks(K, p, s_cap); });
}

} // namespace rectadel
