#include "rectadel/global_homotopy.hpp"

#include <stdexcept>

namespace rectadel {

GlobalContext::GlobalContext(LieStructure lie, MarkedPointsPtr points, Window window)
    : L(lie), pts(std::move(points)), win(window), K(build_rect_flags(*pts)),
      Aglob(assign_global(K, pts)), local(std::move(lie))
{
  const int N = n();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) Abig.push_back(assign_big_local(K, i, j));
  vE = K.require_vertex(FlagPoint::generic());
  vw.resize(N);
  vz.resize(N);
  eWE.resize(N);
  eZE.resize(N);
  vpt.assign(N, std::vector<int>(N, -1));
  for (int i = 0; i < N; ++i) {
    vw[i] = K.require_vertex(FlagPoint::wline(i));
    vz[i] = K.require_vertex(FlagPoint::zline(i));
    eWE[i] = K.require_edge(vw[i], vE);
    eZE[i] = K.require_edge(vz[i], vE);
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) vpt[i][j] = K.require_vertex(FlagPoint::closed(i, j));
}

// ---------------------------------------------------------------------------
// schedules

namespace {

void fold_points(const GlobalContext& c, VertexMap& m,
                 const std::function<bool(const FlagPoint&)>& pred, int target)
{
  for (int v = 0; v < c.K.n_vertices(); ++v) {
    const FlagPoint& p = c.K.point(v);
    if (p.kind == FlagPoint::Kind::Closed && pred(p)) m[v] = target;
  }
}

void fold_lines(const GlobalContext& c, VertexMap& m,
                const std::function<bool(const FlagPoint&)>& pred, int target)
{
  for (int v = 0; v < c.K.n_vertices(); ++v) {
    const FlagPoint& p = c.K.point(v);
    if ((p.kind == FlagPoint::Kind::WLine || p.kind == FlagPoint::Kind::ZLine) && pred(p))
      m[v] = target;
  }
}

void push_nonempty(std::vector<VertexMap>& out, VertexMap m)
{
  if (!m.empty()) out.push_back(std::move(m));
}

} // namespace

std::vector<VertexMap> sched_to_E(const GlobalContext& c)
{
  std::vector<VertexMap> out;
  VertexMap s1, s2;
  fold_points(c, s1, [](const FlagPoint&) { return true; }, c.vE);
  fold_lines(c, s2, [](const FlagPoint&) { return true; }, c.vE);
  push_nonempty(out, std::move(s1));
  push_nonempty(out, std::move(s2));
  return out;
}

std::vector<VertexMap> sched_w_kill(const GlobalContext& c, int i)
{
  std::vector<VertexMap> out;
  VertexMap s1, s2, s3, s4;
  fold_points(c, s1, [&](const FlagPoint& p) { return p.i != i; }, c.vE);
  fold_lines(c, s2, [&](const FlagPoint& p) {
    return !(p.kind == FlagPoint::Kind::WLine && p.i == i);
  }, c.vE);
  s3[c.vE] = c.vw[i];
  fold_points(c, s4, [&](const FlagPoint& p) { return p.i == i; }, c.vw[i]);
  push_nonempty(out, std::move(s1));
  push_nonempty(out, std::move(s2));
  push_nonempty(out, std::move(s3));
  push_nonempty(out, std::move(s4));
  return out;
}

std::vector<VertexMap> sched_z_kill(const GlobalContext& c, int j)
{
  std::vector<VertexMap> out;
  VertexMap s1, s2, s3, s4;
  fold_points(c, s1, [&](const FlagPoint& p) { return p.j != j; }, c.vE);
  fold_lines(c, s2, [&](const FlagPoint& p) {
    return !(p.kind == FlagPoint::Kind::ZLine && p.j == j);
  }, c.vE);
  s3[c.vE] = c.vz[j];
  fold_points(c, s4, [&](const FlagPoint& p) { return p.j == j; }, c.vz[j]);
  push_nonempty(out, std::move(s1));
  push_nonempty(out, std::move(s2));
  push_nonempty(out, std::move(s3));
  push_nonempty(out, std::move(s4));
  return out;
}

std::vector<VertexMap> sched_offdiag(const GlobalContext& c, int k, int l)
{
  std::vector<VertexMap> out;
  int p0 = c.vpt[k][l];
  if (p0 < 0) throw std::invalid_argument("off-diagonal block needs k != l");
  VertexMap s1, s2, s3, s4, s5;
  fold_points(c, s1, [&](const FlagPoint& p) { return p.i != k && p.j != l; }, c.vE);
  fold_lines(c, s2, [&](const FlagPoint& p) {
    if (p.kind == FlagPoint::Kind::WLine) return p.i != k;
    return p.j != l;
  }, c.vE);
  fold_points(c, s3, [&](const FlagPoint& p) { return p.i == k && p.j != l; }, c.vw[k]);
  fold_points(c, s3, [&](const FlagPoint& p) { return p.j == l && p.i != k; }, c.vz[l]);
  s4[c.vE] = p0;
  s5[c.vw[k]] = p0;
  s5[c.vz[l]] = p0;
  push_nonempty(out, std::move(s1));
  push_nonempty(out, std::move(s2));
  push_nonempty(out, std::move(s3));
  push_nonempty(out, std::move(s4));
  push_nonempty(out, std::move(s5));
  return out;
}

std::vector<VertexMap> sched_diag(const GlobalContext& c, int i)
{
  std::vector<VertexMap> out;
  VertexMap s1, s2, s3;
  fold_points(c, s1, [&](const FlagPoint& p) { return p.i != i && p.j != i; }, c.vE);
  fold_lines(c, s2, [&](const FlagPoint& p) { return p.i != i && p.j != i; }, c.vE);
  fold_points(c, s3, [&](const FlagPoint& p) { return p.i == i; }, c.vw[i]);
  fold_points(c, s3, [&](const FlagPoint& p) { return p.j == i; }, c.vz[i]);
  push_nonempty(out, std::move(s1));
  push_nonempty(out, std::move(s2));
  push_nonempty(out, std::move(s3));
  return out;
}

std::vector<VertexMap> sched_big(const GlobalContext& c, int i, int j)
{
  if (i == j) return sched_diag(c, i);
  std::vector<VertexMap> out;
  VertexMap s1, s2, s3, s4, s5;
  int p0 = c.vpt[i][j];
  fold_points(c, s1, [&](const FlagPoint& p) { return p.i != i && p.j != j; }, c.vE);
  fold_lines(c, s2, [&](const FlagPoint& p) {
    if (p.kind == FlagPoint::Kind::WLine) return p.i != i;
    return p.j != j;
  }, c.vE);
  fold_points(c, s3, [&](const FlagPoint& p) { return p.i == i && p.j != j; }, c.vw[i]);
  fold_points(c, s3, [&](const FlagPoint& p) { return p.j == j && p.i != i; }, c.vz[j]);
  s4[c.vE] = p0;
  s5[c.vw[i]] = p0;
  s5[c.vz[j]] = p0;
  push_nonempty(out, std::move(s1));
  push_nonempty(out, std::move(s2));
  push_nonempty(out, std::move(s3));
  push_nonempty(out, std::move(s4));
  push_nonempty(out, std::move(s5));
  return out;
}

VertexMap vmap_fold_to_diag(const GlobalContext& c, int i)
{
  VertexMap m;
  for (const auto& st : sched_diag(c, i))
    for (const auto& [v, target] : st) {
      // compose with what is already mapped
      VertexMap::iterator it = m.find(target);
      m[v] = it == m.end() ? target : it->second;
    }
  // resolve chains (point -> line folded later is not possible here, but
  // compose defensively)
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [v, target] : m) {
      auto it = m.find(target);
      if (it != m.end() && it->second != target) {
        target = it->second;
        changed = true;
      }
    }
  }
  return m;
}

VertexMap vmap_fold_to_square(const GlobalContext& c, int i, int j)
{
  VertexMap m;
  for (const auto& st : (i == j) ? sched_diag(c, i) : std::vector<VertexMap>{
                            sched_big(c, i, j)[0], sched_big(c, i, j)[1], sched_big(c, i, j)[2]})
    for (const auto& [v, target] : st) m[v] = target;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [v, target] : m) {
      auto it = m.find(target);
      if (it != m.end() && it->second != target) {
        target = it->second;
        changed = true;
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// expansions, reinterpretations

LocalTW expand_tw(const GlobalContext& c, const GlobalTW& mu, int i, int j,
                  const LocalAssignment& target)
{
  return tw_convert<LocalCoef>(mu, target,
                               [&](const RationalFn& r) { return laurent_expand_at(r, i, j, c.win); });
}

GlobalTW block_component(const GlobalContext& c, const GlobalTW& mu, int i, int j)
{
  (void)c;
  return mu.map_coeffs([i, j](const RationalFn& r) { return r.block(i, j); });
}

LocalTW I_global_at(const GlobalContext& c, const GlobalTW& mu, int i)
{
  const LocalModels& m = c.local;
  LocalTW out(m.Kx, m.Ax);
  auto expand_gv = [&](const GV<RationalFn>& g) {
    GV<BiLaurent> r;
    r.c.reserve(g.c.size());
    for (const auto& x : g.c) r.c.push_back(laurent_expand(x, i, c.win));
    return r;
  };
  auto expand_pol = [&](const Pol1<GV<RationalFn>>& p) {
    Pol1<GV<BiLaurent>> q;
    for (int k = 0; k < static_cast<int>(p.a.size()); ++k) q.add_term(k, expand_gv(p.a[k]));
    return q;
  };
  out.vval[m.vw] = expand_gv(mu.vval[c.vw[i]]);
  out.vval[m.vz] = expand_gv(mu.vval[c.vz[i]]);
  out.vval[m.vE] = expand_gv(mu.vval[c.vE]);
  out.e0[m.ew] = expand_pol(mu.e0[c.eWE[i]]);
  out.e1[m.ew] = expand_pol(mu.e1[c.eWE[i]]);
  out.e0[m.ez] = expand_pol(mu.e0[c.eZE[i]]);
  out.e1[m.ez] = expand_pol(mu.e1[c.eZE[i]]);
  return out;
}

DiscsX I_global(const GlobalContext& c, const GlobalTW& mu)
{
  DiscsX out;
  for (int i = 0; i < c.n(); ++i) out.push_back(I_global_at(c, mu, i));
  return out;
}

GlobalTW s77_f(const GlobalContext& c, int i, const LocalTW& x)
{
  const LocalModels& m = c.local;
  // place the negative-modes form on the diagonal subcomplex as rational
  // functions with poles at (w_i, z_i)
  GlobalTW seed(c.K, c.Aglob);
  auto conv_gv = [&](const GV<BiLaurent>& g) {
    GV<RationalFn> r;
    r.c.reserve(g.c.size());
    for (const auto& p : g.c)
      r.c.push_back(rational_of_principal_part(c.pts, i, i, p.sector(Sector::MM)));
    return r;
  };
  auto conv_pol = [&](const Pol1<GV<BiLaurent>>& p) {
    Pol1<GV<RationalFn>> q;
    for (int k = 0; k < static_cast<int>(p.a.size()); ++k) q.add_term(k, conv_gv(p.a[k]));
    return q;
  };
  seed.vval[c.vE] = conv_gv(x.vval[m.vE]);
  seed.e0[c.eWE[i]] = conv_pol(x.e0[m.ew]);
  seed.e1[c.eWE[i]] = conv_pol(x.e1[m.ew]);
  seed.e0[c.eZE[i]] = conv_pol(x.e0[m.ez]);
  seed.e1[c.eZE[i]] = conv_pol(x.e1[m.ez]);
  return fold_pullback(seed, vmap_fold_to_diag(c, i));
}

GlobalTW P_global(const GlobalContext& c, const DiscsX& omega)
{
  GlobalTW out(c.K, c.Aglob);
  for (int i = 0; i < c.n(); ++i) {
    LocalTW mm = tw_sector(omega[i], sector_bit(Sector::MM));
    mm.A = &c.local.Amm;
    out.add_in(s77_f(c, i, mm));
  }
  return out;
}

LocalTW s77_g(const GlobalContext& c, int i, const GlobalTW& mu)
{
  GlobalTW blk = block_component(c, mu, i, i);
  LocalTW x = I_global_at(c, blk, i);
  x.A = &c.local.Amm;
  return x;
}

GlobalTW h_global(const GlobalContext& c, const GlobalTW& mu)
{
  GlobalTW out(c.K, c.Aglob);
  for (int k = 0; k < c.n(); ++k)
    for (int l = 0; l < c.n(); ++l) {
      GlobalTW blk = block_component(c, mu, k, l);
      if (blk.is_zero()) continue;
      auto sched = (k == l) ? sched_diag(c, k) : sched_offdiag(c, k, l);
      out.add_in(run_fold_schedule(blk, sched).first);
    }
  return out;
}

Discs P_discs(const GlobalContext& c, const DiscsX& omega)
{
  GlobalTW pg = P_global(c, omega);
  Discs out;
  for (int i = 0; i < c.n(); ++i) {
    LocalTW tilde = omega[i];
    tilde.add_in(I_global_at(c, pg, i).scaled(Scalar(-1)));
    out.push_back(gv_sector(tilde.e0[c.local.ew].eval(Scalar(1)), sector_bit(Sector::PP)));
  }
  return out;
}

DiscsX I_discs(const GlobalContext& c, const Discs& x)
{
  DiscsX out;
  for (int i = 0; i < c.n(); ++i) {
    SplitElement s;
    s.plus = x[i];
    s.minus = LocalTW(c.local.Kx, c.local.Amm);
    out.push_back(local_I(c.local, s));
  }
  return out;
}

DiscsX h_discsx(const GlobalContext& c, const DiscsX& omega)
{
  GlobalTW pg = P_global(c, omega);
  DiscsX out;
  for (int i = 0; i < c.n(); ++i) {
    LocalTW tilde = omega[i];
    tilde.add_in(I_global_at(c, pg, i).scaled(Scalar(-1)));
    out.push_back(local_h(c.local, tilde));
  }
  return out;
}

Discs h_offdiag(const GlobalContext& c, const GlobalTW& mu)
{
  Discs out;
  for (int i = 0; i < c.n(); ++i) {
    GV<RationalFn> total;
    for (int k = 0; k < c.n(); ++k)
      for (int l = 0; l < c.n(); ++l) {
        if (k == l || k == i || l == i) continue;
        GlobalTW blk = block_component(c, mu, k, l);
        int e = c.K.require_edge(c.vpt[k][l], c.vE);
        total.add_in(blk.e1[e].integral_from(Scalar(0)).eval(Scalar(1)));
      }
    GV<BiLaurent> expanded;
    expanded.c.reserve(total.c.size());
    for (const auto& r : total.c) expanded.c.push_back(laurent_expand(r, i, c.win));
    if (total.c.empty()) expanded.c.resize(c.L.dim());
    out.push_back(std::move(expanded));
  }
  return out;
}

// ---------------------------------------------------------------------------
// big local models

LocalTW big_constant(const GlobalContext& c, int i, int j, const GV<BiLaurent>& x)
{
  LocalTW out(c.K, c.big(i, j));
  for (int v = 0; v < c.K.n_vertices(); ++v) out.vval[v] = x;
  for (int e = 0; e < c.K.n_edges(); ++e) out.e0[e].add_term(0, x);
  for (int t = 0; t < c.K.n_tris(); ++t) out.t0[t].add_term(0, 0, x);
  return out;
}

GV<BiLaurent> big_f_offdiag(const GlobalContext& c, int i, int j, const LocalTW& w)
{
  return w.vval[c.vpt[i][j]];
}

LocalTW big_f_diag(const GlobalContext& c, int i, const LocalTW& w)
{
  const LocalModels& m = c.local;
  LocalTW out(m.Kx, m.Ax);
  out.vval[m.vw] = w.vval[c.vw[i]];
  out.vval[m.vz] = w.vval[c.vz[i]];
  out.vval[m.vE] = w.vval[c.vE];
  out.e0[m.ew] = w.e0[c.eWE[i]];
  out.e1[m.ew] = w.e1[c.eWE[i]];
  out.e0[m.ez] = w.e0[c.eZE[i]];
  out.e1[m.ez] = w.e1[c.eZE[i]];
  return out;
}

LocalTW big_g_diag(const GlobalContext& c, int i, const LocalTW& x)
{
  const LocalModels& m = c.local;
  LocalTW seed(c.K, c.big(i, i));
  seed.vval[c.vw[i]] = x.vval[m.vw];
  seed.vval[c.vz[i]] = x.vval[m.vz];
  seed.vval[c.vE] = x.vval[m.vE];
  seed.e0[c.eWE[i]] = x.e0[m.ew];
  seed.e1[c.eWE[i]] = x.e1[m.ew];
  seed.e0[c.eZE[i]] = x.e0[m.ez];
  seed.e1[c.eZE[i]] = x.e1[m.ez];
  return fold_pullback(seed, vmap_fold_to_diag(c, i));
}

LocalTW big_h(const GlobalContext& c, int i, int j, const LocalTW& w)
{
  return run_fold_schedule(w, sched_big(c, i, j)).first;
}

// ---------------------------------------------------------------------------
// the strong global retract

BigX retract_I(const GlobalContext& c, const BigSplit& x)
{
  BigX out;
  for (int i = 0; i < c.n(); ++i)
    for (int j = 0; j < c.n(); ++j) {
      LocalTW w = expand_tw(c, x.glob, i, j, c.big(i, j));
      w.add_in(big_constant(c, i, j, x.discs[size_t(i) * c.n() + j]));
      out.push_back(std::move(w));
    }
  return out;
}

BigSplit retract_P(const GlobalContext& c, const BigX& omega)
{
  BigSplit out{GlobalTW(c.K, c.Aglob), {}};
  const int N = c.n();
  // global part: reinterpret the doubly polar parts as rational functions
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const LocalTW& w = omega[size_t(i) * N + j];
      out.glob.add_in(tw_convert<GlobalCoef>(w, c.Aglob, [&](const BiLaurent& p) {
        return rational_of_principal_part(c.pts, i, j, p.sector(Sector::MM));
      }));
    }
  // disc parts: the regular value at E of omega minus the global repaint
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      LocalTW tilde = omega[size_t(i) * N + j];
      tilde.add_in(expand_tw(c, out.glob, i, j, c.big(i, j)).scaled(Scalar(-1)));
      out.discs.push_back(gv_sector(tilde.vval[c.vE], sector_bit(Sector::PP)));
    }
  return out;
}

BigX retract_h(const GlobalContext& c, const BigX& omega)
{
  const int N = c.n();
  // subtract the global repaint, then kill sector by sector
  GlobalTW glob(c.K, c.Aglob);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      glob.add_in(tw_convert<GlobalCoef>(omega[size_t(i) * N + j], c.Aglob,
                                         [&](const BiLaurent& p) {
                                           return rational_of_principal_part(
                                               c.pts, i, j, p.sector(Sector::MM));
                                         }));
  BigX out;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      LocalTW tilde = omega[size_t(i) * N + j];
      tilde.add_in(expand_tw(c, glob, i, j, c.big(i, j)).scaled(Scalar(-1)));
      LocalTW h(c.K, c.big(i, j));
      LocalTW pp = tw_sector(tilde, sector_bit(Sector::PP));
      h.add_in(run_fold_schedule(pp, sched_to_E(c)).first);
      LocalTW mp = tw_sector(tilde, sector_bit(Sector::MP));
      h.add_in(run_fold_schedule(mp, sched_w_kill(c, i)).first);
      LocalTW pm = tw_sector(tilde, sector_bit(Sector::PM));
      h.add_in(run_fold_schedule(pm, sched_z_kill(c, j)).first);
      out.push_back(std::move(h));
    }
  return out;
}

} // namespace rectadel
