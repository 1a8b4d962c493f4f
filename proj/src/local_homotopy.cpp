#include "rectadel/local_homotopy.hpp"

#include <stdexcept>

namespace rectadel {

LocalModels::LocalModels(LieStructure lie)
    : L(std::move(lie)), Kx(build_pdisc_flags(true)), Kd(build_pdisc_flags(false)),
      Ax(assign_polydisc(Kx)), Amm(assign_negative_modes(Kx)), Ad(assign_polydisc(Kd))
{
  vw = Kx.require_vertex(FlagPoint::wline(0));
  vz = Kx.require_vertex(FlagPoint::zline(0));
  vE = Kx.require_vertex(FlagPoint::generic());
  ew = Kx.require_edge(vw, vE);
  ez = Kx.require_edge(vz, vE);
  d_p = Kd.require_vertex(FlagPoint::closed(0, 0));
  d_E = Kd.require_vertex(FlagPoint::generic());
  int dw = Kd.require_vertex(FlagPoint::wline(0));
  int dz = Kd.require_vertex(FlagPoint::zline(0));
  d_tw = *Kd.find_tri(d_p, dw, d_E);
  d_tz = *Kd.find_tri(d_p, dz, d_E);
}

GV<BiLaurent> gv_sector(const GV<BiLaurent>& g, unsigned mask)
{
  GV<BiLaurent> r;
  r.c.reserve(g.c.size());
  for (const auto& c : g.c) r.c.push_back(c.sector_mask(mask));
  return r;
}

Pol1<GV<BiLaurent>> pol1_sector(const Pol1<GV<BiLaurent>>& p, unsigned mask)
{
  Pol1<GV<BiLaurent>> r;
  for (int k = 0; k < static_cast<int>(p.a.size()); ++k) r.add_term(k, gv_sector(p.a[k], mask));
  return r;
}

LocalTW tw_sector(const LocalTW& w, unsigned mask)
{
  return w.map_coeffs([mask](const BiLaurent& c) { return c.sector_mask(mask); });
}

LocalTW local_I(const LocalModels& m, const SplitElement& x)
{
  if (x.minus.K != &m.Kx || x.minus.A != &m.Amm)
    throw std::invalid_argument("negative part must live on the negative-modes labels");
  LocalTW out(m.Kx, m.Ax);
  // constant extension of the Taylor part
  for (int v = 0; v < m.Kx.n_vertices(); ++v) out.vval[v] = x.plus;
  Pol1<GV<BiLaurent>> cst;
  cst.add_term(0, x.plus);
  out.e0[m.ew] = cst;
  out.e0[m.ez] = cst;
  // canonical embedding of the negative part
  out.add_in(LocalTW{[&] {
    LocalTW y(m.Kx, m.Ax);
    y.vval = x.minus.vval;
    y.e0 = x.minus.e0;
    y.e1 = x.minus.e1;
    return y;
  }()});
  return out;
}

SplitElement local_P(const LocalModels& m, const LocalTW& w)
{
  SplitElement out;
  out.plus = gv_sector(w.e0[m.ew].eval(Scalar(1)), sector_bit(Sector::PP));
  LocalTW minus(m.Kx, m.Amm);
  unsigned mm = sector_bit(Sector::MM);
  minus.vval[m.vE] = gv_sector(w.vval[m.vE], mm);
  minus.e0[m.ew] = pol1_sector(w.e0[m.ew], mm);
  minus.e0[m.ez] = pol1_sector(w.e0[m.ez], mm);
  minus.e1[m.ew] = pol1_sector(w.e1[m.ew], mm);
  minus.e1[m.ez] = pol1_sector(w.e1[m.ez], mm);
  out.minus = std::move(minus);
  return out;
}

LocalTW local_h(const LocalModels& m, const LocalTW& w)
{
  using P = Pol1<GV<BiLaurent>>;
  LocalTW out(m.Kx, m.Ax);
  const P& F = w.e1[m.ew];
  const P& G = w.e1[m.ez];
  P fw, fz; // resulting 0-forms on the two edges
  auto cst = [](GV<BiLaurent> v) {
    P c;
    c.add_term(0, std::move(v));
    return c;
  };
  {
    unsigned mp = sector_bit(Sector::MP);
    P Fs = pol1_sector(F, mp), Gs = pol1_sector(G, mp);
    P i0 = Fs.integral_from(Scalar(0));
    fw.add_in(i0);
    fz.add_in(cst(i0.eval(Scalar(1))));
    fz.add_in(Gs.integral_from(Scalar(1)));
  }
  {
    unsigned pm = sector_bit(Sector::PM);
    P Fs = pol1_sector(F, pm), Gs = pol1_sector(G, pm);
    P i0 = Gs.integral_from(Scalar(0));
    fz.add_in(i0);
    fw.add_in(cst(i0.eval(Scalar(1))));
    fw.add_in(Fs.integral_from(Scalar(1)));
  }
  {
    unsigned pp = sector_bit(Sector::PP);
    fw.add_in(pol1_sector(F, pp).integral_from(Scalar(1)));
    fz.add_in(pol1_sector(G, pp).integral_from(Scalar(1)));
  }
  out.vval[m.vw] = fw.eval(Scalar(0));
  out.vval[m.vz] = fz.eval(Scalar(0));
  out.vval[m.vE] = fw.eval(Scalar(1));
  out.e0[m.ew] = std::move(fw);
  out.e0[m.ez] = std::move(fz);
  return out;
}

LocalTW h1_i(const LocalModels& m, const GV<BiLaurent>& a)
{
  LocalTW out(m.Kx, m.Amm);
  GV<BiLaurent> half = a.scaled(scalar_of(1, 2));
  out.e1[m.ew].add_term(0, half);
  out.e1[m.ez].add_term(0, half.scaled(Scalar(-1)));
  return out;
}

GV<BiLaurent> h1_p(const LocalModels& m, const LocalTW& w)
{
  Pol1<GV<BiLaurent>> diff = w.e1[m.ew];
  diff.add_in(w.e1[m.ez].scaled(Scalar(-1)));
  return diff.integral_from(Scalar(0)).eval(Scalar(1));
}

LocalTW h1_h(const LocalModels& m, const LocalTW& w)
{
  LocalTW out(m.Kx, m.Amm);
  GV<BiLaurent> p = h1_p(m, w);
  Pol1<GV<BiLaurent>> fw = w.e1[m.ew].integral_from(Scalar(0));
  Pol1<GV<BiLaurent>> fz = w.e1[m.ez].integral_from(Scalar(0));
  fw.add_term(1, p.scaled(scalar_of(-1, 2)));
  fz.add_term(1, p.scaled(scalar_of(1, 2)));
  out.vval[m.vE] = fw.eval(Scalar(1));
  out.e0[m.ew] = std::move(fw);
  out.e0[m.ez] = std::move(fz);
  return out;
}

void fill_faces_from_tris(LocalTW& w)
{
  const FlagComplex& K = *w.K;
  for (int e = 0; e < K.n_edges(); ++e) {
    const auto& ts = K.tris_at_edge(e);
    if (ts.empty()) throw std::logic_error("edge without a triangle");
    int t = ts.front();
    int face = -1;
    for (int i = 0; i < 3; ++i)
      if (K.tri_face(t, i) == e) face = i;
    auto [f, g] = tri_face_pullback(w, t, face);
    w.e0[e] = std::move(f);
    w.e1[e] = std::move(g);
  }
  for (int e = 0; e < K.n_edges(); ++e) {
    w.vval[K.edge(e)[0]] = w.e0[e].eval(Scalar(0));
    w.vval[K.edge(e)[1]] = w.e0[e].eval(Scalar(1));
  }
}

LocalTW disc_I(const LocalModels& m, const GV<BiLaurent>& f)
{
  LocalTW out(m.Kd, m.Ad);
  for (int t = 0; t < m.Kd.n_tris(); ++t) out.t0[t].add_term(0, 0, f);
  fill_faces_from_tris(out);
  return out;
}

GV<BiLaurent> disc_P(const LocalModels& m, const LocalTW& w, DiscVariant variant)
{
  if (variant == DiscVariant::Vertex) return w.vval[m.d_p];
  return gv_sector(w.vval[m.d_E], sector_bit(Sector::PP));
}

LocalTW disc_h(const LocalModels& m, const LocalTW& w, DiscVariant variant)
{
  using G = GV<BiLaurent>;
  LocalTW out(m.Kd, m.Ad);
  for (int t : {m.d_tw, m.d_tz}) {
    // h0 = int_0^s ts + int_0^u tu(0, .), hu = int_0^s tsu
    Pol2<G> h0, hu;
    const Pol2<G>& fs = w.ts[t];
    const Pol2<G>& fu = w.tu[t];
    const Pol2<G>& f2 = w.tsu[t];
    for (int i = 0; i < static_cast<int>(fs.a.size()); ++i)
      for (int j = 0; j < static_cast<int>(fs.a[i].size()); ++j)
        h0.add_term(i + 1, j, v_scaled(fs.a[i][j], Scalar(1) / (i + 1)));
    Pol1<G> edge = fu.eval_s(Scalar(0)); // tu(0, u)
    for (int k = 0; k < static_cast<int>(edge.a.size()); ++k)
      h0.add_term(0, k + 1, v_scaled(edge.a[k], Scalar(1) / (k + 1)));
    for (int i = 0; i < static_cast<int>(f2.a.size()); ++i)
      for (int j = 0; j < static_cast<int>(f2.a[i].size()); ++j)
        hu.add_term(i + 1, j, v_scaled(f2.a[i][j], Scalar(1) / (i + 1)));
    out.t0[t] = std::move(h0);
    out.tu[t] = std::move(hu);
  }
  if (variant == DiscVariant::Generic) {
    // shift by the constant -int_0^1 of the regular part of ts along u = 0
    Pol1<G> diag = w.ts[m.d_tw].eval_u(Scalar(0));
    G shift = pol1_sector(diag, sector_bit(Sector::PP))
                  .integral_from(Scalar(0))
                  .eval(Scalar(1))
                  .scaled(Scalar(-1));
    for (int t : {m.d_tw, m.d_tz}) out.t0[t].add_term(0, 0, shift);
  }
  fill_faces_from_tris(out);
  return out;
}

} // namespace rectadel
