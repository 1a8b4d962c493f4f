#include <doctest.h>

#include "rectadel/generators.hpp"
#include "rectadel/local_homotopy.hpp"

using namespace rectadel;

namespace {

struct Fixture {
  LieStructure L = builtin_sl2();
  LocalModels m{builtin_sl2()};
  GenParams gp;

  Fixture()
  {
    gp.win = square_window(2);
    gp.dim_g = L.dim();
  }
  GV<BiLaurent> gv(int a, BiLaurent p) const
  {
    GV<BiLaurent> g(L.dim());
    g.c[a] = std::move(p);
    return g;
  }
};

} // namespace

TEST_CASE("embedding and projection")
{
  Fixture f;
  Rng rng(case_seed(21, "localIP", 0));

  // constants embed as constants on both edges
  SplitElement s;
  s.plus = f.gv(0, BiLaurent::constant(1));
  s.minus = LocalTW(f.m.Kx, f.m.Amm);
  LocalTW c = local_I(f.m, s);
  CHECK(c.e0[f.m.ew].degree() == 0);
  CHECK(c.e0[f.m.ew].coeff(0) == s.plus);
  CHECK(c.e0[f.m.ez].coeff(0) == s.plus);

  // negative-modes one-forms embed unchanged
  GV<BiLaurent> a = f.gv(1, BiLaurent::monomial(-1, -1, 1));
  LocalTW mm = h1_i(f.m, a);
  SplitElement s2;
  s2.plus = GV<BiLaurent>(f.L.dim());
  s2.minus = mm;
  LocalTW emb = local_I(f.m, s2);
  CHECK(emb.e1[f.m.ew].equals(mm.e1[f.m.ew]));
  CHECK(emb.e1[f.m.ez].equals(mm.e1[f.m.ez]));

  // P on a constant with regular support picks the Taylor part
  SplitElement back = local_P(f.m, c);
  CHECK(back.plus == s.plus);
  CHECK(back.minus.is_zero());

  // P of a mixed-sector linear pair is zero on both sides
  LocalTW mixed(f.m.Kx, f.m.Ax);
  BiLaurent wzinv = BiLaurent::monomial(1, -1, 1);
  mixed.e0[f.m.ew].add_term(1, f.gv(0, wzinv));
  mixed.e0[f.m.ez].add_term(1, f.gv(0, wzinv));
  mixed.vval[f.m.vE] = f.gv(0, wzinv);
  REQUIRE(tw_valid(mixed));
  SplitElement p = local_P(f.m, mixed);
  CHECK(p.plus.is_zero());
  CHECK(p.minus.is_zero());

  // I is injective on the windowed span: P recovers every component
  for (int k = 0; k < 20; ++k) {
    SplitElement x;
    x.plus = random_gv<LocalCoef>(rng, f.gp, LocalLabel::taylor_taylor());
    x.minus = random_tw<LocalCoef>(rng, f.m.Kx, f.m.Amm, f.gp);
    SplitElement y = local_P(f.m, local_I(f.m, x));
    CHECK(y.plus == x.plus);
    CHECK(y.minus == x.minus);
  }
}

TEST_CASE("sector-wise homotopy formulas")
{
  Fixture f;
  // h(a w^-1 (ds, 0)) = a w^-1 (sigma, 1)
  LocalTW omega(f.m.Kx, f.m.Ax);
  GV<BiLaurent> awinv = f.gv(0, BiLaurent::monomial(-1, 0, 1));
  omega.e1[f.m.ew].add_term(0, awinv);
  LocalTW h = local_h(f.m, omega);
  CHECK(h.e0[f.m.ew].coeff(0).is_zero());
  CHECK(h.e0[f.m.ew].coeff(1) == awinv);
  CHECK(h.e0[f.m.ez].degree() == 0);
  CHECK(h.e0[f.m.ez].coeff(0) == awinv);
  LocalTW dh = tw_d(h);
  CHECK(dh == omega); // [d,h] = id on this closed mixed-sector form

  // constants are annihilated and reproduced by I P
  SplitElement s;
  s.plus = f.gv(2, BiLaurent::constant(5));
  s.minus = LocalTW(f.m.Kx, f.m.Amm);
  LocalTW c = local_I(f.m, s);
  CHECK(local_h(f.m, c).is_zero());
  LocalTW residual = c - local_I(f.m, local_P(f.m, c));
  CHECK(residual.is_zero());

  // doubly polar one-forms are fixed points of I P, so h kills them
  GV<BiLaurent> a = f.gv(0, BiLaurent::monomial(-1, -1, 1));
  LocalTW mm = h1_i(f.m, a);
  mm.A = &f.m.Ax;
  CHECK(local_h(f.m, mm).is_zero());
}

TEST_CASE("the local retract and its side conditions")
{
  Fixture f;
  Rng rng(case_seed(21, "localretract", 1));
  for (int k = 0; k < 50; ++k) {
    LocalTW w = random_tw<LocalCoef>(rng, f.m.Kx, f.m.Ax, f.gp);
    REQUIRE(tw_valid(w));
    LocalTW ipw = local_I(f.m, local_P(f.m, w));
    LocalTW lhs = tw_d(local_h(f.m, w)) + local_h(f.m, tw_d(w));
    CHECK(lhs == w - ipw);
    CHECK(local_h(f.m, local_h(f.m, w)).is_zero());
    CHECK(local_h(f.m, ipw).is_zero());
    SplitElement ph = local_P(f.m, local_h(f.m, w));
    CHECK(ph.plus.is_zero());
    CHECK(ph.minus.is_zero());
  }
}

TEST_CASE("negative-modes retract")
{
  Fixture f;
  Rng rng(case_seed(21, "h1", 2));
  // p(i(s^-1 a)) = s^-1 a
  GV<BiLaurent> a = f.gv(1, BiLaurent::monomial(-1, -1, 1) + BiLaurent::monomial(-2, -1, 3));
  CHECK(h1_p(f.m, h1_i(f.m, a)) == a);
  // h i = 0: the two correction terms cancel the integrals
  CHECK(h1_h(f.m, h1_i(f.m, a)).is_zero());
  // [d,h] = id - i p on random negative-modes elements
  for (int k = 0; k < 50; ++k) {
    LocalTW g = random_tw<LocalCoef>(rng, f.m.Kx, f.m.Amm, f.gp);
    REQUIRE(tw_valid(g));
    LocalTW lhs = tw_d(h1_h(f.m, g)) + h1_h(f.m, tw_d(g));
    LocalTW rhs = g - h1_i(f.m, h1_p(f.m, g));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("unpunctured disc retract, both projections")
{
  Fixture f;
  Rng rng(case_seed(21, "disc", 3));

  // constants: P returns them, h kills them
  GV<BiLaurent> cst = f.gv(0, BiLaurent::monomial(1, 0, 2));
  LocalTW c = disc_I(f.m, cst);
  CHECK(disc_P(f.m, c, DiscVariant::Vertex) == cst);
  CHECK(disc_P(f.m, c, DiscVariant::Generic) == cst);
  CHECK(disc_h(f.m, c, DiscVariant::Vertex).is_zero());

  // the polar constant one-form: h integrates to w^-1 s on each triangle
  LocalTW phi(f.m.Kd, f.m.Ad);
  GV<BiLaurent> winv = f.gv(0, BiLaurent::monomial(-1, 0, 1));
  phi.ts[f.m.d_tw].add_term(0, 0, winv);
  phi.ts[f.m.d_tz].add_term(0, 0, winv);
  fill_faces_from_tris(phi);
  phi = phi.component(1);
  REQUIRE(tw_valid(phi));
  LocalTW h = disc_h(f.m, phi, DiscVariant::Vertex);
  CHECK(h.t0[f.m.d_tw].coeff(1, 0) == winv);
  LocalTW lhs = tw_d(h) + disc_h(f.m, tw_d(phi), DiscVariant::Vertex);
  CHECK(lhs == phi); // degree-one input, P contributes nothing

  for (int k = 0; k < 50; ++k) {
    LocalTW w = random_tw<LocalCoef>(rng, f.m.Kd, f.m.Ad, f.gp);
    for (DiscVariant variant : {DiscVariant::Vertex, DiscVariant::Generic}) {
      GV<BiLaurent> x = random_gv<LocalCoef>(rng, f.gp, LocalLabel::taylor_taylor());
      CHECK(disc_P(f.m, disc_I(f.m, x), variant) == x);
      LocalTW hw = disc_h(f.m, w, variant);
      CHECK(tw_valid(hw));
      LocalTW l = tw_d(hw) + disc_h(f.m, tw_d(w), variant);
      LocalTW r = w - disc_I(f.m, disc_P(f.m, w, variant));
      CHECK(l == r);
    }
  }
}
