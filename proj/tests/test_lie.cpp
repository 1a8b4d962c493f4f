#include <doctest.h>

#include "rectadel/generators.hpp"
#include "rectadel/lie.hpp"

using namespace rectadel;

TEST_CASE("sl2 structure")
{
  LieStructure L = builtin_sl2();
  CHECK(!L.verify().has_value());
  // [e,f] = h
  std::vector<Scalar> e{Scalar(1), Scalar(0), Scalar(0)};
  std::vector<Scalar> h{Scalar(0), Scalar(1), Scalar(0)};
  std::vector<Scalar> f{Scalar(0), Scalar(0), Scalar(1)};
  CHECK(L.bracket(e, f) == h);
  // kappa(e,e) = 0, forced by invariance
  CHECK(L.form(0, 0) == 0);
  CHECK(L.form(0, 2) == 1);
  CHECK(L.form(1, 1) == 2);
}

TEST_CASE("verification rejects corrupted tables")
{
  std::vector<Scalar> c(27, Scalar(0));
  auto set = [&](int a, int b, int k, long v) {
    c[(size_t(a) * 3 + b) * 3 + k] = Scalar(v);
    c[(size_t(b) * 3 + a) * 3 + k] = Scalar(-v);
  };
  set(1, 0, 0, 2);
  set(1, 2, 2, -2);
  set(0, 2, 1, 1);
  std::vector<Scalar> kappa(9, Scalar(0));
  kappa[2] = kappa[6] = Scalar(1);
  kappa[4] = Scalar(2);

  SUBCASE("the honest table passes")
  {
    CHECK(!LieStructure(3, c, kappa).verify().has_value());
  }
  SUBCASE("broken antisymmetry is reported")
  {
    auto bad = c;
    bad[(0 * 3 + 1) * 3 + 0] = Scalar(5);
    CHECK(LieStructure(3, bad, kappa).verify().has_value());
  }
  SUBCASE("broken Jacobi is reported")
  {
    auto bad = c;
    // scale a single relation: [e,f] = 3h breaks the Jacobi/invariance web
    bad[(0 * 3 + 2) * 3 + 1] = Scalar(3);
    bad[(2 * 3 + 0) * 3 + 1] = Scalar(-3);
    CHECK(LieStructure(3, bad, kappa).verify().has_value());
  }
  SUBCASE("degenerate form is reported")
  {
    std::vector<Scalar> flat(9, Scalar(0));
    CHECK(LieStructure(3, c, flat).verify().has_value());
  }
}

TEST_CASE("current bracket")
{
  LieStructure L = builtin_sl2();
  BiLaurent w = BiLaurent::monomial(1, 0, 1);
  BiLaurent z = BiLaurent::monomial(0, 1, 1);
  CurrentElement ew = current_basis(L, 0, w);
  CurrentElement fz = current_basis(L, 2, z);
  CurrentElement result = current_bracket(ew, fz, L);
  CHECK(result.comp[1] == w * z); // h tensor wz
  CHECK(result.comp[0].is_zero());
  CHECK(result.comp[2].is_zero());

  // [x,x] = 0 and [e w^-1, e z] = 0
  CHECK(current_bracket(ew, ew, L).is_zero());
  CurrentElement em = current_basis(L, 0, BiLaurent::monomial(-1, 0, 1));
  CurrentElement ez = current_basis(L, 0, z);
  CHECK(current_bracket(em, ez, L).is_zero());
}

TEST_CASE("current Jacobi on random triples")
{
  LieStructure L = builtin_sl2();
  GenParams gp;
  Rng rng(case_seed(3, "current", 0));
  for (int k = 0; k < 50; ++k) {
    CurrentElement x(L.dim()), y(L.dim()), z(L.dim());
    for (int a = 0; a < L.dim(); ++a) {
      x.comp[a] = random_blp(rng, gp, LocalLabel::full());
      y.comp[a] = random_blp(rng, gp, LocalLabel::full());
      z.comp[a] = random_blp(rng, gp, LocalLabel::full());
    }
    CurrentElement jac = current_bracket(x, current_bracket(y, z, L), L);
    jac += current_bracket(y, current_bracket(z, x, L), L);
    jac += current_bracket(z, current_bracket(x, y, L), L);
    CHECK(jac.is_zero());
    CurrentElement anti = current_bracket(x, y, L) + current_bracket(y, x, L);
    CHECK(anti.is_zero());
  }
}
