#include "rectadel/pairing.hpp"

#include "rectadel/cochain.hpp"

#include <sstream>

namespace rectadel {

namespace {

// residue of the kappa-contraction of the degree-(0,1) wedge on one edge
Pol1<Scalar> edge_pair_form(const LieStructure& L, const Pol1<GV<BiLaurent>>& x0,
                            const Pol1<GV<BiLaurent>>& x1, const Pol1<GV<BiLaurent>>& y0,
                            const Pol1<GV<BiLaurent>>& y1)
{
  auto contract = [&](const GV<BiLaurent>& a, const GV<BiLaurent>& b) {
    BiLaurent total;
    if (a.c.empty() || b.c.empty()) return Scalar(0);
    for (int p = 0; p < L.dim(); ++p)
      for (int q = 0; q < L.dim(); ++q)
        if (L.form(p, q) != 0) total += (a.c[p] * b.c[q]).scaled(L.form(p, q));
    return total.residue_wz();
  };
  Pol1<Scalar> out;
  auto accumulate = [&](const Pol1<GV<BiLaurent>>& f, const Pol1<GV<BiLaurent>>& g) {
    for (int i = 0; i < static_cast<int>(f.a.size()); ++i)
      for (int j = 0; j < static_cast<int>(g.a.size()); ++j)
        out.add_term(i + j, contract(f.a[i], g.a[j]));
  };
  accumulate(x0, y1);
  accumulate(x1, y0);
  return out;
}

Scalar integrate01(const Pol1<Scalar>& p)
{
  Scalar total(0);
  for (int k = 0; k < static_cast<int>(p.a.size()); ++k) total += p.a[k] / (k + 1);
  return total;
}

} // namespace

PairingValue local_pairing(const LocalModels& m, const LocalTW& x, const LocalTW& y)
{
  if (x.K != &m.Kx || y.K != &m.Kx)
    throw std::invalid_argument("pairing arguments must live on the punctured local complex");
  Scalar vw = integrate01(edge_pair_form(m.L, x.e0[m.ew], x.e1[m.ew], y.e0[m.ew], y.e1[m.ew]));
  Scalar vz = integrate01(edge_pair_form(m.L, x.e0[m.ez], x.e1[m.ez], y.e0[m.ez], y.e1[m.ez]));
  return PairingValue{(vw - vz) / 2};
}

std::optional<std::string> invariance_check(const LocalModels& m, const LocalTW& x,
                                            const LocalTW& y, const LocalTW& z)
{
  // <[x,y], z> + (-1)^{|x||y|} <y, [x,z]> = 0 per degree pair
  for (int dx = 0; dx <= 1; ++dx)
    for (int dy = 0; dy <= 1; ++dy)
      for (int dz = 0; dz <= 1; ++dz) {
        LocalTW xc = x.component(dx), yc = y.component(dy), zc = z.component(dz);
        Scalar lhs = local_pairing(m, tw_bracket(xc, yc, m.L), zc).value;
        Scalar rhs = local_pairing(m, yc, tw_bracket(xc, zc, m.L)).value;
        Scalar total = lhs + ((dx * dy) % 2 ? Scalar(-rhs) : rhs);
        if (total != 0) {
          std::ostringstream os;
          os << "bracket invariance fails on degrees (" << dx << "," << dy << "," << dz << ")";
          return os.str();
        }
      }
  for (int dx = 0; dx <= 1; ++dx)
    for (int dy = 0; dy <= 1; ++dy) {
      LocalTW xc = x.component(dx), yc = y.component(dy);
      Scalar lhs = local_pairing(m, tw_d(xc), yc).value;
      Scalar rhs = local_pairing(m, xc, tw_d(yc)).value;
      Scalar total = lhs + (dx % 2 ? Scalar(-rhs) : rhs);
      if (total != 0) {
        std::ostringstream os;
        os << "differential invariance fails on degrees (" << dx << "," << dy << ")";
        return os.str();
      }
    }
  return std::nullopt;
}

Scalar orientation_fixture(const LocalModels&, bool sabotage_orientation)
{
  // int over the oriented 1-chain of the pair of constant one-forms (ds, -ds)
  Pol1<Scalar> one;
  one.add_term(0, Scalar(1));
  Scalar onw = integrate01(one);
  Scalar onz = integrate01(one.scaled(Scalar(-1)));
  return sabotage_orientation ? Scalar(onw + onz) : Scalar(onw - onz);
}

GramReport gram_cohomology(const LocalModels& m, const Window& win)
{
  // The residue pairs w^i z^j against w^(-i-1) z^(-j-1), so the square
  // Gram block matches the Taylor monomials indexed like the polar ones.
  const int d = m.L.dim();
  std::vector<LocalTW> h0reps, h1reps;
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < -win.w_min; ++i)
      for (int j = 0; j < -win.z_min; ++j) {
        SplitElement x;
        x.plus = GV<BiLaurent>(d);
        x.plus.c[a] = BiLaurent::monomial(i, j, 1);
        x.minus = LocalTW(m.Kx, m.Amm);
        h0reps.push_back(local_I(m, x));
      }
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < -win.w_min; ++i)
      for (int j = 0; j < -win.z_min; ++j) {
        GV<BiLaurent> v(d);
        v.c[a] = BiLaurent::monomial(-1 - i, -1 - j, 1);
        // the unnormalized (ds, -ds) representative, so that a Taylor
        // monomial pairs against its complement with value kappa(a, b)
        LocalTW rep = h1_i(m, v).scaled(Scalar(2));
        rep.A = &m.Ax; // canonical embedding into the punctured model
        h1reps.push_back(std::move(rep));
      }
  GramReport rep;
  rep.square = h0reps.size() == h1reps.size();
  rep.gram = QMatrix(static_cast<int>(h0reps.size()), static_cast<int>(h1reps.size()));
  for (size_t r = 0; r < h0reps.size(); ++r)
    for (size_t c = 0; c < h1reps.size(); ++c)
      rep.gram.at(static_cast<int>(r), static_cast<int>(c)) =
          local_pairing(m, h0reps[r], h1reps[c]).value;
  rep.invertible = rep.square && rep.gram.det() != 0;
  rep.isotropic_blocks_zero = true;
  for (size_t r = 0; r < h0reps.size() && rep.isotropic_blocks_zero; ++r)
    for (size_t c = 0; c < h0reps.size(); ++c)
      if (local_pairing(m, h0reps[r], h0reps[c]).value != 0) {
        rep.isotropic_blocks_zero = false;
        break;
      }
  for (size_t r = 0; r < h1reps.size() && rep.isotropic_blocks_zero; ++r)
    for (size_t c = 0; c < h1reps.size(); ++c)
      if (local_pairing(m, h1reps[r], h1reps[c]).value != 0) {
        rep.isotropic_blocks_zero = false;
        break;
      }
  return rep;
}

PairingValue global_pairing(const GlobalContext& c, const DiscsX& A, const DiscsX& B)
{
  if (A.size() != B.size() || static_cast<int>(A.size()) != c.n())
    throw std::invalid_argument("global pairing arguments have mismatched point counts");
  PairingValue out;
  for (int i = 0; i < c.n(); ++i) out.value += local_pairing(c.local, A[i], B[i]).value;
  return out;
}

namespace {

GenParams local_gen_params(const LocalModels& m, const Window& win)
{
  GenParams p;
  p.win = win;
  p.dim_g = m.L.dim();
  return p;
}

} // namespace

ManinTripleReport manin_triple_report_local(const LocalModels& m, const Window& win,
                                            std::uint64_t seed, int samples)
{
  ManinTripleReport rep;
  GenParams gp = local_gen_params(m, win);

  // (i') the retract identities, plus rank agreement of the two sides
  {
    ConditionReport c{"i': homotopy equivalence onto g+ (+) g-", true, ""};
    for (int k = 0; k < samples && c.pass; ++k) {
      Rng rng(case_seed(seed, "manin-local-i", k));
      LocalTW w = random_tw<LocalCoef>(rng, m.Kx, m.Ax, gp);
      SplitElement pw = local_P(m, w);
      LocalTW ipw = local_I(m, pw);
      LocalTW lhs = tw_d(local_h(m, w)) + local_h(m, tw_d(w));
      LocalTW rhs = w - ipw;
      if (!(lhs == rhs)) {
        c.pass = false;
        c.witness = "retract identity fails on a sampled element";
      }
    }
    auto ranks = tw_cohomology_ranks(m.Kx, m.Ax, win, m.L.dim(), 2);
    long h0 = long(m.L.dim()) * (win.w_max + 1) * (win.z_max + 1);
    long h1 = long(m.L.dim()) * (-win.w_min) * (-win.z_min);
    if (ranks[0] != h0 || ranks[1] != h1 || ranks[2] != 0) {
      c.pass = false;
      c.witness = "cohomology ranks disagree with the split model";
    }
    rep.conditions.push_back(std::move(c));
  }
  // (ii) symmetry and invariance
  {
    ConditionReport c{"ii: graded symmetry and invariance", true, ""};
    for (int k = 0; k < samples && c.pass; ++k) {
      Rng rng(case_seed(seed, "manin-local-ii", k));
      LocalTW x = random_tw<LocalCoef>(rng, m.Kx, m.Ax, gp);
      LocalTW y = random_tw<LocalCoef>(rng, m.Kx, m.Ax, gp);
      LocalTW z = random_tw<LocalCoef>(rng, m.Kx, m.Ax, gp);
      for (int dx = 0; dx <= 1 && c.pass; ++dx)
        for (int dy = 0; dy <= 1 && c.pass; ++dy) {
          Scalar lhs = local_pairing(m, x.component(dx), y.component(dy)).value;
          Scalar rhs = local_pairing(m, y.component(dy), x.component(dx)).value;
          if (lhs != ((dx * dy) % 2 ? Scalar(-rhs) : rhs)) {
            c.pass = false;
            c.witness = "graded symmetry fails";
          }
        }
      if (c.pass) {
        auto issue = invariance_check(m, x, y, z);
        if (issue) {
          c.pass = false;
          c.witness = *issue;
        }
      }
    }
    rep.conditions.push_back(std::move(c));
  }
  // (iii') nondegeneracy of the induced pairing on cohomology
  {
    ConditionReport c{"iii': Gram matrix between H0 and H1 invertible", false, ""};
    GramReport g = gram_cohomology(m, win);
    c.pass = g.square && g.invertible;
    if (!c.pass) c.witness = "Gram matrix is not square or not invertible";
    rep.conditions.push_back(std::move(c));
  }
  // (iv') isotropy of both sides
  {
    ConditionReport c{"iv': H(g+) and H(g-) isotropic", false, ""};
    GramReport g = gram_cohomology(m, win);
    c.pass = g.isotropic_blocks_zero;
    if (!c.pass) c.witness = "a diagonal Gram block is nonzero";
    rep.conditions.push_back(std::move(c));
  }
  return rep;
}

ManinTripleReport manin_triple_report_global(const GlobalContext& c, std::uint64_t seed,
                                             int samples)
{
  ManinTripleReport rep;
  GenParams gp;
  gp.win = c.win;
  gp.dim_g = c.L.dim();
  gp.pts = c.pts;
  const int N = c.n();

  auto random_discsx = [&](Rng& rng) {
    DiscsX om;
    for (int i = 0; i < N; ++i)
      om.push_back(random_tw<LocalCoef>(rng, c.local.Kx, c.local.Ax, gp));
    return om;
  };

  // (i') the three homotopy identities of the global equivalence
  {
    ConditionReport r{"i': homotopy equivalence onto g_Global (+) discs", true, ""};
    for (int k = 0; k < samples && r.pass; ++k) {
      Rng rng(case_seed(seed, "manin-global-i", k));
      DiscsX om = random_discsx(rng);
      Discs pd = P_discs(c, om);
      DiscsX ipd = I_discs(c, pd);
      DiscsX igp = I_global(c, P_global(c, om));
      DiscsX h = h_discsx(c, om);
      DiscsX dom;
      for (int q = 0; q < N; ++q) dom.push_back(tw_d(om[q]));
      DiscsX hd = h_discsx(c, dom);
      for (int i = 0; i < N && r.pass; ++i) {
        LocalTW l = tw_d(h[i]) + hd[i];
        LocalTW rhs = om[i] - igp[i] - ipd[i];
        if (!(l == rhs)) {
          r.pass = false;
          r.witness = "disc-side homotopy identity fails";
        }
      }
      if (r.pass) {
        Discs pid = P_discs(c, ipd);
        for (int i = 0; i < N; ++i)
          if (!(pid[i] == pd[i])) {
            r.pass = false;
            r.witness = "P I is not the identity on the disc side";
          }
      }
    }
    rep.conditions.push_back(std::move(r));
  }
  // (ii) diagonal pairing symmetry and invariance (inherited pointwise)
  {
    ConditionReport r{"ii: graded symmetry and invariance", true, ""};
    for (int k = 0; k < samples && r.pass; ++k) {
      Rng rng(case_seed(seed, "manin-global-ii", k));
      DiscsX A = random_discsx(rng), B = random_discsx(rng);
      for (int dx = 0; dx <= 1 && r.pass; ++dx)
        for (int dy = 0; dy <= 1 && r.pass; ++dy) {
          DiscsX Ac, Bc;
          for (int i = 0; i < N; ++i) {
            Ac.push_back(A[i].component(dx));
            Bc.push_back(B[i].component(dy));
          }
          Scalar lhs = global_pairing(c, Ac, Bc).value;
          Scalar rhs = global_pairing(c, Bc, Ac).value;
          if (lhs != ((dx * dy) % 2 ? Scalar(-rhs) : rhs)) {
            r.pass = false;
            r.witness = "graded symmetry fails";
          }
        }
      for (int i = 0; i < N && r.pass; ++i) {
        auto issue = invariance_check(c.local, A[i], B[i], A[(i + 1) % N]);
        if (issue) {
          r.pass = false;
          r.witness = *issue;
        }
      }
    }
    rep.conditions.push_back(std::move(r));
  }
  // (iii') and (iv'): blockwise Gram data, one block per marked point
  {
    ConditionReport r{"iii': Gram blocks invertible", true, ""};
    ConditionReport s{"iv': isotropy of both sides", true, ""};
    GramReport g = gram_cohomology(c.local, c.win);
    if (!(g.square && g.invertible)) {
      r.pass = false;
      r.witness = "a per-point Gram block fails";
    }
    if (!g.isotropic_blocks_zero) {
      s.pass = false;
      s.witness = "a diagonal Gram block is nonzero";
    }
    rep.conditions.push_back(std::move(r));
    rep.conditions.push_back(std::move(s));
  }
  return rep;
}

} // namespace rectadel
