#include "rectadel/ratfn.hpp"

#include <algorithm>
#include <stdexcept>

namespace rectadel {

MarkedPointsPtr make_marked_points(std::vector<Scalar> w, std::vector<Scalar> z)
{
  if (w.size() != z.size() || w.empty())
    throw std::invalid_argument("marked points need equal nonzero counts of w and z values");
  for (size_t a = 0; a < w.size(); ++a)
    for (size_t b = a + 1; b < w.size(); ++b) {
      if (w[a] == w[b]) throw std::invalid_argument("repeated w coordinate among marked points");
      if (z[a] == z[b]) throw std::invalid_argument("repeated z coordinate among marked points");
    }
  return std::make_shared<const MarkedPoints>(MarkedPoints{std::move(w), std::move(z)});
}

RationalFn RationalFn::atom_fn(MarkedPointsPtr pts, Atom at, Scalar c)
{
  RationalFn r(std::move(pts));
  r.add_atom(at, c);
  return r;
}

void RationalFn::add_atom(Atom at, const Scalar& c)
{
  if (c == 0) return;
  if (!pts_ || at.i < 0 || at.j < 0 || at.i >= pts_->count() || at.j >= pts_->count() ||
      at.a < 1 || at.b < 1)
    throw std::invalid_argument("atom index out of range");
  auto [it, inserted] = atoms_.emplace(at, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) atoms_.erase(it);
  }
}

static void require_same_points(const RationalFn& a, const RationalFn& b)
{
  if (a.points() && b.points() && !(*a.points() == *b.points()))
    throw std::invalid_argument("marked-point lists differ");
}

RationalFn& RationalFn::operator+=(const RationalFn& o)
{
  require_same_points(*this, o);
  if (!pts_) pts_ = o.pts_;
  for (const auto& [at, c] : o.atoms_) add_atom(at, c);
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o)
{
  require_same_points(*this, o);
  if (!pts_) pts_ = o.pts_;
  for (const auto& [at, c] : o.atoms_) add_atom(at, -c);
  return *this;
}

RationalFn RationalFn::operator-() const
{
  RationalFn r(pts_);
  for (const auto& [at, c] : atoms_) r.atoms_.emplace(at, -c);
  return r;
}

RationalFn RationalFn::scaled(const Scalar& c) const
{
  RationalFn r(pts_);
  if (c == 0) return r;
  for (const auto& [at, v] : atoms_) r.atoms_.emplace(at, v * c);
  return r;
}

bool RationalFn::operator==(const RationalFn& o) const
{
  require_same_points(*this, o);
  return atoms_ == o.atoms_;
}

bool RationalFn::avoids_poles(std::uint32_t w_excl, std::uint32_t z_excl) const
{
  for (const auto& [at, c] : atoms_)
    if ((w_excl >> at.i & 1u) || (z_excl >> at.j & 1u)) return false;
  return true;
}

RationalFn RationalFn::project_poles(std::uint32_t w_excl, std::uint32_t z_excl) const
{
  RationalFn r(pts_);
  for (const auto& [at, c] : atoms_)
    if (!(w_excl >> at.i & 1u) && !(z_excl >> at.j & 1u)) r.atoms_.emplace(at, c);
  return r;
}

RationalFn RationalFn::block(int i, int j) const
{
  RationalFn r(pts_);
  for (const auto& [at, c] : atoms_)
    if (at.i == i && at.j == j) r.atoms_.emplace(at, c);
  return r;
}

BiLaurent RationalFn::block_local(int i, int j) const
{
  BiLaurent p;
  for (const auto& [at, c] : atoms_)
    if (at.i == i && at.j == j) p.add_term(-at.a, -at.b, c);
  return p;
}

int RationalFn::max_w_order() const
{
  int m = 0;
  for (const auto& [at, c] : atoms_) m = std::max(m, at.a);
  return m;
}

int RationalFn::max_z_order() const
{
  int m = 0;
  for (const auto& [at, c] : atoms_) m = std::max(m, at.b);
  return m;
}

Scalar RationalFn::eval(const Scalar& w, const Scalar& z) const
{
  Scalar total(0);
  for (const auto& [at, c] : atoms_) {
    Scalar dw = w - pts_->w[at.i], dz = z - pts_->z[at.j];
    if (dw == 0 || dz == 0) throw std::invalid_argument("evaluation at a pole");
    Scalar term = c;
    for (int k = 0; k < at.a; ++k) term /= dw;
    for (int k = 0; k < at.b; ++k) term /= dz;
    total += term;
  }
  return total;
}

namespace {

// (u)^-m (v)^-n with u = x - alpha, v = x - beta, alpha != beta, written as a
// combination of pure powers of u and of v:
//   u^-m v^-n = (alpha-beta)^-1 [ u^-m v^-(n-1) - u^-(m-1) v^-n ].
// Returns coefficients on the u side (index 0) and v side (index 1),
// keyed by the power >= 1.
using PowerSplit = std::array<std::map<int, Scalar>, 2>;

void pf_pair(int m, int n, const Scalar& alpha, const Scalar& beta, const Scalar& factor,
             PowerSplit& out)
{
  if (m == 0 && n == 0) throw std::logic_error("pf_pair on trivial powers");
  if (n == 0) {
    out[0][m] += factor;
    return;
  }
  if (m == 0) {
    out[1][n] += factor;
    return;
  }
  Scalar inv = factor / (alpha - beta);
  pf_pair(m, n - 1, alpha, beta, inv, out);
  pf_pair(m - 1, n, alpha, beta, -inv, out);
}

std::map<int, Scalar> cleanup(std::map<int, Scalar> m)
{
  for (auto it = m.begin(); it != m.end();)
    it = (it->second == 0) ? m.erase(it) : std::next(it);
  return m;
}

// (x - c_p)^-a (x - c_q)^-b as map (point index -> power -> coeff).
std::map<int, std::map<int, Scalar>> combine_poles(int p, int a, int q, int b,
                                                   const std::vector<Scalar>& coords)
{
  std::map<int, std::map<int, Scalar>> res;
  if (p == q) {
    res[p][a + b] = 1;
    return res;
  }
  PowerSplit split;
  pf_pair(a, b, coords[p], coords[q], Scalar(1), split);
  res[p] = cleanup(std::move(split[0]));
  res[q] = cleanup(std::move(split[1]));
  return res;
}

} // namespace

RationalFn rational_mul(const RationalFn& r1, const RationalFn& r2)
{
  require_same_points(r1, r2);
  RationalFn out(r1.points() ? r1.points() : r2.points());
  if (r1.is_zero() || r2.is_zero()) return out;
  const auto& pts = *out.points();
  for (const auto& [a1, c1] : r1.atoms())
    for (const auto& [a2, c2] : r2.atoms()) {
      auto wside = combine_poles(a1.i, a1.a, a2.i, a2.a, pts.w);
      auto zside = combine_poles(a1.j, a1.b, a2.j, a2.b, pts.z);
      Scalar c = c1 * c2;
      for (const auto& [iw, wp] : wside)
        for (const auto& [pw, cw] : wp)
          for (const auto& [jz, zp] : zside)
            for (const auto& [pz, cz] : zp) out.add_atom({iw, jz, pw, pz}, c * cw * cz);
    }
  return out;
}

std::vector<std::tuple<int, int, BiLaurent>> partial_fraction_blocks(const RationalFn& r)
{
  std::vector<std::tuple<int, int, BiLaurent>> out;
  if (!r.points()) return out;
  const int n = r.points()->count();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      BiLaurent b = r.block_local(i, j);
      if (!b.is_zero()) out.emplace_back(i, j, std::move(b));
    }
  return out;
}

namespace {

// Coefficients of (u - d)^-a = (-1)^a sum_m binom(a-1+m, a-1) d^(-a-m) u^m,
// m = 0..m_max, for d != 0.
std::vector<Scalar> off_pole_series(int a, const Scalar& d, int m_max)
{
  std::vector<Scalar> out;
  if (m_max < 0) return out;
  Scalar dpow = 1;
  for (int k = 0; k < a; ++k) dpow /= d;
  if (a % 2 != 0) dpow = -dpow;
  Scalar binom = 1; // binom(a-1+m, a-1) at m = 0
  for (int m = 0; m <= m_max; ++m) {
    out.push_back(binom * dpow);
    dpow /= d;
    binom = binom * (a + m) / (m + 1);
  }
  return out;
}

} // namespace

BiLaurent laurent_expand_at(const RationalFn& r, int wi, int zj, const Window& win)
{
  BiLaurent out;
  if (!r.points()) return out;
  const auto& pts = *r.points();
  if (wi < 0 || wi >= pts.count() || zj < 0 || zj >= pts.count())
    throw std::invalid_argument("expansion center out of range");
  for (const auto& [at, c] : r.atoms()) {
    // w factor in powers of w - w_wi
    std::vector<std::pair<int, Scalar>> wterms;
    if (at.i == wi) {
      if (-at.a >= win.w_min) wterms.emplace_back(-at.a, Scalar(1));
    } else {
      auto series = off_pole_series(at.a, pts.w[at.i] - pts.w[wi], win.w_max);
      for (int m = 0; m <= win.w_max && m < static_cast<int>(series.size()); ++m)
        wterms.emplace_back(m, series[m]);
    }
    std::vector<std::pair<int, Scalar>> zterms;
    if (at.j == zj) {
      if (-at.b >= win.z_min) zterms.emplace_back(-at.b, Scalar(1));
    } else {
      auto series = off_pole_series(at.b, pts.z[at.j] - pts.z[zj], win.z_max);
      for (int m = 0; m <= win.z_max && m < static_cast<int>(series.size()); ++m)
        zterms.emplace_back(m, series[m]);
    }
    for (const auto& [ew, cw] : wterms)
      for (const auto& [ez, cz] : zterms) out.add_term(ew, ez, c * cw * cz);
  }
  return out.clipped(win);
}

BiLaurent laurent_expand(const RationalFn& r, int center, const Window& win)
{
  return laurent_expand_at(r, center, center, win);
}

RationalFn rational_of_principal_part(MarkedPointsPtr pts, int i, int j, const BiLaurent& mm)
{
  RationalFn out(std::move(pts));
  for (const auto& [k, c] : mm.terms()) {
    if (k.first >= 0 || k.second >= 0)
      throw std::invalid_argument("principal part must have negative exponents in both variables");
    out.add_atom({i, j, -k.first, -k.second}, c);
  }
  return out;
}

BiLaurent cleared_denominators(const RationalFn& r, int dw, int dz)
{
  if (!r.points()) return {};
  const auto& pts = *r.points();
  if (dw < r.max_w_order() || dz < r.max_z_order())
    throw std::invalid_argument("clearing powers too small");
  auto linear_pow_w = [](const Scalar& c, int p) {
    BiLaurent f = BiLaurent::monomial(1, 0, 1) + BiLaurent::constant(-c);
    BiLaurent acc = BiLaurent::constant(1);
    for (int k = 0; k < p; ++k) acc = acc * f;
    return acc;
  };
  auto linear_pow_z = [](const Scalar& c, int p) {
    BiLaurent f = BiLaurent::monomial(0, 1, 1) + BiLaurent::constant(-c);
    BiLaurent acc = BiLaurent::constant(1);
    for (int k = 0; k < p; ++k) acc = acc * f;
    return acc;
  };
  BiLaurent total;
  const int n = pts.count();
  for (const auto& [at, c] : r.atoms()) {
    BiLaurent term = BiLaurent::constant(c);
    for (int k = 0; k < n; ++k)
      term = term * linear_pow_w(pts.w[k], k == at.i ? dw - at.a : dw);
    for (int k = 0; k < n; ++k)
      term = term * linear_pow_z(pts.z[k], k == at.j ? dz - at.b : dz);
    total += term;
  }
  return total;
}

} // namespace rectadel
