#ifndef RECTADEL_RATFN_HPP
#define RECTADEL_RATFN_HPP

#include "rectadel/bilaurent.hpp"
#include "rectadel/rational.hpp"

#include <map>
#include <memory>
#include <tuple>
#include <vector>

namespace rectadel {

/// The marked-point configuration (w_1..w_N, z_1..z_N), pairwise distinct in
/// each coordinate.
struct MarkedPoints {
  std::vector<Scalar> w, z;

  int count() const { return static_cast<int>(w.size()); }
  bool operator==(const MarkedPoints& o) const { return w == o.w && z == o.z; }
};

using MarkedPointsPtr = std::shared_ptr<const MarkedPoints>;

MarkedPointsPtr make_marked_points(std::vector<Scalar> w, std::vector<Scalar> z);

/// Pure polar atom index: coefficient of (w - w_i)^-a (z - z_j)^-b with
/// a, b >= 1 and 0-based point indices i, j.
struct Atom {
  int i, j, a, b;
  auto operator<=>(const Atom&) const = default;
};

/// Finite sum of pure-polar atoms: an exact model of the rational functions
/// in w and z that vanish at infinity in each variable and have poles at
/// most at the marked coordinates.
class RationalFn {
public:
  RationalFn() = default;
  explicit RationalFn(MarkedPointsPtr pts) : pts_(std::move(pts)) {}

  static RationalFn atom_fn(MarkedPointsPtr pts, Atom at, Scalar c);

  const MarkedPointsPtr& points() const { return pts_; }
  const std::map<Atom, Scalar>& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }

  void add_atom(Atom at, const Scalar& c);

  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  RationalFn operator-() const;
  RationalFn scaled(const Scalar& c) const;
  bool operator==(const RationalFn& o) const;

  /// True when no atom has a w-pole at an index of w_excl nor a z-pole at an
  /// index of z_excl (bitmask over point indices).
  bool avoids_poles(std::uint32_t w_excl, std::uint32_t z_excl) const;
  RationalFn project_poles(std::uint32_t w_excl, std::uint32_t z_excl) const;

  /// The block with poles exactly at (w_i, z_j).
  RationalFn block(int i, int j) const;
  /// Same block written as a Laurent polynomial in the local coordinates
  /// (w - w_i, z - z_j); supported on strictly negative exponents.
  BiLaurent block_local(int i, int j) const;

  int max_w_order() const;
  int max_z_order() const;

  Scalar eval(const Scalar& w, const Scalar& z) const;

private:
  MarkedPointsPtr pts_;
  std::map<Atom, Scalar> atoms_;
};

/// Exact product, re-expressed in pure-polar atoms via recursive partial
/// fractions in each variable. Requires matching marked-point lists.
RationalFn rational_mul(const RationalFn& r1, const RationalFn& r2);

/// Atoms grouped by pole pair; the pieces sum back to r.
std::vector<std::tuple<int, int, BiLaurent>> partial_fraction_blocks(const RationalFn& r);

/// Laurent expansion at the marked point (w_i, z_i) in local coordinates
/// (w - w_i, z - z_i). Every coefficient inside the window is exact;
/// exponents above the window are absent.
BiLaurent laurent_expand(const RationalFn& r, int center, const Window& win);

/// Same expansion at an arbitrary marked pair (w_i, z_j).
BiLaurent laurent_expand_at(const RationalFn& r, int wi, int zj, const Window& win);

/// Reinterpret a Laurent polynomial supported on negative exponents in the
/// local coordinates at (w_i, z_j) as a rational function.
RationalFn rational_of_principal_part(MarkedPointsPtr pts, int i, int j, const BiLaurent& mm);

/// Test oracle helper: r times prod_i (w-w_i)^dw prod_j (z-z_j)^dz as an
/// honest polynomial, computed by direct polynomial multiplication.
BiLaurent cleared_denominators(const RationalFn& r, int dw, int dz);

} // namespace rectadel

#endif
