#ifndef RECTADEL_BILAURENT_HPP
#define RECTADEL_BILAURENT_HPP

#include "rectadel/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rectadel {

/// Quadrant of the exponent lattice, by sign of the exponent in each
/// variable: P = regular (exponent >= 0), M = polar (exponent < 0).
/// First letter refers to w, second to z.
enum class Sector : unsigned { PP = 0, MP = 1, PM = 2, MM = 3 };

constexpr unsigned sector_bit(Sector s) { return 1u << static_cast<unsigned>(s); }
constexpr unsigned kAllSectors = 0xF;

inline Sector sector_of(int i, int j)
{
  if (i >= 0) return j >= 0 ? Sector::PP : Sector::PM;
  return j >= 0 ? Sector::MP : Sector::MM;
}

/// Finitely supported map (i,j) in Z^2 -> Scalar, i.e. an element of
/// Q[w,z,w^-1,z^-1]. Canonical form: zero coefficients are never stored.
class BiLaurent {
public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, Scalar>;

  BiLaurent() = default;

  static BiLaurent zero() { return {}; }
  static BiLaurent constant(Scalar c) { return monomial(0, 0, std::move(c)); }
  static BiLaurent monomial(int i, int j, Scalar c);

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Scalar coeff(int i, int j) const;
  void set(int i, int j, Scalar c);
  void add_term(int i, int j, const Scalar& c);

  BiLaurent& operator+=(const BiLaurent& o);
  BiLaurent& operator-=(const BiLaurent& o);
  friend BiLaurent operator+(BiLaurent a, const BiLaurent& b) { return a += b; }
  friend BiLaurent operator-(BiLaurent a, const BiLaurent& b) { return a -= b; }
  friend BiLaurent operator*(const BiLaurent& a, const BiLaurent& b);
  BiLaurent operator-() const;
  bool operator==(const BiLaurent& o) const { return terms_ == o.terms_; }

  BiLaurent scaled(const Scalar& c) const;

  /// Restriction of the support to one sector; the four projections are
  /// idempotent, pairwise disjoint and sum to the identity.
  BiLaurent sector(Sector s) const;
  BiLaurent sector_mask(unsigned mask) const;
  bool supported_in(unsigned mask) const;

  /// Coefficient of w^-1 z^-1.
  Scalar residue_wz() const { return coeff(-1, -1); }

  /// Formal partial derivatives.
  BiLaurent d_dw() const;
  BiLaurent d_dz() const;

  /// Drop every term outside the window.
  BiLaurent clipped(const Window& win) const;
  bool inside(const Window& win) const;

  /// Exact evaluation at w = a, z = b (all exponents; a,b nonzero if any
  /// negative exponent occurs).
  Scalar eval(const Scalar& a, const Scalar& b) const;

  std::string str() const;

private:
  Terms terms_;
};

/// Equality of the two truncations restricted to a window.
bool equal_on_window(const BiLaurent& a, const BiLaurent& b, const Window& win);

} // namespace rectadel

#endif
