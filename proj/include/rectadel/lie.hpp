#ifndef RECTADEL_LIE_HPP
#define RECTADEL_LIE_HPP

#include "rectadel/bilaurent.hpp"
#include "rectadel/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rectadel {

/// Finite-dimensional Lie algebra presented by structure constants
/// [e_a, e_b] = sum_c bracket(a,b,c) e_c together with a symmetric invariant
/// nondegenerate bilinear form on the same basis.
class LieStructure {
public:
  LieStructure(int dim, std::vector<Scalar> bracket_constants, std::vector<Scalar> form);

  int dim() const { return dim_; }
  const Scalar& c(int a, int b, int k) const { return c_[(size_t(a) * dim_ + b) * dim_ + k]; }
  const Scalar& form(int a, int b) const { return kappa_[size_t(a) * dim_ + b]; }

  /// Antisymmetry, Jacobi, form symmetry and invariance, nondegeneracy.
  /// Returns a description of the first violated identity, if any.
  std::optional<std::string> verify() const;

  std::vector<Scalar> bracket(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;

private:
  int dim_;
  std::vector<Scalar> c_;     // dim^3
  std::vector<Scalar> kappa_; // dim^2
};

/// sl(2) with basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h,
/// form normalized by kappa(h,h) = 2, kappa(e,f) = 1.
LieStructure builtin_sl2();

/// Element of g tensor Q[w^±1, z^±1]: one Laurent coefficient per basis
/// vector of g.
struct CurrentElement {
  std::vector<BiLaurent> comp;

  explicit CurrentElement(int dim = 0) : comp(dim) {}
  int dim() const { return static_cast<int>(comp.size()); }
  bool is_zero() const;
  CurrentElement& operator+=(const CurrentElement& o);
  CurrentElement& operator-=(const CurrentElement& o);
  friend CurrentElement operator+(CurrentElement a, const CurrentElement& b) { return a += b; }
  friend CurrentElement operator-(CurrentElement a, const CurrentElement& b) { return a -= b; }
  CurrentElement scaled(const Scalar& c) const;
  bool operator==(const CurrentElement& o) const { return comp == o.comp; }
};

CurrentElement current_basis(const LieStructure& L, int a, const BiLaurent& f);

/// [x tensor f, y tensor g] = [x,y] tensor fg, componentwise.
CurrentElement current_bracket(const CurrentElement& x, const CurrentElement& y,
                               const LieStructure& L);

} // namespace rectadel

#endif
