#ifndef RECTADEL_ENVELOPE_HPP
#define RECTADEL_ENVELOPE_HPP

#include "rectadel/generators.hpp"
#include "rectadel/linalg.hpp"
#include "rectadel/local_homotopy.hpp"

#include <map>
#include <vector>

namespace rectadel {

/// The three projectors cut out by the local retract: negative modes,
/// complement, Taylor part. They sum to the identity and commute with d.
LocalTW proj_minus(const LocalModels& m, const LocalTW& w);
LocalTW proj_plus(const LocalModels& m, const LocalTW& w);
LocalTW proj_perp(const LocalModels& m, const LocalTW& w);

/// Exact basis of the windowed complement g-perp = im(id - I P), with the
/// matrices of d and h on it. Degrees are 0 or 1 per basis element.
struct PerpBasis {
  std::vector<LocalTW> basis;
  std::vector<int> degree;
  QMatrix d;     // column j = coordinates of d(basis[j])
  QMatrix h;     // column j = coordinates of h(basis[j])
  Window win;
  int s_cap = 0;
};

PerpBasis g_perp_basis(const LocalModels& m, const Window& win, int s_cap);

/// Exact basis of the windowed punctured model (valid elements of both
/// degrees), used for exhaustive sweeps.
std::vector<LocalTW> local_windowed_basis(const LocalModels& m, const Window& win, int s_cap);

/// Element of the free graded-commutative algebra on the complement basis:
/// sorted monomials with Koszul signs, odd generators squaring to zero.
struct SymElement {
  std::map<std::vector<int>, Scalar> terms;

  bool is_zero() const { return terms.empty(); }
  void add_term(std::vector<int> mono, const Scalar& c, const std::vector<int>& degs);
  SymElement& operator+=(const SymElement& o);
  bool operator==(const SymElement& o) const { return terms == o.terms; }
  SymElement scaled(const Scalar& c) const;
};

/// Derivation extension of d restricted to the complement.
SymElement sym_d(const PerpBasis& pb, const SymElement& x);

/// The weighted homotopy: (1/n) times the derivation extension of h on each
/// word of length n. Satisfies [d, h~] = id on Sym^(>= 1) and 0 on Sym^0.
SymElement sym_homotopy(const PerpBasis& pb, const SymElement& x);

// ---------------------------------------------------------------------------
// triangular straightening at desk scale

enum class Block { Minus = 0, Perp = 1, Plus = 2 };

struct PbwLetter {
  Block block;
  int degree; // cohomological degree, 0 or 1
  LocalTW value;
};

struct PbwWord {
  Scalar coef;
  std::vector<PbwLetter> letters;
};

using PbwSum = std::vector<PbwWord>;

/// Split an element into its three block-pure homogeneous letters.
std::vector<PbwLetter> block_split(const LocalModels& m, const LocalTW& w);

enum class RewriteStrategy { Leftmost, Rightmost };

/// Rewrite x y -> (-1)^{|x||y|} y x + [x, y] until every word is ordered
/// minus < perp < plus. Terminating; confluence is checked empirically.
PbwSum pbw_straighten(const LocalModels& m, const PbwSum& words, RewriteStrategy strategy);

bool pbw_is_ordered(const PbwSum& words);

/// Canonical expansion in a fixed monomial basis of the ambient windowed
/// model, for comparing normal forms from different rewrite orders.
std::map<std::vector<int>, Scalar> pbw_canonical(const PbwSum& words, const Window& win,
                                                 int s_cap, const LocalModels& m);

/// d of a word (derivation with Koszul signs), for the d-compatibility test.
PbwSum pbw_d(const LocalModels& m, const PbwSum& words);

// ---------------------------------------------------------------------------
// desk-scale triangular Lie algebra for the exact PBW count

/// A small graded Lie algebra with letters split minus < perp < plus,
/// closed under the bracket; used to compare ordered-monomial counts with
/// the exact rank of the rewriting ideal in low degrees.
struct DeskAlgebra {
  int n = 0;
  std::vector<int> degree;          // 0 or 1 per letter
  std::vector<Block> block;
  std::vector<std::vector<std::vector<Scalar>>> bracket; // [a][b] -> coefficients

  /// Jacobi and antisymmetry with Koszul signs, checked exhaustively.
  bool verify() const;
};

DeskAlgebra desk_triangular_algebra();

/// Number of ordered monomials of the given word length (odd letters
/// strictly increasing, even letters weakly increasing, blocks in order).
long desk_ordered_count(const DeskAlgebra& a, int length);

/// dim T^{<= maxlen}(L) / (super-commutator ideal), by exact rank.
long desk_quotient_dimension(const DeskAlgebra& a, int maxlen);

/// Straighten a word of basis letters to the canonical combination of
/// ordered monomials, rewriting inversions against the total letter order.
/// With a graded basis the normal form is unique, so rewrite strategies can
/// be compared literally.
std::map<std::vector<int>, Scalar> desk_straighten(const DeskAlgebra& a,
                                                   const std::vector<int>& word,
                                                   const Scalar& coef,
                                                   RewriteStrategy strategy);

} // namespace rectadel

#endif
