#ifndef RECTADEL_LABELS_HPP
#define RECTADEL_LABELS_HPP

#include "rectadel/bilaurent.hpp"
#include "rectadel/flags.hpp"
#include "rectadel/ratfn.hpp"

#include <cstdint>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

namespace rectadel {

/// Support constraint on local (Laurent polynomial) coefficients: either the
/// zero space or the span of the monomials in a set of sectors.
struct LocalLabel {
  bool zero = false;
  unsigned mask = kAllSectors;

  static LocalLabel full() { return {false, kAllSectors}; }
  static LocalLabel zero_space() { return {true, 0}; }
  static LocalLabel taylor_taylor() { return {false, sector_bit(Sector::PP)}; }
  static LocalLabel taylor_laurent() // Q[[w]] (x) Q((z))
  {
    return {false, sector_bit(Sector::PP) | sector_bit(Sector::PM)};
  }
  static LocalLabel laurent_taylor() // Q((w)) (x) Q[[z]]
  {
    return {false, sector_bit(Sector::PP) | sector_bit(Sector::MP)};
  }
  static LocalLabel mm_only() { return {false, sector_bit(Sector::MM)}; }

  bool contains(const BiLaurent& p) const { return zero ? p.is_zero() : p.supported_in(mask); }
  BiLaurent project(const BiLaurent& p) const { return zero ? BiLaurent{} : p.sector_mask(mask); }
  bool subset_of(const LocalLabel& o) const { return zero || (!o.zero && (mask & ~o.mask) == 0); }
  bool operator==(const LocalLabel& o) const = default;
};

/// Constraint on global rational coefficients: poles at the excluded marked
/// coordinates are forbidden (bitmask over point indices).
struct GlobalLabel {
  std::uint32_t w_excl = 0, z_excl = 0;
  bool zero = false;

  static GlobalLabel full() { return {}; }
  static GlobalLabel zero_space() { return {0, 0, true}; }
  bool contains(const RationalFn& r) const
  {
    return zero ? r.is_zero() : r.avoids_poles(w_excl, z_excl);
  }
  RationalFn project(const RationalFn& r) const
  {
    return zero ? RationalFn(r.points()) : r.project_poles(w_excl, z_excl);
  }
  bool subset_of(const GlobalLabel& o) const
  {
    return zero || (!o.zero && (o.w_excl & ~w_excl) == 0 && (o.z_excl & ~z_excl) == 0);
  }
  bool operator==(const GlobalLabel& o) const = default;
};

/// An algebra label per simplex of a flag complex; morphisms along faces are
/// the inclusions, so labels must grow along faces.
template <class Label>
struct Assignment {
  const FlagComplex* K = nullptr;
  std::vector<Label> vert, edge, tri;

  const Label& label(int dim, int idx) const
  {
    switch (dim) {
      case 0: return vert[idx];
      case 1: return edge[idx];
      default: return tri[idx];
    }
  }

  /// label(face) subset label(simplex) along every face inclusion.
  bool functorial() const
  {
    for (int e = 0; e < K->n_edges(); ++e)
      for (int i = 0; i < 2; ++i)
        if (!vert[K->edge_face(e, i)].subset_of(edge[e])) return false;
    for (int t = 0; t < K->n_tris(); ++t)
      for (int i = 0; i < 3; ++i)
        if (!edge[K->tri_face(t, i)].subset_of(tri[t])) return false;
    return true;
  }
};

using LocalAssignment = Assignment<LocalLabel>;
using GlobalAssignment = Assignment<GlobalLabel>;

/// Labels of the polydisc algebra: Taylor conditions on the flags through
/// the closed point and the two lines, the full double Laurent algebra
/// elsewhere. Works on both the punctured and unpunctured complexes.
LocalAssignment assign_polydisc(const FlagComplex& K);

/// Labels of the negative-modes algebra on the punctured polydisc complex:
/// zero at the line vertices, w^-1 z^-1 Q[w^-1, z^-1] elsewhere.
LocalAssignment assign_negative_modes(const FlagComplex& K);

/// Labels of the big local model at the marked pair (w_i, z_j) on a
/// rectilinear flag complex: Taylor conditions along the lines w = w_i and
/// z = z_j (and at their intersection point when i != j), Laurent elsewhere.
LocalAssignment assign_big_local(const FlagComplex& K, int i, int j);

/// Labels of the global algebra on a rectilinear flag complex: pole at w_i
/// (resp. z_j) forbidden on the flags meeting the line w = w_i (resp.
/// z = z_j), and both forbidden at each closed point.
GlobalAssignment assign_global(const FlagComplex& K, const MarkedPointsPtr& pts);

/// Restriction of an assignment to a face-closed subcomplex: the labels of
/// the surviving flags, with the zero label elsewhere so that the level-wise
/// projection onto the restricted products is the map that keeps surviving
/// components and kills the rest. Throws when the subcomplex is not closed
/// under faces.
template <class Label>
Assignment<Label> restrict_assignment(const Assignment<Label>& A, const Subcomplex& sub)
{
  if (!sub.face_closed(*A.K))
    throw std::invalid_argument("restriction target is not closed under faces");
  Assignment<Label> r = A;
  for (int v = 0; v < A.K->n_vertices(); ++v)
    if (!sub.verts[v]) r.vert[v] = Label::zero_space();
  for (int e = 0; e < A.K->n_edges(); ++e)
    if (!sub.edges[e]) r.edge[e] = Label::zero_space();
  for (int t = 0; t < A.K->n_tris(); ++t)
    if (!sub.tris[t]) r.tri[t] = Label::zero_space();
  return r;
}

} // namespace rectadel

#endif
