#ifndef RECTADEL_FLAGS_HPP
#define RECTADEL_FLAGS_HPP

#include "rectadel/rational.hpp"
#include "rectadel/ratfn.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rectadel {

/// A point of the rectilinear space: a closed point (w_i, z_j), one of the
/// lines w = w_i or z = z_j (indices into a marked-point list), or the
/// generic point E.
struct FlagPoint {
  enum class Kind { Closed, WLine, ZLine, Generic };
  Kind kind = Kind::Generic;
  int i = -1; // w index for Closed / WLine
  int j = -1; // z index for Closed / ZLine

  static FlagPoint closed(int i, int j) { return {Kind::Closed, i, j}; }
  static FlagPoint wline(int i) { return {Kind::WLine, i, -1}; }
  static FlagPoint zline(int j) { return {Kind::ZLine, -1, j}; }
  static FlagPoint generic() { return {Kind::Generic, -1, -1}; }

  bool operator==(const FlagPoint& o) const = default;
  std::string str() const;
};

/// Strict closure order: a closed point precedes the lines through it, and
/// everything precedes the generic point.
bool closure_less(const FlagPoint& a, const FlagPoint& b);

/// Finite semisimplicial set of rectilinear flags, with simplices in
/// dimensions 0..2 and face index tables. A flag is stored as the strictly
/// increasing tuple of its vertex ids.
class FlagComplex {
public:
  int n_vertices() const { return static_cast<int>(points_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  int n_tris() const { return static_cast<int>(tris_.size()); }
  int n_simplices(int dim) const;

  const FlagPoint& point(int v) const { return points_[v]; }
  const std::array<int, 2>& edge(int e) const { return edges_[e]; }
  const std::array<int, 3>& tri(int t) const { return tris_[t]; }

  /// Face maps: edge_face(e, i) deletes the i-th vertex of the flag.
  int edge_face(int e, int i) const { return i == 0 ? edges_[e][1] : edges_[e][0]; }
  /// Edge id of the i-th face of triangle t.
  int tri_face(int t, int i) const { return tri_faces_[t][i]; }

  std::optional<int> find_vertex(const FlagPoint& p) const;
  std::optional<int> find_edge(int v0, int v1) const;
  std::optional<int> find_tri(int v0, int v1, int v2) const;
  int require_vertex(const FlagPoint& p) const;
  int require_edge(int v0, int v1) const;

  const std::vector<int>& edges_at_vertex(int v) const { return vert_edges_[v]; }
  const std::vector<int>& tris_at_edge(int e) const { return edge_tris_[e]; }
  std::vector<int> tris_at_vertex(int v) const;

  /// Simplex spanned by a vertex set, if present.
  std::optional<std::pair<int, int>> span(std::vector<int> verts) const; // (dim, index)

  /// Exhaustive check of the semisimplicial identities
  /// del_i del_j = del_{j-1} del_i for i < j on every 2-simplex.
  bool semisimplicial_identities() const;

  /// Builder: vertices must be added before the simplices through them.
  int add_vertex(const FlagPoint& p);
  int add_edge(int v0, int v1);
  int add_tri(int v0, int v1, int v2);

private:
  std::vector<FlagPoint> points_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> tris_;
  std::vector<std::array<int, 3>> tri_faces_;
  std::vector<std::vector<int>> vert_edges_;
  std::vector<std::vector<int>> edge_tris_;
  std::map<std::vector<int>, std::pair<int, int>> index_;
};

/// Flags of the formal polydisc at one point: four vertices, five edges and
/// two 2-simplices; the punctured variant drops the closed point, leaving
/// three vertices and two edges.
FlagComplex build_pdisc_flags(bool punctured);

/// Flags of the finite rectilinear configuration of N marked points: the
/// off-diagonal closed points (w_i, z_j) for i != j, all 2N lines, and the
/// generic point; flags are all strictly increasing chains. The punctured
/// polydisc at each diagonal point (w_i, z_i) sits inside as the flags
/// through the lines w = w_i, z = z_i and E.
FlagComplex build_rect_flags(const MarkedPoints& pts);

/// A face-closed collection of simplices of a fixed complex.
struct Subcomplex {
  std::vector<bool> verts, edges, tris;

  static Subcomplex full(const FlagComplex& K);
  static Subcomplex empty(const FlagComplex& K);
  bool has(int dim, int idx) const;
  bool face_closed(const FlagComplex& K) const;
};

/// The punctured-polydisc subcomplex at diagonal point i inside a
/// rectilinear flag complex: vertices w=w_i, z=z_i, E and the two edges
/// joining them to E.
Subcomplex diagonal_pdisc_subcomplex(const FlagComplex& K, int i);

} // namespace rectadel

#endif
