#include "rectadel/flags.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rectadel {

std::string FlagPoint::str() const
{
  std::ostringstream os;
  switch (kind) {
    case Kind::Closed: os << "pt(" << i << "," << j << ")"; break;
    case Kind::WLine: os << "w-line(" << i << ")"; break;
    case Kind::ZLine: os << "z-line(" << j << ")"; break;
    case Kind::Generic: os << "E"; break;
  }
  return os.str();
}

bool closure_less(const FlagPoint& a, const FlagPoint& b)
{
  if (b.kind == FlagPoint::Kind::Generic) return a.kind != FlagPoint::Kind::Generic;
  if (a.kind != FlagPoint::Kind::Closed) return false;
  if (b.kind == FlagPoint::Kind::WLine) return a.i == b.i;
  if (b.kind == FlagPoint::Kind::ZLine) return a.j == b.j;
  return false;
}

int FlagComplex::n_simplices(int dim) const
{
  switch (dim) {
    case 0: return n_vertices();
    case 1: return n_edges();
    case 2: return n_tris();
    default: return 0;
  }
}

std::optional<int> FlagComplex::find_vertex(const FlagPoint& p) const
{
  for (int v = 0; v < n_vertices(); ++v)
    if (points_[v] == p) return v;
  return std::nullopt;
}

std::optional<int> FlagComplex::find_edge(int v0, int v1) const
{
  auto it = index_.find({v0, v1});
  if (it == index_.end() || it->second.first != 1) return std::nullopt;
  return it->second.second;
}

std::optional<int> FlagComplex::find_tri(int v0, int v1, int v2) const
{
  auto it = index_.find({v0, v1, v2});
  if (it == index_.end() || it->second.first != 2) return std::nullopt;
  return it->second.second;
}

int FlagComplex::require_vertex(const FlagPoint& p) const
{
  auto v = find_vertex(p);
  if (!v) throw std::invalid_argument("vertex not in complex: " + p.str());
  return *v;
}

int FlagComplex::require_edge(int v0, int v1) const
{
  auto e = find_edge(v0, v1);
  if (!e) throw std::invalid_argument("edge not in complex");
  return *e;
}

std::vector<int> FlagComplex::tris_at_vertex(int v) const
{
  std::vector<int> out;
  for (int t = 0; t < n_tris(); ++t)
    if (tris_[t][0] == v || tris_[t][1] == v || tris_[t][2] == v) out.push_back(t);
  return out;
}

std::optional<std::pair<int, int>> FlagComplex::span(std::vector<int> verts) const
{
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  // total order refining the closure order (ids are not ordered a priori)
  auto rank = [&](int v) {
    const FlagPoint& p = points_[v];
    int k = static_cast<int>(p.kind);
    return std::tuple<int, int, int>(k, p.i, p.j);
  };
  std::sort(verts.begin(), verts.end(), [&](int a, int b) { return rank(a) < rank(b); });
  if (verts.size() == 1) return std::make_pair(0, verts[0]);
  auto it = index_.find(verts);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FlagComplex::semisimplicial_identities() const
{
  // del_i del_j = del_{j-1} del_i for i < j, on every 2-simplex
  for (int t = 0; t < n_tris(); ++t)
    for (int j = 1; j <= 2; ++j)
      for (int i = 0; i < j; ++i) {
        int lhs = edge_face(tri_face(t, j), i);
        int rhs = edge_face(tri_face(t, i), j - 1);
        if (lhs != rhs) return false;
      }
  return true;
}

int FlagComplex::add_vertex(const FlagPoint& p)
{
  points_.push_back(p);
  vert_edges_.emplace_back();
  return n_vertices() - 1;
}

int FlagComplex::add_edge(int v0, int v1)
{
  if (!closure_less(points_[v0], points_[v1]))
    throw std::invalid_argument("edge vertices not strictly increasing in closure order");
  edges_.push_back({v0, v1});
  edge_tris_.emplace_back();
  int e = n_edges() - 1;
  vert_edges_[v0].push_back(e);
  vert_edges_[v1].push_back(e);
  index_[{v0, v1}] = {1, e};
  return e;
}

int FlagComplex::add_tri(int v0, int v1, int v2)
{
  if (!closure_less(points_[v0], points_[v1]) || !closure_less(points_[v1], points_[v2]))
    throw std::invalid_argument("triangle vertices not strictly increasing in closure order");
  int f0 = require_edge(v1, v2);
  int f1 = require_edge(v0, v2);
  int f2 = require_edge(v0, v1);
  tris_.push_back({v0, v1, v2});
  tri_faces_.push_back({f0, f1, f2});
  int t = n_tris() - 1;
  edge_tris_[f0].push_back(t);
  edge_tris_[f1].push_back(t);
  edge_tris_[f2].push_back(t);
  index_[{v0, v1, v2}] = {2, t};
  return t;
}

FlagComplex build_pdisc_flags(bool punctured)
{
  FlagComplex K;
  int w = K.add_vertex(FlagPoint::wline(0));
  int z = K.add_vertex(FlagPoint::zline(0));
  int e = K.add_vertex(FlagPoint::generic());
  K.add_edge(w, e);
  K.add_edge(z, e);
  if (!punctured) {
    int p = K.add_vertex(FlagPoint::closed(0, 0));
    K.add_edge(p, w);
    K.add_edge(p, z);
    K.add_edge(p, e);
    K.add_tri(p, w, e);
    K.add_tri(p, z, e);
  }
  return K;
}

FlagComplex build_rect_flags(const MarkedPoints& pts)
{
  const int n = pts.count();
  if (n < 1) throw std::invalid_argument("need at least one marked point");
  make_marked_points(pts.w, pts.z); // revalidate distinctness
  FlagComplex K;
  std::vector<int> wl(n), zl(n);
  for (int i = 0; i < n; ++i) wl[i] = K.add_vertex(FlagPoint::wline(i));
  for (int j = 0; j < n; ++j) zl[j] = K.add_vertex(FlagPoint::zline(j));
  int e = K.add_vertex(FlagPoint::generic());
  for (int i = 0; i < n; ++i) K.add_edge(wl[i], e);
  for (int j = 0; j < n; ++j) K.add_edge(zl[j], e);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int p = K.add_vertex(FlagPoint::closed(i, j));
      K.add_edge(p, wl[i]);
      K.add_edge(p, zl[j]);
      K.add_edge(p, e);
      K.add_tri(p, wl[i], e);
      K.add_tri(p, zl[j], e);
    }
  return K;
}

Subcomplex Subcomplex::full(const FlagComplex& K)
{
  return {std::vector<bool>(K.n_vertices(), true), std::vector<bool>(K.n_edges(), true),
          std::vector<bool>(K.n_tris(), true)};
}

Subcomplex Subcomplex::empty(const FlagComplex& K)
{
  return {std::vector<bool>(K.n_vertices(), false), std::vector<bool>(K.n_edges(), false),
          std::vector<bool>(K.n_tris(), false)};
}

bool Subcomplex::has(int dim, int idx) const
{
  switch (dim) {
    case 0: return verts[idx];
    case 1: return edges[idx];
    case 2: return tris[idx];
    default: return false;
  }
}

bool Subcomplex::face_closed(const FlagComplex& K) const
{
  for (int e = 0; e < K.n_edges(); ++e)
    if (edges[e] && (!verts[K.edge(e)[0]] || !verts[K.edge(e)[1]])) return false;
  for (int t = 0; t < K.n_tris(); ++t)
    if (tris[t] && (!edges[K.tri_face(t, 0)] || !edges[K.tri_face(t, 1)] ||
                    !edges[K.tri_face(t, 2)]))
      return false;
  return true;
}

Subcomplex diagonal_pdisc_subcomplex(const FlagComplex& K, int i)
{
  Subcomplex sub = Subcomplex::empty(K);
  int w = K.require_vertex(FlagPoint::wline(i));
  int z = K.require_vertex(FlagPoint::zline(i));
  int e = K.require_vertex(FlagPoint::generic());
  sub.verts[w] = sub.verts[z] = sub.verts[e] = true;
  sub.edges[K.require_edge(w, e)] = true;
  sub.edges[K.require_edge(z, e)] = true;
  return sub;
}

} // namespace rectadel
