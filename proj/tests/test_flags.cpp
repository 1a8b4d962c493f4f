#include <doctest.h>

#include "rectadel/flags.hpp"
#include "rectadel/labels.hpp"

#include <algorithm>

using namespace rectadel;

namespace {

// independent chain enumeration over the point poset
long count_chains(const std::vector<FlagPoint>& pts, int length)
{
  long count = 0;
  int n = static_cast<int>(pts.size());
  std::vector<int> idx(length);
  // chains are ordered tuples; enumerate all assignments respecting closure
  std::function<void(int)> rec2 = [&](int pos) {
    if (pos == length) {
      ++count;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (pos > 0 && !closure_less(pts[idx[pos - 1]], pts[v])) continue;
      idx[pos] = v;
      rec2(pos + 1);
    }
  };
  rec2(0);
  return count;
}

std::vector<FlagPoint> rect_points(int N)
{
  std::vector<FlagPoint> pts;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) pts.push_back(FlagPoint::closed(i, j));
  for (int i = 0; i < N; ++i) pts.push_back(FlagPoint::wline(i));
  for (int j = 0; j < N; ++j) pts.push_back(FlagPoint::zline(j));
  pts.push_back(FlagPoint::generic());
  return pts;
}

MarkedPointsPtr sample_points(int N)
{
  std::vector<Scalar> w, z;
  for (int i = 0; i < N; ++i) {
    w.push_back(Scalar(i));
    z.push_back(Scalar(2 * i + 1));
  }
  return make_marked_points(w, z);
}

} // namespace

TEST_CASE("polydisc flag counts")
{
  FlagComplex full = build_pdisc_flags(false);
  CHECK(full.n_vertices() == 4);
  CHECK(full.n_edges() == 5);
  CHECK(full.n_tris() == 2);
  CHECK(full.semisimplicial_identities());

  FlagComplex punctured = build_pdisc_flags(true);
  CHECK(punctured.n_vertices() == 3);
  CHECK(punctured.n_edges() == 2);
  CHECK(punctured.n_tris() == 0);
  CHECK(punctured.semisimplicial_identities());
}

TEST_CASE("face of a 2-simplex omits the middle point")
{
  FlagComplex K = build_pdisc_flags(false);
  int p = K.require_vertex(FlagPoint::closed(0, 0));
  int w = K.require_vertex(FlagPoint::wline(0));
  int e = K.require_vertex(FlagPoint::generic());
  int t = *K.find_tri(p, w, e);
  int face = K.tri_face(t, 1); // delete the middle entry
  CHECK(K.edge(face)[0] == p);
  CHECK(K.edge(face)[1] == e);
}

TEST_CASE("rectilinear flag complexes against brute-force chain counts")
{
  for (int N : {1, 2, 3}) {
    FlagComplex K = build_rect_flags(*sample_points(N));
    auto pts = rect_points(N);
    CHECK(K.n_vertices() == count_chains(pts, 1));
    CHECK(K.n_edges() == count_chains(pts, 2));
    CHECK(K.n_tris() == count_chains(pts, 3));
    // closed combinatorial formulas
    CHECK(K.n_vertices() == N * (N - 1) + 2 * N + 1);
    CHECK(K.n_edges() == 3 * N * (N - 1) + 2 * N);
    CHECK(K.n_tris() == 2 * N * (N - 1));
    CHECK(K.semisimplicial_identities());
  }
  // N = 1 has the shape of the punctured polydisc complex
  FlagComplex K1 = build_rect_flags(*sample_points(1));
  CHECK(K1.n_vertices() == 3);
  CHECK(K1.n_edges() == 2);
  CHECK(K1.n_tris() == 0);
}

TEST_CASE("repeated coordinates are rejected")
{
  CHECK_THROWS(build_rect_flags(MarkedPoints{{Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1)}}));
}

TEST_CASE("subcomplexes")
{
  FlagComplex K = build_rect_flags(*sample_points(2));
  Subcomplex sub = diagonal_pdisc_subcomplex(K, 0);
  CHECK(sub.face_closed(K));
  int drops = 0;
  for (int e = 0; e < K.n_edges(); ++e) drops += sub.edges[e] ? 0 : 1;
  CHECK(drops == K.n_edges() - 2);

  // the restriction of the full polydisc complex to the punctured one
  FlagComplex Kd = build_pdisc_flags(false);
  Subcomplex s = Subcomplex::full(Kd);
  int p = Kd.require_vertex(FlagPoint::closed(0, 0));
  s.verts[p] = false;
  for (int e = 0; e < Kd.n_edges(); ++e)
    if (Kd.edge(e)[0] == p || Kd.edge(e)[1] == p) s.edges[e] = false;
  for (int t = 0; t < Kd.n_tris(); ++t) s.tris[t] = false;
  CHECK(s.face_closed(Kd));
  int dv = 0, de = 0, dt = 0;
  for (int v = 0; v < Kd.n_vertices(); ++v) dv += s.verts[v] ? 0 : 1;
  for (int e = 0; e < Kd.n_edges(); ++e) de += s.edges[e] ? 0 : 1;
  for (int t = 0; t < Kd.n_tris(); ++t) dt += s.tris[t] ? 0 : 1;
  CHECK(dv == 1);
  CHECK(de == 3);
  CHECK(dt == 2);
  // dropping the closed point without its edges is not face-closed
  Subcomplex bad = Subcomplex::full(Kd);
  bad.verts[p] = false;
  CHECK(!bad.face_closed(Kd));
}

TEST_CASE("label assignments are functorial")
{
  FlagComplex Kx = build_pdisc_flags(true);
  FlagComplex Kd = build_pdisc_flags(false);
  CHECK(assign_polydisc(Kx).functorial());
  CHECK(assign_polydisc(Kd).functorial());
  CHECK(assign_negative_modes(Kx).functorial());

  auto pts = sample_points(3);
  FlagComplex K = build_rect_flags(*pts);
  CHECK(assign_global(K, pts).functorial());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(assign_big_local(K, i, j).functorial());
}

TEST_CASE("label values on the named exceptions")
{
  FlagComplex Kd = build_pdisc_flags(false);
  LocalAssignment A = assign_polydisc(Kd);
  int p = Kd.require_vertex(FlagPoint::closed(0, 0));
  int w = Kd.require_vertex(FlagPoint::wline(0));
  CHECK(A.vert[p] == LocalLabel::taylor_taylor());
  CHECK(A.vert[w] == LocalLabel::taylor_laurent());

  FlagComplex Kx = build_pdisc_flags(true);
  LocalAssignment Amm = assign_negative_modes(Kx);
  CHECK(Amm.vert[Kx.require_vertex(FlagPoint::wline(0))].zero);

  auto pts = sample_points(2);
  FlagComplex K = build_rect_flags(*pts);
  GlobalAssignment G = assign_global(K, pts);
  int pt01 = K.require_vertex(FlagPoint::closed(0, 1));
  int z1 = K.require_vertex(FlagPoint::zline(1));
  int e01 = K.require_edge(pt01, z1);
  CHECK(G.edge[e01].z_excl == 2u); // pole at z_1 removed in the z factor
  CHECK(G.edge[e01].w_excl == 0u);
  CHECK(G.vert[pt01].w_excl == 1u);
  CHECK(G.vert[pt01].z_excl == 2u);
}
