#include "rectadel/labels.hpp"

#include <stdexcept>

namespace rectadel {

namespace {

template <class Label>
Assignment<Label> uniform(const FlagComplex& K, const Label& l)
{
  Assignment<Label> a;
  a.K = &K;
  a.vert.assign(K.n_vertices(), l);
  a.edge.assign(K.n_edges(), l);
  a.tri.assign(K.n_tris(), l);
  return a;
}

} // namespace

LocalAssignment assign_polydisc(const FlagComplex& K)
{
  LocalAssignment a = uniform(K, LocalLabel::full());
  for (int v = 0; v < K.n_vertices(); ++v) {
    switch (K.point(v).kind) {
      case FlagPoint::Kind::Closed: a.vert[v] = LocalLabel::taylor_taylor(); break;
      case FlagPoint::Kind::WLine: a.vert[v] = LocalLabel::taylor_laurent(); break;
      case FlagPoint::Kind::ZLine: a.vert[v] = LocalLabel::laurent_taylor(); break;
      case FlagPoint::Kind::Generic: break;
    }
  }
  for (int e = 0; e < K.n_edges(); ++e) {
    const auto& lo = K.point(K.edge(e)[0]);
    const auto& hi = K.point(K.edge(e)[1]);
    if (lo.kind == FlagPoint::Kind::Closed && hi.kind == FlagPoint::Kind::WLine)
      a.edge[e] = LocalLabel::taylor_laurent();
    if (lo.kind == FlagPoint::Kind::Closed && hi.kind == FlagPoint::Kind::ZLine)
      a.edge[e] = LocalLabel::laurent_taylor();
  }
  return a;
}

LocalAssignment assign_negative_modes(const FlagComplex& K)
{
  if (K.n_tris() != 0)
    throw std::invalid_argument("negative-modes labels live on the punctured complex");
  LocalAssignment a = uniform(K, LocalLabel::mm_only());
  for (int v = 0; v < K.n_vertices(); ++v)
    if (K.point(v).kind != FlagPoint::Kind::Generic) a.vert[v] = LocalLabel::zero_space();
  return a;
}

LocalAssignment assign_big_local(const FlagComplex& K, int i, int j)
{
  LocalAssignment a = uniform(K, LocalLabel::full());
  auto on_wline = [&](const FlagPoint& p) {
    return (p.kind == FlagPoint::Kind::WLine || p.kind == FlagPoint::Kind::Closed) && p.i == i;
  };
  auto on_zline = [&](const FlagPoint& p) {
    return (p.kind == FlagPoint::Kind::ZLine || p.kind == FlagPoint::Kind::Closed) && p.j == j;
  };
  for (int v = 0; v < K.n_vertices(); ++v) {
    bool w = on_wline(K.point(v)), z = on_zline(K.point(v));
    if (w && z)
      a.vert[v] = LocalLabel::taylor_taylor();
    else if (w)
      a.vert[v] = LocalLabel::taylor_laurent();
    else if (z)
      a.vert[v] = LocalLabel::laurent_taylor();
  }
  for (int e = 0; e < K.n_edges(); ++e) {
    const auto& lo = K.point(K.edge(e)[0]);
    const auto& hi = K.point(K.edge(e)[1]);
    if (lo.kind != FlagPoint::Kind::Closed) continue;
    if (hi.kind == FlagPoint::Kind::WLine && hi.i == i) a.edge[e] = LocalLabel::taylor_laurent();
    if (hi.kind == FlagPoint::Kind::ZLine && hi.j == j) a.edge[e] = LocalLabel::laurent_taylor();
  }
  return a;
}

GlobalAssignment assign_global(const FlagComplex& K, const MarkedPointsPtr& pts)
{
  GlobalAssignment a = uniform(K, GlobalLabel::full());
  auto wbit = [](int i) { return std::uint32_t(1) << i; };
  for (int v = 0; v < K.n_vertices(); ++v) {
    const auto& p = K.point(v);
    switch (p.kind) {
      case FlagPoint::Kind::Closed: a.vert[v] = GlobalLabel{wbit(p.i), wbit(p.j)}; break;
      case FlagPoint::Kind::WLine: a.vert[v] = GlobalLabel{wbit(p.i), 0}; break;
      case FlagPoint::Kind::ZLine: a.vert[v] = GlobalLabel{0, wbit(p.j)}; break;
      case FlagPoint::Kind::Generic: break;
    }
  }
  for (int e = 0; e < K.n_edges(); ++e) {
    const auto& lo = K.point(K.edge(e)[0]);
    const auto& hi = K.point(K.edge(e)[1]);
    if (lo.kind != FlagPoint::Kind::Closed) continue;
    if (hi.kind == FlagPoint::Kind::WLine) a.edge[e] = GlobalLabel{wbit(hi.i), 0};
    if (hi.kind == FlagPoint::Kind::ZLine) a.edge[e] = GlobalLabel{0, wbit(hi.j)};
  }
  (void)pts;
  return a;
}

} // namespace rectadel
