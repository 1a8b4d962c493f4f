#ifndef RECTADEL_GLOBAL_HOMOTOPY_HPP
#define RECTADEL_GLOBAL_HOMOTOPY_HPP

#include "rectadel/local_homotopy.hpp"
#include "rectadel/tw.hpp"

#include <vector>

namespace rectadel {

/// Everything needed for the multi-point models: the rectilinear flag
/// complex with its global labels, one big local label family per marked
/// pair, and a shared copy of the single-point local models (all punctured
/// polydisc complexes have the same shape).
struct GlobalContext {
  LieStructure L;
  MarkedPointsPtr pts;
  Window win;
  FlagComplex K;
  GlobalAssignment Aglob;
  std::vector<LocalAssignment> Abig; // index i * N + j
  LocalModels local;
  int vE = -1;
  std::vector<int> vw, vz;           // line vertex ids
  std::vector<std::vector<int>> vpt; // closed point ids, -1 on the diagonal
  std::vector<int> eWE, eZE;         // edges (w-line i, E), (z-line i, E)

  GlobalContext(LieStructure lie, MarkedPointsPtr points, Window window);
  GlobalContext(const GlobalContext&) = delete;
  GlobalContext& operator=(const GlobalContext&) = delete;

  int n() const { return pts->count(); }
  const LocalAssignment& big(int i, int j) const { return Abig[size_t(i) * n() + j]; }
};

/// Elements of the multi-point models.
using DiscsX = std::vector<LocalTW>;          // one per marked point, on (Kx, Ax)
using Discs = std::vector<GV<BiLaurent>>;     // Taylor parts, one per point
using BigX = std::vector<LocalTW>;            // N*N big models on (K, Abig[i][j])
using Big = std::vector<GV<BiLaurent>>;       // N*N Taylor parts

// fold schedules (instruction tables generated from the complex)
std::vector<VertexMap> sched_to_E(const GlobalContext& c);
std::vector<VertexMap> sched_w_kill(const GlobalContext& c, int i);
std::vector<VertexMap> sched_z_kill(const GlobalContext& c, int j);
std::vector<VertexMap> sched_offdiag(const GlobalContext& c, int k, int l);
std::vector<VertexMap> sched_diag(const GlobalContext& c, int i);
std::vector<VertexMap> sched_big(const GlobalContext& c, int i, int j);

/// The composite fold onto the punctured polydisc subcomplex at the
/// diagonal point i (the painting used by the global projection).
VertexMap vmap_fold_to_diag(const GlobalContext& c, int i);
VertexMap vmap_fold_to_square(const GlobalContext& c, int i, int j);

// expansions and reinterpretations
LocalTW expand_tw(const GlobalContext& c, const GlobalTW& mu, int i, int j,
                  const LocalAssignment& target);
GlobalTW block_component(const GlobalContext& c, const GlobalTW& mu, int i, int j);

/// Laurent expansion at the i-th diagonal point, restricted to the
/// punctured polydisc subcomplex; a dg Lie algebra map up to the window.
LocalTW I_global_at(const GlobalContext& c, const GlobalTW& mu, int i);
DiscsX I_global(const GlobalContext& c, const GlobalTW& mu);

/// Reinterpret the negative-modes parts as rational functions and paint
/// them over the whole configuration; a cochain map.
GlobalTW P_global(const GlobalContext& c, const DiscsX& omega);

/// Block-wise homotopy with d h + h d = id - P_global I_global.
GlobalTW h_global(const GlobalContext& c, const GlobalTW& mu);

Discs P_discs(const GlobalContext& c, const DiscsX& omega);
DiscsX I_discs(const GlobalContext& c, const Discs& x);

/// d h + h d = id - I_global P_global - I_discs P_discs.
DiscsX h_discsx(const GlobalContext& c, const DiscsX& omega);

/// The off-diagonal correction h(mu)_i: expansion at i of the edge
/// integrals of the blocks at (w_k, z_l) with k, l, i pairwise distinct.
/// Satisfies h(d mu) = P_discs(I_global(mu)) and d h = 0.
Discs h_offdiag(const GlobalContext& c, const GlobalTW& mu);

/// Composite retract of the global model onto the first cohomology of the
/// punctured discs: f places a negative-modes form globally, g reads off
/// the diagonal block.
GlobalTW s77_f(const GlobalContext& c, int i, const LocalTW& x_on_mm);
LocalTW s77_g(const GlobalContext& c, int i, const GlobalTW& mu);

// big local models
LocalTW big_constant(const GlobalContext& c, int i, int j, const GV<BiLaurent>& x);
GV<BiLaurent> big_f_offdiag(const GlobalContext& c, int i, int j, const LocalTW& w);
LocalTW big_f_diag(const GlobalContext& c, int i, const LocalTW& w);  // to (Kx, Ax)
LocalTW big_g_diag(const GlobalContext& c, int i, const LocalTW& x);  // from (Kx, Ax)
LocalTW big_h(const GlobalContext& c, int i, int j, const LocalTW& w);

/// The strong global retract: g_Global (+) all Taylor parts against the
/// product of big local models.
struct BigSplit {
  GlobalTW glob;
  Big discs;
};

BigX retract_I(const GlobalContext& c, const BigSplit& x);
BigSplit retract_P(const GlobalContext& c, const BigX& omega);
BigX retract_h(const GlobalContext& c, const BigX& omega);

} // namespace rectadel

#endif
