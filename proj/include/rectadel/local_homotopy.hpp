#ifndef RECTADEL_LOCAL_HOMOTOPY_HPP
#define RECTADEL_LOCAL_HOMOTOPY_HPP

#include "rectadel/cochain.hpp"
#include "rectadel/tw.hpp"

#include <memory>

namespace rectadel {

/// The three local models at one marked point: forms on the punctured
/// polydisc complex (the full double-Laurent labels and the negative-modes
/// labels) and on the unpunctured complex. Owns the complexes and label
/// assignments that the form elements point into.
struct LocalModels {
  LieStructure L;
  FlagComplex Kx, Kd;
  LocalAssignment Ax, Amm, Ad;
  int ew = -1, ez = -1;         // edges (w-line, E), (z-line, E) of Kx
  int vw = -1, vz = -1, vE = -1;
  int d_tw = -1, d_tz = -1;     // the two 2-simplices of Kd
  int d_p = -1, d_E = -1;       // closed point and generic point of Kd

  explicit LocalModels(LieStructure lie);
  LocalModels(const LocalModels&) = delete;
  LocalModels& operator=(const LocalModels&) = delete;
};

/// An element of the direct sum g_+ (+) g_-: the Taylor part is a plain
/// current-algebra coefficient vector, the negative part a form on the
/// negative-modes labels.
struct SplitElement {
  GV<BiLaurent> plus; // in g tensor Q[[w,z]] (windowed)
  LocalTW minus;      // on (Kx, Amm)
};

/// I = i_+ (+) i_-: constants together with the canonical embedding.
LocalTW local_I(const LocalModels& m, const SplitElement& x);

/// P(w) = (regular part at s = 1, negative-modes part).
SplitElement local_P(const LocalModels& m, const LocalTW& w);

/// The sector-wise homotopy with d h + h d = id - I P and the side
/// conditions h h = 0, h I = 0, P h = 0.
LocalTW local_h(const LocalModels& m, const LocalTW& w);

/// Retract of the negative-modes model onto its first cohomology,
/// i(a) = a/2 (ds, -ds).
LocalTW h1_i(const LocalModels& m, const GV<BiLaurent>& a);
GV<BiLaurent> h1_p(const LocalModels& m, const LocalTW& w);
LocalTW h1_h(const LocalModels& m, const LocalTW& w);

/// Retract of the unpunctured model onto the Taylor part.
enum class DiscVariant { Vertex, Generic };

LocalTW disc_I(const LocalModels& m, const GV<BiLaurent>& f);
GV<BiLaurent> disc_P(const LocalModels& m, const LocalTW& w, DiscVariant variant);
LocalTW disc_h(const LocalModels& m, const LocalTW& w, DiscVariant variant);

/// Helpers shared with the global models.
Pol1<GV<BiLaurent>> pol1_sector(const Pol1<GV<BiLaurent>>& p, unsigned mask);
GV<BiLaurent> gv_sector(const GV<BiLaurent>& g, unsigned mask);
LocalTW tw_sector(const LocalTW& w, unsigned mask);

/// Fill edge and vertex components from the triangle forms by pullback
/// (every edge of the complex must bound a triangle).
void fill_faces_from_tris(LocalTW& w);

} // namespace rectadel

#endif
