#include "rectadel/generators.hpp"

namespace rectadel {

std::uint64_t case_seed(std::uint64_t seed, std::string_view suite, std::uint64_t index)
{
  // FNV-1a over the suite name, mixed with seed and case index
  std::uint64_t h = 1469598103934665603ull;
  for (char c : suite) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  h ^= seed + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= index * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull;
  return h;
}

BiLaurent random_blp(Rng& rng, const GenParams& p, const LocalLabel& label)
{
  BiLaurent out;
  if (label.zero) return out;
  const Window& w = p.win;
  long cells = long(w.w_max - w.w_min + 1) * (w.z_max - w.z_min + 1);
  int terms = std::max(1, static_cast<int>(cells * p.density / 2));
  terms = rng.uniform(0, terms);
  for (int k = 0; k < terms; ++k) {
    int i = rng.uniform(w.w_min, w.w_max);
    int j = rng.uniform(w.z_min, w.z_max);
    if (!(label.mask & sector_bit(sector_of(i, j)))) continue;
    out.add_term(i, j, rng.coeff());
  }
  return out;
}

RationalFn random_grf(Rng& rng, const GenParams& p, const GlobalLabel& label)
{
  RationalFn out(p.pts);
  if (!p.pts) throw std::invalid_argument("random rational function needs marked points");
  int n = p.pts->count();
  int terms = rng.uniform(0, p.grf_terms_max);
  for (int k = 0; k < terms; ++k) {
    Atom at{rng.uniform(0, n - 1), rng.uniform(0, n - 1), rng.uniform(1, p.atom_order_max),
            rng.uniform(1, p.atom_order_max)};
    if ((label.w_excl >> at.i & 1u) || (label.z_excl >> at.j & 1u)) continue;
    out.add_atom(at, rng.coeff());
  }
  return out;
}

} // namespace rectadel
