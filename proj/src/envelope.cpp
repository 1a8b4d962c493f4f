#include "rectadel/envelope.hpp"

#include <algorithm>
#include <stdexcept>

namespace rectadel {

LocalTW proj_minus(const LocalModels&, const LocalTW& w)
{
  return tw_sector(w, sector_bit(Sector::MM));
}

LocalTW proj_plus(const LocalModels& m, const LocalTW& w)
{
  SplitElement s = local_P(m, w);
  s.minus = LocalTW(m.Kx, m.Amm);
  return local_I(m, s);
}

LocalTW proj_perp(const LocalModels& m, const LocalTW& w)
{
  LocalTW r = w;
  r.add_in(proj_minus(m, w).scaled(Scalar(-1)));
  r.add_in(proj_plus(m, w).scaled(Scalar(-1)));
  return r;
}

namespace {

struct FlatLayout {
  Window win;
  int cap, dimg;
  std::vector<std::pair<int, int>> monos;

  FlatLayout(const Window& w, int c, int d) : win(w), cap(c), dimg(d)
  {
    for (int i = w.w_min; i <= w.w_max; ++i)
      for (int j = w.z_min; j <= w.z_max; ++j) monos.emplace_back(i, j);
  }
  int mono_index(int i, int j) const
  {
    int nz = win.z_max - win.z_min + 1;
    return (i - win.w_min) * nz + (j - win.z_min);
  }
  int dim() const { return 2 * 2 * (cap + 1) * dimg * static_cast<int>(monos.size()); }
  int index(int edge, int part, int k, int a, int i, int j) const
  {
    int idx = mono_index(i, j);
    return (((edge * 2 + part) * (cap + 1) + k) * dimg + a) * static_cast<int>(monos.size()) +
           idx;
  }
};

std::vector<Scalar> flatten(const LocalModels& m, const FlatLayout& L, const LocalTW& w)
{
  std::vector<Scalar> out(L.dim(), Scalar(0));
  auto put = [&](int edge, int part, const Pol1<GV<BiLaurent>>& p) {
    for (int k = 0; k < static_cast<int>(p.a.size()); ++k) {
      const auto& g = p.a[k];
      for (int a = 0; a < static_cast<int>(g.c.size()); ++a)
        for (const auto& [key, c] : g.c[a].terms()) {
          if (k > L.cap || !L.win.contains(key.first, key.second))
            throw std::invalid_argument("element outside the flattening window");
          out[L.index(edge, part, k, a, key.first, key.second)] = c;
        }
    }
  };
  put(0, 0, w.e0[m.ew]);
  put(0, 1, w.e1[m.ew]);
  put(1, 0, w.e0[m.ez]);
  put(1, 1, w.e1[m.ez]);
  return out;
}

void fix_vertex_values(const LocalModels& m, LocalTW& w)
{
  w.vval[m.vw] = w.e0[m.ew].eval(Scalar(0));
  w.vval[m.vz] = w.e0[m.ez].eval(Scalar(0));
  w.vval[m.vE] = w.e0[m.ew].eval(Scalar(1));
}

std::vector<LocalTW> windowed_basis(const LocalModels& m, const Window& win, int cap0, int cap1)
{
  std::vector<LocalTW> out;
  const int d = m.L.dim();
  const int cap = cap0;
  for (int i = win.w_min; i <= win.w_max; ++i)
    for (int j = win.z_min; j <= win.z_max; ++j) {
      BiLaurent mono = BiLaurent::monomial(i, j, 1);
      bool tl = LocalLabel::taylor_laurent().contains(mono);
      bool lt = LocalLabel::laurent_taylor().contains(mono);
      // degree-0 kernel: slots f_0..f_cap, g_0..g_cap
      int nslots = 2 * (cap + 1);
      std::vector<std::vector<Scalar>> rows;
      if (!tl) {
        std::vector<Scalar> r(nslots, Scalar(0));
        r[0] = 1;
        rows.push_back(std::move(r));
      }
      if (!lt) {
        std::vector<Scalar> r(nslots, Scalar(0));
        r[cap + 1] = 1;
        rows.push_back(std::move(r));
      }
      std::vector<Scalar> sum(nslots, Scalar(0));
      for (int k = 0; k <= cap; ++k) {
        sum[k] = 1;
        sum[cap + 1 + k] = -1;
      }
      rows.push_back(std::move(sum));
      QMatrix mat(static_cast<int>(rows.size()), nslots);
      for (int r = 0; r < static_cast<int>(rows.size()); ++r)
        for (int c2 = 0; c2 < nslots; ++c2) mat.at(r, c2) = rows[r][c2];
      for (const auto& vec : mat.kernel_basis())
        for (int a = 0; a < d; ++a) {
          LocalTW w(m.Kx, m.Ax);
          for (int k = 0; k <= cap; ++k) {
            GV<BiLaurent> gf(d), gg(d);
            gf.c[a] = mono.scaled(vec[k]);
            gg.c[a] = mono.scaled(vec[cap + 1 + k]);
            w.e0[m.ew].add_term(k, gf);
            w.e0[m.ez].add_term(k, gg);
          }
          fix_vertex_values(m, w);
          if (!w.is_zero()) out.push_back(std::move(w));
        }
      // degree-1 basis: single slots
      for (int edge = 0; edge < 2; ++edge)
        for (int k = 0; k <= cap1; ++k)
          for (int a = 0; a < d; ++a) {
            LocalTW w(m.Kx, m.Ax);
            GV<BiLaurent> g(d);
            g.c[a] = mono;
            w.e1[edge == 0 ? m.ew : m.ez].add_term(k, g);
            out.push_back(std::move(w));
          }
    }
  return out;
}

} // namespace

std::vector<LocalTW> local_windowed_basis(const LocalModels& m, const Window& win, int s_cap)
{
  return windowed_basis(m, win, s_cap, s_cap);
}

PerpBasis g_perp_basis(const LocalModels& m, const Window& win, int s_cap)
{
  PerpBasis pb;
  pb.win = win;
  pb.s_cap = s_cap;
  // the degree-0 part carries one more power of the edge coordinate than
  // the one-forms, which closes the span under both d and h
  FlatLayout layout(win, s_cap + 1, m.L.dim());

  std::vector<LocalTW> candidates;
  for (const auto& b : windowed_basis(m, win, s_cap + 1, s_cap)) {
    LocalTW p = proj_perp(m, b);
    if (!p.is_zero()) candidates.push_back(std::move(p));
  }
  QMatrix rows(static_cast<int>(candidates.size()), layout.dim());
  std::vector<std::vector<Scalar>> flat;
  flat.reserve(candidates.size());
  for (size_t r = 0; r < candidates.size(); ++r) {
    flat.push_back(flatten(m, layout, candidates[r]));
    for (int c = 0; c < layout.dim(); ++c) rows.at(static_cast<int>(r), c) = flat[r][c];
  }
  std::vector<int> keep = rows.independent_rows();
  for (int r : keep) {
    pb.basis.push_back(candidates[r]);
    int deg = candidates[r].component(1).is_zero() ? 0 : 1;
    // projections of the windowed basis are homogeneous by construction
    pb.degree.push_back(deg);
  }

  // one echelon pass resolves the coordinates of d(basis) and h(basis)
  const int nb = static_cast<int>(pb.basis.size());
  QMatrix aug(layout.dim(), nb + 2 * nb);
  for (int c = 0; c < nb; ++c) {
    auto col = flatten(m, layout, pb.basis[c]);
    for (int r = 0; r < layout.dim(); ++r) aug.at(r, c) = col[r];
  }
  for (int c = 0; c < nb; ++c) {
    auto col = flatten(m, layout, tw_d(pb.basis[c]));
    for (int r = 0; r < layout.dim(); ++r) aug.at(r, nb + c) = col[r];
    auto hcol = flatten(m, layout, local_h(m, pb.basis[c]));
    for (int r = 0; r < layout.dim(); ++r) aug.at(r, 2 * nb + c) = hcol[r];
  }
  // reduce: express the last 2 nb columns in terms of the first nb
  // (row-reduce the transpose system)
  pb.d = QMatrix(nb, nb);
  pb.h = QMatrix(nb, nb);
  {
    // Gaussian elimination on [B | D | H]
    std::vector<std::vector<Scalar>> mrows(layout.dim(),
                                           std::vector<Scalar>(nb + 2 * nb, Scalar(0)));
    for (int r = 0; r < layout.dim(); ++r)
      for (int c = 0; c < 3 * nb; ++c) mrows[r][c] = aug.at(r, c);
    std::vector<int> pivot_of_col(nb, -1);
    int rrow = 0;
    for (int c = 0; c < nb && rrow < layout.dim(); ++c) {
      int p = rrow;
      while (p < layout.dim() && mrows[p][c] == 0) ++p;
      if (p == layout.dim()) continue;
      std::swap(mrows[p], mrows[rrow]);
      Scalar inv = 1 / mrows[rrow][c];
      for (int k = c; k < 3 * nb; ++k) mrows[rrow][k] *= inv;
      for (int r2 = 0; r2 < layout.dim(); ++r2) {
        if (r2 == rrow || mrows[r2][c] == 0) continue;
        Scalar f = mrows[r2][c];
        for (int k = c; k < 3 * nb; ++k) mrows[r2][k] -= f * mrows[rrow][k];
      }
      pivot_of_col[c] = rrow;
      ++rrow;
    }
    for (int c = 0; c < nb; ++c) {
      if (pivot_of_col[c] < 0) throw std::logic_error("complement basis is degenerate");
      for (int j = 0; j < nb; ++j) {
        pb.d.at(c, j) = mrows[pivot_of_col[c]][nb + j];
        pb.h.at(c, j) = mrows[pivot_of_col[c]][2 * nb + j];
      }
    }
    // rows without a pivot must be entirely zero, else d or h leaves the span
    for (int r2 = rrow; r2 < layout.dim(); ++r2)
      for (int k = 0; k < 3 * nb; ++k)
        if (mrows[r2][k] != 0) throw std::logic_error("d or h escapes the complement span");
  }
  return pb;
}

// ---------------------------------------------------------------------------
// Sym with Koszul signs

void SymElement::add_term(std::vector<int> mono, const Scalar& c0, const std::vector<int>& degs)
{
  if (c0 == 0) return;
  // insertion sort with Koszul signs; odd squares vanish
  Scalar c = c0;
  for (size_t i = 1; i < mono.size(); ++i)
    for (size_t j = i; j > 0 && mono[j] < mono[j - 1]; --j) {
      if ((degs[mono[j]] & 1) && (degs[mono[j - 1]] & 1)) c = -c;
      std::swap(mono[j], mono[j - 1]);
    }
  for (size_t i = 1; i < mono.size(); ++i)
    if (mono[i] == mono[i - 1] && (degs[mono[i]] & 1)) return;
  auto [it, inserted] = terms.emplace(std::move(mono), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

SymElement& SymElement::operator+=(const SymElement& o)
{
  for (const auto& [mono, c] : o.terms) {
    auto [it, inserted] = terms.emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  return *this;
}

SymElement SymElement::scaled(const Scalar& c) const
{
  SymElement r;
  if (c == 0) return r;
  for (const auto& [mono, v] : terms) r.terms.emplace(mono, v * c);
  return r;
}

namespace {

SymElement sym_apply_matrix(const PerpBasis& pb, const SymElement& x, const QMatrix& mat,
                            bool weighted)
{
  SymElement out;
  for (const auto& [mono, c] : x.terms) {
    int n = static_cast<int>(mono.size());
    Scalar weight = weighted && n > 0 ? Scalar(1) / n : Scalar(1);
    for (int pos = 0; pos < n; ++pos) {
      // Koszul sign past the first pos letters (the operator is odd)
      int parity = 0;
      for (int q = 0; q < pos; ++q) parity += pb.degree[mono[q]] & 1;
      for (int target = 0; target < mat.rows(); ++target) {
        const Scalar& entry = mat.at(target, mono[pos]);
        if (entry == 0) continue;
        std::vector<int> next = mono;
        next[pos] = target;
        out.add_term(std::move(next), c * weight * entry * (parity % 2 ? Scalar(-1) : Scalar(1)),
                     pb.degree);
      }
    }
  }
  return out;
}

} // namespace

SymElement sym_d(const PerpBasis& pb, const SymElement& x)
{
  return sym_apply_matrix(pb, x, pb.d, false);
}

SymElement sym_homotopy(const PerpBasis& pb, const SymElement& x)
{
  return sym_apply_matrix(pb, x, pb.h, true);
}

// ---------------------------------------------------------------------------
// straightening

std::vector<PbwLetter> block_split(const LocalModels& m, const LocalTW& w)
{
  std::vector<PbwLetter> out;
  auto take = [&](Block b, const LocalTW& v) {
    for (int deg = 0; deg <= 1; ++deg) {
      LocalTW c = v.component(deg);
      if (!c.is_zero()) out.push_back(PbwLetter{b, deg, std::move(c)});
    }
  };
  take(Block::Minus, proj_minus(m, w));
  take(Block::Perp, proj_perp(m, w));
  take(Block::Plus, proj_plus(m, w));
  return out;
}

bool pbw_is_ordered(const PbwSum& words)
{
  for (const auto& w : words)
    for (size_t i = 1; i < w.letters.size(); ++i)
      if (static_cast<int>(w.letters[i - 1].block) > static_cast<int>(w.letters[i].block))
        return false;
  return true;
}

PbwSum pbw_straighten(const LocalModels& m, const PbwSum& words, RewriteStrategy strategy)
{
  PbwSum done;
  std::vector<PbwWord> work(words.begin(), words.end());
  while (!work.empty()) {
    PbwWord w = std::move(work.back());
    work.pop_back();
    if (w.coef == 0) continue;
    int inv = -1;
    int n = static_cast<int>(w.letters.size());
    if (strategy == RewriteStrategy::Leftmost) {
      for (int i = 0; i + 1 < n; ++i)
        if (static_cast<int>(w.letters[i].block) > static_cast<int>(w.letters[i + 1].block)) {
          inv = i;
          break;
        }
    } else {
      for (int i = n - 2; i >= 0; --i)
        if (static_cast<int>(w.letters[i].block) > static_cast<int>(w.letters[i + 1].block)) {
          inv = i;
          break;
        }
    }
    if (inv < 0) {
      done.push_back(std::move(w));
      continue;
    }
    const PbwLetter& x = w.letters[inv];
    const PbwLetter& y = w.letters[inv + 1];
    // x y = (-1)^{|x||y|} y x + [x, y]
    PbwWord swapped = w;
    std::swap(swapped.letters[inv], swapped.letters[inv + 1]);
    if ((x.degree & 1) && (y.degree & 1)) swapped.coef = -swapped.coef;
    work.push_back(std::move(swapped));
    LocalTW br = tw_bracket(x.value, y.value, m.L);
    for (auto& piece : block_split(m, br)) {
      PbwWord shorter;
      shorter.coef = w.coef;
      shorter.letters.assign(w.letters.begin(), w.letters.begin() + inv);
      shorter.letters.push_back(std::move(piece));
      shorter.letters.insert(shorter.letters.end(), w.letters.begin() + inv + 2,
                             w.letters.end());
      work.push_back(std::move(shorter));
    }
  }
  return done;
}

std::map<std::vector<int>, Scalar> pbw_canonical(const PbwSum& words, const Window& win,
                                                 int s_cap, const LocalModels& m)
{
  FlatLayout layout(win, s_cap, m.L.dim());
  std::map<std::vector<int>, Scalar> out;
  for (const auto& w : words) {
    // expand the tensor word over the ambient coordinate basis
    std::vector<std::pair<std::vector<int>, Scalar>> acc = {{{}, w.coef}};
    for (const auto& letter : w.letters) {
      auto col = flatten(m, layout, letter.value);
      std::vector<std::pair<std::vector<int>, Scalar>> next;
      for (const auto& [key, c] : acc)
        for (int idx = 0; idx < layout.dim(); ++idx) {
          if (col[idx] == 0) continue;
          auto k2 = key;
          k2.push_back(idx);
          next.emplace_back(std::move(k2), c * col[idx]);
        }
      acc = std::move(next);
    }
    for (auto& [key, c] : acc) {
      auto [it, inserted] = out.emplace(std::move(key), c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

PbwSum pbw_d(const LocalModels& m, const PbwSum& words)
{
  PbwSum out;
  for (const auto& w : words) {
    int parity = 0;
    for (size_t i = 0; i < w.letters.size(); ++i) {
      LocalTW dv = tw_d(w.letters[i].value);
      if (!dv.is_zero()) {
        for (auto& piece : block_split(m, dv)) {
          PbwWord nw = w;
          nw.coef = parity % 2 ? -w.coef : w.coef;
          nw.letters[i] = std::move(piece);
          out.push_back(std::move(nw));
        }
      }
      parity += w.letters[i].degree & 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// desk-scale PBW count

bool DeskAlgebra::verify() const
{
  auto br = [&](int a, int b) { return bracket[a][b]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        Scalar sym = br(a, b)[k];
        Scalar sign = (degree[a] & degree[b] & 1) ? Scalar(1) : Scalar(-1);
        if (sym != sign * br(b, a)[k]) return false;
        if (br(a, b)[k] != 0 && degree[k] != degree[a] + degree[b]) return false;
      }
  // graded Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int k = 0; k < n; ++k) {
          Scalar lhs(0), rhs(0);
          for (int r = 0; r < n; ++r) {
            lhs += br(b, c)[r] * br(a, r)[k];
            rhs += br(a, b)[r] * br(r, c)[k];
            rhs += ((degree[a] * degree[b]) % 2 ? Scalar(-1) : Scalar(1)) * br(a, c)[r] *
                   br(b, r)[k];
          }
          if (lhs != rhs) return false;
        }
  return true;
}

DeskAlgebra desk_triangular_algebra()
{
  // letters: 0 = negative mode (odd), 1 = complement (odd),
  //          2, 3 = Taylor letters e, h (even); [e,h] = -2e, [h,q] = 2q,
  //          [h,m] = 2m.
  DeskAlgebra a;
  a.n = 4;
  a.degree = {1, 1, 0, 0};
  a.block = {Block::Minus, Block::Perp, Block::Plus, Block::Plus};
  a.bracket.assign(4, std::vector<std::vector<Scalar>>(4, std::vector<Scalar>(4, Scalar(0))));
  auto set = [&](int x, int y, int k, long v) {
    a.bracket[x][y][k] = Scalar(v);
    Scalar sign = (a.degree[x] & a.degree[y] & 1) ? Scalar(v) : Scalar(-v);
    a.bracket[y][x][k] = sign;
  };
  set(2, 3, 2, -2); // [e, h] = -2e
  set(3, 1, 1, 2);  // [h, q] = 2q
  set(3, 0, 0, 2);  // [h, m] = 2m
  return a;
}

long desk_ordered_count(const DeskAlgebra& a, int length)
{
  long count = 0;
  std::vector<int> word;
  std::function<void(int, int)> rec = [&](int pos, int minletter) {
    if (pos == length) {
      ++count;
      return;
    }
    for (int l = minletter; l < a.n; ++l) {
      if (!word.empty() && word.back() == l && (a.degree[l] & 1)) continue;
      word.push_back(l);
      rec(pos + 1, l);
      word.pop_back();
    }
  };
  rec(0, 0);
  return count;
}

std::map<std::vector<int>, Scalar> desk_straighten(const DeskAlgebra& a,
                                                   const std::vector<int>& word,
                                                   const Scalar& coef, RewriteStrategy strategy)
{
  std::map<std::vector<int>, Scalar> out;
  std::vector<std::pair<std::vector<int>, Scalar>> work{{word, coef}};
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    if (c == 0) continue;
    int n = static_cast<int>(w.size());
    int inv = -1;
    auto bad = [&](int i) {
      return w[i] > w[i + 1] || (w[i] == w[i + 1] && (a.degree[w[i]] & 1));
    };
    if (strategy == RewriteStrategy::Leftmost) {
      for (int i = 0; i + 1 < n; ++i)
        if (bad(i)) {
          inv = i;
          break;
        }
    } else {
      for (int i = n - 2; i >= 0; --i)
        if (bad(i)) {
          inv = i;
          break;
        }
    }
    if (inv < 0) {
      auto [it, inserted] = out.emplace(std::move(w), c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
      continue;
    }
    int x = w[inv], y = w[inv + 1];
    if (x == y) {
      // odd square: x x = [x,x] / 2, which vanishes for our tables
      std::vector<int> shorter(w.begin(), w.begin() + inv);
      for (int k = 0; k < a.n; ++k)
        if (a.bracket[x][y][k] != 0) {
          auto nw = shorter;
          nw.push_back(k);
          nw.insert(nw.end(), w.begin() + inv + 2, w.end());
          work.emplace_back(std::move(nw), c * a.bracket[x][y][k] / 2);
        }
      continue;
    }
    std::vector<int> swapped = w;
    std::swap(swapped[inv], swapped[inv + 1]);
    Scalar sc = (a.degree[x] & a.degree[y] & 1) ? -c : c;
    work.emplace_back(std::move(swapped), sc);
    for (int k = 0; k < a.n; ++k)
      if (a.bracket[x][y][k] != 0) {
        std::vector<int> shorter(w.begin(), w.begin() + inv);
        shorter.push_back(k);
        shorter.insert(shorter.end(), w.begin() + inv + 2, w.end());
        work.emplace_back(std::move(shorter), c * a.bracket[x][y][k]);
      }
  }
  return out;
}

long desk_quotient_dimension(const DeskAlgebra& a, int maxlen)
{
  // index all words of length <= maxlen
  std::map<std::vector<int>, int> widx;
  std::vector<std::vector<int>> words;
  std::function<void(std::vector<int>&)> gen = [&](std::vector<int>& w) {
    widx[w] = static_cast<int>(words.size());
    words.push_back(w);
    if (static_cast<int>(w.size()) == maxlen) return;
    for (int l = 0; l < a.n; ++l) {
      w.push_back(l);
      gen(w);
      w.pop_back();
    }
  };
  std::vector<int> empty;
  gen(empty);
  const int dim = static_cast<int>(words.size());

  std::vector<std::vector<Scalar>> rows;
  for (const auto& left : words)
    for (int x = 0; x < a.n; ++x)
      for (int y = 0; y < a.n; ++y)
        for (const auto& right : words) {
          int len = static_cast<int>(left.size() + right.size()) + 2;
          if (len > maxlen) continue;
          std::vector<Scalar> row(dim, Scalar(0));
          auto put = [&](std::vector<int> mid, const Scalar& c) {
            std::vector<int> w = left;
            w.insert(w.end(), mid.begin(), mid.end());
            w.insert(w.end(), right.begin(), right.end());
            row[widx.at(w)] += c;
          };
          put({x, y}, Scalar(1));
          put({y, x}, (a.degree[x] & a.degree[y] & 1) ? Scalar(1) : Scalar(-1));
          for (int k = 0; k < a.n; ++k)
            if (a.bracket[x][y][k] != 0) put({k}, -a.bracket[x][y][k]);
          rows.push_back(std::move(row));
        }
  QMatrix mat(static_cast<int>(rows.size()), dim);
  for (int r = 0; r < static_cast<int>(rows.size()); ++r)
    for (int c = 0; c < dim; ++c) mat.at(r, c) = rows[r][c];
  return dim - mat.rank();
}

} // namespace rectadel
