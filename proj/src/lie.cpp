#include "rectadel/lie.hpp"

#include "rectadel/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace rectadel {

LieStructure::LieStructure(int dim, std::vector<Scalar> bracket_constants,
                           std::vector<Scalar> form)
    : dim_(dim), c_(std::move(bracket_constants)), kappa_(std::move(form))
{
  if (dim <= 0 || c_.size() != size_t(dim) * dim * dim || kappa_.size() != size_t(dim) * dim)
    throw std::invalid_argument("structure constant tables have wrong size");
}

std::optional<std::string> LieStructure::verify() const
{
  auto fail = [](const std::string& what, int a, int b, int k) {
    std::ostringstream os;
    os << what << " fails at basis indices (" << a << "," << b << "," << k << ")";
    return os.str();
  };
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int k = 0; k < dim_; ++k)
        if (c(a, b, k) != -c(b, a, k)) return fail("antisymmetry", a, b, k);
  // Jacobi: [[a,b],k] + [[b,k],a] + [[k,a],b] = 0 on basis triples
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int k = 0; k < dim_; ++k)
        for (int m = 0; m < dim_; ++m) {
          Scalar s(0);
          for (int r = 0; r < dim_; ++r)
            s += c(a, b, r) * c(r, k, m) + c(b, k, r) * c(r, a, m) + c(k, a, r) * c(r, b, m);
          if (s != 0) return fail("Jacobi identity", a, b, k);
        }
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      if (form(a, b) != form(b, a)) return fail("form symmetry", a, b, 0);
  // invariance: kappa([x,y],z) + kappa(y,[x,z]) = 0 on basis triples
  for (int x = 0; x < dim_; ++x)
    for (int y = 0; y < dim_; ++y)
      for (int z = 0; z < dim_; ++z) {
        Scalar s(0);
        for (int r = 0; r < dim_; ++r) s += c(x, y, r) * form(r, z) + c(x, z, r) * form(y, r);
        if (s != 0) return fail("form invariance", x, y, z);
      }
  QMatrix k(dim_, dim_);
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) k.at(a, b) = form(a, b);
  if (k.rank() != dim_) return std::string("bilinear form is degenerate");
  return std::nullopt;
}

std::vector<Scalar> LieStructure::bracket(const std::vector<Scalar>& x,
                                          const std::vector<Scalar>& y) const
{
  std::vector<Scalar> out(dim_, Scalar(0));
  for (int a = 0; a < dim_; ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b < dim_; ++b) {
      if (y[b] == 0) continue;
      Scalar f = x[a] * y[b];
      for (int k = 0; k < dim_; ++k)
        if (c(a, b, k) != 0) out[k] += f * c(a, b, k);
    }
  }
  return out;
}

LieStructure builtin_sl2()
{
  const int d = 3; // basis order: e=0, h=1, f=2
  std::vector<Scalar> c(d * d * d, Scalar(0));
  auto set = [&](int a, int b, int k, long v) {
    c[(size_t(a) * d + b) * d + k] = Scalar(v);
    c[(size_t(b) * d + a) * d + k] = Scalar(-v);
  };
  set(1, 0, 0, 2);  // [h,e] = 2e
  set(1, 2, 2, -2); // [h,f] = -2f
  set(0, 2, 1, 1);  // [e,f] = h
  std::vector<Scalar> kappa(d * d, Scalar(0));
  kappa[0 * d + 2] = kappa[2 * d + 0] = Scalar(1); // kappa(e,f) = 1
  kappa[1 * d + 1] = Scalar(2);                    // kappa(h,h) = 2
  return LieStructure(d, std::move(c), std::move(kappa));
}

bool CurrentElement::is_zero() const
{
  for (const auto& p : comp)
    if (!p.is_zero()) return false;
  return true;
}

CurrentElement& CurrentElement::operator+=(const CurrentElement& o)
{
  if (comp.size() != o.comp.size()) throw std::invalid_argument("current element dim mismatch");
  for (size_t i = 0; i < comp.size(); ++i) comp[i] += o.comp[i];
  return *this;
}

CurrentElement& CurrentElement::operator-=(const CurrentElement& o)
{
  if (comp.size() != o.comp.size()) throw std::invalid_argument("current element dim mismatch");
  for (size_t i = 0; i < comp.size(); ++i) comp[i] -= o.comp[i];
  return *this;
}

CurrentElement CurrentElement::scaled(const Scalar& c) const
{
  CurrentElement r(dim());
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i].scaled(c);
  return r;
}

CurrentElement current_basis(const LieStructure& L, int a, const BiLaurent& f)
{
  CurrentElement x(L.dim());
  x.comp.at(a) = f;
  return x;
}

CurrentElement current_bracket(const CurrentElement& x, const CurrentElement& y,
                               const LieStructure& L)
{
  if (x.dim() != L.dim() || y.dim() != L.dim())
    throw std::invalid_argument("current element does not match Lie structure");
  CurrentElement out(L.dim());
  for (int a = 0; a < L.dim(); ++a) {
    if (x.comp[a].is_zero()) continue;
    for (int b = 0; b < L.dim(); ++b) {
      if (y.comp[b].is_zero()) continue;
      BiLaurent prod = x.comp[a] * y.comp[b];
      for (int k = 0; k < L.dim(); ++k)
        if (L.c(a, b, k) != 0) out.comp[k] += prod.scaled(L.c(a, b, k));
    }
  }
  return out;
}

} // namespace rectadel
