#include "rectadel/bilaurent.hpp"

#include <sstream>

namespace rectadel {

BiLaurent BiLaurent::monomial(int i, int j, Scalar c)
{
  BiLaurent p;
  if (c != 0) p.terms_.emplace(Key{i, j}, std::move(c));
  return p;
}

Scalar BiLaurent::coeff(int i, int j) const
{
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Scalar(0) : it->second;
}

void BiLaurent::set(int i, int j, Scalar c)
{
  if (c == 0)
    terms_.erase({i, j});
  else
    terms_[{i, j}] = std::move(c);
}

void BiLaurent::add_term(int i, int j, const Scalar& c)
{
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(Key{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BiLaurent& BiLaurent::operator+=(const BiLaurent& o)
{
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

BiLaurent& BiLaurent::operator-=(const BiLaurent& o)
{
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

BiLaurent operator*(const BiLaurent& a, const BiLaurent& b)
{
  BiLaurent r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

BiLaurent BiLaurent::operator-() const
{
  BiLaurent r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

BiLaurent BiLaurent::scaled(const Scalar& c) const
{
  BiLaurent r;
  if (c == 0) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

BiLaurent BiLaurent::sector(Sector s) const { return sector_mask(sector_bit(s)); }

BiLaurent BiLaurent::sector_mask(unsigned mask) const
{
  BiLaurent r;
  for (const auto& [k, c] : terms_)
    if (mask & sector_bit(sector_of(k.first, k.second))) r.terms_.emplace(k, c);
  return r;
}

bool BiLaurent::supported_in(unsigned mask) const
{
  for (const auto& [k, c] : terms_)
    if (!(mask & sector_bit(sector_of(k.first, k.second)))) return false;
  return true;
}

BiLaurent BiLaurent::d_dw() const
{
  BiLaurent r;
  for (const auto& [k, c] : terms_)
    if (k.first != 0) r.add_term(k.first - 1, k.second, c * k.first);
  return r;
}

BiLaurent BiLaurent::d_dz() const
{
  BiLaurent r;
  for (const auto& [k, c] : terms_)
    if (k.second != 0) r.add_term(k.first, k.second - 1, c * k.second);
  return r;
}

BiLaurent BiLaurent::clipped(const Window& win) const
{
  BiLaurent r;
  for (const auto& [k, c] : terms_)
    if (win.contains(k.first, k.second)) r.terms_.emplace(k, c);
  return r;
}

bool BiLaurent::inside(const Window& win) const
{
  for (const auto& [k, c] : terms_)
    if (!win.contains(k.first, k.second)) return false;
  return true;
}

namespace {
Scalar int_pow(const Scalar& a, int e)
{
  Scalar r(1), base = a;
  int n = e >= 0 ? e : -e;
  for (; n > 0; n >>= 1) {
    if (n & 1) r *= base;
    base *= base;
  }
  if (e < 0) r = 1 / r;
  return r;
}
} // namespace

Scalar BiLaurent::eval(const Scalar& a, const Scalar& b) const
{
  Scalar r(0);
  for (const auto& [k, c] : terms_) r += c * int_pow(a, k.first) * int_pow(b, k.second);
  return r;
}

std::string BiLaurent::str() const
{
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << scalar_str(c) << ")w^" << k.first << "z^" << k.second;
  }
  return os.str();
}

bool equal_on_window(const BiLaurent& a, const BiLaurent& b, const Window& win)
{
  return a.clipped(win) == b.clipped(win);
}

} // namespace rectadel
