#ifndef RECTADEL_RATIONAL_HPP
#define RECTADEL_RATIONAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <string>

namespace rectadel {

/// Exact rational scalar. All arithmetic in the library is over Q; there is
/// no floating point anywhere.
using Scalar = mpq_class;

inline Scalar scalar_of(long n) { return Scalar(n); }

inline Scalar scalar_of(long num, long den)
{
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

/// Parse "a/b" or "a". Throws std::invalid_argument on garbage.
Scalar scalar_parse(const std::string& s);

std::string scalar_str(const Scalar& q);

/// Exponent bounds for truncated bivariate Laurent expansions,
/// w_min <= 0 <= w_max and z_min <= 0 <= z_max.
struct Window {
  int w_min = 0, w_max = 0, z_min = 0, z_max = 0;

  bool contains(int i, int j) const
  {
    return i >= w_min && i <= w_max && j >= z_min && j <= z_max;
  }
  bool contains(const Window& other) const
  {
    return w_min <= other.w_min && w_max >= other.w_max && z_min <= other.z_min &&
           z_max >= other.z_max;
  }
  /// Shrink by the polar order consumed when multiplying truncated
  /// expansions: coefficients of a product are exact only up to
  /// (w_max - dw, z_max - dz).
  Window shrunk(int dw, int dz) const
  {
    Window v = *this;
    v.w_max -= dw;
    v.z_max -= dz;
    if (v.w_max < 0) v.w_max = 0;
    if (v.z_max < 0) v.z_max = 0;
    return v;
  }
  bool operator==(const Window& o) const = default;
};

Window window_validate(int w_min, int w_max, int z_min, int z_max);

inline Window square_window(int m) { return Window{-m, m, -m, m}; }

} // namespace rectadel

#endif
