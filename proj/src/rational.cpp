#include "rectadel/rational.hpp"

#include <stdexcept>

namespace rectadel {

Scalar scalar_parse(const std::string& s)
{
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  if (q.get_den() < 0) throw std::invalid_argument("bad rational literal: " + s);
  return q;
}

std::string scalar_str(const Scalar& q) { return q.get_str(); }

Window window_validate(int w_min, int w_max, int z_min, int z_max)
{
  if (w_min > 0 || w_max < 0 || z_min > 0 || z_max < 0 || w_min > w_max || z_min > z_max)
    throw std::invalid_argument("window must satisfy w_min <= 0 <= w_max, z_min <= 0 <= z_max");
  return Window{w_min, w_max, z_min, z_max};
}

} // namespace rectadel
