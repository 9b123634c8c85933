#include "relifit/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace relifit {

double to_natural(const ParamBound& b, double u) {
  if (!(u > 0.0)) return b.lo;
  if (u >= 1.0) return b.hi;
  double x = 0.0;
  if (b.scale == Scale::Log) {
    const double llo = std::log(b.lo);
    x = std::exp(llo + u * (std::log(b.hi) - llo));
  } else {
    x = b.lo + u * (b.hi - b.lo);
  }
  return std::clamp(x, b.lo, b.hi);
}

double to_unit(const ParamBound& b, double x) {
  double u = 0.0;
  if (b.scale == Scale::Log) {
    const double llo = std::log(b.lo);
    u = (std::log(x) - llo) / (std::log(b.hi) - llo);
  } else {
    u = (x - b.lo) / (b.hi - b.lo);
  }
  return std::clamp(u, 0.0, 1.0);
}

}  // namespace relifit
