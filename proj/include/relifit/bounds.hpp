#pragma once

namespace relifit {

enum class Scale { Linear, Log };

/// Closed search interval for one parameter. Log-scale bounds are searched
/// uniformly in ln(x) and need lo > 0.
struct ParamBound {
  double lo;
  double hi;
  Scale scale = Scale::Linear;
};

/// Maps u in [0, 1] onto the bound, clamped so rounding never leaves it.
double to_natural(const ParamBound& b, double u);
/// Inverse of to_natural for x inside the bound.
double to_unit(const ParamBound& b, double x);

}  // namespace relifit
