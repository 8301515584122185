#pragma once

#include <cmath>

namespace xxgap {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a minimum of `f` on [lo, hi], stopping once the
/// bracket is shorter than `tolerance`. Only needs f continuous and unimodal on
/// the bracket. Returns the best point evaluated, never the bracket midpoint.
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  ScalarMinimum best = fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};

  while (b - a > tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      if (fc < best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      if (fd < best.value) best = {d, fd};
    }
  }
  return best;
}

}  // namespace xxgap
