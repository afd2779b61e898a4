#include "qsub/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qsub/errors.hpp"

namespace qsub {
namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;
  QuadratureResult& out;

  double eval(double x) {
    ++out.evaluations;
    return f(x);
  }

  // Returns the Richardson-corrected integral over [a, b]; fa, fm, fb are the
  // samples at a, (a+b)/2, b and whole is the three-point Simpson estimate.
  double refine(double a, double b, double fa, double fm, double fb, double whole, double eps,
                int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;

    if (std::abs(delta) <= 15.0 * eps || depth >= max_depth) {
      if (std::abs(delta) > 15.0 * eps) out.converged = false;
      out.error_estimate += std::abs(delta) / 15.0;
      out.abs_scale += (m - a) / 6.0 * (std::abs(fa) + 4.0 * std::abs(flm) + std::abs(fm)) +
                       (b - m) / 6.0 * (std::abs(fm) + 4.0 * std::abs(frm) + std::abs(fb));
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration limits must be finite");
  if (!(options.rel_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (options.max_depth < 1) throw DomainError("quadrature depth must be at least 1");

  QuadratureResult result;
  if (a == b) return result;
  const double sign = b > a ? 1.0 : -1.0;
  if (sign < 0) std::swap(a, b);

  const double width = b - a;
  long panels = 1;
  if (options.max_panel > 0.0) panels = std::max(1L, static_cast<long>(std::ceil(width / options.max_panel)));
  const double h = width / static_cast<double>(panels);

  Simpson s{f, options.max_depth, result};

  // First pass: samples at panel ends and midpoints, and a coarse estimate of
  // the integral of |f| that sets the absolute tolerance.
  std::vector<double> ends(panels + 1), mids(panels);
  for (long i = 0; i <= panels; ++i) ends[i] = s.eval(i == panels ? b : a + h * i);
  double coarse_abs = 0.0;
  for (long i = 0; i < panels; ++i) {
    mids[i] = s.eval(a + h * (i + 0.5));
    coarse_abs += h / 6.0 * (std::abs(ends[i]) + 4.0 * std::abs(mids[i]) + std::abs(ends[i + 1]));
  }
  const double eps = options.rel_tol * coarse_abs / static_cast<double>(panels);

  double total = 0.0;
  for (long i = 0; i < panels; ++i) {
    const double lo = a + h * i;
    const double hi = i + 1 == panels ? b : a + h * (i + 1);
    const double whole = (hi - lo) / 6.0 * (ends[i] + 4.0 * mids[i] + ends[i + 1]);
    total += s.refine(lo, hi, ends[i], mids[i], ends[i + 1], whole, eps, 1);
  }
  result.value = sign * total;
  return result;
}

}  // namespace qsub
