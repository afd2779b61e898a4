#pragma once

#include <functional>

namespace qsub {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  int max_depth = 40;
  /// Upper bound on the width of the initial panels. Adaptive Simpson on a
  /// single panel can be fooled by an oscillatory integrand whose coarse
  /// samples happen to agree.
  double max_panel = 0.0;  // 0: no pre-splitting
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  /// Integral of |f| over the interval; the tolerance is relative to it.
  double abs_scale = 0.0;
  bool converged = true;
  long evaluations = 0;
};

/// Adaptive Simpson quadrature with Richardson correction. The tolerance is
/// rel_tol times the integral of |f|, which stays meaningful when the signed
/// integral passes through zero.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options = {});

}  // namespace qsub
