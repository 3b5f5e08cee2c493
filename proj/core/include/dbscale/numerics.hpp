#pragma once

// Inner products on B(e) and real zeros of the s_gamma family.

#include <vector>

#include "dbscale/fncore.hpp"

namespace dbscale {

struct IpResult {
  Cplx value;
  double change = 0.0;  // last difference between extrapolated levels
  int levels = 0;       // truncation levels used
};

/// <f, g> in B(e), conjugate-linear in f. Uses the space's IpEngine.
/// Throws NonConvergence if the extrapolated sums fail to settle.
Cplx inner_B(const DbSpace& space, const EntireFn& f, const EntireFn& g);
IpResult inner_B_detail(const DbSpace& space, const EntireFn& f, const EntireFn& g);
double norm_B(const DbSpace& space, const EntireFn& f);

/// All pairings <fs[i], gs[j]>, row-major. Every function is sampled once
/// per truncation level, which makes dictionary sweeps cheap.
std::vector<Cplx> inner_B_table(const DbSpace& space, const std::vector<EntireFn>& fs,
                                const std::vector<EntireFn>& gs);

/// Integral of conj(f) g / |e|^2 over the real line by composite Gauss
/// quadrature, regardless of the space's engine. f may be an associated
/// function as long as the product decays like 1/x.
Cplx weighted_integral(const DbSpace& space, const EntireFn& f, const EntireFn& g,
                       double tol = 1e-11);
/// weighted_integral of f against every g in gs, sharing the samples of f.
std::vector<Cplx> weighted_integrals(const DbSpace& space, const EntireFn& f,
                                     const std::vector<EntireFn>& gs, double tol = 1e-11);

/// Search interval for real zeros.
struct RootWindow {
  double lo = -5.0;
  double hi = 5.0;
  double scan_step = 0.0;  // 0 selects pi / (4a)

  /// Throws InvalidArgument unless lo < hi and 0 < step < pi / (2a).
  double effective_step(const DbSpace& space) const;
};

/// Real zeros of s_gamma in [lo, hi], ascending, each to about 1e-12.
/// Throws StepTooCoarse if one scan interval seems to hold two zeros.
std::vector<double> find_zeros(const DbSpace& space, double gamma, const RootWindow& window);

}  // namespace dbscale
