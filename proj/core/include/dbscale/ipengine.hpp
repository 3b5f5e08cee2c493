#pragma once

namespace dbscale {

/// Configuration of the B(e) inner-product engine.
///
/// SamplingSeries sums over the zeros of s_0 (an orthogonal basis of
/// kernels) and extrapolates the truncation tail; AdaptiveQuadrature
/// integrates conj(f) g / |e|^2 on [-X, X] and extrapolates in X. Both
/// double their truncation parameter until the extrapolated value settles
/// to `tol_ip`.
struct IpEngine {
  enum class Method { SamplingSeries, AdaptiveQuadrature };

  Method method = Method::SamplingSeries;
  int truncation = 64;      // N: sampling nodes per side at the first level
  double half_width = 16.0; // X: quadrature half-width at the first level
  double tol_ip = 1e-11;
  int max_doublings = 4;

  static IpEngine sampling(int truncation = 64, double tol = 1e-11);
  static IpEngine quadrature(double half_width = 16.0, double tol = 1e-10);

  /// Throws InvalidArgument unless N >= 8, X >= 10 and 0 < tol_ip <= 1e-4.
  void validate() const;
};

}  // namespace dbscale
