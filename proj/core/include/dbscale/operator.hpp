#pragma once

// Multiplication operator S, its adjoint and the selfadjoint extensions
// S_gamma, all acting on expression trees.

#include <span>
#include <vector>

#include "dbscale/fncore.hpp"

namespace dbscale {

/// Selects the extension S_gamma of S on a space. gamma is kept as given
/// (s_gamma depends on it up to sign); `gamma_mod_pi()` identifies the
/// extension.
class ExtensionHandle {
 public:
  ExtensionHandle(DbSpace space, double gamma);

  const DbSpace& space() const noexcept { return space_; }
  double gamma() const noexcept { return gamma_; }
  double gamma_mod_pi() const noexcept { return reduce_gamma(gamma_); }

 private:
  DbSpace space_;
  double gamma_;
};

/// g = (f - s_gamma f(w) / s_gamma(w)) / (z - w), an element of dom(S_gamma).
struct GammaDomainElement {
  EntireFn generator;
  Cplx w = kI;
};

/// g = R(i) f + b S R(i) k(., i) with R, S taken at gamma_ref. Every element
/// of dom(S*) has exactly one such form.
struct StarDomainElement {
  EntireFn h_generator;
  Cplx b{};
  double gamma_ref = kPi / 2.0;
};

/// Spectral-point threshold on |s_gamma(w)|.
inline constexpr double kSpectralTol = 1e-12;

/// (S_gamma - w)^{-1} f. Throws SpectralPoint when |s_gamma(w)| < 1e-12.
EntireFn resolvent_apply(const ExtensionHandle& ext, Cplx w, const EntireFn& f);

/// The function g represented by a domain element.
EntireFn domain_function(const ExtensionHandle& ext, const GammaDomainElement& g);

/// S_gamma g = z g(z) + f(w) s_gamma(z) / s_gamma(w).
EntireFn apply_S_gamma(const ExtensionHandle& ext, const GammaDomainElement& g);

/// U(w) f = f + (w - conj w) (S_gamma - w)^{-1} f. Needs Im w != 0.
EntireFn cayley_apply(const ExtensionHandle& ext, Cplx w, const EntireFn& f);

/// s_gamma(z) / (z - mu) for a zero mu of s_gamma.
EntireFn eigenfunction(const ExtensionHandle& ext, double mu);

/// The eigenfunction at mu written as a domain element with generator at w.
GammaDomainElement eigen_domain_element(const ExtensionHandle& ext, double mu, Cplx w = kI);

/// Same element, generator moved to another point: f' = f + (w - w') g.
GammaDomainElement regenerate_at(const ExtensionHandle& ext, const GammaDomainElement& g,
                                 Cplx w_new);

/// g# as a domain element: generator f#, point conj(w).
GammaDomainElement sharp(const GammaDomainElement& g);

/// S_ref R_ref(i) k(., i), the deficiency direction of StarDomainElement.
EntireFn star_direction(const DbSpace& space, double gamma_ref);

/// The function g of a StarDomainElement.
EntireFn star_function(const DbSpace& space, const StarDomainElement& g);

/// S* g = S_ref h - b R_ref(i) k(., i).
EntireFn star_apply(const DbSpace& space, const StarDomainElement& g);

/// z F(z) - (S* F)(z) = alpha s_gamma(z) + beta s_{gamma + pi/2}(z).
struct BoundaryValues {
  Cplx alpha;
  Cplx beta;
};

/// Solves for (alpha, beta) from the values at z = i and z = -i.
BoundaryValues boundary_values(const DbSpace& space, double gamma, const EntireFn& F,
                               const EntireFn& star_F);

/// Splits an element of dom(S*), given with its image under S*, into the
/// StarDomainElement form relative to gamma_ref.
StarDomainElement star_decompose(const DbSpace& space, const EntireFn& F, const EntireFn& star_F,
                                 double gamma_ref = kPi / 2.0);

/// k(., w) as a StarDomainElement (S* k(., w) = conj(w) k(., w)).
StarDomainElement star_from_kernel(const DbSpace& space, Cplx w, double gamma_ref = kPi / 2.0);

/// A dom(S_gamma) element as a StarDomainElement relative to gamma_ref.
StarDomainElement to_star(const ExtensionHandle& ext, const GammaDomainElement& g,
                          double gamma_ref = kPi / 2.0);

/// g = h + a_plus k(., -i) + a_minus k(., i) with h in dom(S).
struct DeficiencyDecomposition {
  EntireFn h;
  Cplx a_plus;
  Cplx a_minus;
};

DeficiencyDecomposition deficiency_decompose(const DbSpace& space, const StarDomainElement& g);

/// Largest discrepancy between two sides of a pointwise identity over a grid.
/// `scaled` divides each difference by 1 + max(|lhs|, |rhs|).
struct IdentityError {
  double max_abs = 0.0;
  double scaled = 0.0;
  void add(Cplx lhs, Cplx rhs);
};

/// (k(z, conj w) - k(z, conj v)) / (w - v)
///   = R(v) k(., conj w)(z) + (s(w)/s(v) - 1) k(z, conj v) / (w - v).
IdentityError quotient_kernel_identity_check(const ExtensionHandle& ext, Cplx v, Cplx w,
                                             std::span<const Cplx> grid);

/// s(v) R(v) k(., conj w) = s(w) R(w) k(., conj v).
IdentityError symmetry_check(const ExtensionHandle& ext, Cplx v, Cplx w,
                             std::span<const Cplx> grid);

/// s(conj w) k(z, conj w) = s(w) U(w) k(., w)(z).
IdentityError cayley_kernel_check(const ExtensionHandle& ext, Cplx w,
                                  std::span<const Cplx> grid);

/// U(conj w0) k(., z) evaluated at each v of the grid against
///   (conj z - w0)/(conj z - conj w0) k(v, z)
///   - (conj w0 - w0)/(conj z - conj w0) s(conj z)/s(conj w0) k(v, w0).
IdentityError cayley_on_kernel_check(const ExtensionHandle& ext, Cplx w0, Cplx z,
                                     std::span<const Cplx> grid);

}  // namespace dbscale
