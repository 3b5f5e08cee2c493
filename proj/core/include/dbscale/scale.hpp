#pragma once

// Graph-norm scale around B(e): the +2 and +F norms, dual pairings carried
// by associated-function representatives, and the Paley-Wiener example of a
// non-isometric F+1 transport.

#include <span>
#include <string>
#include <vector>

#include "dbscale/operator.hpp"

namespace dbscale {

/// f = z g + h with g, h in B.
struct AssocFunction {
  EntireFn g;
  EntireFn h;

  static AssocFunction from_B(const EntireFn& f) { return {EntireFn(), f}; }
  /// The entire function z g(z) + h(z).
  EntireFn function() const;
};

/// Splits an associated function phi into z g + h, using phi(i) and k(., i).
AssocFunction assoc_decompose(const DbSpace& space, const EntireFn& phi);

enum class DualLevel { FMinus1, BMinus2 };

/// A functional on F+1 (FMinus1) or on dom(S_gamma) (BMinus2), represented
/// by an associated function. `gamma` only matters at level BMinus2.
struct DualFunctional {
  AssocFunction rep;
  DualLevel level = DualLevel::FMinus1;
  double gamma = kPi / 2.0;
  /// Set when rep is s_0 itself, which enables the closed-form resolvent.
  bool is_s0 = false;
};

/// ||(S_gamma - i) g|| computed as the B-norm of the generator at i.
double norm_plus2(const ExtensionHandle& ext, const GammaDomainElement& g);
Cplx inner_plus2(const ExtensionHandle& ext, const GammaDomainElement& f,
                 const GammaDomainElement& g);

/// <h_f, h_g>_{+2} + conj(b_f) b_g k(i, i). Both elements need the same gamma_ref.
Cplx inner_plusF(const DbSpace& space, const StarDomainElement& f, const StarDomainElement& g);
double norm_plusF(const DbSpace& space, const StarDomainElement& g);
/// <S* f, S* g> + <f, g> computed directly from the functions.
Cplx inner_plusF_graph(const DbSpace& space, const StarDomainElement& f,
                       const StarDomainElement& g);

/// R(i) R(-i) k(., w), with <k_{+2}(., w), g>_{+2} = g(w) on dom(S_gamma).
GammaDomainElement kernel_plus2(const ExtensionHandle& ext, Cplx w);

/// Extended inner product <phi, g> for g in dom(S_gamma).
/// Throws LevelMismatch for a BMinus2 functional of a different extension.
Cplx pairing_minus2(const ExtensionHandle& ext, const DualFunctional& phi,
                    const GammaDomainElement& g);
Cplx pairing_minus2(const ExtensionHandle& ext, const EntireFn& phi, const GammaDomainElement& g);

/// Duality between associated functions and dom(S*). Conjugate-linear in f.
/// The integral part uses composite quadrature at tolerance `tol`.
Cplx pairing_F(const DbSpace& space, const AssocFunction& f, const StarDomainElement& g,
               double tol = 1e-10);
/// Throws LevelMismatch unless phi is at level FMinus1.
Cplx pairing_F(const DbSpace& space, const DualFunctional& phi, const StarDomainElement& g,
               double tol = 1e-10);
std::vector<Cplx> pairing_F_many(const DbSpace& space, const AssocFunction& f,
                                 std::span<const StarDomainElement> gs, double tol = 1e-10);

/// Largest |conj(pairing_F(f, k(., z))) - f(z)| over the grid.
IdentityError assoc_roundtrip(const DbSpace& space, const AssocFunction& f,
                              std::span<const Cplx> grid, double tol = 1e-10);

/// max |pairing_F(f, g)| / ||g||_{+F} over the dictionary. Throws EmptyDictionary.
double minusF_lower(const DbSpace& space, const AssocFunction& f,
                    std::span<const StarDomainElement> dictionary, double tol = 1e-10);
/// max |pairing_minus2(phi, g)| / ||g||_{+2} over the dictionary.
double minus2_lower(const ExtensionHandle& ext, const DualFunctional& phi,
                    std::span<const GammaDomainElement> dictionary);

struct ScaleNorms {
  double plus2 = 0.0;
  double plusF = 0.0;
  double plain = 0.0;
  double minusF_lower = 0.0;
  double minus2_lower = 0.0;
};

/// All scale norms of one dom(S_gamma) element against the given dictionaries.
ScaleNorms scale_norms(const ExtensionHandle& ext, const GammaDomainElement& g,
                       std::span<const GammaDomainElement> gamma_dictionary,
                       std::span<const StarDomainElement> star_dictionary);

/// {0, +-0.5, +-1, i, -i, 1+i, 1-i}. The last point makes the set closed
/// under conjugation.
std::vector<Cplx> default_dictionary_points();
/// R(i) k(., w) and R(-i) k(., w) for every dictionary point.
std::vector<GammaDomainElement> default_gamma_dictionary(const ExtensionHandle& ext);
/// Kernels k(., w) plus the gamma dictionary, relative to gamma_ref = pi/2.
std::vector<StarDomainElement> default_star_dictionary(const ExtensionHandle& ext);

struct SharpIsometryReport {
  double plus2_rel = 0.0;   // worst | ||g#|| - ||g|| | / ||g|| in the +2 norm
  double plusF_rel = 0.0;   // same in the +F norm
  double minusF_rel = 0.0;  // same for the -F lower bounds
  std::size_t checked = 0;
};

SharpIsometryReport sharp_isometry_checks(const ExtensionHandle& ext);

/// Distance in the +F norm from S R(i) k(., i) to span(dictionary), divided
/// by ||k(., i)||. The dictionary must come from dom(S_gamma) with the same
/// gamma as the reference of the direction.
double nondensity_ratio(const ExtensionHandle& ext,
                        std::span<const GammaDomainElement> dictionary);

struct CounterexampleReport {
  double a = 0.0;
  Cplx w0;
  Cplx f_at_w0;               // must vanish
  double norm_phi_sq = 0.0;   // int_{-a}^{a} |phi|^2
  double norm_eta_sq = 0.0;   // equal to norm_phi_sq (unimodular factor)
  double norm_phi_prime_sq = 0.0;
  double norm_eta_prime_sq = 0.0;
  double relative_gap = 0.0;  // | ||eta'|| - ||phi'|| | / ||phi'||
  double fourier_residual = 0.0;  // transform of eta against the Blaschke image of f
  double plancherel_ratio = 0.0;  // ||f||_B^2 / ||phi||^2
};

/// phi(x) = e^{-x} on [-a, a], f its Fourier transform in PW(a) and
/// w0 = pi/a - i a zero of f.
CounterexampleReport counterexample_run(double a);

}  // namespace dbscale
