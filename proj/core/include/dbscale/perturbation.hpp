#pragma once

// Singular rank-one perturbations of S_{pi/2} in the direction s_0: the
// resolvent on s_0, the Q-function, Krein's resolvent formula and the
// alternative description of dom(S_gamma).

#include <span>
#include <vector>

#include "dbscale/numerics.hpp"
#include "dbscale/operator.hpp"

namespace dbscale {

/// Guard on |s_gamma(i)| and on |tan gamma + s_0(w) / s_{pi/2}(w)|.
inline constexpr double kDegenerateTol = 1e-12;

/// -pi k(., conj w) / s_{pi/2}(w). Throws SpectralPoint on the spectrum of S_{pi/2}.
EntireFn rhat_on_s0(const DbSpace& space, Cplx w);

/// <s_0, h> for h in dom(S_{pi/2}): -pi f(i) / s_{pi/2}(i) with f the
/// generator at i. Vanishes exactly on dom(S).
Cplx boundary_functional(const DbSpace& space, const GammaDomainElement& h);

enum class QForm { Definitional, ClosedForm };

/// Q-function of the pair (S, S_{pi/2}) with respect to s_0.
/// Definitional: w <phi, phi> + (1 + w^2) <phi, R(w) phi>, phi = rhat_on_s0(i),
/// which needs Im w != 0. ClosedForm: pi Re(s_0(i)/s_{pi/2}(i)) - pi s_0(w)/s_{pi/2}(w).
Cplx qfunc(const DbSpace& space, Cplx w, QForm form = QForm::ClosedForm);

struct KreinData {
  double gamma = 0.0;
  double lambda = 0.0;
  QForm form = QForm::ClosedForm;
};

/// pi tan(gamma) + pi Re(s_0(i) / s_{pi/2}(i)).
double lambda_of_gamma(const DbSpace& space, double gamma);
/// Throws InvalidArgument unless gamma lies in (0, pi) and differs from pi/2.
KreinData make_krein_data(const DbSpace& space, double gamma, QForm form = QForm::ClosedForm);

struct KreinCheck {
  IdentityError resolvent;    // direct difference against the rank-one formula
  double denominator_residual = 0.0;  // |(lambda - q(w)) - (pi tan g + pi s_0(w)/s_{pi/2}(w))|
};

/// (R_gamma(w) - R_{pi/2}(w)) f against
/// <rhat_on_s0(conj w), f> rhat_on_s0(w) / (pi tan gamma + pi s_0(w)/s_{pi/2}(w)).
KreinCheck krein_diff_check(const DbSpace& space, const KreinData& data, Cplx w,
                            const EntireFn& f, std::span<const Cplx> grid);

/// Real zeros of tan(gamma) + s_0(x)/s_{pi/2}(x) in the window, located
/// without reference to s_gamma.
std::vector<double> krein_poles(const DbSpace& space, double gamma, const RootWindow& window);

/// g = h + b S_{pi/2} R_{pi/2}(-i) rhat_on_s0(i) with h in dom(S_{pi/2}).
struct PerturbedDomainElement {
  GammaDomainElement h;  // relative to S_{pi/2}, generator at i
  Cplx b{};
  double gamma = kPi / 2.0;
  double boundary_residual = 0.0;   // |<s_0, h> - pi b (tan gamma + Re(s_0(i)/s_{pi/2}(i)))|
  double reassembly_residual = 0.0; // max over the grid of |h + b d - g|
};

/// S_{pi/2} R_{pi/2}(-i) phi with phi = rhat_on_s0(i).
EntireFn perturbation_direction(const DbSpace& space);

/// Splits g in dom(S_gamma) as h + b * perturbation_direction. The grid is
/// used for the reassembly residual. Throws DegenerateDenominator when
/// |s_gamma(i)| < 1e-12.
PerturbedDomainElement dom_gamma_decompose(const DbSpace& space, double gamma,
                                           const GammaDomainElement& g,
                                           std::span<const Cplx> grid);

/// <s_0, g>_F = <s_0, h> - pi b Re(s_0(i) / s_{pi/2}(i)).
Cplx pairing_s0_F(const DbSpace& space, const PerturbedDomainElement& p);

/// For every test u in dom(S_{pi/2}) compares
///   <g, S_{pi/2} u> - (cot gamma / pi) conj(<s_0, g>_F) <s_0, u>
/// with <S_gamma g, u>. Returns the largest discrepancy.
IdentityError s_tilde_gamma_pairing_check(const DbSpace& space, double gamma,
                                          const GammaDomainElement& g,
                                          std::span<const GammaDomainElement> tests);

struct CyclicityResult {
  double residual = 0.0;    // B-norm distance from target to the span
  double condition = 0.0;   // 2-norm condition number of the Gram matrix
  bool ill_conditioned = false;
};

/// Projects target onto span{k(., conj w_j)} = span{rhat_on_s0(w_j)}.
/// The Gram matrix is <k_j, k_l> = k(conj w_j, conj w_l). Condition numbers above 1e12
/// are flagged, not thrown.
CyclicityResult cyclicity_check(const DbSpace& space, std::span<const Cplx> w_set,
                                const EntireFn& target);

}  // namespace dbscale
