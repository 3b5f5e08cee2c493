#include "dbscale/operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dbscale {

ExtensionHandle::ExtensionHandle(DbSpace space, double gamma)
    : space_(std::move(space)), gamma_(gamma) {
  if (!std::isfinite(gamma)) throw Error(ErrorCode::InvalidArgument, "gamma must be finite");
}

namespace {

Cplx checked_s(const DbSpace& space, double gamma, Cplx w) {
  const Cplx s = s_gamma(space, gamma, w);
  if (std::abs(s) < kSpectralTol) {
    std::ostringstream os;
    os << "w = " << w << " is a zero of s_gamma for gamma = " << gamma;
    throw Error(ErrorCode::SpectralPoint, os.str());
  }
  return s;
}

// Coefficients (alpha, beta) of z k(z, v) - conj(v) k(z, v).
BoundaryValues kernel_boundary(const DbSpace& space, double gamma, Cplx v) {
  const Cplx vbar = std::conj(v);
  return {-s_gamma(space, gamma + kPi / 2.0, vbar) / kPi, s_gamma(space, gamma, vbar) / kPi};
}

}  // namespace

EntireFn resolvent_apply(const ExtensionHandle& ext, Cplx w, const EntireFn& f) {
  const DbSpace& space = ext.space();
  const Cplx sw = checked_s(space, ext.gamma(), w);
  const Cplx c = fn_eval(f, space, w) / sw;
  return EntireFn::diff_quotient(space, f, c, EntireFn::s(ext.gamma()), w);
}

EntireFn domain_function(const ExtensionHandle& ext, const GammaDomainElement& g) {
  return resolvent_apply(ext, g.w, g.generator);
}

EntireFn apply_S_gamma(const ExtensionHandle& ext, const GammaDomainElement& g) {
  const DbSpace& space = ext.space();
  const Cplx sw = checked_s(space, ext.gamma(), g.w);
  const Cplx c = fn_eval(g.generator, space, g.w) / sw;
  const EntireFn body = domain_function(ext, g);
  return EntireFn::lin_comb({1.0, c}, {EntireFn::mul_affine(0.0, body), EntireFn::s(ext.gamma())});
}

EntireFn cayley_apply(const ExtensionHandle& ext, Cplx w, const EntireFn& f) {
  if (w.imag() == 0.0) throw Error(ErrorCode::InvalidArgument, "Cayley transform needs Im w != 0");
  return f + (w - std::conj(w)) * resolvent_apply(ext, w, f);
}

EntireFn eigenfunction(const ExtensionHandle& ext, double mu) {
  return EntireFn::diff_quotient(ext.space(), EntireFn::s(ext.gamma()), 0.0, EntireFn(), mu);
}

GammaDomainElement eigen_domain_element(const ExtensionHandle& ext, double mu, Cplx w) {
  return {(Cplx(mu) - w) * eigenfunction(ext, mu), w};
}

GammaDomainElement regenerate_at(const ExtensionHandle& ext, const GammaDomainElement& g,
                                 Cplx w_new) {
  if (w_new == g.w) return g;
  return {g.generator + (g.w - w_new) * domain_function(ext, g), w_new};
}

GammaDomainElement sharp(const GammaDomainElement& g) {
  return {sharp(g.generator), std::conj(g.w)};
}

EntireFn star_direction(const DbSpace& space, double gamma_ref) {
  const ExtensionHandle ext(space, gamma_ref);
  const EntireFn ki = EntireFn::kernel(kI);
  return ki + kI * resolvent_apply(ext, kI, ki);
}

EntireFn star_function(const DbSpace& space, const StarDomainElement& g) {
  const ExtensionHandle ext(space, g.gamma_ref);
  const EntireFn h = resolvent_apply(ext, kI, g.h_generator);
  if (g.b == Cplx{}) return h;
  return h + g.b * star_direction(space, g.gamma_ref);
}

EntireFn star_apply(const DbSpace& space, const StarDomainElement& g) {
  const ExtensionHandle ext(space, g.gamma_ref);
  const EntireFn sh = apply_S_gamma(ext, {g.h_generator, kI});
  if (g.b == Cplx{}) return sh;
  return sh - g.b * resolvent_apply(ext, kI, EntireFn::kernel(kI));
}

BoundaryValues boundary_values(const DbSpace& space, double gamma, const EntireFn& F,
                               const EntireFn& star_F) {
  const Cplx zs[2] = {kI, -kI};
  Cplx rhs[2], m[2][2];
  for (int r = 0; r < 2; ++r) {
    rhs[r] = zs[r] * fn_eval(F, space, zs[r]) - fn_eval(star_F, space, zs[r]);
    m[r][0] = s_gamma(space, gamma, zs[r]);
    m[r][1] = s_gamma(space, gamma + kPi / 2.0, zs[r]);
  }
  const Cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return {(rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det, (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det};
}

StarDomainElement star_decompose(const DbSpace& space, const EntireFn& F, const EntireFn& star_F,
                                 double gamma_ref) {
  const BoundaryValues bv = boundary_values(space, gamma_ref, F, star_F);
  const Cplx beta_u = s_gamma(space, gamma_ref, -kI) / kPi;
  const Cplx b = bv.beta / beta_u;
  EntireFn f = star_F - kI * F;
  if (b != Cplx{}) f = f + (kI * b) * EntireFn::kernel(kI);
  return {f, b, gamma_ref};
}

StarDomainElement star_from_kernel(const DbSpace& space, Cplx w, double gamma_ref) {
  const EntireFn k = EntireFn::kernel(w);
  return star_decompose(space, k, std::conj(w) * k, gamma_ref);
}

StarDomainElement to_star(const ExtensionHandle& ext, const GammaDomainElement& g,
                          double gamma_ref) {
  if (g.w == kI && reduce_gamma(ext.gamma()) == reduce_gamma(gamma_ref)) {
    // s_{gamma + pi} = -s_gamma defines the same extension and resolvent.
    return {g.generator, 0.0, gamma_ref};
  }
  return star_decompose(ext.space(), domain_function(ext, g), apply_S_gamma(ext, g), gamma_ref);
}

DeficiencyDecomposition deficiency_decompose(const DbSpace& space, const StarDomainElement& g) {
  const double gamma = g.gamma_ref;
  const Cplx s_i = s_gamma(space, gamma, kI);
  const Cplx s_mi = s_gamma(space, gamma, -kI);
  const Cplx sp_mi = s_gamma(space, gamma + kPi / 2.0, -kI);
  // Boundary values of R(i) f and of the deficiency direction u.
  const Cplx alpha_h = -fn_eval(g.h_generator, space, kI) / s_i;
  const Cplx alpha_u = -sp_mi / kPi - kI * kernel(space, kI, kI) / s_i;
  const Cplx beta_u = s_mi / kPi;
  const Cplx alpha = alpha_h + g.b * alpha_u;
  const Cplx beta = g.b * beta_u;

  const BoundaryValues plus = kernel_boundary(space, gamma, -kI);
  const BoundaryValues minus = kernel_boundary(space, gamma, kI);
  const Cplx det = plus.alpha * minus.beta - minus.alpha * plus.beta;
  const Cplx a_plus = (alpha * minus.beta - minus.alpha * beta) / det;
  const Cplx a_minus = (plus.alpha * beta - alpha * plus.beta) / det;

  const EntireFn h = EntireFn::lin_comb(
      {1.0, -a_plus, -a_minus},
      {star_function(space, g), EntireFn::kernel(-kI), EntireFn::kernel(kI)});
  return {h, a_plus, a_minus};
}

void IdentityError::add(Cplx lhs, Cplx rhs) {
  const double diff = std::abs(lhs - rhs);
  max_abs = std::max(max_abs, diff);
  scaled = std::max(scaled, diff / (1.0 + std::max(std::abs(lhs), std::abs(rhs))));
}

IdentityError quotient_kernel_identity_check(const ExtensionHandle& ext, Cplx v, Cplx w,
                                             std::span<const Cplx> grid) {
  if (v == w) throw Error(ErrorCode::InvalidArgument, "quotient identity needs v != w");
  const DbSpace& space = ext.space();
  const double gamma = ext.gamma();
  const Cplx ratio = checked_s(space, gamma, w) / checked_s(space, gamma, v);
  const EntireFn r = resolvent_apply(ext, v, EntireFn::kernel(std::conj(w)));
  IdentityError err;
  for (const Cplx z : grid) {
    const Cplx kw = kernel(space, z, std::conj(w));
    const Cplx kv = kernel(space, z, std::conj(v));
    const Cplx lhs = (kw - kv) / (w - v);
    const Cplx rhs = fn_eval(r, space, z) + (ratio - 1.0) * kv / (w - v);
    err.add(lhs, rhs);
  }
  return err;
}

IdentityError symmetry_check(const ExtensionHandle& ext, Cplx v, Cplx w,
                             std::span<const Cplx> grid) {
  const DbSpace& space = ext.space();
  const Cplx sv = checked_s(space, ext.gamma(), v);
  const Cplx sw = checked_s(space, ext.gamma(), w);
  const EntireFn left = resolvent_apply(ext, v, EntireFn::kernel(std::conj(w)));
  const EntireFn right = resolvent_apply(ext, w, EntireFn::kernel(std::conj(v)));
  IdentityError err;
  for (const Cplx z : grid) err.add(sv * fn_eval(left, space, z), sw * fn_eval(right, space, z));
  return err;
}

IdentityError cayley_kernel_check(const ExtensionHandle& ext, Cplx w,
                                  std::span<const Cplx> grid) {
  const DbSpace& space = ext.space();
  const Cplx wbar = std::conj(w);
  const Cplx s_wbar = s_gamma(space, ext.gamma(), wbar);
  const Cplx s_w = s_gamma(space, ext.gamma(), w);
  const EntireFn u = cayley_apply(ext, w, EntireFn::kernel(w));
  IdentityError err;
  for (const Cplx z : grid) err.add(s_wbar * kernel(space, z, wbar), s_w * fn_eval(u, space, z));
  return err;
}

IdentityError cayley_on_kernel_check(const ExtensionHandle& ext, Cplx w0, Cplx z,
                                     std::span<const Cplx> grid) {
  const DbSpace& space = ext.space();
  const Cplx w0bar = std::conj(w0);
  const Cplx zbar = std::conj(z);
  if (zbar == w0bar) throw Error(ErrorCode::InvalidArgument, "Cayley kernel identity needs z != w0");
  const Cplx c1 = (zbar - w0) / (zbar - w0bar);
  const Cplx c2 = (w0bar - w0) / (zbar - w0bar) * s_gamma(space, ext.gamma(), zbar) /
                  checked_s(space, ext.gamma(), w0bar);
  const EntireFn u = cayley_apply(ext, w0bar, EntireFn::kernel(z));
  IdentityError err;
  for (const Cplx v : grid) {
    err.add(fn_eval(u, space, v), c1 * kernel(space, v, z) - c2 * kernel(space, v, w0));
  }
  return err;
}

}  // namespace dbscale
