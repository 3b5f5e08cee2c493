#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "dbscale/fncore.hpp"
#include "node.hpp"
#include "sampling_cache.hpp"

namespace dbscale {

namespace detail {

namespace {

using Kind = EntireFn::Kind;

// Taylor coefficients of s_gamma about z.
void s_taylor(const DbSpace& space, double gamma, Cplx z, std::span<Cplx> out) {
  std::vector<Cplx> ep(out.size());
  space.realization().e_taylor(z, out);
  space.realization().e_sharp_taylor(z, ep);
  const Cplx u = std::polar(1.0, gamma);
  const Cplx half_i(0.0, 0.5);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = half_i * (u * out[k] - std::conj(u) * ep[k]);
  }
}

// Fills out with the Taylor coefficients of N(zeta) / (zeta - pivot) about z,
// where njet(x, span) produces Taylor coefficients of N about x.
template <class NJet>
void quotient_taylor(const DbSpace& space, NJet&& njet, Cplx pivot, Cplx z,
                     std::span<Cplx> out) {
  const Cplx h = z - pivot;
  const std::size_t n = out.size();
  if (std::abs(h) >= 1.0) {
    std::vector<Cplx> nz(n);
    njet(z, std::span<Cplx>(nz));
    quotient_taylor_far(nz, h, out);
    return;
  }
  const int extra = std::abs(h) < space.removable_tol() ? kNearExtra : kMidExtra;
  std::vector<Cplx> np(n + static_cast<std::size_t>(extra) + 1);
  njet(pivot, std::span<Cplx>(np));
  quotient_taylor_near(np, h, out);
}

// Numerator of the kernel as a function of zeta: e(conj w) e#(zeta) - e#(conj w) e(zeta).
struct KernelNumerator {
  const DbSpace& space;
  Cplx wbar;
  void operator()(Cplx x, std::span<Cplx> out) const {
    const auto& r = space.realization();
    const Cplx A = r.e(wbar);
    const Cplx B = r.e_sharp(wbar);
    std::vector<Cplx> ez(out.size());
    r.e_sharp_taylor(x, out);
    r.e_taylor(x, ez);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = A * out[k] - B * ez[k];
  }
};

void check_removable(Cplx n0, Cplx t0, Cplx cp0, double delta, Cplx w) {
  if (std::abs(n0) > 10.0 * delta * (1.0 + std::abs(t0) + std::abs(cp0))) {
    std::ostringstream os;
    os << "quotient numerator " << std::abs(n0) << " at pivot " << w;
    throw Error(ErrorCode::RemovabilityViolation, os.str());
  }
}

// Taylor coefficients of a user function from the trapezoid rule on the
// unit circle around z.
void cauchy_taylor(const std::function<Cplx(Cplx)>& f, Cplx z, std::span<Cplx> out) {
  const std::size_t n = out.size();
  std::size_t m = 64;
  while (m < 2 * n + 8) m *= 2;
  std::vector<Cplx> values(m);
  for (std::size_t j = 0; j < m; ++j) {
    values[j] = f(z + std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m)));
  }
  for (std::size_t k = 0; k < n; ++k) {
    Cplx acc{};
    for (std::size_t j = 0; j < m; ++j) {
      const double angle = -2.0 * kPi * static_cast<double>((j * k) % m) / static_cast<double>(m);
      acc += values[j] * std::polar(1.0, angle);
    }
    out[k] = acc / static_cast<double>(m);
  }
}

}  // namespace

Cplx quotient_value_near(std::span<const Cplx> n_at_pivot, Cplx h) {
  Cplx acc{};
  for (std::size_t k = n_at_pivot.size(); k-- > 1;) acc = acc * h + n_at_pivot[k];
  return acc;
}

void quotient_taylor_near(std::span<const Cplx> n_at_pivot, Cplx h, std::span<Cplx> out) {
  // Coefficients of the quotient about the pivot, shifted to p + h.
  std::vector<Cplx> q(n_at_pivot.begin() + 1, n_at_pivot.end());
  const std::size_t m = q.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = m - 1; j-- > i;) q[j] += h * q[j + 1];
    out[i] = q[i];
  }
}

void quotient_taylor_far(std::span<const Cplx> n_at_z, Cplx h, std::span<Cplx> out) {
  Cplx prev{};
  for (std::size_t k = 0; k < out.size(); ++k) {
    prev = (n_at_z[k] - prev) / h;
    out[k] = prev;
  }
}

Cplx eval_node(const Node& node, const DbSpace& space, Cplx z) {
  switch (node.kind) {
    case Kind::E: return space.realization().e(z);
    case Kind::ESharp: return space.realization().e_sharp(z);
    case Kind::S: return s_gamma(space, node.gamma, z);
    case Kind::Kernel: return kernel(space, z, node.point);
    case Kind::User: return node.user_eval(z);
    case Kind::LinComb: {
      Cplx acc{};
      for (std::size_t i = 0; i < node.terms.size(); ++i) {
        acc += node.coeffs[i] * eval_node(node.terms[i].node(), space, z);
      }
      return acc;
    }
    case Kind::MulAffine: return (z - node.point) * eval_node(node.terms[0].node(), space, z);
    case Kind::DiffQuotient: {
      const Node& term = node.terms[0].node();
      const EntireFn& pivot = node.terms[1];
      const Cplx h = z - node.point;
      if (std::abs(h) < space.removable_tol()) {
        const std::size_t order = kNearExtra + 2;
        std::vector<Cplx> t(order), p(order);
        taylor_node(term, space, node.point, t);
        if (!pivot.is_zero()) taylor_node(pivot.node(), space, node.point, p);
        std::vector<Cplx> num(order);
        for (std::size_t k = 0; k < order; ++k) num[k] = t[k] - node.coeff * p[k];
        check_removable(num[0], t[0], node.coeff * p[0], space.removable_tol(), node.point);
        return quotient_value_near(num, h);
      }
      Cplx num = eval_node(term, space, z);
      if (!pivot.is_zero()) num -= node.coeff * eval_node(pivot.node(), space, z);
      return num / h;
    }
  }
  return {};
}

void taylor_node(const Node& node, const DbSpace& space, Cplx z, std::span<Cplx> out) {
  const std::size_t n = out.size();
  if (n == 0) return;
  switch (node.kind) {
    case Kind::E: space.realization().e_taylor(z, out); return;
    case Kind::ESharp: space.realization().e_sharp_taylor(z, out); return;
    case Kind::S: s_taylor(space, node.gamma, z, out); return;
    case Kind::Kernel: {
      const Cplx wbar = std::conj(node.point);
      quotient_taylor(space, KernelNumerator{space, wbar}, wbar, z, out);
      const Cplx scale = 1.0 / (2.0 * kPi * kI);
      for (auto& c : out) c *= scale;
      return;
    }
    case Kind::User:
      if (node.user_taylor) {
        node.user_taylor(z, out);
      } else {
        cauchy_taylor(node.user_eval, z, out);
      }
      return;
    case Kind::LinComb: {
      std::fill(out.begin(), out.end(), Cplx{});
      std::vector<Cplx> tmp(n);
      for (std::size_t i = 0; i < node.terms.size(); ++i) {
        taylor_node(node.terms[i].node(), space, z, tmp);
        for (std::size_t k = 0; k < n; ++k) out[k] += node.coeffs[i] * tmp[k];
      }
      return;
    }
    case Kind::MulAffine: {
      taylor_node(node.terms[0].node(), space, z, out);
      const Cplx shift = z - node.point;
      for (std::size_t k = n; k-- > 0;) out[k] = shift * out[k] + (k > 0 ? out[k - 1] : Cplx{});
      return;
    }
    case Kind::DiffQuotient: {
      const Node& term = node.terms[0].node();
      const EntireFn& pivot = node.terms[1];
      const Cplx c = node.coeff;
      auto njet = [&](Cplx x, std::span<Cplx> dst) {
        taylor_node(term, space, x, dst);
        if (pivot.is_zero()) return;
        std::vector<Cplx> p(dst.size());
        taylor_node(pivot.node(), space, x, p);
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= c * p[k];
      };
      quotient_taylor(space, njet, node.point, z, out);
      return;
    }
  }
}

}  // namespace detail

DbSpace::DbSpace(HbRealization realization, SpaceOptions options)
    : realization_(realization), options_(options),
      cache_(std::make_shared<detail::SamplingCache>()) {
  if (!(options_.removable_tol > 0.0 && options_.removable_tol <= 1e-2)) {
    throw Error(ErrorCode::InvalidArgument, "removable_tol must lie in (0, 1e-2]");
  }
  if (!(options_.im_guard > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "im_guard must be positive");
  }
  options_.engine.validate();
  const auto grid = standard_hb_grid();
  if (!hb_verify(realization_, grid).holds) {
    throw Error(ErrorCode::InvalidArgument,
                "realization fails the Hermite-Biehler inequality on the standard grid");
  }
}

DbSpace DbSpace::paley_wiener(double a, SpaceOptions options) {
  return DbSpace(HbRealization::paley_wiener(a), options);
}

DbSpace DbSpace::shifted_paley_wiener(double a, SpaceOptions options) {
  return DbSpace(HbRealization::shifted(HbRealization::paley_wiener(a)), options);
}

DbSpace DbSpace::with_engine(const IpEngine& engine) const {
  engine.validate();
  DbSpace copy = *this;
  copy.options_.engine = engine;
  return copy;
}

namespace {

void guard(const DbSpace& space, Cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidArgument, "evaluation point is not finite");
  }
  if (std::abs(z.imag()) > space.im_guard()) {
    std::ostringstream os;
    os << "|Im z| = " << std::abs(z.imag()) << " exceeds the guard " << space.im_guard();
    throw Error(ErrorCode::OverflowGuard, os.str());
  }
}

}  // namespace

Cplx fn_eval(const EntireFn& f, const DbSpace& space, Cplx z) {
  guard(space, z);
  return detail::eval_node(f.node(), space, z);
}

Cplx fn_derivative(const EntireFn& f, const DbSpace& space, Cplx z) {
  Cplx jet[2];
  fn_taylor(f, space, z, jet);
  return jet[1];
}

void fn_taylor(const EntireFn& f, const DbSpace& space, Cplx z, std::span<Cplx> out) {
  guard(space, z);
  detail::taylor_node(f.node(), space, z, out);
}

Cplx kernel(const DbSpace& space, Cplx z, Cplx w) {
  const Cplx wbar = std::conj(w);
  const Cplx t = z - wbar;
  const Cplx denom = 2.0 * kPi * kI;
  if (std::abs(t) < space.removable_tol()) {
    Cplx jet[detail::kNearExtra + 2];
    detail::KernelNumerator{space, wbar}(wbar, jet);
    return detail::quotient_value_near(jet, t) / denom;
  }
  const auto& r = space.realization();
  const Cplx num = r.e(wbar) * r.e_sharp(z) - r.e_sharp(wbar) * r.e(z);
  return num / (denom * t);
}

Cplx s_gamma(const DbSpace& space, double gamma, Cplx z) {
  const Cplx u = std::polar(1.0, gamma);
  const auto& r = space.realization();
  return Cplx(0.0, 0.5) * (u * r.e(z) - std::conj(u) * r.e_sharp(z));
}

Cplx kernel_via_s(const DbSpace& space, double gamma0, Cplx z, Cplx w) {
  const double g1 = gamma0 + kPi / 2.0;
  const Cplx wbar = std::conj(w);
  const Cplx t = z - wbar;
  const Cplx a0 = s_gamma(space, gamma0, wbar);
  const Cplx a1 = s_gamma(space, g1, wbar);
  if (std::abs(t) < space.removable_tol()) {
    constexpr std::size_t order = detail::kNearExtra + 2;
    Cplx j0[order], j1[order], num[order];
    detail::s_taylor(space, gamma0, wbar, j0);
    detail::s_taylor(space, g1, wbar, j1);
    for (std::size_t k = 0; k < order; ++k) num[k] = j1[k] * a0 - a1 * j0[k];
    return detail::quotient_value_near(num, t) / kPi;
  }
  const Cplx num = s_gamma(space, g1, z) * a0 - a1 * s_gamma(space, gamma0, z);
  return num / (kPi * t);
}

}  // namespace dbscale
