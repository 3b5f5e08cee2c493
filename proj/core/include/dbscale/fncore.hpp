#pragma once

// Entire-function representation over a Hermite-Biehler realization:
// expression trees, the reproducing kernel and the s_gamma family.

#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "dbscale/errors.hpp"
#include "dbscale/ipengine.hpp"

namespace dbscale {

using Cplx = std::complex<double>;

inline constexpr Cplx kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Hermite-Biehler function e(z) generating a space B(e).
///
/// PaleyWiener(a): e(z) = exp(-i a z).
/// Shifted(PaleyWiener(a)): e(z) = (z + i) exp(-i a z).
class HbRealization {
 public:
  enum class Kind { PaleyWiener, Shifted };

  static HbRealization paley_wiener(double a);
  /// Multiplies the base by (z + i). Nesting depth is limited to one.
  static HbRealization shifted(const HbRealization& base);

  Kind kind() const noexcept { return kind_; }
  double bandwidth() const noexcept { return a_; }

  Cplx e(Cplx z) const;
  Cplx e_sharp(Cplx z) const;

  /// Taylor coefficients about z: out[k] = e^{(k)}(z) / k!.
  void e_taylor(Cplx z, std::span<Cplx> out) const;
  void e_sharp_taylor(Cplx z, std::span<Cplx> out) const;

  std::string describe() const;

 private:
  HbRealization(Kind kind, double a) : kind_(kind), a_(a) {}

  Kind kind_;
  double a_;
};

struct HbCheck {
  bool holds = false;
  double worst_margin = 0.0;  // min over samples of |e(z)| - |e(conj z)|
};

/// Checks |e(z)| > |e(conj z)| at every sample (all samples need Im z > 0).
HbCheck hb_verify(const HbRealization& realization, std::span<const Cplx> samples);

/// 20 x 20 grid on [-3, 3] x (0, 3].
std::vector<Cplx> standard_hb_grid();

namespace detail {
struct Node;
struct SamplingCache;
}  // namespace detail

class DbSpace;

/// Immutable expression tree for an entire function.
///
/// Atoms (e, e#, s_gamma, k(., w)) are evaluated against the DbSpace passed
/// at evaluation time. A DiffQuotient node represents
/// (term(z) - c * pivot(z)) / (z - w) and requires term(w) = c * pivot(w).
class EntireFn {
 public:
  enum class Kind { E, ESharp, S, Kernel, User, LinComb, MulAffine, DiffQuotient };

  /// Fills out[k] = f^{(k)}(z) / k!.
  using TaylorFn = std::function<void(Cplx z, std::span<Cplx> out)>;

  /// The zero function.
  EntireFn();

  static EntireFn e();
  static EntireFn e_sharp();
  static EntireFn s(double gamma);
  static EntireFn kernel(Cplx w);
  /// Closed-form user function. Without `taylor`, derivatives come from a
  /// Cauchy contour rule around the evaluation point.
  static EntireFn user(std::string label, std::function<Cplx(Cplx)> eval,
                       TaylorFn taylor = {});
  static EntireFn lin_comb(std::vector<Cplx> coeffs, std::vector<EntireFn> terms);
  /// (z - w) * term(z).
  static EntireFn mul_affine(Cplx w, EntireFn term);
  /// (term(z) - c * pivot(z)) / (z - w); throws RemovabilityViolation if
  /// |term(w) - c pivot(w)| exceeds the space's removable tolerance.
  static EntireFn diff_quotient(const DbSpace& space, EntireFn term, Cplx c,
                                EntireFn pivot, Cplx w);

  Kind kind() const noexcept;
  bool is_zero() const noexcept;
  /// Number of nodes in the tree (shared subtrees counted each time).
  std::size_t size() const;
  std::string describe() const;

  const detail::Node& node() const noexcept { return *node_; }

  friend EntireFn operator+(const EntireFn& f, const EntireFn& g);
  friend EntireFn operator-(const EntireFn& f, const EntireFn& g);
  friend EntireFn operator*(Cplx c, const EntireFn& f);

  // Builds a DiffQuotient without evaluating the removability condition.
  // Used by rewrites such as sharp() that preserve it exactly.
  static EntireFn unchecked_diff_quotient(EntireFn term, Cplx c, EntireFn pivot, Cplx w);

 private:
  explicit EntireFn(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::Node> node_;
};

struct SpaceOptions {
  double removable_tol = 1e-6;  // switch radius for removable singularities
  double im_guard = 10.0;       // largest |Im z| accepted by fn_eval
  IpEngine engine{};
};

/// A de Branges space B(e): realization plus numerical settings.
class DbSpace {
 public:
  explicit DbSpace(HbRealization realization, SpaceOptions options = {});

  static DbSpace paley_wiener(double a, SpaceOptions options = {});
  static DbSpace shifted_paley_wiener(double a, SpaceOptions options = {});

  const HbRealization& realization() const noexcept { return realization_; }
  double bandwidth() const noexcept { return realization_.bandwidth(); }
  double removable_tol() const noexcept { return options_.removable_tol; }
  double im_guard() const noexcept { return options_.im_guard; }
  const IpEngine& engine() const noexcept { return options_.engine; }
  const SpaceOptions& options() const noexcept { return options_; }

  /// Same space (sharing cached sampling nodes) with another engine.
  DbSpace with_engine(const IpEngine& engine) const;

  detail::SamplingCache& sampling_cache() const { return *cache_; }

 private:
  HbRealization realization_;
  SpaceOptions options_;
  std::shared_ptr<detail::SamplingCache> cache_;
};

/// f(z). Throws OverflowGuard when |Im z| exceeds the space's guard.
Cplx fn_eval(const EntireFn& f, const DbSpace& space, Cplx z);
Cplx fn_derivative(const EntireFn& f, const DbSpace& space, Cplx z);
/// out[k] = f^{(k)}(z) / k! for k < out.size().
void fn_taylor(const EntireFn& f, const DbSpace& space, Cplx z, std::span<Cplx> out);

/// k(z, w) from the (e, e#) formula, with the derivative branch for z ~ conj(w).
Cplx kernel(const DbSpace& space, Cplx z, Cplx w);

/// s_gamma(z) = (i/2)[e^{i gamma} e(z) - e^{-i gamma} e#(z)] for any real gamma.
Cplx s_gamma(const DbSpace& space, double gamma, Cplx z);

/// k(z, w) written through s_{gamma0} and s_{gamma0 + pi/2}.
Cplx kernel_via_s(const DbSpace& space, double gamma0, Cplx z, Cplx w);

/// f#(z) = conj(f(conj z)) as a structural rewrite.
EntireFn sharp(const EntireFn& f);

/// Reduces gamma into [0, pi).
double reduce_gamma(double gamma) noexcept;

}  // namespace dbscale
