#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dbscale/fncore.hpp"

namespace dbscale {

HbRealization HbRealization::paley_wiener(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::InvalidArgument, "Paley-Wiener bandwidth must be positive");
  }
  return HbRealization(Kind::PaleyWiener, a);
}

HbRealization HbRealization::shifted(const HbRealization& base) {
  if (base.kind_ == Kind::Shifted) {
    throw Error(ErrorCode::InvalidArgument, "Shifted realization nests at most once");
  }
  return HbRealization(Kind::Shifted, base.a_);
}

Cplx HbRealization::e(Cplx z) const {
  // exp(-i a z) = exp(a Im z - i a Re z)
  const Cplx base = std::exp(Cplx(a_ * z.imag(), -a_ * z.real()));
  return kind_ == Kind::Shifted ? (z + kI) * base : base;
}

Cplx HbRealization::e_sharp(Cplx z) const { return std::conj(e(std::conj(z))); }

void HbRealization::e_taylor(Cplx z, std::span<Cplx> out) const {
  if (out.empty()) return;
  const Cplx step(0.0, -a_);
  Cplx c = std::exp(Cplx(a_ * z.imag(), -a_ * z.real()));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = c;
    c *= step / static_cast<double>(k + 1);
  }
  if (kind_ == Kind::Shifted) {
    const Cplx shift = z + kI;
    for (std::size_t k = out.size(); k-- > 0;) {
      out[k] = shift * out[k] + (k > 0 ? out[k - 1] : Cplx{});
    }
  }
}

void HbRealization::e_sharp_taylor(Cplx z, std::span<Cplx> out) const {
  e_taylor(std::conj(z), out);
  for (auto& c : out) c = std::conj(c);
}

std::string HbRealization::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == Kind::Shifted) {
    os << "Shifted(PaleyWiener(a=" << a_ << "))";
  } else {
    os << "PaleyWiener(a=" << a_ << ")";
  }
  return os.str();
}

HbCheck hb_verify(const HbRealization& realization, std::span<const Cplx> samples) {
  if (samples.empty()) {
    throw Error(ErrorCode::EmptySampleSet, "hb_verify needs at least one sample");
  }
  HbCheck check{true, std::numeric_limits<double>::infinity()};
  for (const Cplx z : samples) {
    if (!(z.imag() > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "hb_verify samples must lie in the upper half-plane");
    }
    const double margin = std::abs(realization.e(z)) - std::abs(realization.e(std::conj(z)));
    check.worst_margin = std::min(check.worst_margin, margin);
    if (!(margin > 0.0)) check.holds = false;
  }
  return check;
}

std::vector<Cplx> standard_hb_grid() {
  std::vector<Cplx> grid;
  grid.reserve(400);
  for (int i = 0; i < 20; ++i) {
    const double x = -3.0 + 6.0 * i / 19.0;
    for (int j = 1; j <= 20; ++j) grid.emplace_back(x, 3.0 * j / 20.0);
  }
  return grid;
}

double reduce_gamma(double gamma) noexcept {
  double g = std::fmod(gamma, kPi);
  if (g < 0.0) g += kPi;
  if (g >= kPi) g -= kPi;
  return g;
}

}  // namespace dbscale
