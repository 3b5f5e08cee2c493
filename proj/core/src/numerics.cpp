#include "dbscale/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "node.hpp"
#include "sampling_cache.hpp"

namespace dbscale {

IpEngine IpEngine::sampling(int truncation, double tol) {
  IpEngine e;
  e.method = Method::SamplingSeries;
  e.truncation = truncation;
  e.tol_ip = tol;
  e.validate();
  return e;
}

IpEngine IpEngine::quadrature(double half_width, double tol) {
  IpEngine e;
  e.method = Method::AdaptiveQuadrature;
  e.half_width = half_width;
  e.tol_ip = tol;
  e.validate();
  return e;
}

void IpEngine::validate() const {
  if (truncation < 8) throw Error(ErrorCode::InvalidArgument, "truncation N must be >= 8");
  if (!(half_width >= 10.0)) throw Error(ErrorCode::InvalidArgument, "half-width X must be >= 10");
  if (!(tol_ip > 0.0 && tol_ip <= 1e-4)) {
    throw Error(ErrorCode::InvalidArgument, "tol_ip must lie in (0, 1e-4]");
  }
  if (max_doublings < 1 || max_doublings > 12) {
    throw Error(ErrorCode::InvalidArgument, "max_doublings must lie in [1, 12]");
  }
}

namespace detail {

namespace {

double s0_real(const DbSpace& space, double x) { return s_gamma(space, 0.0, x).real(); }

}  // namespace

SamplingCache::Snapshot SamplingCache::take(const DbSpace& space, int count) {
  std::lock_guard<std::mutex> lock(mutex);
  const double a = space.bandwidth();
  const bool pw = space.realization().kind() == HbRealization::Kind::PaleyWiener;
  if (!initialised) {
    zero_is_node = pw;
    zero_weight = pw ? kPi / a : 0.0;
    initialised = true;
  }
  while (static_cast<int>(positive.size()) < count) {
    const double n = static_cast<double>(positive.size() + (pw ? 1 : 0));
    if (pw) {
      positive.push_back(n * kPi / a);
      positive_weight.push_back(kPi / a);
      continue;
    }
    // x sin(ax) - cos(ax) has one zero in (0, pi/2a) and one in each
    // (n pi/a, (n + 1/2) pi/a) for n >= 1.
    const double lo = n * kPi / a;
    const double hi = (n + 0.5) * kPi / a;
    auto f = [&](double x) { return s0_real(space, x); };
    boost::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::toms748_solve(
        f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    const double mu = 0.5 * (bracket.first + bracket.second);
    positive.push_back(mu);
    positive_weight.push_back(1.0 / kernel(space, mu, mu).real());
  }
  Snapshot snap{zero_is_node, zero_weight, pw ? 1 : 0,
                std::vector<double>(positive.begin(), positive.begin() + count),
                std::vector<double>(positive_weight.begin(), positive_weight.begin() + count)};
  return snap;
}

}  // namespace detail

namespace {

struct Points {
  std::vector<double> x;
  std::vector<double> w;
};

constexpr int kGaussOrder = 20;

double first_quadrature_half_width(const DbSpace& space, double requested) {
  // Whole periods of the 2a-frequency part keep the truncation error a
  // smooth function of 1/X, which the extrapolation relies on.
  const double period = 2.0 * kPi / space.bandwidth();
  return std::ceil(requested / period - 1e-12) * period;
}

void add_panels(const DbSpace& space, double lo, double hi, Points& pts) {
  using Rule = boost::math::quadrature::gauss<double, kGaussOrder>;
  const double width = kPi / (2.0 * space.bandwidth());
  const int panels = static_cast<int>(std::llround((hi - lo) / width));
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      const double offsets[2] = {abscissa[i], -abscissa[i]};
      const int copies = abscissa[i] == 0.0 ? 1 : 2;
      for (int c = 0; c < copies; ++c) {
        const double x = mid + half * offsets[c];
        const double e = std::abs(space.realization().e(x));
        pts.x.push_back(x);
        pts.w.push_back(half * weights[i] / (e * e));
      }
    }
  }
}

// Points added at truncation level k (level 0 is the full first set).
Points level_points(const DbSpace& space, const IpEngine& engine, int k) {
  Points pts;
  if (engine.method == IpEngine::Method::SamplingSeries) {
    // Nodes up to index n_hi, the last one with half weight. The tail of
    // such a sum expands in odd powers of 1 / n_hi.
    const int n_hi = engine.truncation << k;
    const int n_lo = engine.truncation << (k == 0 ? 0 : k - 1);
    auto snap = space.sampling_cache().take(space, n_hi + 1);
    const int end = n_hi - snap.first_index;
    auto push = [&](int m, double scale) {
      pts.x.push_back(snap.nodes[m]);
      pts.w.push_back(scale * snap.weights[m]);
      pts.x.push_back(-snap.nodes[m]);
      pts.w.push_back(scale * snap.weights[m]);
    };
    int begin = 0;
    if (k == 0) {
      if (snap.zero_is_node) {
        pts.x.push_back(0.0);
        pts.w.push_back(snap.zero_weight);
      }
    } else {
      begin = n_lo - snap.first_index;
      push(begin, 0.5);
      ++begin;
    }
    for (int m = begin; m < end; ++m) push(m, 1.0);
    push(end, 0.5);
    return pts;
  }
  const double x0 = first_quadrature_half_width(space, engine.half_width);
  const double x_hi = x0 * std::ldexp(1.0, k);
  if (k == 0) {
    add_panels(space, -x0, x0, pts);
  } else {
    const double x_lo = x0 * std::ldexp(1.0, k - 1);
    add_panels(space, -x_hi, -x_lo, pts);
    add_panels(space, x_lo, x_hi, pts);
  }
  return pts;
}

const char* method_name(const IpEngine& engine) {
  return engine.method == IpEngine::Method::SamplingSeries ? "sampling series" : "quadrature";
}

// Extrapolated pairings of every (f, g) combination. Both engines truncate
// symmetrically (whole periods for quadrature, a half-weight end node for
// sampling), so the truncation error expands in odd powers of 1 / N or 1 / X
// and Richardson extrapolation removes those powers one at a time.
std::vector<IpResult> converge(const DbSpace& space, const IpEngine& engine,
                               const std::vector<EntireFn>& fs, const std::vector<EntireFn>& gs) {
  // Distinct functions by node identity, so f == g is sampled once.
  std::vector<const detail::Node*> unique;
  std::unordered_map<const detail::Node*, std::size_t> index;
  auto slot = [&](const EntireFn& f) {
    auto [it, inserted] = index.try_emplace(&f.node(), unique.size());
    if (inserted) unique.push_back(&f.node());
    return it->second;
  };
  std::vector<std::size_t> fi, gi;
  for (const auto& f : fs) fi.push_back(slot(f));
  for (const auto& g : gs) gi.push_back(slot(g));

  const std::size_t pairs = fs.size() * gs.size();
  const int max_levels = engine.max_doublings + 1;
  // rows[level][pair]: cumulative sums at each truncation level.
  std::vector<std::vector<Cplx>> rows;
  std::vector<Cplx> partial(pairs);
  std::vector<IpResult> results(pairs);
  std::vector<std::vector<Cplx>> values(unique.size());

  double worst = 0.0;
  for (int k = 0; k < max_levels; ++k) {
    const Points pts = level_points(space, engine, k);
    for (std::size_t u = 0; u < unique.size(); ++u) {
      values[u].resize(pts.x.size());
      for (std::size_t p = 0; p < pts.x.size(); ++p) {
        values[u][p] = detail::eval_node(*unique[u], space, Cplx(pts.x[p], 0.0));
      }
    }
    for (std::size_t i = 0; i < fs.size(); ++i) {
      for (std::size_t j = 0; j < gs.size(); ++j) {
        const auto& fv = values[fi[i]];
        const auto& gv = values[gi[j]];
        Cplx acc{};
        for (std::size_t p = 0; p < pts.x.size(); ++p) acc += pts.w[p] * std::conj(fv[p]) * gv[p];
        partial[i * gs.size() + j] += acc;
      }
    }
    rows.push_back(partial);
    if (k == 0) continue;

    // Rebuild the extrapolation table from stored partial sums.
    worst = 0.0;
    bool all_ok = true;
    for (std::size_t q = 0; q < pairs; ++q) {
      std::vector<std::vector<Cplx>> t(k + 1);
      for (int r = 0; r <= k; ++r) {
        t[r].resize(r + 1);
        t[r][0] = rows[r][q];
        for (int m = 1; m <= r; ++m) {
          const double factor = std::ldexp(1.0, 2 * m - 1) - 1.0;
          t[r][m] = t[r][m - 1] + (t[r][m - 1] - t[r - 1][m - 1]) / factor;
        }
      }
      const Cplx est = t[k][k];
      // Smaller of the row and diagonal differences of the table.
      const double change = std::min(std::abs(est - t[k][k - 1]), std::abs(est - t[k - 1][k - 1]));
      results[q] = IpResult{est, change, k + 1};
      const double scaled = change / (1.0 + std::abs(est));
      worst = std::max(worst, scaled);
      if (!(scaled <= engine.tol_ip)) all_ok = false;
    }
    if (all_ok) return results;
  }
  std::ostringstream os;
  os << method_name(engine) << " did not settle to " << engine.tol_ip << " after "
     << engine.max_doublings << " doublings (relative change " << worst << ")";
  throw Error(ErrorCode::NonConvergence, os.str());
}

}  // namespace

IpResult inner_B_detail(const DbSpace& space, const EntireFn& f, const EntireFn& g) {
  return converge(space, space.engine(), {f}, {g}).front();
}

Cplx inner_B(const DbSpace& space, const EntireFn& f, const EntireFn& g) {
  return inner_B_detail(space, f, g).value;
}

double norm_B(const DbSpace& space, const EntireFn& f) {
  return std::sqrt(std::max(0.0, inner_B(space, f, f).real()));
}

std::vector<Cplx> inner_B_table(const DbSpace& space, const std::vector<EntireFn>& fs,
                                const std::vector<EntireFn>& gs) {
  std::vector<Cplx> out;
  if (fs.empty() || gs.empty()) return out;
  const auto results = converge(space, space.engine(), fs, gs);
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(r.value);
  return out;
}

std::vector<Cplx> weighted_integrals(const DbSpace& space, const EntireFn& f,
                                     const std::vector<EntireFn>& gs, double tol) {
  std::vector<Cplx> out;
  if (gs.empty()) return out;
  IpEngine engine = IpEngine::quadrature(space.engine().half_width, tol);
  engine.max_doublings = std::max(space.engine().max_doublings, 4);
  for (const auto& r : converge(space, engine, {f}, gs)) out.push_back(r.value);
  return out;
}

Cplx weighted_integral(const DbSpace& space, const EntireFn& f, const EntireFn& g, double tol) {
  return weighted_integrals(space, f, {g}, tol).front();
}

double RootWindow::effective_step(const DbSpace& space) const {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw Error(ErrorCode::InvalidArgument, "root window needs lo < hi");
  }
  const double gap = kPi / space.bandwidth();
  const double step = scan_step == 0.0 ? gap / 4.0 : scan_step;
  if (!(step > 0.0 && step < gap / 2.0)) {
    throw Error(ErrorCode::InvalidArgument, "scan step must lie in (0, pi/(2a))");
  }
  return step;
}

namespace {

struct Sample {
  double x;
  double v;
  double d;
};

Sample sample_s(const DbSpace& space, const EntireFn& s, double x) {
  Cplx jet[2];
  detail::taylor_node(s.node(), space, Cplx(x, 0.0), jet);
  return {x, jet[0].real(), jet[1].real()};
}

// Whether the cubic Hermite interpolant on [l, r] dips to the other side of
// zero, which signals a pair of zeros the scan cannot see.
bool hermite_crosses(const Sample& l, const Sample& r) {
  const double h = r.x - l.x;
  for (int i = 1; i < 16; ++i) {
    const double t = i / 16.0;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    const double p = h00 * l.v + h10 * h * l.d + h01 * r.v + h11 * h * r.d;
    if (p * l.v < 0.0) return true;
  }
  return false;
}

double refine(const DbSpace& space, const EntireFn& s, double lo, double hi) {
  auto value = [&](double x) { return sample_s(space, s, x).v; };
  boost::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      value, lo, hi, boost::math::tools::eps_tolerance<double>(40), iters);
  double x = 0.5 * (bracket.first + bracket.second);
  // Newton polish, kept inside the bracket.
  for (int it = 0; it < 3; ++it) {
    const Sample smp = sample_s(space, s, x);
    if (smp.v == 0.0 || smp.d == 0.0) break;
    const double next = x - smp.v / smp.d;
    if (!(next >= lo && next <= hi)) break;
    x = next;
  }
  return x;
}

}  // namespace

std::vector<double> find_zeros(const DbSpace& space, double gamma, const RootWindow& window) {
  const double step = window.effective_step(space);
  const EntireFn s = EntireFn::s(gamma);
  const int count = static_cast<int>(std::ceil((window.hi - window.lo) / step));
  std::vector<Sample> grid;
  grid.reserve(count + 1);
  for (int i = 0; i <= count; ++i) {
    const double x = i == count ? window.hi : window.lo + i * step;
    grid.push_back(sample_s(space, s, x));
  }
  std::vector<double> roots;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].v == 0.0) roots.push_back(grid[i].x);
    if (i + 1 == grid.size()) break;
    const Sample& l = grid[i];
    const Sample& r = grid[i + 1];
    if (l.v == 0.0 || r.v == 0.0) continue;
    if ((l.v < 0.0) != (r.v < 0.0)) {
      roots.push_back(refine(space, s, l.x, r.x));
    } else if (hermite_crosses(l, r)) {
      std::ostringstream os;
      os << "possible double zero in [" << l.x << ", " << r.x << "]; reduce the scan step";
      throw Error(ErrorCode::StepTooCoarse, os.str());
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || r - unique.back() > 1e-9) unique.push_back(r);
  }
  return unique;
}

}  // namespace dbscale
