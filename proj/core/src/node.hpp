#pragma once

#include <span>
#include <string>
#include <vector>

#include "dbscale/fncore.hpp"

namespace dbscale::detail {

// Extra Taylor orders requested from the children of a quotient node whose
// evaluation point lies within distance 1 of its pivot. The tiny variant is
// used inside the removable-singularity radius, where |h|^5 is already far
// below double precision.
inline constexpr int kNearExtra = 4;
inline constexpr int kMidExtra = 28;

struct Node {
  EntireFn::Kind kind = EntireFn::Kind::LinComb;
  double gamma = 0.0;            // S
  Cplx point{};                  // Kernel w, MulAffine shift, DiffQuotient pivot point
  Cplx coeff{};                  // DiffQuotient c
  std::vector<Cplx> coeffs;      // LinComb
  std::vector<EntireFn> terms;   // LinComb terms; MulAffine {term}; DiffQuotient {term, pivot}
  std::string label;             // User
  std::function<Cplx(Cplx)> user_eval;
  EntireFn::TaylorFn user_taylor;
};

Cplx eval_node(const Node& node, const DbSpace& space, Cplx z);
void taylor_node(const Node& node, const DbSpace& space, Cplx z, std::span<Cplx> out);

// Value of N(z) / (z - p) at z = p + h from the Taylor coefficients of N
// about p. N[0] is taken to be zero.
Cplx quotient_value_near(std::span<const Cplx> n_at_pivot, Cplx h);

// Taylor coefficients of N(z) / (z - p) about p + h, from the Taylor
// coefficients of N about p. Needs n_at_pivot.size() > out.size().
void quotient_taylor_near(std::span<const Cplx> n_at_pivot, Cplx h, std::span<Cplx> out);

// Taylor coefficients of N(z) / (z - p) about z = p + h, from those of N
// about z. Stable for |h| >= 1. Sizes must match.
void quotient_taylor_far(std::span<const Cplx> n_at_z, Cplx h, std::span<Cplx> out);

}  // namespace dbscale::detail
