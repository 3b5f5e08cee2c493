#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dbscale/fncore.hpp"
#include "dbscale_suite/suite.hpp"

namespace dbscale::suite::detail {

struct Ctx {
  const RunConfig& config;

  double tol(double default_tol) const { return config.tol_override ? config.tol : default_tol; }
  /// Generator seeded from the run seed and the check id, so results do not
  /// depend on scheduling.
  std::mt19937_64 rng(const std::string& id) const;
};

using Records = std::vector<CheckRecord>;

struct Task {
  std::string id;  // used for failure records when the task throws
  int criterion;
  std::function<Records(const Ctx&)> run;
};

/// pass iff err <= tol (NaN fails).
CheckRecord error_record(std::string id, int criterion, nlohmann::json params, double err,
                         double tol);
/// Reports `value` against `threshold` with an explicit verdict.
CheckRecord predicate_record(std::string id, int criterion, nlohmann::json params, double value,
                             double threshold, bool pass, std::string note = {});

nlohmann::json cplx_json(Cplx z);

struct NamedSpace {
  std::string tag;
  DbSpace space;
};
/// PaleyWiener(a) and Shifted(PaleyWiener(a)) for the configured a.
std::vector<NamedSpace> primary_spaces(const RunConfig& config);

double uniform(std::mt19937_64& rng, double lo, double hi);
/// Uniform on [-re, re] x [-im, im].
Cplx random_point(std::mt19937_64& rng, double re = 2.0, double im = 1.5);
/// Imaginary part of modulus in [0.2, 1.5], random sign.
Cplx random_nonreal(std::mt19937_64& rng);
/// Random combination of `terms` kernels at random points.
EntireFn random_b_function(std::mt19937_64& rng, int terms = 3);

/// Nine points on [-2, 2] with small alternating imaginary offsets.
std::vector<Cplx> grid9();
/// {pi/6, pi/4, pi/3, 2pi/3, 3pi/4}, plus the configured gamma when it is a
/// different admissible value.
std::vector<double> gamma_grid(const RunConfig& config);

void add_function_tasks(std::vector<Task>& tasks);      // criteria 1-4
void add_operator_tasks(std::vector<Task>& tasks);      // criteria 5-7
void add_scale_tasks(std::vector<Task>& tasks);         // criteria 8, 9, 15
void add_perturbation_tasks(std::vector<Task>& tasks);  // criteria 10-14, 16

}  // namespace dbscale::suite::detail
