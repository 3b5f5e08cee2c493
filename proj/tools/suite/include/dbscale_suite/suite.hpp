#pragma once

// Verification suite shared by the `dbscale` command-line driver and the
// acceptance test. Every check produces a CheckRecord tagged with the
// acceptance criterion (1-16) it belongs to.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbscale/fncore.hpp"

namespace dbscale::suite {

enum class Format { Auto, Json, Csv };

struct RunConfig {
  double a = kPi;
  double gamma = kPi / 4.0;
  double window_lo = -5.0;
  double window_hi = 5.0;
  double tol = 1e-8;
  // When set, `tol` replaces the per-check tolerance of every error-type
  // record. Predicate records (inequalities, monotonicity) are unaffected.
  bool tol_override = false;
  int grid_n = 41;
  std::uint64_t seed = 1;
  std::vector<int> only;  // criteria to run; empty runs all sixteen
  std::string out;  // empty selects stdout
  Format format = Format::Auto;

  /// Throws Error(InvalidArgument) on a > 0, tol > 0, grid_n >= 3, lo < hi
  /// violations and on criteria outside 1-16.
  void validate() const;
};

struct CheckRecord {
  std::string check_id;
  int criterion = 0;
  nlohmann::json params = nlohmann::json::object();
  double max_abs_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  std::string note;
};

struct CriterionInfo {
  int id;
  const char* title;
};

/// The sixteen acceptance criteria, in order.
const std::vector<CriterionInfo>& criteria();

/// Worker count: DBSCALE_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int pool_size();

/// Runs every check and returns the records sorted by check_id. A check
/// that throws yields a failing record carrying the message.
std::vector<CheckRecord> run_verify(const RunConfig& config, int threads = 0);

/// True iff every record of the criterion passed (and there is at least one).
bool criterion_passed(const std::vector<CheckRecord>& records, int criterion);

nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const CheckRecord& record);
/// {config, records, summary}.
nlohmann::json report_json(const RunConfig& config, const std::vector<CheckRecord>& records);
std::string records_csv(const std::vector<CheckRecord>& records);

/// %.17g formatting used by every CSV writer.
std::string format_double(double x);

}  // namespace dbscale::suite
