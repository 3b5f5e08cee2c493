#include "dbscale_suite/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "checks.hpp"

namespace dbscale::suite {

void RunConfig::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "--a must be positive");
  if (!std::isfinite(gamma)) throw Error(ErrorCode::InvalidArgument, "--gamma must be finite");
  if (!(window_lo < window_hi) || !std::isfinite(window_lo) || !std::isfinite(window_hi)) {
    throw Error(ErrorCode::InvalidArgument, "--window needs LO < HI");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
  if (grid_n < 3) throw Error(ErrorCode::InvalidArgument, "--grid-n must be at least 3");
  for (const int c : only) {
    if (c < 1 || c > 16) throw Error(ErrorCode::InvalidArgument, "--criteria takes values 1-16");
  }
}

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> list = {
      {1, "kernel from e and from the s-family agree"},
      {2, "reproducing property under both inner-product engines"},
      {3, "s_gamma as a rotation of s_0 and s_pi/2"},
      {4, "spectra of S_gamma and interlacing"},
      {5, "resolvent and Cayley identities"},
      {6, "Cayley unitarity and conjugation isometries"},
      {7, "k+2 reproducing kernel"},
      {8, "duality pairing and Assoc B round trip"},
      {9, "dom(S_pi/2) is not dense in F+1"},
      {10, "Q-function forms and Herglotz property"},
      {11, "Krein resolvent formula"},
      {12, "alternative description of dom(S_gamma)"},
      {13, "boundary functional vanishes exactly on dom(S)"},
      {14, "rank-one perturbation at pairing level"},
      {15, "Paley-Wiener counterexample"},
      {16, "cyclicity of the kernel family"},
  };
  return list;
}

int pool_size() {
  if (const char* env = std::getenv("DBSCALE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min(n, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CheckRecord> run_verify(const RunConfig& config, int threads) {
  config.validate();
  std::vector<detail::Task> tasks;
  detail::add_function_tasks(tasks);
  detail::add_operator_tasks(tasks);
  detail::add_scale_tasks(tasks);
  detail::add_perturbation_tasks(tasks);
  if (!config.only.empty()) {
    std::erase_if(tasks, [&](const detail::Task& t) {
      return std::find(config.only.begin(), config.only.end(), t.criterion) == config.only.end();
    });
  }

  const detail::Ctx ctx{config};
  std::vector<detail::Records> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const auto start = std::chrono::steady_clock::now();
      detail::Records recs;
      try {
        recs = tasks[t].run(ctx);
      } catch (const std::exception& e) {
        CheckRecord r;
        r.check_id = tasks[t].id;
        r.criterion = tasks[t].criterion;
        r.max_abs_err = INFINITY;
        r.pass = false;
        r.note = e.what();
        recs = {r};
      }
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      for (auto& r : recs) r.runtime_ms = ms / static_cast<double>(recs.size());
      results[t] = std::move(recs);
    }
  };
  const int n = std::max(1, threads > 0 ? threads : pool_size());
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<CheckRecord> out;
  for (auto& recs : results) {
    for (auto& r : recs) out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CheckRecord& x, const CheckRecord& y) { return x.check_id < y.check_id; });
  return out;
}

bool criterion_passed(const std::vector<CheckRecord>& records, int criterion) {
  bool any = false;
  for (const auto& r : records) {
    if (r.criterion != criterion) continue;
    any = true;
    if (!r.pass) return false;
  }
  return any;
}

namespace {

const char* format_name(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    default: return "auto";
  }
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"a", c.a},
          {"gamma", c.gamma},
          {"window", {c.window_lo, c.window_hi}},
          {"tol", c.tol},
          {"tol_override", c.tol_override},
          {"grid_n", c.grid_n},
          {"seed", c.seed},
          {"criteria", c.only},
          {"out", c.out},
          {"format", format_name(c.format)}};
}

nlohmann::json to_json(const CheckRecord& r) {
  nlohmann::json j = {{"check_id", r.check_id},
                      {"criterion", r.criterion},
                      {"params", r.params},
                      {"max_abs_err", r.max_abs_err},
                      {"tol", r.tol},
                      {"pass", r.pass},
                      {"runtime_ms", r.runtime_ms}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json report_json(const RunConfig& config, const std::vector<CheckRecord>& records) {
  nlohmann::json recs = nlohmann::json::array();
  std::size_t passed = 0;
  for (const auto& r : records) {
    recs.push_back(to_json(r));
    if (r.pass) ++passed;
  }
  nlohmann::json crit = nlohmann::json::array();
  for (const auto& c : criteria()) {
    if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), c.id) == config.only.end()) {
      continue;
    }
    crit.push_back({{"id", c.id}, {"title", c.title}, {"pass", criterion_passed(records, c.id)}});
  }
  return {{"config", to_json(config)},
          {"records", recs},
          {"summary",
           {{"total", records.size()},
            {"passed", passed},
            {"failed", records.size() - passed},
            {"all_pass", passed == records.size()},
            {"criteria", crit}}}};
}

std::string records_csv(const std::vector<CheckRecord>& records) {
  std::ostringstream os;
  os << "check_id,criterion,max_abs_err,tol,pass,runtime_ms,params,note\n";
  for (const auto& r : records) {
    os << r.check_id << ',' << r.criterion << ',' << format_double(r.max_abs_err) << ','
       << format_double(r.tol) << ',' << (r.pass ? "true" : "false") << ','
       << format_double(r.runtime_ms) << ',' << csv_quote(r.params.dump()) << ','
       << csv_quote(r.note) << '\n';
  }
  return os.str();
}

namespace detail {

std::mt19937_64 Ctx::rng(const std::string& id) const {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return std::mt19937_64(h ^ (config.seed * 0x9e3779b97f4a7c15ull));
}

CheckRecord error_record(std::string id, int criterion, nlohmann::json params, double err,
                         double tol) {
  CheckRecord r;
  r.check_id = std::move(id);
  r.criterion = criterion;
  r.params = std::move(params);
  r.max_abs_err = err;
  r.tol = tol;
  r.pass = err <= tol;
  return r;
}

CheckRecord predicate_record(std::string id, int criterion, nlohmann::json params, double value,
                             double threshold, bool pass, std::string note) {
  CheckRecord r;
  r.check_id = std::move(id);
  r.criterion = criterion;
  r.params = std::move(params);
  r.params["value"] = value;
  r.max_abs_err = value;
  r.tol = threshold;
  r.pass = pass;
  r.note = std::move(note);
  return r;
}

nlohmann::json cplx_json(Cplx z) { return {z.real(), z.imag()}; }

std::vector<NamedSpace> primary_spaces(const RunConfig& config) {
  return {{"pw", DbSpace::paley_wiener(config.a)},
          {"shifted", DbSpace::shifted_paley_wiener(config.a)}};
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Cplx random_point(std::mt19937_64& rng, double re, double im) {
  const double x = uniform(rng, -re, re);
  const double y = uniform(rng, -im, im);
  return {x, y};
}

Cplx random_nonreal(std::mt19937_64& rng) {
  const double x = uniform(rng, -2.0, 2.0);
  const double y = uniform(rng, 0.2, 1.5);
  return {x, uniform(rng, 0.0, 1.0) < 0.5 ? -y : y};
}

EntireFn random_b_function(std::mt19937_64& rng, int terms) {
  std::vector<Cplx> coeffs;
  std::vector<EntireFn> fns;
  for (int t = 0; t < terms; ++t) {
    const Cplx c = random_point(rng, 1.0, 1.0);
    coeffs.push_back(c);
    fns.push_back(EntireFn::kernel(random_point(rng, 2.0, 1.0)));
  }
  return EntireFn::lin_comb(std::move(coeffs), std::move(fns));
}

std::vector<Cplx> grid9() {
  std::vector<Cplx> g;
  for (int j = 0; j < 9; ++j) {
    const double im = j % 3 == 0 ? 0.0 : (j % 3 == 1 ? 0.3 : -0.3);
    g.emplace_back(-2.0 + 0.5 * j, im);
  }
  return g;
}

std::vector<double> gamma_grid(const RunConfig& config) {
  std::vector<double> g = {kPi / 6.0, kPi / 4.0, kPi / 3.0, 2.0 * kPi / 3.0, 3.0 * kPi / 4.0};
  const double c = reduce_gamma(config.gamma);
  const bool admissible = c > 1e-6 && std::abs(c - kPi / 2.0) > 1e-6;
  const bool fresh = std::none_of(g.begin(), g.end(), [&](double x) { return std::abs(x - c) < 1e-9; });
  if (admissible && fresh) g.push_back(c);
  return g;
}

}  // namespace detail

}  // namespace dbscale::suite
