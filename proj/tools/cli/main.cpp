// dbscale: command-line driver for the verification suite and for single
// computations (spectra, kernel tables, Q-function, Krein check,
// counterexample, scale norms).

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbscale/numerics.hpp"
#include "dbscale/operator.hpp"
#include "dbscale/perturbation.hpp"
#include "dbscale/scale.hpp"
#include "dbscale_suite/suite.hpp"

namespace {

using namespace dbscale;
using suite::Format;
using suite::RunConfig;
using suite::format_double;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Options {
  RunConfig config;
  std::vector<double> window{-5.0, 5.0};
  std::string space = "pw";
  std::vector<double> w{0.0, 1.0};
  double im = 1.0;
  int threads = 0;
};

DbSpace make_space(const Options& o) {
  return o.space == "shifted" ? DbSpace::shifted_paley_wiener(o.config.a) : DbSpace::paley_wiener(o.config.a);
}

std::vector<double> real_grid(const RunConfig& c) {
  std::vector<double> xs(static_cast<std::size_t>(c.grid_n));
  const double step = (c.window_hi - c.window_lo) / (c.grid_n - 1);
  for (int j = 0; j < c.grid_n; ++j) xs[static_cast<std::size_t>(j)] = c.window_lo + j * step;
  return xs;
}

json cplx(Cplx z) { return {z.real(), z.imag()}; }

struct Output {
  json document;      // used for JSON output
  std::string csv;    // used for CSV output
  Format natural;     // format chosen by Auto
  int exit_code = kExitOk;
};

Output run_verify(const Options& o) {
  const auto records = suite::run_verify(o.config, o.threads);
  bool ok = !records.empty();
  for (const auto& r : records) ok = ok && r.pass;
  return {suite::report_json(o.config, records), suite::records_csv(records), Format::Json,
          ok ? kExitOk : kExitFail};
}

Output run_spectrum(const Options& o) {
  const DbSpace space = make_space(o);
  const auto zeros = find_zeros(space, o.config.gamma, {o.config.window_lo, o.config.window_hi});
  std::ostringstream csv;
  csv << "gamma,index,zero\n";
  json rows = json::array();
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    csv << format_double(o.config.gamma) << ',' << k << ',' << format_double(zeros[k]) << '\n';
    rows.push_back({{"index", k}, {"zero", zeros[k]}});
  }
  return {{{"config", suite::to_json(o.config)}, {"space", o.space}, {"gamma", o.config.gamma}, {"zeros", rows}},
          csv.str(), Format::Csv};
}

Output run_kernel(const Options& o) {
  const DbSpace space = make_space(o);
  const Cplx w(o.w[0], o.w[1]);
  std::ostringstream csv;
  csv << "x,w_re,w_im,k_re,k_im\n";
  json rows = json::array();
  for (const double x : real_grid(o.config)) {
    const Cplx k = kernel(space, x, w);
    csv << format_double(x) << ',' << format_double(w.real()) << ',' << format_double(w.imag()) << ','
        << format_double(k.real()) << ',' << format_double(k.imag()) << '\n';
    rows.push_back({{"x", x}, {"k", cplx(k)}});
  }
  return {{{"config", suite::to_json(o.config)}, {"space", o.space}, {"w", cplx(w)}, {"values", rows}},
          csv.str(), Format::Csv};
}

Output run_qfunc(const Options& o) {
  const DbSpace space = make_space(o);
  std::ostringstream csv;
  csv << "w_re,w_im,definitional_re,definitional_im,closed_re,closed_im,abs_diff\n";
  json rows = json::array();
  for (const double x : real_grid(o.config)) {
    const Cplx w(x, o.im);
    const Cplx qd = qfunc(space, w, QForm::Definitional);
    const Cplx qc = qfunc(space, w, QForm::ClosedForm);
    csv << format_double(x) << ',' << format_double(o.im) << ',' << format_double(qd.real()) << ','
        << format_double(qd.imag()) << ',' << format_double(qc.real()) << ',' << format_double(qc.imag())
        << ',' << format_double(std::abs(qd - qc)) << '\n';
    rows.push_back({{"w", cplx(w)}, {"definitional", cplx(qd)}, {"closed_form", cplx(qc)}});
  }
  return {{{"config", suite::to_json(o.config)}, {"space", o.space}, {"values", rows}}, csv.str(), Format::Csv};
}

Output run_krein(const Options& o) {
  const DbSpace space = make_space(o);
  const ExtensionHandle half(space, kPi / 2.0);
  const std::vector<std::pair<std::string, EntireFn>> fs = {
      {"k(.,0)", EntireFn::kernel(0.0)},
      {"k(.,1+i)", EntireFn::kernel(Cplx(1.0, 1.0))},
      {"R(i)k(.,0.5)", domain_function(half, {EntireFn::kernel(0.5), kI})},
  };
  std::vector<Cplx> grid;
  for (const double x : real_grid(o.config)) grid.emplace_back(x, 0.0);
  const Cplx w(o.w[0], o.w[1]);
  std::vector<suite::CheckRecord> records;
  for (const QForm form : {QForm::ClosedForm, QForm::Definitional}) {
    const KreinData data = make_krein_data(space, o.config.gamma, form);
    const std::string fname = form == QForm::ClosedForm ? "closed_form" : "definitional";
    for (const auto& [label, f] : fs) {
      const KreinCheck c = krein_diff_check(space, data, w, f, grid);
      const json params = {{"gamma", data.gamma}, {"lambda", data.lambda}, {"w", cplx(w)}, {"f", label},
                           {"q_form", fname}, {"space", o.space}};
      suite::CheckRecord r{"krein.resolvent." + fname + "." + label, 11, params, c.resolvent.max_abs,
                           o.config.tol, c.resolvent.max_abs <= o.config.tol, 0.0, {}};
      records.push_back(r);
      r.check_id = "krein.denominator." + fname + "." + label;
      r.max_abs_err = c.denominator_residual;
      r.pass = c.denominator_residual <= o.config.tol;
      records.push_back(r);
    }
  }
  return {suite::report_json(o.config, records), suite::records_csv(records), Format::Json};
}

Output run_counterexample(const Options& o) {
  const CounterexampleReport r = counterexample_run(o.config.a);
  const std::vector<std::pair<std::string, double>> fields = {
      {"a", r.a},
      {"w0_re", r.w0.real()},
      {"w0_im", r.w0.imag()},
      {"abs_f_at_w0", std::abs(r.f_at_w0)},
      {"norm_phi_sq", r.norm_phi_sq},
      {"norm_eta_sq", r.norm_eta_sq},
      {"norm_phi_prime_sq", r.norm_phi_prime_sq},
      {"norm_eta_prime_sq", r.norm_eta_prime_sq},
      {"relative_gap", r.relative_gap},
      {"fourier_residual", r.fourier_residual},
      {"plancherel_ratio", r.plancherel_ratio},
  };
  json report = json::object();
  std::ostringstream csv;
  csv << "quantity,value\n";
  for (const auto& [k, v] : fields) {
    report[k] = v;
    csv << k << ',' << format_double(v) << '\n';
  }
  report["f_at_w0"] = cplx(r.f_at_w0);
  return {{{"config", suite::to_json(o.config)}, {"report", report}}, csv.str(), Format::Json};
}

Output run_norms(const Options& o) {
  const DbSpace space = make_space(o);
  const ExtensionHandle ext(space, o.config.gamma);
  const auto gamma_dict = default_gamma_dictionary(ext);
  const auto star_dict = default_star_dictionary(ext);
  const auto points = default_dictionary_points();
  std::ostringstream csv;
  csv << "element,w_re,w_im,resolvent_at,plus2,plusF,plain,minusF_lower,minus2_lower\n";
  json rows = json::array();
  for (std::size_t k = 0; k < gamma_dict.size(); ++k) {
    const ScaleNorms n = scale_norms(ext, gamma_dict[k], gamma_dict, star_dict);
    const Cplx w = points[k % points.size()];
    const Cplx at = gamma_dict[k].w;
    csv << k << ',' << format_double(w.real()) << ',' << format_double(w.imag()) << ','
        << (at.imag() > 0 ? "i" : "-i") << ',' << format_double(n.plus2) << ',' << format_double(n.plusF) << ','
        << format_double(n.plain) << ',' << format_double(n.minusF_lower) << ','
        << format_double(n.minus2_lower) << '\n';
    rows.push_back({{"element", k},
                     {"kernel_point", cplx(w)},
                     {"resolvent_at", cplx(at)},
                     {"plus2", n.plus2},
                     {"plusF", n.plusF},
                     {"plain", n.plain},
                     {"minusF_lower", n.minusF_lower},
                     {"minus2_lower", n.minus2_lower}});
  }
  return {{{"config", suite::to_json(o.config)}, {"space", o.space}, {"norms", rows}}, csv.str(), Format::Json};
}

int emit(const Options& o, const Output& out) {
  const Format f = o.config.format == Format::Auto ? out.natural : o.config.format;
  const std::string text = f == Format::Json ? out.document.dump(2) + "\n" : out.csv;
  if (o.config.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(o.config.out, std::ios::binary);
    if (!file || !(file << text)) {
      std::cerr << "dbscale: cannot write " << o.config.out << "\n";
      return kExitConfig;
    }
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Numerical toolkit for de Branges spaces and their Hilbert scale"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--a", o.config.a, "Bandwidth a > 0");
  app.add_option("--gamma", o.config.gamma, "Extension parameter gamma");
  app.add_option("--window", o.window, "Real window LO HI")->expected(2);
  app.add_option_function<double>(
      "--tol",
      [&](double t) {
        o.config.tol = t;
        o.config.tol_override = true;
      },
      "Tolerance; for verify it replaces every error-type threshold");
  app.add_option("--grid-n", o.config.grid_n, "Number of grid points (>= 3)");
  app.add_option("--seed", o.config.seed, "Seed for randomized check points");
  app.add_option("--criteria", o.config.only, "Restrict verify to these criteria (1-16)");
  app.add_option("--out", o.config.out, "Output file (default stdout)");
  const std::map<std::string, Format> formats = {{"json", Format::Json}, {"csv", Format::Csv}};
  app.add_option("--format", o.config.format, "json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--space", o.space, "Realization: pw or shifted")->check(CLI::IsMember({"pw", "shifted"}));
  app.add_option("--w", o.w, "Point RE IM for kernel and krein (default i)")->expected(2);
  app.add_option("--im", o.im, "Imaginary part of the qfunc grid (default 1)");
  app.add_option("--threads", o.threads, "Worker count for verify (default DBSCALE_THREADS or all cores)");

  std::map<std::string, Output (*)(const Options&)> commands = {
      {"verify", run_verify},          {"spectrum", run_spectrum},
      {"kernel", run_kernel},          {"qfunc", run_qfunc},
      {"krein", run_krein},            {"counterexample", run_counterexample},
      {"norms", run_norms},
  };
  const std::map<std::string, std::string> help = {
      {"verify", "Run the full identity suite; exit 1 if any check fails"},
      {"spectrum", "Zeros of s_gamma in the window (CSV)"},
      {"kernel", "k(x, w) on a real grid (CSV)"},
      {"qfunc", "Q-function on a line in the upper half-plane, both forms (CSV)"},
      {"krein", "Krein resolvent formula check at gamma and w (JSON)"},
      {"counterexample", "Paley-Wiener counterexample report (JSON)"},
      {"norms", "Scale norms of the default dictionary (JSON)"},
  };
  for (const auto& [name, fn] : commands) app.add_subcommand(name, help.at(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  o.config.window_lo = o.window[0];
  o.config.window_hi = o.window[1];
  try {
    o.config.validate();
    if (o.threads < 0) throw Error(ErrorCode::InvalidArgument, "--threads must be non-negative");
  } catch (const std::exception& e) {
    std::cerr << "dbscale: " << e.what() << "\n";
    return kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return emit(o, commands.at(name)(o));
  } catch (const Error& e) {
    std::cerr << "dbscale " << name << ": " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidArgument ? kExitConfig : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "dbscale " << name << ": " << e.what() << "\n";
    return kExitFail;
  }
}
