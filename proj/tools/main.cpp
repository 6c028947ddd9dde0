// Command-line front end: config ingestion, experiment orchestration, JSON/CSV
// report emission. Exit codes: 0 = Holds/success, 1 = Fails (with
// certificate), 2 = Undetermined, 3 = usage error.

#include "toruspec/microlocal.hpp"
#include "toruspec/serialization.hpp"
#include "toruspec/util.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>

namespace ts = toruspec;

namespace {

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content << "\n";
  else
    ts::write_text_file(out_path, content);
}

int status_exit(ts::Status s) {
  switch (s) {
    case ts::Status::Holds: return 0;
    case ts::Status::Fails: return 1;
    default: return 2;
  }
}

ts::FourierField random_tapered_field(int N, int window, double sigma, std::mt19937_64& rng) {
  ts::FourierField u(N, window);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> xid(N);
  for (long idx = 0; idx < u.count(); ++idx) {
    const std::vector<int> xi = u.xi_of(idx);
    double r2 = 0;
    for (int v : xi) r2 += static_cast<double>(v) * v;
    const double amp = std::exp(-r2 / (2.0 * sigma * sigma));
    u.coeffs()(idx) = std::complex<double>(gauss(rng), gauss(rng)) * amp;
  }
  return u;
}

struct Options {
  std::string system_path, field_path, alphas_path, rhs_path, out_path;
  std::string format = "json";
  std::string symbol, op, point;
  std::int64_t xi_max = 256;
  int t_window = 32;
  std::int64_t xi_window = 16;
  double divisor_floor = 1e-8;
  int fan_resolution = 16;
  double k_max = 8.0;
  unsigned seed = 1;
  int depth = 4;
  int window = 64;
  double threshold = 8.0;
  int random_fields = 5;
  bool cross_validate = false;
};

std::vector<double> parse_point(const std::string& s, int n) {
  std::vector<double> p;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) p.push_back(std::stod(item));
  if (static_cast<int>(p.size()) != n) throw std::invalid_argument("point dimension mismatch");
  return p;
}

int run_classify(const Options& o) {
  const ts::SystemSpec sys = ts::load_system(o.system_path);
  const ts::ClassifyResult res = ts::classify(sys, ts::Int(o.xi_max));
  ts::Json doc;
  doc["system"] = ts::to_json(sys);
  doc["xi_max"] = o.xi_max;
  doc["verdicts"] = ts::to_json(res);
  if (o.cross_validate) {
    const ts::CrossValidationReport cv =
        ts::cross_validate(sys, ts::FrequencyWindow{o.xi_window, o.t_window}, ts::Int(o.xi_max),
                           o.seed);
    ts::Json checks = ts::Json::array();
    for (const auto& c : cv.checks)
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    doc["cross_validation"] = std::move(checks);
  }
  emit(o.out_path, doc.dump(2));
  return status_exit(res.get(ts::Property::GH_X).status);
}

int run_scan(const Options& o) {
  const ts::Json ja = ts::Json::parse(ts::read_text_file(o.alphas_path));
  std::vector<ts::ExactReal> alphas;
  for (const ts::Json& a : ja) alphas.push_back(ts::exact_real_from_json(a));
  const ts::SaVerdict sa = ts::classify_sa(alphas, ts::Int(o.xi_max));
  const ts::GsVerdict gs = ts::gs_condition_check(alphas, ts::Int(o.xi_max));
  if (o.format == "csv") {
    emit(o.out_path, ts::scan_table_csv(sa.scan));
  } else {
    ts::Json doc;
    doc["sa"] = ts::to_json(sa);
    doc["gs"] = ts::to_json(gs);
    emit(o.out_path, doc.dump(2));
  }
  switch (sa.status) {
    case ts::SaStatus::NotSA: return 0;  // global hypoellipticity side holds
    case ts::SaStatus::SA: return 1;
    default: return 2;
  }
}

int run_solve(const Options& o) {
  const ts::SystemSpec sys = ts::load_system(o.system_path);
  const ts::Json jr = ts::Json::parse(ts::read_text_file(o.rhs_path));
  std::vector<ts::PartialFourierField> rhs;
  for (const ts::Json& f : jr) rhs.push_back(ts::field_from_json(f));
  ts::SolveOptions sopts;
  sopts.divisor_floor = o.divisor_floor;
  auto [u, report] =
      ts::solve_system(rhs, sys, ts::FrequencyWindow{o.xi_window, o.t_window}, sopts);
  ts::Json doc;
  doc["solution"] = ts::to_json(u);
  doc["report"] = ts::to_json(report);
  try {
    doc["decay"] = ts::to_json(ts::decay_report(u, ts::DecayMode::sup_t(), o.threshold));
  } catch (const ts::InsufficientBandsError&) {
    doc["decay"] = nullptr;
  }
  emit(o.out_path, doc.dump(2));
  return report.obstructions.empty() ? 0 : 1;
}

int run_counterexample(const Options& o) {
  const ts::SystemSpec sys = ts::load_system(o.system_path);
  const ts::ClassifyResult res = ts::classify(sys, ts::Int(o.xi_max));
  const ts::Verdict& gh = res.get(ts::Property::GH_X);
  if (gh.status == ts::Status::Holds) {
    emit(o.out_path, ts::Json{{"message", "GH holds; no counterexample exists"}}.dump(2));
    return 0;
  }
  if (gh.status == ts::Status::Undetermined || !gh.sa || !gh.sa->witness) {
    emit(o.out_path, ts::Json{{"message", "undetermined; no validated witness"}}.dump(2));
    return 2;
  }
  const ts::CounterexampleResult ce = ts::build_counterexample(
      *gh.sa->witness, sys, o.depth, ts::FrequencyWindow{o.xi_window, o.t_window});
  ts::Json doc;
  doc["witness"] = ts::to_json(*gh.sa->witness);
  ts::Json levels = ts::Json::array();
  for (const ts::CounterexampleLevel& lv : ce.levels) {
    ts::Json jl;
    jl["nu"] = lv.nu;
    jl["xi"] = lv.xi.str();
    jl["sup_u"] = lv.sup_u;
    jl["xju_sup"] = lv.xju_sup;
    jl["in_field"] = lv.in_field;
    levels.push_back(std::move(jl));
  }
  doc["levels"] = std::move(levels);
  doc["u_decay"] = ts::to_json(ce.u_decay);
  ts::Json xdec = ts::Json::array();
  for (const ts::DecayReport& r : ce.xju_decay) xdec.push_back(ts::to_json(r));
  doc["xju_decay"] = std::move(xdec);
  doc["field"] = ts::to_json(ce.u);
  emit(o.out_path, doc.dump(2));
  return 1;  // a validated counterexample certifies GH Fails
}

int run_decay(const Options& o) {
  const ts::PartialFourierField u = ts::load_field(o.field_path);
  ts::DecayMode mode = ts::DecayMode::sup_t();
  if (!o.point.empty()) mode = ts::DecayMode::at_point(parse_point(o.point, u.n()));
  const ts::DecayReport rep = ts::decay_report(u, mode, o.threshold);
  if (o.format == "csv")
    emit(o.out_path, ts::decay_csv(rep));
  else
    emit(o.out_path, ts::to_json(rep).dump(2));
  switch (rep.verdict) {
    case ts::DecayVerdict::RapidDecay: return 0;
    case ts::DecayVerdict::PolynomialGrowth: return 1;
    default: return 2;
  }
}

int run_microlocal(const Options& o) {
  if (o.op == "check-symbol") {
    ts::Json doc;
    try {
      const ts::DiscreteSymbol s = ts::restrict_classical_symbol(o.symbol, 2, o.window);
      const ts::SeminormCheck chk = ts::symbol_class_check(s, o.window);
      doc["symbol"] = o.symbol;
      doc["in_class"] = true;
      ts::Json rows = ts::Json::array();
      for (const auto& r : chk.rows)
        rows.push_back({{"alpha", r.alpha_total},
                        {"beta", r.beta_total},
                        {"inner_max", r.inner_max},
                        {"outer_max", r.outer_max}});
      doc["seminorms"] = std::move(rows);
      emit(o.out_path, doc.dump(2));
      return 0;
    } catch (const ts::OutOfClassError& e) {
      doc["symbol"] = o.symbol;
      doc["in_class"] = false;
      doc["why"] = e.what();
      emit(o.out_path, doc.dump(2));
      return 1;
    }
  }
  if (o.op == "inclusion") {
    std::mt19937_64 rng(o.seed);
    const ts::DiscreteSymbol s = ts::make_catalogue_symbol(o.symbol, 2);
    const ts::Cone gamma = ts::Cone::around({1.0, 0.0}, 1.0);
    const ts::Cone gamma_prime = ts::Cone::around({1.0, 0.0}, 0.4);
    ts::Json results = ts::Json::array();
    bool ok = true;
    for (int i = 0; i < o.random_fields; ++i) {
      const ts::FourierField u = random_tapered_field(2, o.window, o.window / 6.0, rng);
      try {
        const ts::InclusionReport rep = ts::verify_microlocal_inclusion(s, u, gamma, gamma_prime,
                                                                        o.k_max);
        results.push_back({{"exponent_in", rep.exponent_in},
                           {"exponent_out", rep.exponent_out},
                           {"holds", rep.holds}});
      } catch (const ts::AssertionFailureError& e) {
        ok = false;
        results.push_back({{"error", e.what()}});
      }
    }
    emit(o.out_path, ts::Json{{"symbol", o.symbol}, {"checks", results}}.dump(2));
    return ok ? 0 : 1;
  }
  if (o.op == "singular") {
    const ts::PartialFourierField pf = ts::load_field(o.field_path);
    const ts::FourierField u = ts::embed_full(pf, o.window);
    const ts::SingularDirectionReport rep =
        ts::singular_directions(u, o.fan_resolution, o.k_max);
    ts::Json dirs = ts::Json::array();
    for (const auto& d : rep.directions)
      dirs.push_back({{"axis", d.axis}, {"k_hat", d.k_hat}, {"singular", d.singular}});
    emit(o.out_path, ts::Json{{"directions", dirs}}.dump(2));
    return 0;
  }
  if (o.op == "cone-decay") {
    const ts::SystemSpec sys = ts::load_system(o.system_path);
    const ts::PartialFourierField u = ts::load_field(o.field_path);
    try {
      const ts::TEllipticConeReport rep = ts::t_elliptic_cone_decay(sys, u, o.k_max);
      ts::Json doc;
      doc["c"] = rep.c;
      doc["cone_decay"] = ts::to_json(rep.cone_decay);
      doc["pu_decay"] = ts::to_json(rep.pu_decay);
      emit(o.out_path, doc.dump(2));
      return 0;
    } catch (const ts::NoConeFoundError& e) {
      emit(o.out_path, ts::Json{{"error", e.what()}}.dump(2));
      return 1;
    }
  }
  if (o.op == "kernel-decay") {
    const ts::DiscreteSymbol s = ts::make_catalogue_symbol(o.symbol, 2);
    const auto rows = ts::measured_kernel_decay(s, o.window, static_cast<int>(o.k_max));
    ts::Json jr = ts::Json::array();
    for (const auto& r : rows)
      jr.push_back({{"kappa", r.kappa}, {"k", r.k}, {"D_k", r.d_k}});
    emit(o.out_path, ts::Json{{"symbol", o.symbol}, {"rows", jr}}.dump(2));
    return 0;
  }
  std::cerr << "unknown microlocal op: " << o.op << "\n";
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toruspec: global hypoellipticity and solvability analysis on the torus"};
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "decide GH/AGH/GS for a system");
  classify->add_option("--system", o.system_path, "system JSON file")->required();
  classify->add_option("--xi-max", o.xi_max, "scan depth (default 256)");
  classify->add_option("--t-window", o.t_window, "t-window for cross validation");
  classify->add_option("--xi-window", o.xi_window, "xi-window for cross validation");
  classify->add_flag("--cross-validate", o.cross_validate, "run the numeric cross checks");
  classify->add_option("--seed", o.seed, "seed for randomized cross checks");
  classify->add_option("--out", o.out_path, "output file (stdout when absent)");

  auto* scan = app.add_subcommand("scan", "simultaneous-approximability scan of exact reals");
  scan->add_option("--alphas", o.alphas_path, "JSON array of tagged exact reals")->required();
  scan->add_option("--xi-max", o.xi_max, "scan depth");
  scan->add_option("--format", o.format, "json|csv");
  scan->add_option("--out", o.out_path, "output file");

  auto* solve = app.add_subcommand("solve", "mode-by-mode solve of X_j u = f_j");
  solve->add_option("--system", o.system_path)->required();
  solve->add_option("--rhs", o.rhs_path, "JSON array of field snapshots")->required();
  solve->add_option("--t-window", o.t_window);
  solve->add_option("--xi-window", o.xi_window);
  solve->add_option("--divisor-floor", o.divisor_floor);
  solve->add_option("--threshold", o.threshold, "decay threshold for the report");
  solve->add_option("--out", o.out_path);

  auto* ce = app.add_subcommand("counterexample", "build the singular solution from a witness");
  ce->add_option("--system", o.system_path)->required();
  ce->add_option("--depth", o.depth, "witness depth (default 4)");
  ce->add_option("--xi-max", o.xi_max);
  ce->add_option("--t-window", o.t_window);
  ce->add_option("--xi-window", o.xi_window);
  ce->add_option("--out", o.out_path);

  auto* decay = app.add_subcommand("decay", "dyadic-band decay report of a field");
  decay->add_option("--field", o.field_path)->required();
  decay->add_option("--threshold", o.threshold, "RapidDecay threshold (default 8)");
  decay->add_option("--point", o.point, "base point t1,t2,... for the pointwise mode");
  decay->add_option("--format", o.format, "json|csv");
  decay->add_option("--out", o.out_path);

  auto* micro = app.add_subcommand("microlocal", "discrete symbol calculus operations");
  micro->add_option("--op", o.op, "check-symbol|inclusion|singular|cone-decay|kernel-decay")
      ->required();
  micro->add_option("--symbol", o.symbol, "catalogue symbol name");
  micro->add_option("--field", o.field_path);
  micro->add_option("--system", o.system_path);
  micro->add_option("--window", o.window, "frequency window (default 64)");
  micro->add_option("--fan-resolution", o.fan_resolution);
  micro->add_option("--k-max", o.k_max);
  micro->add_option("--seed", o.seed);
  micro->add_option("--random-fields", o.random_fields);
  micro->add_option("--out", o.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (classify->parsed()) return run_classify(o);
    if (scan->parsed()) return run_scan(o);
    if (solve->parsed()) return run_solve(o);
    if (ce->parsed()) return run_counterexample(o);
    if (decay->parsed()) return run_decay(o);
    if (micro->parsed()) return run_microlocal(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
