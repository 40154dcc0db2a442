#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "topent/coding.hpp"
#include "topent/coupled_expansion.hpp"
#include "topent/entropy_estimator.hpp"
#include "topent/errors.hpp"
#include "topent/json_io.hpp"
#include "topent/subshift.hpp"
#include "topent/system_model.hpp"
#include "topent/transition_matrix.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// 0 success/certified, 2 hypothesis failure, 3 bad input, 4 non-convergence.
constexpr int kExitHypothesis = 2;
constexpr int kExitInput = 3;
constexpr int kExitNoConvergence = 4;

int exit_code_for(topent::ErrorCode code) {
  switch (code) {
    case topent::ErrorCode::NotATransitionMatrix:
    case topent::ErrorCode::EmptyLevel:
    case topent::ErrorCode::NoContraction:
      return kExitHypothesis;
    case topent::ErrorCode::NoConvergence:
      return kExitNoConvergence;
    default:
      return kExitInput;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const topent::Json& j) { std::cout << j.dump(2) << "\n"; }

topent::RunManifest make_manifest(const std::string& command,
                                  topent::Json config,
                                  const std::vector<std::string>& inputs,
                                  std::uint64_t seed = 0) {
  topent::RunManifest m;
  m.command = command;
  m.version = kVersion;
  m.config = std::move(config);
  m.seed = seed;
  for (const std::string& path : inputs)
    m.inputs[path] = topent::digest_file(path);
  return m;
}

struct BoundLowerArgs {
  std::string matrix_path, system_path, cover_path;
  double tol = 1e-12;
};

int run_bound_lower(const BoundLowerArgs& a) {
  using namespace topent;
  const bool with_system = !a.system_path.empty();
  std::vector<std::string> inputs{a.matrix_path};
  if (with_system) {
    inputs.push_back(a.system_path);
    inputs.push_back(a.cover_path);
  }
  RunManifest manifest = make_manifest(
      "bound-lower",
      Json{{"matrix", a.matrix_path},
           {"system", a.system_path},
           {"cover", a.cover_path},
           {"tol", a.tol}},
      inputs);

  TransitionMatrix A = matrix_from_json(load_json_file(a.matrix_path));
  const double rho = spectral_radius(A, a.tol);
  const double nu = nu_bound(A);
  Json out{{"log_rho", std::log(rho)},
           {"log_nu", std::log(nu)},
           {"manifest", manifest_to_json(manifest)}};
  if (!with_system) {
    out["status"] = "matrix-only";
    emit(out);
    return 0;
  }

  SystemModel sys = system_from_json(load_json_file(a.system_path));
  CoverConfig cfg = cover_from_json(load_json_file(a.cover_path));
  ExpansionReport report = verify_expansion(sys, cfg, A);
  out["report"] = report_to_json(report);
  // The lower bound needs strict coupled expansion, not just covering.
  if (report.ok && report.strict) {
    out["status"] = "certified";
    emit(out);
    return 0;
  }
  out["status"] = "not-certified";
  emit(out);
  return kExitHypothesis;
}

struct BoundUpperArgs {
  std::string system_path, cover_path, matrix_path;
  double tol = 1e-12;
};

int run_bound_upper(const BoundUpperArgs& a) {
  using namespace topent;
  RunManifest manifest = make_manifest(
      "bound-upper",
      Json{{"system", a.system_path},
           {"cover", a.cover_path},
           {"matrix", a.matrix_path},
           {"tol", a.tol}},
      {a.system_path, a.cover_path, a.matrix_path});

  SystemModel sys = system_from_json(load_json_file(a.system_path));
  CoverConfig cfg = cover_from_json(load_json_file(a.cover_path));
  TransitionMatrix A = matrix_from_json(load_json_file(a.matrix_path));

  const bool covering = covers_domain(sys, cfg);
  const bool exact = covering && verify_exact_covering(sys, cfg, A);
  const double lambda = estimate_constants(sys, cfg, 2).first;
  Json out{{"covering", covering},
           {"exact_covering", exact},
           {"lambda_est", lambda},
           {"manifest", manifest_to_json(manifest)}};
  // Failed hypotheses are named in check order.
  if (!covering) {
    out["status"] = "failed";
    out["condition"] = "covering";
    emit(out);
    return kExitHypothesis;
  }
  if (!exact) {
    out["status"] = "failed";
    out["condition"] = "(i_a)";
    emit(out);
    return kExitHypothesis;
  }
  if (!(lambda > 1.0)) {
    out["status"] = "failed";
    out["condition"] = "(ii_a)";
    emit(out);
    return kExitHypothesis;
  }
  out["status"] = "certified";
  out["log_rho"] = std::log(spectral_radius(A, a.tol));
  emit(out);
  return 0;
}

struct VerifyArgs {
  std::string system_path, cover_path, matrix_path;
};

int run_verify(const VerifyArgs& a) {
  using namespace topent;
  std::vector<std::string> inputs{a.system_path, a.cover_path};
  if (!a.matrix_path.empty()) inputs.push_back(a.matrix_path);
  RunManifest manifest = make_manifest(
      "verify",
      Json{{"system", a.system_path},
           {"cover", a.cover_path},
           {"matrix", a.matrix_path}},
      inputs);

  SystemModel sys = system_from_json(load_json_file(a.system_path));
  CoverConfig cfg = cover_from_json(load_json_file(a.cover_path));
  TransitionMatrix A = a.matrix_path.empty()
                           ? derive_matrix(sys, cfg)
                           : matrix_from_json(load_json_file(a.matrix_path));
  ExpansionReport report = verify_expansion(sys, cfg, A);
  Json out = report_to_json(report);
  out["manifest"] = manifest_to_json(manifest);
  emit(out);
  return report.ok ? 0 : kExitHypothesis;
}

struct EstimateArgs {
  std::string system_path, cover_path, matrix_path, restrict_spec;
  std::string output_dir = ".";
  long long n_min = 0, n_max = 0, grid = 0;
  std::vector<double> epsilons;
  std::uint64_t seed = 0;
};

int run_estimate(const EstimateArgs& a) {
  using namespace topent;
  std::vector<std::string> inputs{a.system_path};
  if (!a.cover_path.empty()) inputs.push_back(a.cover_path);
  if (!a.matrix_path.empty()) inputs.push_back(a.matrix_path);
  RunManifest manifest = make_manifest(
      "estimate",
      Json{{"system", a.system_path},
           {"cover", a.cover_path},
           {"matrix", a.matrix_path},
           {"restrict", a.restrict_spec},
           {"n_min", a.n_min},
           {"n_max", a.n_max},
           {"eps", a.epsilons},
           {"grid", a.grid},
           {"output_dir", a.output_dir}},
      inputs, a.seed);

  SystemModel sys = system_from_json(load_json_file(a.system_path));
  EstimateConfig config;
  config.n_min = a.n_min;
  config.n_max = a.n_max;
  config.epsilons = a.epsilons;
  config.grid_size = a.grid;
  if (!a.restrict_spec.empty()) {
    const std::string prefix = "coded:depth=";
    if (a.restrict_spec.rfind(prefix, 0) != 0)
      raise(ErrorCode::ParseError,
            "--restrict expects coded:depth=<k>, got \"" + a.restrict_spec +
                "\"");
    int depth = 0;
    try {
      std::size_t used = 0;
      depth = std::stoi(a.restrict_spec.substr(prefix.size()), &used);
      if (used != a.restrict_spec.size() - prefix.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      raise(ErrorCode::ParseError,
            "--restrict expects coded:depth=<k>, got \"" + a.restrict_spec +
                "\"");
    }
    if (a.cover_path.empty() || a.matrix_path.empty())
      raise(ErrorCode::BadConfig,
            "--restrict coded:depth=<k> needs --cover and --matrix");
    CoverConfig cfg = cover_from_json(load_json_file(a.cover_path));
    TransitionMatrix A = matrix_from_json(load_json_file(a.matrix_path));
    config.restrict_to = coded_corpus(sys, cfg, A, depth, 1);
  }

  EstimateResult result = estimate_entropy(sys, config);
  const std::string digest = manifest_digest(manifest);

  std::filesystem::create_directories(a.output_dir);
  const std::string csv_path = a.output_dir + "/growth.csv";
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) raise(ErrorCode::BadConfig, "cannot write \"" + csv_path + "\"");
    csv << "# manifest " << digest << "\n";
    csv << "epsilon,n,count\n";
    for (const GrowthCurve& curve : result.curves)
      for (const GrowthRow& row : curve.rows)
        csv << fmt(curve.epsilon) << "," << row.n << "," << row.count << "\n";
  }

  Json slopes = Json::array();
  for (const GrowthCurve& curve : result.curves)
    slopes.push_back(Json{{"epsilon", curve.epsilon},
                          {"slope", curve.estimate}});
  Json summary{{"h_est", result.h_est},
               {"per_eps_slopes", std::move(slopes)},
               {"degenerate", result.degenerate},
               {"manifest", manifest_to_json(manifest)}};
  {
    const std::string summary_path = a.output_dir + "/summary.json";
    std::ofstream js(summary_path, std::ios::binary);
    if (!js)
      raise(ErrorCode::BadConfig, "cannot write \"" + summary_path + "\"");
    js << summary.dump(2) << "\n";
  }
  emit(summary);
  return 0;
}

struct CodeArgs {
  std::string system_path, cover_path, matrix_path, alpha;
  long long n = 1;
  double target_radius = 1e-8;
};

int run_code(const CodeArgs& a) {
  using namespace topent;
  RunManifest manifest = make_manifest(
      "code",
      Json{{"system", a.system_path},
           {"cover", a.cover_path},
           {"matrix", a.matrix_path},
           {"alpha", a.alpha},
           {"n", a.n},
           {"target_radius", a.target_radius}},
      {a.system_path, a.cover_path, a.matrix_path});

  SystemModel sys = system_from_json(load_json_file(a.system_path));
  CoverConfig cfg = cover_from_json(load_json_file(a.cover_path));
  TransitionMatrix A = matrix_from_json(load_json_file(a.matrix_path));
  SymbolSequence alpha = parse_sequence(A, a.alpha);
  CodedPoint point = code_point(sys, cfg, A, alpha, a.n, a.target_radius);
  emit(Json{{"value", point.value},
            {"radius", point.radius},
            {"depth", point.depth},
            {"manifest", manifest_to_json(manifest)}});
  return 0;
}

struct ItineraryArgs {
  std::string system_path, cover_path;
  double x = 0.0;
  long long n = 1;
  int length = 0;
};

int run_itinerary(const ItineraryArgs& a) {
  using namespace topent;
  RunManifest manifest = make_manifest(
      "itinerary",
      Json{{"system", a.system_path},
           {"cover", a.cover_path},
           {"x", a.x},
           {"n", a.n},
           {"length", a.length}},
      {a.system_path, a.cover_path});

  SystemModel sys = system_from_json(load_json_file(a.system_path));
  CoverConfig cfg = cover_from_json(load_json_file(a.cover_path));
  ItineraryResult result = itinerary(sys, cfg, a.x, a.n, a.length);
  emit(Json{{"symbols", result.symbols},
            {"undefined_at", result.undefined_at},
            {"manifest", manifest_to_json(manifest)}});
  return 0;
}

struct EnumerateArgs {
  std::string matrix_path;
  int length = 0;
  std::uint64_t cap = topent::kDefaultEnumerationCap;
  bool count_only = false;
};

int run_enumerate(const EnumerateArgs& a) {
  using namespace topent;
  RunManifest manifest = make_manifest(
      "enumerate-words",
      Json{{"matrix", a.matrix_path},
           {"length", a.length},
           {"cap", a.cap},
           {"count_only", a.count_only}},
      {a.matrix_path});

  TransitionMatrix A = matrix_from_json(load_json_file(a.matrix_path));
  if (a.length < 1)
    raise(ErrorCode::BadConfig, "word length must be positive");
  // The exact count never overflows; enumeration itself is capped.
  const BigInt count =
      entrywise_norm(matrix_power(A, static_cast<unsigned long>(a.length - 1)));
  Json out{{"count", count.str()},
           {"manifest", manifest_to_json(manifest)}};
  if (!a.count_only) {
    WordList words = enumerate_allowable_words(A, a.length, a.cap);
    Json list = Json::array();
    for (std::size_t w = 0; w < words.count(); ++w) {
      Json word = Json::array();
      for (int k = 0; k < words.entries; ++k) word.push_back(words.word(w)[k]);
      list.push_back(std::move(word));
    }
    out["words"] = std::move(list);
  }
  emit(out);
  return 0;
}

struct SpectralArgs {
  std::string matrix_path;
  double tol = 1e-12;
};

int run_spectral(const SpectralArgs& a) {
  using namespace topent;
  RunManifest manifest = make_manifest(
      "spectral-radius", Json{{"matrix", a.matrix_path}, {"tol", a.tol}},
      {a.matrix_path});
  TransitionMatrix A = matrix_from_json(load_json_file(a.matrix_path));
  const double rho = spectral_radius(A, a.tol);
  emit(Json{{"rho", rho},
            {"log_rho", std::log(rho)},
            {"manifest", manifest_to_json(manifest)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Rigorous bounds and empirical estimates of topological entropy for "
      "time-varying piecewise-linear interval maps"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  BoundLowerArgs bl;
  CLI::App* c_bl = app.add_subcommand(
      "bound-lower", "Entropy lower bound log rho(A), certified when a strict "
                     "coupled expansion verifies");
  c_bl->add_option("--matrix", bl.matrix_path, "transition matrix JSON")
      ->required();
  c_bl->add_option("--system", bl.system_path, "system JSON");
  c_bl->add_option("--cover", bl.cover_path, "cover JSON");
  c_bl->add_option("--tol", bl.tol, "spectral radius tolerance");

  BoundUpperArgs bu;
  CLI::App* c_bu = app.add_subcommand(
      "bound-upper",
      "Entropy upper bound log rho(A) under exact covering and expansion");
  c_bu->add_option("--system", bu.system_path, "system JSON")->required();
  c_bu->add_option("--cover", bu.cover_path, "cover JSON")->required();
  c_bu->add_option("--matrix", bu.matrix_path, "transition matrix JSON")
      ->required();
  c_bu->add_option("--tol", bu.tol, "spectral radius tolerance");

  VerifyArgs vf;
  CLI::App* c_vf = app.add_subcommand(
      "verify", "Verify coupled expansion of a cover; derives the matrix when "
                "none is given");
  c_vf->add_option("--system", vf.system_path, "system JSON")->required();
  c_vf->add_option("--cover", vf.cover_path, "cover JSON")->required();
  c_vf->add_option("--matrix", vf.matrix_path, "transition matrix JSON");

  EstimateArgs es;
  CLI::App* c_es = app.add_subcommand(
      "estimate", "Empirical entropy from separated-set growth curves");
  c_es->add_option("--system", es.system_path, "system JSON")->required();
  c_es->add_option("--n-min", es.n_min, "window start")->required();
  c_es->add_option("--n-max", es.n_max, "window end")->required();
  c_es->add_option("--eps", es.epsilons, "separation scales, decreasing")
      ->required()
      ->delimiter(',');
  c_es->add_option("--grid", es.grid, "evaluation grid size");
  c_es->add_option("--restrict", es.restrict_spec,
                   "coded:depth=<k>: restrict to coded points");
  c_es->add_option("--cover", es.cover_path, "cover JSON (for --restrict)");
  c_es->add_option("--matrix", es.matrix_path,
                   "transition matrix JSON (for --restrict)");
  c_es->add_option("--output-dir", es.output_dir,
                   "directory for growth.csv and summary.json");
  c_es->add_option("--seed", es.seed, "recorded in the manifest");

  CodeArgs cd;
  CLI::App* c_cd = app.add_subcommand(
      "code", "Code a symbol sequence to a point enclosure");
  c_cd->add_option("--system", cd.system_path, "system JSON")->required();
  c_cd->add_option("--cover", cd.cover_path, "cover JSON")->required();
  c_cd->add_option("--matrix", cd.matrix_path, "transition matrix JSON")
      ->required();
  c_cd->add_option("--alpha", cd.alpha, "sequence literal, e.g. 1,2|1")
      ->required();
  c_cd->add_option("--n", cd.n, "start time (1-based)");
  c_cd->add_option("--target-radius", cd.target_radius, "enclosure radius");

  ItineraryArgs it;
  CLI::App* c_it = app.add_subcommand(
      "itinerary", "Symbol sequence a point visits through the cover");
  c_it->add_option("--system", it.system_path, "system JSON")->required();
  c_it->add_option("--cover", it.cover_path, "cover JSON")->required();
  c_it->add_option("--x", it.x, "start point")->required();
  c_it->add_option("--n", it.n, "start time (1-based)");
  c_it->add_option("--length", it.length, "symbols to produce")->required();

  EnumerateArgs en;
  CLI::App* c_en = app.add_subcommand(
      "enumerate-words", "Count or list allowable words of a given length");
  c_en->add_option("--matrix", en.matrix_path, "transition matrix JSON")
      ->required();
  c_en->add_option("--length", en.length, "word length")->required();
  c_en->add_option("--cap", en.cap, "enumeration cap");
  c_en->add_flag("--count-only", en.count_only, "print the count only");

  SpectralArgs sp;
  CLI::App* c_sp = app.add_subcommand(
      "spectral-radius", "Perron root of a transition matrix");
  c_sp->add_option("--matrix", sp.matrix_path, "transition matrix JSON")
      ->required();
  c_sp->add_option("--tol", sp.tol, "two-sided bracket tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (c_bl->parsed()) return run_bound_lower(bl);
    if (c_bu->parsed()) return run_bound_upper(bu);
    if (c_vf->parsed()) return run_verify(vf);
    if (c_es->parsed()) return run_estimate(es);
    if (c_cd->parsed()) return run_code(cd);
    if (c_it->parsed()) return run_itinerary(it);
    if (c_en->parsed()) return run_enumerate(en);
    if (c_sp->parsed()) return run_spectral(sp);
  } catch (const topent::Error& e) {
    emit(topent::error_to_json(e));
    return exit_code_for(e.code());
  }
  return 0;
}
