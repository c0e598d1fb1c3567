#pragma once

// Command-line front end. Data goes to the output stream (or --out file);
// diagnostics such as lambda*, delta* and convergence warnings go to the
// diagnostic stream.
//
// Exit codes: 0 success, 1 statistical verification failure (or a numerical
// breakdown), 2 usage or domain error, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ojl/ojl.hpp"

namespace ojl::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kIo = 3 };

namespace detail {

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("OJL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw domain_error(std::string("OJL_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

// "1e3,1e4,100000" -> {1000, 10000, 100000}
inline std::vector<long> parse_dims(const std::string& list) {
  std::vector<long> dims;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    try {
      v = parse_double(item);
    } catch (const io_error&) {
      throw domain_error("feature dimension is not a number: " + item);
    }
    if (!(v >= 2.0) || v != std::floor(v) || v > 1e9) throw domain_error("feature dimension must be an integer >= 2: " + item);
    dims.push_back(static_cast<long>(v));
  }
  if (dims.empty()) throw domain_error("--feature-dims needs at least one dimension");
  return dims;
}

inline std::vector<long> point_grid(double lo, double hi, int count) {
  if (!(lo >= 2.0) || hi < lo || count < 1) throw domain_error("point range needs 2 <= min <= max and count >= 1");
  std::vector<long> grid;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    grid.push_back(std::lround(t));
  }
  return grid;
}

// Writes to `path`, or to `fallback` when path is empty or "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, std::ios::openmode mode = std::ios::out) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, mode | std::ios::trunc);
      if (!file_) throw io_error("cannot open for writing: " + path);
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw io_error("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline std::ifstream open_input(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw io_error("cannot open for reading: " + path);
  return in;
}

inline RowMatrix load_matrix(const std::string& path) {
  auto in = open_input(path, std::ios::in | std::ios::binary);
  if (looks_binary(in)) return read_binary(in).entries();
  return read_csv(in);
}

}  // namespace detail

struct ConfidenceArgs {
  long m = 0;
  long n = 0;
  double eps = 0.0;
  bool json = false;
  bool csv = false;
};

inline int cmd_confidence(const ConfidenceArgs& args, std::ostream& out, std::ostream& err) {
  std::optional<ProblemSpec> spec;
  try {
    spec.emplace(args.m, args.n, args.eps);
  } catch (const no_reduction&) {
    if (args.json) {
      out << nlohmann::json{{"m", args.m}, {"n", args.n}, {"eps", args.eps}, {"delta_star", 0.0}, {"no_reduction", true}}.dump(2)
          << '\n';
    } else {
      out << "delta = 0 (no reduction, n >= m)\n";
    }
    return kOk;
  }
  const OptimalSolution best = optimal_confidence(*spec);
  const ApproxBounds bounds = approx_bounds(*spec);
  const double classic = classic_confidence(*spec);
  if (!best.diagnostics.converged) err << "warning: window search did not converge; reporting best point found\n";

  if (args.json) {
    nlohmann::json j = {{"m", args.m},
                        {"n", args.n},
                        {"eps", args.eps},
                        {"lambda_star", best.lambda_star},
                        {"delta_star", best.delta_star},
                        {"window", {best.window_lo, best.window_hi}},
                        {"approx_lower", bounds.lower},
                        {"approx_upper", bounds.upper},
                        {"classic", classic},
                        {"converged", best.diagnostics.converged}};
    out << j.dump(2) << '\n';
  } else if (args.csv) {
    out << "m,n,eps,lambda_star,delta_star,window_lo,window_hi,approx_lower,approx_upper,classic\n";
    out << args.m << ',' << args.n << ',' << format_double(args.eps) << ',' << format_double(best.lambda_star) << ','
        << format_double(best.delta_star) << ',' << format_double(best.window_lo) << ','
        << format_double(best.window_hi) << ',' << format_double(bounds.lower) << ',' << format_double(bounds.upper)
        << ',' << format_double(classic) << '\n';
  } else {
    out.precision(12);
    out << "m = " << args.m << ", n = " << args.n << ", eps = " << args.eps << '\n'
        << "lambda* = " << best.lambda_star << '\n'
        << "delta*  = " << best.delta_star << '\n'
        << "window  = [" << best.window_lo << ", " << best.window_hi << "]\n"
        << "approx lower bound = " << bounds.lower << '\n'
        << "approx upper bound = " << bounds.upper << '\n'
        << "classic bound      = " << classic << '\n';
  }
  return kOk;
}

struct MinDimArgs {
  long m = 100000;
  double eps = 0.2;
  double points_min = 10;
  double points_max = 1000;
  int points_count = 100;
  double budget = 1.0;
  bool approx = false;
  std::string feature_dims;
  std::string out_path;
};

inline int cmd_mindim(const MinDimArgs& args, std::ostream& out, std::ostream& err) {
  const std::vector<long> points = detail::point_grid(args.points_min, args.points_max, args.points_count);
  detail::Sink sink(args.out_path, out);
  std::ostream& os = sink.stream();

  // Empty cell plus a warning for infeasible queries.
  auto cell = [&err](long n_points, long m, auto&& solve) -> std::string {
    try {
      return std::to_string(solve());
    } catch (const infeasible_error& e) {
      err << "warning: N=" << n_points << ", m=" << m << ": " << e.what() << '\n';
      return {};
    }
  };

  if (!args.feature_dims.empty()) {
    const std::vector<long> dims = detail::parse_dims(args.feature_dims);
    os << "sample";
    for (long m : dims) os << ',' << m;
    os << '\n';
    for (long n_points : points) {
      os << n_points;
      for (long m : dims) {
        const MinDimQuery q{n_points, m, args.eps, args.budget};
        os << ',' << cell(n_points, m, [&] { return min_embed_dim(q); });
      }
      os << '\n';
    }
  } else if (args.approx) {
    os << "n. points,exact,approx\n";
    for (long n_points : points) {
      const MinDimQuery q{n_points, args.m, args.eps, args.budget};
      os << n_points << ',' << cell(n_points, args.m, [&] { return min_embed_dim(q); }) << ','
         << cell(n_points, args.m, [&] { return approx_min_dim(q); }) << '\n';
    }
  } else {
    os << "n. points,my_dim,their_dim\n";
    for (long n_points : points) {
      const MinDimQuery q{n_points, args.m, args.eps, args.budget};
      os << n_points << ',' << cell(n_points, args.m, [&] { return min_embed_dim(q); }) << ','
         << classic_min_dim(n_points, args.eps) << '\n';
    }
  }
  sink.finish();
  return kOk;
}

struct SampleArgs {
  long m = 0;
  long n = 0;
  double eps = 0.0;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "csv";
  bool exact = false;
};

inline int cmd_sample(const SampleArgs& args, std::ostream& out, std::ostream& err) {
  const ProblemSpec spec(args.m, args.n, args.eps);
  const OptimalSolution best = optimal_confidence(spec);
  Rng rng(args.seed.value_or(detail::default_seed()));
  const ProjectionMatrix a = args.exact ? sample_best_projection_exact(rng, spec, best.lambda_star)
                                        : sample_best_projection_fast(rng, spec, best.lambda_star);
  const bool binary = args.format == "bin";
  detail::Sink sink(args.out_path, out, binary ? std::ios::out | std::ios::binary : std::ios::out);
  if (binary) {
    write_binary(sink.stream(), a);
  } else {
    write_csv(sink.stream(), a.entries());
  }
  sink.finish();
  err.precision(12);
  err << "lambda* = " << best.lambda_star << "\ndelta*  = " << best.delta_star << '\n';
  return kOk;
}

struct VerifyArgs {
  long m = 0;
  long n = 0;
  double eps = 0.0;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  bool fast = false;
};

inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  if (args.trials < kMinTrials) {
    err << "error: --trials must be at least " << kMinTrials << '\n';
    return kUsage;
  }
  std::optional<ProblemSpec> spec;
  try {
    spec.emplace(args.m, args.n, args.eps);
  } catch (const no_reduction&) {
    out << "delta = 0 (no reduction, n >= m)\n";
    return kOk;
  }
  const OptimalSolution best = optimal_confidence(*spec);
  const double lambda = best.lambda_star;
  Rng rng(args.seed.value_or(detail::default_seed()));

  auto sampler = [&](Rng& r) {
    return args.fast ? sample_best_projection_fast(r, *spec, lambda) : sample_best_projection_exact(r, *spec, lambda);
  };
  const auto m = static_cast<Eigen::Index>(spec->m());
  const Vector e1 = Vector::Unit(m, 0);
  const Vector flat = Vector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
  const ProjectionMatrix fixed = sampler(rng);

  struct Check {
    std::string name;
    DistortionReport report;
  };
  std::vector<Check> checks;
  checks.push_back({"matrix draws, x = e1", distortion_prob_mc_matrices(rng, sampler, e1, *spec, args.trials, args.threads)});
  checks.push_back({"matrix draws, x = 1/sqrt(m)", distortion_prob_mc_matrices(rng, sampler, flat, *spec, args.trials, args.threads)});
  checks.push_back({"fixed matrix, sphere inputs", distortion_prob_mc_direct(rng, fixed.entries(), args.eps, args.trials, args.threads)});
  checks.push_back({"fixed matrix, spectral route",
                    distortion_prob_mc_spectral(rng, gram_spectrum(fixed.entries()), spec->m(), args.eps, args.trials, args.threads)});

  out.precision(8);
  out << "lambda* = " << lambda << ", delta* = " << best.delta_star << ", trials = " << args.trials << '\n';
  bool all_pass = true;
  for (const auto& [name, r] : checks) {
    const double reference = r.exact_or_bound.value_or(best.delta_star);
    const double z = r.std_error > 0.0 ? std::abs(r.empirical - reference) / r.std_error : 0.0;
    const bool pass = std::abs(r.empirical - reference) <= 3.0 * r.std_error;
    all_pass = all_pass && pass;
    out << (pass ? "PASS  " : "FAIL  ") << name << " [" << to_string(r.method) << "]: empirical = " << r.empirical
        << ", se = " << r.std_error << ", reference = " << reference << ", |diff|/se = " << z << '\n';
  }
  return all_pass ? kOk : kVerificationFailed;
}

struct ProjectArgs {
  std::string matrix_path;
  std::string data_path;
  std::string out_path;
};

inline int cmd_project(const ProjectArgs& args, std::ostream& out, std::ostream& /*err*/) {
  const RowMatrix a = detail::load_matrix(args.matrix_path);
  auto in = detail::open_input(args.data_path);
  const RowMatrix data = read_csv(in);
  if (data.rows() > 0 && data.cols() != a.cols()) {
    throw domain_error("data rows have dimension " + std::to_string(data.cols()) + ", matrix expects " +
                       std::to_string(a.cols()));
  }
  detail::Sink sink(args.out_path, out);
  if (data.rows() > 0) write_csv(sink.stream(), RowMatrix(data * a.transpose()));
  sink.finish();
  return kOk;
}

/// Parses and dispatches one invocation. args[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Confidence-optimal Johnson-Lindenstrauss projections", "ojl"};
  app.require_subcommand(1);

  ConfidenceArgs conf;
  auto* confidence = app.add_subcommand("confidence", "Optimal scale lambda* and distortion probability delta*");
  confidence->add_option("--m", conf.m, "data dimension")->required();
  confidence->add_option("--n", conf.n, "embedding dimension")->required();
  confidence->add_option("--eps", conf.eps, "relative distortion tolerance, 0 < eps < 1/2")->required();
  auto* json_flag = confidence->add_flag("--json", conf.json, "JSON output");
  confidence->add_flag("--csv", conf.csv, "CSV output")->excludes(json_flag);

  MinDimArgs md;
  auto* mindim = app.add_subcommand("mindim", "Minimal embedding dimension curves (CSV)");
  mindim->add_option("--m", md.m, "data dimension")->capture_default_str();
  mindim->add_option("--eps", md.eps, "relative distortion tolerance")->capture_default_str();
  mindim->add_option("--points-min", md.points_min, "smallest number of data points")->capture_default_str();
  mindim->add_option("--points-max", md.points_max, "largest number of data points")->capture_default_str();
  mindim->add_option("--points-count", md.points_count, "grid size (linearly spaced)")->capture_default_str();
  mindim->add_option("--budget", md.budget, "overall failure budget multiplying 2/(N(N-1))")->capture_default_str();
  auto* approx_flag = mindim->add_flag("--approx", md.approx, "exact vs closed-form approximate dimension");
  mindim->add_option("--feature-dims", md.feature_dims, "comma-separated data dimensions, e.g. 1e3,1e4,1e5")
      ->excludes(approx_flag);
  mindim->add_option("--out", md.out_path, "output file (default: stdout)");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Sample a confidence-optimal projection matrix");
  sample->add_option("--m", sa.m, "data dimension")->required();
  sample->add_option("--n", sa.n, "embedding dimension")->required();
  sample->add_option("--eps", sa.eps, "relative distortion tolerance")->required();
  sample->add_option("--seed", sa.seed, "random seed (default: $OJL_SEED or 0)");
  sample->add_option("--out", sa.out_path, "output file")->required();
  sample->add_option("--format", sa.format, "csv or bin")->check(CLI::IsMember({"csv", "bin"}))->capture_default_str();
  auto* exact_flag = sample->add_flag("--exact", sa.exact, "literal U I V^T construction (O(m^2) memory)");
  sample->add_flag("--fast", "orthonormal row frame construction (default)")->excludes(exact_flag);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Monte Carlo check of delta* along matrix, sphere and spectral routes");
  verify->add_option("--m", va.m, "data dimension")->required();
  verify->add_option("--n", va.n, "embedding dimension")->required();
  verify->add_option("--eps", va.eps, "relative distortion tolerance")->required();
  verify->add_option("--trials", va.trials, "trials per check")->capture_default_str();
  verify->add_option("--seed", va.seed, "random seed (default: $OJL_SEED or 0)");
  verify->add_option("--threads", va.threads, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  verify->add_flag("--fast", va.fast, "draw matrices with the row-frame sampler");

  ProjectArgs pa;
  auto* projectc = app.add_subcommand("project", "Project CSV records with a stored matrix");
  projectc->add_option("--matrix", pa.matrix_path, "matrix file (CSV or OJL1)")->required();
  projectc->add_option("--data", pa.data_path, "input CSV, one record per row")->required();
  projectc->add_option("--out", pa.out_path, "output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*confidence) return cmd_confidence(conf, out, err);
    if (*mindim) return cmd_mindim(md, out, err);
    if (*sample) return cmd_sample(sa, out, err);
    if (*verify) return cmd_verify(va, out, err);
    if (*projectc) return cmd_project(pa, out, err);
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::logic_error& e) {
    // domain_error, no_reduction and invalid_argument: bad parameters.
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const infeasible_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    // Numerical breakdown (e.g. a continued fraction that fails to converge).
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsage;
}

}  // namespace ojl::cli
