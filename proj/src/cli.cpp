#include "lpmw/cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpmw/analysis.hpp"
#include "lpmw/chains.hpp"
#include "lpmw/counting.hpp"
#include "lpmw/injection.hpp"
#include "lpmw/matroid.hpp"
#include "lpmw/parallel.hpp"
#include "lpmw/paths.hpp"
#include "lpmw/rng.hpp"

namespace lpmw::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::string to_decimal(const Count& c) { return c.str(); }

std::string to_fraction(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Count(text));
    return Rational(Count(text.substr(0, slash)), Count(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected a rational like 1/4, got '" + text + "'");
  }
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

/// One-JSON-object-per-line record stream with a running FNV-1a digest, so
/// identical commands produce byte-identical output up to the manifest's
/// wall-time field (which is excluded from the digest).
class RecordWriter {
 public:
  explicit RecordWriter(std::ostream& out) : out_(out) {}

  void emit(const json& record) {
    std::lock_guard<std::mutex> lock(mutex_);
    const std::string line = record.dump();
    for (const char c : line) mix(static_cast<unsigned char>(c));
    mix('\n');
    out_ << line << '\n';
    ++records_;
  }

  void manifest(const std::string& command, const json& seed, double wall_ms) {
    json m;
    m["record"] = "manifest";
    m["command"] = command;
    m["seed"] = seed;
    m["version"] = kVersion;
    m["records"] = records_;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest_));
    m["digest"] = buf;
    m["wall_ms"] = wall_ms;
    out_ << m.dump() << '\n';
  }

 private:
  void mix(unsigned char c) {
    digest_ ^= c;
    digest_ *= 1099511628211ULL;
  }

  std::ostream& out_;
  std::mutex mutex_;
  std::uint64_t digest_ = 1469598103934665603ULL;
  long records_ = 0;
};

json matroid_json(const LatticePathMatroid& matroid) {
  return json{{"lower", matroid.lower().str()}, {"upper", matroid.upper().str()}};
}

struct ChainOptions {
  std::string chain;
  int n = 2;
  std::string matroid_file;
  std::string family = "catalan";
};

ChainKernel build_kernel(const ChainOptions& opt) {
  if (opt.chain == "dyck-rt") return ChainKernel::dyck_random_transposition(opt.n);
  if (opt.chain == "dyck-adj") return ChainKernel::dyck_adjacent_transposition(opt.n);
  if (opt.chain == "bernoulli-laplace")
    return ChainKernel::bernoulli_laplace(2 * opt.n, opt.n);
  if (opt.chain == "basis-exchange") {
    if (!opt.matroid_file.empty())
      return ChainKernel::basis_exchange(read_matroid_file(opt.matroid_file));
    if (opt.family == "cube") return ChainKernel::basis_exchange(cube_matroid(opt.n));
    return ChainKernel::basis_exchange(catalan_matroid(opt.n));
  }
  throw CLI::ValidationError("unknown chain '" + opt.chain + "'");
}

void add_chain_options(CLI::App* cmd, ChainOptions& opt, bool need_n = true) {
  cmd->add_option("--chain", opt.chain, "dyck-rt | dyck-adj | basis-exchange | bernoulli-laplace")
      ->required();
  auto* n = cmd->add_option("--n", opt.n, "chain order");
  if (need_n) n->required();
  cmd->add_option("--matroid", opt.matroid_file, "matroid file for basis-exchange");
  cmd->add_option("--family", opt.family, "basis-exchange family: catalan | cube");
}

json spectral_json(const ChainKernel& kernel, const TransitionMatrix& matrix,
                   const SpectralReport& report) {
  json rec;
  rec["record"] = "spectral";
  rec["chain"] = kernel.name();
  rec["m"] = kernel.path_length();
  rec["r"] = kernel.path_up_count();
  rec["states"] = to_decimal(kernel.state_count());
  rec["gap"] = report.gap;
  if (report.gap_exact) rec["gap_exact"] = to_fraction(*report.gap_exact);
  rec["jerrum_son_lower"] = to_fraction(report.jerrum_son_lower);
  rec["jerrum_son_applies"] =
      kernel.variant() != ChainKernel::Variant::DyckAdjacentTransposition;
  rec["log_sobolev_lower"] = to_fraction(report.log_sobolev_lower);
  if (report.test_fn_upper) rec["test_fn_upper"] = to_fraction(*report.test_fn_upper);
  if (report.alpha_upper) rec["alpha_upper"] = *report.alpha_upper;
  const bool dyck = kernel.variant() == ChainKernel::Variant::DyckRandomTransposition ||
                    kernel.variant() == ChainKernel::Variant::DyckAdjacentTransposition;
  if (dyck) rec["dyck_upper"] = to_fraction(Rational(4, kernel.path_length() / 2));
  rec["tolerance"] = report.tolerance;
  rec["denominator"] = matrix.denominator();
  return rec;
}

struct Invocation {
  RecordWriter writer;
  json seed = nullptr;
  bool property_ok = true;

  explicit Invocation(std::ostream& out) : writer(out) {}
};

// --- subcommand bodies ------------------------------------------------------

void run_count(const std::string& file, const std::string& ups, const std::string& downs,
               Invocation& inv) {
  const auto matroid = read_matroid_file(file);
  const StepConstraints c(parse_index_list(ups), parse_index_list(downs));
  json rec;
  rec["record"] = "count";
  rec["matroid"] = matroid_json(matroid);
  rec["forced_up"] = c.forced_up();
  rec["forced_down"] = c.forced_down();
  rec["count"] = to_decimal(matroid.basis_count(c));
  inv.writer.emit(rec);
}

void run_sample(const std::string& file, int num, std::uint64_t seed, const std::string& ups,
                const std::string& downs, Invocation& inv) {
  const auto matroid = read_matroid_file(file);
  const StepConstraints c(parse_index_list(ups), parse_index_list(downs));
  inv.seed = seed;
  std::map<std::string, long> histogram;
  for (int k = 0; k < num; ++k) {
    const auto path = sample_between(matroid.lower(), matroid.upper(), c,
                                     split_seed(seed, static_cast<std::uint64_t>(k)));
    ++histogram[path.str()];
    json rec;
    rec["record"] = "sample";
    rec["run"] = k;
    rec["path"] = path.str();
    inv.writer.emit(rec);
  }
  json summary;
  summary["record"] = "sample-summary";
  summary["num"] = num;
  summary["distinct"] = histogram.size();
  inv.writer.emit(summary);
}

void run_check_nc(const std::string& file, int minor_budget, std::uint64_t seed,
                  Invocation& inv) {
  const auto matroid = read_matroid_file(file);
  inv.seed = seed;
  const BalanceReport report = check_balanced(matroid, minor_budget, seed);
  json rec;
  rec["record"] = "nc";
  rec["matroid"] = matroid_json(matroid);
  rec["minors_checked"] = report.minors_checked;
  rec["pairs_checked"] = report.pairs_checked;
  rec["holds"] = report.ok();
  if (!report.ok()) {
    json witnesses = json::array();
    for (const auto& v : report.violations) {
      witnesses.push_back(json{{"contracted", v.minor.contracted()},
                               {"deleted", v.minor.deleted()},
                               {"e", v.e},
                               {"f", v.f}});
    }
    rec["violations"] = witnesses;
    inv.property_ok = false;
  }
  inv.writer.emit(rec);
}

json injection_json(const char* record, const InjectionReport& report) {
  json rec;
  rec["record"] = record;
  rec["domain"] = report.domain_size;
  rec["image"] = report.image_size;
  rec["case1"] = report.case_tally[0];
  rec["case2"] = report.case_tally[1];
  rec["case3"] = report.case_tally[2];
  rec["injective"] = report.injective();
  if (report.violation_count > 0) {
    rec["violation_count"] = report.violation_count;
    rec["witnesses"] = report.violations;
  }
  return rec;
}

void run_verify_injection(const std::string& file, int sweep_m, int jobs, Invocation& inv,
                          std::ostream& err) {
  if (!file.empty()) {
    const auto matroid = read_matroid_file(file);
    InjectionReport total;
    for (int e = 1; e < matroid.ground_size(); ++e) {
      for (int f = e + 1; f <= matroid.ground_size(); ++f) {
        const auto report = verify_injection(matroid, e, f);
        json rec = injection_json("injection", report);
        rec["matroid"] = matroid_json(matroid);
        rec["e"] = e;
        rec["f"] = f;
        inv.writer.emit(rec);
        total.merge(report);
      }
    }
    json summary = injection_json("injection-summary", total);
    inv.writer.emit(summary);
    inv.property_ok = total.injective();
    return;
  }

  InjectionReport grand;
  long matroid_count = 0;
  for (int m = 1; m <= sweep_m; ++m) {
    std::vector<LatticePathMatroid> matroids;
    for_each_lattice_path_matroid(m, [&](const LatticePathMatroid& matroid) {
      matroids.push_back(matroid);
    });
    InjectionReport level;
    std::mutex merge_mutex;
    parallel_for(matroids.size(), jobs, [&](std::size_t i) {
      const auto report = verify_injection_all(matroids[i]);
      std::lock_guard<std::mutex> lock(merge_mutex);
      level.merge(report);
    });
    matroid_count += static_cast<long>(matroids.size());
    json rec = injection_json("injection-sweep", level);
    rec["m"] = m;
    rec["matroids"] = matroids.size();
    inv.writer.emit(rec);
    grand.merge(level);
    err << "verify-injection: m=" << m << " done (" << matroids.size() << " matroids)\n";
  }
  json summary = injection_json("injection-summary", grand);
  summary["max_m"] = sweep_m;
  summary["matroids"] = matroid_count;
  inv.writer.emit(summary);
  inv.property_ok = grand.injective();
}

void run_spectral(const ChainOptions& opt, Invocation& inv) {
  const ChainKernel kernel = build_kernel(opt);
  const TransitionMatrix matrix = transition_matrix(kernel);
  const SpectralReport report = spectral_gap(matrix);
  inv.writer.emit(spectral_json(kernel, matrix, report));
}

void run_mixing(const ChainOptions& opt, const std::string& eps_text, bool curve,
                const std::string& csv, int jobs, Invocation& inv) {
  const ChainKernel kernel = build_kernel(opt);
  const TransitionMatrix matrix = transition_matrix(kernel);
  const Rational eps = parse_rational(eps_text);
  const MixingReport report = exact_mixing_time(matrix, eps, 1 << 20, jobs);
  json rec;
  rec["record"] = "mixing";
  rec["chain"] = kernel.name();
  rec["m"] = kernel.path_length();
  rec["states"] = to_decimal(kernel.state_count());
  rec["eps"] = to_fraction(eps);
  rec["t_mix"] = report.t_mix;
  rec["curve_points"] = report.tv_curve.size();
  inv.writer.emit(rec);
  if (curve) {
    for (const auto& [t, tv] : report.tv_curve)
      inv.writer.emit(json{{"record", "tv"}, {"t", t}, {"tv", tv}});
  }
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw std::invalid_argument("cannot open csv file: " + csv);
    out << "t,tv\n";
    for (const auto& [t, tv] : report.tv_curve) out << t << "," << tv << "\n";
  }
}

void run_scaling(const ChainOptions& opt, int n_min, int n_max, const std::string& eps_text,
                 const std::string& csv, int jobs, Invocation& inv) {
  ScalingFamily family = ScalingFamily::DyckRandomTransposition;
  if (opt.chain == "dyck-rt")
    family = ScalingFamily::DyckRandomTransposition;
  else if (opt.chain == "dyck-adj")
    family = ScalingFamily::DyckAdjacentTransposition;
  else if (opt.chain == "bernoulli-laplace")
    family = ScalingFamily::BernoulliLaplace;
  else if (opt.chain == "basis-exchange")
    family = opt.family == "cube" ? ScalingFamily::BasisExchangeCube
                                  : ScalingFamily::BasisExchangeCatalan;
  else
    throw CLI::ValidationError("unknown chain '" + opt.chain + "'");

  const Rational eps = parse_rational(eps_text);
  const ScalingTable table = scaling_experiment(family, n_min, n_max, eps, kDefaultStateCap, jobs);
  for (const auto& row : table.rows) {
    json rec;
    rec["record"] = "scaling-row";
    rec["chain"] = to_string(table.family);
    rec["n"] = row.n;
    rec["states"] = to_decimal(row.state_count);
    rec["gap"] = row.gap;
    rec["jerrum_son_lower"] = to_fraction(row.jerrum_son_lower);
    rec["dyck_upper"] = to_fraction(row.dyck_upper);
    rec["t_mix"] = row.t_mix;
    inv.writer.emit(rec);
  }
  inv.writer.emit(json{{"record", "scaling-fit"},
                       {"chain", to_string(table.family)},
                       {"eps", to_fraction(eps)},
                       {"tmix_exponent", table.tmix_exponent}});
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw std::invalid_argument("cannot open csv file: " + csv);
    out << "n,states,gap,jerrum_son_lower,dyck_upper,t_mix\n";
    for (const auto& row : table.rows) {
      out << row.n << "," << to_decimal(row.state_count) << "," << row.gap << ","
          << to_fraction(row.jerrum_son_lower) << "," << to_fraction(row.dyck_upper) << ","
          << row.t_mix << "\n";
    }
  }
}

}  // namespace

int exit_code_for(bool parsed_ok, bool property_ok) {
  if (!parsed_ok) return 1;
  return property_ok ? 0 : 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lattice path matroid walks: exact counting, correlation checks, chain analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  int jobs = default_jobs();
  app.add_option("--jobs", jobs, "sweep parallelism (env LPMW_JOBS)");

  // count
  auto* count_cmd = app.add_subcommand("count", "count bases, optionally constrained");
  std::string count_file, count_up, count_down;
  count_cmd->add_option("--matroid", count_file, "matroid file")->required();
  count_cmd->add_option("--force-up", count_up, "comma-separated contracted indices");
  count_cmd->add_option("--force-down", count_down, "comma-separated deleted indices");

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "exact uniform samples");
  std::string sample_file, sample_up, sample_down;
  int sample_num = 1;
  std::uint64_t sample_seed = 0;
  sample_cmd->add_option("--matroid", sample_file, "matroid file")->required();
  sample_cmd->add_option("--num", sample_num, "number of samples");
  sample_cmd->add_option("--seed", sample_seed, "base seed; run k uses seed^k");
  sample_cmd->add_option("--force-up", sample_up, "comma-separated contracted indices");
  sample_cmd->add_option("--force-down", sample_down, "comma-separated deleted indices");

  // check-nc
  auto* nc_cmd = app.add_subcommand("check-nc", "negative correlation / balance check");
  std::string nc_file;
  int nc_minors = 0;
  std::uint64_t nc_seed = 0;
  nc_cmd->add_option("--matroid", nc_file, "matroid file")->required();
  nc_cmd->add_option("--minors", nc_minors, "random minors beyond the exhaustive |I|+|J|<=4 sweep");
  nc_cmd->add_option("--seed", nc_seed, "seed for random minors");

  // verify-injection
  auto* inj_cmd = app.add_subcommand("verify-injection", "verify the correlation injection");
  std::string inj_file;
  int inj_sweep = 0;
  auto* inj_file_opt = inj_cmd->add_option("--matroid", inj_file, "matroid file");
  auto* inj_sweep_opt =
      inj_cmd->add_option("--sweep-m", inj_sweep, "verify all matroids with ground size <= M");
  inj_file_opt->excludes(inj_sweep_opt);

  // spectral / mixing / scaling
  auto* spectral_cmd = app.add_subcommand("spectral", "spectral gap with bound certificates");
  ChainOptions spectral_opt;
  add_chain_options(spectral_cmd, spectral_opt);

  auto* mixing_cmd = app.add_subcommand("mixing", "exact total-variation mixing time");
  ChainOptions mixing_opt;
  std::string mixing_eps = "1/4", mixing_csv;
  bool mixing_curve = false;
  add_chain_options(mixing_cmd, mixing_opt);
  mixing_cmd->add_option("--eps", mixing_eps, "threshold as p/q (default 1/4)");
  mixing_cmd->add_flag("--curve", mixing_curve, "emit one tv record per step");
  mixing_cmd->add_option("--csv", mixing_csv, "write the tv curve as CSV");

  auto* scaling_cmd = app.add_subcommand("scaling", "gap and mixing across n");
  ChainOptions scaling_opt;
  int n_min = 2, n_max = 5;
  std::string scaling_eps = "1/4", scaling_csv;
  add_chain_options(scaling_cmd, scaling_opt, /*need_n=*/false);
  scaling_cmd->add_option("--n-min", n_min, "first n")->required();
  scaling_cmd->add_option("--n-max", n_max, "last n")->required();
  scaling_cmd->add_option("--eps", scaling_eps, "threshold as p/q (default 1/4)");
  scaling_cmd->add_option("--csv", scaling_csv, "write the table as CSV");

  std::string command;
  for (const auto& a : args) {
    if (!command.empty()) command += ' ';
    command += a;
  }

  std::vector<const char*> argv;
  argv.push_back("lpmw");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream dummy;
    const int code = app.exit(e, dummy, err);
    // CLI11 reports help requests as code 0
    return code == 0 ? 0 : 1;
  }

  Invocation inv(out);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (count_cmd->parsed()) {
      run_count(count_file, count_up, count_down, inv);
    } else if (sample_cmd->parsed()) {
      run_sample(sample_file, sample_num, sample_seed, sample_up, sample_down, inv);
    } else if (nc_cmd->parsed()) {
      run_check_nc(nc_file, nc_minors, nc_seed, inv);
    } else if (inj_cmd->parsed()) {
      if (inj_file.empty() && inj_sweep <= 0)
        throw std::invalid_argument("verify-injection: need --matroid or --sweep-m");
      run_verify_injection(inj_file, inj_sweep, jobs, inv, err);
    } else if (spectral_cmd->parsed()) {
      run_spectral(spectral_opt, inv);
    } else if (mixing_cmd->parsed()) {
      run_mixing(mixing_opt, mixing_eps, mixing_curve, mixing_csv, jobs, inv);
    } else if (scaling_cmd->parsed()) {
      run_scaling(scaling_opt, n_min, n_max, scaling_eps, scaling_csv, jobs, inv);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const auto stop = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop - start).count();
  inv.writer.manifest(command, inv.seed, wall_ms);
  return exit_code_for(true, inv.property_ok);
}

}  // namespace lpmw::cli
