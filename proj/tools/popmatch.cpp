// popmatch: generation, checking, sweeps, transition-point tables and the
// auxiliary-graph / branching simulators behind one reproducible CLI.
//
// Exit codes: 0 success, 1 usage error, 2 input parse error, 3 internal
// disagreement between the brute-force and fast existence routes.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "popmatch/analysis.hpp"
#include "popmatch/components.hpp"
#include "popmatch/io.hpp"
#include "popmatch/matching.hpp"
#include "popmatch/parallel.hpp"
#include "popmatch/random_graphs.hpp"
#include "popmatch/rng.hpp"
#include "popmatch/topchoice.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitDisagreement = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> values;
  const auto first = spec.find(':');
  if (first == std::string::npos) {
    values.push_back(std::stod(spec));
    return values;
  }
  const auto second = spec.find(':', first + 1);
  if (second == std::string::npos)
    throw UsageError("grid must be VALUE or START:STOP:STEP, got '" + spec + "'");
  const double start = std::stod(spec.substr(0, first));
  const double stop = std::stod(spec.substr(first + 1, second - first - 1));
  const double step = std::stod(spec.substr(second + 1));
  if (!(step > 0)) throw UsageError("grid step must be positive");
  if (stop < start) throw UsageError("grid stop must be >= start");
  // Endpoints included within half-step tolerance.
  for (double v = start; v <= stop + step / 2; v += step) values.push_back(v);
  return values;
}

std::pair<std::uint32_t, std::uint32_t> parse_k_range(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    const auto k = static_cast<std::uint32_t>(std::stoul(spec));
    return {k, k};
  }
  const auto lo = static_cast<std::uint32_t>(std::stoul(spec.substr(0, colon)));
  const auto hi = static_cast<std::uint32_t>(std::stoul(spec.substr(colon + 1)));
  if (lo == 0 || hi < lo) throw UsageError("k range must be LO:HI with 1 <= LO <= HI");
  return {lo, hi};
}

std::map<std::uint32_t, std::uint32_t> parse_mixed(const std::string& spec) {
  std::map<std::uint32_t, std::uint32_t> lengths;
  std::istringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) {
    const auto x = token.find('x');
    if (x == std::string::npos)
      throw UsageError("--mixed wants LENxCOUNT[,LENxCOUNT...], got '" + token + "'");
    const auto len = static_cast<std::uint32_t>(std::stoul(token.substr(0, x)));
    const auto count = static_cast<std::uint32_t>(std::stoul(token.substr(x + 1)));
    lengths[len] += count;
  }
  if (lengths.empty()) throw UsageError("--mixed: no groups given");
  return lengths;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file '" + path + "'");
  out << content;
}

popmatch::PreferenceProfile load_profile(const std::string& path) {
  if (path == "-") return popmatch::read_profile(std::cin);
  std::ifstream in(path);
  if (!in) throw popmatch::ProfileParseError("cannot open input file '" + path + "'");
  return popmatch::read_profile(in);
}

std::string csv_row_end() { return "\n"; }

// ---- gen ------------------------------------------------------------------

struct GenOptions {
  std::uint32_t n = 0, m = 0, k = 0;
  std::string mixed;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenOptions& opt) {
  popmatch::PreferenceProfile profile;
  if (!opt.mixed.empty()) {
    profile = popmatch::generate_mixed(parse_mixed(opt.mixed), opt.m, opt.seed);
    std::cerr << "popmatch gen: mixed=" << opt.mixed << " m=" << opt.m << " seed=" << opt.seed
              << " out=" << (opt.out.empty() ? "-" : opt.out) << "\n";
  } else {
    profile = popmatch::generate_incomplete(opt.n, opt.m, opt.k, opt.seed);
    std::cerr << "popmatch gen: n=" << opt.n << " m=" << opt.m << " k=" << opt.k
              << " seed=" << opt.seed << " out=" << (opt.out.empty() ? "-" : opt.out) << "\n";
  }
  write_output(opt.out, popmatch::profile_to_string(profile));
  return kExitOk;
}

// ---- check ----------------------------------------------------------------

struct CheckOptions {
  std::string input = "-";
  bool brute = false;
  bool witness = false;
  std::uint64_t cap = popmatch::kDefaultEnumerationCap;
};

int cmd_check(const CheckOptions& opt) {
  const auto profile = load_profile(opt.input);
  std::cerr << "popmatch check: input=" << opt.input << " brute=" << (opt.brute ? 1 : 0)
            << " cap=" << opt.cap << "\n";

  const auto fs = popmatch::decompose(profile);
  const auto graph = popmatch::build_top_choice_graph(profile, fs);
  const auto stats = popmatch::census(graph);
  const bool fast_exists = !stats.has_complex();

  std::uint32_t len_min = profile.list_size(0);
  std::uint32_t len_max = len_min;
  for (popmatch::PersonId a = 1; a < profile.n; ++a) {
    len_min = std::min(len_min, profile.list_size(a));
    len_max = std::max(len_max, profile.list_size(a));
  }
  std::ostringstream out;
  out << "profile: n=" << profile.n << " m=" << profile.m << " lengths=" << len_min << ".."
      << len_max << "\n";
  out << "decomposition: |F|=" << fs.f_size << " |S|=" << (profile.m - fs.f_size)
      << " |A1|=" << fs.a1.size() << " |A2|=" << fs.a2.size()
      << " a2_ratio=" << popmatch::format_double(static_cast<double>(fs.a2.size()) / profile.n)
      << "\n";
  out << "components: trees=" << stats.trees << " (isolated=" << stats.isolated_vertices
      << ") unicyclic=" << stats.unicyclic << " complex=" << stats.complex_components << "\n";
  if (fast_exists) {
    out << "verdict: popular matching exists\n";
  } else {
    out << "verdict: no popular matching (complex component: " << stats.first_complex->vertices
        << " vertices, " << stats.first_complex->edges << " edges)\n";
  }

  if (opt.witness) {
    if (const auto witness = popmatch::exists_a_perfect_matching(profile, fs)) {
      out << "witness:";
      for (popmatch::PersonId a = 0; a < profile.n; ++a) {
        out << ' ' << a << ':';
        if (popmatch::LastResort::is(profile, witness->assignment[a]))
          out << 'L';
        else
          out << witness->assignment[a];
      }
      out << "\n";
    } else {
      out << "witness: none\n";
    }
  }

  bool disagreement = false;
  if (opt.brute) {
    const auto brute = popmatch::exists_popular_bruteforce(profile, opt.cap);
    out << "brute: " << (brute ? "popular matching exists" : "no popular matching") << "\n";
    if (brute.has_value() != fast_exists) {
      out << "agreement: MISMATCH between brute-force and fast verdicts\n";
      disagreement = true;
    } else {
      out << "agreement: ok\n";
    }
  }

  std::cout << out.str();
  return disagreement ? kExitDisagreement : kExitOk;
}

// ---- sweep ----------------------------------------------------------------

struct SweepOptions {
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  std::string alpha;
  std::uint64_t trials = 200;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string format = "csv";
  std::string out;
  bool timing = false;
};

int cmd_sweep(const SweepOptions& opt) {
  popmatch::SweepConfig config;
  config.n = opt.n;
  config.k = opt.k;
  config.alphas = parse_grid(opt.alpha);
  config.trials = opt.trials;
  config.seed = opt.seed;
  config.threads = opt.threads ? opt.threads : popmatch::hardware_threads();
  config.record_timing = opt.timing;
  std::cerr << "popmatch sweep: n=" << opt.n << " k=" << opt.k << " alpha=" << opt.alpha
            << " trials=" << opt.trials << " seed=" << opt.seed << " threads=" << config.threads
            << " format=" << opt.format << " timing=" << (opt.timing ? 1 : 0) << "\n";

  const auto report = popmatch::sweep_existence(config);
  if (opt.format == "csv") {
    write_output(opt.out, popmatch::sweep_csv(report));
  } else if (opt.format == "json") {
    write_output(opt.out, popmatch::sweep_json(report));
  } else if (opt.format == "svg") {
    write_output(opt.out, popmatch::sweep_svg(report, popmatch::alpha_k(opt.k)));
  } else {
    throw UsageError("unknown format '" + opt.format + "' (csv|json|svg)");
  }
  return kExitOk;
}

// ---- alpha ----------------------------------------------------------------

struct AlphaOptions {
  std::string k = "1:10";
  std::string format = "csv";
  std::string out;
};

int cmd_alpha(const AlphaOptions& opt) {
  const auto [k_lo, k_hi] = parse_k_range(opt.k);
  std::cerr << "popmatch alpha: k=" << opt.k << " format=" << opt.format << "\n";

  const std::uint32_t k_max = std::max(k_hi, 4u);
  const auto full = popmatch::transition_curve(k_max);
  popmatch::TransitionCurve curve;
  for (const auto& point : full.points)
    if (point.k >= k_lo && point.k <= k_hi) curve.points.push_back(point);

  const double star = popmatch::alpha_star();
  if (opt.format == "csv") {
    write_output(opt.out, popmatch::curve_csv(curve, star));
  } else if (opt.format == "json") {
    write_output(opt.out, popmatch::curve_json(curve, star));
  } else if (opt.format == "svg") {
    write_output(opt.out, popmatch::curve_svg(curve, star));
  } else {
    throw UsageError("unknown format '" + opt.format + "' (csv|json|svg)");
  }
  return kExitOk;
}

// ---- graphsim -------------------------------------------------------------

struct GraphsimOptions {
  std::uint32_t x = 0, y = 0;
  std::string z;          // G mode, grid
  std::int64_t z1 = -1;   // G' mode, fixed
  std::int64_t z2 = -1;
  std::string beta;       // G' mode, grid over z1 = round(beta * edges)
  std::uint64_t edges = 0;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
};

int cmd_graphsim(const GraphsimOptions& opt) {
  const unsigned threads = opt.threads ? opt.threads : popmatch::hardware_threads();
  struct Row {
    bool gprime;
    std::uint64_t z1, z2;
  };
  std::vector<Row> rows;
  if (!opt.z.empty()) {
    for (const double z : parse_grid(opt.z))
      rows.push_back({false, static_cast<std::uint64_t>(std::llround(z)), 0});
  } else if (!opt.beta.empty()) {
    if (opt.edges == 0) throw UsageError("--beta needs --edges N (z1 = round(beta*N))");
    for (const double beta : parse_grid(opt.beta)) {
      const auto z1 = static_cast<std::uint64_t>(std::llround(beta * opt.edges));
      if (z1 > opt.edges) throw UsageError("--beta values must be in [0, 1]");
      rows.push_back({true, z1, opt.edges - z1});
    }
  } else if (opt.z1 >= 0 && opt.z2 >= 0) {
    rows.push_back({true, static_cast<std::uint64_t>(opt.z1),
                    static_cast<std::uint64_t>(opt.z2)});
  } else {
    throw UsageError("graphsim wants --z GRID, or --z1 and --z2, or --beta GRID with --edges");
  }
  std::cerr << "popmatch graphsim: x=" << opt.x << " y=" << opt.y
            << (opt.z.empty() ? "" : " z=" + opt.z)
            << (opt.beta.empty() ? "" : " beta=" + opt.beta + " edges=" + std::to_string(opt.edges))
            << (opt.z1 >= 0 ? " z1=" + std::to_string(opt.z1) + " z2=" + std::to_string(opt.z2)
                            : "")
            << " trials=" << opt.trials << " seed=" << opt.seed << " threads=" << threads << "\n";

  std::ostringstream csv;
  csv << "graph,x,y,z1,z2,trials,complex_freq,complex_se" << csv_row_end();
  std::vector<std::uint8_t> complex_flags(opt.trials);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Row& row = rows[r];
    popmatch::parallel_for(opt.trials, threads, [&](std::uint64_t t) {
      const std::uint64_t trial_seed = popmatch::derive_seed(opt.seed, r, t);
      const auto graph =
          row.gprime ? popmatch::sample_Gprime(opt.x, opt.y, row.z1, row.z2, trial_seed)
                     : popmatch::sample_G(opt.x, opt.y, row.z1, trial_seed);
      complex_flags[t] = popmatch::has_complex_component(graph) ? 1 : 0;
    });
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < opt.trials; ++t) hits += complex_flags[t];
    const double freq = static_cast<double>(hits) / static_cast<double>(opt.trials);
    const double se = std::sqrt(freq * (1.0 - freq) / static_cast<double>(opt.trials));
    csv << (row.gprime ? "Gprime" : "G") << ',' << opt.x << ',' << opt.y << ',' << row.z1 << ','
        << row.z2 << ',' << opt.trials << ',' << popmatch::format_double(freq) << ','
        << popmatch::format_double(se) << csv_row_end();
  }
  write_output(opt.out, csv.str());
  return kExitOk;
}

// ---- branch ---------------------------------------------------------------

struct BranchOptions {
  double c1 = 0, c2 = 0;
  std::uint64_t trials = 10'000;
  std::uint64_t cap = 10'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::uint64_t pop_v = 0, pop_u = 0;
  std::string out;
};

int cmd_branch(const BranchOptions& opt) {
  popmatch::BranchingConfig config;
  config.c1 = opt.c1;
  config.c2 = opt.c2;
  config.trials = opt.trials;
  config.cap = opt.cap;
  config.seed = opt.seed;
  config.threads = opt.threads ? opt.threads : popmatch::hardware_threads();
  const bool binomial = opt.pop_v != 0 || opt.pop_u != 0;
  if (binomial) {
    config.model = popmatch::OffspringModel::binomial;
    config.population_v = opt.pop_v;
    config.population_u = opt.pop_u;
  }
  std::cerr << "popmatch branch: c1=" << popmatch::format_double(opt.c1)
            << " c2=" << popmatch::format_double(opt.c2) << " trials=" << opt.trials
            << " cap=" << opt.cap << " seed=" << opt.seed << " threads=" << config.threads
            << " model=" << (binomial ? "binomial" : "poisson") << "\n";

  const auto outcome = popmatch::branching_simulate(config);
  const double fixed_point = popmatch::solve_survival_fixed_point(opt.c1, opt.c2);

  std::ostringstream csv;
  csv << "c1,c2,model,trials,cap,survival_freq,survival_se,fixed_point_y,abs_diff"
      << csv_row_end();
  csv << popmatch::format_double(opt.c1) << ',' << popmatch::format_double(opt.c2) << ','
      << (binomial ? "binomial" : "poisson") << ',' << opt.trials << ',' << opt.cap << ','
      << popmatch::format_double(outcome.survival_frequency) << ','
      << popmatch::format_double(outcome.standard_error) << ','
      << popmatch::format_double(fixed_point) << ','
      << popmatch::format_double(std::abs(outcome.survival_frequency - fixed_point))
      << csv_row_end();
  write_output(opt.out, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"popular-matching phase-transition toolkit"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random preference profile");
  gen_cmd->add_option("--n", gen.n, "people (ignored with --mixed)");
  gen_cmd->add_option("--m", gen.m, "real items")->required();
  gen_cmd->add_option("--k", gen.k, "list length");
  gen_cmd->add_option("--mixed", gen.mixed, "LENxCOUNT[,LENxCOUNT...] mixed list lengths");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed (default 0)")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "existence check for a profile file");
  check_cmd->add_option("input", check.input, "profile file, or - for stdin");
  check_cmd->add_flag("--brute", check.brute, "also run the brute-force oracle");
  check_cmd->add_flag("--witness", check.witness, "print an A-perfect witness if one exists");
  check_cmd->add_option("--cap", check.cap, "enumeration cap for --brute")
      ->capture_default_str();

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo existence sweep over alpha");
  sweep_cmd->add_option("--n", sweep.n, "people per instance")->required();
  sweep_cmd->add_option("--k", sweep.k, "list length")->required();
  sweep_cmd->add_option("--alpha", sweep.alpha, "alpha value or START:STOP:STEP")->required();
  sweep_cmd->add_option("--trials", sweep.trials, "instances per alpha")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "RNG seed (default 0)")->capture_default_str();
  sweep_cmd->add_option("--threads", sweep.threads, "worker threads (default: hardware)");
  sweep_cmd->add_option("--format", sweep.format, "csv|json|svg")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "output file (default stdout)");
  sweep_cmd->add_flag("--timing", sweep.timing, "record wall-clock elapsed_ms per row");

  AlphaOptions alpha;
  auto* alpha_cmd = app.add_subcommand("alpha", "transition-point table alpha_k");
  alpha_cmd->add_option("--k", alpha.k, "k value or LO:HI range")->capture_default_str();
  alpha_cmd->add_option("--format", alpha.format, "csv|json|svg")->capture_default_str();
  alpha_cmd->add_option("--out", alpha.out, "output file (default stdout)");

  GraphsimOptions graphsim;
  auto* graphsim_cmd =
      app.add_subcommand("graphsim", "complex-component frequency in G / G' samples");
  graphsim_cmd->add_option("--x", graphsim.x, "|V|")->required();
  graphsim_cmd->add_option("--y", graphsim.y, "|U|")->required();
  graphsim_cmd->add_option("--z", graphsim.z, "edge count for G, value or START:STOP:STEP");
  graphsim_cmd->add_option("--z1", graphsim.z1, "normal edge count for G'");
  graphsim_cmd->add_option("--z2", graphsim.z2, "last-resort edge count for G'");
  graphsim_cmd->add_option("--beta", graphsim.beta,
                           "G' sweep: z1 = round(beta*edges), value or START:STOP:STEP");
  graphsim_cmd->add_option("--edges", graphsim.edges, "total edges for --beta mode");
  graphsim_cmd->add_option("--trials", graphsim.trials, "samples per row")
      ->capture_default_str();
  graphsim_cmd->add_option("--seed", graphsim.seed, "RNG seed (default 0)")
      ->capture_default_str();
  graphsim_cmd->add_option("--threads", graphsim.threads, "worker threads (default: hardware)");
  graphsim_cmd->add_option("--out", graphsim.out, "output file (default stdout)");

  BranchOptions branch;
  auto* branch_cmd =
      app.add_subcommand("branch", "branching-process survival vs fixed point");
  branch_cmd->add_option("--c1", branch.c1, "mean offspring, V side")->required();
  branch_cmd->add_option("--c2", branch.c2, "mean offspring, U side")->required();
  branch_cmd->add_option("--trials", branch.trials, "trials")->capture_default_str();
  branch_cmd->add_option("--cap", branch.cap, "progeny cap classifying survival")
      ->capture_default_str();
  branch_cmd->add_option("--seed", branch.seed, "RNG seed (default 0)")->capture_default_str();
  branch_cmd->add_option("--threads", branch.threads, "worker threads (default: hardware)");
  branch_cmd->add_option("--binomial-pop-v", branch.pop_v,
                         "binomial offspring: V-side population");
  branch_cmd->add_option("--binomial-pop-u", branch.pop_u,
                         "binomial offspring: U-side population");
  branch_cmd->add_option("--out", branch.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (check_cmd->parsed()) return cmd_check(check);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep);
    if (alpha_cmd->parsed()) return cmd_alpha(alpha);
    if (graphsim_cmd->parsed()) return cmd_graphsim(graphsim);
    if (branch_cmd->parsed()) return cmd_branch(branch);
  } catch (const popmatch::ProfileParseError& e) {
    std::cerr << "popmatch: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const popmatch::EnumerationCapExceeded& e) {
    std::cerr << "popmatch: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "popmatch: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "popmatch: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
