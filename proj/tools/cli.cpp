#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "xmap/xmap.hpp"

namespace xmap::cli {

namespace {

class CliFailure : public std::runtime_error {
 public:
  CliFailure(int code, std::string kind, const std::string& what)
      : std::runtime_error(what), code_(code), kind_(std::move(kind)) {}
  int code() const { return code_; }
  const std::string& kind() const { return kind_; }

 private:
  int code_;
  std::string kind_;
};

struct Options {
  std::uint64_t value = 0;
  std::uint64_t max = 0;
  std::uint64_t budget = kDefaultBudget;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string method = "forward";
  bool no_filter = false;
  std::string format = "dot";
  std::optional<std::uint64_t> subtree;
  std::vector<double> alphas = kDefaultAlphas;
  std::size_t k_min = kDefaultFitKMin;
  std::string scaling_method = "preimage";
  std::optional<std::uint64_t> lemma3_max;
  bool json = false;
  std::string output;
  std::string fit_output;
  std::string cache_path;
};

std::uint64_t sieve_limit_for(std::uint64_t n) {
  constexpr std::uint64_t kMin = 1u << 16;
  constexpr std::uint64_t kMax = 1u << 27;
  return std::clamp<std::uint64_t>(2 * n + 2, kMin, kMax);
}

class Session {
 public:
  Session(const Options& opts, std::uint64_t scale)
      : oracle_(sieve_limit_for(scale)) {
    path_ = opts.cache_path;
    if (path_.empty()) {
      if (const char* env = std::getenv(kCacheEnv)) path_ = env;
    }
    const std::uint64_t dense = oracle_.sieve_limit();
    if (!path_.empty() && std::filesystem::exists(path_)) {
      try {
        cache_ = load_cache(path_, dense);
      } catch (const CacheFormatError& e) {
        throw CliFailure(kUsage, "cache", path_.string() + ": " + e.what());
      }
    } else {
      cache_ = StatusCache(dense);
    }
  }

  const PrimeOracle& oracle() const { return oracle_; }
  StatusCache& cache() { return cache_; }

  void persist() {
    if (!path_.empty()) save_cache(path_, cache_);
  }

 private:
  PrimeOracle oracle_;
  StatusCache cache_;
  std::filesystem::path path_;
};

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw CliFailure(kUsage, "io", "cannot write " + path);
  file << text;
  if (!file) throw CliFailure(kUsage, "io", "write failed for " + path);
}

std::string join(const std::vector<std::uint64_t>& values, std::size_t limit = 20) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size() && i < limit; ++i) {
    if (i) os << ' ';
    os << values[i];
  }
  if (values.size() > limit) os << " ...";
  return os.str();
}

void require_cutoff(std::uint64_t n) {
  if (n < 2) throw CliFailure(kUsage, "usage", "--max must be >= 2");
}

int cmd_x(const Options& opts, std::ostream& out) {
  if (opts.value < 1) throw CliFailure(kUsage, "usage", "n must be >= 1");
  const PrimeOracle oracle(sieve_limit_for(0));
  const Factorization f = factorize(oracle, opts.value);
  out << "Pi=" << pi_sum(f) << " C=" << c_sum(f) << " X=" << x_map(f) << '\n';
  return kOk;
}

int cmd_orbit(const Options& opts, std::ostream& out) {
  if (opts.value < 1) throw CliFailure(kUsage, "usage", "n must be >= 1");
  const PrimeOracle oracle(sieve_limit_for(opts.value));
  // Cold cache so the full trajectory is shown.
  const StatusCache cache(0);
  const Orbit orbit = iterate_orbit(oracle, opts.value, opts.budget, cache);
  for (std::int64_t v : orbit.trajectory) out << v << ' ';
  out << to_string(orbit.outcome.kind) << '\n';
  if (orbit.outcome.kind == StatusKind::BudgetExceeded) {
    throw CliFailure(kOverflowOrBudget, "budget",
                     "orbit of " + std::to_string(opts.value) + " exceeded budget " +
                         std::to_string(opts.budget));
  }
  if (orbit.outcome.kind == StatusKind::Overflow) {
    throw CliFailure(kOverflowOrBudget, "overflow",
                     "orbit of " + std::to_string(opts.value) + " overflowed");
  }
  return kOk;
}

void check_budget(const std::vector<std::uint64_t>& exceeded) {
  if (!exceeded.empty()) {
    throw CliFailure(kOverflowOrBudget, "budget",
                     std::to_string(exceeded.size()) +
                         " values exceeded the orbit budget: " + join(exceeded));
  }
}

int cmd_search(const Options& opts, std::ostream& out) {
  require_cutoff(opts.max);
  Session session(opts, opts.max);

  std::optional<ForwardSearchResult> forward;
  std::optional<PreimageSearchResult> preimage;
  if (opts.method == "forward" || opts.method == "both") {
    SearchConfig config{opts.max, !opts.no_filter, opts.budget, opts.workers};
    forward = forward_search(config, session.oracle(), session.cache());
  }
  if (opts.method == "preimage" || opts.method == "both") {
    preimage = preimage_survivor_search(opts.max, session.oracle(), session.cache(),
                                        {opts.budget, opts.workers});
  }
  session.persist();
  if (forward) check_budget(forward->budget_exceeded);
  if (preimage) check_budget(preimage->budget_exceeded);

  const SurvivorList& list = forward ? forward->survivors : preimage->survivors;
  if (forward && preimage && forward->survivors != preimage->survivors) {
    std::vector<std::uint64_t> only_forward, only_preimage;
    const auto& a = forward->survivors.entries;
    const auto& b = preimage->survivors.entries;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(only_forward));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                        std::back_inserter(only_preimage));
    throw CliFailure(kViolation, "mismatch",
                     "forward-only=[" + join(only_forward) + "] preimage-only=[" +
                         join(only_preimage) + "]");
  }
  std::ostringstream text;
  write_survivor_list(text, list);
  emit(out, text.str(), opts.output);
  return kOk;
}

int cmd_preimage(const Options& opts, std::ostream& out) {
  if (opts.value < 2) throw CliFailure(kUsage, "usage", "n must be >= 2");
  const PrimeOracle oracle(sieve_limit_for(opts.value));
  for (const PreimageNode& node : survivor_preimages(opts.value, oracle)) {
    out << node.value << ' ' << to_string(node.kind);
    if (node.kind == EdgeKind::BiprimePair) out << ' ' << node.k << ' ' << node.j;
    out << '\n';
  }
  return kOk;
}

int cmd_tree(const Options& opts, std::ostream& out) {
  const TreeFormat format = opts.format == "json" ? TreeFormat::Json : TreeFormat::Dot;
  std::string doc;
  if (opts.subtree) {
    if (*opts.subtree < 2) throw CliFailure(kUsage, "usage", "--subtree must be >= 2");
    const PrimeOracle oracle(sieve_limit_for(*opts.subtree));
    doc = export_tree(preimage_subtree(*opts.subtree, oracle), format);
  } else {
    require_cutoff(opts.max);
    Session session(opts, opts.max);
    auto result = preimage_survivor_search(opts.max, session.oracle(), session.cache(),
                                           {opts.budget, opts.workers});
    session.persist();
    check_budget(result.budget_exceeded);
    doc = export_tree(result.forest, format);
  }
  emit(out, doc, opts.output);
  return kOk;
}

int cmd_chain(const Options& opts, std::ostream& out) {
  const PrimeOracle oracle(sieve_limit_for(opts.value));
  if (!oracle.is_prime(opts.value)) {
    throw CliFailure(kUsage, "usage", std::to_string(opts.value) + " is not prime");
  }
  std::ostringstream text;
  write_chain_csv(text, {cunningham_chain(opts.value, oracle)});
  emit(out, text.str(), opts.output);
  return kOk;
}

int cmd_chain_scan(const Options& opts, std::ostream& out) {
  require_cutoff(opts.max);
  const PrimeOracle oracle(sieve_limit_for(opts.max));
  std::vector<PrimeChain> chains;
  std::vector<std::uint64_t> bad;
  for (std::uint64_t p = 2; p <= opts.max; ++p) {
    if (!oracle.is_prime(p)) continue;
    chains.push_back(cunningham_chain(p, oracle));
    if (p != 2 && (chains.back().length() > p - 1 || !verify_fermat_termination(p))) {
      bad.push_back(p);
    }
  }
  std::ostringstream text;
  write_chain_csv(text, chains);
  emit(out, text.str(), opts.output);
  if (!bad.empty()) {
    throw CliFailure(kViolation, "violation", "chain bound fails for: " + join(bad));
  }
  return kOk;
}

int cmd_scaling(const Options& opts, std::ostream& out, std::ostream& err) {
  require_cutoff(opts.max);
  Session session(opts, opts.max);
  SurvivorList list;
  if (opts.scaling_method == "forward") {
    SearchConfig config{opts.max, true, opts.budget, opts.workers};
    auto result = forward_search(config, session.oracle(), session.cache());
    check_budget(result.budget_exceeded);
    list = std::move(result.survivors);
  } else {
    auto result = preimage_survivor_search(opts.max, session.oracle(), session.cache(),
                                           {opts.budget, opts.workers});
    check_budget(result.budget_exceeded);
    list = std::move(result.survivors);
  }
  session.persist();

  const ScalingSeries series = build_series(list, opts.alphas, opts.k_min);
  std::ostringstream csv;
  emit_csv(csv, series);
  emit(out, csv.str(), opts.output);

  if (series.fit) {
    std::ostringstream summary;
    write_fit_summary(summary, *series.fit);
    if (!opts.fit_output.empty()) {
      emit(out, summary.str(), opts.fit_output);
    } else {
      err << "fit: exponent=" << format_double(series.fit->slope)
          << " k_min=" << series.fit->k_min << " k_max=" << series.fit->k_max << '\n';
    }
  } else if (!opts.fit_output.empty()) {
    throw CliFailure(kUsage, "insufficient_data",
                     "need at least " + std::to_string(2 * opts.k_min) +
                         " survivors to fit, have " + std::to_string(list.size()));
  }
  return kOk;
}

int cmd_verify(const Options& opts, std::ostream& out) {
  if (opts.max < 30) throw CliFailure(kUsage, "usage", "--max must be >= 30");
  Session session(opts, opts.max);
  LemmaRanges ranges = LemmaRanges::uniform(opts.max);
  if (opts.lemma3_max) ranges.lemma3 = *opts.lemma3_max;
  const auto reports = verify_all(ranges, session.oracle(), session.cache(),
                                  {opts.budget, opts.workers});
  session.persist();
  if (opts.json) {
    emit(out, reports_json(reports), opts.output);
  } else {
    std::ostringstream text;
    write_reports_text(text, reports);
    emit(out, text.str(), opts.output);
  }
  std::uint64_t violations = 0;
  for (const auto& r : reports) violations += r.violation_count;
  if (violations > 0) {
    throw CliFailure(kViolation, "violation",
                     std::to_string(violations) + " lemma violations");
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"xmap: survivors of X(n) = Pi(n) - C(n) + n"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", opts.budget, "Maximum X applications per orbit")
        ->check(CLI::PositiveNumber);
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", opts.workers,
                    "Worker threads (default: hardware concurrency)")
        ->check(CLI::PositiveNumber);
  };
  auto add_cache = [&](CLI::App* sub) {
    sub->add_option("--cache", opts.cache_path,
                    std::string("Status cache file, loaded if present and rewritten "
                                "on exit (default: $") + kCacheEnv + ")");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", opts.output, "Write to this file instead of stdout");
  };

  auto* x = app.add_subcommand("x", "Print Pi(n), C(n) and X(n)");
  x->add_option("n", opts.value, "Positive integer")->required();

  auto* orbit = app.add_subcommand("orbit", "Print the X trajectory of n and its fate");
  orbit->add_option("n", opts.value, "Positive integer")->required();
  add_budget(orbit);

  auto* search = app.add_subcommand("search", "List all survivors <= N as '<k> <n(k)>'");
  search->add_option("--max", opts.max, "Cutoff N")->required();
  search->add_option("--method", opts.method, "forward, preimage, or both (diffed)")
      ->check(CLI::IsMember({"forward", "preimage", "both"}));
  search->add_flag("--no-filter", opts.no_filter,
                   "Forward search tests every n instead of candidates only");
  add_budget(search);
  add_workers(search);
  add_cache(search);
  add_output(search);

  auto* preimage = app.add_subcommand("preimage", "List survivor-candidate preimages of n");
  preimage->add_option("n", opts.value, "Integer >= 2")->required();

  auto* tree = app.add_subcommand("tree", "Export the survivor preimage forest");
  auto* tree_max = tree->add_option("--max", opts.max, "Cutoff N");
  auto* tree_sub = tree->add_option("--subtree", opts.subtree,
                                    "Export only n and its direct preimages");
  tree_max->excludes(tree_sub);
  tree->add_option("--format", opts.format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));
  add_budget(tree);
  add_workers(tree);
  add_cache(tree);
  add_output(tree);

  auto* chain = app.add_subcommand("chain", "Cunningham chain (2nd kind) starting at p, as CSV");
  chain->add_option("p", opts.value, "Prime")->required();
  add_output(chain);

  auto* chain_scan = app.add_subcommand(
      "chain-scan", "Chains for every prime <= P, checking the length bound");
  chain_scan->add_option("--max", opts.max, "Largest start prime P")->required();
  add_output(chain_scan);

  auto* scaling = app.add_subcommand("scaling", "Survivor growth data n(k)/k^alpha as CSV");
  scaling->add_option("--max", opts.max, "Cutoff N")->required();
  scaling->add_option("--alphas", opts.alphas, "Exponents to divide out")->delimiter(',');
  scaling->add_option("--kmin", opts.k_min, "First index of the log-log fit")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  scaling->add_option("--method", opts.scaling_method, "Survivor source: preimage or forward")
      ->check(CLI::IsMember({"preimage", "forward"}));
  scaling->add_option("--fit-output", opts.fit_output,
                      "Write the fitted exponent and window here (else stderr)");
  add_budget(scaling);
  add_workers(scaling);
  add_cache(scaling);
  add_output(scaling);

  auto* verify = app.add_subcommand("verify-lemmas", "Exhaustive checks of the survivor lemmas");
  verify->add_option("--max", opts.max, "Upper bound for every check")->required();
  verify->add_option("--lemma3-max", opts.lemma3_max,
                     "Separate bound for the X(pn) check (default: --max)");
  verify->add_flag("--json", opts.json, "Emit JSON instead of text");
  add_budget(verify);
  add_workers(verify);
  add_cache(verify);
  add_output(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: usage: " << msg << '\n';
    return kUsage;
  }

  try {
    if (*x) return cmd_x(opts, out);
    if (*orbit) return cmd_orbit(opts, out);
    if (*search) return cmd_search(opts, out);
    if (*preimage) return cmd_preimage(opts, out);
    if (*tree) {
      if (!opts.subtree && opts.max == 0) {
        throw CliFailure(kUsage, "usage", "tree needs --max or --subtree");
      }
      return cmd_tree(opts, out);
    }
    if (*chain) return cmd_chain(opts, out);
    if (*chain_scan) return cmd_chain_scan(opts, out);
    if (*scaling) return cmd_scaling(opts, out, err);
    if (*verify) return cmd_verify(opts, out);
  } catch (const CliFailure& e) {
    err << "error: " << e.kind() << ": " << e.what() << '\n';
    return e.code();
  } catch (const NovelCycleDetected& e) {
    err << "error: novel_cycle: " << e.what() << '\n';
    return kNovelCycle;
  } catch (const OverflowError& e) {
    err << "error: overflow: " << e.what() << '\n';
    return kOverflowOrBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace xmap::cli
