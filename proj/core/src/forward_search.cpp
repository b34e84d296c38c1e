#include "xmap/forward_search.hpp"

#include <algorithm>
#include <mutex>

#include "parallel.hpp"
#include "xmap/arithmetic.hpp"

namespace xmap {

namespace {

bool is_candidate(const PrimeOracle& oracle, std::uint64_t n) {
  if (n == 9) return true;
  const Classification c = classify(factorize(oracle, n));
  return c == Classification::Prime || c == Classification::OddDistinctBiprime;
}

}  // namespace

ForwardSearchResult forward_search(const SearchConfig& config,
                                   const PrimeOracle& oracle, StatusCache& cache) {
  if (config.cutoff < 2) throw std::invalid_argument("search cutoff must be >= 2");
  if (config.budget < 1) throw std::invalid_argument("budget must be >= 1");

  ForwardSearchResult result;
  result.survivors.cutoff = config.cutoff;
  std::mutex merge_mutex;

  // Small blocks handed out in ascending order, so low values (the targets
  // of descending biprime orbits) are cached early.
  detail::for_each_block(
      2, config.cutoff, 2048, config.workers,
      [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
        std::vector<std::uint64_t> found;
        std::vector<std::uint64_t> exhausted;
        for (std::uint64_t n = lo; n <= hi; ++n) {
          if (config.filtered && !is_candidate(oracle, n)) continue;
          const SurvivalStatus status = survives(oracle, n, config.budget, cache);
          switch (status.kind) {
            case StatusKind::Survives: found.push_back(n); break;
            case StatusKind::Dies: break;
            case StatusKind::BudgetExceeded: exhausted.push_back(n); break;
            case StatusKind::Overflow:
              throw OverflowError("orbit of " + std::to_string(n) + " overflowed");
          }
        }
        std::lock_guard lock(merge_mutex);
        result.survivors.entries.insert(result.survivors.entries.end(),
                                        found.begin(), found.end());
        result.budget_exceeded.insert(result.budget_exceeded.end(),
                                      exhausted.begin(), exhausted.end());
      });

  std::sort(result.survivors.entries.begin(), result.survivors.entries.end());
  std::sort(result.budget_exceeded.begin(), result.budget_exceeded.end());
  return result;
}

SurvivorCount survivor_count(const SearchConfig& config, const PrimeOracle& oracle,
                             StatusCache& cache) {
  const auto result = forward_search(config, oracle, cache);
  SurvivorCount count;
  count.survivors = result.survivors.size();
  if (config.cutoff <= oracle.sieve_limit()) {
    count.primes = oracle.prime_count(config.cutoff);
  } else {
    for (std::uint64_t n = 2; n <= config.cutoff; ++n) count.primes += oracle.is_prime(n);
  }
  return count;
}

}  // namespace xmap
