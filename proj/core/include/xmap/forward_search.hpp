#pragma once

#include <cstdint>
#include <vector>

#include "xmap/orbit.hpp"
#include "xmap/prime_oracle.hpp"
#include "xmap/status_cache.hpp"
#include "xmap/survivor_list.hpp"

namespace xmap {

struct SearchConfig {
  std::uint64_t cutoff = 2;
  // Only test primes, odd distinct biprimes and 9.
  bool filtered = true;
  std::uint64_t budget = kDefaultBudget;
  unsigned workers = 1;
};

struct ForwardSearchResult {
  SurvivorList survivors;
  // Values whose orbit exhausted the budget. Kept out of the list.
  std::vector<std::uint64_t> budget_exceeded;
};

// Tests every candidate in [2, cutoff]. Throws std::invalid_argument on a
// bad config, OverflowError if any orbit overflows, NovelCycleDetected on a
// new cycle. Output does not depend on config.workers.
ForwardSearchResult forward_search(const SearchConfig& config,
                                   const PrimeOracle& oracle, StatusCache& cache);

struct SurvivorCount {
  std::uint64_t survivors = 0;
  std::uint64_t primes = 0;  // pi(N), for the density comparison
};

SurvivorCount survivor_count(const SearchConfig& config, const PrimeOracle& oracle,
                             StatusCache& cache);

}  // namespace xmap
