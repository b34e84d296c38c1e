#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "xmap/orbit.hpp"
#include "xmap/prime_oracle.hpp"
#include "xmap/status_cache.hpp"
#include "xmap/survivor_list.hpp"

namespace xmap {

enum class EdgeKind { CycleSeed, PrimeHalf, BiprimePair };

const char* to_string(EdgeKind k);

// A node of the survivor preimage forest. Edges point from a value to its
// image X(value); cycle seeds have no parent.
struct PreimageNode {
  std::uint64_t value = 0;
  std::optional<std::uint64_t> parent;
  EdgeKind kind = EdgeKind::CycleSeed;
  // Prime factors k < j, set only for BiprimePair.
  std::uint64_t k = 0;
  std::uint64_t j = 0;
  std::vector<std::uint64_t> children;

  friend bool operator==(const PreimageNode&, const PreimageNode&) = default;
};

// Survivor-candidate preimages of n, ascending by value:
//  - (n+1)/2 when n is odd and (n+1)/2 is prime,
//  - k * (n+1-k) for odd primes 3 <= k < (n+1)/2 with n+1-k prime.
// Pairs whose product exceeds max_value are skipped. Products that do not
// fit in the supported range throw OverflowError when unbounded.
std::vector<PreimageNode> survivor_preimages(
    std::uint64_t n, const PrimeOracle& oracle,
    std::uint64_t max_value = std::numeric_limits<std::uint64_t>::max());

struct PreimageSearchOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned workers = 1;
};

struct PreimageSearchResult {
  SurvivorList survivors;
  // Every node reached, including orbit members above the cutoff, ascending
  // by value, with children filled in.
  std::vector<PreimageNode> forest;
  // Primes whose orbit ran out of budget; not classified either way.
  std::vector<std::uint64_t> budget_exceeded;
};

// Hybrid search: seed {2,3,5,9}, resolve every prime <= N forward, then
// expand biprime-pair preimages of every collected value <= N until closed.
PreimageSearchResult preimage_survivor_search(std::uint64_t cutoff,
                                              const PrimeOracle& oracle,
                                              StatusCache& cache,
                                              const PreimageSearchOptions& options = {});

enum class TreeFormat { Dot, Json };

class TreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Renders a forest. Roots are cycle seeds, or nodes whose parent is absent
// from the set (a subtree export). Throws TreeError on a malformed node set.
std::string export_tree(const std::vector<PreimageNode>& nodes, TreeFormat format);

// One level of the tree: `value` as root plus its survivor preimages.
std::vector<PreimageNode> preimage_subtree(std::uint64_t value,
                                           const PrimeOracle& oracle);

}  // namespace xmap
