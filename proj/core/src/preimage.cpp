#include "xmap/preimage.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "parallel.hpp"
#include "xmap/arithmetic.hpp"

namespace xmap {

namespace {

constexpr std::uint64_t kMaxSupported =
    static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

// Derives the node for a known survivor from its own factorization.
PreimageNode make_node(std::uint64_t value, const PrimeOracle& oracle) {
  PreimageNode node;
  node.value = value;
  if (in_fundamental_cycle(static_cast<std::int64_t>(value))) {
    node.kind = EdgeKind::CycleSeed;
    return node;
  }
  const Factorization f = factorize(oracle, value);
  const std::int64_t image = x_map(f);
  if (image <= 0) {
    throw std::logic_error("non-survivor " + std::to_string(value) +
                           " in preimage forest");
  }
  node.parent = static_cast<std::uint64_t>(image);
  switch (classify(f)) {
    case Classification::Prime:
      node.kind = EdgeKind::PrimeHalf;
      break;
    case Classification::OddDistinctBiprime:
      node.kind = EdgeKind::BiprimePair;
      node.k = f.factors()[0].prime;
      node.j = f.factors()[1].prime;
      break;
    default:
      throw std::logic_error("value " + std::to_string(value) +
                             " is not a survivor candidate");
  }
  return node;
}

}  // namespace

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::CycleSeed: return "cycle_seed";
    case EdgeKind::PrimeHalf: return "prime_half";
    case EdgeKind::BiprimePair: return "biprime_pair";
  }
  return "unknown";
}

std::vector<PreimageNode> survivor_preimages(std::uint64_t n,
                                             const PrimeOracle& oracle,
                                             std::uint64_t max_value) {
  if (n < 2) throw std::invalid_argument("survivor_preimages requires n >= 2");
  std::vector<PreimageNode> out;
  // Both preimage forms need n + 1 even.
  if (n % 2 == 0) return out;
  const std::uint64_t sum = checked_add(n, 1);
  const std::uint64_t half = sum / 2;

  if (half <= max_value && oracle.is_prime(half)) {
    PreimageNode node;
    node.value = half;
    node.parent = n;
    node.kind = EdgeKind::PrimeHalf;
    out.push_back(node);
  }

  // k * (sum - k) grows with k on k < sum/2, so the first product past
  // max_value ends the scan.
  auto try_pair = [&](std::uint64_t k) {
    const std::uint64_t j = sum - k;
    const unsigned __int128 product = static_cast<unsigned __int128>(k) * j;
    if (product > max_value) return false;
    if (!oracle.is_prime(j)) return true;
    if (product > kMaxSupported) {
      throw OverflowError("preimage product " + std::to_string(k) + "*" +
                          std::to_string(j) + " exceeds supported range");
    }
    PreimageNode node;
    node.value = static_cast<std::uint64_t>(product);
    node.parent = n;
    node.kind = EdgeKind::BiprimePair;
    node.k = k;
    node.j = j;
    out.push_back(node);
    return true;
  };

  std::uint64_t k = 3;
  bool done = false;
  for (std::uint32_t p : oracle.primes()) {
    if (p < 3) continue;
    if (p >= half) {
      k = half;
      break;
    }
    if (!try_pair(p)) {
      done = true;
      break;
    }
    k = p + 2;
  }
  for (; !done && k < half; k += 2) {
    if (static_cast<unsigned __int128>(k) * (sum - k) > max_value) break;
    if (oracle.is_prime(k) && !try_pair(k)) break;
  }
  std::sort(out.begin(), out.end(),
            [](const PreimageNode& a, const PreimageNode& b) { return a.value < b.value; });
  return out;
}

PreimageSearchResult preimage_survivor_search(std::uint64_t cutoff,
                                              const PrimeOracle& oracle,
                                              StatusCache& cache,
                                              const PreimageSearchOptions& options) {
  PreimageSearchResult result;
  result.survivors.cutoff = cutoff;
  if (cutoff < 2) return result;

  // Step 2a: resolve every prime <= cutoff forward, in parallel.
  std::mutex merge_mutex;
  std::vector<std::uint64_t> surviving_primes;
  detail::for_each_block(
      2, cutoff, 4096, options.workers,
      [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
        std::vector<std::uint64_t> local_survivors;
        std::vector<std::uint64_t> local_budget;
        for (std::uint64_t p = lo; p <= hi; ++p) {
          if (!oracle.is_prime(p)) continue;
          const SurvivalStatus status = survives(oracle, p, options.budget, cache);
          switch (status.kind) {
            case StatusKind::Survives: local_survivors.push_back(p); break;
            case StatusKind::Dies: break;
            case StatusKind::BudgetExceeded: local_budget.push_back(p); break;
            case StatusKind::Overflow:
              throw OverflowError("orbit of " + std::to_string(p) + " overflowed");
          }
        }
        std::lock_guard lock(merge_mutex);
        surviving_primes.insert(surviving_primes.end(), local_survivors.begin(),
                                local_survivors.end());
        result.budget_exceeded.insert(result.budget_exceeded.end(),
                                      local_budget.begin(), local_budget.end());
      });
  std::sort(surviving_primes.begin(), surviving_primes.end());
  std::sort(result.budget_exceeded.begin(), result.budget_exceeded.end());

  std::unordered_set<std::uint64_t> members(kFundamentalCycle.begin(),
                                            kFundamentalCycle.end());

  // Step 2b: each surviving prime and its iterates join the set. The set is
  // closed under X, so the walk stops at the first known member.
  for (std::uint64_t p : surviving_primes) {
    std::uint64_t v = p;
    for (std::uint64_t steps = 0; !members.contains(v); ++steps) {
      if (steps > options.budget) {
        throw std::logic_error("surviving orbit of " + std::to_string(p) +
                               " did not rejoin the survivor set");
      }
      members.insert(v);
      const std::int64_t next = x_of(oracle, v);
      if (next <= 0) {
        throw std::logic_error("surviving orbit of " + std::to_string(p) +
                               " reached " + std::to_string(next));
      }
      v = static_cast<std::uint64_t>(next);
    }
  }

  // Step 3: expand biprime-pair preimages of every member <= cutoff.
  std::vector<std::uint64_t> worklist;
  for (std::uint64_t v : members) {
    if (v <= cutoff) worklist.push_back(v);
  }
  std::sort(worklist.begin(), worklist.end(), std::greater<>());
  while (!worklist.empty()) {
    const std::uint64_t n = worklist.back();
    worklist.pop_back();
    for (const PreimageNode& node : survivor_preimages(n, oracle, cutoff)) {
      if (node.kind != EdgeKind::BiprimePair) continue;
      if (members.insert(node.value).second) worklist.push_back(node.value);
    }
  }

  std::vector<std::uint64_t> values(members.begin(), members.end());
  std::sort(values.begin(), values.end());

  std::unordered_map<std::uint64_t, std::size_t> index;
  result.forest.reserve(values.size());
  for (std::uint64_t v : values) {
    index.emplace(v, result.forest.size());
    result.forest.push_back(make_node(v, oracle));
    if (v <= cutoff) result.survivors.entries.push_back(v);
  }
  for (const PreimageNode& node : result.forest) {
    if (!node.parent) continue;
    auto it = index.find(*node.parent);
    if (it == index.end()) {
      throw std::logic_error("survivor set not closed under X at " +
                             std::to_string(node.value));
    }
    result.forest[it->second].children.push_back(node.value);
  }
  return result;
}

std::vector<PreimageNode> preimage_subtree(std::uint64_t value,
                                           const PrimeOracle& oracle) {
  std::vector<PreimageNode> nodes;
  nodes.push_back(make_node(value, oracle));
  for (PreimageNode& child : survivor_preimages(value, oracle)) {
    nodes.front().children.push_back(child.value);
    nodes.push_back(std::move(child));
  }
  return nodes;
}

}  // namespace xmap
