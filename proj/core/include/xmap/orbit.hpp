#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xmap/prime_oracle.hpp"
#include "xmap/status_cache.hpp"

namespace xmap {

// 2 -> 3 -> 5 -> 9 -> 2.
inline constexpr std::array<std::int64_t, 4> kFundamentalCycle = {2, 3, 5, 9};

constexpr bool in_fundamental_cycle(std::int64_t v) {
  return v == 2 || v == 3 || v == 5 || v == 9;
}

inline constexpr std::uint64_t kDefaultBudget = 1000;

enum class StatusKind { Survives, Dies, BudgetExceeded, Overflow };

struct SurvivalStatus {
  StatusKind kind = StatusKind::BudgetExceeded;
  // Steps from the start to the first non-positive iterate. Only known when
  // the orbit was followed all the way down rather than read from the cache.
  std::optional<std::uint64_t> steps_to_nonpositive;

  bool survives() const { return kind == StatusKind::Survives; }
  bool dies() const { return kind == StatusKind::Dies; }
  bool resolved() const { return survives() || dies(); }

  friend bool operator==(const SurvivalStatus&, const SurvivalStatus&) = default;
};

const char* to_string(StatusKind k);

struct Orbit {
  std::int64_t start = 0;
  std::vector<std::int64_t> trajectory;
  SurvivalStatus outcome;
  std::size_t resolution_index = 0;
};

// A repeat outside {2,3,5,9}. Nobody has seen one; if it happens it is a
// research result, so the whole cycle is carried out.
class NovelCycleDetected : public std::runtime_error {
 public:
  explicit NovelCycleDetected(std::vector<std::int64_t> cycle);
  const std::vector<std::int64_t>& cycle() const { return cycle_; }

 private:
  std::vector<std::int64_t> cycle_;
};

// Follows X from n until a non-positive value, the fundamental cycle, a
// cached value, a repeat, or `budget` applications of X. X overflow yields
// an Overflow outcome. Throws NovelCycleDetected on a repeat.
Orbit iterate_orbit(const PrimeOracle& oracle, std::uint64_t n,
                    std::uint64_t budget, const StatusCache& cache);

// Resolves n and, for Survives/Dies, records the verdict for every positive
// trajectory member.
SurvivalStatus survives(const PrimeOracle& oracle, std::uint64_t n,
                        std::uint64_t budget, StatusCache& cache);

}  // namespace xmap
