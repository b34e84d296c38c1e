#include "xmap/orbit.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "xmap/arithmetic.hpp"

namespace xmap {

namespace {

std::string describe_cycle(const std::vector<std::int64_t>& cycle) {
  std::ostringstream os;
  os << "novel cycle detected:";
  for (auto v : cycle) os << ' ' << v;
  return os.str();
}

// Linear scan while the trajectory is short, hashed afterwards.
class VisitedSet {
 public:
  bool contains(const std::vector<std::int64_t>& trajectory,
                std::int64_t v) const {
    if (!hashed_.empty()) return hashed_.contains(v);
    return std::find(trajectory.begin(), trajectory.end() - 1, v) !=
           trajectory.end() - 1;
  }
  void note(const std::vector<std::int64_t>& trajectory) {
    constexpr std::size_t kSwitch = 64;
    if (trajectory.size() == kSwitch) {
      hashed_.insert(trajectory.begin(), trajectory.end() - 1);
    }
    if (trajectory.size() > kSwitch) hashed_.insert(trajectory[trajectory.size() - 2]);
  }

 private:
  std::unordered_set<std::int64_t> hashed_;
};

}  // namespace

const char* to_string(StatusKind k) {
  switch (k) {
    case StatusKind::Survives: return "SURVIVES";
    case StatusKind::Dies: return "DIES";
    case StatusKind::BudgetExceeded: return "BUDGET_EXCEEDED";
    case StatusKind::Overflow: return "OVERFLOW";
  }
  return "UNKNOWN";
}

NovelCycleDetected::NovelCycleDetected(std::vector<std::int64_t> cycle)
    : std::runtime_error(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

Orbit iterate_orbit(const PrimeOracle& oracle, std::uint64_t n,
                    std::uint64_t budget, const StatusCache& cache) {
  if (n == 0) throw std::invalid_argument("orbit start must be positive");
  if (budget == 0) throw std::invalid_argument("budget must be >= 1");

  Orbit orbit;
  orbit.start = static_cast<std::int64_t>(n);
  orbit.trajectory.push_back(orbit.start);
  VisitedSet visited;

  for (std::uint64_t step = 0;; ++step) {
    const std::int64_t v = orbit.trajectory.back();
    const std::size_t index = orbit.trajectory.size() - 1;

    if (v <= 0) {
      orbit.outcome = {StatusKind::Dies, step};
      orbit.resolution_index = index;
      return orbit;
    }
    if (in_fundamental_cycle(v)) {
      orbit.outcome = {StatusKind::Survives, std::nullopt};
      orbit.resolution_index = index;
      return orbit;
    }
    if (auto cached = cache.lookup(static_cast<std::uint64_t>(v))) {
      orbit.outcome = {*cached == Verdict::Survives ? StatusKind::Survives
                                                    : StatusKind::Dies,
                       std::nullopt};
      orbit.resolution_index = index;
      return orbit;
    }
    if (index > 0 && visited.contains(orbit.trajectory, v)) {
      auto first = std::find(orbit.trajectory.begin(), orbit.trajectory.end(), v);
      throw NovelCycleDetected(
          std::vector<std::int64_t>(first, orbit.trajectory.end() - 1));
    }
    if (step == budget) {
      orbit.outcome = {StatusKind::BudgetExceeded, std::nullopt};
      orbit.resolution_index = index;
      return orbit;
    }

    std::int64_t next;
    try {
      next = x_of(oracle, static_cast<std::uint64_t>(v));
    } catch (const OverflowError&) {
      orbit.outcome = {StatusKind::Overflow, std::nullopt};
      orbit.resolution_index = index;
      return orbit;
    }
    orbit.trajectory.push_back(next);
    visited.note(orbit.trajectory);
  }
}

SurvivalStatus survives(const PrimeOracle& oracle, std::uint64_t n,
                        std::uint64_t budget, StatusCache& cache) {
  if (auto cached = cache.lookup(n)) {
    return {*cached == Verdict::Survives ? StatusKind::Survives : StatusKind::Dies,
            std::nullopt};
  }
  const Orbit orbit = iterate_orbit(oracle, n, budget, cache);
  if (!orbit.outcome.resolved()) return orbit.outcome;
  const Verdict verdict =
      orbit.outcome.survives() ? Verdict::Survives : Verdict::Dies;
  for (std::size_t i = 0; i <= orbit.resolution_index; ++i) {
    const std::int64_t v = orbit.trajectory[i];
    if (v > 0) cache.record(static_cast<std::uint64_t>(v), verdict);
  }
  return orbit.outcome;
}

}  // namespace xmap
