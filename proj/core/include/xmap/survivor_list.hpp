#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace xmap {

// Ascending survivors <= cutoff, indexed from 1: n(1) = 2, n(2) = 3, ...
struct SurvivorList {
  std::uint64_t cutoff = 0;
  std::vector<std::uint64_t> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  // 1-based index k.
  std::uint64_t n_of(std::size_t k) const { return entries.at(k - 1); }

  friend bool operator==(const SurvivorList&, const SurvivorList&) = default;
};

// "<k> <n(k)>" per line, ascending k.
void write_survivor_list(std::ostream& out, const SurvivorList& list);

}  // namespace xmap
