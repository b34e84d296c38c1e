#include "xmap/survivor_list.hpp"

#include <ostream>

namespace xmap {

void write_survivor_list(std::ostream& out, const SurvivorList& list) {
  for (std::size_t k = 0; k < list.entries.size(); ++k) {
    out << (k + 1) << ' ' << list.entries[k] << '\n';
  }
}

}  // namespace xmap
