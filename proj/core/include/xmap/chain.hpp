#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "xmap/prime_oracle.hpp"

namespace xmap {

// Maximal run of primes under X, i.e. a Cunningham chain of the second kind:
// members[i+1] = 2 * members[i] - 1.
struct PrimeChain {
  std::uint64_t p1 = 0;
  std::vector<std::uint64_t> members;

  std::size_t length() const { return members.size(); }
};

// i-th chain term from p1 in closed form, 2^(i-1) * (p1 - 1) + 1 (i >= 1).
// Throws OverflowError.
std::uint64_t chain_term(std::uint64_t p1, unsigned i);

// Follows X from p while the values stay prime, checking each step against
// chain_term. Throws std::invalid_argument if p is not prime.
PrimeChain cunningham_chain(std::uint64_t p, const PrimeOracle& oracle);

// True iff p divides the p-th chain term, which makes that term composite
// and bounds every chain from p by p - 1 members. Requires an odd prime;
// p = 2 throws std::invalid_argument.
bool verify_fermat_termination(std::uint64_t p);

// "p,length,members" header, then one row per chain; members space-separated.
void write_chain_csv(std::ostream& out, const std::vector<PrimeChain>& chains);

}  // namespace xmap
