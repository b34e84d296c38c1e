#include "xmap/chain.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

#include "xmap/arithmetic.hpp"

namespace xmap {

std::uint64_t chain_term(std::uint64_t p1, unsigned i) {
  if (i == 0) throw std::invalid_argument("chain index starts at 1");
  if (p1 == 0) throw std::invalid_argument("chain start must be positive");
  return checked_add(checked_mul(checked_pow(2, i - 1), p1 - 1), 1);
}

PrimeChain cunningham_chain(std::uint64_t p, const PrimeOracle& oracle) {
  if (!oracle.is_prime(p)) {
    throw std::invalid_argument(std::to_string(p) + " is not prime");
  }
  PrimeChain chain;
  chain.p1 = p;
  chain.members.push_back(p);
  for (;;) {
    const std::int64_t next = x_of(oracle, chain.members.back());
    const auto i = static_cast<unsigned>(chain.members.size() + 1);
    if (next <= 0 || static_cast<std::uint64_t>(next) != chain_term(p, i)) {
      throw std::logic_error("X disagrees with the chain closed form at " +
                             std::to_string(chain.members.back()));
    }
    if (!oracle.is_prime(static_cast<std::uint64_t>(next))) break;
    chain.members.push_back(static_cast<std::uint64_t>(next));
  }
  return chain;
}

bool verify_fermat_termination(std::uint64_t p) {
  if (p == 2) {
    throw std::invalid_argument("p = 2 is outside the Fermat argument (chain 2,3,5)");
  }
  if (p % 2 == 0 || !miller_rabin(p)) {
    throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
  }
  // p-th term mod p: 2^(p-1) * (p-1) + 1.
  const std::uint64_t term = mul_mod(pow_mod(2, p - 1, p), p - 1, p);
  return (term + 1) % p == 0;
}

void write_chain_csv(std::ostream& out, const std::vector<PrimeChain>& chains) {
  out << "p,length,members\n";
  for (const auto& chain : chains) {
    out << chain.p1 << ',' << chain.length() << ',';
    for (std::size_t i = 0; i < chain.members.size(); ++i) {
      if (i) out << ' ';
      out << chain.members[i];
    }
    out << '\n';
  }
}

}  // namespace xmap
