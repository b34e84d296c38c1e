#include "xmap/prime_oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

namespace xmap {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin(std::uint64_t n) {
  if (n < 2) return false;
  // The first twelve primes are a deterministic witness set below 3.3e24.
  static constexpr std::array<std::uint64_t, 12> kWitnesses = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  const std::uint64_t n_minus_1 = n - 1;
  const int s = std::countr_zero(n_minus_1);
  const std::uint64_t d = n_minus_1 >> s;
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeOracle::PrimeOracle(std::uint64_t sieve_limit) : limit_(sieve_limit) {
  if (limit_ < 2) limit_ = 2;
  if (limit_ > kMaxLimit) {
    throw std::invalid_argument("sieve limit exceeds 32-bit table range");
  }
  spf_.assign(limit_ + 1, 0);
  // Linear sieve: every composite is struck exactly once by its spf.
  for (std::uint64_t i = 2; i <= limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t spf_i = spf_[i];
    for (std::uint32_t p : primes_) {
      if (p > spf_i) break;
      const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
      if (m > limit_) break;
      spf_[m] = p;
    }
  }
}

bool PrimeOracle::is_prime(std::uint64_t n) const {
  if (n <= limit_) return n >= 2 && spf_[n] == n;
  return miller_rabin(n);
}

std::uint64_t PrimeOracle::prime_count(std::uint64_t n) const {
  if (n > limit_) throw std::out_of_range("prime_count above sieve limit");
  return static_cast<std::uint64_t>(
      std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

}  // namespace xmap
