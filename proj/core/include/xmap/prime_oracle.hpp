#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace xmap {

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool miller_rabin(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Smallest-prime-factor sieve up to sieve_limit with a Miller-Rabin fallback
// above it. Read-only after construction, so it can be shared across threads.
class PrimeOracle {
 public:
  static constexpr std::uint64_t kDefaultLimit = 1u << 21;
  // The spf table stores 32-bit entries.
  static constexpr std::uint64_t kMaxLimit = 0xFFFFFFFFull;

  explicit PrimeOracle(std::uint64_t sieve_limit = kDefaultLimit);

  std::uint64_t sieve_limit() const { return limit_; }

  bool is_prime(std::uint64_t n) const;

  // Smallest prime factor for 2 <= n <= sieve_limit, 0 otherwise.
  std::uint64_t smallest_factor(std::uint64_t n) const {
    return (n >= 2 && n <= limit_) ? spf_[n] : 0;
  }

  // All primes <= sieve_limit, ascending.
  std::span<const std::uint32_t> primes() const { return primes_; }

  // Number of primes <= n; n must not exceed sieve_limit.
  std::uint64_t prime_count(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

}  // namespace xmap
