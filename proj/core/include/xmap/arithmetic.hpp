#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "xmap/prime_oracle.hpp"

namespace xmap {

// Raised whenever an intermediate value leaves the supported 64-bit range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical prime-power decomposition. n == 1 has no factors.
class Factorization {
 public:
  Factorization() = default;

  // Validates the invariants (ascending distinct primes, exponents >= 1,
  // product equals n). Primality of the listed primes is not re-checked.
  Factorization(std::uint64_t n, std::vector<PrimePower> factors);

  std::uint64_t value() const { return n_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

  std::size_t distinct_primes() const { return factors_.size(); }
  // Omega(n): prime factors counted with multiplicity.
  unsigned total_multiplicity() const;

  // Factorization of p * n, obtained by bumping (or inserting) p.
  Factorization times_prime(std::uint64_t p) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::uint64_t n_ = 1;
  std::vector<PrimePower> factors_;
};

std::string to_string(const Factorization& f);

enum class Classification {
  One,
  Prime,
  EvenBiprime,        // 2p, including 4
  OddSquareBiprime,   // p^2, p odd
  OddDistinctBiprime, // pq, p != q both odd
  ThreePlus,          // Omega(n) >= 3
};

const char* to_string(Classification c);

bool is_prime(const PrimeOracle& oracle, std::uint64_t n);
Factorization factorize(const PrimeOracle& oracle, std::uint64_t n);

// Pi(n): sum of distinct prime divisors. Pi(1) = 0.
std::uint64_t pi_sum(const Factorization& f);
// sigma(n): sum of all divisors. Throws OverflowError.
std::uint64_t sigma(const Factorization& f);
// C(n) = sigma(n) - Pi(n): sum of the non-prime divisors, 1 and n included.
std::uint64_t c_sum(const Factorization& f);
// X(n) = Pi(n) - C(n) + n. Throws OverflowError if the result does not fit.
std::int64_t x_map(const Factorization& f);

Classification classify(const Factorization& f);

// Convenience: factorize then apply X.
std::int64_t x_of(const PrimeOracle& oracle, std::uint64_t n);

// Checked helpers shared by the other modules.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, unsigned exponent);

}  // namespace xmap
