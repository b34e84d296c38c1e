#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "support/divisor_oracle.hpp"
#include "xmap/arithmetic.hpp"

namespace xmap {
namespace {

using test_support::enumerate_sums;
using test_support::slow_factor;
using test_support::slow_is_prime;

const PrimeOracle& oracle() {
  static const PrimeOracle o(1u << 20);
  return o;
}

std::vector<PrimePower> powers(std::initializer_list<std::pair<std::uint64_t, unsigned>> l) {
  std::vector<PrimePower> out;
  for (auto [p, e] : l) out.push_back({p, e});
  return out;
}

TEST(PrimeOracleTest, SmallCases) {
  EXPECT_TRUE(is_prime(oracle(), 2));
  EXPECT_FALSE(is_prime(oracle(), 1));
  EXPECT_FALSE(is_prime(oracle(), 561));
}

TEST(PrimeOracleTest, SieveMatchesTrialDivision) {
  const PrimeOracle small(50'000);
  for (std::uint64_t n = 1; n <= 50'000; ++n) {
    ASSERT_EQ(small.is_prime(n), slow_is_prime(n)) << n;
  }
}

TEST(PrimeOracleTest, FallbackAgreesWithSieveRegime) {
  // Same values answered once by a small table (fallback) and once by a big one.
  const PrimeOracle small(1000);
  for (std::uint64_t n = 1001; n <= 200'000; ++n) {
    ASSERT_EQ(small.is_prime(n), oracle().is_prime(n)) << n;
  }
}

TEST(PrimeOracleTest, CarmichaelAndStrongPseudoprimes) {
  for (std::uint64_t n : {561ull, 1105ull, 1729ull, 2465ull, 2821ull, 6601ull, 8911ull,
                          3215031751ull, 3825123056546413051ull}) {
    EXPECT_FALSE(miller_rabin(n)) << n;
  }
  EXPECT_TRUE(miller_rabin(2305843009213693951ull));   // 2^61 - 1
  EXPECT_TRUE(miller_rabin(18446744073709551557ull));  // largest 64-bit prime
  EXPECT_FALSE(miller_rabin(18446744073709551615ull));
}

TEST(PrimeOracleTest, PrimeCount) {
  EXPECT_EQ(oracle().prime_count(100'000), 9592u);
  EXPECT_EQ(oracle().prime_count(2), 1u);
  EXPECT_THROW(oracle().prime_count(oracle().sieve_limit() + 1), std::out_of_range);
}

TEST(FactorizeTest, Examples) {
  EXPECT_EQ(factorize(oracle(), 21).factors(), powers({{3, 1}, {7, 1}}));
  EXPECT_TRUE(factorize(oracle(), 1).factors().empty());
  EXPECT_EQ(factorize(oracle(), 360).factors(), powers({{2, 3}, {3, 2}, {5, 1}}));
}

TEST(FactorizeTest, MatchesTrialDivisionAcrossRegimes) {
  const PrimeOracle small(5000);
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::uint64_t> dist(1, 50'000'000);
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t n = dist(rng);
    const auto expected = slow_factor(n);
    const Factorization f = factorize(small, n);
    ASSERT_EQ(f.factors().size(), expected.size()) << n;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      EXPECT_EQ(f.factors()[k].prime, expected[k].first) << n;
      EXPECT_EQ(f.factors()[k].exponent, expected[k].second) << n;
    }
  }
}

TEST(FactorizeTest, LargeSemiprimeNeedsRho) {
  const std::uint64_t p = 4294967291ull;  // largest prime < 2^32
  const std::uint64_t q = 2147483647ull;  // 2^31 - 1
  const Factorization f = factorize(oracle(), p * q);
  EXPECT_EQ(f.factors(), powers({{q, 1}, {p, 1}}));

  const Factorization g = factorize(oracle(), 2305843009213693951ull);
  EXPECT_EQ(g.factors(), powers({{2305843009213693951ull, 1}}));
}

TEST(FactorizeTest, RejectsOutOfRange) {
  EXPECT_THROW(factorize(oracle(), std::numeric_limits<std::uint64_t>::max()), OverflowError);
  EXPECT_THROW(factorize(oracle(), 0), std::invalid_argument);
}

TEST(FactorizationTest, InvariantsEnforced) {
  EXPECT_THROW(Factorization(12, powers({{3, 1}, {2, 2}})), std::invalid_argument);
  EXPECT_THROW(Factorization(12, powers({{2, 1}, {3, 1}})), std::invalid_argument);
  EXPECT_THROW(Factorization(12, powers({{2, 2}, {3, 0}})), std::invalid_argument);
  EXPECT_NO_THROW(Factorization(12, powers({{2, 2}, {3, 1}})));
  EXPECT_EQ(factorize(oracle(), 18).times_prime(2), factorize(oracle(), 36));
  EXPECT_EQ(factorize(oracle(), 18).times_prime(5), factorize(oracle(), 90));
}

TEST(DivisorSumsTest, Examples) {
  auto f = [](std::uint64_t n) { return factorize(oracle(), n); };
  EXPECT_EQ(pi_sum(f(21)), 10u);
  EXPECT_EQ(pi_sum(f(1)), 0u);
  EXPECT_EQ(pi_sum(f(12)), 5u);

  EXPECT_EQ(sigma(f(1)), 1u);
  EXPECT_EQ(sigma(f(21)), 32u);
  EXPECT_EQ(sigma(f(9)), 13u);

  EXPECT_EQ(c_sum(f(21)), 22u);
  EXPECT_EQ(c_sum(f(11)), 1u);
  EXPECT_EQ(c_sum(f(9)), 10u);
  EXPECT_EQ(c_sum(f(1)), 1u);

  EXPECT_EQ(x_map(f(11)), 21);
  EXPECT_EQ(x_map(f(1)), 0);
  EXPECT_EQ(x_map(f(7)), 13);
  EXPECT_EQ(x_map(f(100)), -103);
}

TEST(DivisorSumsTest, SigmaOverflowSignals) {
  const Factorization big(4611686018427387904ull, powers({{2, 62}}));
  EXPECT_EQ(sigma(big), 9223372036854775807ull);
  // sigma(2^61 * 3) = 2^64 - 4 still fits, but X falls below INT64_MIN.
  const Factorization bigger(6917529027641081856ull, powers({{2, 61}, {3, 1}}));
  EXPECT_EQ(sigma(bigger), 18446744073709551612ull);
  EXPECT_THROW(x_map(bigger), OverflowError);
  const Factorization widest(8646911284551352320ull, powers({{2, 59}, {3, 1}, {5, 1}}));
  EXPECT_THROW(sigma(widest), OverflowError);
}

TEST(ClassifyTest, Examples) {
  auto c = [](std::uint64_t n) { return classify(factorize(oracle(), n)); };
  EXPECT_EQ(c(9), Classification::OddSquareBiprime);
  EXPECT_EQ(c(15), Classification::OddDistinctBiprime);
  EXPECT_EQ(c(12), Classification::ThreePlus);
  EXPECT_EQ(c(1), Classification::One);
  EXPECT_EQ(c(4), Classification::EvenBiprime);
  EXPECT_EQ(c(14), Classification::EvenBiprime);
  EXPECT_EQ(c(13), Classification::Prime);
}

TEST(ClassifyTest, MatchesMultiplicityDefinition) {
  for (std::uint64_t n = 1; n <= 20'000; ++n) {
    const auto ref = slow_factor(n);
    unsigned omega = 0;
    for (auto [p, e] : ref) omega += e;
    const Classification c = classify(factorize(oracle(), n));
    ASSERT_EQ(c == Classification::ThreePlus, omega >= 3) << n;
    const bool square = ref.size() == 1 && ref[0].second == 2;
    ASSERT_EQ(c == Classification::OddSquareBiprime, square && ref[0].first != 2) << n;
    const bool even_bi = omega == 2 && ref[0].first == 2;
    ASSERT_EQ(c == Classification::EvenBiprime, even_bi) << n;
  }
}

TEST(XMapProperties, AgreesWithDivisorEnumeration) {
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    const auto ref = enumerate_sums(n);
    const Factorization f = factorize(oracle(), n);
    ASSERT_EQ(x_map(f), ref.x) << n;
    ASSERT_EQ(static_cast<std::int64_t>(sigma(f)), ref.sigma) << n;
    ASSERT_EQ(static_cast<std::int64_t>(c_sum(f)), ref.c) << n;
  }
}

TEST(XMapProperties, PrimeStep) {
  for (std::uint32_t p : oracle().primes()) {
    if (p > 100'000) break;
    ASSERT_EQ(x_of(oracle(), p), 2 * static_cast<std::int64_t>(p) - 1) << p;
  }
}

TEST(XMapProperties, DistinctOddBiprimeStep) {
  const auto primes = oracle().primes();
  for (std::size_t a = 1; a < primes.size(); ++a) {
    const std::uint64_t p = primes[a];
    if (p * 3 > 100'000) break;
    for (std::size_t b = a + 1; b < primes.size() && p * primes[b] <= 100'000; ++b) {
      const std::uint64_t q = primes[b];
      ASSERT_EQ(x_of(oracle(), p * q), static_cast<std::int64_t>(p + q) - 1) << p << "*" << q;
    }
  }
}

TEST(XMapProperties, SquareAndCube) {
  for (std::uint32_t p : oracle().primes()) {
    const std::uint64_t sq = std::uint64_t{p} * p;
    if (sq > 100'000) break;
    if (p != 2) {
      const std::int64_t x = x_of(oracle(), sq);
      ASSERT_EQ(x, static_cast<std::int64_t>(p) - 1) << p;
      ASSERT_EQ(x % 2, 0) << p;
    }
    const std::uint64_t cube = sq * p;
    if (cube <= 100'000) {
      const auto pp = static_cast<std::int64_t>(p);
      ASSERT_EQ(x_of(oracle(), cube), -(pp - 1) * pp - 1) << p;
    }
  }
}

TEST(XMapProperties, ThreeOrMorePrimeFactorsGoNegative) {
  for (std::uint64_t n = 2; n <= 1'000'000; ++n) {
    const Factorization f = factorize(oracle(), n);
    if (f.total_multiplicity() >= 3) ASSERT_LT(x_map(f), 0) << n;
  }
}

}  // namespace
}  // namespace xmap
