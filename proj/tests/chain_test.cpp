#include <gtest/gtest.h>

#include <sstream>

#include "support/divisor_oracle.hpp"
#include "xmap/arithmetic.hpp"
#include "xmap/chain.hpp"

namespace xmap {
namespace {

using Members = std::vector<std::uint64_t>;

const PrimeOracle& oracle() {
  static const PrimeOracle o(1u << 21);
  return o;
}

TEST(ChainTest, Examples) {
  EXPECT_EQ(cunningham_chain(2, oracle()).members, (Members{2, 3, 5}));
  EXPECT_EQ(cunningham_chain(7, oracle()).members, (Members{7, 13}));
  EXPECT_EQ(cunningham_chain(11, oracle()).members, (Members{11}));
  EXPECT_EQ(cunningham_chain(2, oracle()).p1, 2u);
  EXPECT_THROW(cunningham_chain(9, oracle()), std::invalid_argument);
  EXPECT_THROW(cunningham_chain(1, oracle()), std::invalid_argument);
}

TEST(ChainTest, ClosedForm) {
  EXPECT_EQ(chain_term(7, 1), 7u);
  EXPECT_EQ(chain_term(7, 2), 13u);
  EXPECT_EQ(chain_term(7, 3), 25u);
  EXPECT_EQ(chain_term(2, 64), 9223372036854775809ull);
  EXPECT_THROW(chain_term(3, 65), OverflowError);
  EXPECT_THROW(chain_term(3, 0), std::invalid_argument);
}

TEST(ChainTest, FermatTerminationExamples) {
  EXPECT_TRUE(verify_fermat_termination(3));
  EXPECT_TRUE(verify_fermat_termination(5));
  EXPECT_TRUE(verify_fermat_termination(7));
  EXPECT_THROW(verify_fermat_termination(2), std::invalid_argument);
  EXPECT_THROW(verify_fermat_termination(9), std::invalid_argument);
}

TEST(ChainTest, IterationMatchesClosedFormAndBound) {
  for (std::uint32_t p : oracle().primes()) {
    if (p > 10'000) break;
    const PrimeChain c = cunningham_chain(p, oracle());
    ASSERT_GE(c.length(), 1u);
    for (std::size_t i = 0; i < c.length(); ++i) {
      ASSERT_EQ(c.members[i], chain_term(p, static_cast<unsigned>(i + 1))) << p;
      ASSERT_TRUE(test_support::slow_is_prime(c.members[i])) << p;
    }
    // The chain stops at the first composite term.
    const std::uint64_t next = chain_term(p, static_cast<unsigned>(c.length() + 1));
    ASSERT_FALSE(oracle().is_prime(next)) << p;
    if (p != 2) ASSERT_LE(c.length(), p - 1) << p;
  }
}

TEST(ChainTest, FermatHoldsForAllOddPrimes) {
  for (std::uint32_t p : oracle().primes()) {
    if (p > 100'000) break;
    if (p == 2) continue;
    ASSERT_TRUE(verify_fermat_termination(p)) << p;
  }
}

TEST(ChainTest, CsvFormat) {
  std::ostringstream out;
  write_chain_csv(out, {cunningham_chain(2, oracle()), cunningham_chain(11, oracle())});
  EXPECT_EQ(out.str(), "p,length,members\n2,3,2 3 5\n11,1,11\n");
}

}  // namespace
}  // namespace xmap
