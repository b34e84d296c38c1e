#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "xmap/orbit.hpp"
#include "xmap/prime_oracle.hpp"
#include "xmap/status_cache.hpp"

namespace xmap {

// Outcome of one exhaustive property check. `violations` holds the first
// kMaxRecordedViolations descriptions; `violation_count` counts all of them.
struct LemmaReport {
  static constexpr std::size_t kMaxRecordedViolations = 100;

  std::string id;
  std::string range;
  std::uint64_t cases_checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::string> violations;
  double runtime_seconds = 0.0;

  bool ok() const { return violation_count == 0; }
  void violation(std::string what);
};

struct LemmaOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned workers = 1;
};

// X computed from a brute-force divisor list with trial-division primality.
// Shares no code with the factorization path. The checks below compare it
// against x_map for every value up to kEnumerationLimit.
std::int64_t x_by_enumeration(std::uint64_t n);
inline constexpr std::uint64_t kEnumerationLimit = 10'000;

// Squarefree n with >= 3 prime factors: X(n) < 0 and
// C(n) >= 1 + n + sum of cyclically adjacent prime products.
LemmaReport verify_lemma1(std::uint64_t max_n, const PrimeOracle& oracle);
// n = p^a q, a >= 2: X(n) < 0.
LemmaReport verify_lemma2(std::uint64_t max_n, const PrimeOracle& oracle);
// X(n) <= 0 and prime p | n  =>  X(p n) < 0.
LemmaReport verify_lemma3(std::uint64_t max_n, const PrimeOracle& oracle);
// The only even survivor is 2, and X(2p) = p + 1 for odd primes p.
LemmaReport verify_lemma4(std::uint64_t max_n, const PrimeOracle& oracle,
                          StatusCache& cache, const LemmaOptions& options = {});
// Every survivor is prime, an odd distinct biprime, or 9; 7, 15 and 33 die.
LemmaReport verify_criteria(std::uint64_t max_n, const PrimeOracle& oracle,
                            StatusCache& cache, const LemmaOptions& options = {});
// Omega(n) >= 3  =>  X(n) < 0.
LemmaReport verify_omega3_negativity(std::uint64_t max_n, const PrimeOracle& oracle);
// X(p^2) = p - 1 (even) for odd primes p, and 4 -> 1 -> 0.
LemmaReport verify_square_biprimes(std::uint64_t max_n, const PrimeOracle& oracle);

struct LemmaRanges {
  std::uint64_t lemma1 = 0;
  std::uint64_t lemma2 = 0;
  std::uint64_t lemma3 = 0;
  std::uint64_t lemma4 = 0;
  std::uint64_t criteria = 0;
  std::uint64_t omega3 = 0;
  std::uint64_t square_biprimes = 0;

  static LemmaRanges uniform(std::uint64_t max_n) {
    return {max_n, max_n, max_n, max_n, max_n, max_n, max_n};
  }
};

std::vector<LemmaReport> verify_all(const LemmaRanges& ranges, const PrimeOracle& oracle,
                                    StatusCache& cache, const LemmaOptions& options = {});

// One line per report plus one indented line per recorded violation.
void write_reports_text(std::ostream& out, const std::vector<LemmaReport>& reports);
std::string reports_json(const std::vector<LemmaReport>& reports);

}  // namespace xmap
