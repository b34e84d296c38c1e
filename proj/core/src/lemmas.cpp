#include "xmap/lemmas.hpp"

#include <chrono>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "xmap/arithmetic.hpp"
#include "xmap/forward_search.hpp"

namespace xmap {

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::string range_text(std::uint64_t lo, std::uint64_t hi) {
  return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

// Runs body(report) and stamps id, range and wall time.
template <class Body>
LemmaReport timed(std::string id, std::string range, Body&& body) {
  LemmaReport report;
  report.id = std::move(id);
  report.range = std::move(range);
  const auto start = std::chrono::steady_clock::now();
  body(report);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void cross_check(LemmaReport& report, std::uint64_t n, std::int64_t x) {
  if (n > kEnumerationLimit) return;
  const std::int64_t expected = x_by_enumeration(n);
  if (expected != x) {
    report.violation("X(" + std::to_string(n) + ") = " + std::to_string(x) +
                     " but divisor enumeration gives " + std::to_string(expected));
  }
}

void require_min(std::uint64_t max_n, std::uint64_t min, const char* id) {
  if (max_n < min) {
    throw std::invalid_argument(std::string(id) + " requires max >= " +
                                std::to_string(min));
  }
}

}  // namespace

void LemmaReport::violation(std::string what) {
  ++violation_count;
  if (violations.size() < kMaxRecordedViolations) violations.push_back(std::move(what));
}

std::int64_t x_by_enumeration(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("x_by_enumeration requires n >= 1");
  __int128 prime_sum = 0;
  __int128 other_sum = 0;
  auto add = [&](std::uint64_t d) {
    if (trial_division_prime(d)) {
      prime_sum += d;
    } else {
      other_sum += d;
    }
  };
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    add(d);
    if (d != n / d) add(n / d);
  }
  return static_cast<std::int64_t>(prime_sum - other_sum + n);
}

LemmaReport verify_lemma1(std::uint64_t max_n, const PrimeOracle& oracle) {
  require_min(max_n, 30, "lemma1");
  return timed("lemma1", range_text(2, max_n), [&](LemmaReport& report) {
    for (std::uint64_t n = 2; n <= max_n; ++n) {
      const Factorization f = factorize(oracle, n);
      const auto& fs = f.factors();
      if (fs.size() < 3 || f.total_multiplicity() != fs.size()) continue;
      ++report.cases_checked;
      const std::int64_t x = x_map(f);
      if (x >= 0) report.violation("X(" + std::to_string(n) + ") = " + std::to_string(x));

      unsigned __int128 bound = 1 + static_cast<unsigned __int128>(n);
      for (std::size_t i = 0; i < fs.size(); ++i) {
        bound += static_cast<unsigned __int128>(fs[i].prime) * fs[(i + 1) % fs.size()].prime;
      }
      if (c_sum(f) < bound) {
        report.violation("C(" + std::to_string(n) + ") below the adjacent-product bound");
      }
      cross_check(report, n, x);
    }
  });
}

LemmaReport verify_lemma2(std::uint64_t max_n, const PrimeOracle& oracle) {
  require_min(max_n, 12, "lemma2");
  return timed("lemma2", range_text(2, max_n), [&](LemmaReport& report) {
    for (std::uint64_t n = 2; n <= max_n; ++n) {
      const Factorization f = factorize(oracle, n);
      const auto& fs = f.factors();
      if (fs.size() != 2) continue;
      const bool shape = (fs[0].exponent >= 2 && fs[1].exponent == 1) ||
                         (fs[1].exponent >= 2 && fs[0].exponent == 1);
      if (!shape) continue;
      ++report.cases_checked;
      const std::int64_t x = x_map(f);
      if (x >= 0) report.violation("X(" + std::to_string(n) + ") = " + std::to_string(x));
      cross_check(report, n, x);
    }
  });
}

LemmaReport verify_lemma3(std::uint64_t max_n, const PrimeOracle& oracle) {
  require_min(max_n, 4, "lemma3");
  return timed("lemma3", range_text(1, max_n), [&](LemmaReport& report) {
    for (std::uint64_t n = 1; n <= max_n; ++n) {
      const Factorization f = factorize(oracle, n);
      const std::int64_t x = x_map(f);
      cross_check(report, n, x);
      if (x > 0) continue;
      for (const auto& pp : f.factors()) {
        ++report.cases_checked;
        const Factorization pf = f.times_prime(pp.prime);
        const std::int64_t xp = x_map(pf);
        if (xp >= 0) {
          report.violation("X(" + std::to_string(n) + ") = " + std::to_string(x) +
                           " but X(" + std::to_string(pp.prime) + "*" +
                           std::to_string(n) + ") = " + std::to_string(xp));
        }
        cross_check(report, pf.value(), xp);
      }
    }
  });
}

LemmaReport verify_lemma4(std::uint64_t max_n, const PrimeOracle& oracle,
                          StatusCache& cache, const LemmaOptions& options) {
  require_min(max_n, 2, "lemma4");
  return timed("lemma4", range_text(2, max_n), [&](LemmaReport& report) {
    for (std::uint64_t n = 2; n <= max_n; n += 2) {
      ++report.cases_checked;
      const SurvivalStatus status = survives(oracle, n, options.budget, cache);
      if (!status.resolved()) {
        report.violation(std::to_string(n) + " unresolved: " + to_string(status.kind));
      } else if (status.survives() != (n == 2)) {
        report.violation("even value " + std::to_string(n) +
                         (status.survives() ? " survives" : " does not survive"));
      }
    }
    for (std::uint64_t p = 3; p <= max_n / 2; p += 2) {
      if (!oracle.is_prime(p)) continue;
      ++report.cases_checked;
      const std::int64_t x = x_of(oracle, 2 * p);
      if (x != static_cast<std::int64_t>(p + 1)) {
        report.violation("X(2*" + std::to_string(p) + ") = " + std::to_string(x));
      }
      cross_check(report, 2 * p, x);
    }
  });
}

LemmaReport verify_criteria(std::uint64_t max_n, const PrimeOracle& oracle,
                            StatusCache& cache, const LemmaOptions& options) {
  require_min(max_n, 9, "criteria");
  return timed("criteria", range_text(2, max_n), [&](LemmaReport& report) {
    SearchConfig config;
    config.cutoff = max_n;
    config.filtered = false;
    config.budget = options.budget;
    config.workers = options.workers;
    const ForwardSearchResult result = forward_search(config, oracle, cache);
    report.cases_checked = max_n - 1;
    for (std::uint64_t n : result.budget_exceeded) {
      report.violation(std::to_string(n) + " exceeded the orbit budget");
    }
    for (std::uint64_t n : result.survivors.entries) {
      const Classification c = classify(factorize(oracle, n));
      if (n != 9 && c != Classification::Prime &&
          c != Classification::OddDistinctBiprime) {
        report.violation("survivor " + std::to_string(n) + " is " + to_string(c));
      }
    }
    for (std::uint64_t n : {7u, 15u, 33u}) {
      ++report.cases_checked;
      if (survives(oracle, n, options.budget, cache).survives()) {
        report.violation(std::to_string(n) + " survives");
      }
    }
  });
}

LemmaReport verify_omega3_negativity(std::uint64_t max_n, const PrimeOracle& oracle) {
  return timed("omega3", range_text(2, max_n), [&](LemmaReport& report) {
    for (std::uint64_t n = 2; n <= max_n; ++n) {
      const Factorization f = factorize(oracle, n);
      if (f.total_multiplicity() < 3) continue;
      ++report.cases_checked;
      const std::int64_t x = x_map(f);
      if (x >= 0) report.violation("X(" + std::to_string(n) + ") = " + std::to_string(x));
      cross_check(report, n, x);
    }
  });
}

LemmaReport verify_square_biprimes(std::uint64_t max_n, const PrimeOracle& oracle) {
  return timed("square_biprimes", range_text(1, max_n), [&](LemmaReport& report) {
    report.cases_checked += 2;
    if (x_of(oracle, 4) != 1) report.violation("X(4) != 1");
    if (x_of(oracle, 1) != 0) report.violation("X(1) != 0");
    for (std::uint64_t p = 3; p * p <= max_n; p += 2) {
      if (!oracle.is_prime(p)) continue;
      ++report.cases_checked;
      const std::int64_t x = x_of(oracle, p * p);
      if (x != static_cast<std::int64_t>(p - 1) || x % 2 != 0) {
        report.violation("X(" + std::to_string(p) + "^2) = " + std::to_string(x));
      }
      cross_check(report, p * p, x);
    }
  });
}

std::vector<LemmaReport> verify_all(const LemmaRanges& ranges, const PrimeOracle& oracle,
                                    StatusCache& cache, const LemmaOptions& options) {
  std::vector<LemmaReport> reports;
  reports.push_back(verify_lemma1(ranges.lemma1, oracle));
  reports.push_back(verify_lemma2(ranges.lemma2, oracle));
  reports.push_back(verify_lemma3(ranges.lemma3, oracle));
  reports.push_back(verify_lemma4(ranges.lemma4, oracle, cache, options));
  reports.push_back(verify_criteria(ranges.criteria, oracle, cache, options));
  reports.push_back(verify_omega3_negativity(ranges.omega3, oracle));
  reports.push_back(verify_square_biprimes(ranges.square_biprimes, oracle));
  return reports;
}

void write_reports_text(std::ostream& out, const std::vector<LemmaReport>& reports) {
  for (const auto& r : reports) {
    std::ostringstream runtime;
    runtime.precision(3);
    runtime << std::fixed << r.runtime_seconds;
    out << r.id << " range=" << r.range << " cases=" << r.cases_checked
        << " violations=" << r.violation_count << " runtime=" << runtime.str() << "s "
        << (r.ok() ? "OK" : "FAIL") << '\n';
    for (const auto& v : r.violations) out << "  " << v << '\n';
  }
}

std::string reports_json(const std::vector<LemmaReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["range"] = r.range;
    j["cases_checked"] = r.cases_checked;
    j["violation_count"] = r.violation_count;
    j["violations"] = r.violations;
    j["runtime_seconds"] = r.runtime_seconds;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace xmap
