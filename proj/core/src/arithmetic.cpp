#include "xmap/arithmetic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace xmap {

namespace {

constexpr std::uint64_t kMaxSupported =
    static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  // Deterministic sequence of polynomial constants; n is known composite.
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(const PrimeOracle& oracle, std::uint64_t m,
                 std::vector<std::uint64_t>& out) {
  if (m == 1) return;
  if (oracle.is_prime(m)) {
    out.push_back(m);
    return;
  }
  const std::uint64_t d = pollard_brent(m);
  split_large(oracle, d, out);
  split_large(oracle, m / d, out);
}

}  // namespace

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("addition overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("multiplication overflow");
  }
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exponent) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) r = checked_mul(r, base);
  return r;
}

Factorization::Factorization(std::uint64_t n, std::vector<PrimePower> factors)
    : n_(n), factors_(std::move(factors)) {
  if (n_ == 0) throw std::invalid_argument("factorization of zero");
  std::uint64_t product = 1;
  std::uint64_t previous = 1;
  for (const auto& [p, e] : factors_) {
    if (p <= previous || e == 0) {
      throw std::invalid_argument("factors must be ascending with exponent >= 1");
    }
    product = checked_mul(product, checked_pow(p, e));
    previous = p;
  }
  if (product != n_) throw std::invalid_argument("factor product differs from n");
}

unsigned Factorization::total_multiplicity() const {
  unsigned total = 0;
  for (const auto& pp : factors_) total += pp.exponent;
  return total;
}

Factorization Factorization::times_prime(std::uint64_t p) const {
  std::vector<PrimePower> f = factors_;
  auto it = std::lower_bound(
      f.begin(), f.end(), p,
      [](const PrimePower& pp, std::uint64_t v) { return pp.prime < v; });
  if (it != f.end() && it->prime == p) {
    ++it->exponent;
  } else {
    f.insert(it, PrimePower{p, 1});
  }
  return Factorization(checked_mul(n_, p), std::move(f));
}

std::string to_string(const Factorization& f) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& [p, e] : f.factors()) {
    if (!first) os << ',';
    first = false;
    os << '(' << p << ',' << e << ')';
  }
  os << ']';
  return os.str();
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::One: return "one";
    case Classification::Prime: return "prime";
    case Classification::EvenBiprime: return "even_biprime";
    case Classification::OddSquareBiprime: return "odd_square_biprime";
    case Classification::OddDistinctBiprime: return "odd_distinct_biprime";
    case Classification::ThreePlus: return "three_plus";
  }
  return "unknown";
}

bool is_prime(const PrimeOracle& oracle, std::uint64_t n) {
  return oracle.is_prime(n);
}

Factorization factorize(const PrimeOracle& oracle, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize requires n >= 1");
  if (n > kMaxSupported) {
    throw OverflowError("value " + std::to_string(n) + " exceeds supported range");
  }
  std::vector<PrimePower> factors;
  std::uint64_t m = n;

  if (m <= oracle.sieve_limit()) {
    while (m > 1) {
      const std::uint64_t p = oracle.smallest_factor(m);
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      factors.push_back({p, e});
    }
    return Factorization(n, std::move(factors));
  }

  bool exhausted = true;
  for (std::uint64_t p : oracle.primes()) {
    if (p * p > m) {
      exhausted = false;
      break;
    }
    if (m % p != 0) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    factors.push_back({p, e});
    if (m <= oracle.sieve_limit()) {
      // The remainder has no factor below p, so the spf table finishes it.
      while (m > 1) {
        const std::uint64_t q = oracle.smallest_factor(m);
        unsigned eq = 0;
        while (m % q == 0) {
          m /= q;
          ++eq;
        }
        factors.push_back({q, eq});
      }
      exhausted = false;
      break;
    }
  }

  if (m > 1) {
    if (!exhausted) {
      // Trial division passed sqrt(m): the remainder is prime.
      factors.push_back({m, 1});
    } else {
      std::vector<std::uint64_t> large;
      split_large(oracle, m, large);
      std::sort(large.begin(), large.end());
      for (std::uint64_t q : large) {
        if (!factors.empty() && factors.back().prime == q) {
          ++factors.back().exponent;
        } else {
          factors.push_back({q, 1});
        }
      }
    }
  }
  return Factorization(n, std::move(factors));
}

std::uint64_t pi_sum(const Factorization& f) {
  std::uint64_t s = 0;
  for (const auto& pp : f.factors()) s = checked_add(s, pp.prime);
  return s;
}

std::uint64_t sigma(const Factorization& f) {
  std::uint64_t s = 1;
  for (const auto& [p, e] : f.factors()) {
    // 1 + p + ... + p^e, summed directly so no division is needed.
    std::uint64_t term = 1;
    std::uint64_t power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power = checked_mul(power, p);
      term = checked_add(term, power);
    }
    s = checked_mul(s, term);
  }
  return s;
}

std::uint64_t c_sum(const Factorization& f) { return sigma(f) - pi_sum(f); }

std::int64_t x_map(const Factorization& f) {
  const __int128 pi = pi_sum(f);
  const __int128 c = c_sum(f);
  const __int128 x = pi - c + static_cast<__int128>(f.value());
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("X(n) out of range for n = " + std::to_string(f.value()));
  }
  return static_cast<std::int64_t>(x);
}

Classification classify(const Factorization& f) {
  const auto& fs = f.factors();
  const unsigned omega = f.total_multiplicity();
  if (omega == 0) return Classification::One;
  if (omega == 1) return Classification::Prime;
  if (omega >= 3) return Classification::ThreePlus;
  if (fs.front().prime == 2) return Classification::EvenBiprime;
  return fs.size() == 1 ? Classification::OddSquareBiprime
                        : Classification::OddDistinctBiprime;
}

std::int64_t x_of(const PrimeOracle& oracle, std::uint64_t n) {
  return x_map(factorize(oracle, n));
}

}  // namespace xmap
