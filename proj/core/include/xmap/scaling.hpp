#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "xmap/survivor_list.hpp"

namespace xmap {

inline const std::vector<double> kDefaultAlphas = {1.2, 1.3, 1.5};
inline constexpr std::size_t kDefaultFitKMin = 100;

class ScalingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ScalingPoint {
  std::size_t k = 0;
  std::uint64_t n_k = 0;
  double inv_log_k = 0.0;       // 1 / ln k
  std::vector<double> ratios;   // n_k / k^alpha, one per alpha
};

// Least-squares slope of ln n(k) against ln k over [k_min, k_max]. This is
// our estimator; the exponent window it is compared against is empirical.
struct ExponentFit {
  double slope = 0.0;
  std::size_t k_min = 0;
  std::size_t k_max = 0;
};

struct ScalingSeries {
  std::vector<double> alphas;
  // k >= 2 only: 1/ln k is undefined at k = 1.
  std::vector<ScalingPoint> points;
  std::optional<ExponentFit> fit;
};

// Fit is attached when the list has at least 2 * k_min entries.
ScalingSeries build_series(const SurvivorList& list,
                           const std::vector<double>& alphas = kDefaultAlphas,
                           std::size_t k_min = kDefaultFitKMin);

// values[k - 1] = n(k). Needs k_min >= 2 and values.size() >= 2 * k_min.
ExponentFit fit_loglog_slope(std::span<const double> values, std::size_t k_min);
ExponentFit fit_exponent(const SurvivorList& list, std::size_t k_min = kDefaultFitKMin);

// "k,n_k,inv_log_k,ratio_<alpha>..." then one row per point. Numbers use
// the shortest round-trip decimal form.
void emit_csv(std::ostream& out, const ScalingSeries& series);
void write_fit_summary(std::ostream& out, const ExponentFit& fit);

std::string format_double(double v);

}  // namespace xmap
