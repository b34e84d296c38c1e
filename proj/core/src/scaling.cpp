#include "xmap/scaling.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace xmap {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

ScalingSeries build_series(const SurvivorList& list, const std::vector<double>& alphas,
                           std::size_t k_min) {
  if (list.empty()) throw ScalingError("survivor list is empty");
  if (alphas.empty()) throw ScalingError("no alpha values given");
  for (double a : alphas) {
    if (!(a > 0.0)) throw ScalingError("alpha values must be positive");
  }

  ScalingSeries series;
  series.alphas = alphas;
  series.points.reserve(list.size());
  for (std::size_t k = 2; k <= list.size(); ++k) {
    ScalingPoint pt;
    pt.k = k;
    pt.n_k = list.n_of(k);
    const double kd = static_cast<double>(k);
    pt.inv_log_k = 1.0 / std::log(kd);
    pt.ratios.reserve(alphas.size());
    for (double a : alphas) {
      pt.ratios.push_back(static_cast<double>(pt.n_k) / std::pow(kd, a));
    }
    series.points.push_back(std::move(pt));
  }
  if (k_min >= 2 && list.size() >= 2 * k_min) series.fit = fit_exponent(list, k_min);
  return series;
}

ExponentFit fit_loglog_slope(std::span<const double> values, std::size_t k_min) {
  if (k_min < 2) throw ScalingError("k_min must be >= 2");
  if (values.size() < 2 * k_min) {
    throw ScalingError("need at least " + std::to_string(2 * k_min) +
                       " points, have " + std::to_string(values.size()));
  }
  const std::size_t k_max = values.size();
  // Centered sums keep the slope well conditioned.
  const auto count = static_cast<double>(k_max - k_min + 1);
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    mean_x += std::log(static_cast<double>(k));
    mean_y += std::log(values[k - 1]);
  }
  mean_x /= count;
  mean_y /= count;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    const double dx = std::log(static_cast<double>(k)) - mean_x;
    const double dy = std::log(values[k - 1]) - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
  }
  return ExponentFit{sxy / sxx, k_min, k_max};
}

ExponentFit fit_exponent(const SurvivorList& list, std::size_t k_min) {
  std::vector<double> values(list.entries.begin(), list.entries.end());
  return fit_loglog_slope(values, k_min);
}

void emit_csv(std::ostream& out, const ScalingSeries& series) {
  if (series.alphas.empty()) throw ScalingError("no alpha values given");
  out << "k,n_k,inv_log_k";
  for (double a : series.alphas) out << ",ratio_" << format_double(a);
  out << '\n';
  for (const auto& pt : series.points) {
    out << pt.k << ',' << pt.n_k << ',' << format_double(pt.inv_log_k);
    for (double r : pt.ratios) out << ',' << format_double(r);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed to write scaling CSV");
}

void write_fit_summary(std::ostream& out, const ExponentFit& fit) {
  out << "method=least_squares_loglog_slope\n"
      << "k_min=" << fit.k_min << '\n'
      << "k_max=" << fit.k_max << '\n'
      << "exponent=" << format_double(fit.slope) << '\n';
  if (!out) throw std::runtime_error("failed to write fit summary");
}

}  // namespace xmap
