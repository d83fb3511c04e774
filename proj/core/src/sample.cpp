#include "sincde/sample.hpp"

#include "sincde/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sincde {

Sample::Sample(std::vector<double> values) {
  if (values.empty()) throw DomainError("sample must contain at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw DomainError("sample value " + std::to_string(i) + " is not finite");
    }
  }
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double x : values) sum += x;
  mean_ = sum / n;
  double ss = 0.0;
  for (double x : values) ss += (x - mean_) * (x - mean_);
  stddev_ = std::sqrt(ss / n);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  min_ = *lo;
  max_ = *hi;
  values_ = std::make_shared<const std::vector<double>>(std::move(values));
}

Sample Sample::affine(double scale, double shift) const {
  std::vector<double> out(values_->begin(), values_->end());
  for (double& x : out) x = scale * x + shift;
  return Sample(std::move(out));
}

}  // namespace sincde
