#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sincde {

/// Immutable ordered collection of finite real observations.
///
/// Copies share the underlying storage. Mean and the standard deviation with
/// divisor n are computed once at construction.
class Sample {
public:
  /// Throws DomainError if `values` is empty or holds a non-finite entry.
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return *values_; }
  std::size_t size() const noexcept { return values_->size(); }
  double operator[](std::size_t i) const noexcept { return (*values_)[i]; }

  double mean() const noexcept { return mean_; }
  /// [n^-1 sum (X_j - mean)^2]^(1/2)
  double stddev() const noexcept { return stddev_; }
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }

  /// New sample with every value mapped to scale * x + shift.
  Sample affine(double scale, double shift) const;

private:
  std::shared_ptr<const std::vector<double>> values_;
  double mean_ = 0.0;
  double stddev_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

}  // namespace sincde
