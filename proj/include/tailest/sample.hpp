#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tailest {

/// Validated positive observations with cached descending order statistics.
/// y_j = log X_{n-j+1,n} for j = 1..n, non-increasing. Immutable after
/// construction, so concurrent reads are safe.
class Sample {
public:
    /// Throws domain_error if any value is <= 0 / non-finite, or n < 2.
    explicit Sample(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }

    /// y_1 >= y_2 >= ... >= y_n.
    std::span<const double> log_order_stats_desc() const noexcept { return log_desc_; }

    /// X_{n-j+1,n}, 1-based rank from the top (j=1 is the maximum).
    double top(std::size_t j) const { return x_desc_.at(j - 1); }

    /// y_j = log X_{n-j+1,n}, 1-based.
    double log_top(std::size_t j) const { return log_desc_.at(j - 1); }

private:
    std::vector<double> values_;
    std::vector<double> x_desc_;
    std::vector<double> log_desc_;
};

} // namespace tailest
