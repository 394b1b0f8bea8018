#include "tailest/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailest/errors.hpp"

namespace tailest {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2)
        throw domain_error("Sample: needs at least 2 observations");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0) || !std::isfinite(values_[i]))
            throw domain_error("Sample: value at position " + std::to_string(i) +
                               " is not a positive finite number");
    }
    x_desc_ = values_;
    std::sort(x_desc_.begin(), x_desc_.end(), std::greater<>());
    log_desc_.resize(x_desc_.size());
    for (std::size_t i = 0; i < x_desc_.size(); ++i)
        log_desc_[i] = std::log(x_desc_[i]);
}

} // namespace tailest
