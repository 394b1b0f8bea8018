#pragma once

#include <stdexcept>

namespace tailest {

// Argument outside the mathematical domain of an operation.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Index or count constraint violated (e.g. k >= n).
struct range_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Statistic undefined on this particular sample (zero spacing denominator etc.).
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model parameters failed construction-time validation.
struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tailest
