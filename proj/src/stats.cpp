#include "spex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spex {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double normal_tail(double x) {
    return 0.5 * std::erfc(x * M_SQRT1_2);
}

double empirical_quantile(std::vector<double> values, double p) {
    if (values.empty()) {
        throw std::invalid_argument("empirical_quantile: no data");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("empirical_quantile: p must be in (0,1)");
    }
    const auto n = values.size();
    auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    if (k < 1) k = 1;
    if (k > n) k = n;
    std::nth_element(values.begin(), values.begin() + (k - 1), values.end());
    return values[k - 1];
}

} // namespace spex
