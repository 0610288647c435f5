#pragma once

#include <span>
#include <vector>

namespace ringpart::smin {

/// Smooth minimum -ln(sum_i exp(-x_i)), evaluated with a log-sum-exp shift.
/// Bracketed by min(x) - ln(len) <= smin(x) <= min(x).
/// Throws Errc::instance for an empty vector.
double smin(std::span<const double> x);

/// Softmin weights exp(-x_i) / sum_j exp(-x_j); a probability vector.
std::vector<double> grad_smin(std::span<const double> x);

/// Scaled smooth minimum c * smin(x / c), for c >= 1 (Errc::parameter otherwise).
double smin_c(std::span<const double> x, double c);

/// Gradient of smin_c; equals grad_smin(x / c).
std::vector<double> grad_smin_c(std::span<const double> x, double c);

}  // namespace ringpart::smin
