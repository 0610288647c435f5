#include "ringpart/smin.hpp"

#include <algorithm>
#include <cmath>

#include "ringpart/error.hpp"

namespace ringpart::smin {
namespace {

void check_nonempty(std::span<const double> x) {
  require(!x.empty(), Errc::instance, "smin of an empty vector");
}

void check_scale(double c) {
  require(c >= 1.0 && std::isfinite(c), Errc::parameter, "smin_c requires c >= 1");
}

// -ln(sum exp(-x_i / c)) with the minimum factored out.
double scaled(std::span<const double> x, double c) {
  const double lo = *std::min_element(x.begin(), x.end());
  double sum = 0.0;
  for (double v : x) sum += std::exp(-(v - lo) / c);
  return lo / c - std::log(sum);
}

std::vector<double> scaled_grad(std::span<const double> x, double c) {
  const double lo = *std::min_element(x.begin(), x.end());
  std::vector<double> p(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = std::exp(-(x[i] - lo) / c);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace

double smin(std::span<const double> x) {
  check_nonempty(x);
  return scaled(x, 1.0);
}

std::vector<double> grad_smin(std::span<const double> x) {
  check_nonempty(x);
  return scaled_grad(x, 1.0);
}

double smin_c(std::span<const double> x, double c) {
  check_nonempty(x);
  check_scale(c);
  return c * scaled(x, c);
}

std::vector<double> grad_smin_c(std::span<const double> x, double c) {
  check_nonempty(x);
  check_scale(c);
  return scaled_grad(x, c);
}

}  // namespace ringpart::smin
