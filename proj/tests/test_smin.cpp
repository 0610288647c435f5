#include <doctest.h>

#include <cmath>
#include <vector>

#include "ringpart/error.hpp"
#include "ringpart/smin.hpp"

using namespace ringpart;
using doctest::Approx;

TEST_CASE("smin values") {
  CHECK(smin::smin(std::vector<double>{5.0}) == Approx(5.0).epsilon(1e-12));
  CHECK(smin::smin(std::vector<double>{0.0, 0.0}) == Approx(-0.6931471805599453).epsilon(1e-12));
  CHECK(smin::smin(std::vector<double>{0.0, std::log(3.0)}) == Approx(-0.2876820724517809).epsilon(1e-12));
  CHECK_THROWS_AS(smin::smin(std::vector<double>{}), Error);
}

TEST_CASE("grad_smin values") {
  auto g = smin::grad_smin(std::vector<double>{0, 0, 0});
  for (double v : g) CHECK(v == Approx(1.0 / 3.0));
  g = smin::grad_smin(std::vector<double>{0.0, std::log(3.0)});
  CHECK(g[0] == Approx(0.75));
  CHECK(g[1] == Approx(0.25));
  g = smin::grad_smin(std::vector<double>{100.0, 0.0});
  CHECK(g[0] < 1e-40);
  CHECK(g[1] == Approx(1.0));
  CHECK_THROWS_AS(smin::grad_smin(std::vector<double>{}), Error);
}

TEST_CASE("smin_c values") {
  const std::vector<double> x{0.3, 1.7, 4.0};
  CHECK(smin::smin_c(x, 1.0) == Approx(smin::smin(x)).epsilon(1e-12));
  CHECK(smin::smin_c(std::vector<double>{0, 0}, 2.0) == Approx(-1.3862943611198906).epsilon(1e-12));
  CHECK(smin::smin_c(std::vector<double>{4, 4, 4, 4}, 4.0) == Approx(-1.5451774444795625).epsilon(1e-12));
  try {
    smin::smin_c(x, 0.5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parameter);
  }
}

TEST_CASE("grad_smin_c values") {
  auto g = smin::grad_smin_c(std::vector<double>{2, 2, 2, 2}, 7.0);
  for (double v : g) CHECK(v == Approx(0.25));
  g = smin::grad_smin_c(std::vector<double>{0.0, 2.0 * std::log(3.0)}, 2.0);
  CHECK(g[0] == Approx(0.75));
  CHECK(g[1] == Approx(0.25));
  g = smin::grad_smin_c(std::vector<double>{0.0, std::log(3.0)}, 1000.0);
  CHECK(std::abs(g[0] - 0.5) < 1e-3);
  CHECK(std::abs(g[1] - 0.5) < 1e-3);
  g = smin::grad_smin_c(std::vector<double>{2.0 * std::log(2.0), 0.0}, 2.0);
  CHECK(g[0] == Approx(1.0 / 3.0));
  CHECK(g[1] == Approx(2.0 / 3.0));
  g = smin::grad_smin_c(std::vector<double>{1, 1, 0}, 3.0);
  CHECK(g[0] == Approx(0.2944976854873674).epsilon(1e-12));
  CHECK(g[2] == Approx(0.41100462902526524).epsilon(1e-12));
  g = smin::grad_smin_c(std::vector<double>{0, 1, 0}, 3.0);
  CHECK(g[0] == Approx(0.36811650066671925).epsilon(1e-12));
  CHECK(g[1] == Approx(0.2637669986665615).epsilon(1e-12));
  CHECK_THROWS_AS(smin::grad_smin_c(std::vector<double>{1.0}, 0.0), Error);
}

TEST_CASE("large entries do not underflow") {
  const std::vector<double> x{1e6, 1e6 + 1.0};
  CHECK(smin::smin(x) == Approx(1e6 - std::log1p(std::exp(-1.0))).epsilon(1e-12));
  const auto g = smin::grad_smin(x);
  CHECK(g[0] + g[1] == Approx(1.0));
  CHECK(g[0] > g[1]);
}
