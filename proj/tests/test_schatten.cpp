#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kinterp/schatten.hpp"

using namespace kinterp;

TEST_CASE("singular values of simple matrices") {
  CompactOperator d = CompactOperator::diagonal({3.0, 1.0, 2.0});
  REQUIRE(d.s().size() == 3);
  CHECK(d.s()[0] == doctest::Approx(3.0));
  CHECK(d.s()[1] == doctest::Approx(2.0));
  CHECK(d.s()[2] == doctest::Approx(1.0));

  // rank one u v^T
  std::vector<double> u{1.0, 2.0, 2.0}, v{0.0, 3.0, 4.0};
  std::vector<cplx> e;
  for (double a : u)
    for (double b : v) e.emplace_back(a * b, 0.0);
  CompactOperator r(3, e);
  CHECK(r.s()[0] == doctest::Approx(15.0));
  CHECK(r.s()[1] == doctest::Approx(0.0).epsilon(1e-12));

  CompactOperator g = CompactOperator::random_gaussian(12, 5);
  CHECK(schatten_norm(g, 2.0) == doctest::Approx(g.frobenius()).epsilon(1e-12));
  CHECK(schatten_norm(g, kInf) == doctest::Approx(g.s()[0]));
}

TEST_CASE("operator text format") {
  CompactOperator m = CompactOperator::parse_csv("1,0;0,1\n0,-1;2\n");
  CHECK(m.n() == 2);
  CHECK(m(0, 1) == cplx(0.0, 1.0));
  CHECK(m(1, 1) == cplx(2.0, 0.0));
  CHECK_THROWS_AS(CompactOperator::parse_csv("1,0;0\n1\n"), Error);
}

TEST_CASE("Matsaev norms") {
  CompactOperator e1 = CompactOperator::diagonal({1.0});
  CHECK(matsaev_norm(e1, 1.0) == doctest::Approx(1.0));
  CHECK(schatten_norm(e1, 1.5) == doctest::Approx(1.0));
  std::vector<double> h(1000);
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = 1.0 / (j + 1.0);
  CHECK(matsaev_norm(h, 1.0) == doctest::Approx(1.0));
  CHECK(matsaev_extrap(std::vector<double>{1.0}, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
  double x = matsaev_extrap(h, 1.0, 2.0);
  CHECK(x > 0.25);
  CHECK(x < 4.0);
}

TEST_CASE("discretized Volterra operator") {
  const std::size_t n = 128;
  CompactOperator V = volterra(n);
  auto [R, J] = components(V);
  CHECK(R.s()[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(R.s()[1] <= 1e-12);
  CompactOperator Jd = J - J.adjoint();
  CHECK(Jd.frobenius() <= 1e-14);
  // continuous operator: s_j = 2 / ((2j - 1) pi)
  for (std::size_t j = 1; j <= 20; ++j)
    CHECK(V.s()[j - 1] == doctest::Approx(2.0 / ((2.0 * j - 1.0) * std::numbers::pi)).epsilon(0.03));
  for (double p : {1.1, 1.5, 2.0, 3.0}) CHECK(matsaev_inequality(V, p).pass);
}

TEST_CASE("ideal norms of diagonal operators") {
  SequenceLattice M = SequenceLattice::matsaev(1.0);
  std::vector<double> h(20000);
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = 1.0 / (j + 1.0);
  CHECK(ideal_norm_via_F(h, M) == doctest::Approx(1.0));
  double r = ideal_norm_via_F(h, M) / ideal_extrap(h, M);
  CHECK(r > 0.25);
  CHECK(r < 4.0);
  CHECK(xlog_norm(h, M) <= ideal_norm_via_F(h, M));
  double tr = sd_transfer_ratio(h, M);
  CHECK(std::isfinite(tr));
  CHECK(tr > 0.0);
}
