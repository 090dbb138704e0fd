#include <doctest.h>

#include <cmath>

#include "kinterp/corpus.hpp"
#include "kinterp/lattice.hpp"

using namespace kinterp;

namespace {

SampledFunction sample(const LogGrid& g, double (*f)(double)) { return SampledFunction::from(g, f, Measure::ds_over_s); }

}  // namespace

TEST_CASE("lattice spec strings") {
  LatticeParam F = LatticeParam::parse("t^-1*(1-ln t)^-0.5; q=inf; domain=(0,1]");
  CHECK(F.weight.a == 1.0);
  CHECK(F.weight.b == 0.5);
  CHECK(std::isinf(F.q));
  CHECK(LatticeParam::parse(F.to_string()).to_string() == F.to_string());
  CHECK_THROWS_AS(LatticeParam::parse("t^-1; q=zero"), Error);
}

TEST_CASE("lattice norms of canonical functions") {
  LogGrid g(1e-12, 64);
  auto t = sample(g, [](double s) { return s; });
  CHECK(lattice_norm(t, LatticeParam::linf_over_t()).value == doctest::Approx(1.0));
  CHECK(lattice_norm(t, LatticeParam::l1_ds_over_s()).value == doctest::Approx(1.0).epsilon(1e-4));
  NormResult f11 = lattice_norm(t, LatticeParam::F(1.0, 1.0));
  CHECK(f11.divergent);
  CHECK(std::isinf(f11.value));
  CHECK(std::isfinite(f11.truncated_value));
}

TEST_CASE("Kothe dual swaps the exponent and inverts the weight") {
  LatticeParam d = kothe_dual(LatticeParam::F(1.0, 1.0));
  CHECK(d.weight.a == -1.0);
  CHECK(d.weight.b == -1.0);
  CHECK(std::isinf(d.q));
  CHECK(kothe_dual(LatticeParam::F(0.0, 3.0)).q == doctest::Approx(1.5));
}

TEST_CASE("substitution operators") {
  LogGrid g(1e-8, 32);
  SUBCASE("T") {
    auto t = sample(g, [](double s) { return s; });
    SampledFunction Tt = apply_T(t);
    for (int k = 0; k <= Tt.grid().last(); ++k) CHECK(Tt.at(k) == doctest::Approx(Tt.grid().node(k)).epsilon(1e-12));
    SampledFunction T1 = apply_T(sample(g, [](double) { return 1.0; }));
    for (int k = 0; k <= T1.grid().last(); k += 7) CHECK(T1.at(k) == doctest::Approx(1.0 / T1.grid().node(k)).epsilon(1e-12));
    SampledFunction Tl = apply_T(sample(g, [](double s) { return s * (1.0 - std::log(s)); }));
    for (int k = 0; k <= Tl.grid().last(); ++k) {
      double s = Tl.grid().node(k);
      CHECK(Tl.at(k) == doctest::Approx(s * (1.0 - 2.0 * std::log(s))).epsilon(1e-12));
    }
    // S_2 = t T pointwise
    auto f = sample(g, [](double s) { return std::sqrt(s) + s; });
    SampledFunction S2 = apply_S(f, 2.0), Tf = apply_T(f);
    for (int k = 0; k <= std::min(S2.grid().last(), Tf.grid().last()); ++k)
      CHECK(S2.at(k) == doctest::Approx(Tf.grid().node(k) * Tf.at(k)).epsilon(1e-12));
  }
  SUBCASE("R") {
    auto c = sample(g, [](double) { return 2.5; });
    SampledFunction Rc = apply_R(c);
    for (int k = 0; k <= g.last(); k += 5) CHECK(Rc.at(k) == 2.5);
    auto t = sample(g, [](double s) { return s; });
    SampledFunction Rt = apply_R(t);
    for (int k = 0; k <= g.last(); k += 2) CHECK(Rt.at(k) == doctest::Approx(std::sqrt(g.node(k))).epsilon(1e-12));
    SampledFunction RRt = apply_R(Rt);
    for (int k = 0; k <= g.last(); k += 4) CHECK(RRt.at(k) == doctest::Approx(std::pow(g.node(k), 0.25)).epsilon(1e-12));
  }
  SUBCASE("S and Q") {
    auto f = sample(g, [](double s) { return 1.0 - std::log(s); });
    SampledFunction S1 = apply_S(f, 1.0);
    for (int k = 0; k <= g.last(); k += 3) CHECK(S1.at(k) == f.at(k));
    SampledFunction S2 = apply_S(f, 2.0);
    for (int k = 0; k <= S2.grid().last(); ++k)
      CHECK(S2.at(k) == doctest::Approx(1.0 - 2.0 * std::log(S2.grid().node(k))).epsilon(1e-12));
    SampledFunction Q = apply_Q(sample(g, [](double) { return 1.0; }), 2.0);
    for (int k = 0; k <= g.last(); k += 3) CHECK(Q.at(k) == doctest::Approx(1.0 / std::sqrt(g.node(k))).epsilon(1e-12));
    CHECK_THROWS_AS(apply_Q(f, 1.0), Error);
  }
}

TEST_CASE("operator norm estimates") {
  LogGrid g(1e-12, 64);
  auto corpus = lattice_corpus(g, 20, 7);
  OpEstimate e = estimate_op_norm(apply_T, LatticeParam::linf_over_t(), corpus);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-9));
  // q = 1 lattices: the constant and the one from substituting u = s^2 agree
  for (double b : {1.0, 2.0}) CHECK(estimate_op_norm(apply_T, LatticeParam::F(b, 1.0), corpus).value <= std::pow(2.0, b - 1.0) + 1e-6);
  // R on G_{b,inf}: finite and stable when the corpus doubles
  auto big = lattice_corpus(g, 40, 7);
  double r1 = estimate_op_norm(apply_R, LatticeParam::G(1.0, kInf), corpus).value;
  double r2 = estimate_op_norm(apply_R, LatticeParam::G(1.0, kInf), big).value;
  CHECK(std::isfinite(r1));
  CHECK(r2 == doctest::Approx(r1).epsilon(0.05));
  std::vector<SampledFunction> zero{sample(g, [](double) { return 0.0; })};
  CHECK(estimate_op_norm(apply_T, LatticeParam::F(1.0, 1.0), zero).skipped == 1);
}

TEST_CASE("tilde transform of a weight") {
  LogGrid g(1e-12, 64);
  TildeResult one = tilde_weight(sample(g, [](double) { return 1.0; }));
  for (int k = 0; k <= g.last(); k += 11) {
    double exact = 1.0 - std::log(g.node(k));
    CHECK(std::abs(one.value.at(k) - exact) / exact <= 1e-6);
  }
  TildeResult w1 = tilde_weight(sample(g, [](double s) { return 1.0 - std::log(s); }));
  for (int k = 0; k <= g.last(); k += 11) {
    double L = 1.0 - std::log(g.node(k));
    double r = w1.value.at(k) / (L * L);
    CHECK(r >= 0.25);
    CHECK(r <= 4.0);
    // the tail piece alone is a lower bound
    CHECK(w1.value.at(k) >= 0.5 * (L * L - 1.0) * (1.0 - 1e-9));
  }
  // narrow bump of mass m at s0 (in ds/s): w~(t) = m min(1, s0/t)
  const double s0 = std::pow(2.0, -10.0), m = 0.7;
  int k0 = g.locate(s0);
  std::vector<double> v(g.size(), 0.0);
  v[g.pos(k0)] = m / g.h();
  TildeResult bump = tilde_weight(SampledFunction(g, v, Measure::ds_over_s));
  for (int k : {0, 64, 320, 640, 700}) {
    double t = g.node(k);
    CHECK(bump.value.at(k) == doctest::Approx(m * std::min(1.0, s0 / t)).epsilon(0.02));
  }
}

TEST_CASE("sequence lattices") {
  SequenceLattice M = SequenceLattice::matsaev(1.0);
  std::vector<double> H(1000);
  double acc = 0.0;
  for (std::size_t n = 0; n < H.size(); ++n) H[n] = acc += 1.0 / (n + 1.0);
  CHECK(M.norm(H) == doctest::Approx(1.0));
}
