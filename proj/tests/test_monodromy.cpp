#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "framedrep/burau.hpp"
#include "framedrep/errors.hpp"
#include "framedrep/monodromy.hpp"

using namespace framedrep;

namespace {

const Complex kI(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

double dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

BasePoint<Complex> sample_point() {
  return make_point({Complex(0.0, 0.0), Complex(1.2, 0.3)}, {1, 1}, {Complex(0.3, 0.1), Complex(-0.4, 0.2)},
                    {{Complex(0.9, -0.2)}, {Complex(1.1, 0.4)}}, 3.5);
}

// Closed square loop of side h in the (z_1, gamma_2^{(1)}) plane.
BasePath square(const BasePoint<Complex>& p, double h) {
  auto a = p, b = p, c = p;
  a.z[0] += h;
  b.z[0] += h;
  b.weights.gamma[1][1] += Complex(0.0, h);
  c.weights.gamma[1][1] += Complex(0.0, h);
  return BasePath::line(p, a).then(BasePath::line(a, b)).then(BasePath::line(b, c)).then(BasePath::line(c, p));
}

}  // namespace

TEST_CASE("constant path transports trivially") {
  auto res = transport(BasePath::constant(sample_point()), 1);
  CHECK(dist(res.matrix, Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
  CHECK(std::abs(res.log_det) == 0.0);
}

TEST_CASE("one-dimensional tau loop matches the closed form") {
  // n = 1, r = 1, m = 0: A along D^{(0)} is -(G^{(0)} - beta)/kappa with
  // G^{(0)} = lambda/2 + lambda^2/4 on v. The tau loop has D^{(0)}-coefficient
  // 2 pi i, so the monodromy is exp(2 pi i (G - beta) / kappa).
  const Complex lam(0.37, 0.0), kappa(3.5, 0.0);
  const Complex g = lam / 2.0 + lam * lam / 4.0;
  auto lam_conv = generator_monodromy(Letter::tau(1), 1, 1, lam, kappa, 0);
  CHECK(lam_conv.full.rows() == 1);
  CHECK(std::abs(lam_conv.full(0, 0) - 1.0) < 1e-12);
  TransportOptions zero;
  zero.conv = Gamma0Convention::Zero;
  auto zero_conv = generator_monodromy(Letter::tau(1), 1, 1, lam, kappa, 0, zero);
  CHECK(std::abs(zero_conv.full(0, 0) - std::exp(2.0 * kPi * kI * g / kappa)) < 1e-9);
}

TEST_CASE("round trip and contractible loops") {
  std::mt19937 rng(4);
  std::normal_distribution<double> d(0.0, 0.3);
  auto p = sample_point();
  for (int k = 0; k < 3; ++k) {
    auto q = p;
    q.z[0] += Complex(d(rng), d(rng));
    q.weights.gamma[0][1] += Complex(d(rng), d(rng));
    q.weights.gamma[1][1] += Complex(d(rng), d(rng));
    const BasePath path = BasePath::line(p, q);
    auto there = transport(path, 1);
    auto back = transport(path.reversed(), 1);
    CHECK(dist(back.matrix * there.matrix, Eigen::MatrixXcd::Identity(4, 4)) < 1e-8);
  }
  auto loop = transport(square(p, 0.2), 1);
  CHECK(dist(loop.matrix, Eigen::MatrixXcd::Identity(4, 4)) < 1e-7);
}

TEST_CASE("homotopy invariance") {
  auto base = standard_basepoint(2, 1, Complex(1.0 / 3.0), Complex(3.5));
  const auto once = transport(BasePath::tau_loop(base, 0), 1).matrix;
  // same loop as four quarter arcs
  std::vector<BasePath::Segment> quarters;
  for (int k = 0; k < 4; ++k) {
    quarters.push_back([base, k](double t) {
      PathSample s = BasePath::tau_loop(base, 0).segments().front()((k + t) / 4.0);
      for (auto& x : s.tangent.dgamma[0]) x /= 4.0;
      return s;
    });
  }
  CHECK(dist(transport(BasePath(quarters), 1).matrix, once) < 1e-6);
  // a perturbed circle |gamma| = 1 + 0.3 sin(2 pi t) in the same class
  BasePath wobbly({[base](double t) {
    PathSample s = BasePath::tau_loop(base, 0).segments().front()(t);
    const double rad = 1.0 + 0.3 * std::sin(2.0 * kPi * t), drad = 0.6 * kPi * std::cos(2.0 * kPi * t);
    const Complex e = std::exp(2.0 * kPi * kI * t);
    s.point.weights.gamma[0][1] = rad * e;
    s.tangent.dgamma[0][1] = drad * e + rad * 2.0 * kPi * kI * e;
    return s;
  }});
  CHECK(dist(transport(wobbly, 1).matrix, once) < 1e-6);
}

TEST_CASE("Liouville: det follows the integrated trace") {
  auto base = standard_basepoint(2, 1, Complex(0.21, 0.05), Complex(2.0));
  for (const auto& path : {BasePath::tau_loop(base, 1), BasePath::half_turn(base, 0)}) {
    auto res = transport(path, 1);
    const Complex det = res.matrix.determinant();
    CHECK(std::abs(std::abs(det) - std::abs(std::exp(res.log_det))) < 1e-6 * std::abs(det));
    CHECK(std::abs(det - std::exp(res.log_det)) < 1e-6 * std::abs(det));
  }
}

TEST_CASE("paths reject the discriminant") {
  auto base = standard_basepoint(2, 1, Complex(0.2), Complex(2.0));
  auto close = base;
  close.z[1] = close.z[0] + 1e-4;
  CHECK_THROWS_AS(transport(BasePath::line(base, close), 0), DomainError);
  auto through = base;
  through.weights.gamma[0][1] = -1.0;  // straight line passes gamma = 0
  CHECK_THROWS_AS(transport(BasePath::line(base, through), 0), DomainError);
}

TEST_CASE("factor flip") {
  const WeightSpace w({1, 1}, 1);
  auto f = factor_flip(w, 0);
  CHECK(dist(f * f, Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
  CHECK(f(w.index_of({0, 0, 1, 0}), w.index_of({1, 0, 0, 0})) == 1.0);
  CHECK_THROWS_AS(factor_flip(WeightSpace({1, 2}, 1), 0), DomainError);
}

TEST_CASE("generator monodromies satisfy the framed braid relations") {
  const Complex lam(1.0 / 3.0), kappa(3.5);
  for (int m : {0, 1}) {
    auto res = compute_monodromy(2, 1, lam, kappa, m);
    CHECK(res.singular_basis.cols() == (m == 0 ? 1 : 3));
    CHECK(res.relations.max_defect < 1e-5);
    for (const auto* set : {&res.sigma, &res.tau})
      for (const auto& g : *set) CHECK(g.invariance_defect < 1e-7);
    const auto& s = res.sigma[0].restricted;
    const auto& t1 = res.tau[0].restricted;
    const auto& t2 = res.tau[1].restricted;
    CHECK(dist(s * t1, t2 * s) < 1e-5);
    CHECK(dist(t1 * t2, t2 * t1) < 1e-6);
  }
  // explicit inverse loops invert the generators
  auto s = generator_monodromy(Letter::sigma(1), 2, 1, lam, kappa, 1);
  auto s_inv = generator_monodromy(Letter::sigma(1, -1), 2, 1, lam, kappa, 1);
  CHECK(dist(s.restricted * s_inv.restricted, Eigen::MatrixXcd::Identity(3, 3)) < 1e-8);
  auto rev = generator_monodromy(Letter::tau(2), 2, 1, lam, kappa, 1, {}, LoopOrientation::Reversed);
  auto tau = generator_monodromy(Letter::tau(2), 2, 1, lam, kappa, 1);
  CHECK(dist(rev.restricted * tau.restricted, Eigen::MatrixXcd::Identity(3, 3)) < 1e-8);
}

TEST_CASE("relation residuals") {
  // exact representation matrices survive specialization
  const Complex q = std::exp(2.0 * kPi * kI * 0.1), t(1.0);
  std::vector<Eigen::MatrixXcd> sig, tau;
  auto specialized = [&](const Letter& g) {
    auto v = evaluate(burau_generator_matrix(3, 2, g, BurauForm::Full), q, t);
    Eigen::MatrixXcd m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i][j];
    return m;
  };
  for (int i = 1; i <= 2; ++i) sig.push_back(specialized(Letter::sigma(i)));
  for (int i = 1; i <= 3; ++i) tau.push_back(specialized(Letter::tau(i)));
  CHECK(relation_residuals(sig, tau, 3).max_defect < 1e-12);
  auto bad = sig;
  bad[0](0, 0) += 1e-3;
  CHECK(relation_residuals(bad, tau, 3).max_defect >= 1e-4);
  CHECK_THROWS_AS(relation_residuals(sig, {tau[0]}, 3), DomainError);
}

TEST_CASE("spectral helpers") {
  CHECK(assignment_distance({1.0, 2.0, 3.0}, {3.0, 1.0, 2.0}) == 0.0);
  CHECK(std::abs(assignment_distance({0.0, 10.0}, {9.0, 1.0}) - 1.0) < 1e-15);
  Eigen::MatrixXcd m(2, 2);
  m << 2.0, 1.0, 0.0, 3.0;
  auto c = characteristic_polynomial(m);
  CHECK(std::abs(c[0] - 6.0) < 1e-12);
  CHECK(std::abs(c[1] + 5.0) < 1e-12);
  CHECK(std::abs(c[2] - 1.0) < 1e-12);
}

TEST_CASE("conjecture report") {
  auto rep = conjecture_report(1, 1, Complex(1.0 / 3.0), Complex(3.5));
  CHECK(rep.monodromy_dim == 1);
  CHECK(rep.burau_dim == 1);
  REQUIRE(rep.orientations.size() == 2);
  CHECK(rep.orientations[0].generators.size() == 1);
  CHECK(rep.orientations[0].generators[0].burau_eigenvalues.size() == 1);
  CHECK(std::abs(rep.orientations[0].generators[0].burau_eigenvalues[0] - rep.q) < 1e-12);
  auto j = to_json(rep);
  CHECK(j["orientations"].size() == 2);
  CHECK(describe(rep).find("conjecture") != std::string::npos);
}
