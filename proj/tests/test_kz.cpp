#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "framedrep/errors.hpp"
#include "framedrep/kz.hpp"

using namespace framedrep;

namespace {

Complex random_complex(std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  return {d(rng), d(rng)};
}

BasePoint<Complex> random_point(std::mt19937& rng, const std::vector<int>& ranks, Complex kappa = 3.5) {
  std::vector<Complex> z, lambda;
  std::vector<std::vector<Complex>> movable;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    z.push_back(Complex(1.5 * static_cast<double>(i), 0.0) + random_complex(rng, 0.3));
    lambda.push_back(random_complex(rng));
    std::vector<Complex> g;
    for (int p = 1; p <= ranks[i]; ++p) g.push_back(random_complex(rng) + (p == ranks[i] ? Complex(1.0) : 0.0));
    movable.push_back(g);
  }
  return make_point(z, ranks, lambda, movable, kappa);
}

double max_abs(const DenseMatrix<Complex>& m) { return m.max_abs(); }

// Exact polynomials in gamma^{(1)}, ..., gamma^{(r)}; the exponent vector has
// length r + 1 with slot 0 unused, matching the gamma indexing.
using Poly = std::map<std::vector<int>, Rational>;

void add_term(Poly& f, const std::vector<int>& e, const Rational& c) {
  Rational& slot = f[e];
  slot += c;
  if (slot == 0) f.erase(e);
}

Poly apply_d(int s, int r, const Poly& f) {
  // D^{(s)} = sum_{p=1}^{r-s} p gamma^{(s+p)} d/dgamma^{(p)}
  Poly out;
  for (const auto& [e, c] : f) {
    for (int p = 1; p + s <= r; ++p) {
      if (e[p] == 0) continue;
      auto e2 = e;
      --e2[p];
      ++e2[s + p];
      add_term(out, e2, c * e[p] * p);
    }
  }
  return out;
}

Poly sub(Poly a, const Poly& b) {
  for (const auto& [e, c] : b) add_term(a, e, -c);
  return a;
}

Poly scale(Poly a, int k) {
  if (k == 0) return {};
  for (auto& [e, c] : a) c *= k;
  return a;
}

}  // namespace

TEST_CASE("Omega on the highest weight vector") {
  auto pt = make_point({0.0, 2.0}, {1, 1}, {0.4, -1.3}, {{0.7}, {Complex(0.2, 0.5)}}, 3.5);
  const Complex l1 = 0.4, l2 = -1.3, g1 = 0.7;
  auto o00 = omega_matrix(0, 0, 0, 1, pt, 0);
  CHECK(std::abs(o00(0, 0) - 0.5 * l1 * l2) < 1e-14);
  auto o10 = omega_matrix(1, 0, 0, 1, pt, 0);
  CHECK(std::abs(o10(0, 0) - 0.5 * g1 * l2) < 1e-14);
  CHECK(omega_matrix(2, 0, 0, 1, pt, 1).is_zero_matrix());
  CHECK(omega_matrix(0, 2, 0, 1, pt, 1).is_zero_matrix());
}

TEST_CASE("Omega_ii applies the left leg first") {
  // Omega_11^{(0,1)} F_0 v = F_1 E_0 F_0 v + E_1 F_0 F_0 v + 1/2 H_1 H_0 F_0 v, single factor r = 1.
  // E_0 F_0 v = lambda v; E_1 F_0^2 v = 2 gamma F_0 v - 2 F_1 v (as [E_1,F_0] = H_1);
  // H_0 F_0 v = (lambda - 2) F_0 v, H_1 F_0 v = gamma F_0 v - 2 F_1 v.
  const Complex lam(0.3, 0.1), g(1.2, -0.4);
  auto pt = make_point({0.0}, {1}, {lam}, {{g}}, 2.0);
  KZSystem<Complex> sys(pt, 1);
  const auto& space = sys.space();
  const std::size_t f0 = space.index_of({1, 0}), f1 = space.index_of({0, 1});
  auto om = sys.omega(0, 1, 0, 0);
  const Complex h = 0.5 * (lam - 2.0);
  CHECK(std::abs(om(f0, f0) - (2.0 * g + h * g)) < 1e-13);
  CHECK(std::abs(om(f1, f0) - (lam - 2.0 + h * -2.0)) < 1e-13);
}

TEST_CASE("Gaudin Hamiltonians") {
  std::mt19937 rng(1);
  auto single = random_point(rng, {2});
  CHECK(gaudin_matrix(0, -1, single, 2).is_zero_matrix());

  const Complex l1(0.4, 0.2), l2(-1.1, 0.3), g1(0.8, -0.6), g2(-0.3, 1.4), z1(0.2, 0.1), z2(1.7, -0.5);
  auto pt = make_point({z1, z2}, {1, 1}, {l1, l2}, {{g1}, {g2}}, 2.0);
  const Complex z = z1 - z2;
  const Complex expect =
      0.5 * (l1 * l2 / z + l1 * g2 / (z * z) - g1 * l2 / (z * z) - 2.0 * g1 * g2 / (z * z * z));
  CHECK(std::abs(gaudin_matrix(0, -1, pt, 0)(0, 0) - expect) < 1e-13);

  SUBCASE("commutes with the diagonal sl2") {
    for (const auto& ranks : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {2, 2}}) {
      auto p = random_point(rng, ranks);
      for (int m = 1; m <= 2; ++m) {
        KZSystem<Complex> lo(p, m - 1), mid(p, m), hi(p, m + 1);
        DenseMatrix<Complex> e_m(WeightSpace(ranks, m - 1).dim(), mid.space().dim());
        DenseMatrix<Complex> f_m(hi.space().dim(), mid.space().dim());
        DenseMatrix<Complex> h_m(mid.space().dim(), mid.space().dim());
        for (std::size_t i = 0; i < ranks.size(); ++i) {
          e_m += generator_matrix<Complex>({GenKind::E, 0}, i, mid.space(), p.weights);
          f_m += generator_matrix<Complex>({GenKind::F, 0}, i, mid.space(), p.weights);
          h_m += generator_matrix<Complex>({GenKind::H, 0}, i, mid.space(), p.weights);
        }
        for (std::size_t i = 0; i < ranks.size(); ++i) {
          for (int s = -1; s < ranks[i]; ++s) {
            auto g = mid.gaudin(i, s);
            const double scale = std::max(1.0, max_abs(g));
            CHECK(max_abs(e_m * g - lo.gaudin(i, s) * e_m) < 1e-9 * scale);
            CHECK(max_abs(f_m * g - hi.gaudin(i, s) * f_m) < 1e-9 * scale);
            CHECK(max_abs(h_m * g - g * h_m) < 1e-9 * scale);
          }
        }
      }
    }
  }

  SUBCASE("pole order at z_1 = z_2 is r_1 + r_2 + 1") {
    for (const auto& ranks : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 2}}) {
      auto p = random_point(rng, ranks);
      const int order = ranks[0] + ranks[1] + 1;
      std::vector<Eigen::MatrixXcd> scaled;
      for (double eps : {1e-2, 1e-3, 1e-4}) {
        auto q = p;
        q.z[1] = q.z[0] - eps;
        scaled.push_back(std::pow(eps, order) * to_eigen(gaudin_matrix(0, -1, q, 1)));
      }
      // A pole of order exactly r_1+r_2+1: the rescaled matrix converges to a
      // nonzero limit at rate O(eps).
      CHECK((scaled[2] - scaled[1]).norm() < 0.2 * (scaled[1] - scaled[0]).norm() + 1e-12);
      CHECK(scaled[2].norm() > 1e-6);
    }
  }
}

TEST_CASE("beta scalars") {
  auto pt = make_point({0.0}, {2}, {Complex(0.6, 0.2)}, {{Complex(-0.4, 1.0), Complex(1.3, 0.0)}}, 2.0);
  const Complex l(0.6, 0.2), g1(-0.4, 1.0);
  CHECK(std::abs(beta_scalar(0, 0, pt) - (l * l / 4.0 + l / 2.0)) < 1e-14);
  CHECK(std::abs(beta_scalar(0, 0, pt, Gamma0Convention::Zero)) < 1e-14);
  CHECK(std::abs(beta_scalar(0, 1, pt) - (0.5 * l * g1 + g1)) < 1e-14);
  CHECK(std::abs(beta_scalar(0, 1, pt, Gamma0Convention::Zero) - g1) < 1e-14);
  auto zero = make_point({0.0}, {1}, {0.0}, {{1.0}}, 2.0);
  CHECK(std::abs(beta_scalar(0, 0, zero)) == 0.0);
  CHECK_THROWS_AS(beta_scalar(0, 2, pt), DomainError);
}

TEST_CASE("frame Theta") {
  const WeightSpace w1({2}, 1);
  auto t0 = frame_theta<Complex>(0, 0, w1);
  auto t1 = frame_theta<Complex>(0, 1, w1);
  const auto f0 = w1.index_of({1, 0, 0}), f1 = w1.index_of({0, 1, 0}), f2 = w1.index_of({0, 0, 1});
  for (std::size_t k = 0; k < w1.dim(); ++k) {
    CHECK(t0(k, f0) == 0.0);
    CHECK(t1(k, f0) == 0.0);
  }
  CHECK(t0(f1, f1) == 1.0);
  CHECK(t0(f2, f2) == 2.0);
  CHECK(t1(f2, f1) == 1.0);
  CHECK(t1(f1, f1) == 0.0);
  // Leibniz: F_1^2 v -> 2 F_1 F_2 v under D^{(1)}.
  const WeightSpace w2({2}, 2);
  CHECK(frame_theta<Complex>(0, 1, w2)(w2.index_of({0, 1, 1}), w2.index_of({0, 2, 0})) == 2.0);
  CHECK(frame_theta<Complex>(0, 0, WeightSpace({2}, 0)).is_zero_matrix());
}

TEST_CASE("coordinate frame change") {
  auto p1 = make_point({0.0}, {1}, {0.5}, {{Complex(2.0, 1.0)}}, 2.0);
  auto fc1 = coordinate_frame_change(p1, 0);
  CHECK(std::abs(fc1.p(0, 0) - Complex(2.0, 1.0)) < 1e-15);
  CHECK(std::abs(fc1.p_inv(0, 0) - 1.0 / Complex(2.0, 1.0)) < 1e-15);

  const Complex g1(0.3, -0.2), g2(1.1, 0.4);
  auto p2 = make_point({0.0}, {2}, {0.5}, {{g1, g2}}, 2.0);
  auto fc2 = coordinate_frame_change(p2, 0);
  CHECK(std::abs(fc2.p(0, 0) - g2) < 1e-15);
  CHECK(std::abs(fc2.p(0, 1) - g1) < 1e-15);
  CHECK(std::abs(fc2.p(1, 0)) == 0.0);
  CHECK(std::abs(fc2.p(1, 1) - 2.0 * g2) < 1e-15);

  std::mt19937 rng(7);
  for (int r = 1; r <= 4; ++r) {
    auto p = random_point(rng, {r});
    auto fc = coordinate_frame_change(p, 0);
    double fact = 1;
    for (int k = 2; k <= r; ++k) fact *= k;
    const Complex expect = fact * std::pow(p.weights.gamma[0][r], r);
    CHECK(std::abs(fc.p.determinant() - expect) < 1e-12 * std::abs(expect));
    CHECK((fc.p * fc.p_inv - Eigen::MatrixXcd::Identity(r, r)).norm() < 1e-12);
    // Columns of P are the fields D^{(r-1)}, ..., D^{(0)} in coordinates.
    for (int col = 0; col < r; ++col) {
      auto tan = field_at(Direction::d(0, r - 1 - col), p);
      for (int row = 0; row < r; ++row) CHECK(std::abs(fc.p(row, col) - tan.dgamma[0][row + 1]) < 1e-15);
    }
  }
}

TEST_CASE("vector field brackets on polynomials") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5), expo(0, 3);
  for (int r = 1; r <= 4; ++r) {
    for (int trial = 0; trial < 5; ++trial) {
      Poly f;
      for (int t = 0; t < 6; ++t) {
        std::vector<int> e(r + 1, 0);
        for (int p = 1; p <= r; ++p) e[p] = expo(rng);
        add_term(f, e, Rational(coef(rng)));
      }
      for (int s = 0; s < r; ++s) {
        for (int t = 0; t < r; ++t) {
          const Poly lhs = sub(apply_d(s, r, apply_d(t, r, f)), apply_d(t, r, apply_d(s, r, f)));
          CHECK(lhs == scale(apply_d(s + t, r, f), -(s - t)));
          // the library's bracket table agrees
          Poly table;
          for (const auto& term : vector_field_bracket(Direction::d(0, s), Direction::d(0, t), {r}))
            table = scale(apply_d(term.dir.s, r, f), term.coeff);
          CHECK(lhs == table);
        }
      }
    }
  }
  CHECK(vector_field_bracket(Direction::z(0), Direction::d(0, 0), {2}).empty());
  CHECK(vector_field_bracket(Direction::d(0, 0), Direction::d(1, 1), {2, 2}).empty());
}

TEST_CASE("connection along a tangent matches the frame") {
  std::mt19937 rng(3);
  auto p = random_point(rng, {2, 1});
  KZSystem<Complex> sys(p, 1);
  for (const auto& d : all_directions({2, 1})) {
    auto a = sys.connection_along(field_at(d, p));
    CHECK(max_abs(a - sys.connection(d)) < 1e-12 * std::max(1.0, max_abs(a)));
  }
  auto frame = connection_frame(p, 1);
  CHECK(frame.matrices.size() == 2 + 3);
}

TEST_CASE("flatness") {
  std::mt19937 rng(21);
  auto p11 = random_point(rng, {1});
  for (const auto& e : flatness_table(p11, 1)) CHECK(e.residual < 1e-10);

  auto p = random_point(rng, {1, 1});
  CHECK(flatness_residual(p, 1, Direction::z(0), Direction::z(1)) < 1e-10);
  auto p2 = p;
  p2.kappa *= 2.0;
  for (const auto& e : flatness_table(p2, 1)) CHECK(e.residual < 1e-10);

  SUBCASE("exact derivatives agree with finite differences") {
    auto q = random_point(rng, {2, 1});
    for (const auto& e : flatness_table(q, 1)) {
      CHECK(flatness_residual_fd(q, 1, e.v, e.w) < 1e-6);
    }
  }

  SUBCASE("gamma^{(0)} convention") {
    // Both conventions are flat while r <= 2; at r = 3 the pair (D^{(1)}, D^{(2)})
    // separates them, because D^{(3)} = 0 but gamma^{(0)} gamma^{(3)} survives in beta.
    auto q = random_point(rng, {2, 2});
    for (auto conv : {Gamma0Convention::Lambda, Gamma0Convention::Zero})
      for (const auto& e : flatness_table(q, 1, conv)) CHECK(e.residual < 1e-8);
    auto q3 = random_point(rng, {3});
    CHECK(flatness_residual(q3, 1, Direction::d(0, 1), Direction::d(0, 2), Gamma0Convention::Lambda) < 1e-8);
    CHECK(flatness_residual(q3, 1, Direction::d(0, 1), Direction::d(0, 2), Gamma0Convention::Zero) > 1e-3);
  }
}

TEST_CASE("singular subbundle is preserved") {
  std::mt19937 rng(8);
  CHECK(singular_projection_check(random_point(rng, {2, 1}), 0) < 1e-12);
  for (int k = 0; k < 10; ++k) CHECK(singular_projection_check(random_point(rng, {1, 1}), 1) < 1e-9);
  CHECK(singular_projection_check(random_point(rng, {2}), 2) < 1e-9);
  // The V(E_0) term matters: dropping it breaks the check for D-directions.
  auto p = random_point(rng, {2});
  const auto s = singular_basis(p, 2);
  const auto e0 = to_eigen(total_e0_matrix(p.weights, 2));
  KZSystem<Complex> sys(p, 2);
  CHECK(operator_norm(e0 * to_eigen(sys.connection(Direction::d(0, 0))) * s) > 1e-3);
}

TEST_CASE("base point validation") {
  CHECK_THROWS_AS(make_point({0.0, 0.0}, {1, 1}, {0.1, 0.2}, {{1.0}, {1.0}}, 2.0), DomainError);
  CHECK_THROWS_AS(make_point({0.0}, {1}, {0.1}, {{0.0}}, 2.0), DomainError);
  CHECK_THROWS_AS(make_point({0.0}, {1}, {0.1}, {{1.0}}, 0.0), DomainError);
}
