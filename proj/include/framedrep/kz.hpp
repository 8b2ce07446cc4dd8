#pragma once
// Confluent KZ connection on the weight spaces of a tensor product of
// confluent Verma modules: Omega operators, Gaudin Hamiltonians, the
// D-vector-field frame, and flatness / singular-subbundle checks.
//
// A point of the base space is (z, Gamma) with the highest weights lambda_i
// carried alongside (gamma[i][0] = lambda_i inside VermaWeights). Directions
// are the coordinate fields d/dz_i and the fields
//   D_i^{(s)} = sum_{p=1}^{r_i-s} p gamma_i^{(s+p)} d/dgamma_i^{(p)}.
// The connection matrix A_V of a direction V acts on coordinates in the frame
// {F^J v}: nabla_V psi = V(psi) + A_V psi.

#include <Eigen/Dense>

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "framedrep/dense_matrix.hpp"
#include "framedrep/scalar.hpp"
#include "framedrep/verma.hpp"
#include "json.hpp"

namespace framedrep {

// Value of gamma^{(0)} inside the beta scalars.
enum class Gamma0Convention { Lambda, Zero };
std::string to_string(Gamma0Convention c);

template <class T>
struct BasePoint {
  std::vector<T> z;
  VermaWeights<T> weights;
  T kappa;

  std::size_t factors() const { return z.size(); }
  // Throws on coincident z, gamma^{(r)} = 0, kappa = 0 or shape mismatch.
  void validate() const;
};

BasePoint<Complex> make_point(const std::vector<Complex>& z, const std::vector<int>& ranks,
                              const std::vector<Complex>& lambda, const std::vector<std::vector<Complex>>& movable,
                              Complex kappa);

struct Direction {
  enum class Kind { Z, D };
  Kind kind = Kind::Z;
  std::size_t factor = 0;
  int s = 0;  // D only

  static Direction z(std::size_t i) { return {Kind::Z, i, 0}; }
  static Direction d(std::size_t i, int s) { return {Kind::D, i, s}; }
  bool operator==(const Direction&) const = default;
  std::string to_string() const;
};

// d/dz_1..d/dz_n, then D_i^{(0)}..D_i^{(r_i-1)} factor by factor.
std::vector<Direction> all_directions(const std::vector<int>& ranks);

struct BracketTerm {
  int coeff;
  Direction dir;
};
// [V, W] in the span of the directions: [D_i^{(s)}, D_i^{(t)}] = -(s-t) D_i^{(s+t)},
// zero when s+t >= r_i; every other pair commutes.
std::vector<BracketTerm> vector_field_bracket(const Direction& v, const Direction& w,
                                              const std::vector<int>& ranks);

// Tangent vector in coordinates: dgamma[i][p] for p = 0..r_i (p = 0 always 0).
struct Tangent {
  std::vector<Complex> dz;
  std::vector<std::vector<Complex>> dgamma;
};
Tangent field_at(const Direction& v, const BasePoint<Complex>& pt);
// pt + h * tangent.
BasePoint<Complex> shifted(const BasePoint<Complex>& pt, const Tangent& tan, Complex h);
// pt + eps * tangent, for exact directional derivatives.
BasePoint<DualComplex> along(const BasePoint<Complex>& pt, const Tangent& tan);

// Connection data at one point and level m. Operator matrices are built once
// and shared by every Omega, Gaudin and connection matrix requested.
template <class T>
class KZSystem {
 public:
  KZSystem(BasePoint<T> pt, int m, Gamma0Convention conv = Gamma0Convention::Lambda);

  const BasePoint<T>& point() const { return pt_; }
  const WeightSpace& space() const { return space_; }
  int level() const { return m_; }

  // E_p (x) F_q + F_p (x) E_q + 1/2 H_p (x) H_q on factors i, j; for i = j the
  // left leg is applied first. Zero when a level exceeds truncation.
  DenseMatrix<T> omega(int p, int q, std::size_t i, std::size_t j) const;
  DenseMatrix<T> gaudin(std::size_t i, int s) const;
  T beta(std::size_t i, int s) const;
  DenseMatrix<T> theta(std::size_t i, int s) const;
  DenseMatrix<T> connection(const Direction& v) const;
  // sum_i dz_i A_{d_i} + sum_{i,s} c_i^{(s)} A_{D_i^{(s)}} with c = P^{-1} dgamma.
  DenseMatrix<T> connection_along(const Tangent& tan) const;

 private:
  struct Ops {
    DenseMatrix<T> e_down, f_up, h, f_down, e_up;  // per (factor, level)
  };
  const Ops& ops(std::size_t i, int p) const;

  BasePoint<T> pt_;
  int m_;
  Gamma0Convention conv_;
  WeightSpace space_, below_, above_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::size_t, int>, Ops> ops_;
};

template <class T>
DenseMatrix<T> omega_matrix(int p, int q, std::size_t i, std::size_t j, const BasePoint<T>& pt, int m);
template <class T>
DenseMatrix<T> gaudin_matrix(std::size_t i, int s, const BasePoint<T>& pt, int m);
template <class T>
T beta_scalar(std::size_t i, int s, const BasePoint<T>& pt, Gamma0Convention conv = Gamma0Convention::Lambda);
template <class T>
DenseMatrix<T> frame_theta(std::size_t i, int s, const WeightSpace& space);

struct FrameChange {
  Eigen::MatrixXcd p;      // rows d/dgamma^{(1..r)}, columns D^{(r-1)}, ..., D^{(0)}
  Eigen::MatrixXcd p_inv;
};
FrameChange coordinate_frame_change(const BasePoint<Complex>& pt, std::size_t i);

struct ConnectionFrame {
  BasePoint<Complex> point;
  WeightSpace space;
  std::vector<Direction> directions;
  std::vector<Eigen::MatrixXcd> matrices;
};
ConnectionFrame connection_frame(const BasePoint<Complex>& pt, int m,
                                 Gamma0Convention conv = Gamma0Convention::Lambda);

Eigen::MatrixXcd to_eigen(const DenseMatrix<Complex>& m);
Eigen::MatrixXcd value_part(const DenseMatrix<DualComplex>& m);
Eigen::MatrixXcd slope_part(const DenseMatrix<DualComplex>& m);
double operator_norm(const Eigen::MatrixXcd& m);

// Operator norm of V(A_W) - W(A_V) + [A_V, A_W] - A_{[V,W]}. Derivatives are
// exact (dual numbers).
double flatness_residual(const BasePoint<Complex>& pt, int m, const Direction& v, const Direction& w,
                         Gamma0Convention conv = Gamma0Convention::Lambda);
// Same with central differences of step h, as an independent cross-check.
double flatness_residual_fd(const BasePoint<Complex>& pt, int m, const Direction& v, const Direction& w,
                            Gamma0Convention conv = Gamma0Convention::Lambda, double h = 1e-6);

struct FlatnessEntry {
  Direction v, w;
  double residual;
};
std::vector<FlatnessEntry> flatness_table(const BasePoint<Complex>& pt, int m,
                                          Gamma0Convention conv = Gamma0Convention::Lambda);

// Orthonormal basis of the singular vectors (kernel of the diagonal E_0).
Eigen::MatrixXcd singular_basis(const BasePoint<Complex>& pt, int m);

// max over directions of ||(E_0 A_V - V(E_0)) S||: for psi in S, E_0 nabla_V psi
// vanishes iff this does, since V(E_0 psi) = 0 along sections of S.
double singular_projection_check(const BasePoint<Complex>& pt, int m,
                                 Gamma0Convention conv = Gamma0Convention::Lambda);

nlohmann::json to_json(const Direction& d);

}  // namespace framedrep
