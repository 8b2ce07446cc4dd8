#pragma once
// Parallel transport of the confluent KZ connection, monodromy of the framed
// braid generators, and the spectral comparison with the framed Burau
// representation.

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "framedrep/fbraid.hpp"
#include "framedrep/kz.hpp"
#include "json.hpp"

namespace framedrep {

struct PathSample {
  BasePoint<Complex> point;
  Tangent tangent;  // derivative in the segment parameter
};

// Piecewise-smooth path; each segment is parameterized by [0, 1].
class BasePath {
 public:
  using Segment = std::function<PathSample(double)>;

  BasePath() = default;
  explicit BasePath(std::vector<Segment> segments, int samples_per_segment = 64);

  static BasePath constant(const BasePoint<Complex>& pt);
  // Straight line in (z, Gamma) from a to b (same ranks, lambda and kappa).
  static BasePath line(const BasePoint<Complex>& a, const BasePoint<Complex>& b);
  // gamma_i^{(r_i)} -> gamma_i^{(r_i)} e^{2 pi i turns theta}.
  static BasePath tau_loop(const BasePoint<Complex>& pt, std::size_t i, int turns = 1);
  // z_i, z_{i+1} rotate about their midpoint by half a turn, clockwise for
  // clockwise = true. Ends at the point with z_i and z_{i+1} exchanged.
  static BasePath half_turn(const BasePoint<Complex>& pt, std::size_t i, bool clockwise = true);

  const std::vector<Segment>& segments() const { return segments_; }
  int samples_per_segment() const { return samples_; }
  BasePoint<Complex> start() const;
  BasePoint<Complex> end() const;
  BasePath reversed() const;
  BasePath then(const BasePath& next) const;

  // Smallest distance to {z_i = z_j} or {gamma_i^{(r_i)} = 0} over the samples.
  double clearance() const;
  // Throws DomainError when clearance() < eps.
  void validate(double eps) const;

 private:
  std::vector<Segment> segments_;
  int samples_ = 64;
};

double clearance(const BasePoint<Complex>& pt);

struct TransportOptions {
  double tol = 1e-10;         // local error tolerance (relative + absolute)
  double eps = 1e-3;          // discriminant margin
  double step_cap = 0.05;     // dt <= step_cap * clearance / speed
  double initial_step = 1e-3;
  double min_step = 1e-14;
  std::size_t max_steps = 2000000;
  Gamma0Convention conv = Gamma0Convention::Lambda;
};

struct IntegratorStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  double max_error = 0.0;  // largest accepted scaled local error estimate

  IntegratorStats& operator+=(const IntegratorStats& o);
};

struct TransportResult {
  Eigen::MatrixXcd matrix;  // Psi(1), Psi(0) = I, dPsi = -A Psi
  Complex log_det;          // integral of -tr A: log det Psi by Liouville
  IntegratorStats stats;
};

// Transport on the full weight space W_m.
TransportResult transport(const BasePath& path, int m, const TransportOptions& opts = {});
// Compressed to the singular vectors: pinv(S_end) Psi S_start.
Eigen::MatrixXcd restrict_to_singular(const Eigen::MatrixXcd& psi, const BasePoint<Complex>& start,
                                      const BasePoint<Complex>& end, int m);

// Permutation of the factor blocks i, i+1 (equal ranks) on W_m.
Eigen::MatrixXcd factor_flip(const WeightSpace& space, std::size_t i);

// Uniform ranks (r, ..., r), weights (lambda, ..., lambda); basepoint
// z_k = k, gamma_k = (0, ..., 0, 1).
BasePoint<Complex> standard_basepoint(int n, int r, Complex lambda, Complex kappa);

struct GeneratorMonodromy {
  Letter generator;
  Eigen::MatrixXcd full;        // on W_m
  Eigen::MatrixXcd restricted;  // on S, in the basis of MonodromyResult
  double invariance_defect;     // ||(I - S S^+) M S||: S is preserved
  Complex log_det;
  IntegratorStats stats;
};

// Orientation: as defined (tau counter-clockwise in gamma^{(r)}, sigma a
// clockwise half turn followed by the factor flip) or the reversed loops.
enum class LoopOrientation { AsDefined, Reversed };
std::string to_string(LoopOrientation o);

GeneratorMonodromy generator_monodromy(const Letter& gen, int n, int r, Complex lambda, Complex kappa, int m,
                                       const TransportOptions& opts = {},
                                       LoopOrientation orientation = LoopOrientation::AsDefined);

struct RelationResidual {
  std::string relation;
  double defect;  // max |entry| of lhs - rhs
};
struct RelationReport {
  std::vector<RelationResidual> residuals;
  double max_defect = 0.0;
};

// Matrices of sigma_1..sigma_{n-1} and tau_1..tau_n (inverses are computed).
RelationReport relation_residuals(const std::vector<Eigen::MatrixXcd>& sigma,
                                  const std::vector<Eigen::MatrixXcd>& tau, int n);
Eigen::MatrixXcd word_matrix(const std::vector<Eigen::MatrixXcd>& sigma, const std::vector<Eigen::MatrixXcd>& tau,
                             const FramedBraidWord& w);

struct MonodromyResult {
  int n = 0, r = 0, m = 0;
  Complex lambda, kappa;
  LoopOrientation orientation = LoopOrientation::AsDefined;
  Eigen::MatrixXcd singular_basis;  // columns in W_m coordinates
  std::vector<GeneratorMonodromy> sigma, tau;
  RelationReport relations;
  IntegratorStats stats;
  double max_condition = 0.0;
};

// All generator loops, transported in parallel.
MonodromyResult compute_monodromy(int n, int r, Complex lambda, Complex kappa, int m,
                                  const TransportOptions& opts = {},
                                  LoopOrientation orientation = LoopOrientation::AsDefined);

nlohmann::json to_json(const MonodromyResult& res);
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);

// Spectral comparison helpers.
std::vector<Complex> eigenvalues(const Eigen::MatrixXcd& m);
// Monic characteristic polynomial, coefficients of x^0 .. x^d.
std::vector<Complex> characteristic_polynomial(const Eigen::MatrixXcd& m);
// min over bijections of max |a_k - b_pi(k)|.
double assignment_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

struct SpectralComparison {
  std::string generator;
  std::vector<Complex> monodromy_eigenvalues, burau_eigenvalues;
  std::vector<Complex> monodromy_charpoly, burau_charpoly;
  double distance = 0.0;
  // Best distance after rescaling the Burau side by c = mu / beta over all
  // eigenvalue pairs (monodromy is only defined up to the beta shift).
  double scaled_distance = 0.0;
  Complex scale;
};

struct ConjectureOrientation {
  LoopOrientation orientation;
  std::vector<SpectralComparison> generators;
  double max_distance = 0.0, max_scaled_distance = 0.0;
  double relation_defect = 0.0;
};

struct ConjectureReport {
  int n = 0, r = 0;
  Complex lambda, kappa, q, t;
  std::size_t monodromy_dim = 0, burau_dim = 0;
  std::vector<ConjectureOrientation> orientations;
};

// m = 1. Throws DomainError if the two dimensions differ.
ConjectureReport conjecture_report(int n, int r, Complex lambda, Complex kappa, const TransportOptions& opts = {});
nlohmann::json to_json(const ConjectureReport& rep);
std::string describe(const ConjectureReport& rep);

}  // namespace framedrep
