#pragma once
// Truncated current algebra sl2 (x) C[t]/t^{r+1}, confluent Verma modules and
// their tensor products, weight spaces and singular vectors.
//
// A PBW monomial of the tensor product is a multi-index J: the per-factor
// exponent vectors (j_i^{(0)}, ..., j_i^{(r_i)}) concatenated in factor order,
// standing for F_0^{j^{(0)}} ... F_r^{j^{(r)}} v on each factor.

#include <map>
#include <string>
#include <vector>

#include "framedrep/dense_matrix.hpp"
#include "framedrep/scalar.hpp"
#include "json.hpp"

namespace framedrep {

enum class GenKind { E, H, F };

struct CurrentGenerator {
  GenKind kind = GenKind::E;
  int level = 0;
  bool operator==(const CurrentGenerator&) const = default;
};

std::string to_string(const CurrentGenerator& g);

struct GeneratorTerm {
  int coeff = 0;
  CurrentGenerator gen;
};

// [X, Y] in sl2^{(r)}; empty when the bracket vanishes or is truncated.
std::vector<GeneratorTerm> bracket(const CurrentGenerator& x, const CurrentGenerator& y, int r);

using MultiIndex = std::vector<int>;

// Highest weights of the factors. gamma[i][0] is the H_0 weight lambda_i;
// gamma[i][p] for p = 1..r_i are the movable weights.
template <class T>
struct VermaWeights {
  std::vector<int> ranks;
  std::vector<std::vector<T>> gamma;

  std::size_t factors() const { return ranks.size(); }
  const T& lambda(std::size_t i) const { return gamma[i][0]; }
  int total_rank() const;
};

// movable[i] holds gamma_i^{(1)}..gamma_i^{(r_i)}. Rejects gamma^{(r)} = 0.
template <class T>
VermaWeights<T> make_weights(const std::vector<int>& ranks, const std::vector<T>& lambda,
                             const std::vector<std::vector<T>>& movable);

class WeightSpace {
 public:
  WeightSpace() = default;
  // Ascending lexicographic order on J, as in combinat. m < 0 gives the zero space.
  WeightSpace(std::vector<int> ranks, int m);

  const std::vector<int>& ranks() const { return ranks_; }
  int level() const { return m_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<MultiIndex>& basis() const { return basis_; }
  const MultiIndex& operator[](std::size_t k) const { return basis_[k]; }
  // Position of J, or dim() if J is not in the space.
  std::size_t index_of(const MultiIndex& j) const;
  // Offset of factor i inside a multi-index.
  std::size_t offset(std::size_t i) const { return offsets_[i]; }

 private:
  std::vector<int> ranks_;
  int m_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<MultiIndex> basis_;
  std::map<MultiIndex, std::size_t> index_;
};

// Validates the weights (gamma^{(r)} != 0) and returns the basis at level m.
template <class T>
WeightSpace weight_basis(const VermaWeights<T>& w, int m);

// Finite combination of PBW monomials; zero coefficients are pruned.
template <class T>
class ModuleVector {
 public:
  using Terms = std::map<MultiIndex, T>;

  ModuleVector() = default;
  static ModuleVector basis_vector(const MultiIndex& j) {
    ModuleVector v;
    v.terms_.emplace(j, from_ratio<T>(1));
    return v;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  T coeff(const MultiIndex& j) const;

  void add(const MultiIndex& j, const T& c);
  ModuleVector& operator+=(const ModuleVector& o);
  ModuleVector& operator-=(const ModuleVector& o);
  ModuleVector& operator*=(const T& s);
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(ModuleVector a, const T& s) { return a *= s; }

 private:
  Terms terms_;
};

// g acting on tensor factor i (0-based).
template <class T>
ModuleVector<T> act_generator(const CurrentGenerator& g, std::size_t factor, const ModuleVector<T>& v,
                              const VermaWeights<T>& w);

// Diagonal action sum_i g^{(i)}.
template <class T>
ModuleVector<T> act_diagonal(const CurrentGenerator& g, const ModuleVector<T>& v, const VermaWeights<T>& w);

// Coordinates of v in a weight space; throws if v has a component outside it.
template <class T>
std::vector<T> coordinates(const ModuleVector<T>& v, const WeightSpace& space);
template <class T>
ModuleVector<T> from_coordinates(const DenseMatrix<T>& columns, std::size_t col, const WeightSpace& space);

// Matrix of g on factor i from W_m = source to W_{m + shift}, shift = -1, 0, +1
// for E, H, F.
template <class T>
DenseMatrix<T> generator_matrix(const CurrentGenerator& g, std::size_t factor, const WeightSpace& source,
                                const VermaWeights<T>& w);

// Diagonal E_0: W_m -> W_{m-1}.
template <class T>
DenseMatrix<T> total_e0_matrix(const VermaWeights<T>& w, int m);

// Basis (columns, in W_m coordinates) of the singular vectors of weight
// |Lambda| - 2m. Throws DomainError when the dimension disagrees with
// C(|R|+n+m-2, m).
template <class T>
DenseMatrix<T> singular_space(const VermaWeights<T>& w, int m, double tol = 1e-10);

// The subspace W' of W_m with j_1^{(r_1)} = 0, in the same order.
std::vector<MultiIndex> restricted_basis(const std::vector<int>& ranks, int m);

// L(v) = sum_k (-1)^k (f e)^k v / (k! x^k), f = F_{r_1} on the first factor,
// e = E_0 - x d/df. x must be nonzero.
template <class T>
ModuleVector<T> l_map(const ModuleVector<T>& v, const VermaWeights<T>& w, const T& x);
template <class T>
ModuleVector<T> l_map(const ModuleVector<T>& v, const VermaWeights<T>& w);

// Columns are L(w') for w' in restricted_basis, written in W_m coordinates.
// The series is only singular when r_1 = 1 or m <= 1: for r_1 >= 2,
// E_0 F_p F_q v with p + q = r_1 produces f through [H_p, F_q], so f d/df
// does not commute with e (E L(F_1^2 v) = 2 F_2 v for R = (2)).
template <class T>
DenseMatrix<T> l_map_matrix(const VermaWeights<T>& w, int m);

// The isomorphism W' -> S realised directly: column c is the unique singular
// vector congruent to the c-th restricted monomial modulo f W_{m-1}.
// Agrees with l_map_matrix whenever the series is singular.
template <class T>
DenseMatrix<T> singular_lift_matrix(const VermaWeights<T>& w, int m);

nlohmann::json to_json(const WeightSpace& space);

}  // namespace framedrep
