#pragma once
// Framed Burau representations of FB_n over Z[q^{+-1}].
//
// Full representation M: basis a_1..a_n, b_1^{(1)}..b_1^{(r)}, ..., b_n^{(r)}
// (the b's ordered strand-major). Matrices act on column vectors; column k
// holds the image of basis vector k, and a word g_1...g_k maps to the product
// of generator matrices in word order.

#include <string>
#include <vector>

#include "framedrep/errors.hpp"
#include "framedrep/fbraid.hpp"
#include "framedrep/ring.hpp"

namespace framedrep {

struct RepMatrix {
  PolyMatrix entries;
  std::vector<std::string> basis_labels;
  std::size_t dim() const { return entries.rows(); }
};

nlohmann::json to_json(const RepMatrix& m);

enum class BurauForm { Full, Reduced };

// Candidate spanning vectors for the reduced representation.
//   Literal:    c_i = a_{i+1} - q^{-1} a_i
//   Difference: c_i = a_{i+1} - a_i
enum class ReducedBasis { Literal, Difference };
std::string to_string(ReducedBasis basis);

class ClosureError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct ClosureReport {
  ReducedBasis basis = ReducedBasis::Difference;
  bool closed = true;
  std::string offending_generator;  // empty when closed
  std::string offending_vector;     // c_i whose image leaves the span
  std::string residual;             // image minus its best span approximation
  std::string describe() const;
};

// Weight of b_i^{(r)} in tau_i a_i. As printed the action reads
// a_i - q b_i^{(r)}, which violates sigma_i tau_{i+1} = tau_i sigma_i
// (sigma_i^2 fails to commute with tau_i). Dropping the q restores every
// relation; the adopted convention is decided by checking the relations.
enum class TauConvention { Literal, UnitWeight };
std::string to_string(TauConvention conv);
TauConvention adopted_tau_convention(int r);

// Index of b_i^{(s)} (1-based i, s) in the full basis.
std::size_t full_b_index(int n, int r, int i, int s);

PolyMatrix full_generator_matrix(int n, int r, const Letter& g);
PolyMatrix full_generator_matrix(int n, int r, const Letter& g, TauConvention conv);
RepMatrix full_burau_matrix(int n, int r, const FramedBraidWord& w);

ClosureReport check_reduced_closure(int n, int r, ReducedBasis basis);
// Tests both candidates; prefers Literal when it closes. Throws ClosureError
// if neither closes.
ReducedBasis adopted_reduced_basis(int n, int r);

// Reduced representation on (c_1..c_{n-1}, b's); n = 1 gives the b-span.
RepMatrix reduced_burau_matrix(int n, int r, const FramedBraidWord& w);
RepMatrix reduced_burau_matrix(int n, int r, const FramedBraidWord& w, ReducedBasis basis);
PolyMatrix reduced_generator_matrix(int n, int r, const Letter& g, ReducedBasis basis);
PolyMatrix reduced_generator_matrix(int n, int r, const Letter& g, ReducedBasis basis, TauConvention conv);

PolyMatrix burau_generator_matrix(int n, int r, const Letter& g, BurauForm form);

struct RelationDefect {
  std::string relation;
  std::string lhs;
  std::string rhs;
  PolyMatrix difference;
};

// Empty result means every defining relation holds exactly.
std::vector<RelationDefect> verify_relations(int n, int r, BurauForm form);
std::vector<RelationDefect> verify_relations(int n, int r, BurauForm form, TauConvention conv);

// Action on M / N, N = span of the b's: the a-block of the full matrix.
PolyMatrix quotient_burau_matrix(int n, int r, const FramedBraidWord& w);
// Classical unreduced Burau matrix, built independently of the framed one.
PolyMatrix classical_burau_matrix(int n, const FramedBraidWord& w);
// True when the b-span is mapped into itself by a full-basis matrix.
bool preserves_b_span(const PolyMatrix& full, int n);

// ((q - 1)/(q^n - 1)) det(I - reduced(w)).
RationalQT framed_alexander(int n, int r, const FramedBraidWord& w);

}  // namespace framedrep
