#include "framedrep/burau.hpp"

#include <map>
#include <mutex>

namespace framedrep {
namespace {

const LaurentPoly2& Q() {
  static const LaurentPoly2 q = LaurentPoly2::q();
  return q;
}

const LaurentPoly2& Qinv() {
  static const LaurentPoly2 q = LaurentPoly2::q(-1);
  return q;
}

void check_params(int n, int r) {
  if (n < 1) throw DomainError("strand count n must be at least 1");
  if (r < 1) throw DomainError("marked-arc count r must be at least 1");
}

void check_letter(int n, const Letter& g) {
  FramedBraidWord(n, {g});  // range validation
}

std::vector<std::string> full_labels(int n, int r) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("a_" + std::to_string(i));
  for (int i = 1; i <= n; ++i)
    for (int s = 1; s <= r; ++s) labels.push_back("b_" + std::to_string(i) + "^(" + std::to_string(s) + ")");
  return labels;
}

std::vector<std::string> reduced_labels(int n, int r) {
  std::vector<std::string> labels;
  for (int i = 1; i < n; ++i) labels.push_back("c_" + std::to_string(i));
  for (int i = 1; i <= n; ++i)
    for (int s = 1; s <= r; ++s) labels.push_back("b_" + std::to_string(i) + "^(" + std::to_string(s) + ")");
  return labels;
}

// Images of the positive generators, written column by column.
PolyMatrix sigma_matrix(int n, int r, int i) {
  const int dim = n + r * n;
  PolyMatrix m = PolyMatrix::identity(dim);
  const int ai = i - 1, aj = i;  // a_i, a_{i+1}
  // sigma_i a_i = (1-q) a_i + q a_{i+1} - sum_s b_i^{(s)}
  m(ai, ai) = LaurentPoly2(1) - Q();
  m(aj, ai) = Q();
  for (int s = 1; s <= r; ++s) m(full_b_index(n, r, i, s), ai) = LaurentPoly2(-1);
  // sigma_i a_{i+1} = a_i
  m(aj, aj) = LaurentPoly2();
  m(ai, aj) = LaurentPoly2(1);
  for (int s = 1; s <= r; ++s) {
    const std::size_t bi = full_b_index(n, r, i, s), bj = full_b_index(n, r, i + 1, s);
    // sigma_i b_i^{(s)} = q b_{i+1}^{(s)}, sigma_i b_{i+1}^{(s)} = b_i^{(s)}
    m(bi, bi) = LaurentPoly2();
    m(bj, bi) = Q();
    m(bj, bj) = LaurentPoly2();
    m(bi, bj) = LaurentPoly2(1);
  }
  return m;
}

PolyMatrix sigma_inverse_matrix(int n, int r, int i) {
  const int dim = n + r * n;
  PolyMatrix m = PolyMatrix::identity(dim);
  const int ai = i - 1, aj = i;
  // sigma_i^{-1} a_i = a_{i+1}
  m(ai, ai) = LaurentPoly2();
  m(aj, ai) = LaurentPoly2(1);
  // sigma_i^{-1} a_{i+1} = q^{-1} a_i + (1 - q^{-1}) a_{i+1} + q^{-1} sum_s b_{i+1}^{(s)}
  m(ai, aj) = Qinv();
  m(aj, aj) = LaurentPoly2(1) - Qinv();
  for (int s = 1; s <= r; ++s) m(full_b_index(n, r, i + 1, s), aj) = Qinv();
  for (int s = 1; s <= r; ++s) {
    const std::size_t bi = full_b_index(n, r, i, s), bj = full_b_index(n, r, i + 1, s);
    // sigma_i^{-1} b_i^{(s)} = b_{i+1}^{(s)}, sigma_i^{-1} b_{i+1}^{(s)} = q^{-1} b_i^{(s)}
    m(bi, bi) = LaurentPoly2();
    m(bj, bi) = LaurentPoly2(1);
    m(bj, bj) = LaurentPoly2();
    m(bi, bj) = Qinv();
  }
  return m;
}

PolyMatrix tau_matrix(int n, int r, int i, TauConvention conv) {
  const int dim = n + r * n;
  PolyMatrix m = PolyMatrix::identity(dim);
  const int ai = i - 1;
  // tau_i a_i = a_i - w b_i^{(r)}, w = q as written, 1 when corrected
  m(full_b_index(n, r, i, r), ai) = conv == TauConvention::Literal ? -Q() : LaurentPoly2(-1);
  // tau_i b_i^{(s)} = b_i^{(s-1)} (s >= 2), tau_i b_i^{(1)} = q b_i^{(r)}
  for (int s = 1; s <= r; ++s) {
    const std::size_t col = full_b_index(n, r, i, s);
    m(col, col) = LaurentPoly2();
  }
  for (int s = 2; s <= r; ++s) m(full_b_index(n, r, i, s - 1), full_b_index(n, r, i, s)) += LaurentPoly2(1);
  m(full_b_index(n, r, i, r), full_b_index(n, r, i, 1)) += Q();
  return m;
}

PolyMatrix tau_inverse_matrix(int n, int r, int i, TauConvention conv) {
  const int dim = n + r * n;
  PolyMatrix m = PolyMatrix::identity(dim);
  const int ai = i - 1;
  // tau_i^{-1} a_i = a_i + w q^{-1} b_i^{(1)}
  m(full_b_index(n, r, i, 1), ai) = conv == TauConvention::Literal ? LaurentPoly2(1) : Qinv();
  // tau_i^{-1} b_i^{(s)} = b_i^{(s+1)} (s < r), tau_i^{-1} b_i^{(r)} = q^{-1} b_i^{(1)}
  for (int s = 1; s <= r; ++s) {
    const std::size_t col = full_b_index(n, r, i, s);
    m(col, col) = LaurentPoly2();
  }
  for (int s = 1; s < r; ++s) m(full_b_index(n, r, i, s + 1), full_b_index(n, r, i, s)) += LaurentPoly2(1);
  m(full_b_index(n, r, i, 1), full_b_index(n, r, i, r)) += Qinv();
  return m;
}

// Coefficient vector (length n + rn) of c_i in the full basis.
std::vector<LaurentPoly2> c_vector(int n, int r, int i, ReducedBasis basis) {
  std::vector<LaurentPoly2> v(n + r * n);
  v[i] = LaurentPoly2(1);
  v[i - 1] = basis == ReducedBasis::Literal ? -Qinv() : LaurentPoly2(-1);
  return v;
}

struct Decomposition {
  std::vector<LaurentPoly2> coords;  // in the reduced basis
  LaurentPoly2 residual;             // coefficient of a_n left over
};

// Writes a full-basis vector in terms of c_1..c_{n-1} and the b's.
Decomposition decompose(int n, int r, const std::vector<LaurentPoly2>& v, ReducedBasis basis) {
  // c_i = a_{i+1} - u a_i with u in {1, q^{-1}}; 1/u is a unit in the ring.
  const LaurentPoly2 inv_u = basis == ReducedBasis::Literal ? Q() : LaurentPoly2(1);
  Decomposition d;
  d.coords.assign(n - 1 + r * n, LaurentPoly2());
  if (n >= 2) {
    // a_1: -u x_1 = alpha_1; a_k: x_{k-1} - u x_k = alpha_k; a_n: x_{n-1} = alpha_n.
    d.coords[0] = -(v[0] * inv_u);
    for (int k = 2; k <= n - 1; ++k) d.coords[k - 1] = (d.coords[k - 2] - v[k - 1]) * inv_u;
    d.residual = v[n - 1] - d.coords[n - 2];
  } else {
    d.residual = v[0];
  }
  for (int k = 0; k < r * n; ++k) d.coords[n - 1 + k] = v[n + k];
  return d;
}

std::vector<LaurentPoly2> apply_matrix(const PolyMatrix& m, const std::vector<LaurentPoly2>& v) {
  std::vector<LaurentPoly2> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

std::vector<Letter> positive_and_negative_generators(int n) {
  std::vector<Letter> gens;
  for (int i = 1; i < n; ++i) {
    gens.push_back(Letter::sigma(i, 1));
    gens.push_back(Letter::sigma(i, -1));
  }
  for (int i = 1; i <= n; ++i) {
    gens.push_back(Letter::tau(i, 1));
    gens.push_back(Letter::tau(i, -1));
  }
  return gens;
}

std::string vector_string(int n, int r, const std::vector<LaurentPoly2>& v) {
  const auto labels = full_labels(n, r);
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + v[k].to_string() + ")*" + labels[k];
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string to_string(ReducedBasis basis) {
  return basis == ReducedBasis::Literal ? "c_i = a_{i+1} - q^{-1} a_i" : "c_i = a_{i+1} - a_i";
}

std::string ClosureReport::describe() const {
  std::string s = to_string(basis) + ": ";
  if (closed) return s + "closed under all generators";
  return s + "not closed; " + offending_generator + " maps " + offending_vector + " outside the span (residual " +
         residual + ")";
}

nlohmann::json to_json(const RepMatrix& m) {
  return {{"dim", m.dim()}, {"basis", m.basis_labels}, {"entries", to_json(m.entries)}};
}

std::size_t full_b_index(int n, int r, int i, int s) {
  return static_cast<std::size_t>(n + (i - 1) * r + (s - 1));
}

std::string to_string(TauConvention conv) {
  return conv == TauConvention::Literal ? "tau_i a_i = a_i - q b_i^(r)" : "tau_i a_i = a_i - b_i^(r)";
}

PolyMatrix full_generator_matrix(int n, int r, const Letter& g, TauConvention conv) {
  check_params(n, r);
  check_letter(n, g);
  if (g.kind == GeneratorKind::Sigma) {
    return g.exponent > 0 ? sigma_matrix(n, r, g.index) : sigma_inverse_matrix(n, r, g.index);
  }
  return g.exponent > 0 ? tau_matrix(n, r, g.index, conv) : tau_inverse_matrix(n, r, g.index, conv);
}

PolyMatrix full_generator_matrix(int n, int r, const Letter& g) {
  return full_generator_matrix(n, r, g, adopted_tau_convention(r));
}

TauConvention adopted_tau_convention(int r) {
  check_params(1, r);
  static std::mutex mu;
  static std::map<int, TauConvention> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(r);
  if (it != cache.end()) return it->second;
  // n = 3 exercises every relation family except far commutation, which
  // involves sigmas only.
  TauConvention chosen;
  if (verify_relations(3, r, BurauForm::Full, TauConvention::Literal).empty()) chosen = TauConvention::Literal;
  else if (verify_relations(3, r, BurauForm::Full, TauConvention::UnitWeight).empty()) chosen = TauConvention::UnitWeight;
  else throw DomainError("neither tau convention satisfies the framed braid relations");
  cache.emplace(r, chosen);
  return chosen;
}

RepMatrix full_burau_matrix(int n, int r, const FramedBraidWord& w) {
  check_params(n, r);
  if (w.strands() != n) throw DomainError("word strand count does not match n");
  PolyMatrix m = PolyMatrix::identity(n + r * n);
  for (const auto& g : w.letters()) m = m * full_generator_matrix(n, r, g);
  return {std::move(m), full_labels(n, r)};
}

ClosureReport check_reduced_closure(int n, int r, ReducedBasis basis) {
  check_params(n, r);
  ClosureReport report;
  report.basis = basis;
  for (const auto& g : positive_and_negative_generators(n)) {
    const PolyMatrix m = full_generator_matrix(n, r, g);
    for (int i = 1; i < n; ++i) {
      const auto image = apply_matrix(m, c_vector(n, r, i, basis));
      const auto d = decompose(n, r, image, basis);
      if (!d.residual.is_zero()) {
        report.closed = false;
        report.offending_generator = g.to_string();
        report.offending_vector = "c_" + std::to_string(i);
        std::vector<LaurentPoly2> res(n + r * n);
        res[n - 1] = d.residual;
        report.residual = vector_string(n, r, res);
        return report;
      }
    }
  }
  return report;
}

ReducedBasis adopted_reduced_basis(int n, int r) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, ReducedBasis> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, r});
  if (it != cache.end()) return it->second;
  const ClosureReport literal = check_reduced_closure(n, r, ReducedBasis::Literal);
  const ClosureReport diff = check_reduced_closure(n, r, ReducedBasis::Difference);
  ReducedBasis chosen;
  if (literal.closed) chosen = ReducedBasis::Literal;
  else if (diff.closed) chosen = ReducedBasis::Difference;
  else throw ClosureError("no reduced basis candidate closes: " + literal.describe() + "; " + diff.describe());
  cache.emplace(std::make_pair(n, r), chosen);
  return chosen;
}

PolyMatrix reduced_generator_matrix(int n, int r, const Letter& g, ReducedBasis basis) {
  return reduced_generator_matrix(n, r, g, basis, adopted_tau_convention(r));
}

PolyMatrix reduced_generator_matrix(int n, int r, const Letter& g, ReducedBasis basis, TauConvention conv) {
  const PolyMatrix m = full_generator_matrix(n, r, g, conv);
  const int dim = n - 1 + r * n;
  PolyMatrix out(dim, dim);
  for (int col = 0; col < dim; ++col) {
    std::vector<LaurentPoly2> source;
    if (col < n - 1) {
      source = c_vector(n, r, col + 1, basis);
    } else {
      source.assign(n + r * n, LaurentPoly2());
      source[n + (col - (n - 1))] = LaurentPoly2(1);
    }
    const auto d = decompose(n, r, apply_matrix(m, source), basis);
    if (!d.residual.is_zero()) {
      std::vector<LaurentPoly2> res(n + r * n);
      res[n - 1] = d.residual;
      throw ClosureError("reduced span (" + to_string(basis) + ") not preserved by " + g.to_string() +
                         "; residual " + vector_string(n, r, res));
    }
    for (int row = 0; row < dim; ++row) out(row, col) = d.coords[row];
  }
  return out;
}

RepMatrix reduced_burau_matrix(int n, int r, const FramedBraidWord& w, ReducedBasis basis) {
  check_params(n, r);
  if (w.strands() != n) throw DomainError("word strand count does not match n");
  PolyMatrix m = PolyMatrix::identity(n - 1 + r * n);
  for (const auto& g : w.letters()) m = m * reduced_generator_matrix(n, r, g, basis);
  return {std::move(m), reduced_labels(n, r)};
}

RepMatrix reduced_burau_matrix(int n, int r, const FramedBraidWord& w) {
  return reduced_burau_matrix(n, r, w, adopted_reduced_basis(n, r));
}

PolyMatrix burau_generator_matrix(int n, int r, const Letter& g, BurauForm form) {
  return form == BurauForm::Full ? full_generator_matrix(n, r, g)
                                 : reduced_generator_matrix(n, r, g, adopted_reduced_basis(n, r));
}

std::vector<RelationDefect> verify_relations(int n, int r, BurauForm form) {
  return verify_relations(n, r, form, adopted_tau_convention(r));
}

std::vector<RelationDefect> verify_relations(int n, int r, BurauForm form, TauConvention conv) {
  check_params(n, r);
  std::map<std::pair<int, int>, PolyMatrix> cache;  // (kind, index) -> generator matrix
  auto gen = [&](const Letter& l) -> const PolyMatrix& {
    const std::pair<int, int> key{l.kind == GeneratorKind::Sigma ? l.index : -l.index, l.exponent};
    auto it = cache.find(key);
    if (it == cache.end()) {
      PolyMatrix m = form == BurauForm::Full
                         ? full_generator_matrix(n, r, l, conv)
                         : reduced_generator_matrix(n, r, l, adopted_reduced_basis(n, r), conv);
      it = cache.emplace(key, std::move(m)).first;
    }
    return it->second;
  };
  auto eval = [&](const FramedBraidWord& w) {
    PolyMatrix m = gen(w.letters().front());
    for (std::size_t k = 1; k < w.letters().size(); ++k) m = m * gen(w.letters()[k]);
    return m;
  };
  std::vector<RelationDefect> defects;
  for (const auto& rel : framed_braid_relations(n)) {
    PolyMatrix diff = eval(rel.lhs) - eval(rel.rhs);
    if (!diff.is_zero()) defects.push_back({rel.name, rel.lhs.to_string(), rel.rhs.to_string(), std::move(diff)});
  }
  return defects;
}

PolyMatrix quotient_burau_matrix(int n, int r, const FramedBraidWord& w) {
  return full_burau_matrix(n, r, w).entries.block(0, 0, n, n);
}

PolyMatrix classical_burau_matrix(int n, const FramedBraidWord& w) {
  if (w.strands() != n) throw DomainError("word strand count does not match n");
  PolyMatrix m = PolyMatrix::identity(n);
  for (const auto& g : w.letters()) {
    if (g.kind == GeneratorKind::Tau) continue;
    PolyMatrix s = PolyMatrix::identity(n);
    const int i = g.index - 1;
    if (g.exponent > 0) {
      s(i, i) = LaurentPoly2(1) - Q();
      s(i + 1, i) = Q();
      s(i, i + 1) = LaurentPoly2(1);
      s(i + 1, i + 1) = LaurentPoly2();
    } else {
      s(i, i) = LaurentPoly2();
      s(i + 1, i) = LaurentPoly2(1);
      s(i, i + 1) = Qinv();
      s(i + 1, i + 1) = LaurentPoly2(1) - Qinv();
    }
    m = m * s;
  }
  return m;
}

bool preserves_b_span(const PolyMatrix& full, int n) {
  for (std::size_t col = n; col < full.cols(); ++col)
    for (int row = 0; row < n; ++row)
      if (!full(row, col).is_zero()) return false;
  return true;
}

RationalQT framed_alexander(int n, int r, const FramedBraidWord& w) {
  const RepMatrix red = reduced_burau_matrix(n, r, w);
  const LaurentPoly2 det = determinant(PolyMatrix::identity(red.dim()) - red.entries);
  if (n == 1) return RationalQT(det);  // (q - 1)/(q - 1) cancels exactly
  return RationalQT(det * (Q() - LaurentPoly2(1)), Q().shifted(n - 1, 0) - LaurentPoly2(1));
}

}  // namespace framedrep
