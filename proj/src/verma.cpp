#include "framedrep/verma.hpp"

#include <functional>

#include "framedrep/combinat.hpp"
#include "framedrep/errors.hpp"

namespace framedrep {

std::string to_string(const CurrentGenerator& g) {
  const char* name = g.kind == GenKind::E ? "E" : (g.kind == GenKind::H ? "H" : "F");
  return name + std::to_string(g.level);
}

std::vector<GeneratorTerm> bracket(const CurrentGenerator& x, const CurrentGenerator& y, int r) {
  if (x.level < 0 || y.level < 0 || x.level > r || y.level > r) throw DomainError("generator level outside [0, r]");
  const int level = x.level + y.level;
  if (level > r) return {};
  // sl2: [E,F] = H, [H,E] = 2E, [H,F] = -2F; antisymmetry for the rest.
  auto base = [](GenKind a, GenKind b) -> std::pair<int, GenKind> {
    if (a == GenKind::E && b == GenKind::F) return {1, GenKind::H};
    if (a == GenKind::H && b == GenKind::E) return {2, GenKind::E};
    if (a == GenKind::H && b == GenKind::F) return {-2, GenKind::F};
    return {0, GenKind::H};
  };
  auto [c, k] = base(x.kind, y.kind);
  if (c == 0) {
    auto [c2, k2] = base(y.kind, x.kind);
    c = -c2;
    k = k2;
  }
  if (c == 0) return {};
  return {{c, {k, level}}};
}

template <class T>
int VermaWeights<T>::total_rank() const {
  int s = 0;
  for (int r : ranks) s += r;
  return s;
}

template <class T>
VermaWeights<T> make_weights(const std::vector<int>& ranks, const std::vector<T>& lambda,
                             const std::vector<std::vector<T>>& movable) {
  if (ranks.empty()) throw DomainError("at least one tensor factor is required");
  if (lambda.size() != ranks.size() || movable.size() != ranks.size())
    throw DomainError("weights do not match the number of factors");
  VermaWeights<T> w;
  w.ranks = ranks;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] < 1) throw DomainError("each factor needs r_i >= 1");
    if (movable[i].size() != static_cast<std::size_t>(ranks[i]))
      throw DomainError("factor " + std::to_string(i + 1) + " needs r_i movable weights");
    if (is_zero(movable[i].back()))
      throw DomainError("gamma^{(r)} = 0 on factor " + std::to_string(i + 1) + " (outside B^{(r)})");
    std::vector<T> g{lambda[i]};
    g.insert(g.end(), movable[i].begin(), movable[i].end());
    w.gamma.push_back(std::move(g));
  }
  return w;
}

WeightSpace::WeightSpace(std::vector<int> ranks, int m) : ranks_(std::move(ranks)), m_(m) {
  std::size_t parts = 0;
  for (int r : ranks_) {
    offsets_.push_back(parts);
    parts += static_cast<std::size_t>(r) + 1;
  }
  if (m < 0) return;
  MultiIndex j(parts, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
    if (pos + 1 == parts) {
      j[pos] = remaining;
      index_.emplace(j, basis_.size());
      basis_.push_back(j);
      return;
    }
    for (int a = 0; a <= remaining; ++a) {
      j[pos] = a;
      rec(pos + 1, remaining - a);
    }
    j[pos] = 0;
  };
  if (parts > 0) rec(0, m);
}

std::size_t WeightSpace::index_of(const MultiIndex& j) const {
  auto it = index_.find(j);
  return it == index_.end() ? basis_.size() : it->second;
}

template <class T>
WeightSpace weight_basis(const VermaWeights<T>& w, int m) {
  for (std::size_t i = 0; i < w.factors(); ++i)
    if (is_zero(w.gamma[i].back())) throw DomainError("gamma^{(r)} = 0 (outside B^{(r)})");
  return WeightSpace(w.ranks, m);
}

template <class T>
T ModuleVector<T>::coeff(const MultiIndex& j) const {
  auto it = terms_.find(j);
  return it == terms_.end() ? from_ratio<T>(0) : it->second;
}

template <class T>
void ModuleVector<T>::add(const MultiIndex& j, const T& c) {
  if (framedrep::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(j, c);
  if (!inserted) {
    it->second += c;
    if (framedrep::is_zero(it->second)) terms_.erase(it);
  }
}

template <class T>
ModuleVector<T>& ModuleVector<T>::operator+=(const ModuleVector& o) {
  for (const auto& [j, c] : o.terms_) add(j, c);
  return *this;
}

template <class T>
ModuleVector<T>& ModuleVector<T>::operator-=(const ModuleVector& o) {
  for (const auto& [j, c] : o.terms_) add(j, -c);
  return *this;
}

template <class T>
ModuleVector<T>& ModuleVector<T>::operator*=(const T& s) {
  if (framedrep::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [j, c] : terms_) c *= s;
  return *this;
}

namespace {

using Local = std::vector<int>;

// X_p acting on F_0^{j0}...F_r^{jr} v of one factor, by moving X past the
// leftmost F: X F_q u = F_q (X u) + [X, F_q] u.
template <class T>
void act_local(GenKind kind, int p, const Local& j, const std::vector<T>& gamma, const T& scale,
               std::map<Local, T>& out) {
  const int r = static_cast<int>(j.size()) - 1;
  if (p > r) return;
  auto accumulate = [&](const Local& key, const T& c) {
    auto [it, inserted] = out.emplace(key, c);
    if (!inserted) it->second += c;
  };
  if (kind == GenKind::F) {
    Local k = j;
    ++k[p];
    accumulate(k, scale);
    return;
  }
  int q = 0;
  while (q <= r && j[q] == 0) ++q;
  if (q > r) {
    if (kind == GenKind::H) accumulate(j, scale * gamma[p]);
    return;
  }
  Local rest = j;
  --rest[q];
  std::map<Local, T> inner;
  act_local(kind, p, rest, gamma, from_ratio<T>(1), inner);
  for (auto& [k, c] : inner) {
    Local kk = k;
    ++kk[q];
    if (!is_zero(c)) accumulate(kk, scale * c);
  }
  if (p + q <= r) {
    if (kind == GenKind::E) act_local(GenKind::H, p + q, rest, gamma, scale, out);
    else act_local(GenKind::F, p + q, rest, gamma, T(scale * from_ratio<T>(-2)), out);
  }
}

template <class T>
void act_monomial(const CurrentGenerator& g, std::size_t factor, const MultiIndex& j, const T& c,
                  const VermaWeights<T>& w, const std::vector<std::size_t>& offsets, ModuleVector<T>& out) {
  const int r = w.ranks[factor];
  if (g.level > r) return;
  const std::size_t off = offsets[factor];
  Local local(j.begin() + off, j.begin() + off + r + 1);
  std::map<Local, T> res;
  act_local(g.kind, g.level, local, w.gamma[factor], c, res);
  for (const auto& [k, d] : res) {
    MultiIndex jj = j;
    std::copy(k.begin(), k.end(), jj.begin() + off);
    out.add(jj, d);
  }
}

std::vector<std::size_t> offsets_of(const std::vector<int>& ranks) {
  std::vector<std::size_t> off;
  std::size_t s = 0;
  for (int r : ranks) {
    off.push_back(s);
    s += static_cast<std::size_t>(r) + 1;
  }
  return off;
}

}  // namespace

template <class T>
ModuleVector<T> act_generator(const CurrentGenerator& g, std::size_t factor, const ModuleVector<T>& v,
                              const VermaWeights<T>& w) {
  if (factor >= w.factors()) throw DomainError("factor index out of range");
  if (g.level < 0) throw DomainError("negative generator level");
  const auto offsets = offsets_of(w.ranks);
  ModuleVector<T> out;
  for (const auto& [j, c] : v.terms()) act_monomial(g, factor, j, c, w, offsets, out);
  return out;
}

template <class T>
ModuleVector<T> act_diagonal(const CurrentGenerator& g, const ModuleVector<T>& v, const VermaWeights<T>& w) {
  ModuleVector<T> out;
  for (std::size_t i = 0; i < w.factors(); ++i) out += act_generator(g, i, v, w);
  return out;
}

template <class T>
std::vector<T> coordinates(const ModuleVector<T>& v, const WeightSpace& space) {
  std::vector<T> out(space.dim(), from_ratio<T>(0));
  for (const auto& [j, c] : v.terms()) {
    const std::size_t k = space.index_of(j);
    if (k == space.dim()) throw DomainError("vector has a component outside the weight space");
    out[k] = c;
  }
  return out;
}

template <class T>
ModuleVector<T> from_coordinates(const DenseMatrix<T>& columns, std::size_t col, const WeightSpace& space) {
  ModuleVector<T> v;
  for (std::size_t k = 0; k < space.dim(); ++k) v.add(space[k], columns(k, col));
  return v;
}

template <class T>
DenseMatrix<T> generator_matrix(const CurrentGenerator& g, std::size_t factor, const WeightSpace& source,
                                const VermaWeights<T>& w) {
  const int shift = g.kind == GenKind::E ? -1 : (g.kind == GenKind::F ? 1 : 0);
  const WeightSpace target(source.ranks(), source.level() + shift);
  DenseMatrix<T> m(target.dim(), source.dim());
  if (factor >= w.factors()) throw DomainError("factor index out of range");
  const auto offsets = offsets_of(w.ranks);
  for (std::size_t col = 0; col < source.dim(); ++col) {
    ModuleVector<T> image;
    act_monomial(g, factor, source[col], from_ratio<T>(1), w, offsets, image);
    for (const auto& [j, c] : image.terms()) m(target.index_of(j), col) = c;
  }
  return m;
}

template <class T>
DenseMatrix<T> total_e0_matrix(const VermaWeights<T>& w, int m) {
  const WeightSpace source = weight_basis(w, m);
  DenseMatrix<T> total(WeightSpace(w.ranks, m - 1).dim(), source.dim());
  for (std::size_t i = 0; i < w.factors(); ++i) total += generator_matrix<T>({GenKind::E, 0}, i, source, w);
  return total;
}

template <class T>
DenseMatrix<T> singular_space(const VermaWeights<T>& w, int m, double tol) {
  if (m < 0) throw DomainError("m must be nonnegative");
  const long n = static_cast<long>(w.factors());
  const BigInt expected = binomial(w.total_rank() + n + m - 2, m);
  DenseMatrix<T> basis = nullspace(total_e0_matrix(w, m), tol);
  if (BigInt(static_cast<long>(basis.cols())) != expected) {
    throw DomainError("singular space has dimension " + std::to_string(basis.cols()) + ", expected " +
                      expected.get_str() + " (degenerate weights or an action bug)");
  }
  return basis;
}

std::vector<MultiIndex> restricted_basis(const std::vector<int>& ranks, int m) {
  if (ranks.empty()) throw DomainError("at least one tensor factor is required");
  const std::size_t slot = static_cast<std::size_t>(ranks[0]);  // j_1^{(r_1)}
  std::vector<MultiIndex> keep;
  const WeightSpace full(ranks, m);
  for (const auto& j : full.basis())
    if (j[slot] == 0) keep.push_back(j);
  return keep;
}

namespace {

// e = E_0 (diagonal) - x d/df, f = F_{r_1} on the first factor.
template <class T>
ModuleVector<T> apply_fe(const ModuleVector<T>& v, const VermaWeights<T>& w, const T& x) {
  const std::size_t slot = static_cast<std::size_t>(w.ranks[0]);
  ModuleVector<T> e = act_diagonal<T>({GenKind::E, 0}, v, w);
  for (const auto& [j, c] : v.terms()) {
    if (j[slot] == 0) continue;
    MultiIndex jj = j;
    --jj[slot];
    e.add(jj, -(x * c * from_ratio<T>(j[slot])));
  }
  ModuleVector<T> out;
  for (const auto& [j, c] : e.terms()) {
    MultiIndex jj = j;
    ++jj[slot];
    out.add(jj, c);
  }
  return out;
}

}  // namespace

template <class T>
ModuleVector<T> l_map(const ModuleVector<T>& v, const VermaWeights<T>& w, const T& x) {
  if (is_zero(x)) throw DomainError("l_map needs x = gamma_1^{(r_1)} != 0");
  const std::size_t slot = static_cast<std::size_t>(w.ranks[0]);
  for (const auto& [j, c] : v.terms())
    if (j[slot] != 0) throw DomainError("l_map input must have j_1^{(r_1)} = 0");
  ModuleVector<T> sum = v;
  ModuleVector<T> term = v;
  // term_k = (-1)^k (fe)^k v / (k! x^k)
  for (int k = 1;; ++k) {
    term = apply_fe(term, w, x);
    if (term.is_zero()) break;
    if (k > 256) throw DomainError("l_map series failed to terminate");
    term *= from_ratio<T>(-1, k) / x;
    sum += term;
  }
  return sum;
}

template <class T>
ModuleVector<T> l_map(const ModuleVector<T>& v, const VermaWeights<T>& w) {
  return l_map(v, w, w.gamma[0].back());
}

template <class T>
DenseMatrix<T> l_map_matrix(const VermaWeights<T>& w, int m) {
  const WeightSpace space = weight_basis(w, m);
  const auto sources = restricted_basis(w.ranks, m);
  DenseMatrix<T> out(space.dim(), sources.size());
  for (std::size_t col = 0; col < sources.size(); ++col) {
    const auto image = l_map(ModuleVector<T>::basis_vector(sources[col]), w);
    const auto coords = coordinates(image, space);
    for (std::size_t k = 0; k < space.dim(); ++k) out(k, col) = coords[k];
  }
  return out;
}

template <class T>
DenseMatrix<T> singular_lift_matrix(const VermaWeights<T>& w, int m) {
  const WeightSpace space = weight_basis(w, m);
  const std::size_t slot = static_cast<std::size_t>(w.ranks[0]);
  std::vector<std::size_t> keep, divisible;
  for (std::size_t k = 0; k < space.dim(); ++k) (space[k][slot] == 0 ? keep : divisible).push_back(k);
  if (m == 0) return DenseMatrix<T>::identity(1);
  // E_0 on the f-divisible monomials is square (they biject with W_{m-1});
  // the lift of v is v + u with E_0 u = -E_0 v.
  const DenseMatrix<T> e0 = total_e0_matrix(w, m);
  DenseMatrix<T> ef(e0.rows(), divisible.size());
  for (std::size_t i = 0; i < e0.rows(); ++i)
    for (std::size_t c = 0; c < divisible.size(); ++c) ef(i, c) = e0(i, divisible[c]);
  DenseMatrix<T> ef_inv;
  try {
    ef_inv = inverse(ef);
  } catch (const DomainError&) {
    throw DomainError("singular vectors do not project isomorphically onto the f-free monomials");
  }
  DenseMatrix<T> rhs(e0.rows(), keep.size());
  for (std::size_t i = 0; i < e0.rows(); ++i)
    for (std::size_t c = 0; c < keep.size(); ++c) rhs(i, c) = -e0(i, keep[c]);
  const DenseMatrix<T> u = ef_inv * rhs;
  DenseMatrix<T> out(space.dim(), keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out(keep[c], c) = from_ratio<T>(1);
    for (std::size_t k = 0; k < divisible.size(); ++k) out(divisible[k], c) = u(k, c);
  }
  return out;
}

nlohmann::json to_json(const WeightSpace& space) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& j : space.basis()) {
    nlohmann::json factors = nlohmann::json::array();
    for (std::size_t i = 0; i < space.ranks().size(); ++i) {
      const auto begin = j.begin() + static_cast<long>(space.offset(i));
      factors.push_back(std::vector<int>(begin, begin + space.ranks()[i] + 1));
    }
    basis.push_back(factors);
  }
  return {{"ranks", space.ranks()}, {"m", space.level()}, {"dim", space.dim()}, {"basis", basis}};
}

#define FRAMEDREP_INSTANTIATE_VERMA(T)                                                                            \
  template struct VermaWeights<T>;                                                                                \
  template class ModuleVector<T>;                                                                                 \
  template VermaWeights<T> make_weights<T>(const std::vector<int>&, const std::vector<T>&,                        \
                                           const std::vector<std::vector<T>>&);                                   \
  template WeightSpace weight_basis<T>(const VermaWeights<T>&, int);                                              \
  template ModuleVector<T> act_generator<T>(const CurrentGenerator&, std::size_t, const ModuleVector<T>&,         \
                                            const VermaWeights<T>&);                                              \
  template ModuleVector<T> act_diagonal<T>(const CurrentGenerator&, const ModuleVector<T>&,                       \
                                           const VermaWeights<T>&);                                               \
  template std::vector<T> coordinates<T>(const ModuleVector<T>&, const WeightSpace&);                             \
  template ModuleVector<T> from_coordinates<T>(const DenseMatrix<T>&, std::size_t, const WeightSpace&);           \
  template DenseMatrix<T> generator_matrix<T>(const CurrentGenerator&, std::size_t, const WeightSpace&,           \
                                              const VermaWeights<T>&);                                            \
  template DenseMatrix<T> total_e0_matrix<T>(const VermaWeights<T>&, int);                                        \
  template DenseMatrix<T> singular_space<T>(const VermaWeights<T>&, int, double);                                 \
  template ModuleVector<T> l_map<T>(const ModuleVector<T>&, const VermaWeights<T>&, const T&);                    \
  template ModuleVector<T> l_map<T>(const ModuleVector<T>&, const VermaWeights<T>&);                              \
  template DenseMatrix<T> l_map_matrix<T>(const VermaWeights<T>&, int);                                         \
  template DenseMatrix<T> singular_lift_matrix<T>(const VermaWeights<T>&, int);

FRAMEDREP_INSTANTIATE_VERMA(Rational)
FRAMEDREP_INSTANTIATE_VERMA(Complex)
FRAMEDREP_INSTANTIATE_VERMA(DualComplex)

}  // namespace framedrep
