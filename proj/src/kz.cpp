#include "framedrep/kz.hpp"

#include <cmath>

#include "framedrep/combinat.hpp"
#include "framedrep/errors.hpp"
#include "framedrep/parallel.hpp"

namespace framedrep {

std::string to_string(Gamma0Convention c) { return c == Gamma0Convention::Lambda ? "lambda" : "zero"; }

std::string Direction::to_string() const {
  const std::string i = std::to_string(factor + 1);
  return kind == Kind::Z ? "d/dz" + i : "D" + i + "^(" + std::to_string(s) + ")";
}

nlohmann::json to_json(const Direction& d) {
  nlohmann::json j{{"kind", d.kind == Direction::Kind::Z ? "z" : "D"}, {"factor", d.factor + 1}};
  if (d.kind == Direction::Kind::D) j["s"] = d.s;
  return j;
}

template <class T>
void BasePoint<T>::validate() const {
  const std::size_t n = z.size();
  if (n == 0) throw DomainError("at least one point is required");
  if (weights.factors() != n) throw DomainError("weights do not match the number of points");
  for (std::size_t i = 0; i < n; ++i) {
    if (ScalarTraits<T>::magnitude(weights.gamma[i].back()) == 0.0)
      throw DomainError("gamma^{(r)} = 0 on factor " + std::to_string(i + 1));
    for (std::size_t j = i + 1; j < n; ++j)
      if (ScalarTraits<T>::magnitude(z[i] - z[j]) == 0.0) throw DomainError("coincident points z_i = z_j");
  }
  if (ScalarTraits<T>::magnitude(kappa) == 0.0) throw DomainError("kappa must be nonzero");
}

BasePoint<Complex> make_point(const std::vector<Complex>& z, const std::vector<int>& ranks,
                              const std::vector<Complex>& lambda, const std::vector<std::vector<Complex>>& movable,
                              Complex kappa) {
  BasePoint<Complex> pt{z, make_weights(ranks, lambda, movable), kappa};
  pt.validate();
  return pt;
}

std::vector<Direction> all_directions(const std::vector<int>& ranks) {
  std::vector<Direction> dirs;
  for (std::size_t i = 0; i < ranks.size(); ++i) dirs.push_back(Direction::z(i));
  for (std::size_t i = 0; i < ranks.size(); ++i)
    for (int s = 0; s < ranks[i]; ++s) dirs.push_back(Direction::d(i, s));
  return dirs;
}

std::vector<BracketTerm> vector_field_bracket(const Direction& v, const Direction& w,
                                              const std::vector<int>& ranks) {
  if (v.kind != Direction::Kind::D || w.kind != Direction::Kind::D || v.factor != w.factor) return {};
  const int u = v.s + w.s;
  if (v.s == w.s || u >= ranks.at(v.factor)) return {};
  return {{-(v.s - w.s), Direction::d(v.factor, u)}};
}

Tangent field_at(const Direction& v, const BasePoint<Complex>& pt) {
  const auto& w = pt.weights;
  Tangent tan;
  tan.dz.assign(pt.factors(), Complex(0.0));
  for (int r : w.ranks) tan.dgamma.emplace_back(static_cast<std::size_t>(r) + 1, Complex(0.0));
  if (v.factor >= pt.factors()) throw DomainError("direction factor out of range");
  if (v.kind == Direction::Kind::Z) {
    tan.dz[v.factor] = 1.0;
    return tan;
  }
  const int r = w.ranks[v.factor];
  if (v.s < 0 || v.s >= r) throw DomainError("D^{(s)} needs 0 <= s <= r-1");
  for (int p = 1; p <= r - v.s; ++p) tan.dgamma[v.factor][p] = static_cast<double>(p) * w.gamma[v.factor][v.s + p];
  return tan;
}

BasePoint<Complex> shifted(const BasePoint<Complex>& pt, const Tangent& tan, Complex h) {
  BasePoint<Complex> out = pt;
  for (std::size_t i = 0; i < pt.factors(); ++i) {
    out.z[i] += h * tan.dz[i];
    for (std::size_t p = 1; p < out.weights.gamma[i].size(); ++p) out.weights.gamma[i][p] += h * tan.dgamma[i][p];
  }
  return out;
}

BasePoint<DualComplex> along(const BasePoint<Complex>& pt, const Tangent& tan) {
  BasePoint<DualComplex> out;
  out.kappa = DualComplex(pt.kappa);
  out.weights.ranks = pt.weights.ranks;
  for (std::size_t i = 0; i < pt.factors(); ++i) {
    out.z.emplace_back(pt.z[i], tan.dz[i]);
    std::vector<DualComplex> g;
    for (std::size_t p = 0; p < pt.weights.gamma[i].size(); ++p)
      g.emplace_back(pt.weights.gamma[i][p], p == 0 ? Complex(0.0) : tan.dgamma[i][p]);
    out.weights.gamma.push_back(std::move(g));
  }
  return out;
}

template <class T>
KZSystem<T>::KZSystem(BasePoint<T> pt, int m, Gamma0Convention conv)
    : pt_(std::move(pt)),
      m_(m),
      conv_(conv),
      space_(pt_.weights.ranks, m),
      below_(pt_.weights.ranks, m - 1),
      above_(pt_.weights.ranks, m + 1) {
  if (m < 0) throw DomainError("m must be nonnegative");
  pt_.validate();
}

template <class T>
const typename KZSystem<T>::Ops& KZSystem<T>::ops(std::size_t i, int p) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ops_.find({i, p});
  if (it != ops_.end()) return it->second;
  const auto& w = pt_.weights;
  Ops o{generator_matrix<T>({GenKind::E, p}, i, space_, w), generator_matrix<T>({GenKind::F, p}, i, space_, w),
        generator_matrix<T>({GenKind::H, p}, i, space_, w), generator_matrix<T>({GenKind::F, p}, i, below_, w),
        generator_matrix<T>({GenKind::E, p}, i, above_, w)};
  return ops_.emplace(std::make_pair(i, p), std::move(o)).first->second;
}

template <class T>
DenseMatrix<T> KZSystem<T>::omega(int p, int q, std::size_t i, std::size_t j) const {
  const auto& r = pt_.weights.ranks;
  if (i >= r.size() || j >= r.size()) throw DomainError("factor index out of range");
  if (p < 0 || q < 0) throw DomainError("negative Omega level");
  DenseMatrix<T> out(space_.dim(), space_.dim());
  if (p > r[i] || q > r[j]) return out;
  const Ops& a = ops(i, p);
  const Ops& b = ops(j, q);
  out += b.f_down * a.e_down;
  out += b.e_up * a.f_up;
  out.add_scaled(from_ratio<T>(1, 2), b.h * a.h);
  return out;
}

template <class T>
DenseMatrix<T> KZSystem<T>::gaudin(std::size_t i, int s) const {
  const auto& r = pt_.weights.ranks;
  if (i >= r.size()) throw DomainError("factor index out of range");
  if (s < -1 || s > r[i] - 1) throw DomainError("Gaudin index needs -1 <= s <= r_i - 1");
  DenseMatrix<T> g(space_.dim(), space_.dim());
  for (int p = 0; p <= s; ++p) g.add_scaled(from_ratio<T>(1, 2), omega(p, s - p, i, i));
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (j == i) continue;
    const T inv = from_ratio<T>(1) / (pt_.z[i] - pt_.z[j]);
    const int top = r[i] + r[j] - s - 1;
    // inv_pow[k] = (z_i - z_j)^{-k}
    std::vector<T> inv_pow{from_ratio<T>(1)};
    for (int k = 1; k <= top + 1; ++k) inv_pow.push_back(inv_pow.back() * inv);
    for (int p = 0; p <= top; ++p) {
      if (s + p + 1 > r[i]) break;
      long binom = 1;  // C(p+q, p), built up in q
      for (int q = 0; p + q <= top && q <= r[j]; ++q) {
        if (q > 0) binom = binom * (p + q) / q;
        const long sign = p % 2 == 0 ? 1 : -1;
        g.add_scaled(from_ratio<T>(sign * binom) * inv_pow[p + q + 1], omega(s + p + 1, q, i, j));
      }
    }
  }
  return g;
}

template <class T>
T KZSystem<T>::beta(std::size_t i, int s) const {
  const auto& r = pt_.weights.ranks;
  if (i >= r.size()) throw DomainError("factor index out of range");
  if (s < 0 || s > r[i] - 1) throw DomainError("beta index needs 0 <= s <= r_i - 1");
  auto gamma = [&](int p) {
    if (p == 0 && conv_ == Gamma0Convention::Zero) return from_ratio<T>(0);
    return pt_.weights.gamma[i][p];
  };
  T sum = from_ratio<T>(0);
  for (int p = 0; p <= s; ++p) sum += gamma(p) * gamma(s - p);
  return sum * from_ratio<T>(1, 4) + from_ratio<T>(s + 1, 2) * gamma(s);
}

template <class T>
DenseMatrix<T> frame_theta(std::size_t i, int s, const WeightSpace& space) {
  const auto& r = space.ranks();
  if (i >= r.size()) throw DomainError("factor index out of range");
  if (s < 0 || s > r[i] - 1) throw DomainError("Theta index needs 0 <= s <= r_i - 1");
  DenseMatrix<T> out(space.dim(), space.dim());
  const std::size_t off = space.offset(i);
  for (std::size_t col = 0; col < space.dim(); ++col) {
    const MultiIndex& j = space[col];
    // Leibniz over the letters: one F_p becomes p F_{p+s}.
    for (int p = 1; p + s <= r[i]; ++p) {
      const int count = j[off + p];
      if (count == 0) continue;
      MultiIndex jj = j;
      --jj[off + p];
      ++jj[off + p + s];
      out(space.index_of(jj), col) += from_ratio<T>(static_cast<long>(count) * p);
    }
  }
  return out;
}

template <class T>
DenseMatrix<T> KZSystem<T>::theta(std::size_t i, int s) const {
  return frame_theta<T>(i, s, space_);
}

template <class T>
DenseMatrix<T> KZSystem<T>::connection(const Direction& v) const {
  const T inv_kappa = from_ratio<T>(1) / pt_.kappa;
  if (v.kind == Direction::Kind::Z) return gaudin(v.factor, -1) * (-inv_kappa);
  DenseMatrix<T> g = gaudin(v.factor, v.s);
  g -= DenseMatrix<T>::identity(space_.dim()) * beta(v.factor, v.s);
  DenseMatrix<T> a = theta(v.factor, v.s);
  a.add_scaled(-inv_kappa, g);
  return a;
}

namespace {

// Solves the upper-triangular system P c = dgamma, P[p-1][col] = p gamma^{(s+p)},
// s = r-1-col; generic over the scalar so it also runs on dual numbers.
template <class T>
std::vector<T> frame_coefficients(const std::vector<T>& gamma, const std::vector<T>& dgamma, int r) {
  auto entry = [&](int row, int col) {
    const int s = r - 1 - col, p = row + 1;
    return s + p <= r ? from_ratio<T>(p) * gamma[s + p] : from_ratio<T>(0);
  };
  std::vector<T> c(r, from_ratio<T>(0));
  for (int row = r - 1; row >= 0; --row) {
    T rhs = dgamma[row + 1];
    for (int col = row + 1; col < r; ++col) rhs -= entry(row, col) * c[col];
    c[row] = rhs / entry(row, row);
  }
  return c;
}

}  // namespace

template <class T>
DenseMatrix<T> KZSystem<T>::connection_along(const Tangent& tan) const {
  const auto& r = pt_.weights.ranks;
  DenseMatrix<T> a(space_.dim(), space_.dim());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (tan.dz.at(i) != Complex(0.0)) a.add_scaled(T(tan.dz[i]), connection(Direction::z(i)));
    bool moving = false;
    std::vector<T> dg;
    for (const auto& x : tan.dgamma.at(i)) {
      moving = moving || x != Complex(0.0);
      dg.push_back(T(x));
    }
    if (!moving) continue;
    const auto c = frame_coefficients<T>(pt_.weights.gamma[i], dg, r[i]);
    for (int col = 0; col < r[i]; ++col)
      if (!is_zero(c[col])) a.add_scaled(c[col], connection(Direction::d(i, r[i] - 1 - col)));
  }
  return a;
}

template <class T>
DenseMatrix<T> omega_matrix(int p, int q, std::size_t i, std::size_t j, const BasePoint<T>& pt, int m) {
  return KZSystem<T>(pt, m).omega(p, q, i, j);
}

template <class T>
DenseMatrix<T> gaudin_matrix(std::size_t i, int s, const BasePoint<T>& pt, int m) {
  return KZSystem<T>(pt, m).gaudin(i, s);
}

template <class T>
T beta_scalar(std::size_t i, int s, const BasePoint<T>& pt, Gamma0Convention conv) {
  return KZSystem<T>(pt, 0, conv).beta(i, s);
}

FrameChange coordinate_frame_change(const BasePoint<Complex>& pt, std::size_t i) {
  if (i >= pt.factors()) throw DomainError("factor index out of range");
  const int r = pt.weights.ranks[i];
  const auto& g = pt.weights.gamma[i];
  if (g[r] == Complex(0.0)) throw DomainError("frame change is singular at gamma^{(r)} = 0");
  FrameChange fc{Eigen::MatrixXcd::Zero(r, r), Eigen::MatrixXcd::Zero(r, r)};
  for (int col = 0; col < r; ++col) {
    const int s = r - 1 - col;
    for (int p = 1; s + p <= r; ++p) fc.p(p - 1, col) = static_cast<double>(p) * g[s + p];
  }
  fc.p_inv = fc.p.triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(r, r));
  return fc;
}

Eigen::MatrixXcd to_eigen(const DenseMatrix<Complex>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

Eigen::MatrixXcd value_part(const DenseMatrix<DualComplex>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).value;
  return out;
}

Eigen::MatrixXcd slope_part(const DenseMatrix<DualComplex>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).slope;
  return out;
}

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

ConnectionFrame connection_frame(const BasePoint<Complex>& pt, int m, Gamma0Convention conv) {
  KZSystem<Complex> sys(pt, m, conv);
  ConnectionFrame frame{pt, sys.space(), all_directions(pt.weights.ranks), {}};
  frame.matrices.resize(frame.directions.size());
  parallel_for(frame.directions.size(),
               [&](std::size_t k) { frame.matrices[k] = to_eigen(sys.connection(frame.directions[k])); });
  return frame;
}

namespace {

// V(A_W), exactly.
Eigen::MatrixXcd derivative(const BasePoint<Complex>& pt, int m, const Direction& v, const Direction& w,
                            Gamma0Convention conv) {
  KZSystem<DualComplex> sys(along(pt, field_at(v, pt)), m, conv);
  return slope_part(sys.connection(w));
}

Eigen::MatrixXcd curvature(const KZSystem<Complex>& sys, const Eigen::MatrixXcd& vaw, const Eigen::MatrixXcd& wav,
                           const Direction& v, const Direction& w) {
  const Eigen::MatrixXcd av = to_eigen(sys.connection(v));
  const Eigen::MatrixXcd aw = to_eigen(sys.connection(w));
  Eigen::MatrixXcd c = vaw - wav + av * aw - aw * av;
  for (const auto& t : vector_field_bracket(v, w, sys.point().weights.ranks))
    c -= static_cast<double>(t.coeff) * to_eigen(sys.connection(t.dir));
  return c;
}

}  // namespace

double flatness_residual(const BasePoint<Complex>& pt, int m, const Direction& v, const Direction& w,
                         Gamma0Convention conv) {
  KZSystem<Complex> sys(pt, m, conv);
  return operator_norm(curvature(sys, derivative(pt, m, v, w, conv), derivative(pt, m, w, v, conv), v, w));
}

double flatness_residual_fd(const BasePoint<Complex>& pt, int m, const Direction& v, const Direction& w,
                            Gamma0Convention conv, double h) {
  auto fd = [&](const Direction& a, const Direction& b) {
    const Tangent tan = field_at(a, pt);
    const auto plus = to_eigen(KZSystem<Complex>(shifted(pt, tan, h), m, conv).connection(b));
    const auto minus = to_eigen(KZSystem<Complex>(shifted(pt, tan, -h), m, conv).connection(b));
    return Eigen::MatrixXcd((plus - minus) / (2.0 * h));
  };
  KZSystem<Complex> sys(pt, m, conv);
  return operator_norm(curvature(sys, fd(v, w), fd(w, v), v, w));
}

std::vector<FlatnessEntry> flatness_table(const BasePoint<Complex>& pt, int m, Gamma0Convention conv) {
  const auto dirs = all_directions(pt.weights.ranks);
  std::vector<FlatnessEntry> table;
  for (std::size_t a = 0; a < dirs.size(); ++a)
    for (std::size_t b = a + 1; b < dirs.size(); ++b) table.push_back({dirs[a], dirs[b], 0.0});
  parallel_for(table.size(), [&](std::size_t k) {
    table[k].residual = flatness_residual(pt, m, table[k].v, table[k].w, conv);
  });
  return table;
}

Eigen::MatrixXcd singular_basis(const BasePoint<Complex>& pt, int m) {
  const WeightSpace space(pt.weights.ranks, m);
  const Eigen::MatrixXcd e0 = to_eigen(total_e0_matrix(pt.weights, m));
  const long n = static_cast<long>(pt.factors());
  const long dim_s = binomial(pt.weights.total_rank() + n + m - 2, m).get_si();
  if (e0.rows() == 0) return Eigen::MatrixXcd::Identity(space.dim(), space.dim());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e0, Eigen::ComputeFullV);
  const long dim = static_cast<long>(space.dim());
  const auto& sv = svd.singularValues();
  const long rank = dim - dim_s;
  if (rank > 0 && sv(rank - 1) <= 1e-10 * sv(0))
    throw DomainError("singular space is larger than expected (degenerate weights)");
  return svd.matrixV().rightCols(dim_s);
}

double singular_projection_check(const BasePoint<Complex>& pt, int m, Gamma0Convention conv) {
  const Eigen::MatrixXcd s = singular_basis(pt, m);
  const Eigen::MatrixXcd e0 = to_eigen(total_e0_matrix(pt.weights, m));
  KZSystem<Complex> sys(pt, m, conv);
  const auto dirs = all_directions(pt.weights.ranks);
  std::vector<double> res(dirs.size(), 0.0);
  parallel_for(dirs.size(), [&](std::size_t k) {
    const auto lifted = along(pt, field_at(dirs[k], pt));
    const Eigen::MatrixXcd de0 = slope_part(total_e0_matrix(lifted.weights, m));
    const Eigen::MatrixXcd a = to_eigen(sys.connection(dirs[k]));
    res[k] = operator_norm((e0 * a - de0) * s);
  });
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, r);
  return worst;
}

#define FRAMEDREP_INSTANTIATE_KZ(T)                                                                           \
  template struct BasePoint<T>;                                                                               \
  template class KZSystem<T>;                                                                                 \
  template DenseMatrix<T> omega_matrix<T>(int, int, std::size_t, std::size_t, const BasePoint<T>&, int);     \
  template DenseMatrix<T> gaudin_matrix<T>(std::size_t, int, const BasePoint<T>&, int);                      \
  template T beta_scalar<T>(std::size_t, int, const BasePoint<T>&, Gamma0Convention);                         \
  template DenseMatrix<T> frame_theta<T>(std::size_t, int, const WeightSpace&);

FRAMEDREP_INSTANTIATE_KZ(Complex)
FRAMEDREP_INSTANTIATE_KZ(DualComplex)

}  // namespace framedrep
