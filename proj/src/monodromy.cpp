#include "framedrep/monodromy.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "framedrep/burau.hpp"
#include "framedrep/errors.hpp"
#include "framedrep/parallel.hpp"

namespace framedrep {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

Tangent zero_tangent(const BasePoint<Complex>& pt) {
  Tangent t;
  t.dz.assign(pt.factors(), Complex(0.0));
  for (int r : pt.weights.ranks) t.dgamma.emplace_back(static_cast<std::size_t>(r) + 1, Complex(0.0));
  return t;
}

double speed(const Tangent& t) {
  double s = 0.0;
  for (const auto& x : t.dz) s = std::max(s, std::abs(x));
  for (const auto& g : t.dgamma)
    for (const auto& x : g) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

double clearance(const BasePoint<Complex>& pt) {
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pt.factors(); ++i) {
    c = std::min(c, std::abs(pt.weights.gamma[i].back()));
    for (std::size_t j = i + 1; j < pt.factors(); ++j) c = std::min(c, std::abs(pt.z[i] - pt.z[j]));
  }
  return c;
}

BasePath::BasePath(std::vector<Segment> segments, int samples_per_segment)
    : segments_(std::move(segments)), samples_(samples_per_segment) {
  if (segments_.empty()) throw DomainError("a path needs at least one segment");
  if (samples_ < 2) throw DomainError("at least two samples per segment are required");
}

BasePath BasePath::constant(const BasePoint<Complex>& pt) {
  return BasePath({[pt](double) { return PathSample{pt, zero_tangent(pt)}; }});
}

BasePath BasePath::line(const BasePoint<Complex>& a, const BasePoint<Complex>& b) {
  if (a.weights.ranks != b.weights.ranks) throw DomainError("line endpoints have different ranks");
  Tangent d = zero_tangent(a);
  for (std::size_t i = 0; i < a.factors(); ++i) {
    d.dz[i] = b.z[i] - a.z[i];
    for (std::size_t p = 1; p < a.weights.gamma[i].size(); ++p)
      d.dgamma[i][p] = b.weights.gamma[i][p] - a.weights.gamma[i][p];
  }
  return BasePath({[a, d](double t) { return PathSample{shifted(a, d, t), d}; }});
}

BasePath BasePath::tau_loop(const BasePoint<Complex>& pt, std::size_t i, int turns) {
  if (i >= pt.factors()) throw DomainError("tau loop factor out of range");
  return BasePath({[pt, i, turns](double t) {
    PathSample s{pt, zero_tangent(pt)};
    const Complex w = 2.0 * kPi * kI * static_cast<double>(turns);
    auto& g = s.point.weights.gamma[i].back();
    g = pt.weights.gamma[i].back() * std::exp(w * t);
    s.tangent.dgamma[i].back() = w * g;
    return s;
  }});
}

BasePath BasePath::half_turn(const BasePoint<Complex>& pt, std::size_t i, bool clockwise) {
  if (i + 1 >= pt.factors()) throw DomainError("half turn needs factors i and i+1");
  return BasePath({[pt, i, clockwise](double t) {
    PathSample s{pt, zero_tangent(pt)};
    const Complex c = 0.5 * (pt.z[i] + pt.z[i + 1]);
    const Complex w = (clockwise ? -1.0 : 1.0) * kPi * kI;
    const Complex e = std::exp(w * t);
    for (std::size_t k : {i, i + 1}) {
      s.point.z[k] = c + (pt.z[k] - c) * e;
      s.tangent.dz[k] = (pt.z[k] - c) * e * w;
    }
    return s;
  }});
}

BasePoint<Complex> BasePath::start() const { return segments_.front()(0.0).point; }
BasePoint<Complex> BasePath::end() const { return segments_.back()(1.0).point; }

BasePath BasePath::reversed() const {
  std::vector<Segment> rev;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    rev.push_back([seg = *it](double t) {
      PathSample s = seg(1.0 - t);
      for (auto& x : s.tangent.dz) x = -x;
      for (auto& g : s.tangent.dgamma)
        for (auto& x : g) x = -x;
      return s;
    });
  }
  return BasePath(std::move(rev), samples_);
}

BasePath BasePath::then(const BasePath& next) const {
  std::vector<Segment> all = segments_;
  all.insert(all.end(), next.segments_.begin(), next.segments_.end());
  return BasePath(std::move(all), std::max(samples_, next.samples_));
}

double BasePath::clearance() const {
  double c = std::numeric_limits<double>::infinity();
  for (const auto& seg : segments_)
    for (int k = 0; k <= samples_; ++k) c = std::min(c, framedrep::clearance(seg(double(k) / samples_).point));
  return c;
}

void BasePath::validate(double eps) const {
  const double c = clearance();
  if (c < eps) {
    std::ostringstream msg;
    msg << "path comes within " << c << " of the discriminant (margin " << eps << ")";
    throw DomainError(msg.str());
  }
}

IntegratorStats& IntegratorStats::operator+=(const IntegratorStats& o) {
  steps += o.steps;
  rejected += o.rejected;
  max_error = std::max(max_error, o.max_error);
  return *this;
}

TransportResult transport(const BasePath& path, int m, const TransportOptions& opts) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<Complex>;
  path.validate(opts.eps);
  const BasePoint<Complex> p0 = path.start();
  const std::size_t d = WeightSpace(p0.weights.ranks, m).dim();
  const std::size_t size = d * d + 1;  // Psi column-major, then log det

  TransportResult res;
  State x(size, Complex(0.0));
  for (std::size_t k = 0; k < d; ++k) x[k * d + k] = 1.0;

  for (const auto& seg : path.segments()) {
    auto rhs = [&](const State& y, State& dydt, double t) {
      const PathSample s = seg(t);
      const Eigen::MatrixXcd a = to_eigen(KZSystem<Complex>(s.point, m, opts.conv).connection_along(s.tangent));
      Eigen::Map<const Eigen::MatrixXcd> psi(y.data(), static_cast<long>(d), static_cast<long>(d));
      Eigen::Map<Eigen::MatrixXcd> dpsi(dydt.data(), static_cast<long>(d), static_cast<long>(d));
      dpsi.noalias() = -a * psi;
      dydt[d * d] = -a.trace();
    };
    odeint::runge_kutta_dopri5<State> stepper;
    State dxdt(size), out(size), dxdt_out(size), xerr(size);
    rhs(x, dxdt, 0.0);
    double t = 0.0, dt = opts.initial_step;
    while (t < 1.0) {
      const PathSample s = seg(t);
      const double c = clearance(s.point);
      if (c < opts.eps) throw DomainError("transport approached the discriminant");
      const double v = speed(s.tangent);
      if (v > 0.0) dt = std::min(dt, opts.step_cap * c / v);
      dt = std::min(dt, 1.0 - t);
      stepper.do_step(rhs, x, dxdt, t, out, dxdt_out, dt, xerr);
      double err = 0.0;
      for (std::size_t k = 0; k < size; ++k) {
        const double scale = opts.tol * (1.0 + std::max(std::abs(x[k]), std::abs(out[k])));
        err = std::max(err, std::abs(xerr[k]) / scale);
      }
      if (err <= 1.0) {
        t = (1.0 - t <= dt) ? 1.0 : t + dt;
        x.swap(out);
        dxdt.swap(dxdt_out);
        ++res.stats.steps;
        res.stats.max_error = std::max(res.stats.max_error, err);
        dt *= err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      } else {
        ++res.stats.rejected;
        dt *= std::max(0.2, 0.9 * std::pow(err, -0.25));
      }
      if (dt < opts.min_step) throw DomainError("transport step size underflow");
      if (res.stats.steps + res.stats.rejected > opts.max_steps) throw DomainError("transport exceeded max steps");
    }
  }
  res.matrix = Eigen::Map<Eigen::MatrixXcd>(x.data(), static_cast<long>(d), static_cast<long>(d));
  res.log_det = x[d * d];
  return res;
}

Eigen::MatrixXcd restrict_to_singular(const Eigen::MatrixXcd& psi, const BasePoint<Complex>& start,
                                      const BasePoint<Complex>& end, int m) {
  return singular_basis(end, m).adjoint() * psi * singular_basis(start, m);
}

Eigen::MatrixXcd factor_flip(const WeightSpace& space, std::size_t i) {
  const auto& r = space.ranks();
  if (i + 1 >= r.size() || r[i] != r[i + 1]) throw DomainError("factor flip needs equal ranks at i, i+1");
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  const std::size_t a = space.offset(i), b = space.offset(i + 1), len = static_cast<std::size_t>(r[i]) + 1;
  for (std::size_t col = 0; col < space.dim(); ++col) {
    MultiIndex j = space[col];
    std::swap_ranges(j.begin() + long(a), j.begin() + long(a + len), j.begin() + long(b));
    f(space.index_of(j), col) = 1.0;
  }
  return f;
}

BasePoint<Complex> standard_basepoint(int n, int r, Complex lambda, Complex kappa) {
  if (n < 1 || r < 1) throw DomainError("need n >= 1 and r >= 1");
  std::vector<Complex> z;
  std::vector<std::vector<Complex>> movable;
  for (int k = 1; k <= n; ++k) {
    z.emplace_back(static_cast<double>(k), 0.0);
    std::vector<Complex> g(r, Complex(0.0));
    g.back() = 1.0;
    movable.push_back(g);
  }
  return make_point(z, std::vector<int>(n, r), std::vector<Complex>(n, lambda), movable, kappa);
}

std::string to_string(LoopOrientation o) { return o == LoopOrientation::AsDefined ? "as-defined" : "reversed"; }

GeneratorMonodromy generator_monodromy(const Letter& gen, int n, int r, Complex lambda, Complex kappa, int m,
                                       const TransportOptions& opts, LoopOrientation orientation) {
  FramedBraidWord(n, {gen});  // range check
  const BasePoint<Complex> base = standard_basepoint(n, r, lambda, kappa);
  const int sign = gen.exponent * (orientation == LoopOrientation::AsDefined ? 1 : -1);
  const std::size_t i = static_cast<std::size_t>(gen.index - 1);
  GeneratorMonodromy out{gen, {}, {}, 0.0, {}, {}};
  TransportResult tr;
  if (gen.kind == GeneratorKind::Tau) {
    tr = transport(BasePath::tau_loop(base, i, sign), m, opts);
    out.full = tr.matrix;
  } else {
    tr = transport(BasePath::half_turn(base, i, sign > 0), m, opts);
    out.full = factor_flip(WeightSpace(base.weights.ranks, m), i) * tr.matrix;
  }
  out.log_det = tr.log_det;
  out.stats = tr.stats;
  const Eigen::MatrixXcd s = singular_basis(base, m);
  out.restricted = s.adjoint() * out.full * s;
  out.invariance_defect = operator_norm(out.full * s - s * out.restricted);
  return out;
}

Eigen::MatrixXcd word_matrix(const std::vector<Eigen::MatrixXcd>& sigma, const std::vector<Eigen::MatrixXcd>& tau,
                             const FramedBraidWord& w) {
  if (tau.empty()) throw DomainError("no generator matrices");
  const long d = tau.front().rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(d, d);
  for (const auto& l : w.letters()) {
    const auto& g = l.kind == GeneratorKind::Sigma ? sigma.at(l.index - 1) : tau.at(l.index - 1);
    out = out * (l.exponent > 0 ? Eigen::MatrixXcd(g) : Eigen::MatrixXcd(g.inverse()));
  }
  return out;
}

RelationReport relation_residuals(const std::vector<Eigen::MatrixXcd>& sigma,
                                  const std::vector<Eigen::MatrixXcd>& tau, int n) {
  if (static_cast<int>(tau.size()) != n || static_cast<int>(sigma.size()) != n - 1)
    throw DomainError("relation check needs n - 1 sigma and n tau matrices");
  for (const auto* set : {&sigma, &tau})
    for (const auto& g : *set)
      if (g.rows() != tau.front().rows() || g.cols() != g.rows()) throw DomainError("generator matrices differ in size");
  RelationReport rep;
  for (const auto& rel : framed_braid_relations(n)) {
    const double defect = (word_matrix(sigma, tau, rel.lhs) - word_matrix(sigma, tau, rel.rhs)).cwiseAbs().maxCoeff();
    rep.residuals.push_back({rel.name, defect});
    rep.max_defect = std::max(rep.max_defect, defect);
  }
  return rep;
}

MonodromyResult compute_monodromy(int n, int r, Complex lambda, Complex kappa, int m, const TransportOptions& opts,
                                  LoopOrientation orientation) {
  MonodromyResult res;
  res.n = n;
  res.r = r;
  res.m = m;
  res.lambda = lambda;
  res.kappa = kappa;
  res.orientation = orientation;
  const BasePoint<Complex> base = standard_basepoint(n, r, lambda, kappa);
  res.singular_basis = singular_basis(base, m);
  std::vector<Letter> gens;
  for (int i = 1; i < n; ++i) gens.push_back(Letter::sigma(i));
  for (int i = 1; i <= n; ++i) gens.push_back(Letter::tau(i));
  std::vector<GeneratorMonodromy> out(gens.size());
  parallel_for(gens.size(), [&](std::size_t k) {
    out[k] = generator_monodromy(gens[k], n, r, lambda, kappa, m, opts, orientation);
  });
  std::vector<Eigen::MatrixXcd> sig, tau;
  for (auto& g : out) {
    res.stats += g.stats;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g.restricted);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    res.max_condition = std::max(res.max_condition, cond);
    (g.generator.kind == GeneratorKind::Sigma ? sig : tau).push_back(g.restricted);
    (g.generator.kind == GeneratorKind::Sigma ? res.sigma : res.tau).push_back(std::move(g));
  }
  res.relations = relation_residuals(sig, tau, n);
  return res;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (long i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

namespace {

nlohmann::json complex_json(Complex c) { return {c.real(), c.imag()}; }

nlohmann::json complex_list(const std::vector<Complex>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : v) out.push_back(complex_json(c));
  return out;
}

nlohmann::json stats_json(const IntegratorStats& s) {
  return {{"steps", s.steps}, {"rejected", s.rejected}, {"max_scaled_error", s.max_error}};
}

}  // namespace

nlohmann::json to_json(const MonodromyResult& res) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto* set : {&res.sigma, &res.tau}) {
    for (const auto& g : *set) {
      gens.push_back({{"generator", g.generator.to_string()},
                      {"matrix", matrix_to_json(g.restricted)},
                      {"invariance_defect", g.invariance_defect},
                      {"log_det", complex_json(g.log_det)},
                      {"stats", stats_json(g.stats)}});
    }
  }
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : res.relations.residuals) rels.push_back({{"relation", r.relation}, {"defect", r.defect}});
  return {{"n", res.n},
          {"r", res.r},
          {"m", res.m},
          {"lambda", complex_json(res.lambda)},
          {"kappa", complex_json(res.kappa)},
          {"orientation", to_string(res.orientation)},
          {"dim", res.singular_basis.cols()},
          {"basis", matrix_to_json(res.singular_basis)},
          {"generators", gens},
          {"relations", rels},
          {"max_relation_defect", res.relations.max_defect},
          {"max_condition", res.max_condition},
          {"stats", stats_json(res.stats)}};
}

std::vector<Complex> eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return std::arg(a) != std::arg(b) ? std::arg(a) < std::arg(b) : std::abs(a) < std::abs(b);
  });
  return out;
}

std::vector<Complex> characteristic_polynomial(const Eigen::MatrixXcd& m) {
  // prod (x - mu), built up one root at a time
  std::vector<Complex> c{1.0};
  for (const auto& mu : eigenvalues(m)) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= mu * c[k];
    }
    c = std::move(next);
  }
  return c;
}

double assignment_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw DomainError("spectra have different sizes");
  const std::size_t n = a.size();
  if (n > 20) throw DomainError("assignment distance supports at most 20 eigenvalues");
  // best[mask]: bottleneck of matching a[0..popcount) onto the b's in mask
  std::vector<double> best(std::size_t(1) << n, std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (std::size_t mask = 0; mask < best.size(); ++mask) {
    if (!std::isfinite(best[mask])) continue;
    const std::size_t k = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (k == n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t(1) << j)) continue;
      const std::size_t next = mask | (std::size_t(1) << j);
      best[next] = std::min(best[next], std::max(best[mask], std::abs(a[k] - b[j])));
    }
  }
  return best.back();
}

namespace {

SpectralComparison compare(const std::string& name, const Eigen::MatrixXcd& mono, const Eigen::MatrixXcd& burau) {
  SpectralComparison c;
  c.generator = name;
  c.monodromy_eigenvalues = eigenvalues(mono);
  c.burau_eigenvalues = eigenvalues(burau);
  c.monodromy_charpoly = characteristic_polynomial(mono);
  c.burau_charpoly = characteristic_polynomial(burau);
  c.distance = assignment_distance(c.monodromy_eigenvalues, c.burau_eigenvalues);
  c.scaled_distance = c.distance;
  c.scale = 1.0;
  for (const auto& mu : c.monodromy_eigenvalues) {
    for (const auto& be : c.burau_eigenvalues) {
      if (std::abs(be) == 0.0) continue;
      const Complex s = mu / be;
      std::vector<Complex> scaled;
      for (const auto& x : c.burau_eigenvalues) scaled.push_back(s * x);
      const double d = assignment_distance(c.monodromy_eigenvalues, scaled);
      if (d < c.scaled_distance) {
        c.scaled_distance = d;
        c.scale = s;
      }
    }
  }
  return c;
}

}  // namespace

ConjectureReport conjecture_report(int n, int r, Complex lambda, Complex kappa, const TransportOptions& opts) {
  ConjectureReport rep;
  rep.n = n;
  rep.r = r;
  rep.lambda = lambda;
  rep.kappa = kappa;
  rep.q = std::exp(2.0 * kPi * kI * lambda / kappa);
  rep.t = -std::exp(-2.0 * kPi * kI / kappa);

  std::vector<std::pair<std::string, Eigen::MatrixXcd>> burau;
  auto specialize = [&](const Letter& g) {
    const auto vals = evaluate(burau_generator_matrix(n, r, g, BurauForm::Reduced), rep.q, rep.t);
    Eigen::MatrixXcd m(vals.size(), vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t j = 0; j < vals.size(); ++j) m(i, j) = vals[i][j];
    return m;
  };
  for (int i = 1; i < n; ++i) burau.emplace_back(Letter::sigma(i).to_string(), specialize(Letter::sigma(i)));
  for (int i = 1; i <= n; ++i) burau.emplace_back(Letter::tau(i).to_string(), specialize(Letter::tau(i)));
  rep.burau_dim = static_cast<std::size_t>(burau.front().second.rows());

  for (auto orientation : {LoopOrientation::AsDefined, LoopOrientation::Reversed}) {
    const MonodromyResult mono = compute_monodromy(n, r, lambda, kappa, 1, opts, orientation);
    rep.monodromy_dim = static_cast<std::size_t>(mono.singular_basis.cols());
    if (rep.monodromy_dim != rep.burau_dim) {
      throw DomainError("dimension mismatch: monodromy " + std::to_string(rep.monodromy_dim) + " vs Burau " +
                        std::to_string(rep.burau_dim));
    }
    ConjectureOrientation co{orientation, {}, 0.0, 0.0, mono.relations.max_defect};
    std::size_t k = 0;
    for (const auto* set : {&mono.sigma, &mono.tau}) {
      for (const auto& g : *set) {
        co.generators.push_back(compare(burau[k].first, g.restricted, burau[k].second));
        co.max_distance = std::max(co.max_distance, co.generators.back().distance);
        co.max_scaled_distance = std::max(co.max_scaled_distance, co.generators.back().scaled_distance);
        ++k;
      }
    }
    rep.orientations.push_back(std::move(co));
  }
  return rep;
}

nlohmann::json to_json(const ConjectureReport& rep) {
  nlohmann::json ors = nlohmann::json::array();
  for (const auto& o : rep.orientations) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : o.generators) {
      gens.push_back({{"generator", g.generator},
                      {"monodromy_eigenvalues", complex_list(g.monodromy_eigenvalues)},
                      {"burau_eigenvalues", complex_list(g.burau_eigenvalues)},
                      {"monodromy_charpoly", complex_list(g.monodromy_charpoly)},
                      {"burau_charpoly", complex_list(g.burau_charpoly)},
                      {"distance", g.distance},
                      {"scaled_distance", g.scaled_distance},
                      {"scale", complex_json(g.scale)}});
    }
    ors.push_back({{"orientation", to_string(o.orientation)},
                   {"generators", gens},
                   {"max_distance", o.max_distance},
                   {"max_scaled_distance", o.max_scaled_distance},
                   {"monodromy_relation_defect", o.relation_defect}});
  }
  return {{"n", rep.n},
          {"r", rep.r},
          {"m", 1},
          {"lambda", complex_json(rep.lambda)},
          {"kappa", complex_json(rep.kappa)},
          {"q", complex_json(rep.q)},
          {"t", complex_json(rep.t)},
          {"monodromy_dim", rep.monodromy_dim},
          {"burau_dim", rep.burau_dim},
          {"orientations", ors}};
}

std::string describe(const ConjectureReport& rep) {
  std::ostringstream out;
  auto c = [](Complex z) {
    std::ostringstream s;
    s.precision(6);
    s << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return s.str();
  };
  out << "n=" << rep.n << " r=" << rep.r << " m=1  lambda=" << c(rep.lambda) << " kappa=" << c(rep.kappa)
      << "\nq=" << c(rep.q) << "  t=" << c(rep.t) << "\ndimension: monodromy " << rep.monodromy_dim << ", Burau "
      << rep.burau_dim << "\n";
  for (const auto& o : rep.orientations) {
    out << "\n[" << to_string(o.orientation) << "] relation defect " << o.relation_defect << "\n";
    for (const auto& g : o.generators) {
      out << "  " << g.generator << ": distance " << g.distance << ", after scaling by " << c(g.scale) << " "
          << g.scaled_distance << "\n    monodromy:";
      for (const auto& e : g.monodromy_eigenvalues) out << " " << c(e);
      out << "\n    burau:    ";
      for (const auto& e : g.burau_eigenvalues) out << " " << c(e);
      out << "\n";
    }
  }
  out << "\nAgreement is reported only; the comparison is a conjecture.\n";
  return out.str();
}

}  // namespace framedrep
