#include "framedrep/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <stdexcept>

#include "CLI11.hpp"
#include "framedrep/acceptance.hpp"
#include "framedrep/burau.hpp"
#include "framedrep/combinat.hpp"
#include "framedrep/errors.hpp"
#include "framedrep/fbraid.hpp"
#include "framedrep/kz.hpp"
#include "framedrep/monodromy.hpp"

namespace framedrep::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

nlohmann::json complex_json(Complex c) { return {c.real(), c.imag()}; }

Complex complex_flag(const std::string& name, const std::string& text) {
  try {
    return parse_complex(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--" + name + ": cannot parse '" + text + "'");
  }
}

std::vector<int> rank_list(const std::string& text, int n) {
  std::vector<int> ranks;
  for (const auto& part : split(text, ',')) {
    std::size_t used = 0;
    int r = 0;
    try {
      r = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw UsageError("--r: cannot parse '" + text + "'");
    ranks.push_back(r);
  }
  if (ranks.size() == 1 && n > 1) ranks.assign(static_cast<std::size_t>(n), ranks[0]);
  if (static_cast<int>(ranks.size()) != n) throw UsageError("--r: expected 1 or " + std::to_string(n) + " ranks");
  return ranks;
}

struct Flags {
  int n = 0, r = 0, m = 0, samples = 10;
  unsigned seed = 1;
  std::string ranks = "1", word, lambda, kappa = "2", conv = "lambda", orientation = "as-defined";
  bool reduced = false;
  double tol = 1e-10;
  std::vector<int> criteria;
};

nlohmann::json burau_cmd(const Flags& f) {
  const auto w = parse_word(f.word, f.n);
  const auto rep = f.reduced ? reduced_burau_matrix(f.n, f.r, w) : full_burau_matrix(f.n, f.r, w);
  return {{"n", f.n}, {"r", f.r}, {"form", f.reduced ? "reduced" : "full"}, {"word", w.to_string()},
          {"matrix", to_json(rep)}};
}

nlohmann::json invariant_cmd(const Flags& f) {
  const auto w = parse_word(f.word, f.n);
  return {{"n", f.n}, {"r", f.r}, {"word", w.to_string()}, {"invariant", to_json(framed_alexander(f.n, f.r, w))}};
}

nlohmann::json dims_cmd(const Flags& f) {
  auto j = to_json(rank_formulas(f.n, f.m, f.r));
  j["vandermonde"] = to_json(vandermonde_check(f.n, f.m, f.r));
  return j;
}

nlohmann::json flatness_cmd(const Flags& f) {
  if (f.n < 1) throw DomainError("n must be positive");
  if (f.samples < 1) throw UsageError("--samples must be positive");
  const auto ranks = rank_list(f.ranks, f.n);
  const auto conv = f.conv == "zero" ? Gamma0Convention::Zero : Gamma0Convention::Lambda;
  const Complex kappa = complex_flag("kappa", f.kappa);
  std::mt19937 rng(f.seed);
  std::normal_distribution<double> d(0.0, 1.0);
  auto rc = [&](double s) { return Complex(s * d(rng), s * d(rng)); };

  std::vector<Complex> lambda;
  if (!f.lambda.empty()) {
    for (const auto& part : split(f.lambda, ',')) lambda.push_back(complex_flag("lambda", part));
    if (lambda.size() == 1) lambda.assign(ranks.size(), lambda[0]);
    if (lambda.size() != ranks.size()) throw UsageError("--lambda: expected 1 or n values");
  }

  std::map<std::pair<std::string, std::string>, double> worst;
  std::vector<std::pair<Direction, Direction>> order;
  double overall = 0.0;
  for (int k = 0; k < f.samples; ++k) {
    std::vector<Complex> z, lam;
    std::vector<std::vector<Complex>> movable;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      z.push_back(Complex(1.5 * static_cast<double>(i)) + rc(0.3));
      lam.push_back(lambda.empty() ? rc(1.0) : lambda[i]);
      std::vector<Complex> g;
      for (int p = 1; p <= ranks[i]; ++p) g.push_back(rc(1.0) + (p == ranks[i] ? 1.0 : 0.0));
      movable.push_back(g);
    }
    const auto pt = make_point(z, ranks, lam, movable, kappa);
    for (const auto& e : flatness_table(pt, f.m, conv)) {
      const auto key = std::make_pair(e.v.to_string(), e.w.to_string());
      auto [it, fresh] = worst.emplace(key, 0.0);
      if (fresh) order.emplace_back(e.v, e.w);
      it->second = std::max(it->second, e.residual);
      overall = std::max(overall, e.residual);
    }
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [v, w] : order)
    pairs.push_back({{"v", to_json(v)}, {"w", to_json(w)}, {"max_residual", worst[{v.to_string(), w.to_string()}]}});
  return {{"ranks", ranks},   {"m", f.m},         {"kappa", complex_json(kappa)}, {"convention", to_string(conv)},
          {"samples", f.samples}, {"seed", f.seed}, {"pairs", pairs},                {"max_residual", overall}};
}

TransportOptions transport_options(const Flags& f) {
  if (!(f.tol > 0.0)) throw UsageError("--tol must be positive");
  TransportOptions opts;
  opts.tol = f.tol;
  return opts;
}

nlohmann::json monodromy_cmd(const Flags& f) {
  const auto orientation = f.orientation == "reversed" ? LoopOrientation::Reversed : LoopOrientation::AsDefined;
  const auto res = compute_monodromy(f.n, f.r, complex_flag("lambda", f.lambda), complex_flag("kappa", f.kappa), f.m,
                                     transport_options(f), orientation);
  return to_json(res);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  static const std::regex fraction(R"(([+-]?\d+)/(\d+))");
  static const std::regex decimal(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  std::smatch mt;
  if (std::regex_match(text, mt, fraction)) {
    if (mt[2].str().find_first_not_of('0') == std::string::npos) throw std::invalid_argument("zero denominator");
    std::string num = mt[1].str();
    if (num[0] == '+') num.erase(0, 1);  // GMP rejects a leading '+'
    Rational x(num + "/" + mt[2].str());
    x.canonicalize();
    return x;
  }
  if (!std::regex_match(text, mt, decimal) || (mt[2].length() == 0 && mt[3].length() == 0))
    throw std::invalid_argument("not a number: " + text);
  const std::string digits = mt[2].str() + mt[3].str();
  long exponent = -static_cast<long>(mt[3].length());
  if (mt[4].matched) {
    if (mt[4].length() > 6) throw std::invalid_argument("exponent out of range: " + text);
    exponent += std::stol(mt[4].str());
  }
  Rational x{BigInt(digits.find_first_not_of('0') == std::string::npos ? "0" : digits.substr(digits.find_first_not_of('0')))};
  BigInt scale = 1;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0)
    x *= scale;
  else
    x /= scale;
  x.canonicalize();
  return mt[1] == "-" ? Rational(-x) : x;
}

namespace {

// Correctly rounded: decimals go through strtod (mpq_get_d truncates).
double parse_real(const std::string& text) {
  const Rational exact = parse_rational(text);
  return text.find('/') == std::string::npos ? std::strtod(text.c_str(), nullptr) : exact.get_d();
}

}  // namespace

Complex parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) throw std::invalid_argument("empty number");
  if (text.back() != 'i') return {parse_real(text), 0.0};
  text.pop_back();
  // split before the last sign that is not leading and not an exponent sign
  std::size_t cut = 0;
  for (std::size_t k = 1; k < text.size(); ++k)
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') cut = k;
  const std::string re = text.substr(0, cut), im = text.substr(cut);
  const double imag = im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : parse_real(im);
  return {re.empty() ? 0.0 : parse_real(re), imag};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Framed braid representations, confluent KZ connections and their monodromy"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output = "json";
  app.add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "pretty"}));

  Flags f;
  auto* burau = app.add_subcommand("burau", "Framed Burau matrix of a word");
  auto* invariant = app.add_subcommand("invariant", "Framed Alexander invariant of a word");
  auto* dims = app.add_subcommand("dims", "Rank and dimension formulas");
  auto* flat = app.add_subcommand("flatness", "Flatness residuals at random base points");
  auto* mono = app.add_subcommand("monodromy", "Monodromy of the framed braid generators");
  auto* conj = app.add_subcommand("conjecture", "Spectral comparison of monodromy and framed Burau");
  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");

  for (auto* sc : {burau, invariant}) {
    sc->add_option("--n", f.n, "Strands")->required();
    sc->add_option("--r", f.r, "Framing rank")->required();
    sc->add_option("--word", f.word, "Word such as \"s1 t2^-1\"");
  }
  burau->add_flag("--reduced", f.reduced, "Reduced representation");
  dims->add_option("--n", f.n)->required();
  dims->add_option("--m", f.m)->required();
  dims->add_option("--r", f.r)->required();
  flat->add_option("--n", f.n)->required();
  flat->add_option("--r", f.ranks, "Ranks, one per factor or a single shared value");
  flat->add_option("--m", f.m)->required();
  flat->add_option("--lambda", f.lambda, "Weights, comma separated (random when omitted)");
  flat->add_option("--kappa", f.kappa);
  flat->add_option("--samples", f.samples);
  flat->add_option("--seed", f.seed);
  flat->add_option("--convention", f.conv, "gamma^(0) convention")->check(CLI::IsMember({"lambda", "zero"}));
  for (auto* sc : {mono, conj}) {
    sc->add_option("--n", f.n)->required();
    sc->add_option("--r", f.r)->required();
    sc->add_option("--lambda", f.lambda)->required();
    sc->add_option("--kappa", f.kappa)->required();
    sc->add_option("--tol", f.tol, "Integrator tolerance");
  }
  mono->add_option("--m", f.m)->required();
  mono->add_option("--orientation", f.orientation)->check(CLI::IsMember({"as-defined", "reversed"}));
  self->add_option("--criteria", f.criteria, "Criterion numbers (default: all)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  const bool pretty = output == "pretty";
  auto emit = [&](const nlohmann::json& j) { out << (pretty ? j.dump(2) : j.dump()) << "\n"; };

  try {
    if (burau->parsed()) {
      emit(burau_cmd(f));
    } else if (invariant->parsed()) {
      emit(invariant_cmd(f));
    } else if (dims->parsed()) {
      emit(dims_cmd(f));
    } else if (flat->parsed()) {
      emit(flatness_cmd(f));
    } else if (mono->parsed()) {
      emit(monodromy_cmd(f));
    } else if (conj->parsed()) {
      const auto rep = conjecture_report(f.n, f.r, complex_flag("lambda", f.lambda), complex_flag("kappa", f.kappa),
                                         transport_options(f));
      if (pretty) {
        out << describe(rep) << "\n";
      } else {
        auto j = to_json(rep);
        j["summary"] = describe(rep);
        emit(j);
      }
    } else if (self->parsed()) {
      for (int id : f.criteria)
        if (id < 1 || id > acceptance::kCriteria) throw UsageError("--criteria: no criterion " + std::to_string(id));
      const auto results = acceptance::run(f.criteria);
      bool ok = true;
      nlohmann::json list = nlohmann::json::array();
      for (const auto& r : results) {
        ok = ok && r.passed;
        list.push_back(acceptance::to_json(r));
        if (pretty) out << acceptance::format_line(r) << "\n";
      }
      if (!pretty) emit({{"passed", ok}, {"criteria", list}});
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace framedrep::cli
