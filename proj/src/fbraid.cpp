#include "framedrep/fbraid.hpp"

#include <numeric>
#include <sstream>

#include "framedrep/errors.hpp"

namespace framedrep {

std::string Letter::to_string() const {
  std::string s = (kind == GeneratorKind::Sigma ? "s" : "t") + std::to_string(index);
  if (exponent != 1) s += "^" + std::to_string(exponent);
  return s;
}

FramedBraidWord::FramedBraidWord(int n, std::vector<Letter> letters) : n_(n), letters_(std::move(letters)) {
  if (n_ < 1) throw DomainError("strand count must be at least 1");
  for (const auto& l : letters_) {
    const int hi = l.kind == GeneratorKind::Sigma ? n_ - 1 : n_;
    if (l.index < 1 || l.index > hi) {
      throw DomainError("generator " + l.to_string() + " out of range for n=" + std::to_string(n_));
    }
    if (l.exponent != 1 && l.exponent != -1) throw DomainError("generator exponent must be +1 or -1");
  }
}

FramedBraidWord FramedBraidWord::inverse() const {
  std::vector<Letter> inv;
  inv.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) inv.push_back(it->inverse());
  return FramedBraidWord(n_, std::move(inv));
}

FramedBraidWord FramedBraidWord::operator*(const FramedBraidWord& other) const {
  if (other.n_ != n_) throw DomainError("cannot multiply words on different strand counts");
  std::vector<Letter> joined = letters_;
  joined.insert(joined.end(), other.letters_.begin(), other.letters_.end());
  return FramedBraidWord(n_, std::move(joined));
}

std::string FramedBraidWord::to_string() const {
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += l.to_string();
  }
  return out;
}

FramedBraidWord parse_word(const std::string& text, int n) {
  std::istringstream in(text);
  std::string token;
  std::vector<Letter> letters;
  while (in >> token) {
    if (token.size() < 2 || (token[0] != 's' && token[0] != 't')) throw DomainError("bad token '" + token + "'");
    const auto caret = token.find('^');
    const std::string idx = token.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos) {
      throw DomainError("bad token '" + token + "'");
    }
    int exponent = 1;
    if (caret != std::string::npos) {
      const std::string e = token.substr(caret + 1);
      if (e == "-1") exponent = -1;
      else if (e != "1" && e != "+1") throw DomainError("bad exponent in token '" + token + "'");
    }
    letters.push_back({token[0] == 's' ? GeneratorKind::Sigma : GeneratorKind::Tau, std::stoi(idx), exponent});
  }
  return FramedBraidWord(n, std::move(letters));
}

SemidirectForm semidirect_form(const FramedBraidWord& w) {
  const int n = w.strands();
  SemidirectForm out;
  out.framing.assign(n, 0);
  for (const auto& l : w.letters()) {
    if (l.kind == GeneratorKind::Sigma) {
      out.braid.push_back(l);
      continue;
    }
    // beta tau_j beta^{-1} = tau_{s_{a_1} ... s_{a_k}(j)}.
    int j = l.index;
    for (auto it = out.braid.rbegin(); it != out.braid.rend(); ++it) {
      if (j == it->index) j = it->index + 1;
      else if (j == it->index + 1) j = it->index;
    }
    out.framing[j - 1] += l.exponent;
  }
  return out;
}

FramedBraidWord SemidirectForm::recombine(int n) const {
  std::vector<Letter> letters;
  for (int i = 0; i < static_cast<int>(framing.size()); ++i) {
    const int e = framing[i] > 0 ? 1 : -1;
    for (int k = 0; k < std::abs(framing[i]); ++k) letters.push_back(Letter::tau(i + 1, e));
  }
  letters.insert(letters.end(), braid.begin(), braid.end());
  return FramedBraidWord(n, std::move(letters));
}

Permutation underlying_permutation(int n, const std::vector<Letter>& letters) {
  Permutation perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  // pi(g1 ... gk)(x) = pi(g1)(... pi(gk)(x)); apply letters right to left.
  for (int x = 0; x < n; ++x) {
    int v = x + 1;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      if (it->kind != GeneratorKind::Sigma) continue;
      if (v == it->index) v = it->index + 1;
      else if (v == it->index + 1) v = it->index;
    }
    perm[x] = v;
  }
  return perm;
}

Permutation underlying_permutation(const FramedBraidWord& w) {
  return underlying_permutation(w.strands(), w.letters());
}

std::vector<Relation> framed_braid_relations(int n) {
  std::vector<Relation> rels;
  auto word = [n](std::initializer_list<Letter> ls) { return FramedBraidWord(n, std::vector<Letter>(ls)); };
  for (int i = 1; i + 1 <= n - 1; ++i) {
    rels.push_back({"braid(" + std::to_string(i) + ")",
                    word({Letter::sigma(i), Letter::sigma(i + 1), Letter::sigma(i)}),
                    word({Letter::sigma(i + 1), Letter::sigma(i), Letter::sigma(i + 1)})});
  }
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = i + 2; j <= n - 1; ++j) {
      rels.push_back({"far(" + std::to_string(i) + "," + std::to_string(j) + ")",
                      word({Letter::sigma(i), Letter::sigma(j)}), word({Letter::sigma(j), Letter::sigma(i)})});
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      rels.push_back({"tau(" + std::to_string(i) + "," + std::to_string(j) + ")",
                      word({Letter::tau(i), Letter::tau(j)}), word({Letter::tau(j), Letter::tau(i)})});
    }
  }
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int k = j == i ? i + 1 : (j == i + 1 ? i : j);
      rels.push_back({"sigma-tau(" + std::to_string(i) + "," + std::to_string(j) + ")",
                      word({Letter::sigma(i), Letter::tau(j)}), word({Letter::tau(k), Letter::sigma(i)})});
    }
  }
  return rels;
}

nlohmann::json to_json(const FramedBraidWord& w) {
  nlohmann::json letters = nlohmann::json::array();
  for (const auto& l : w.letters()) {
    letters.push_back({l.kind == GeneratorKind::Sigma ? "s" : "t", l.index, l.exponent});
  }
  return {{"n", w.strands()}, {"letters", letters}};
}

FramedBraidWord word_from_json(const nlohmann::json& j) {
  std::vector<Letter> letters;
  for (const auto& l : j.at("letters")) {
    const std::string kind = l.at(0).get<std::string>();
    if (kind != "s" && kind != "t") throw DomainError("bad generator kind '" + kind + "'");
    letters.push_back({kind == "s" ? GeneratorKind::Sigma : GeneratorKind::Tau, l.at(1).get<int>(), l.at(2).get<int>()});
  }
  return FramedBraidWord(j.at("n").get<int>(), std::move(letters));
}

}  // namespace framedrep
