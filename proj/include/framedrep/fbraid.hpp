#pragma once
// Framed braid words, their Z^n x| B_n normal data, and the projection to S_n.

#include <string>
#include <vector>

#include "json.hpp"

namespace framedrep {

enum class GeneratorKind { Sigma, Tau };

struct Letter {
  GeneratorKind kind = GeneratorKind::Sigma;
  int index = 1;     // 1-based
  int exponent = 1;  // +1 or -1

  static Letter sigma(int i, int e = 1) { return {GeneratorKind::Sigma, i, e}; }
  static Letter tau(int i, int e = 1) { return {GeneratorKind::Tau, i, e}; }
  Letter inverse() const { return {kind, index, -exponent}; }
  std::string to_string() const;
  bool operator==(const Letter&) const = default;
};

class FramedBraidWord {
 public:
  FramedBraidWord() = default;
  // Throws DomainError if an index is out of range for n strands.
  FramedBraidWord(int n, std::vector<Letter> letters);

  int strands() const { return n_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  FramedBraidWord inverse() const;
  FramedBraidWord operator*(const FramedBraidWord& other) const;
  std::string to_string() const;
  bool operator==(const FramedBraidWord&) const = default;

 private:
  int n_ = 1;
  std::vector<Letter> letters_;
};

// Tokens "s<i>", "t<i>", each optionally followed by "^-1" (or "^1"),
// separated by whitespace.
FramedBraidWord parse_word(const std::string& text, int n);

// tau_1^{l_1} ... tau_n^{l_n} * braid, with every tau pushed to the left.
struct SemidirectForm {
  std::vector<int> framing;
  std::vector<Letter> braid;  // sigma letters only, original order

  FramedBraidWord recombine(int n) const;
};

SemidirectForm semidirect_form(const FramedBraidWord& w);

// perm[k-1] = image of strand k, using pi(gh) = pi(g) o pi(h).
using Permutation = std::vector<int>;
Permutation underlying_permutation(const FramedBraidWord& w);
Permutation underlying_permutation(int n, const std::vector<Letter>& letters);

// One defining relation lhs = rhs of FB_n.
struct Relation {
  std::string name;
  FramedBraidWord lhs;
  FramedBraidWord rhs;
};

std::vector<Relation> framed_braid_relations(int n);

nlohmann::json to_json(const FramedBraidWord& w);
FramedBraidWord word_from_json(const nlohmann::json& j);

}  // namespace framedrep
