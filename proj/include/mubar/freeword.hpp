#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mubar/types.hpp"

namespace mubar {

// Generator of a free group: either a meridian m_i or a string-link
// generator x_{ij} with i < j (enforced at construction).
struct Gen {
  std::int16_t a = 0;
  std::int16_t b = 0;  // 0 for meridians

  static Gen meridian(int i);
  static Gen strand_pair(int i, int j);

  bool is_meridian() const { return b == 0; }
  auto operator<=>(const Gen&) const = default;

  std::string str() const;
};

struct Letter {
  Gen gen;
  int exp = 1;  // +1 or -1
  auto operator<=>(const Letter&) const = default;
};

// Freely reduced word; the empty word is the identity.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> raw);  // reduces

  static GroupWord generator(Gen g, int exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  bool operator==(const GroupWord&) const = default;

  std::string str() const;

 private:
  std::vector<Letter> letters_;
};

GroupWord reduce(const std::vector<Letter>& raw);
GroupWord mul(const GroupWord& u, const GroupWord& v);
GroupWord inverse(const GroupWord& u);
GroupWord commutator(const GroupWord& u, const GroupWord& v);  // uvu^-1v^-1
GroupWord pow(const GroupWord& u, long long e);

// Simple n-commutator: depth 1 is a generator x_{i,target}^{+-1}; each
// further level wraps the previous word with a generator on the left or
// right.  outer_sign inverts the fully expanded word (the clasp case
// [x,y]^{+-1}).
enum class Side { Left, Right };

struct SimpleCommutatorLevel {
  int lower = 0;  // the i of x_{i,target}
  int sign = 1;
  Side side = Side::Left;  // ignored for the base level
};

struct SimpleCommutatorSpec {
  int target = 0;
  std::vector<SimpleCommutatorLevel> levels;  // levels[0] is the base
  int outer_sign = 1;

  int depth() const { return static_cast<int>(levels.size()); }
  std::string str() const;
};

// Throws std::invalid_argument on malformed nesting (empty spec, index
// clashing with target, bad signs).
GroupWord expand_simple_commutator(const SimpleCommutatorSpec& spec);

// Lower-central-series degree via the Magnus criterion: the minimum degree
// of Magnus(w) - 1 over w's own alphabet.  Returns min(degree, cap + 1);
// cap + 1 means w lies in F_{cap+1} (possibly deeper).  Identity gives
// cap + 1 for every cap.
int lcs_degree(const GroupWord& w, int cap);

// w in F_q?
bool in_lcs(const GroupWord& w, int q);

// Hall-style collection: w == product of the returned factors modulo
// F_{cls+1}, factors ordered by weight then by basis order.
struct HallFactor {
  GroupWord word;  // the basic commutator, multiplied out
  std::string name;
  int weight = 0;
  long long exponent = 0;
};

std::vector<HallFactor> hall_collect(const GroupWord& w, int cls);

// Greedy decomposition of w (a word in generators x_{i,target} with a
// common target) into simple commutators, level by level from depth n up
// to max_level.  ok is false when the degree-n squarefree leading-term
// matching does not close (the residual keeps degree <= achieved_level).
struct Decomposition {
  bool ok = false;
  std::vector<SimpleCommutatorSpec> specs;
  GroupWord residual;
  int achieved_level = 0;  // residual lies in F_{achieved_level+1}
};

Decomposition decompose_to_simple(const GroupWord& w, int n, int max_level);

}  // namespace mubar
