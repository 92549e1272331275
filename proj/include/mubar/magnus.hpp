#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "mubar/freeword.hpp"
#include "mubar/types.hpp"

namespace mubar {

// Monomial in K_1..K_k packed into a uint64: length in the top nibble,
// indices (1..15) in the following nibbles, left-aligned.  Numeric order
// on the packed value is length-major then lexicographic, which is the
// canonical iteration order everywhere.
using Monomial = std::uint64_t;

constexpr Monomial kEmptyMonomial = 0;
constexpr int kMaxMonomialLen = 14;

Monomial mono_from(std::span<const int> indices);
int mono_len(Monomial m);
int mono_at(Monomial m, int pos);  // 0-based
Monomial mono_concat(Monomial a, Monomial b);
bool mono_squarefree(Monomial m);
std::vector<int> mono_indices(Monomial m);

constexpr int kDegreeInfinite = std::numeric_limits<int>::max();

// Truncated noncommutative polynomial over exact integers; optionally
// squarefree (monomials with a repeated index are discarded).
class MagnusSeries {
 public:
  MagnusSeries(int num_vars, int max_degree, bool squarefree);
  static MagnusSeries one(int num_vars, int max_degree, bool squarefree);

  int num_vars() const { return num_vars_; }
  int max_degree() const { return max_degree_; }
  bool squarefree() const { return squarefree_; }

  Int coefficient(Monomial m) const;  // throws if m too long
  Int coefficient(std::span<const int> indices) const;
  Int constant_term() const { return coefficient(kEmptyMonomial); }

  // Smallest non-constant monomial length with a nonzero coefficient;
  // kDegreeInfinite when there is none below the truncation.
  int min_degree() const;

  const std::vector<std::pair<Monomial, Int>>& terms() const {
    return terms_;
  }
  void set(Monomial m, Int c);

  bool operator==(const MagnusSeries&) const = default;

 private:
  friend MagnusSeries series_mul(const MagnusSeries&, const MagnusSeries&);
  friend MagnusSeries series_add(const MagnusSeries&, const MagnusSeries&);
  friend MagnusSeries series_neg(const MagnusSeries&);

  int num_vars_;
  int max_degree_;
  bool squarefree_;
  std::vector<std::pair<Monomial, Int>> terms_;  // sorted, no zeros
};

MagnusSeries series_mul(const MagnusSeries& a, const MagnusSeries& b);
MagnusSeries series_add(const MagnusSeries& a, const MagnusSeries& b);
MagnusSeries series_neg(const MagnusSeries& a);
// Requires constant term +-1.
MagnusSeries series_inverse(const MagnusSeries& a);

// Magnus expansion of a word in meridians m_1..m_k: m_i -> 1 + K_i,
// m_i^-1 -> 1 - K_i + K_i^2 - ...  Throws on non-meridian generators or
// indices outside 1..k.
MagnusSeries expand_word(const GroupWord& w, int k, int d, bool squarefree);

// Same expansion with an explicit generator -> variable map (used for
// lower-central-series computations over arbitrary alphabets).
MagnusSeries expand_word_mapped(const GroupWord& w,
                                const std::map<Gen, int>& var_of,
                                int num_vars, int d, bool squarefree);

}  // namespace mubar
