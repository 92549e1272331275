#pragma once

// Fast evaluator for squarefree longitude coefficients at fixed (k, d):
// monomials are enumerated once into a dense table, products use a
// precomputed split table, and coefficients are machine integers with
// overflow checks.  Results are checked against the exact big-integer path
// in the tests; use stringlink::mu when coefficients may exceed int64.

#include <span>
#include <unordered_map>
#include <vector>

#include "mubar/stringlink.hpp"

namespace mubar {

class FastMu {
 public:
  FastMu(int num_strands, int max_degree);

  // Dense coefficient vectors for the per-strand longitude, meridian and
  // inverse meridian series, in one flat buffer.
  struct State {
    std::vector<long long> data;
  };

  State initial() const;
  void apply(State& s, const CrossingEvent& e) const;
  void apply(State& s, const EventList& events) const;

  // Coefficient of K_{prefix} in the longitude of `strand` (1-based).
  long long coefficient(const State& s, int strand,
                        std::span<const int> prefix) const;

  long long mu(const EventList& events, const MuIndex& idx) const;

  int num_strands() const { return k_; }
  int max_degree() const { return d_; }
  int num_monomials() const { return static_cast<int>(monomials_.size()); }

 private:
  struct Split {
    int result, left, right;
  };

  int mono_id(std::span<const int> seq) const;
  // c += a * b, where a, b, c are dense series in s.data.
  void mul_into(const State& s, int a, int b, std::vector<long long>& out)
      const;

  long long* series(State& s, int idx) const;
  const long long* series(const State& s, int idx) const;

  int lam_index(int strand) const { return 3 * (strand - 1); }
  int mer_index(int strand) const { return 3 * (strand - 1) + 1; }
  int inv_index(int strand) const { return 3 * (strand - 1) + 2; }

  int k_, d_;
  std::vector<std::vector<int>> monomials_;
  std::unordered_map<std::uint64_t, int> ids_;
  std::vector<Split> splits_;
};

}  // namespace mubar
