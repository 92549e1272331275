#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mubar/stringlink.hpp"

namespace mubar {

// ---------------------------------------------------------------------------
// Clasp theory: singular links are base words with labeled insertion slots.

struct ClaspSlot {
  int pos = 0;  // 0..len(base); slots sharing a position insert in order
  SimpleCommutatorSpec label;
};

struct ClaspSingularLink {
  GroupWord base;
  int num_strands = 0;
  std::vector<ClaspSlot> slots;

  int degree() const { return static_cast<int>(slots.size()); }
  void validate() const;
};

// Base word with the labels of the selected slots inserted.
GroupWord insert_labels(const ClaspSingularLink& s,
                        const std::vector<bool>& subset);
EventList resolve_clasp(const ClaspSingularLink& s,
                        const std::vector<bool>& subset);

// Alternating sum over all 2^m resolutions, as an integer and mod Delta.
Int extended_mu_clasp(const ClaspSingularLink& s, const MuIndex& idx);
MuBarValue extended_mu_bar_clasp(const ClaspSingularLink& s,
                                 const MuIndex& idx);

// ---------------------------------------------------------------------------
// Double-crossing theory: singular links are event lists with ordered pairs
// of unresolved crossings, both crossings of a pair between the same two
// strands.

struct DCPair {
  std::size_t first = 0, second = 0;  // event positions; resolution (+,-)
};

struct DCSingularLink {
  EventList base;  // signs at paired positions are overwritten on resolution
  std::vector<DCPair> pairs;

  int degree() const { return static_cast<int>(pairs.size()); }
  void validate() const;
};

// choice[i] = true assigns (+,-) to pair i, false assigns (-,+).
EventList resolve_dc(const DCSingularLink& s, const std::vector<bool>& choice);

// Alternating sum with sign (-1)^{number of (-,+) choices}; throws
// std::runtime_error if the resolutions do not share one linking matrix.
Int extended_mu_dc(const DCSingularLink& s, const MuIndex& idx);
MuBarValue extended_mu_bar_dc(const DCSingularLink& s, const MuIndex& idx);

// ---------------------------------------------------------------------------
// Exhaustive type checking within explicit budgets.

// All simple commutator specs with the given lower indices (each
// permutation) and target.  vary_sides enumerates left/right wrapping at
// each level; vary_signs enumerates all letter and outer signs.
std::vector<SimpleCommutatorSpec> enumerate_simple_specs(
    const std::vector<int>& lower, int target, bool vary_signs,
    bool vary_sides);

struct ClaspCheckBudget {
  int num_strands = 3;
  int max_base_letters = 4;  // bases: all words over signed x_ij up to this
  std::vector<SimpleCommutatorSpec> labels;
};

struct ClaspCheckReport {
  bool all_zero = true;  // every extended value == 0 mod Delta
  bool all_unit = true;  // every extended value == +-1 mod Delta
  long long cases = 0;
  std::vector<ClaspSingularLink> counterexamples;  // to all_zero, capped
};

ClaspCheckReport type_check_clasp(const MuIndex& idx, int degree,
                                  const ClaspCheckBudget& budget);

struct DCCheckBudget {
  int num_strands = 3;
  int max_events = 7;     // total events, paired ones included
  std::uint64_t samples = 0;  // 0 = exhaustive; else random sample count
  std::uint64_t seed = 1;     // used when sampling
};

struct DCCheckReport {
  bool all_zero = true;
  long long cases = 0;
  std::vector<DCSingularLink> counterexamples;
};

DCCheckReport type_check_dc(const MuIndex& idx, int degree,
                            const DCCheckBudget& budget);

// First singular link in the budget's enumeration order with nonzero
// extended value mod Delta.
std::optional<DCSingularLink> find_type_witness_dc(const MuIndex& idx,
                                                   int degree,
                                                   const DCCheckBudget& budget);

}  // namespace mubar
