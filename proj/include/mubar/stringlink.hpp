#pragma once

#include <vector>

#include "mubar/magnus.hpp"

namespace mubar {

struct CrossingEvent {
  int under = 0;
  int over = 0;
  int sign = 1;  // +1 or -1
  auto operator<=>(const CrossingEvent&) const = default;
};

// A string link as an ordered (bottom-to-top) list of crossing events.
class EventList {
 public:
  EventList() = default;
  explicit EventList(int num_strands) : num_strands_(num_strands) {}
  EventList(int num_strands, std::vector<CrossingEvent> events);

  int num_strands() const { return num_strands_; }
  const std::vector<CrossingEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  void push(CrossingEvent e);
  void set_sign(std::size_t pos, int sign);

  bool operator==(const EventList&) const = default;

 private:
  int num_strands_ = 0;
  std::vector<CrossingEvent> events_;
};

struct MuIndex {
  std::vector<int> prefix;  // (i_1, ..., i_n), distinct
  int target = 0;           // j, distinct from the prefix

  void validate(int num_strands) const;  // throws on repeats / range
};

struct MuBarValue {
  Int residue;  // in [0, modulus) when modulus > 0
  Int modulus;  // Delta; 0 means integer-valued, no reduction
  bool operator==(const MuBarValue&) const = default;
};

// x_ij^{+1} -> [(j under i, +), (i under j, +)]; inverse flips both signs.
EventList compile(const GroupWord& word, int k);

// Wirtinger-style traversal: per-strand meridian state M_s starts at
// expand(m_s), longitude accumulator Lambda_s at 1; event (u, o, eps)
// does Lambda_u *= M_o^eps then M_u = M_o^eps M_u M_o^-eps.
// Returns Lambda_1..Lambda_k (0-based vector).
std::vector<MagnusSeries> longitudes(const EventList& link, int d,
                                     bool squarefree);

// Coefficient of K_{i_1}..K_{i_n} in the target strand's longitude,
// squarefree, truncated at |prefix|.
Int mu(const EventList& link, const MuIndex& idx);

struct LinkingMatrix {
  int k = 0;
  std::vector<long long> entries;  // row-major k*k

  long long at(int i, int j) const { return entries[(i - 1) * k + (j - 1)]; }
  bool operator==(const LinkingMatrix&) const = default;
};

// Symmetric by construction for compiled words; throws std::runtime_error
// ("unclosable diagram") when the two under-count conventions disagree on
// a raw event list.
LinkingMatrix linking_matrix(const EventList& link);

// gcd over all proper subsequences (length >= 2) of (i_1..i_n, j) and all
// their cyclic permutations of the corresponding mu values; gcd of an
// empty or all-zero set is 0.
Int delta(const EventList& link, const MuIndex& idx);

MuBarValue mu_bar(const EventList& link, const MuIndex& idx);

EventList concat(const EventList& a, const EventList& b);

// compile(by) * L * compile(by^-1); used to exercise closure invariance.
EventList conjugate(const EventList& link, const GroupWord& by);

}  // namespace mubar
