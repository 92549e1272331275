#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <vector>

#include "mubar/singular.hpp"
#include "mubar/stringlink.hpp"

namespace mubar {

// ---------------------------------------------------------------------------
// Double dating diagrams: l circles carrying the endpoints of m ordered
// pairs of chords; both chords of a pair join the same two circles.

struct DDEndpoint {
  int pair = 0;   // index into DDDiagram::pairs
  int chord = 0;  // 0 = first chord of the pair, 1 = second
  auto operator<=>(const DDEndpoint&) const = default;
};

struct DDPairCircles {
  int a = 0, b = 0;  // the two circles joined, 0-based, a < b
  auto operator<=>(const DDPairCircles&) const = default;
};

struct DDDiagram {
  int num_circles = 0;
  std::vector<DDPairCircles> pairs;
  // circles[c] is the cyclic sequence of endpoints met along circle c.
  std::vector<std::vector<DDEndpoint>> circles;

  int degree() const { return static_cast<int>(pairs.size()); }
  void validate() const;  // throws std::invalid_argument
  auto operator<=>(const DDDiagram&) const = default;
};

// Lexicographically least rotation of every circle; idempotent, constant
// on rotation orbits.  Chord order within a pair is preserved (ordered
// pairs: swapping first/second gives a different canonical form).
DDDiagram canonicalize(const DDDiagram& d);

// Exchange the two chords of one pair (the antisymmetry move); the result
// is canonicalized.
DDDiagram swap_pair(const DDDiagram& d, int pair);

// ---------------------------------------------------------------------------
// Degree-3 census on 3 circles, one pair per circle pair.

struct CensusResult {
  long long labeled = 0;         // distinct canonical diagrams
  long long naive_quotient = 0;  // labeled / |swap group|
  // Orbits under the group generated by the three pair swaps; each orbit
  // lists its canonical members sorted, orbits sorted by representative.
  std::vector<std::vector<DDDiagram>> orbits;

  long long orbit_count() const {
    return static_cast<long long>(orbits.size());
  }
};

CensusResult census_degree3();

// True iff, after some reordering of the pairs (chord swaps), some pair's
// two chords are adjacent: consecutive on both circles at the canonical
// cut with no endpoint between them and no wrap from top to bottom.
// Invariant under pair swaps, so well defined on census orbits.
bool one_term_test(const DDDiagram& d);

// ---------------------------------------------------------------------------
// Realization as double-crossing singular links.

// Circle c becomes strand c + 1; at every marked event the lower-indexed
// strand goes under; the base starts with the compiled word
// prod_{i<j} x_ij^{lk(i,j)} realizing the linking class; samples beyond
// the first differ by balanced unmarked event noise (seeded).  Throws
// std::runtime_error when no cut of the circles linearizes the chords
// (diagrams whose components must wind more than once; see ClosedDCLink).
std::vector<DCSingularLink> realize(const DDDiagram& d,
                                    const LinkingMatrix& linking_class,
                                    int samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Closed singular links: crossings carry an independent traversal position
// on each of their two components, so components need not be monotone.
// This realizes every diagram, including the ones realize() rejects.

struct ClosedCrossing {
  int under = 0, over = 0;  // strands, 1-based
  int sign = 1;
};

struct ClosedIncidence {
  int crossing = 0;      // index into ClosedDCLink::crossings
  bool under = false;    // which of the crossing's two passages this is
  auto operator<=>(const ClosedIncidence&) const = default;
};

struct ClosedDCLink {
  int k = 0;
  std::vector<ClosedCrossing> crossings;
  // order[c] is strand c+1's traversal, cut at its basepoint; every
  // crossing appears once as an under and once as an over incidence.
  std::vector<std::vector<ClosedIncidence>> order;
  std::vector<DCPair> pairs;  // marked crossings; resolution (+,-)/(-,+)

  int degree() const { return static_cast<int>(pairs.size()); }
  void validate() const;
};

// Longitude series of the resolved closed link (signs already set),
// squarefree, truncated at degree d; computed by iterated substitution of
// the Wirtinger arc meridians, exact at this truncation.
std::vector<MagnusSeries> closed_longitudes(const ClosedDCLink& link,
                                            const std::vector<bool>& choice,
                                            int d);

Int closed_mu(const ClosedDCLink& link, const std::vector<bool>& choice,
              const MuIndex& idx);
Int closed_delta(const ClosedDCLink& link, const std::vector<bool>& choice,
                 const MuIndex& idx);

Int extended_mu_closed(const ClosedDCLink& link, const MuIndex& idx);
MuBarValue extended_mu_bar_closed(const ClosedDCLink& link, const MuIndex& idx);

// As realize(), but never fails: chords keep their cyclic order on each
// circle and may wind past the basepoint.
std::vector<ClosedDCLink> realize_closed(const DDDiagram& d,
                                         const LinkingMatrix& linking_class,
                                         int samples, std::uint64_t seed);

// Event lists embed: each event becomes a crossing whose two incidences
// sit at the event's position on both strands.
ClosedDCLink to_closed(const DCSingularLink& link);

// Extended mu-bar of the realizations (at least 3 samples); throws
// std::runtime_error("W not well-defined at this degree") when the
// samples disagree.  With a trivial modulus the raw integer is returned.
Int evaluate_W(const DDDiagram& d, const MuIndex& invariant,
               const LinkingMatrix& linking_class, int samples = 3,
               std::uint64_t seed = 1);

LinkingMatrix split_class(int k);
// lk(1,2), lk(1,3), lk(2,3) on 3 strands.
LinkingMatrix three_strand_class(long long l12, long long l13, long long l23);

// ---------------------------------------------------------------------------
// Relation spans over exact rationals.

enum class DDRelation { Antisymmetry, OneTerm, SamePairVanishing };

struct RankReport {
  int basis_size = 0;     // distinct canonical diagrams spanned
  int relation_rank = 0;  // rank of the relation span
  int quotient_dim = 0;   // basis_size - relation_rank
};

// Basis = distinct canonical forms of the input diagrams.  OneTerm and
// SamePairVanishing kill their basis vectors; Antisymmetry adds
// [D] + (-1)^{|g|+1} [gD] = 0 for every swap-product g keeping gD inside
// the basis.
RankReport relation_space_rank(const std::vector<DDDiagram>& diagrams,
                               const std::set<DDRelation>& relations);

// Per-diagram W values plus relation residual checks in one linking class.
struct DDFunctionalReport {
  std::vector<Int> values;           // aligned with the input diagrams
  bool one_term_residuals_zero = true;   // W == 0 wherever one_term holds
  bool antisymmetry_residuals_zero = true;  // W(swap) == -W, every pair
};

DDFunctionalReport functional_report(const std::vector<DDDiagram>& diagrams,
                                     const MuIndex& invariant,
                                     const LinkingMatrix& linking_class,
                                     int samples = 3, std::uint64_t seed = 1);

}  // namespace mubar
