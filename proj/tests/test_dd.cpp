#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "mubar/dd.hpp"

using namespace mubar;

namespace {

DDDiagram interleaved_deg2() {
  // Pairs (0,1) and (0,2); circle 0 meets them alternately, so the target
  // strand passes under strands 2 and 3 in an essentially linked pattern.
  DDDiagram d;
  d.num_circles = 3;
  d.pairs = {DDPairCircles{0, 1}, DDPairCircles{0, 2}};
  d.circles = {{{0, 0}, {1, 0}, {0, 1}, {1, 1}},
               {{0, 0}, {0, 1}},
               {{1, 0}, {1, 1}}};
  d.validate();
  return d;
}

std::vector<DDDiagram> census_reps(const CensusResult& c) {
  std::vector<DDDiagram> reps;
  for (const auto& orbit : c.orbits) reps.push_back(orbit.front());
  return reps;
}

bool is_rotation(const std::vector<DDEndpoint>& got,
                 const std::vector<DDEndpoint>& want) {
  if (got.size() != want.size()) return false;
  const std::size_t n = got.size();
  if (n == 0) return true;
  for (std::size_t r = 0; r < n; ++r) {
    bool eq = true;
    for (std::size_t i = 0; i < n && eq; ++i)
      eq = got[i] == want[(r + i) % n];
    if (eq) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("canonicalize: rotations, swaps, idempotence") {
  DDDiagram d = interleaved_deg2();
  // Rotating a circle's sequence changes nothing canonically.
  DDDiagram rot = d;
  std::rotate(rot.circles[0].begin(), rot.circles[0].begin() + 2,
              rot.circles[0].end());
  CHECK(canonicalize(rot) == canonicalize(d));
  // Swapping a pair's two chords is a different (ordered) diagram.
  CHECK(swap_pair(d, 0) != canonicalize(d));
  CHECK(swap_pair(swap_pair(d, 0), 0) == canonicalize(d));
  // Idempotent; empty diagram is its own canonical form.
  CHECK(canonicalize(canonicalize(rot)) == canonicalize(rot));
  DDDiagram empty;
  empty.num_circles = 3;
  empty.circles.resize(3);
  CHECK(canonicalize(empty) == empty);

  DDDiagram bad = d;
  bad.circles[1] = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  DDDiagram bad2 = d;
  bad2.pairs[0] = DDPairCircles{1, 0};
  CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}

TEST_CASE("degree-3 census: 216 labeled, 27 naive, 28 orbits") {
  const CensusResult c = census_degree3();
  CHECK(c.labeled == 216);
  CHECK(c.naive_quotient == 27);
  CHECK(c.orbit_count() == 28);
  int size4 = 0, size8 = 0;
  long long total = 0;
  for (const auto& orbit : c.orbits) {
    total += static_cast<long long>(orbit.size());
    if (orbit.size() == 4) ++size4;
    if (orbit.size() == 8) ++size8;
    for (const DDDiagram& d : orbit) {
      d.validate();
      CHECK(canonicalize(d) == d);
    }
  }
  CHECK(size4 == 2);
  CHECK(size8 == 26);
  CHECK(total == 216);
}

TEST_CASE("one-term classification: 18 of 28, orbit-invariant") {
  const CensusResult c = census_degree3();
  int trivial = 0;
  for (const auto& orbit : c.orbits) {
    const bool v = one_term_test(orbit.front());
    trivial += v;
    for (const DDDiagram& d : orbit) CHECK(one_term_test(d) == v);
  }
  CHECK(trivial == 18);
  // The two symmetric (size-4) orbits are not one-term trivial.
  for (const auto& orbit : c.orbits)
    if (orbit.size() == 4) CHECK_FALSE(one_term_test(orbit.front()));

  // Degree-1 diagram: the pair's chords are adjacent on both circles.
  DDDiagram d1;
  d1.num_circles = 3;
  d1.pairs = {DDPairCircles{0, 1}};
  d1.circles = {{{0, 0}, {0, 1}}, {{0, 0}, {0, 1}}, {}};
  CHECK(one_term_test(d1));
  // Another pair's endpoint interleaved breaks adjacency.
  CHECK_FALSE(one_term_test(interleaved_deg2()));
  DDDiagram adj = interleaved_deg2();
  adj.circles[0] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(one_term_test(adj));
}

TEST_CASE("closed engine agrees with the event-list engine") {
  std::mt19937_64 rng(20240818);
  for (int trial = 0; trial < 150; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 2);
    const int len = 1 + static_cast<int>(rng() % 10);
    EventList e(k);
    for (int i = 0; i < len; ++i) {
      int u = 1 + static_cast<int>(rng() % k);
      int o = 1 + static_cast<int>(rng() % (k - 1));
      if (o >= u) ++o;
      e.push(CrossingEvent{u, o, (rng() & 1) ? 1 : -1});
    }
    const int d = 1 + static_cast<int>(rng() % 3);
    DCSingularLink s;
    s.base = e;
    const auto lam_events = longitudes(e, d, /*squarefree=*/true);
    const auto lam_closed = closed_longitudes(to_closed(s), {}, d);
    for (int c = 0; c < k; ++c) CHECK(lam_events[c] == lam_closed[c]);
  }
}

TEST_CASE("realize induces the diagram; monotone and closed paths agree") {
  const CensusResult c = census_degree3();
  const MuIndex idx{{2, 3}, 1};
  int unrealizable = 0;
  for (const auto& orbit : c.orbits) {
    const DDDiagram d = orbit.front();
    std::vector<DCSingularLink> links;
    try {
      links = realize(d, split_class(3), 3, 21);
    } catch (const std::runtime_error&) {
      ++unrealizable;
      // The closed realization still works for every diagram.
      CHECK(realize_closed(d, split_class(3), 1, 21).size() == 1);
      continue;
    }
    REQUIRE(links.size() == 3);
    MuBarValue first{};
    for (std::size_t i = 0; i < links.size(); ++i) {
      links[i].validate();
      for (const std::vector<bool>& choice :
           {std::vector<bool>{true, true, true},
            std::vector<bool>{false, true, false}})
        CHECK(linking_matrix(resolve_dc(links[i], choice)).entries ==
              split_class(3).entries);
      // Marked events read along each strand reproduce the circle orders.
      std::vector<std::vector<DDEndpoint>> induced(3);
      const auto& events = links[i].base.events();
      for (std::size_t pos = 0; pos < events.size(); ++pos)
        for (int p = 0; p < d.degree(); ++p)
          for (int chord = 0; chord < 2; ++chord) {
            const std::size_t at =
                chord == 0 ? links[i].pairs[p].first : links[i].pairs[p].second;
            if (at != pos) continue;
            induced[events[pos].under - 1].push_back(DDEndpoint{p, chord});
            induced[events[pos].over - 1].push_back(DDEndpoint{p, chord});
          }
      const DDDiagram cd = canonicalize(d);
      for (int s = 0; s < 3; ++s)
        CHECK(is_rotation(induced[s], cd.circles[s]));
      // All samples share the value, and the closed embedding matches.
      const MuBarValue v = extended_mu_bar_dc(links[i], idx);
      CHECK(extended_mu_bar_closed(to_closed(links[i]), idx) == v);
      if (i == 0)
        first = v;
      else
        CHECK(v == first);
    }
  }
  CHECK(unrealizable == 13);
}

TEST_CASE("degree-0 diagram realizes to the trivial event list") {
  DDDiagram empty;
  empty.num_circles = 3;
  empty.circles.resize(3);
  const auto links = realize(empty, split_class(3), 1, 1);
  REQUIRE(links.size() == 1);
  CHECK(links[0].base.size() == 0);
  CHECK(links[0].pairs.empty());
}

TEST_CASE("W vanishes on the whole census in several linking classes") {
  const CensusResult c = census_degree3();
  const std::vector<MuIndex> idxs = {{{1, 2}, 3}, {{2, 3}, 1}};
  const std::vector<LinkingMatrix> classes = {split_class(3),
                                              three_strand_class(2, 2, 4)};
  for (const MuIndex& idx : idxs)
    for (const LinkingMatrix& cls : classes)
      for (const auto& orbit : c.orbits)
        CHECK(evaluate_W(orbit.front(), idx, cls, 3, 9) == 0);
}

TEST_CASE("degree-2: nonzero W, antisymmetry, same-pair vanishing") {
  const DDDiagram d2 = interleaved_deg2();
  const MuIndex idx{{2, 3}, 1};
  const Int w = evaluate_W(d2, idx, split_class(3), 5, 11);
  CHECK(w == 4);
  CHECK(evaluate_W(swap_pair(d2, 0), idx, split_class(3), 5, 11) == -w);
  CHECK(evaluate_W(swap_pair(d2, 1), idx, split_class(3), 5, 11) == -w);
  CHECK(evaluate_W(swap_pair(swap_pair(d2, 0), 1), idx, split_class(3), 5,
                   11) == w);

  const DDFunctionalReport rep = functional_report(
      {d2, swap_pair(d2, 0)}, idx, split_class(3), 3, 11);
  REQUIRE(rep.values.size() == 2);
  CHECK(rep.values[0] == 4);
  CHECK(rep.values[1] == -4);
  CHECK(rep.one_term_residuals_zero);
  CHECK(rep.antisymmetry_residuals_zero);

  // Two pairs between the same circles evaluate to zero.
  DDDiagram same;
  same.num_circles = 3;
  same.pairs = {DDPairCircles{0, 1}, DDPairCircles{0, 1}};
  same.circles = {{{0, 0}, {1, 0}, {0, 1}, {1, 1}},
                  {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
                  {}};
  same.validate();
  CHECK(evaluate_W(same, idx, split_class(3), 4, 13) == 0);
  CHECK(evaluate_W(same, MuIndex{{1, 2}, 3}, split_class(3), 4, 13) == 0);
}

TEST_CASE("degree-1 W is not well-defined (not type 1)") {
  DDDiagram d1;
  d1.num_circles = 3;
  d1.pairs = {DDPairCircles{0, 1}};
  d1.circles = {{{0, 0}, {0, 1}}, {{0, 0}, {0, 1}}, {}};
  bool caught = false;
  for (std::uint64_t seed = 1; seed <= 8 && !caught; ++seed) {
    try {
      evaluate_W(d1, MuIndex{{2, 3}, 1}, split_class(3), 5, seed);
    } catch (const std::runtime_error& e) {
      caught = true;
      CHECK(std::string(e.what()) == "W not well-defined at this degree");
    }
  }
  CHECK(caught);
}

TEST_CASE("relation ranks: one-term quotient is 10") {
  const CensusResult c = census_degree3();
  const std::vector<DDDiagram> reps = census_reps(c);
  const RankReport one = relation_space_rank(reps, {DDRelation::OneTerm});
  CHECK(one.basis_size == 28);
  CHECK(one.relation_rank == 18);
  CHECK(one.quotient_dim == 10);

  const RankReport full = relation_space_rank(
      reps, {DDRelation::OneTerm, DDRelation::Antisymmetry,
             DDRelation::SamePairVanishing});
  CHECK(full.quotient_dim <= 10);

  // A free swap orbit carries exactly one antisymmetric functional.
  for (const auto& orbit : c.orbits) {
    if (orbit.size() != 8) continue;
    const RankReport r =
        relation_space_rank(orbit, {DDRelation::Antisymmetry});
    CHECK(r.basis_size == 8);
    CHECK(r.quotient_dim == 1);
    break;
  }

  // Same-pair relation kills the duplicated-circle-pair diagram.
  DDDiagram same;
  same.num_circles = 3;
  same.pairs = {DDPairCircles{0, 1}, DDPairCircles{0, 1}};
  same.circles = {{{0, 0}, {1, 0}, {0, 1}, {1, 1}},
                  {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
                  {}};
  const RankReport sp =
      relation_space_rank({same}, {DDRelation::SamePairVanishing});
  CHECK(sp.basis_size == 1);
  CHECK(sp.quotient_dim == 0);
}
