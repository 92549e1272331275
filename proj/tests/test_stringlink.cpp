#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mubar/stringlink.hpp"
#include "oracle.hpp"

using namespace mubar;

namespace {

GroupWord random_xword(std::mt19937_64& rng, int k, int max_len) {
  std::vector<Gen> gens;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) gens.push_back(Gen::strand_pair(i, j));
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::vector<Letter> raw;
  const int n = len(rng);
  for (int i = 0; i < n; ++i)
    raw.push_back(Letter{gens[pick(rng)], rng() % 2 ? 1 : -1});
  return GroupWord(std::move(raw));
}

const GroupWord X13 = GroupWord::generator(Gen::strand_pair(1, 3));
const GroupWord X23 = GroupWord::generator(Gen::strand_pair(2, 3));
const GroupWord Borr = commutator(X13, X23);

MuIndex idx123{{1, 2}, 3};

}  // namespace

TEST_CASE("compile") {
  const EventList e = compile(X13, 3);
  REQUIRE(e.size() == 2);
  CHECK(e.events()[0] == CrossingEvent{3, 1, 1});
  CHECK(e.events()[1] == CrossingEvent{1, 3, 1});
  CHECK(compile(Borr, 3).size() == 8);
  CHECK(compile(GroupWord{}, 3).size() == 0);
  CHECK_THROWS_AS(compile(X13, 2), std::invalid_argument);
}

TEST_CASE("longitudes basics") {
  auto lam = longitudes(compile(X13, 3), 2, true);
  CHECK(lam[2].coefficient(std::vector<int>{1}) == 1);
  auto lam0 = longitudes(EventList(3), 2, true);
  for (const auto& l : lam0) CHECK(l == MagnusSeries::one(3, 2, true));
  auto lamb = longitudes(compile(Borr, 3), 2, true);
  CHECK(lamb[2].coefficient(std::vector<int>{1, 2}) == 1);
}

TEST_CASE("mu on generators and commutators") {
  CHECK(mu(compile(X13, 3), MuIndex{{1}, 3}) == 1);
  CHECK(mu(compile(Borr, 3), idx123) == 1);
  SimpleCommutatorSpec d3;
  d3.target = 4;
  d3.levels = {{3, 1, Side::Left}, {2, 1, Side::Left}, {1, 1, Side::Left}};
  CHECK(mu(compile(expand_simple_commutator(d3), 4),
           MuIndex{{1, 2, 3}, 4}) == 1);
  CHECK_THROWS_AS(mu(compile(Borr, 3), MuIndex{{1, 1}, 3}),
                  std::invalid_argument);
}

TEST_CASE("linking matrix") {
  auto m = linking_matrix(compile(mul(X13, X13), 3));
  CHECK(m.at(1, 3) == 2);
  CHECK(m.at(3, 1) == 2);
  CHECK(m.at(1, 2) == 0);
  CHECK(m.at(1, 1) == 0);
  auto mb = linking_matrix(compile(Borr, 3));
  for (long long e : mb.entries) CHECK(e == 0);
  CHECK(linking_matrix(EventList(3)).entries ==
        std::vector<long long>(9, 0));
  // asymmetric raw list is rejected
  EventList raw(2);
  raw.push(CrossingEvent{1, 2, 1});
  CHECK_THROWS_AS(linking_matrix(raw), std::runtime_error);
}

TEST_CASE("delta") {
  CHECK(delta(compile(Borr, 3), idx123) == 0);
  // lk(1,2)=2, lk(1,3)=4, lk(2,3)=6 -> gcd 2
  const GroupWord w =
      mul(mul(pow(GroupWord::generator(Gen::strand_pair(1, 2)), 2),
              pow(GroupWord::generator(Gen::strand_pair(1, 3)), 4)),
          pow(GroupWord::generator(Gen::strand_pair(2, 3)), 6));
  CHECK(delta(compile(w, 3), idx123) == 2);
  // x12 x34 at k=4, idx (1,2,3)->4: lk(1,2)=1 appears among sub-mu values
  const GroupWord w2 = mul(GroupWord::generator(Gen::strand_pair(1, 2)),
                           GroupWord::generator(Gen::strand_pair(3, 4)));
  CHECK(delta(compile(w2, 4), MuIndex{{1, 2, 3}, 4}) == 1);
}

TEST_CASE("mu_bar") {
  auto v = mu_bar(compile(Borr, 3), idx123);
  CHECK(v.residue == 1);
  CHECK(v.modulus == 0);
  auto z = mu_bar(EventList(3), idx123);
  CHECK(z.residue == 0);
  CHECK(z.modulus == 0);
  auto w = mu_bar(
      compile(mul(GroupWord::generator(Gen::strand_pair(1, 2)), Borr), 3),
      idx123);
  CHECK(w.modulus == 1);
  CHECK(w.residue == 0);
}

TEST_CASE("concat") {
  const EventList a = compile(X13, 3), b = compile(X23, 3);
  CHECK(mu(concat(a, b), idx123) == 1);  // 0 + 0 + lk(1,3)*lk(2,3)
  CHECK(concat(a, EventList(3)) == a);
  const EventList cancel = concat(a, compile(inverse(X13), 3));
  CHECK(mu(cancel, MuIndex{{1}, 3}) == 0);
  CHECK(mu(cancel, idx123) == 0);
  CHECK_THROWS_AS(concat(a, EventList(4)), std::invalid_argument);
}

TEST_CASE("conjugate") {
  const EventList L = compile(Borr, 3);
  CHECK(conjugate(L, GroupWord{}) == L);
  const GroupWord by = GroupWord::generator(Gen::strand_pair(1, 2));
  auto v0 = mu_bar(L, idx123);
  auto v1 = mu_bar(conjugate(L, by), idx123);
  CHECK(v0 == v1);
  // conjugate of empty is homotopically trivial
  auto lam = longitudes(conjugate(EventList(3), Borr), 2, true);
  for (int t = 1; t <= 3; ++t) {
    for (int i = 1; i <= 3; ++i) {
      if (i == t) continue;
      CHECK(lam[t - 1].coefficient(std::vector<int>{i}) == 0);
    }
  }
  CHECK(mu(conjugate(EventList(3), Borr), idx123) == 0);
}

TEST_CASE("mu agrees with the convolution oracle (randomized)") {
  std::mt19937_64 rng(211);
  for (int t = 0; t < 300; ++t) {
    const int k = 3 + static_cast<int>(rng() % 2);
    const GroupWord w = random_xword(rng, k, 6);
    std::vector<int> strands(k);
    std::iota(strands.begin(), strands.end(), 1);
    std::shuffle(strands.begin(), strands.end(), rng);
    const int n = 1 + static_cast<int>(rng() % (k - 1));
    MuIndex idx{std::vector<int>(strands.begin(), strands.begin() + n),
                strands[n]};
    CHECK(mu(compile(w, k), idx) == oracle::mu_of_word(w, k, idx));
  }
}

TEST_CASE("degree-3 additivity (randomized)") {
  std::mt19937_64 rng(223);
  // Exact composition law for mu(1,2;3), including the substitution
  // correction proportional to lk(1,2) of the first factor.  When either
  // factor is algebraically unlinked this reduces to the plain additivity
  // statement with the single cross term.
  for (int t = 0; t < 1000; ++t) {
    const GroupWord u = random_xword(rng, 3, 6);
    const GroupWord v = random_xword(rng, 3, 6);
    const EventList a = compile(u, 3), b = compile(v, 3);
    const Int b13 = mu(b, MuIndex{{1}, 3});
    const Int b23 = mu(b, MuIndex{{2}, 3});
    CHECK(mu(concat(a, b), idx123) ==
          mu(a, idx123) + mu(b, idx123) +
              mu(a, MuIndex{{1}, 3}) * b23 +
              mu(a, MuIndex{{1}, 2}) * (b23 - b13));
  }
  // Algebraically unlinked second factor: pure additivity.
  for (int t = 0; t < 200; ++t) {
    const GroupWord u = random_xword(rng, 3, 6);
    const GroupWord v = commutator(random_xword(rng, 3, 4),
                                   random_xword(rng, 3, 4));
    const EventList a = compile(u, 3), b = compile(v, 3);
    CHECK(mu(concat(a, b), idx123) == mu(a, idx123) + mu(b, idx123));
  }
}

TEST_CASE("higher additivity for deep second factor (randomized)") {
  std::mt19937_64 rng(227);
  // If the second factor has vanishing mu-invariants of every length <= n
  // (a product of simple n-commutators), length-(n+1) invariants add and
  // every cross term of the convolution formula drops out.
  for (int t = 0; t < 60; ++t) {
    const int n = 3 + static_cast<int>(rng() % 2);
    const int k = n + 1;
    const GroupWord u = random_xword(rng, k, 5);
    GroupWord v;
    const int m = 1 + static_cast<int>(rng() % 2);
    for (int c = 0; c < m; ++c) {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 1);
      std::shuffle(order.begin(), order.end(), rng);
      SimpleCommutatorSpec s;
      s.target = k;
      for (int i = 0; i < n; ++i)
        s.levels.push_back(SimpleCommutatorLevel{
            order[i], rng() % 2 ? 1 : -1,
            rng() % 2 ? Side::Left : Side::Right});
      v = mul(v, expand_simple_commutator(s));
    }
    const EventList a = compile(u, k), b = compile(v, k);
    std::vector<int> prefix(n);
    std::iota(prefix.begin(), prefix.end(), 1);
    const MuIndex idx{prefix, k};
    CHECK(mu(concat(a, b), idx) == mu(a, idx) + mu(b, idx));
  }
}

TEST_CASE("closure invariance under conjugation (randomized)") {
  std::mt19937_64 rng(229);
  for (int t = 0; t < 1000; ++t) {
    const int k = 3 + static_cast<int>(rng() % 2);
    const GroupWord w = random_xword(rng, k, 5);
    const GroupWord by = random_xword(rng, k, 4);
    std::vector<int> strands(k);
    std::iota(strands.begin(), strands.end(), 1);
    std::shuffle(strands.begin(), strands.end(), rng);
    const int n = 1 + static_cast<int>(rng() % (k - 1));
    MuIndex idx{std::vector<int>(strands.begin(), strands.begin() + n),
                strands[n]};
    const EventList L = compile(w, k);
    const auto v0 = mu_bar(L, idx);
    const auto v1 = mu_bar(conjugate(L, by), idx);
    CHECK(v0.modulus == v1.modulus);
    CHECK(v0.residue == v1.residue);
  }
}

TEST_CASE("simple-commutator values") {
  // closed-form three-case recursion, all-plus left-wrapped specs
  for (int n = 2; n <= 4; ++n) {
    // right-nested [x_{1}, [x_{2}, [... x_{n}]]] has mu(1..n, n+1) = 1
    SimpleCommutatorSpec s;
    s.target = n + 1;
    for (int i = n; i >= 1; --i)
      s.levels.push_back(SimpleCommutatorLevel{i, 1, Side::Left});
    std::vector<int> prefix(n);
    std::iota(prefix.begin(), prefix.end(), 1);
    CHECK(mu(compile(expand_simple_commutator(s), n + 1),
             MuIndex{prefix, n + 1}) == 1);
  }
}

TEST_CASE("Brunnian vanishing and homotopy sanity (randomized)") {
  std::mt19937_64 rng(233);
  // every mu of length <= n vanishes on a simple n-commutator
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3);
    SimpleCommutatorSpec s;
    s.target = n + 1;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i < n; ++i)
      s.levels.push_back(SimpleCommutatorLevel{
          order[i], rng() % 2 ? 1 : -1,
          rng() % 2 ? Side::Left : Side::Right});
    const EventList L = compile(expand_simple_commutator(s), n + 1);
    for (int len = 2; len <= n; ++len) {
      std::vector<int> strands(n + 1);
      std::iota(strands.begin(), strands.end(), 1);
      std::shuffle(strands.begin(), strands.end(), rng);
      MuIndex idx{std::vector<int>(strands.begin(), strands.begin() + len - 1),
                  strands[len - 1]};
      CHECK(mu(L, idx) == 0);
    }
  }
  for (int t = 0; t < 100; ++t) {
    const GroupWord w = random_xword(rng, 3, 5);
    const EventList L = concat(compile(w, 3), compile(inverse(w), 3));
    CHECK(mu(L, MuIndex{{1}, 3}) == 0);
    CHECK(mu(L, MuIndex{{1}, 2}) == 0);
    CHECK(mu(L, idx123) == 0);
  }
}
