#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mubar/magnus.hpp"

using namespace mubar;

namespace {

GroupWord random_meridian_word(std::mt19937_64& rng, int k, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> pick(1, k);
  std::uniform_int_distribution<int> sgn(0, 1);
  std::vector<Letter> raw;
  const int n = len(rng);
  for (int i = 0; i < n; ++i)
    raw.push_back(Letter{Gen::meridian(pick(rng)), sgn(rng) ? 1 : -1});
  return GroupWord(std::move(raw));
}

Int coeff(const MagnusSeries& s, std::initializer_list<int> idx) {
  return s.coefficient(std::span<const int>(idx.begin(), idx.size()));
}

}  // namespace

TEST_CASE("generator expansions") {
  const GroupWord m1 = GroupWord::generator(Gen::meridian(1));
  auto s = expand_word(m1, 2, 3, false);
  CHECK(s.constant_term() == 1);
  CHECK(coeff(s, {1}) == 1);
  CHECK(coeff(s, {1, 1}) == 0);

  auto si = expand_word(inverse(m1), 2, 2, false);
  CHECK(si.constant_term() == 1);
  CHECK(coeff(si, {1}) == -1);
  CHECK(coeff(si, {1, 1}) == 1);

  CHECK(series_mul(s, expand_word(inverse(m1), 2, 3, false)) ==
        MagnusSeries::one(2, 3, false));
}

TEST_CASE("commutator expansion has K_iK_j coefficient 1") {
  const GroupWord c = commutator(GroupWord::generator(Gen::meridian(1)),
                                 GroupWord::generator(Gen::meridian(2)));
  auto s = expand_word(c, 2, 2, false);
  CHECK(s.constant_term() == 1);
  CHECK(coeff(s, {1}) == 0);
  CHECK(coeff(s, {2}) == 0);
  CHECK(coeff(s, {1, 2}) == 1);
  CHECK(coeff(s, {2, 1}) == -1);
  CHECK(s.min_degree() == 2);
}

TEST_CASE("series arithmetic") {
  auto one = MagnusSeries::one(2, 2, false);
  auto a = one;
  a.set(mono_from(std::vector<int>{1}), 1);  // 1 + K1
  auto b = series_inverse(a);
  CHECK(coeff(b, {1}) == -1);
  CHECK(coeff(b, {1, 1}) == 1);
  CHECK(series_mul(a, b) == one);

  auto c = one;
  c.set(mono_from(std::vector<int>{2}), 1);
  auto ab = series_mul(a, c);  // (1+K1)(1+K2)
  CHECK(coeff(ab, {1}) == 1);
  CHECK(coeff(ab, {2}) == 1);
  CHECK(coeff(ab, {1, 2}) == 1);
  CHECK(coeff(ab, {2, 1}) == 0);

  CHECK(one.min_degree() == kDegreeInfinite);
  CHECK_THROWS_AS(coeff(one, {1, 2, 3}), std::invalid_argument);

  auto wrong_mode = MagnusSeries::one(2, 2, true);
  CHECK_THROWS_AS(series_mul(one, wrong_mode), std::invalid_argument);
}

TEST_CASE("m1 m1 squared coefficient (non-squarefree)") {
  const GroupWord w = mul(GroupWord::generator(Gen::meridian(1)),
                          GroupWord::generator(Gen::meridian(1)));
  auto s = expand_word(w, 1, 2, false);
  CHECK(coeff(s, {1}) == 2);
  CHECK(coeff(s, {1, 1}) == 1);
}

TEST_CASE("homomorphism and inverse (randomized, exact)") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 10000; ++t) {
    const int k = 1 + static_cast<int>(rng() % 4);
    const int d = 1 + static_cast<int>(rng() % 4);
    const bool sf = rng() % 2;
    const GroupWord u = random_meridian_word(rng, k, 8);
    const GroupWord v = random_meridian_word(rng, k, 8);
    const auto eu = expand_word(u, k, d, sf);
    const auto ev = expand_word(v, k, d, sf);
    CHECK(expand_word(mul(u, v), k, d, sf) == series_mul(eu, ev));
    CHECK(series_mul(eu, expand_word(inverse(u), k, d, sf)) ==
          MagnusSeries::one(k, d, sf));
  }
}

TEST_CASE("squarefree equals non-squarefree with repeats deleted") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 400; ++t) {
    const int k = 1 + static_cast<int>(rng() % 4);
    const int d = 1 + static_cast<int>(rng() % 4);
    const GroupWord w = random_meridian_word(rng, k, 8);
    const auto full = expand_word(w, k, d, false);
    const auto sf = expand_word(w, k, d, true);
    for (const auto& [m, c] : full.terms()) {
      if (mono_squarefree(m))
        CHECK(sf.coefficient(m) == c);
    }
    for (const auto& [m, c] : sf.terms())
      CHECK(full.coefficient(m) == c);
  }
}

TEST_CASE("commutator min-degree superadditivity") {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 300; ++t) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const GroupWord u = random_meridian_word(rng, k, 6);
    const GroupWord v = random_meridian_word(rng, k, 6);
    const int d = 6;
    const auto eu = expand_word(u, k, d, false);
    const auto ev = expand_word(v, k, d, false);
    if (eu.min_degree() == kDegreeInfinite ||
        ev.min_degree() == kDegreeInfinite)
      continue;
    const int bound = eu.min_degree() + ev.min_degree();
    const auto ec = expand_word(commutator(u, v), k, d, false);
    CHECK(ec.min_degree() >= std::min(bound, kDegreeInfinite));
  }
}
