#include "mubar/freeword.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "mubar/linalg.hpp"
#include "mubar/magnus.hpp"

namespace mubar {

Gen Gen::meridian(int i) {
  if (i < 1) throw std::invalid_argument("meridian index must be >= 1");
  Gen g;
  g.a = static_cast<std::int16_t>(i);
  return g;
}

Gen Gen::strand_pair(int i, int j) {
  if (i < 1 || i >= j)
    throw std::invalid_argument("x_ij requires 1 <= i < j");
  Gen g;
  g.a = static_cast<std::int16_t>(i);
  g.b = static_cast<std::int16_t>(j);
  return g;
}

std::string Gen::str() const {
  if (is_meridian()) return "m" + std::to_string(a);
  return "x" + std::to_string(a) + std::to_string(b);
}

GroupWord::GroupWord(std::vector<Letter> raw) {
  letters_.reserve(raw.size());
  for (const Letter& l : raw) {
    if (l.exp != 1 && l.exp != -1)
      throw std::invalid_argument("letter exponent must be +-1");
    if (!letters_.empty() && letters_.back().gen == l.gen &&
        letters_.back().exp == -l.exp)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

GroupWord GroupWord::generator(Gen g, int exp) {
  return GroupWord({Letter{g, exp}});
}

std::string GroupWord::str() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const Letter& l : letters_) {
    if (!out.empty()) out += ' ';
    out += l.gen.str();
    if (l.exp < 0) out += "^-1";
  }
  return out;
}

GroupWord reduce(const std::vector<Letter>& raw) { return GroupWord(raw); }

GroupWord mul(const GroupWord& u, const GroupWord& v) {
  std::vector<Letter> raw = u.letters();
  raw.insert(raw.end(), v.letters().begin(), v.letters().end());
  return GroupWord(std::move(raw));
}

GroupWord inverse(const GroupWord& u) {
  std::vector<Letter> raw;
  raw.reserve(u.size());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it)
    raw.push_back(Letter{it->gen, -it->exp});
  return GroupWord(std::move(raw));
}

GroupWord commutator(const GroupWord& u, const GroupWord& v) {
  return mul(mul(u, v), mul(inverse(u), inverse(v)));
}

GroupWord pow(const GroupWord& u, long long e) {
  GroupWord base = e < 0 ? inverse(u) : u;
  GroupWord acc;
  for (long long i = 0, n = e < 0 ? -e : e; i < n; ++i) acc = mul(acc, base);
  return acc;
}

std::string SimpleCommutatorSpec::str() const {
  std::string out = "simple(" + std::to_string(depth()) + "->" +
                    std::to_string(target) + ":";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    out += (i ? "," : "");
    out += std::to_string(l.lower);
    out += l.sign > 0 ? '+' : '-';
    if (i > 0) out += l.side == Side::Left ? 'L' : 'R';
  }
  out += outer_sign > 0 ? ")" : ")^-1";
  return out;
}

GroupWord expand_simple_commutator(const SimpleCommutatorSpec& spec) {
  if (spec.levels.empty())
    throw std::invalid_argument("simple commutator spec is empty");
  if (spec.outer_sign != 1 && spec.outer_sign != -1)
    throw std::invalid_argument("outer_sign must be +-1");
  GroupWord acc;
  for (std::size_t i = 0; i < spec.levels.size(); ++i) {
    const auto& l = spec.levels[i];
    if (l.sign != 1 && l.sign != -1)
      throw std::invalid_argument("level sign must be +-1");
    if (l.lower == spec.target || l.lower < 1 || spec.target < 1)
      throw std::invalid_argument("bad generator index in simple commutator");
    const Gen g = Gen::strand_pair(std::min(l.lower, spec.target),
                                   std::max(l.lower, spec.target));
    const GroupWord gw = GroupWord::generator(g, l.sign);
    if (i == 0)
      acc = gw;
    else if (l.side == Side::Left)
      acc = commutator(gw, acc);
    else
      acc = commutator(acc, gw);
  }
  return spec.outer_sign == 1 ? acc : inverse(acc);
}

namespace {

// Alphabet of a word in sorted generator order, mapped to variables 1..g.
std::map<Gen, int> alphabet_of(const GroupWord& w) {
  std::set<Gen> gens;
  for (const Letter& l : w.letters()) gens.insert(l.gen);
  std::map<Gen, int> var_of;
  int v = 1;
  for (const Gen& g : gens) var_of[g] = v++;
  return var_of;
}

MagnusSeries expand_own_alphabet(const GroupWord& w, int d) {
  auto var_of = alphabet_of(w);
  if (var_of.size() > 15)
    throw std::invalid_argument("alphabet too large for Magnus expansion");
  return expand_word_mapped(w, var_of, static_cast<int>(var_of.size()), d,
                            /*squarefree=*/false);
}

}  // namespace

int lcs_degree(const GroupWord& w, int cap) {
  if (cap < 1) throw std::invalid_argument("lcs_degree cap must be >= 1");
  if (w.empty()) return cap + 1;
  const int deg = expand_own_alphabet(w, cap).min_degree();
  return deg == kDegreeInfinite ? cap + 1 : deg;
}

bool in_lcs(const GroupWord& w, int q) {
  if (q <= 1) return true;
  return lcs_degree(w, q - 1) == q;
}

namespace {

struct HallElem {
  int weight;
  int left = -1, right = -1;  // indices into basis; -1,-1 for generators
  Gen gen;                    // valid when weight == 1 and left == -1
  GroupWord word;
  std::string name;
};

// Hall basis over `gens` up to weight `cls`, weight-then-creation order.
// [u,v] is basic iff u > v and (u is a generator or u = [a,b] with b <= v).
std::vector<HallElem> hall_basis(const std::vector<Gen>& gens, int cls) {
  std::vector<HallElem> basis;
  for (const Gen& g : gens) {
    HallElem e;
    e.weight = 1;
    e.gen = g;
    e.word = GroupWord::generator(g);
    e.name = g.str();
    basis.push_back(std::move(e));
  }
  for (int w = 2; w <= cls; ++w) {
    const int n = static_cast<int>(basis.size());
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (basis[u].weight + basis[v].weight != w) continue;
        if (u <= v) continue;
        if (basis[u].left >= 0 && basis[u].right > v) continue;
        HallElem e;
        e.weight = w;
        e.left = u;
        e.right = v;
        e.word = commutator(basis[u].word, basis[v].word);
        e.name = "[" + basis[u].name + "," + basis[v].name + "]";
        basis.push_back(std::move(e));
      }
    }
  }
  std::stable_sort(basis.begin(), basis.end(),
                   [](const HallElem& a, const HallElem& b) {
                     return a.weight < b.weight;
                   });
  return basis;
}

std::vector<Monomial> degree_monomials(int num_vars, int q) {
  std::vector<Monomial> out;
  std::vector<int> idx(q, 1);
  while (true) {
    out.push_back(mono_from(idx));
    int p = q - 1;
    while (p >= 0 && idx[p] == num_vars) idx[p--] = 1;
    if (p < 0) break;
    ++idx[p];
  }
  return out;
}

}  // namespace

std::vector<HallFactor> hall_collect(const GroupWord& w, int cls) {
  if (cls < 1) throw std::invalid_argument("hall_collect class must be >= 1");
  auto var_of = alphabet_of(w);
  std::vector<Gen> gens;
  for (const auto& [g, v] : var_of) gens.push_back(g);
  const int nv = static_cast<int>(gens.size());

  std::vector<HallFactor> out;
  if (w.empty()) return out;
  auto basis = hall_basis(gens, cls);

  GroupWord residual = w;
  for (int q = 1; q <= cls; ++q) {
    const MagnusSeries res = expand_word_mapped(residual, var_of, nv, q,
                                               /*squarefree=*/false);
    const auto monos = degree_monomials(nv, q);
    std::vector<Rat> target(monos.size());
    bool nonzero = false;
    for (std::size_t i = 0; i < monos.size(); ++i) {
      target[i] = Rat(res.coefficient(monos[i]));
      if (target[i] != 0) nonzero = true;
    }
    std::vector<int> level;  // basis indices of weight q
    for (int b = 0; b < static_cast<int>(basis.size()); ++b)
      if (basis[b].weight == q) level.push_back(b);
    if (!nonzero || level.empty()) continue;

    std::vector<std::vector<Rat>> a(monos.size(),
                                    std::vector<Rat>(level.size(), Rat(0)));
    for (std::size_t col = 0; col < level.size(); ++col) {
      const MagnusSeries bs = expand_word_mapped(basis[level[col]].word,
                                                 var_of, nv, q, false);
      for (std::size_t row = 0; row < monos.size(); ++row)
        a[row][col] = Rat(bs.coefficient(monos[row]));
    }
    auto sol = solve_rational(std::move(a), std::move(target));
    if (!sol)
      throw std::logic_error("hall_collect: degree-" + std::to_string(q) +
                             " part not in the Hall span");
    GroupWord prod;
    for (std::size_t col = 0; col < level.size(); ++col) {
      const Rat& e = (*sol)[col];
      if (e == 0) continue;
      if (boost::multiprecision::denominator(e) != 1)
        throw std::logic_error("hall_collect: non-integer Hall coordinate");
      const long long exp =
          static_cast<long long>(boost::multiprecision::numerator(e));
      const HallElem& he = basis[level[col]];
      out.push_back(HallFactor{he.word, he.name, he.weight, exp});
      prod = mul(prod, pow(he.word, exp));
    }
    residual = mul(inverse(prod), residual);
  }
  return out;
}

namespace {

// Right-nested simple commutator [x_{j1}, [x_{j2}, [... x_{jq}]]] with all
// signs positive; levels are stored innermost-first.
SimpleCommutatorSpec right_nested_spec(const std::vector<int>& seq,
                                       int target) {
  SimpleCommutatorSpec s;
  s.target = target;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it)
    s.levels.push_back(SimpleCommutatorLevel{*it, 1, Side::Left});
  return s;
}

}  // namespace

Decomposition decompose_to_simple(const GroupWord& w, int n, int max_level) {
  if (n < 1) throw std::invalid_argument("decompose level must be >= 1");
  Decomposition result;
  result.residual = w;
  if (w.empty()) {
    result.ok = true;
    result.achieved_level = max_level;
    return result;
  }

  // All generators must be x_{i,t} with one common target index t.
  std::set<int> common;
  bool first = true;
  std::set<int> lowers;
  for (const Letter& l : w.letters()) {
    if (l.gen.is_meridian())
      throw std::invalid_argument("decompose expects x_ij generators");
    std::set<int> cur{l.gen.a, l.gen.b};
    if (first) {
      common = cur;
      first = false;
    } else {
      std::set<int> inter;
      std::set_intersection(common.begin(), common.end(), cur.begin(),
                            cur.end(), std::inserter(inter, inter.begin()));
      common = inter;
    }
  }
  if (common.empty())
    throw std::invalid_argument("decompose: generators share no target index");
  const int target = *common.rbegin();
  std::map<Gen, int> var_of;  // x_{i,t} -> K_i
  std::set<int> indices;
  for (const Letter& l : w.letters()) {
    const int i = l.gen.a == target ? l.gen.b : l.gen.a;
    var_of[l.gen] = i;
    indices.insert(i);
  }
  if (!indices.empty() && (*indices.rbegin() > 15 || target > 15))
    throw std::invalid_argument("decompose: index out of Magnus range");

  GroupWord residual = w;
  for (int q = n; q <= max_level; ++q) {
    if (!in_lcs(residual, q)) {
      result.residual = residual;
      result.achieved_level = q - 1;
      result.ok = q > n;  // level-n matching succeeded iff we got past it
      return result;
    }
    const MagnusSeries res =
        expand_word_mapped(residual, var_of, 15, q, /*squarefree=*/true);
    // Group the degree-q squarefree part by support set.
    std::map<std::set<int>, std::vector<Monomial>> by_support;
    for (const auto& [m, c] : res.terms()) {
      if (mono_len(m) != q) continue;
      auto idx = mono_indices(m);
      by_support[std::set<int>(idx.begin(), idx.end())].push_back(m);
    }
    GroupWord level_prod;
    for (auto& [support, monos_present] : by_support) {
      if (support.count(target)) {
        // Monomials touching the target index are outside the simple-
        // commutator span; matching cannot close.
        result.residual = residual;
        result.achieved_level = q - 1;
        result.ok = q > n;
        return result;
      }
      // Unknowns: right-nested specs with innermost letter fixed to
      // max(support), outer letters in every order.
      std::vector<int> rest(support.begin(), support.end());
      const int innermost = rest.back();
      rest.pop_back();
      std::sort(rest.begin(), rest.end());
      std::vector<std::vector<int>> seqs;
      do {
        auto seq = rest;
        seq.push_back(innermost);
        seqs.push_back(std::move(seq));
      } while (std::next_permutation(rest.begin(), rest.end()));

      // Equations: all q! squarefree monomials over the support.
      std::vector<int> perm(support.begin(), support.end());
      std::sort(perm.begin(), perm.end());
      std::vector<Monomial> monos;
      do monos.push_back(mono_from(perm));
      while (std::next_permutation(perm.begin(), perm.end()));

      std::vector<std::vector<Rat>> a(monos.size(),
                                      std::vector<Rat>(seqs.size(), Rat(0)));
      for (std::size_t col = 0; col < seqs.size(); ++col) {
        const GroupWord cw =
            expand_simple_commutator(right_nested_spec(seqs[col], target));
        const MagnusSeries cs = expand_word_mapped(cw, var_of, 15, q, true);
        for (std::size_t row = 0; row < monos.size(); ++row)
          a[row][col] = Rat(cs.coefficient(monos[row]));
      }
      std::vector<Rat> b(monos.size());
      for (std::size_t row = 0; row < monos.size(); ++row)
        b[row] = Rat(res.coefficient(monos[row]));
      auto sol = solve_rational(std::move(a), std::move(b));
      bool integral = sol.has_value();
      if (sol)
        for (const Rat& e : *sol)
          if (boost::multiprecision::denominator(e) != 1) integral = false;
      if (!integral) {
        result.residual = residual;
        result.achieved_level = q - 1;
        result.ok = q > n;
        return result;
      }
      for (std::size_t col = 0; col < seqs.size(); ++col) {
        const Rat& e = (*sol)[col];
        if (e == 0) continue;
        long long exp =
            static_cast<long long>(boost::multiprecision::numerator(e));
        SimpleCommutatorSpec spec = right_nested_spec(seqs[col], target);
        if (exp < 0) spec.outer_sign = -1;
        const GroupWord cw = expand_simple_commutator(spec);
        for (long long r = 0; r < (exp < 0 ? -exp : exp); ++r) {
          result.specs.push_back(spec);
          level_prod = mul(level_prod, cw);
        }
      }
    }
    residual = mul(inverse(level_prod), residual);
    if (!in_lcs(residual, q + 1)) {
      // Non-squarefree degree-q terms remain; the greedy matching cannot
      // remove them with simple commutators.
      result.residual = residual;
      result.achieved_level = q - 1;
      result.ok = q > n;
      return result;
    }
    result.achieved_level = q;
  }
  result.residual = residual;
  result.ok = true;
  return result;
}

}  // namespace mubar
