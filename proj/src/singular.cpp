#include "mubar/singular.hpp"

#include <algorithm>
#include <numeric>
#include <functional>
#include <random>
#include <stdexcept>

#include "mubar/fastmu.hpp"

namespace mubar {

namespace {

constexpr std::size_t kMaxCounterexamples = 16;

Int mod_residue(Int v, const Int& d) {
  if (d == 0) return v;
  Int r = v % d;
  if (r < 0) r += d;
  return r;
}

bool is_unit_residue(const Int& v, const Int& d) {
  if (d == 0) return v == 1 || v == -1;
  if (d == 1) return true;  // everything is 0 == +-1 mod 1
  const Int r = mod_residue(v, d);
  return r == 1 || r == d - 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Clasp singular links

void ClaspSingularLink::validate() const {
  if (num_strands < 2) throw std::invalid_argument("bad strand count");
  const int len = static_cast<int>(base.size());
  for (const Letter& l : base.letters())
    if (l.gen.is_meridian() || l.gen.b > num_strands)
      throw std::invalid_argument("base letter out of range");
  for (const ClaspSlot& s : slots) {
    if (s.pos < 0 || s.pos > len)
      throw std::invalid_argument("slot position out of range");
    const GroupWord w = expand_simple_commutator(s.label);  // validates
    for (const Letter& l : w.letters())
      if (l.gen.b > num_strands)
        throw std::invalid_argument("label strand out of range");
  }
}

GroupWord insert_labels(const ClaspSingularLink& s,
                        const std::vector<bool>& subset) {
  if (subset.size() != s.slots.size())
    throw std::invalid_argument("subset size mismatch");
  const auto& letters = s.base.letters();
  std::vector<Letter> out;
  for (int pos = 0; pos <= static_cast<int>(letters.size()); ++pos) {
    for (std::size_t i = 0; i < s.slots.size(); ++i) {
      if (s.slots[i].pos != pos || !subset[i]) continue;
      const GroupWord label = expand_simple_commutator(s.slots[i].label);
      out.insert(out.end(), label.letters().begin(), label.letters().end());
    }
    if (pos < static_cast<int>(letters.size())) out.push_back(letters[pos]);
  }
  return GroupWord(std::move(out));
}

EventList resolve_clasp(const ClaspSingularLink& s,
                        const std::vector<bool>& subset) {
  return compile(insert_labels(s, subset), s.num_strands);
}

Int extended_mu_clasp(const ClaspSingularLink& s, const MuIndex& idx) {
  s.validate();
  const int m = s.degree();
  Int acc = 0;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<bool> subset(m);
    int bits = 0;
    for (int i = 0; i < m; ++i) {
      subset[i] = (mask >> i) & 1u;
      bits += subset[i];
    }
    const Int term = mu(resolve_clasp(s, subset), idx);
    acc += ((m - bits) % 2) ? -term : term;
  }
  return acc;
}

MuBarValue extended_mu_bar_clasp(const ClaspSingularLink& s,
                                 const MuIndex& idx) {
  const Int d =
      delta(resolve_clasp(s, std::vector<bool>(s.slots.size(), false)), idx);
  return MuBarValue{mod_residue(extended_mu_clasp(s, idx), d), d};
}

// ---------------------------------------------------------------------------
// Double-crossing singular links

void DCSingularLink::validate() const {
  std::vector<std::size_t> seen;
  for (const DCPair& p : pairs) {
    if (p.first >= base.size() || p.second >= base.size())
      throw std::invalid_argument("pair position out of range");
    if (p.first == p.second)
      throw std::invalid_argument("pair positions must differ");
    seen.push_back(p.first);
    seen.push_back(p.second);
    const CrossingEvent& a = base.events()[p.first];
    const CrossingEvent& b = base.events()[p.second];
    if (std::minmax(a.under, a.over) != std::minmax(b.under, b.over))
      throw std::invalid_argument("pair must join the same two strands");
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("pair positions must be distinct");
}

EventList resolve_dc(const DCSingularLink& s,
                     const std::vector<bool>& choice) {
  if (choice.size() != s.pairs.size())
    throw std::invalid_argument("choice size mismatch");
  EventList out = s.base;
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const int sign = choice[i] ? 1 : -1;
    out.set_sign(s.pairs[i].first, sign);
    out.set_sign(s.pairs[i].second, -sign);
  }
  return out;
}

Int extended_mu_dc(const DCSingularLink& s, const MuIndex& idx) {
  s.validate();
  const int m = s.degree();
  Int acc = 0;
  bool have_matrix = false;
  LinkingMatrix first{0, {}};
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<bool> choice(m);
    int minus = 0;
    for (int i = 0; i < m; ++i) {
      choice[i] = (mask >> i) & 1u;
      minus += !choice[i];
    }
    const EventList r = resolve_dc(s, choice);
    const LinkingMatrix lk = linking_matrix(r);
    if (!have_matrix) {
      first = lk;
      have_matrix = true;
    } else if (lk.entries != first.entries) {
      throw std::runtime_error("incoherent linking class");
    }
    const Int term = mu(r, idx);
    acc += (minus % 2) ? -term : term;
  }
  return acc;
}

MuBarValue extended_mu_bar_dc(const DCSingularLink& s, const MuIndex& idx) {
  const Int v = extended_mu_dc(s, idx);  // also checks coherence
  const Int d =
      delta(resolve_dc(s, std::vector<bool>(s.pairs.size(), true)), idx);
  return MuBarValue{mod_residue(v, d), d};
}

// ---------------------------------------------------------------------------
// Label enumeration

std::vector<SimpleCommutatorSpec> enumerate_simple_specs(
    const std::vector<int>& lower, int target, bool vary_signs,
    bool vary_sides) {
  if (lower.empty()) throw std::invalid_argument("empty lower index set");
  std::vector<int> perm = lower;
  std::sort(perm.begin(), perm.end());
  const int n = static_cast<int>(perm.size());
  std::vector<SimpleCommutatorSpec> out;
  do {
    const int side_patterns = vary_sides ? (1 << (n - 1)) : 1;
    for (int sides = 0; sides < side_patterns; ++sides) {
      const int sign_patterns = vary_signs ? (1 << (n + 1)) : 1;
      for (int signs = 0; signs < sign_patterns; ++signs) {
        SimpleCommutatorSpec spec;
        spec.target = target;
        for (int i = 0; i < n; ++i) {
          SimpleCommutatorLevel level;
          level.lower = perm[i];
          level.sign = (signs >> i) & 1 ? -1 : 1;
          level.side =
              (i > 0 && ((sides >> (i - 1)) & 1)) ? Side::Right : Side::Left;
          spec.levels.push_back(level);
        }
        spec.outer_sign = (signs >> n) & 1 ? -1 : 1;
        out.push_back(std::move(spec));
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Clasp type checking

namespace {

std::vector<Letter> signed_letters(int k) {
  std::vector<Letter> out;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      for (int s : {1, -1}) out.push_back(Letter{Gen::strand_pair(i, j), s});
  return out;
}

struct ClaspEngine {
  const MuIndex& idx;
  int degree;
  const ClaspCheckBudget& budget;
  ClaspCheckReport report;

  FastMu fm;
  std::vector<EventList> letter_events;   // per signed letter
  std::vector<EventList> label_events;    // per label
  std::vector<Letter> letters;
  std::vector<int> seq;  // current base as letter indices

  ClaspEngine(const MuIndex& i, int deg, const ClaspCheckBudget& b)
      : idx(i),
        degree(deg),
        budget(b),
        fm(b.num_strands, static_cast<int>(i.prefix.size())),
        letters(signed_letters(b.num_strands)) {
    for (const Letter& l : letters)
      letter_events.push_back(
          compile(GroupWord::generator(l.gen, l.exp), budget.num_strands));
    for (const SimpleCommutatorSpec& spec : budget.labels)
      label_events.push_back(
          compile(expand_simple_commutator(spec), budget.num_strands));
  }

  void record(Int value, const Int& d, int p1, int l1, int p2, int l2) {
    ++report.cases;
    const bool zero = mod_residue(value, d) == 0;
    if (!is_unit_residue(value, d)) report.all_unit = false;
    if (zero) return;
    report.all_zero = false;
    if (report.counterexamples.size() >= kMaxCounterexamples) return;
    ClaspSingularLink link;
    std::vector<Letter> raw;
    for (int li : seq) raw.push_back(letters[li]);
    link.base = GroupWord(std::move(raw));
    link.num_strands = budget.num_strands;
    link.slots.push_back(ClaspSlot{p1, budget.labels[l1]});
    if (degree == 2) link.slots.push_back(ClaspSlot{p2, budget.labels[l2]});
    report.counterexamples.push_back(std::move(link));
  }

  void check_base() {
    const int L = static_cast<int>(seq.size());
    EventList base_ev(budget.num_strands);
    for (int li : seq)
      for (const CrossingEvent& e : letter_events[li].events())
        base_ev.push(e);
    const Int d = delta(base_ev, idx);

    std::vector<FastMu::State> prefix;
    prefix.push_back(fm.initial());
    for (int p = 0; p < L; ++p) {
      FastMu::State s = prefix.back();
      fm.apply(s, letter_events[seq[p]]);
      prefix.push_back(std::move(s));
    }
    const auto coeff = [&](const FastMu::State& s) {
      return fm.coefficient(s, idx.target, idx.prefix);
    };
    const auto run_suffix = [&](FastMu::State& s, int from) {
      for (int p = from; p < L; ++p) fm.apply(s, letter_events[seq[p]]);
    };
    const long long mu00 = coeff(prefix[L]);

    const int num_labels = static_cast<int>(label_events.size());
    std::vector<std::vector<long long>> mu1(
        L + 1, std::vector<long long>(num_labels));
    for (int p = 0; p <= L; ++p) {
      for (int l = 0; l < num_labels; ++l) {
        FastMu::State s = prefix[p];
        fm.apply(s, label_events[l]);
        run_suffix(s, p);
        mu1[p][l] = coeff(s);
      }
    }

    if (degree == 1) {
      for (int p = 0; p <= L; ++p)
        for (int l = 0; l < num_labels; ++l)
          record(Int(mu1[p][l]) - mu00, d, p, l, -1, -1);
      return;
    }
    for (int p1 = 0; p1 <= L; ++p1) {
      for (int l1 = 0; l1 < num_labels; ++l1) {
        FastMu::State mid = prefix[p1];
        fm.apply(mid, label_events[l1]);
        for (int p2 = p1; p2 <= L; ++p2) {
          if (p2 > p1) fm.apply(mid, letter_events[seq[p2 - 1]]);
          for (int l2 = 0; l2 < num_labels; ++l2) {
            FastMu::State s = mid;
            fm.apply(s, label_events[l2]);
            run_suffix(s, p2);
            record(Int(coeff(s)) - mu1[p1][l1] - mu1[p2][l2] + mu00, d, p1,
                   l1, p2, l2);
          }
        }
      }
    }
  }

  // Reduced words only: skip a letter that cancels the previous one.
  void enumerate(int remaining) {
    check_base();
    if (remaining == 0) return;
    for (int li = 0; li < static_cast<int>(letters.size()); ++li) {
      if (!seq.empty()) {
        const Letter& prev = letters[seq.back()];
        const Letter& cur = letters[li];
        if (prev.gen == cur.gen && prev.exp == -cur.exp) continue;
      }
      seq.push_back(li);
      enumerate(remaining - 1);
      seq.pop_back();
    }
  }
};

ClaspCheckReport generic_clasp_check(const MuIndex& idx, int degree,
                                     const ClaspCheckBudget& budget) {
  ClaspCheckReport report;
  const auto letters = signed_letters(budget.num_strands);
  std::vector<int> seq;
  std::vector<ClaspSlot> slots(degree);

  std::function<void(int)> place_slots;  // non-decreasing positions
  std::function<void(int)> choose_labels;

  ClaspSingularLink link;
  link.num_strands = budget.num_strands;

  choose_labels = [&](int slot) {
    if (slot == degree) {
      const MuBarValue v = extended_mu_bar_clasp(link, idx);
      ++report.cases;
      if (!is_unit_residue(v.residue, v.modulus)) report.all_unit = false;
      if (v.residue != 0) {
        report.all_zero = false;
        if (report.counterexamples.size() < kMaxCounterexamples)
          report.counterexamples.push_back(link);
      }
      return;
    }
    for (const SimpleCommutatorSpec& label : budget.labels) {
      link.slots[slot].label = label;
      choose_labels(slot + 1);
    }
  };
  place_slots = [&](int slot) {
    if (slot == degree) {
      choose_labels(0);
      return;
    }
    const int lo = slot == 0 ? 0 : link.slots[slot - 1].pos;
    for (int p = lo; p <= static_cast<int>(link.base.size()); ++p) {
      link.slots[slot].pos = p;
      place_slots(slot + 1);
    }
  };

  std::function<void(int)> enumerate = [&](int remaining) {
    std::vector<Letter> raw;
    for (int li : seq) raw.push_back(letters[li]);
    link.base = GroupWord(std::move(raw));
    link.slots.assign(degree, ClaspSlot{});
    place_slots(0);
    if (remaining == 0) return;
    for (int li = 0; li < static_cast<int>(letters.size()); ++li) {
      if (!seq.empty()) {
        const Letter& prev = letters[seq.back()];
        if (prev.gen == letters[li].gen && prev.exp == -letters[li].exp)
          continue;
      }
      seq.push_back(li);
      enumerate(remaining - 1);
      seq.pop_back();
    }
  };
  enumerate(budget.max_base_letters);
  return report;
}

}  // namespace

ClaspCheckReport type_check_clasp(const MuIndex& idx, int degree,
                                  const ClaspCheckBudget& budget) {
  idx.validate(budget.num_strands);
  if (degree < 0) throw std::invalid_argument("negative degree");
  if (budget.labels.empty())
    throw std::invalid_argument("empty label budget");
  if (degree == 1 || degree == 2) {
    ClaspEngine engine(idx, degree, budget);
    engine.enumerate(budget.max_base_letters);
    return std::move(engine.report);
  }
  return generic_clasp_check(idx, degree, budget);
}

// ---------------------------------------------------------------------------
// Double-crossing type checking

namespace {

struct DCUniverse {
  int k;
  std::vector<CrossingEvent> event_options;  // every (u,o,s)
  // valid unmarked tuples by length: signed under-counts symmetric
  std::vector<std::vector<std::vector<CrossingEvent>>> unmarked_by_len;

  explicit DCUniverse(int strands, int max_unmarked) : k(strands) {
    for (int u = 1; u <= k; ++u)
      for (int o = 1; o <= k; ++o) {
        if (u == o) continue;
        for (int s : {1, -1}) event_options.push_back(CrossingEvent{u, o, s});
      }
    unmarked_by_len.resize(max_unmarked + 1);
    std::vector<CrossingEvent> cur;
    build(cur, max_unmarked);
  }

  bool symmetric(const std::vector<CrossingEvent>& evs) const {
    std::vector<int> count(static_cast<std::size_t>(k + 1) * (k + 1), 0);
    for (const CrossingEvent& e : evs)
      count[static_cast<std::size_t>(e.under) * (k + 1) + e.over] += e.sign;
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        if (count[static_cast<std::size_t>(i) * (k + 1) + j] !=
            count[static_cast<std::size_t>(j) * (k + 1) + i])
          return false;
    return true;
  }

  void build(std::vector<CrossingEvent>& cur, int max_unmarked) {
    if (symmetric(cur))
      unmarked_by_len[cur.size()].push_back(cur);
    if (static_cast<int>(cur.size()) == max_unmarked) return;
    for (const CrossingEvent& e : event_options) {
      cur.push_back(e);
      build(cur, max_unmarked);
      cur.pop_back();
    }
  }
};

struct DCEngine {
  const MuIndex& idx;
  int degree;
  const DCCheckBudget& budget;
  FastMu fm;
  DCCheckReport report;
  std::optional<DCSingularLink> witness;
  bool stop_at_witness = false;

  DCEngine(const MuIndex& i, int deg, const DCCheckBudget& b)
      : idx(i),
        degree(deg),
        budget(b),
        fm(b.num_strands, static_cast<int>(i.prefix.size())) {}

  Int evaluate(const DCSingularLink& s) {
    const int m = s.degree();
    Int acc = 0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<bool> choice(m);
      int minus = 0;
      for (int i = 0; i < m; ++i) {
        choice[i] = (mask >> i) & 1u;
        minus += !choice[i];
      }
      const EventList r = resolve_dc(s, choice);
      const long long term = fm.mu(r, idx);
      acc += (minus % 2) ? -term : term;
    }
    return acc;
  }

  // returns true to stop the enumeration
  bool consider(const DCSingularLink& s) {
    const Int v = evaluate(s);
    const Int d =
        delta(resolve_dc(s, std::vector<bool>(s.pairs.size(), true)), idx);
    ++report.cases;
    if (mod_residue(v, d) == 0) return false;
    report.all_zero = false;
    if (report.counterexamples.size() < kMaxCounterexamples)
      report.counterexamples.push_back(s);
    if (stop_at_witness && !witness) {
      witness = s;
      return true;
    }
    return false;
  }

  // Pair up `marked` positions: smallest unpaired becomes the first slot of
  // the next pair, so the pair list is canonically ordered.
  bool pair_up(std::vector<std::size_t>& marked, DCSingularLink& link,
               const std::vector<CrossingEvent>& unmarked,
               const std::vector<std::size_t>& unmarked_pos) {
    if (marked.empty()) return fill_pairs(link, unmarked, unmarked_pos, 0);
    const std::size_t a = marked.front();
    for (std::size_t bi = 1; bi < marked.size(); ++bi) {
      const std::size_t b = marked[bi];
      std::vector<std::size_t> rest;
      for (std::size_t i = 1; i < marked.size(); ++i)
        if (i != bi) rest.push_back(marked[i]);
      link.pairs.push_back(DCPair{a, b});
      if (pair_up(rest, link, unmarked, unmarked_pos)) return true;
      link.pairs.pop_back();
    }
    return false;
  }

  // choose a strand pair and an under-strand per pair; both events of a
  // pair get identical roles so every resolution stays closable
  bool fill_pairs(DCSingularLink& link,
                  const std::vector<CrossingEvent>& unmarked,
                  const std::vector<std::size_t>& unmarked_pos,
                  std::size_t pair_index) {
    if (pair_index == link.pairs.size())
      return finish(link, unmarked, unmarked_pos);
    for (int i = 1; i <= budget.num_strands; ++i) {
      for (int j = i + 1; j <= budget.num_strands; ++j) {
        for (const bool i_under : {true, false}) {
          const int u = i_under ? i : j;
          const int o = i_under ? j : i;
          pair_roles[pair_index] = CrossingEvent{u, o, 1};
          if (fill_pairs(link, unmarked, unmarked_pos, pair_index + 1))
            return true;
        }
      }
    }
    return false;
  }

  bool finish(DCSingularLink& link,
              const std::vector<CrossingEvent>& unmarked,
              const std::vector<std::size_t>& unmarked_pos) {
    const std::size_t total = 2 * link.pairs.size() + unmarked.size();
    std::vector<CrossingEvent> events(total, CrossingEvent{1, 2, 1});
    for (std::size_t i = 0; i < unmarked.size(); ++i)
      events[unmarked_pos[i]] = unmarked[i];
    for (std::size_t p = 0; p < link.pairs.size(); ++p) {
      events[link.pairs[p].first] = pair_roles[p];
      events[link.pairs[p].second] = pair_roles[p];
    }
    EventList base(budget.num_strands);
    for (const CrossingEvent& e : events) base.push(e);
    link.base = std::move(base);
    return consider(link);
  }

  std::vector<CrossingEvent> pair_roles;

  void run_exhaustive() {
    const DCUniverse universe(budget.num_strands,
                              std::max(0, budget.max_events - 2 * degree));
    pair_roles.assign(degree, CrossingEvent{1, 2, 1});
    for (int total = 2 * degree; total <= budget.max_events; ++total) {
      const int u = total - 2 * degree;
      if (u >= static_cast<int>(universe.unmarked_by_len.size())) continue;
      // choose unmarked positions (combinations), then pair the rest
      std::vector<std::size_t> unmarked_pos(u);
      std::vector<bool> is_unmarked(total, false);
      std::function<bool(int, int)> choose = [&](int slot, int from) -> bool {
        if (slot == u) {
          std::vector<std::size_t> marked;
          for (int p = 0; p < total; ++p)
            if (!is_unmarked[p]) marked.push_back(p);
          for (const auto& tuple : universe.unmarked_by_len[u]) {
            DCSingularLink link;
            std::vector<std::size_t> m = marked;
            if (pair_up(m, link, tuple, unmarked_pos)) return true;
          }
          return false;
        }
        for (int p = from; p <= total - (u - slot); ++p) {
          unmarked_pos[slot] = p;
          is_unmarked[p] = true;
          if (choose(slot + 1, p + 1)) return true;
          is_unmarked[p] = false;
        }
        return false;
      };
      if (choose(0, 0)) return;
    }
  }

  void run_sampled() {
    std::mt19937_64 rng(budget.seed);
    const int total = budget.max_events;
    const int u = total - 2 * degree;
    if (u < 0) throw std::invalid_argument("budget too small for degree");
    const DCUniverse universe(budget.num_strands, u);
    if (universe.unmarked_by_len[u].empty())
      throw std::invalid_argument("no closable unmarked tuple of that size");
    pair_roles.assign(degree, CrossingEvent{1, 2, 1});
    for (std::uint64_t t = 0; t < budget.samples; ++t) {
      std::vector<int> perm(total);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<std::size_t> unmarked_pos;
      for (int i = 0; i < u; ++i) unmarked_pos.push_back(perm[i]);
      std::sort(unmarked_pos.begin(), unmarked_pos.end());
      std::vector<std::size_t> marked;
      for (int i = u; i < total; ++i) marked.push_back(perm[i]);
      std::sort(marked.begin(), marked.end());
      DCSingularLink link;
      for (int p = 0; p < degree; ++p) {
        // random pairing of the marked positions
        const std::size_t a = marked.front();
        marked.erase(marked.begin());
        const std::size_t bi = rng() % marked.size();
        const std::size_t b = marked[bi];
        marked.erase(marked.begin() + static_cast<long>(bi));
        link.pairs.push_back(DCPair{a, b});
        const int i = 1 + static_cast<int>(rng() % budget.num_strands);
        int j = 1 + static_cast<int>(rng() % budget.num_strands);
        while (j == i) j = 1 + static_cast<int>(rng() % budget.num_strands);
        pair_roles[p] = CrossingEvent{i, j, 1};
      }
      const auto& tuples = universe.unmarked_by_len[u];
      const auto& tuple = tuples[rng() % tuples.size()];
      if (finish(link, tuple, unmarked_pos)) return;
    }
  }

  void run() {
    if (budget.samples == 0)
      run_exhaustive();
    else
      run_sampled();
  }
};

}  // namespace

DCCheckReport type_check_dc(const MuIndex& idx, int degree,
                            const DCCheckBudget& budget) {
  idx.validate(budget.num_strands);
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  DCEngine engine(idx, degree, budget);
  engine.run();
  return std::move(engine.report);
}

std::optional<DCSingularLink> find_type_witness_dc(const MuIndex& idx,
                                                   int degree,
                                                   const DCCheckBudget& budget) {
  idx.validate(budget.num_strands);
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  DCEngine engine(idx, degree, budget);
  engine.stop_at_witness = true;
  engine.run();
  return engine.witness;
}

}  // namespace mubar
