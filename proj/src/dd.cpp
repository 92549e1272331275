#include "mubar/dd.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <stdexcept>

#include "mubar/linalg.hpp"

namespace mubar {

namespace {

std::vector<DDEndpoint> least_rotation(const std::vector<DDEndpoint>& seq) {
  const std::size_t n = seq.size();
  if (n < 2) return seq;
  std::vector<DDEndpoint> best = seq;
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<DDEndpoint> cand(n);
    for (std::size_t p = 0; p < n; ++p) cand[p] = seq[(r + p) % n];
    if (cand < best) best = std::move(cand);
  }
  return best;
}

}  // namespace

void DDDiagram::validate() const {
  if (num_circles < 0) throw std::invalid_argument("bad circle count");
  if (static_cast<int>(circles.size()) != num_circles)
    throw std::invalid_argument("circle sequence count mismatch");
  const int m = degree();
  // expected[c] lists (pair, chord) endpoints that must appear on circle c.
  std::vector<std::vector<DDEndpoint>> expected(num_circles);
  for (int p = 0; p < m; ++p) {
    const DDPairCircles& pc = pairs[p];
    if (pc.a < 0 || pc.b >= num_circles || pc.a >= pc.b)
      throw std::invalid_argument("pair circles must satisfy 0 <= a < b < l");
    for (int c : {pc.a, pc.b})
      for (int chord : {0, 1}) expected[c].push_back(DDEndpoint{p, chord});
  }
  for (int c = 0; c < num_circles; ++c) {
    std::vector<DDEndpoint> got = circles[c];
    std::sort(got.begin(), got.end());
    std::sort(expected[c].begin(), expected[c].end());
    if (got != expected[c])
      throw std::invalid_argument("circle endpoints do not match the pairs");
  }
}

DDDiagram canonicalize(const DDDiagram& d) {
  DDDiagram out = d;
  for (auto& c : out.circles) c = least_rotation(c);
  return out;
}

namespace {

// Exchange chords 0 and 1 of every pair selected by the mask, without
// canonicalizing.
DDDiagram apply_swaps(const DDDiagram& d, unsigned mask) {
  DDDiagram out = d;
  for (auto& circle : out.circles)
    for (auto& e : circle)
      if (mask & (1u << e.pair)) e.chord ^= 1;
  return out;
}

}  // namespace

DDDiagram swap_pair(const DDDiagram& d, int pair) {
  if (pair < 0 || pair >= d.degree())
    throw std::invalid_argument("pair index out of range");
  return canonicalize(apply_swaps(d, 1u << pair));
}

CensusResult census_degree3() {
  DDDiagram proto;
  proto.num_circles = 3;
  proto.pairs = {DDPairCircles{0, 1}, DDPairCircles{0, 2},
                 DDPairCircles{1, 2}};
  // Rotation classes of the 4 endpoints carried by each circle.
  std::vector<std::vector<std::vector<DDEndpoint>>> classes(3);
  for (int c = 0; c < 3; ++c) {
    std::vector<DDEndpoint> pts;
    for (int p = 0; p < 3; ++p) {
      if (proto.pairs[p].a != c && proto.pairs[p].b != c) continue;
      pts.push_back(DDEndpoint{p, 0});
      pts.push_back(DDEndpoint{p, 1});
    }
    std::sort(pts.begin(), pts.end());
    std::vector<std::vector<DDEndpoint>> seen;
    do {
      std::vector<DDEndpoint> canon = least_rotation(pts);
      if (std::find(seen.begin(), seen.end(), canon) == seen.end())
        seen.push_back(std::move(canon));
    } while (std::next_permutation(pts.begin(), pts.end()));
    std::sort(seen.begin(), seen.end());
    classes[c] = std::move(seen);
  }

  std::vector<DDDiagram> all;
  for (const auto& c0 : classes[0])
    for (const auto& c1 : classes[1])
      for (const auto& c2 : classes[2]) {
        DDDiagram d = proto;
        d.circles = {c0, c1, c2};
        all.push_back(std::move(d));
      }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  CensusResult res;
  res.labeled = static_cast<long long>(all.size());
  res.naive_quotient = res.labeled / 8;

  std::set<DDDiagram> done;
  for (const DDDiagram& d : all) {
    if (done.count(d)) continue;
    std::set<DDDiagram> orbit;
    for (unsigned mask = 0; mask < 8; ++mask)
      orbit.insert(canonicalize(apply_swaps(d, mask)));
    res.orbits.emplace_back(orbit.begin(), orbit.end());
    done.insert(orbit.begin(), orbit.end());
  }
  std::sort(res.orbits.begin(), res.orbits.end());
  return res;
}

bool one_term_test(const DDDiagram& d) {
  const int m = d.degree();
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    const DDDiagram s = canonicalize(apply_swaps(d, mask));
    for (int p = 0; p < m; ++p) {
      bool adjacent = true;
      for (int c : {s.pairs[p].a, s.pairs[p].b}) {
        const auto& seq = s.circles[c];
        const std::size_t n = seq.size();
        std::size_t p0 = n, p1 = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (seq[i] == DDEndpoint{p, 0}) p0 = i;
          if (seq[i] == DDEndpoint{p, 1}) p1 = i;
        }
        adjacent &= (p0 + 1 == p1) || (p1 + 1 == p0);
      }
      if (adjacent) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Realization

LinkingMatrix split_class(int k) {
  LinkingMatrix m;
  m.k = k;
  m.entries.assign(static_cast<std::size_t>(k) * k, 0);
  return m;
}

LinkingMatrix three_strand_class(long long l12, long long l13, long long l23) {
  LinkingMatrix m = split_class(3);
  m.entries[0 * 3 + 1] = m.entries[1 * 3 + 0] = l12;
  m.entries[0 * 3 + 2] = m.entries[2 * 3 + 0] = l13;
  m.entries[1 * 3 + 2] = m.entries[2 * 3 + 1] = l23;
  return m;
}

namespace {

// Total order of the chord events (ids 2*pair + chord) whose restriction
// to each circle is some rotation of that circle's cyclic order.
std::vector<int> linearize_chords(const DDDiagram& d) {
  const int m = d.degree();
  const int n = 2 * m;
  std::vector<std::size_t> rot(d.circles.size(), 0);
  while (true) {
    // Chains from the rotated cut of every circle.
    std::vector<std::vector<int>> next(n);
    std::vector<int> indeg(n, 0);
    for (std::size_t c = 0; c < d.circles.size(); ++c) {
      const auto& seq = d.circles[c];
      for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        const DDEndpoint u = seq[(rot[c] + i) % seq.size()];
        const DDEndpoint v = seq[(rot[c] + i + 1) % seq.size()];
        next[2 * u.pair + u.chord].push_back(2 * v.pair + v.chord);
        ++indeg[2 * v.pair + v.chord];
      }
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < n; ++v)
      if (indeg[v] == 0) ready.push(v);
    std::vector<int> order;
    while (!ready.empty()) {
      const int v = ready.top();
      ready.pop();
      order.push_back(v);
      for (int w : next[v])
        if (--indeg[w] == 0) ready.push(w);
    }
    if (static_cast<int>(order.size()) == n) return order;
    // Cycle: advance the rotation vector (mixed radix) and retry.
    std::size_t c = 0;
    for (; c < rot.size(); ++c) {
      if (++rot[c] < std::max<std::size_t>(d.circles[c].size(), 1)) break;
      rot[c] = 0;
    }
    if (c == rot.size())
      throw std::runtime_error("diagram admits no consistent event order");
  }
}

}  // namespace

std::vector<DCSingularLink> realize(const DDDiagram& d,
                                    const LinkingMatrix& linking_class,
                                    int samples, std::uint64_t seed) {
  d.validate();
  if (linking_class.k != d.num_circles)
    throw std::invalid_argument("linking class size mismatch");
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int k = d.num_circles;
  const DDDiagram cd = canonicalize(d);
  const int m = cd.degree();

  std::vector<Letter> prefix_letters;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      const long long lk = linking_class.at(i, j);
      const int sign = lk >= 0 ? 1 : -1;
      for (long long r = 0; r < std::abs(lk); ++r)
        prefix_letters.push_back(Letter{Gen::strand_pair(i, j), sign});
    }
  const EventList prefix = compile(GroupWord(std::move(prefix_letters)), k);

  std::vector<CrossingEvent> base_events(prefix.events().begin(),
                                         prefix.events().end());
  std::vector<std::size_t> marked_pos(2 * m);  // event id -> position
  for (int id : linearize_chords(cd)) {
    const DDPairCircles& pc = cd.pairs[id / 2];
    marked_pos[id] = base_events.size();
    base_events.push_back(CrossingEvent{pc.a + 1, pc.b + 1, 1});
  }

  std::vector<DCSingularLink> out;
  for (int s = 0; s < samples; ++s) {
    std::vector<CrossingEvent> ev = base_events;
    std::vector<std::size_t> pos = marked_pos;
    if (s > 0) {
      std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * (s + 1));
      const int noise_pairs = 1 + static_cast<int>(rng() % 2);
      for (int t = 0; t < noise_pairs; ++t) {
        int u = 1 + static_cast<int>(rng() % k);
        int o = 1 + static_cast<int>(rng() % (k - 1));
        if (o >= u) ++o;
        const int sign = (rng() & 1) ? 1 : -1;
        for (int half = 0; half < 2; ++half) {
          const std::size_t at = rng() % (ev.size() + 1);
          ev.insert(ev.begin() + at,
                    CrossingEvent{u, o, half == 0 ? sign : -sign});
          for (std::size_t& p : pos)
            if (p >= at) ++p;
        }
      }
    }
    DCSingularLink link;
    link.base = EventList(k, std::move(ev));
    for (int p = 0; p < m; ++p)
      link.pairs.push_back(DCPair{pos[2 * p], pos[2 * p + 1]});
    link.validate();
    out.push_back(std::move(link));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed singular links

void ClosedDCLink::validate() const {
  if (k < 2) throw std::invalid_argument("bad strand count");
  if (static_cast<int>(order.size()) != k)
    throw std::invalid_argument("traversal count mismatch");
  const std::size_t n = crossings.size();
  for (const ClosedCrossing& x : crossings) {
    if (x.under < 1 || x.under > k || x.over < 1 || x.over > k)
      throw std::invalid_argument("crossing strand index out of range");
    if (x.under == x.over)
      throw std::invalid_argument("self-crossings are excluded");
    if (x.sign != 1 && x.sign != -1)
      throw std::invalid_argument("crossing sign must be +-1");
  }
  std::vector<int> seen_under(n, 0), seen_over(n, 0);
  for (int c = 0; c < k; ++c) {
    for (const ClosedIncidence& inc : order[c]) {
      if (static_cast<std::size_t>(inc.crossing) >= n)
        throw std::invalid_argument("incidence crossing out of range");
      const ClosedCrossing& x = crossings[inc.crossing];
      const int expect = inc.under ? x.under : x.over;
      if (expect != c + 1)
        throw std::invalid_argument("incidence on the wrong strand");
      ++(inc.under ? seen_under : seen_over)[inc.crossing];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (seen_under[i] != 1 || seen_over[i] != 1)
      throw std::invalid_argument("every crossing needs one incidence per "
                                  "role");
  std::vector<std::size_t> marked;
  for (const DCPair& p : pairs) {
    if (p.first >= n || p.second >= n || p.first == p.second)
      throw std::invalid_argument("pair positions out of range");
    const ClosedCrossing& a = crossings[p.first];
    const ClosedCrossing& b = crossings[p.second];
    if (a.under != b.under || a.over != b.over)
      throw std::invalid_argument("pair must join the same two strands");
    marked.push_back(p.first);
    marked.push_back(p.second);
  }
  std::sort(marked.begin(), marked.end());
  if (std::adjacent_find(marked.begin(), marked.end()) != marked.end())
    throw std::invalid_argument("pair positions must be distinct");
}

namespace {

std::vector<int> resolved_signs(const ClosedDCLink& link,
                                const std::vector<bool>& choice) {
  if (choice.size() != link.pairs.size())
    throw std::invalid_argument("choice size mismatch");
  std::vector<int> sign(link.crossings.size());
  for (std::size_t i = 0; i < link.crossings.size(); ++i)
    sign[i] = link.crossings[i].sign;
  for (std::size_t i = 0; i < link.pairs.size(); ++i) {
    const int s = choice[i] ? 1 : -1;
    sign[link.pairs[i].first] = s;
    sign[link.pairs[i].second] = -s;
  }
  return sign;
}

LinkingMatrix closed_linking(const ClosedDCLink& link,
                             const std::vector<int>& sign) {
  const int k = link.k;
  LinkingMatrix m;
  m.k = k;
  m.entries.assign(static_cast<std::size_t>(k) * k, 0);
  std::vector<long long> under(static_cast<std::size_t>(k) * k, 0);
  for (std::size_t i = 0; i < link.crossings.size(); ++i) {
    const ClosedCrossing& x = link.crossings[i];
    under[(x.under - 1) * k + (x.over - 1)] += sign[i];
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const long long a = under[i * k + j], b = under[j * k + i];
      if (a != b)
        throw std::runtime_error(
            "unclosable diagram: under-count conventions disagree for "
            "strands " +
            std::to_string(i + 1) + "," + std::to_string(j + 1));
      m.entries[i * k + j] = a;
      m.entries[j * k + i] = a;
    }
  return m;
}

}  // namespace

std::vector<MagnusSeries> closed_longitudes(const ClosedDCLink& link,
                                            const std::vector<bool>& choice,
                                            int d) {
  link.validate();
  if (d < 1) throw std::invalid_argument("truncation must be >= 1");
  const int k = link.k;
  const std::vector<int> sign = resolved_signs(link, choice);

  // Arc carrying each crossing's over incidence: the number of under
  // incidences the over strand passes before it (from its basepoint).
  std::vector<int> over_arc(link.crossings.size(), 0);
  std::vector<int> num_arcs(k, 1);
  for (int c = 0; c < k; ++c) {
    int arc = 0;
    for (const ClosedIncidence& inc : link.order[c]) {
      if (inc.under)
        ++arc;
      else
        over_arc[inc.crossing] = arc;
    }
    num_arcs[c] = arc + 1;
  }

  // Arc meridians (and their inverses), iterated substitution: every pass
  // rebuilds the conjugation chains from the basepoint meridian, reading
  // over-strand meridians from the previous pass.  Each pass pushes the
  // error one degree deeper, so d + 1 passes are exact at truncation d.
  std::vector<std::vector<MagnusSeries>> mer(k), mer_inv(k);
  for (int c = 0; c < k; ++c) {
    const GroupWord mc = GroupWord::generator(Gen::meridian(c + 1));
    mer[c].assign(num_arcs[c], expand_word(mc, k, d, /*squarefree=*/true));
    mer_inv[c].assign(num_arcs[c],
                      expand_word(inverse(mc), k, d, /*squarefree=*/true));
  }
  for (int pass = 0; pass < d + 1; ++pass) {
    const auto prev = mer;
    const auto prev_inv = mer_inv;
    for (int c = 0; c < k; ++c) {
      int arc = 0;
      for (const ClosedIncidence& inc : link.order[c]) {
        if (!inc.under) continue;
        const ClosedCrossing& x = link.crossings[inc.crossing];
        const int o = x.over - 1, a = over_arc[inc.crossing];
        const MagnusSeries& mo =
            sign[inc.crossing] > 0 ? prev[o][a] : prev_inv[o][a];
        const MagnusSeries& moi =
            sign[inc.crossing] > 0 ? prev_inv[o][a] : prev[o][a];
        mer[c][arc + 1] = series_mul(series_mul(mo, mer[c][arc]), moi);
        mer_inv[c][arc + 1] =
            series_mul(series_mul(mo, mer_inv[c][arc]), moi);
        ++arc;
      }
    }
  }

  std::vector<MagnusSeries> lam(k, MagnusSeries::one(k, d,
                                                     /*squarefree=*/true));
  for (int c = 0; c < k; ++c) {
    for (const ClosedIncidence& inc : link.order[c]) {
      if (!inc.under) continue;
      const ClosedCrossing& x = link.crossings[inc.crossing];
      const int o = x.over - 1, a = over_arc[inc.crossing];
      lam[c] = series_mul(lam[c], sign[inc.crossing] > 0 ? mer[o][a]
                                                         : mer_inv[o][a]);
    }
  }
  return lam;
}

Int closed_mu(const ClosedDCLink& link, const std::vector<bool>& choice,
              const MuIndex& idx) {
  idx.validate(link.k);
  const int d = static_cast<int>(idx.prefix.size());
  if (d == 0) return 0;
  const auto lam = closed_longitudes(link, choice, d);
  return lam[idx.target - 1].coefficient(
      std::span<const int>(idx.prefix.data(), idx.prefix.size()));
}

Int closed_delta(const ClosedDCLink& link, const std::vector<bool>& choice,
                 const MuIndex& idx) {
  idx.validate(link.k);
  std::vector<int> full = idx.prefix;
  full.push_back(idx.target);
  const int n1 = static_cast<int>(full.size());
  if (n1 < 3) return 0;
  const auto lam = closed_longitudes(link, choice, n1 - 2);
  Int g = 0;
  for (unsigned mask = 0; mask < (1u << n1); ++mask) {
    const int len = __builtin_popcount(mask);
    if (len < 2 || len == n1) continue;
    std::vector<int> sub;
    for (int p = 0; p < n1; ++p)
      if (mask & (1u << p)) sub.push_back(full[p]);
    for (std::size_t r = 0; r < sub.size(); ++r) {
      std::vector<int> rot(sub.size());
      for (std::size_t q = 0; q < sub.size(); ++q)
        rot[q] = sub[(r + q) % sub.size()];
      const int tgt = rot.back();
      rot.pop_back();
      g = boost::multiprecision::gcd(
          g, lam[tgt - 1].coefficient(
                 std::span<const int>(rot.data(), rot.size())));
    }
  }
  return boost::multiprecision::abs(g);
}

Int extended_mu_closed(const ClosedDCLink& link, const MuIndex& idx) {
  link.validate();
  const int m = link.degree();
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
    const LinkingMatrix lk = closed_linking(link, resolved_signs(link, choice));
    if (!have_matrix) {
      first = lk;
      have_matrix = true;
    } else if (lk.entries != first.entries) {
      throw std::runtime_error("incoherent linking class");
    }
    const Int term = closed_mu(link, choice, idx);
    acc += (minus % 2) ? -term : term;
  }
  return acc;
}

MuBarValue extended_mu_bar_closed(const ClosedDCLink& link,
                                  const MuIndex& idx) {
  const Int v = extended_mu_closed(link, idx);
  const Int d =
      closed_delta(link, std::vector<bool>(link.pairs.size(), true), idx);
  Int r = v;
  if (d > 0) {
    r %= d;
    if (r < 0) r += d;
  }
  return MuBarValue{r, d};
}

ClosedDCLink to_closed(const DCSingularLink& link) {
  ClosedDCLink out;
  out.k = link.base.num_strands();
  out.order.resize(out.k);
  const auto& events = link.base.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    out.crossings.push_back(
        ClosedCrossing{events[i].under, events[i].over, events[i].sign});
    out.order[events[i].under - 1].push_back(
        ClosedIncidence{static_cast<int>(i), true});
    out.order[events[i].over - 1].push_back(
        ClosedIncidence{static_cast<int>(i), false});
  }
  out.pairs = link.pairs;
  return out;
}

std::vector<ClosedDCLink> realize_closed(const DDDiagram& d,
                                         const LinkingMatrix& linking_class,
                                         int samples, std::uint64_t seed) {
  d.validate();
  if (linking_class.k != d.num_circles)
    throw std::invalid_argument("linking class size mismatch");
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int k = d.num_circles;
  const DDDiagram cd = canonicalize(d);
  const int m = cd.degree();

  ClosedDCLink base;
  base.k = k;
  base.order.resize(k);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      const long long lk = linking_class.at(i, j);
      const int sign = lk >= 0 ? 1 : -1;
      for (long long r = 0; r < std::abs(lk); ++r)
        for (int half = 0; half < 2; ++half) {
          // compile(x_ij): j under i, then i under j, same sign.
          const int u = half == 0 ? j : i, o = half == 0 ? i : j;
          const int x = static_cast<int>(base.crossings.size());
          base.crossings.push_back(ClosedCrossing{u, o, sign});
          base.order[u - 1].push_back(ClosedIncidence{x, true});
          base.order[o - 1].push_back(ClosedIncidence{x, false});
        }
    }
  const int first_marked = static_cast<int>(base.crossings.size());
  for (int p = 0; p < m; ++p)
    for (int chord = 0; chord < 2; ++chord)
      base.crossings.push_back(
          ClosedCrossing{cd.pairs[p].a + 1, cd.pairs[p].b + 1, 1});
  for (int c = 0; c < k; ++c)
    for (const DDEndpoint& e : cd.circles[c])
      base.order[c].push_back(
          ClosedIncidence{first_marked + 2 * e.pair + e.chord,
                          /*under=*/c == cd.pairs[e.pair].a});
  for (int p = 0; p < m; ++p)
    base.pairs.push_back(DCPair{static_cast<std::size_t>(first_marked + 2 * p),
                                static_cast<std::size_t>(first_marked + 2 * p +
                                                         1)});

  std::vector<ClosedDCLink> out;
  for (int s = 0; s < samples; ++s) {
    ClosedDCLink link = base;
    if (s > 0) {
      std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * (s + 1));
      const int noise_pairs = 1 + static_cast<int>(rng() % 2);
      for (int t = 0; t < noise_pairs; ++t) {
        int u = 1 + static_cast<int>(rng() % k);
        int o = 1 + static_cast<int>(rng() % (k - 1));
        if (o >= u) ++o;
        const int sign = (rng() & 1) ? 1 : -1;
        for (int half = 0; half < 2; ++half) {
          const int x = static_cast<int>(link.crossings.size());
          link.crossings.push_back(
              ClosedCrossing{u, o, half == 0 ? sign : -sign});
          auto& uo = link.order[u - 1];
          uo.insert(uo.begin() + rng() % (uo.size() + 1),
                    ClosedIncidence{x, true});
          auto& oo = link.order[o - 1];
          oo.insert(oo.begin() + rng() % (oo.size() + 1),
                    ClosedIncidence{x, false});
        }
      }
    }
    link.validate();
    out.push_back(std::move(link));
  }
  return out;
}

namespace {

MuBarValue evaluate_W_val(const DDDiagram& d, const MuIndex& invariant,
                          const LinkingMatrix& linking_class, int samples,
                          std::uint64_t seed) {
  samples = std::max(samples, 3);
  const auto links = realize_closed(d, linking_class, samples, seed);
  MuBarValue first{};
  for (std::size_t i = 0; i < links.size(); ++i) {
    const MuBarValue v = extended_mu_bar_closed(links[i], invariant);
    if (i == 0)
      first = v;
    else if (!(v == first))
      throw std::runtime_error("W not well-defined at this degree");
  }
  return first;
}

}  // namespace

Int evaluate_W(const DDDiagram& d, const MuIndex& invariant,
               const LinkingMatrix& linking_class, int samples,
               std::uint64_t seed) {
  return evaluate_W_val(d, invariant, linking_class, samples, seed).residue;
}

// ---------------------------------------------------------------------------
// Relation spans

RankReport relation_space_rank(const std::vector<DDDiagram>& diagrams,
                               const std::set<DDRelation>& relations) {
  std::vector<DDDiagram> basis;
  for (const DDDiagram& d : diagrams) basis.push_back(canonicalize(d));
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  std::map<DDDiagram, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i)
    index[basis[i]] = static_cast<int>(i);
  const int n = static_cast<int>(basis.size());

  std::vector<std::vector<Rat>> rows;
  auto unit_row = [&](int i) {
    std::vector<Rat> r(n, 0);
    r[i] = 1;
    rows.push_back(std::move(r));
  };

  for (int i = 0; i < n; ++i) {
    const DDDiagram& d = basis[i];
    if (relations.count(DDRelation::OneTerm) && one_term_test(d)) unit_row(i);
    if (relations.count(DDRelation::SamePairVanishing)) {
      std::vector<DDPairCircles> pc = d.pairs;
      std::sort(pc.begin(), pc.end());
      if (std::adjacent_find(pc.begin(), pc.end()) != pc.end()) unit_row(i);
    }
    if (relations.count(DDRelation::Antisymmetry)) {
      for (unsigned mask = 1; mask < (1u << d.degree()); ++mask) {
        const auto it = index.find(canonicalize(apply_swaps(d, mask)));
        if (it == index.end()) continue;
        // [gD] = (-1)^{|g|} [D]
        std::vector<Rat> r(n, 0);
        r[it->second] += 1;
        r[i] -= (__builtin_popcount(mask) % 2) ? Rat(-1) : Rat(1);
        rows.push_back(std::move(r));
      }
    }
  }

  RankReport rep;
  rep.basis_size = n;
  rep.relation_rank = rows.empty() ? 0 : rank_rational(std::move(rows));
  rep.quotient_dim = rep.basis_size - rep.relation_rank;
  return rep;
}

DDFunctionalReport functional_report(const std::vector<DDDiagram>& diagrams,
                                     const MuIndex& invariant,
                                     const LinkingMatrix& linking_class,
                                     int samples, std::uint64_t seed) {
  DDFunctionalReport rep;
  auto congruent_zero = [](const Int& v, const Int& mod) {
    return mod == 0 ? v == 0 : v % mod == 0;
  };
  for (const DDDiagram& d : diagrams) {
    const MuBarValue w =
        evaluate_W_val(d, invariant, linking_class, samples, seed);
    rep.values.push_back(w.residue);
    if (one_term_test(d) && !congruent_zero(w.residue, w.modulus))
      rep.one_term_residuals_zero = false;
    for (int p = 0; p < d.degree(); ++p) {
      const MuBarValue ws = evaluate_W_val(swap_pair(d, p), invariant,
                                           linking_class, samples, seed);
      if (!congruent_zero(w.residue + ws.residue, w.modulus))
        rep.antisymmetry_residuals_zero = false;
    }
  }
  return rep;
}

}  // namespace mubar
