#include "mubar/stringlink.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace mubar {

EventList::EventList(int num_strands, std::vector<CrossingEvent> events)
    : num_strands_(num_strands) {
  events_.reserve(events.size());
  for (const CrossingEvent& e : events) push(e);
}

void EventList::push(CrossingEvent e) {
  if (e.under < 1 || e.under > num_strands_ || e.over < 1 ||
      e.over > num_strands_)
    throw std::invalid_argument("event strand index out of range");
  if (e.under == e.over)
    throw std::invalid_argument("self-crossings are excluded");
  if (e.sign != 1 && e.sign != -1)
    throw std::invalid_argument("event sign must be +-1");
  events_.push_back(e);
}

void EventList::set_sign(std::size_t pos, int sign) {
  if (pos >= events_.size())
    throw std::invalid_argument("event position out of range");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("event sign must be +-1");
  events_[pos].sign = sign;
}

void MuIndex::validate(int num_strands) const {
  std::set<int> seen;
  for (int i : prefix) {
    if (i < 1 || i > num_strands)
      throw std::invalid_argument("mu index out of range");
    if (!seen.insert(i).second)
      throw std::invalid_argument("repeated index in mu (homotopy regime)");
  }
  if (target < 1 || target > num_strands)
    throw std::invalid_argument("mu target out of range");
  if (seen.count(target))
    throw std::invalid_argument("mu target repeats a prefix index");
}

EventList compile(const GroupWord& word, int k) {
  EventList out(k);
  for (const Letter& l : word.letters()) {
    if (l.gen.is_meridian())
      throw std::invalid_argument("compile expects x_ij generators");
    const int i = l.gen.a, j = l.gen.b;
    if (j > k) throw std::invalid_argument("generator index exceeds strands");
    out.push(CrossingEvent{j, i, l.exp});
    out.push(CrossingEvent{i, j, l.exp});
  }
  return out;
}

std::vector<MagnusSeries> longitudes(const EventList& link, int d,
                                     bool squarefree) {
  const int k = link.num_strands();
  if (d < 1) throw std::invalid_argument("truncation must be >= 1");
  std::vector<MagnusSeries> meridian, meridian_inv, lambda;
  meridian.reserve(k);
  for (int s = 1; s <= k; ++s) {
    const GroupWord ms = GroupWord::generator(Gen::meridian(s));
    meridian.push_back(expand_word(ms, k, d, squarefree));
    meridian_inv.push_back(expand_word(inverse(ms), k, d, squarefree));
    lambda.push_back(MagnusSeries::one(k, d, squarefree));
  }
  for (const CrossingEvent& e : link.events()) {
    const int u = e.under - 1, o = e.over - 1;
    const MagnusSeries& mo = e.sign > 0 ? meridian[o] : meridian_inv[o];
    const MagnusSeries& moi = e.sign > 0 ? meridian_inv[o] : meridian[o];
    lambda[u] = series_mul(lambda[u], mo);
    meridian[u] = series_mul(series_mul(mo, meridian[u]), moi);
    meridian_inv[u] = series_mul(series_mul(mo, meridian_inv[u]), moi);
  }
  return lambda;
}

Int mu(const EventList& link, const MuIndex& idx) {
  idx.validate(link.num_strands());
  const int d = static_cast<int>(idx.prefix.size());
  if (d == 0) return 0;
  auto lam = longitudes(link, d, /*squarefree=*/true);
  return lam[idx.target - 1].coefficient(
      std::span<const int>(idx.prefix.data(), idx.prefix.size()));
}

LinkingMatrix linking_matrix(const EventList& link) {
  const int k = link.num_strands();
  LinkingMatrix m;
  m.k = k;
  m.entries.assign(static_cast<std::size_t>(k) * k, 0);
  // under-count[i][j]: signed crossings with i under j.
  std::vector<long long> under(static_cast<std::size_t>(k) * k, 0);
  for (const CrossingEvent& e : link.events())
    under[(e.under - 1) * k + (e.over - 1)] += e.sign;
  for (int i = 0; i < k; ++i) {
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
  }
  return m;
}

namespace {

void cyclic_mu_values(const std::vector<MagnusSeries>& lam,
                      const std::vector<int>& seq, std::vector<Int>& out) {
  const int m = static_cast<int>(seq.size());
  for (int r = 0; r < m; ++r) {
    std::vector<int> rot(m);
    for (int p = 0; p < m; ++p) rot[p] = seq[(r + p) % m];
    const int tgt = rot.back();
    rot.pop_back();
    out.push_back(lam[tgt - 1].coefficient(
        std::span<const int>(rot.data(), rot.size())));
  }
}

}  // namespace

Int delta(const EventList& link, const MuIndex& idx) {
  idx.validate(link.num_strands());
  std::vector<int> full = idx.prefix;
  full.push_back(idx.target);
  const int n1 = static_cast<int>(full.size());
  if (n1 < 3) return 0;  // no proper subsequence of length >= 2
  auto lam = longitudes(link, n1 - 2, /*squarefree=*/true);
  std::vector<Int> values;
  for (unsigned mask = 0; mask < (1u << n1); ++mask) {
    const int len = __builtin_popcount(mask);
    if (len < 2 || len == n1) continue;
    std::vector<int> sub;
    for (int p = 0; p < n1; ++p)
      if (mask & (1u << p)) sub.push_back(full[p]);
    cyclic_mu_values(lam, sub, values);
  }
  Int g = 0;
  for (const Int& v : values) g = boost::multiprecision::gcd(g, v);
  return boost::multiprecision::abs(g);
}

MuBarValue mu_bar(const EventList& link, const MuIndex& idx) {
  const Int d = delta(link, idx);
  Int r = mu(link, idx);
  if (d > 0) {
    r %= d;
    if (r < 0) r += d;
  }
  return MuBarValue{r, d};
}

EventList concat(const EventList& a, const EventList& b) {
  if (a.num_strands() != b.num_strands())
    throw std::invalid_argument("concat: strand-count mismatch");
  EventList out = a;
  for (const CrossingEvent& e : b.events()) out.push(e);
  return out;
}

EventList conjugate(const EventList& link, const GroupWord& by) {
  const int k = link.num_strands();
  EventList out = compile(by, k);
  for (const CrossingEvent& e : link.events()) out.push(e);
  const EventList tail = compile(inverse(by), k);
  for (const CrossingEvent& e : tail.events()) out.push(e);
  return out;
}

}  // namespace mubar
