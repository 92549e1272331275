#include "mubar/magnus.hpp"

#include <algorithm>
#include <stdexcept>

namespace mubar {

Monomial mono_from(std::span<const int> indices) {
  if (indices.size() > kMaxMonomialLen)
    throw std::invalid_argument("monomial too long");
  Monomial m = static_cast<Monomial>(indices.size()) << 60;
  int shift = 56;
  for (int i : indices) {
    if (i < 1 || i > 15) throw std::invalid_argument("monomial index range");
    m |= static_cast<Monomial>(i) << shift;
    shift -= 4;
  }
  return m;
}

int mono_len(Monomial m) { return static_cast<int>(m >> 60); }

int mono_at(Monomial m, int pos) {
  return static_cast<int>((m >> (56 - 4 * pos)) & 0xF);
}

Monomial mono_concat(Monomial a, Monomial b) {
  const int la = mono_len(a), lb = mono_len(b);
  Monomial body_b = (b & 0x0FFF'FFFF'FFFF'FFFFULL) >> (4 * la);
  return (static_cast<Monomial>(la + lb) << 60) |
         (a & 0x0FFF'FFFF'FFFF'FFFFULL) | body_b;
}

bool mono_squarefree(Monomial m) {
  unsigned seen = 0;
  const int len = mono_len(m);
  for (int p = 0; p < len; ++p) {
    const unsigned bit = 1u << mono_at(m, p);
    if (seen & bit) return false;
    seen |= bit;
  }
  return true;
}

std::vector<int> mono_indices(Monomial m) {
  std::vector<int> out(mono_len(m));
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = mono_at(m, static_cast<int>(p));
  return out;
}

MagnusSeries::MagnusSeries(int num_vars, int max_degree, bool squarefree)
    : num_vars_(num_vars), max_degree_(max_degree), squarefree_(squarefree) {
  if (num_vars < 0 || num_vars > 15)
    throw std::invalid_argument("num_vars out of range");
  if (max_degree < 0 || max_degree > kMaxMonomialLen)
    throw std::invalid_argument("max_degree out of range");
}

MagnusSeries MagnusSeries::one(int num_vars, int max_degree, bool squarefree) {
  MagnusSeries s(num_vars, max_degree, squarefree);
  s.terms_.emplace_back(kEmptyMonomial, Int(1));
  return s;
}

Int MagnusSeries::coefficient(Monomial m) const {
  if (mono_len(m) > max_degree_)
    throw std::invalid_argument("monomial exceeds truncation");
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const auto& t, Monomial key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

Int MagnusSeries::coefficient(std::span<const int> indices) const {
  return coefficient(mono_from(indices));
}

int MagnusSeries::min_degree() const {
  for (const auto& [m, c] : terms_)
    if (m != kEmptyMonomial) return mono_len(m);
  return kDegreeInfinite;
}

void MagnusSeries::set(Monomial m, Int c) {
  if (mono_len(m) > max_degree_)
    throw std::invalid_argument("monomial exceeds truncation");
  if (squarefree_ && !mono_squarefree(m))
    throw std::invalid_argument("repeated index in squarefree mode");
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const auto& t, Monomial key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) {
    if (c == 0)
      terms_.erase(it);
    else
      it->second = std::move(c);
  } else if (c != 0) {
    terms_.insert(it, {m, std::move(c)});
  }
}

namespace {

void check_compatible(const MagnusSeries& a, const MagnusSeries& b) {
  if (a.num_vars() != b.num_vars() || a.max_degree() != b.max_degree() ||
      a.squarefree() != b.squarefree())
    throw std::invalid_argument("series mode mismatch");
}

void sort_combine(std::vector<std::pair<Monomial, Int>>& raw,
                  std::vector<std::pair<Monomial, Int>>& out) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  out.clear();
  for (auto& [m, c] : raw) {
    if (!out.empty() && out.back().first == m)
      out.back().second += c;
    else
      out.emplace_back(m, std::move(c));
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0; });
}

}  // namespace

MagnusSeries series_mul(const MagnusSeries& a, const MagnusSeries& b) {
  check_compatible(a, b);
  MagnusSeries r(a.num_vars(), a.max_degree(), a.squarefree());
  std::vector<std::pair<Monomial, Int>> raw;
  raw.reserve(a.terms_.size() * 2);
  for (const auto& [ma, ca] : a.terms_) {
    const int la = mono_len(ma);
    for (const auto& [mb, cb] : b.terms_) {
      if (la + mono_len(mb) > a.max_degree()) continue;
      const Monomial m = mono_concat(ma, mb);
      if (a.squarefree() && !mono_squarefree(m)) continue;
      raw.emplace_back(m, ca * cb);
    }
  }
  sort_combine(raw, r.terms_);
  return r;
}

MagnusSeries series_add(const MagnusSeries& a, const MagnusSeries& b) {
  check_compatible(a, b);
  MagnusSeries r(a.num_vars(), a.max_degree(), a.squarefree());
  std::vector<std::pair<Monomial, Int>> raw = a.terms_;
  raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
  sort_combine(raw, r.terms_);
  return r;
}

MagnusSeries series_neg(const MagnusSeries& a) {
  MagnusSeries r = a;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MagnusSeries series_inverse(const MagnusSeries& a) {
  const Int c0 = a.constant_term();
  if (c0 != 1 && c0 != -1)
    throw std::invalid_argument("series_inverse: constant term must be +-1");
  // a = c0 (1 + n); a^-1 = c0 (1 - n + n^2 - ...).
  MagnusSeries n = a;
  if (c0 == -1) n = series_neg(n);
  n.set(kEmptyMonomial, 0);  // n = c0*a - 1
  MagnusSeries acc = MagnusSeries::one(a.num_vars(), a.max_degree(),
                                       a.squarefree());
  MagnusSeries power = acc;
  int s = -1;
  for (int i = 1; i <= a.max_degree(); ++i, s = -s) {
    power = series_mul(power, n);
    if (power.terms().empty()) break;
    acc = series_add(acc, s < 0 ? series_neg(power) : power);
  }
  if (c0 == -1) acc = series_neg(acc);
  return acc;
}

namespace {

MagnusSeries letter_series(int var, int exp, int k, int d, bool squarefree) {
  MagnusSeries s = MagnusSeries::one(k, d, squarefree);
  if (exp == 1) {
    if (d >= 1) s.set(mono_from(std::span<const int>(&var, 1)), 1);
    return s;
  }
  // m^-1 -> 1 - K + K^2 - ...
  std::vector<int> idx;
  Int c = -1;
  for (int deg = 1; deg <= d; ++deg, c = -c) {
    idx.push_back(var);
    if (squarefree && deg > 1) break;
    s.set(mono_from(idx), c);
  }
  return s;
}

}  // namespace

MagnusSeries expand_word_mapped(const GroupWord& w,
                                const std::map<Gen, int>& var_of,
                                int num_vars, int d, bool squarefree) {
  MagnusSeries acc = MagnusSeries::one(num_vars, d, squarefree);
  for (const Letter& l : w.letters()) {
    auto it = var_of.find(l.gen);
    if (it == var_of.end())
      throw std::invalid_argument("unknown generator in word: " + l.gen.str());
    acc = series_mul(acc,
                     letter_series(it->second, l.exp, num_vars, d, squarefree));
  }
  return acc;
}

MagnusSeries expand_word(const GroupWord& w, int k, int d, bool squarefree) {
  MagnusSeries acc = MagnusSeries::one(k, d, squarefree);
  for (const Letter& l : w.letters()) {
    if (!l.gen.is_meridian() || l.gen.a < 1 || l.gen.a > k)
      throw std::invalid_argument("expand_word: expected meridians m_1..m_" +
                                  std::to_string(k) + ", got " + l.gen.str());
    acc = series_mul(acc, letter_series(l.gen.a, l.exp, k, d, squarefree));
  }
  return acc;
}

}  // namespace mubar
