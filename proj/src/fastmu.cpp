#include "mubar/fastmu.hpp"

#include <stdexcept>

#include "mubar/magnus.hpp"

namespace mubar {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("fastmu: int64 overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("fastmu: int64 overflow");
  return r;
}

}  // namespace

FastMu::FastMu(int num_strands, int max_degree)
    : k_(num_strands), d_(max_degree) {
  if (k_ < 1 || k_ > 15 || d_ < 0 || d_ > k_)
    throw std::invalid_argument("fastmu: bad dimensions");
  // Squarefree monomials, length-major then lex, matching MagnusSeries.
  std::vector<std::vector<int>> frontier{{}};
  monomials_.push_back({});
  for (int len = 1; len <= d_; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& seq : frontier) {
      for (int i = 1; i <= k_; ++i) {
        bool used = false;
        for (int j : seq) used |= (j == i);
        if (used) continue;
        auto t = seq;
        t.push_back(i);
        monomials_.push_back(t);
        next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  for (int id = 0; id < static_cast<int>(monomials_.size()); ++id)
    ids_.emplace(mono_from(monomials_[id]), id);
  for (int id = 0; id < static_cast<int>(monomials_.size()); ++id) {
    const auto& seq = monomials_[id];
    const int n = static_cast<int>(seq.size());
    for (int cut = 0; cut <= n; ++cut) {
      const std::span<const int> left(seq.data(), cut);
      const std::span<const int> right(seq.data() + cut, n - cut);
      splits_.push_back(Split{id, mono_id(left), mono_id(right)});
    }
  }
}

int FastMu::mono_id(std::span<const int> seq) const {
  auto it = ids_.find(mono_from(seq));
  if (it == ids_.end())
    throw std::invalid_argument("fastmu: monomial out of range");
  return it->second;
}

long long* FastMu::series(State& s, int idx) const {
  return s.data.data() + static_cast<std::size_t>(idx) * monomials_.size();
}

const long long* FastMu::series(const State& s, int idx) const {
  return s.data.data() + static_cast<std::size_t>(idx) * monomials_.size();
}

FastMu::State FastMu::initial() const {
  State s;
  s.data.assign(static_cast<std::size_t>(3 * k_) * monomials_.size(), 0);
  for (int t = 1; t <= k_; ++t) {
    series(s, lam_index(t))[0] = 1;
    long long* m = series(s, mer_index(t));
    long long* mi = series(s, inv_index(t));
    m[0] = 1;
    mi[0] = 1;
    if (d_ >= 1) {
      const int var = mono_id(std::vector<int>{t});
      m[var] = 1;
      mi[var] = -1;
    }
  }
  return s;
}

void FastMu::mul_into(const State& s, int a, int b,
                      std::vector<long long>& out) const {
  const long long* pa = series(s, a);
  const long long* pb = series(s, b);
  out.assign(monomials_.size(), 0);
  for (const Split& sp : splits_) {
    const long long l = pa[sp.left];
    if (l == 0) continue;
    const long long r = pb[sp.right];
    if (r == 0) continue;
    out[sp.result] = checked_add(out[sp.result], checked_mul(l, r));
  }
}

void FastMu::apply(State& s, const CrossingEvent& e) const {
  if (e.under < 1 || e.under > k_ || e.over < 1 || e.over > k_ ||
      e.under == e.over || (e.sign != 1 && e.sign != -1))
    throw std::invalid_argument("fastmu: bad event");
  const int mo = e.sign > 0 ? mer_index(e.over) : inv_index(e.over);
  const int moinv = e.sign > 0 ? inv_index(e.over) : mer_index(e.over);
  std::vector<long long> tmp, tmp2;
  // lam_u <- lam_u * M_o^sign
  mul_into(s, lam_index(e.under), mo, tmp);
  std::copy(tmp.begin(), tmp.end(), series(s, lam_index(e.under)));
  // M_u <- M_o^sign * M_u * M_o^-sign, and the same conjugation of the
  // inverse.
  for (int which : {mer_index(e.under), inv_index(e.under)}) {
    mul_into(s, mo, which, tmp);
    std::copy(tmp.begin(), tmp.end(), series(s, which));
    mul_into(s, which, moinv, tmp2);
    std::copy(tmp2.begin(), tmp2.end(), series(s, which));
  }
}

void FastMu::apply(State& s, const EventList& events) const {
  if (events.num_strands() != k_)
    throw std::invalid_argument("fastmu: strand count mismatch");
  for (const CrossingEvent& e : events.events()) apply(s, e);
}

long long FastMu::coefficient(const State& s, int strand,
                              std::span<const int> prefix) const {
  if (strand < 1 || strand > k_)
    throw std::invalid_argument("fastmu: bad strand");
  return series(s, lam_index(strand))[mono_id(prefix)];
}

long long FastMu::mu(const EventList& events, const MuIndex& idx) const {
  idx.validate(k_);
  if (static_cast<int>(idx.prefix.size()) > d_)
    throw std::invalid_argument("fastmu: index longer than max degree");
  State s = initial();
  apply(s, events);
  return coefficient(s, idx.target, idx.prefix);
}

}  // namespace mubar
