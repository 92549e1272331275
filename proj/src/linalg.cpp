#include "mubar/linalg.hpp"

#include <cstddef>

namespace mubar {

namespace {

// Row-reduce in place; returns pivot column per pivot row.
std::vector<std::size_t> eliminate(std::vector<std::vector<Rat>>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    const Rat inv = a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<std::vector<Rat>> solve_rational(
    std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  auto pivots = eliminate(a);
  // Inconsistent iff some pivot landed in the augmented column.
  for (auto c : pivots)
    if (c == cols) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
  return x;
}

int rank_rational(std::vector<std::vector<Rat>> a) {
  return static_cast<int>(eliminate(a).size());
}

}  // namespace mubar
