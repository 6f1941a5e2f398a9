#include "linear.hpp"

#include <algorithm>

namespace fps::detail {

namespace {

int cost(const Field& f) {
  return f.num().total_degree() + f.den().total_degree() + static_cast<int>(f.num().terms().size());
}

/// Reduced row echelon form over the first `cols` columns, in place.
std::vector<std::size_t> reduce(std::vector<std::vector<Field>>& m, std::size_t cols, std::size_t width) {
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t best = m.size();
    for (std::size_t r = row; r < m.size(); ++r) {
      if (m[r][c].is_zero()) continue;
      if (best == m.size() || cost(m[r][c]) < cost(m[best][c])) best = r;
    }
    if (best == m.size()) continue;
    std::swap(m[row], m[best]);
    const Field inv = Field(1) / m[row][c];
    for (std::size_t k = c; k < width; ++k) m[row][k] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      const Field f = m[r][c];
      for (std::size_t k = c; k < width; ++k) {
        if (!m[row][k].is_zero()) m[r][k] -= f * m[row][k];
      }
    }
    pivot_col.push_back(c);
    ++row;
  }
  return pivot_col;
}

}  // namespace

std::optional<std::vector<Field>> solve_linear(std::vector<std::vector<Field>> m, std::size_t cols) {
  const std::vector<std::size_t> pivot_col = reduce(m, cols, cols + 1);
  for (std::size_t r = pivot_col.size(); r < m.size(); ++r) {
    if (!m[r][cols].is_zero()) return std::nullopt;
  }
  std::vector<Field> x(cols);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = m[r][cols];
  return x;
}

std::vector<std::vector<Field>> kernel_basis(std::vector<std::vector<Field>> m, std::size_t cols) {
  const std::vector<std::size_t> pivot_col = reduce(m, cols, cols);
  std::vector<bool> is_pivot(cols);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Field>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Field> x(cols);
    x[free] = Field(1);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -m[r][free];
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<std::vector<Field>> kernel_vector(std::vector<std::vector<Field>> m, std::size_t cols) {
  auto b = kernel_basis(std::move(m), cols);
  if (b.empty()) return std::nullopt;
  return b.back();
}

std::vector<std::vector<Field>> identity_rows(const std::vector<Field>& cols, const std::string& var) {
  Poly l(1);
  for (const auto& c : cols) {
    if (!c.is_zero()) l = lcm(l, c.den());
  }
  std::vector<std::vector<Field>> coef(cols.size());
  std::size_t top = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i].is_zero()) continue;
    const Field w = cols[i] * Field(l);
    for (const Poly& p : w.num().coefficients_in(var)) coef[i].push_back(Field(p, w.den()));
    top = std::max(top, coef[i].size());
  }
  std::vector<std::vector<Field>> rows;
  for (std::size_t p = 0; p < top; ++p) {
    std::vector<Field> row(cols.size());
    bool any = false;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (p < coef[i].size() && !coef[i][p].is_zero()) {
        row[i] = coef[i][p];
        any = true;
      }
    }
    if (any) rows.push_back(std::move(row));
  }
  return rows;
}


}  // namespace fps::detail
