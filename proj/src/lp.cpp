#include "fmlim/lp.hpp"

#include "fmlim/error.hpp"

namespace fmlim {

std::optional<std::vector<Rational>> solve_feasibility(std::size_t columns, const std::vector<LinearRow>& rows) {
  const std::size_t m = rows.size();
  const std::size_t width = columns + m;  // original columns, then one artificial per row
  // Tableau rows: coefficients followed by the right-hand side.
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational sign = rows[i].rhs < 0 ? -1 : 1;
    for (const auto& [c, a] : rows[i].terms) {
      if (c >= columns) fail(ErrorCode::InvalidArgument, "constraint refers to an unknown column");
      t[i][c] += sign * a;
    }
    t[i][columns + i] = 1;
    t[i][width] = sign * rows[i].rhs;
    basis[i] = columns + i;
  }
  // Phase I objective: minimise the sum of artificials, stored as reduced costs.
  std::vector<Rational> cost(width + 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c <= width; ++c)
      if (c < columns || c == width) cost[c] -= t[i][c];

  auto pivot = [&](std::size_t row, std::size_t col) {
    const Rational p = t[row][col];
    for (auto& x : t[row]) x /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || t[i][col] == 0) continue;
      const Rational factor = t[i][col];
      for (std::size_t c = 0; c <= width; ++c)
        if (t[row][c] != 0) t[i][c] -= factor * t[row][c];
    }
    if (cost[col] != 0) {
      const Rational factor = cost[col];
      for (std::size_t c = 0; c <= width; ++c)
        if (t[row][c] != 0) cost[c] -= factor * t[row][c];
    }
    basis[row] = col;
  };

  for (;;) {
    std::size_t enter = width;
    for (std::size_t c = 0; c < width; ++c)
      if (cost[c] < 0) {
        enter = c;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded cannot happen in phase I
    pivot(leave, enter);
  }
  if (cost[width] != 0) return std::nullopt;

  std::vector<Rational> x(columns);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < columns) x[basis[i]] = t[i][width];
  return x;
}

}  // namespace fmlim
