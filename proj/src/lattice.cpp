#include "vallab/lattice.hpp"

#include <utility>

namespace vallab::lattice {

bool is_zero(const IntVec& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

std::size_t pivot(const IntVec& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] != 0) return i;
  }
  return row.size();
}

IntMat hnf(IntMat rows) {
  IntMat out;
  if (rows.empty()) return out;
  const std::size_t cols = rows.front().size();
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    // Euclid on column c among rows[top..].
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) {
          best = r;
        }
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[top][c].get_mpz_t());
        for (std::size_t k = c; k < cols; ++k) rows[r][k] -= q * rows[top][k];
        if (rows[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][c] == 0) continue;
    if (rows[top][c] < 0) {
      for (auto& x : rows[top]) x = -x;
    }
    for (std::size_t r = 0; r < top; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[top][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= q * rows[top][k];
    }
    ++top;
  }
  for (std::size_t r = 0; r < top; ++r) out.push_back(std::move(rows[r]));
  return out;
}

IntVec reduce(IntVec v, const IntMat& basis) {
  for (const auto& row : basis) {
    const std::size_t c = pivot(row);
    if (c >= v.size() || v[c] == 0) continue;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v[c].get_mpz_t(), row[c].get_mpz_t());
    for (std::size_t k = c; k < v.size(); ++k) v[k] -= q * row[k];
  }
  return v;
}

Integer pivot_product(const IntMat& basis) {
  Integer d = 1;
  for (const auto& row : basis) d *= row[pivot(row)];
  return d;
}

}  // namespace vallab::lattice
