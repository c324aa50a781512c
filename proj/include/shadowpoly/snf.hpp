#pragma once

// Exact integer linear algebra: Smith normal form over arbitrary-precision
// integers. Two engines share the arithmetic but not the data layout:
//  - smith_normal_form: dense, tracks unimodular U, V (u*m*v = d);
//  - SparseEliminator: rank + elementary divisors only, built for the large
//    sparse boundary matrices (unit-pivot peeling, then general elimination).
// No floating point anywhere.

#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "shadowpoly/graph.hpp"

namespace shadowpoly {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Dense matrices

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<BigInt> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  BigInt& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const BigInt& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * cols + c];
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline Matrix mul(const Matrix& x, const Matrix& y) {
  require(x.cols == y.rows, Errc::Internal, "matrix dimension mismatch");
  Matrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const BigInt& v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        if (y.at(k, j) != 0) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

// Fraction-free Gaussian elimination; exact integer determinant.
inline BigInt determinant(Matrix m) {
  require(m.rows == m.cols, Errc::Internal, "determinant of non-square");
  int n = m.rows;
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        BigInt num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = num / prev;  // divides exactly (Bareiss)
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

struct SmithDecomposition {
  Matrix u;  // rows x rows, unimodular
  Matrix d;  // diagonal, d1 | d2 | ...
  Matrix v;  // cols x cols, unimodular
};

// u*m*v = d with d diagonal, nonnegative, divisibility-chained.
inline SmithDecomposition smith_normal_form(const Matrix& input) {
  Matrix m = input;
  Matrix u = Matrix::identity(m.rows);
  Matrix v = Matrix::identity(m.cols);

  auto row_swap = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  };
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
  };
  auto row_addmul = [&](int dst, int src, const BigInt& k) {
    for (int c = 0; c < m.cols; ++c) m.at(dst, c) += k * m.at(src, c);
    for (int c = 0; c < u.cols; ++c) u.at(dst, c) += k * u.at(src, c);
  };
  auto col_addmul = [&](int dst, int src, const BigInt& k) {
    for (int r = 0; r < m.rows; ++r) m.at(r, dst) += k * m.at(r, src);
    for (int r = 0; r < v.rows; ++r) v.at(r, dst) += k * v.at(r, src);
  };
  auto row_negate = [&](int i) {
    for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
  };

  int t = 0;
  const int lim = std::min(m.rows, m.cols);
  for (; t < lim; ++t) {
    // Smallest nonzero entry of the remaining submatrix as pivot seed.
    int pr = -1, pc = -1;
    for (int i = t; i < m.rows; ++i)
      for (int j = t; j < m.cols; ++j) {
        if (m.at(i, j) == 0) continue;
        if (pr < 0 || abs(m.at(i, j)) < abs(m.at(pr, pc))) {
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;
    row_swap(t, pr);
    col_swap(t, pc);

    for (;;) {
      bool dirty = false;
      for (int i = t + 1; i < m.rows; ++i) {
        if (m.at(i, t) == 0) continue;
        BigInt q = m.at(i, t) / m.at(t, t);
        row_addmul(i, t, -q);
        if (m.at(i, t) != 0) {
          row_swap(t, i);  // smaller remainder becomes the pivot
          dirty = true;
        }
      }
      for (int j = t + 1; j < m.cols; ++j) {
        if (m.at(t, j) == 0) continue;
        BigInt q = m.at(t, j) / m.at(t, t);
        col_addmul(j, t, -q);
        if (m.at(t, j) != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
      if (!dirty) break;
    }
    if (m.at(t, t) < 0) row_negate(t);
  }

  // Divisibility chain on the diagonal: diag(a, b) ~ diag(gcd, lcm).
  for (bool stable = false; !stable;) {
    stable = true;
    for (int i = 0; i + 1 < t; ++i) {
      BigInt a = m.at(i, i), b = m.at(i + 1, i + 1);
      if (a == 0 || b % a == 0) continue;
      stable = false;
      // Bring b next to a, then rerun the local elimination.
      col_addmul(i, i + 1, 1);
      for (;;) {
        bool dirty = false;
        if (m.at(i + 1, i) != 0) {
          BigInt q = m.at(i + 1, i) / m.at(i, i);
          row_addmul(i + 1, i, -q);
          if (m.at(i + 1, i) != 0) {
            row_swap(i, i + 1);
            dirty = true;
          }
        }
        if (m.at(i, i + 1) != 0) {
          BigInt q = m.at(i, i + 1) / m.at(i, i);
          col_addmul(i + 1, i, -q);
          if (m.at(i, i + 1) != 0) {
            col_swap(i, i + 1);
            dirty = true;
          }
        }
        if (!dirty) break;
      }
      if (m.at(i, i) < 0) row_negate(i);
      if (m.at(i + 1, i + 1) < 0) row_negate(i + 1);
    }
  }

  SmithDecomposition out{std::move(u), std::move(m), std::move(v)};
  if (checked_mode().load()) {
    require(mul(mul(out.u, input), out.v) == out.d, Errc::Internal,
            "SNF postcondition u*m*v != d");
    BigInt du = determinant(out.u), dv = determinant(out.v);
    require(du == 1 || du == -1, Errc::Internal, "SNF: u not unimodular");
    require(dv == 1 || dv == -1, Errc::Internal, "SNF: v not unimodular");
    for (int i = 0; i + 1 < std::min(out.d.rows, out.d.cols); ++i) {
      const BigInt& a = out.d.at(i, i);
      const BigInt& b = out.d.at(i + 1, i + 1);
      require(a >= 0 && (a != 0 || b == 0) && (a == 0 || b % a == 0),
              Errc::Internal, "SNF: diagonal not divisibility-chained");
    }
  }
  return out;
}

inline std::vector<BigInt> snf_divisors(const Matrix& m) {
  SmithDecomposition s = smith_normal_form(m);
  std::vector<BigInt> out;
  for (int i = 0; i < std::min(s.d.rows, s.d.cols); ++i)
    if (s.d.at(i, i) != 0) out.push_back(s.d.at(i, i));
  return out;
}

// ---------------------------------------------------------------------------
// Sparse rank + divisors

struct SparseEntry {
  int row;
  int col;
  BigInt value;
};

struct SmithInvariants {
  int rank = 0;
  std::vector<long long> torsion;  // elementary divisors > 1, ascending
};

// Diagonalizes by row/column operations; the divisor chain is normalized
// afterwards (a diagonal matrix diag(a,b) is equivalent to diag(gcd,lcm)).
class SparseEliminator {
 public:
  SparseEliminator(int rows, int cols, const std::vector<SparseEntry>& entries)
      : rows_(rows), cols_(cols), row_(rows), col_rows_(cols) {
    for (const auto& e : entries) {
      if (e.value == 0) continue;
      BigInt& v = row_[e.row][e.col];
      v += e.value;
      if (v == 0) row_[e.row].erase(e.col);
    }
    for (int r = 0; r < rows_; ++r)
      for (const auto& [c, v] : row_[r]) col_rows_[c].insert(r);
  }

  SmithInvariants run() {
    peel_units();
    eliminate_rest();

    SmithInvariants out;
    out.rank = static_cast<int>(diagonal_.size());
    // gcd/lcm sweep; entries equal to 1 are inert.
    std::vector<BigInt> vals;
    for (BigInt& d : diagonal_) {
      if (d < 0) d = -d;
      if (d != 1) vals.push_back(d);
    }
    for (bool stable = false; !stable;) {
      stable = true;
      for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j) {
          BigInt g = boost::multiprecision::gcd(vals[i], vals[j]);
          if (g == vals[i]) continue;
          BigInt l = vals[i] / g * vals[j];
          vals[i] = g;
          vals[j] = l;
          stable = false;
        }
    }
    std::sort(vals.begin(), vals.end());
    for (const BigInt& v : vals)
      if (v > 1) out.torsion.push_back(static_cast<long long>(v));
    return out;
  }

 private:
  void erase_entry(int r, int c) {
    row_[r].erase(c);
    col_rows_[c].erase(r);
  }

  void set_entry(int r, int c, const BigInt& v) {
    if (v == 0) {
      erase_entry(r, c);
      return;
    }
    row_[r][c] = v;
    col_rows_[c].insert(r);
  }

  // row[dst] += k * row[src]
  void row_addmul(int dst, int src, const BigInt& k) {
    for (const auto& [c, v] : row_[src]) {
      auto it = row_[dst].find(c);
      BigInt nv = (it == row_[dst].end() ? BigInt(0) : it->second) + k * v;
      set_entry(dst, c, nv);
    }
  }

  // Deletes row r and column c of a +-1 pivot after its row or column is
  // already a singleton; no arithmetic is needed beyond entry removal when
  // the pivot is alone in its row (clearing the column just zeroes entries).
  void peel_units() {
    std::vector<int> row_q, col_q;
    for (int r = 0; r < rows_; ++r)
      if (row_[r].size() == 1) row_q.push_back(r);
    for (int c = 0; c < cols_; ++c)
      if (col_rows_[c].size() == 1) col_q.push_back(c);

    auto unit = [](const BigInt& v) { return v == 1 || v == -1; };

    while (!row_q.empty() || !col_q.empty()) {
      if (!row_q.empty()) {
        int r = row_q.back();
        row_q.pop_back();
        if (row_[r].size() != 1) continue;
        auto [c, v] = *row_[r].begin();
        if (!unit(v)) continue;
        diagonal_.push_back(v);
        // Pivot is alone in its row, so clearing column c only zeroes the
        // other entries of that column.
        std::vector<int> affected(col_rows_[c].begin(), col_rows_[c].end());
        for (int r2 : affected)
          if (r2 != r) erase_entry(r2, c);
        erase_entry(r, c);
        for (int r2 : affected)
          if (r2 != r && row_[r2].size() == 1) row_q.push_back(r2);
      } else {
        int c = col_q.back();
        col_q.pop_back();
        if (col_rows_[c].size() != 1) continue;
        int r = *col_rows_[c].begin();
        auto it = row_[r].find(c);
        if (it == row_[r].end() || !unit(it->second)) continue;
        diagonal_.push_back(it->second);
        std::vector<int> cols_of_row;
        for (const auto& [c2, v2] : row_[r]) cols_of_row.push_back(c2);
        for (int c2 : cols_of_row) erase_entry(r, c2);
        for (int c2 : cols_of_row)
          if (c2 != c && col_rows_[c2].size() == 1) col_q.push_back(c2);
      }
    }
  }

  void eliminate_rest() {
    for (;;) {
      int pr = -1, pc = -1;
      BigInt best;
      for (int r = 0; r < rows_; ++r) {
        for (const auto& [c, v] : row_[r]) {
          BigInt av = abs(v);
          if (pr < 0 || av < best) {
            best = av;
            pr = r;
            pc = c;
            if (best == 1) break;
          }
        }
        if (pr >= 0 && best == 1) break;
      }
      if (pr < 0) return;

      for (;;) {
        bool dirty = false;
        // Clear column pc with row operations.
        std::vector<int> rows_in_col(col_rows_[pc].begin(),
                                     col_rows_[pc].end());
        for (int r2 : rows_in_col) {
          if (r2 == pr) continue;
          auto it2 = row_[r2].find(pc);
          if (it2 == row_[r2].end()) continue;
          BigInt q = it2->second / row_[pr].at(pc);
          if (q != 0) row_addmul(r2, pr, -q);
          auto it = row_[r2].find(pc);
          if (it != row_[r2].end()) {
            pr = r2;  // strictly smaller remainder takes over
            dirty = true;
            break;
          }
        }
        if (dirty) continue;
        // Clear row pr with column operations (as row ops on the transpose
        // pattern: subtract multiples of column pc from other columns).
        std::vector<std::pair<int, BigInt>> entries(row_[pr].begin(),
                                                    row_[pr].end());
        for (const auto& [c2, v2] : entries) {
          if (c2 == pc) continue;
          BigInt q = v2 / row_[pr].at(pc);
          if (q != 0) {
            // col c2 -= q * col pc
            std::vector<int> rows_pc(col_rows_[pc].begin(),
                                     col_rows_[pc].end());
            for (int r2 : rows_pc) {
              BigInt delta = -q * row_[r2].at(pc);
              auto it2 = row_[r2].find(c2);
              BigInt nv = (it2 == row_[r2].end() ? BigInt(0) : it2->second) +
                          delta;
              set_entry(r2, c2, nv);
            }
          }
          auto it = row_[pr].find(c2);
          if (it != row_[pr].end()) {
            pc = c2;
            dirty = true;
            break;
          }
        }
        if (!dirty) break;
      }

      diagonal_.push_back(row_[pr][pc]);
      std::vector<int> cols_of_row;
      for (const auto& [c2, v2] : row_[pr]) cols_of_row.push_back(c2);
      for (int c2 : cols_of_row) erase_entry(pr, c2);
    }
  }

  int rows_;
  int cols_;
  std::vector<std::map<int, BigInt>> row_;
  std::vector<std::set<int>> col_rows_;
  std::vector<BigInt> diagonal_;
};

inline SmithInvariants sparse_invariants(int rows, int cols,
                                         const std::vector<SparseEntry>& es) {
  return SparseEliminator(rows, cols, es).run();
}

}  // namespace shadowpoly
