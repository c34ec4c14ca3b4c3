#pragma once

#include <vector>

#include "twr/types.hpp"

namespace twr {

// Dense two-phase tableau simplex: maximize c.x subject to rows of
// A x (<= | ==) b with x >= 0 and b >= 0. T is double (Dantzig pivoting with a
// Bland fallback against cycling) or Rat (Bland throughout, exact).
enum class RowRel { Le, Eq };

template <typename T>
struct SimplexProblem {
  int nvars = 0;
  std::vector<T> c;
  std::vector<std::vector<T>> rows;  // each of size nvars
  std::vector<T> rhs;
  std::vector<RowRel> rel;

  void add_row(std::vector<T> a, RowRel r, T b) {
    rows.push_back(std::move(a));
    rel.push_back(r);
    rhs.push_back(std::move(b));
  }
};

template <typename T>
struct SimplexResult {
  bool feasible = false;
  T objective{};
  std::vector<T> solution;
};

template <typename T>
class SimplexSolver {
 public:
  explicit SimplexSolver(const SimplexProblem<T>& p) : p_(p) {}

  SimplexResult<T> solve() {
    build();
    // Phase 1: maximize -(sum of artificials). Canonicalize the objective row
    // against the basic artificials (cost -1 each).
    if (nart_ > 0) {
      obj_.assign(ncols_ + 1, T(0));
      for (int j = art0_; j < ncols_; ++j) obj_[j] = T(-1);
      for (int i = 0; i < nrows_; ++i)
        if (basis_[i] >= art0_)
          for (int j = 0; j <= ncols_; ++j) obj_[j] += tab_[i][j];
      run(true);
      if (obj_[ncols_] > tol()) return {};  // artificial residue: infeasible
      drive_out_artificials();
    }
    // Phase 2.
    obj_.assign(ncols_ + 1, T(0));
    for (int j = 0; j < p_.nvars; ++j) obj_[j] = p_.c[j];
    for (int i = 0; i < nrows_; ++i) {
      if (basis_[i] >= p_.nvars) continue;
      T coef = obj_[basis_[i]];
      if (is_zero(coef)) continue;
      for (int j = 0; j <= ncols_; ++j) obj_[j] -= coef * tab_[i][j];
    }
    run(false);
    SimplexResult<T> out;
    out.feasible = true;
    out.solution.assign(p_.nvars, T(0));
    for (int i = 0; i < nrows_; ++i)
      if (basis_[i] < p_.nvars) out.solution[basis_[i]] = tab_[i][ncols_];
    out.objective = T(0);
    for (int j = 0; j < p_.nvars; ++j) out.objective += p_.c[j] * out.solution[j];
    return out;
  }

 private:
  static T tol() {
    if constexpr (std::is_same_v<T, double>) return 1e-9;
    return T(0);
  }
  static bool is_zero(const T& v) { return v <= tol() && v >= -tol(); }
  static bool less(const T& a, const T& b) { return a < b - tol(); }

  void build() {
    nrows_ = static_cast<int>(p_.rows.size());
    int nslack = 0;
    for (auto r : p_.rel)
      if (r == RowRel::Le) ++nslack;
    // Every row gets an artificial; slack columns double as initial basis for
    // Le rows, artificials for the rest.
    slack0_ = p_.nvars;
    art0_ = p_.nvars + nslack;
    nart_ = 0;
    basis_.assign(nrows_, -1);
    std::vector<int> art_col(nrows_, -1);
    int s = 0;
    for (int i = 0; i < nrows_; ++i) {
      if (p_.rel[i] == RowRel::Le) {
        basis_[i] = slack0_ + s++;
      } else {
        art_col[i] = art0_ + nart_;
        basis_[i] = art0_ + nart_++;
      }
    }
    ncols_ = art0_ + nart_;
    tab_.assign(nrows_, std::vector<T>(ncols_ + 1, T(0)));
    for (int i = 0; i < nrows_; ++i) {
      require(p_.rhs[i] >= T(0), "simplex rhs must be nonnegative");
      for (int j = 0; j < p_.nvars; ++j) tab_[i][j] = p_.rows[i][j];
      tab_[i][ncols_] = p_.rhs[i];
      if (p_.rel[i] == RowRel::Le) tab_[i][basis_[i]] = T(1);
      if (art_col[i] >= 0) tab_[i][art_col[i]] = T(1);
    }
  }

  void pivot(int row, int col) {
    T inv = tab_[row][col];
    for (int j = 0; j <= ncols_; ++j) tab_[row][j] /= inv;
    for (int i = 0; i < nrows_; ++i) {
      if (i == row) continue;
      T f = tab_[i][col];
      if (is_zero(f)) continue;
      for (int j = 0; j <= ncols_; ++j) tab_[i][j] -= f * tab_[row][j];
      tab_[i][col] = T(0);
    }
    T f = obj_[col];
    if (!is_zero(f))
      for (int j = 0; j <= ncols_; ++j) obj_[j] -= f * tab_[row][j];
    basis_[row] = col;
  }

  // One simplex loop on the current objective row. In phase 1 artificials may
  // re-enter only while phase1 is true.
  void run(bool phase1) {
    long long iters = 0;
    long long bland_after = 2000 + 20LL * (nrows_ + ncols_);
    for (;;) {
      ++iters;
      bool bland = !std::is_same_v<T, double> || iters > bland_after;
      int col = -1;
      T best{};
      int limit = phase1 ? ncols_ : art0_;
      for (int j = 0; j < limit; ++j) {
        if (obj_[j] <= tol()) continue;
        if (bland) { col = j; break; }
        if (col < 0 || obj_[j] > best) { col = j; best = obj_[j]; }
      }
      if (col < 0) return;
      int row = -1;
      T ratio{};
      for (int i = 0; i < nrows_; ++i) {
        if (tab_[i][col] <= tol()) continue;
        T r = tab_[i][ncols_] / tab_[i][col];
        if (row < 0 || r < ratio || (r == ratio && basis_[i] < basis_[row])) {
          row = i;
          ratio = r;
        }
      }
      audit(row >= 0, "unbounded linear program");
      pivot(row, col);
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < nrows_; ++i) {
      if (basis_[i] < art0_) continue;
      int col = -1;
      for (int j = 0; j < art0_; ++j)
        if (!is_zero(tab_[i][j])) { col = j; break; }
      if (col >= 0) pivot(i, col);
      // else: redundant row; the artificial stays basic at value 0.
    }
  }

  const SimplexProblem<T>& p_;
  int nrows_ = 0, ncols_ = 0, slack0_ = 0, art0_ = 0, nart_ = 0;
  std::vector<std::vector<T>> tab_;
  std::vector<T> obj_;
  std::vector<int> basis_;
};

template <typename T>
SimplexResult<T> solve_lp(const SimplexProblem<T>& p) {
  return SimplexSolver<T>(p).solve();
}

}  // namespace twr
