#pragma once

#include <cstddef>
#include <vector>

#include "cotol/rational.hpp"

namespace cotol::lp {

enum class Status { Optimal, Unbounded, Infeasible };

template <class T>
struct Result {
  Status status = Status::Infeasible;
  T value{};
  std::vector<T> x;
};

template <class T>
struct Epsilon;

template <>
struct Epsilon<Rational> {
  static Rational value() { return Rational(0); }
};

template <>
struct Epsilon<Real> {
  static Real value() { return 1e-13L; }
};

/// Dense two-phase tableau simplex for
///
///     maximize c.x  subject to  A x <= b,  x >= 0,
///
/// with b of any sign. Bland's rule is used for both entering and leaving
/// choices, so exact (Rational) runs terminate on degenerate problems; the
/// families of constraints built in this library are heavily degenerate.
template <class T>
class Simplex {
 public:
  Simplex(const std::vector<std::vector<T>>& a, const std::vector<T>& b, const std::vector<T>& c)
      : m_(b.size()), n_(c.size()), table_(m_ + 2, std::vector<T>(n_ + 2)), basic_(m_),
        nonbasic_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) table_[i][j] = a[i][j];
      basic_[i] = static_cast<long>(n_ + i);
      table_[i][n_] = T(-1);
      table_[i][n_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      table_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    table_[m_ + 1][n_] = T(1);
  }

  Result<T> solve() {
    Result<T> result;
    const T eps = Epsilon<T>::value();
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (table_[i][n_ + 1] < table_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && table_[r][n_ + 1] < -eps) {
      pivot(r, n_);
      if (!run(1) || table_[m_ + 1][n_ + 1] < -eps) {
        result.status = Status::Infeasible;
        return result;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        std::size_t s = 0;
        for (std::size_t j = 1; j <= n_; ++j) {
          if (table_[i][j] < table_[i][s] ||
              (table_[i][j] == table_[i][s] && nonbasic_[j] < nonbasic_[s])) {
            s = j;
          }
        }
        pivot(i, s);
      }
    }
    if (!run(2)) {
      result.status = Status::Unbounded;
      return result;
    }
    result.status = Status::Optimal;
    result.x.assign(n_, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_) {
        result.x[static_cast<std::size_t>(basic_[i])] = table_[i][n_ + 1];
      }
    }
    result.value = table_[m_][n_ + 1];
    return result;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const T inv = T(1) / table_[r][s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || table_[i][s] == T(0)) continue;
      const T factor = table_[i][s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j) {
        if (j != s) table_[i][j] -= table_[r][j] * factor;
      }
      table_[i][s] = -factor;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j) {
      if (j != s) table_[r][j] *= inv;
    }
    table_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool run(int phase) {
    const T eps = Epsilon<T>::value();
    const std::size_t row = phase == 1 ? m_ + 1 : m_;
    for (;;) {
      long s = -1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasic_[j] == -1) continue;
        if (table_[row][j] < -eps && (s < 0 || nonbasic_[j] < nonbasic_[static_cast<std::size_t>(s)])) {
          s = static_cast<long>(j);
        }
      }
      if (s < 0) return true;
      const auto col = static_cast<std::size_t>(s);
      long r = -1;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!(table_[i][col] > eps)) continue;
        if (r < 0) {
          r = static_cast<long>(i);
          continue;
        }
        const auto best = static_cast<std::size_t>(r);
        const T lhs = table_[i][n_ + 1] * table_[best][col];
        const T rhs = table_[best][n_ + 1] * table_[i][col];
        if (lhs < rhs || (lhs == rhs && basic_[i] < basic_[best])) r = static_cast<long>(i);
      }
      if (r < 0) return false;
      pivot(static_cast<std::size_t>(r), col);
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<T>> table_;
  std::vector<long> basic_;
  std::vector<long> nonbasic_;
};

template <class T>
Result<T> maximize(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                   const std::vector<T>& c) {
  return Simplex<T>(a, b, c).solve();
}

}  // namespace cotol::lp
