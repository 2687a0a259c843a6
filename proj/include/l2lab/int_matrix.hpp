#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace l2lab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

/// Natural log of a positive big integer, safe far beyond double range.
inline double log_int(const Int& n) {
  if (n <= 0) throw std::invalid_argument("log_int: argument must be positive");
  unsigned bits = boost::multiprecision::msb(n);
  if (bits <= 900) return std::log(static_cast<double>(n));
  unsigned shift = bits - 52;
  Int mant = n >> shift;
  return std::log(static_cast<double>(mant)) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_rat(const Rat& q) {
  if (q <= 0) throw std::invalid_argument("log_rat: argument must be positive");
  return log_int(rat_num(q)) - log_int(rat_den(q));
}

/// Dense matrix over Z with arbitrary-precision entries, row-major.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  bool is_zero() const {
    for (const auto& v : data_) if (v != 0) return false;
    return true;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& b) const {
    if (cols_ != b.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& aik = (*this)(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Int& bkj = b(k, j);
          if (bkj != 0) c(i, j) += aik * bkj;
        }
      }
    return c;
  }

  IntMatrix operator+(const IntMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw std::invalid_argument("IntMatrix: shape mismatch in sum");
    IntMatrix c(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = data_[i] + b.data_[i];
    return c;
  }

  IntMatrix operator-(const IntMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw std::invalid_argument("IntMatrix: shape mismatch in difference");
    IntMatrix c(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = data_[i] - b.data_[i];
    return c;
  }

  std::vector<Int> column(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "\n[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << "]";
    }
    return os.str();
  }

private:
  std::size_t rows_, cols_;
  std::vector<Int> data_;
};

/// Dense matrix over Q, same layout.
class RatMatrix {
public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  explicit RatMatrix(const IntMatrix& m) : rows_(m.rows()), cols_(m.cols()), data_(rows_ * cols_) {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rat(m(i, j));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Rat> data_;
};

inline IntMatrix mat_pow(IntMatrix base, unsigned long long e) {
  if (base.rows() != base.cols()) throw std::invalid_argument("mat_pow: non-square");
  IntMatrix acc = IntMatrix::identity(base.rows());
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

/// Determinant by fraction-free (Bareiss) elimination. Exact.
inline Int det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        a(i, j) = t / prev;  // exact by Sylvester's identity
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

}  // namespace l2lab
