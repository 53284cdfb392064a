#ifndef ULPA_LINALG_HPP
#define ULPA_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "ulpa/scalar.hpp"

namespace ulpa {

using Vec = std::vector<Scalar>;

// Dense row-major matrix over one field.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<Scalar> a;

  static Mat zero(const FieldDescriptor& f, std::size_t r, std::size_t c);
  static Mat identity(const FieldDescriptor& f, std::size_t n);

  Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat transpose() const;
  Mat scaled(const Scalar& s) const;
  bool is_zero() const;
  bool operator==(const Mat&) const = default;
};

// In-place reduction to reduced row echelon form; returns the pivot column of
// each nonzero row.
std::vector<std::size_t> rref(Mat& m);
std::size_t rank(Mat m);
// Basis of {x : m x = 0}.
std::vector<Vec> nullspace(const Mat& m);
// One solution of m x = b, if any.
std::optional<Vec> solve(const Mat& m, const Vec& b);
// X with m X = identity; exists iff m has full row rank.
std::optional<Mat> right_inverse(const Mat& m);
// X with X m = identity; exists iff m has full column rank.
std::optional<Mat> left_inverse(const Mat& m);

// A linear subspace held as a reduced-echelon row basis, so equal subspaces
// compare equal componentwise.
struct Subspace {
  FieldDescriptor field;
  std::size_t ambient = 0;
  std::vector<Vec> rows;  // nonzero, reduced echelon, pivots increasing

  static Subspace from_vectors(const FieldDescriptor& f, std::size_t ambient,
                               const std::vector<Vec>& vectors);
  // Trusts that `rows` is already a reduced echelon basis (checked cheaply).
  static Subspace from_rref_rows(const FieldDescriptor& f, std::size_t ambient,
                                 std::vector<Vec> rows);

  std::size_t dim() const { return rows.size(); }
  bool contains(const Vec& v) const;
  bool contains_all(const Subspace& other) const;
  bool operator==(const Subspace&) const = default;
};

}  // namespace ulpa

#endif
