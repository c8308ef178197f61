#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kolchin/scalars.hpp"

namespace kolchin {

using Vector = std::vector<Scalar>;

// Dense matrix over Q(t1..tk), row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vector>& rows, int cols);
  static Matrix from_columns(const std::vector<Vector>& cols, int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Scalar& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  Vector row(int i) const;
  Vector column(int j) const;

  bool is_zero() const;
  Matrix transpose() const;
  Matrix map(const std::function<Scalar(const Scalar&)>& fn) const;

  Matrix operator-() const;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& c, const Matrix& a);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  // Rows as bracketed lists: [[1, 0], [t1, -1/2]].
  std::string to_string() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

struct RowEchelon {
  Matrix reduced;           // reduced row echelon form
  std::vector<int> pivots;  // pivot column of each nonzero row
};
RowEchelon rref(const Matrix& m);
int rank(const Matrix& m);
Scalar determinant(const Matrix& m);
// Throws PreconditionError for singular or non-square input.
Matrix inverse(const Matrix& m);
// Basis of {v : m v = 0}, one vector per free column, each scaled so its
// first nonzero entry is 1.
std::vector<Vector> kernel(const Matrix& m);
// Basis of the row space in reduced echelon form.
std::vector<Vector> row_space(const std::vector<Vector>& vectors, int dim);
// span(a) is contained in span(b).
bool span_contains(const std::vector<Vector>& b, const std::vector<Vector>& a, int dim);

std::string vector_to_string(const Vector& v);

}  // namespace kolchin
