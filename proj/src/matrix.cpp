#include "kolchin/matrix.hpp"

namespace kolchin {

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw PreconditionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, int cols) {
  Matrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows_; ++i) {
    if (static_cast<int>(rows[i].size()) != cols) throw PreconditionError("row has wrong length");
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, int rows) {
  return from_rows(cols, rows).transpose();
}

Vector Matrix::row(int i) const {
  return Vector(data_.begin() + static_cast<long>(i) * cols_, data_.begin() + static_cast<long>(i + 1) * cols_);
}

Vector Matrix::column(int j) const {
  Vector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::map(const std::function<Scalar(const Scalar&)>& fn) const {
  Matrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = fn(data_[k]);
  return r;
}

Matrix Matrix::operator-() const {
  return map([](const Scalar& x) { return -x; });
}

static void check_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("matrix shapes differ");
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b);
  Matrix r(a);
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b);
  Matrix r(a);
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
  Matrix r(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
    }
  return r;
}

Matrix operator*(const Scalar& c, const Matrix& a) {
  return a.map([&](const Scalar& x) { return c * x; });
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (static_cast<int>(v.size()) != a.cols_) throw PreconditionError("matrix-vector shape mismatch");
  Vector r(a.rows_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j)
      if (!a(i, j).is_zero() && !v[j].is_zero()) r[i] += a(i, j) * v[j];
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string vector_to_string(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + "]";
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) s += ", ";
    s += vector_to_string(row(i));
  }
  return s + "]";
}

RowEchelon rref(const Matrix& m) {
  RowEchelon out{m, {}};
  Matrix& a = out.reduced;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = -1;
    for (int i = r; i < a.rows(); ++i)
      if (!a(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Scalar inv = a(r, c).inverse();
    for (int j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Scalar f = a(i, c);
      for (int j = c; j < a.cols(); ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Scalar determinant(const Matrix& m) {
  if (!m.is_square()) throw PreconditionError("determinant of a non-square matrix");
  Matrix a(m);
  int n = a.rows();
  Scalar det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!a(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return Scalar();
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    Scalar inv = a(c, c).inverse();
    for (int i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      Scalar f = a(i, c) * inv;
      for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw PreconditionError("inverse of a non-square matrix");
  int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar(1);
  }
  RowEchelon e = rref(aug);
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1)
    throw PreconditionError("matrix is singular");
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::vector<Vector> kernel(const Matrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = Scalar(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(static_cast<int>(i), f);
    for (const auto& x : v)
      if (!x.is_zero()) {
        Scalar inv = x.inverse();
        for (auto& y : v) y *= inv;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> row_space(const std::vector<Vector>& vectors, int dim) {
  if (vectors.empty()) return {};
  RowEchelon e = rref(Matrix::from_rows(vectors, dim));
  std::vector<Vector> out;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) out.push_back(e.reduced.row(static_cast<int>(i)));
  return out;
}

bool span_contains(const std::vector<Vector>& b, const std::vector<Vector>& a, int dim) {
  std::vector<Vector> both(b);
  both.insert(both.end(), a.begin(), a.end());
  return row_space(both, dim).size() == row_space(b, dim).size();
}

}  // namespace kolchin
