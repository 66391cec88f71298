#include "vbalg/linalg.hpp"

#include <algorithm>

namespace vbalg {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, Vec entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw DimensionError("matrix entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionError("ragged rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw DimensionError("ragged columns");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vec Matrix::row(std::size_t i) const {
    return Vec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::column(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

bool Matrix::is_zero() const { return vbalg::is_zero(a_); }

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vec Matrix::apply(const Vec& x) const {
    if (x.size() != cols_) throw DimensionError("matrix-vector dimension mismatch");
    Vec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Scalar s = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar& a = (*this)(i, j);
            if (sgn(a) != 0 && sgn(x[j]) != 0) s += a * x[j];
        }
        y[i] = s;
    }
    return y;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
    for (auto& x : a_) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0) c(i, j) += x * b(k, j);
        }
    return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (sgn(a(i, j)) == 0) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
        }
    return k;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

Echelon row_reduce(const Matrix& m) {
    Matrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t p = row;
        while (p < r.rows() && sgn(r(p, col)) == 0) ++p;
        if (p == r.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(row, j));
        Scalar inv = 1 / r(row, col);
        for (std::size_t j = col; j < r.cols(); ++j) r(row, j) *= inv;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || sgn(r(i, col)) == 0) continue;
            Scalar f = r(i, col);
            for (std::size_t j = col; j < r.cols(); ++j)
                if (sgn(r(row, j)) != 0) r(i, j) -= f * r(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw DimensionError("solve: right-hand side length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Echelon e = row_reduce(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vec x(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.rref(r, m.cols());
    return x;
}

Subspace kernel(const Matrix& m) {
    Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    Subspace k{m.cols(), {}};
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rref(r, f);
        k.basis.push_back(std::move(v));
    }
    return k;
}

Subspace image(const Matrix& m) {
    Echelon e = row_reduce(m);
    Subspace s{m.rows(), {}};
    for (auto p : e.pivots) s.basis.push_back(m.column(p));
    return s;
}

Subspace span(std::size_t ambient_dim, const std::vector<Vec>& vectors) {
    Matrix m = Matrix::from_rows(vectors, ambient_dim);
    Echelon e = row_reduce(m);
    Subspace s{ambient_dim, {}};
    for (std::size_t r = 0; r < e.pivots.size(); ++r) s.basis.push_back(e.rref.row(r));
    return s;
}

Subspace complement(const Subspace& s) {
    Subspace c{s.ambient_dim, {}};
    std::vector<bool> used(s.ambient_dim, false);
    if (!s.basis.empty()) {
        Echelon e = row_reduce(Matrix::from_rows(s.basis, s.ambient_dim));
        for (auto p : e.pivots) used[p] = true;
    }
    for (std::size_t i = 0; i < s.ambient_dim; ++i)
        if (!used[i]) c.basis.push_back(unit_vector(s.ambient_dim, i));
    return c;
}

bool contains(const Subspace& s, const Vec& v) {
    if (v.size() != s.ambient_dim) throw DimensionError("contains: vector length mismatch");
    if (is_zero(v)) return true;
    if (s.basis.empty()) return false;
    return solve(s.as_columns(), v).has_value();
}

bool independent(const std::vector<Vec>& vectors, std::size_t ambient_dim) {
    if (vectors.empty()) return true;
    return rank(Matrix::from_rows(vectors, ambient_dim)) == vectors.size();
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
    std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    Echelon e = row_reduce(aug);
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
    return inv;
}

Scalar determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
    Matrix r = m;
    std::size_t n = m.rows();
    Scalar det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && sgn(r(p, col)) == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(r(p, j), r(col, j));
            det = -det;
        }
        det *= r(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(r(i, col)) == 0) continue;
            Scalar f = r(i, col) / r(col, col);
            for (std::size_t j = col; j < n; ++j) r(i, j) -= f * r(col, j);
        }
    }
    return det;
}

Coordinates::Coordinates(std::vector<Vec> basis, std::size_t ambient_dim)
    : basis_(std::move(basis)), ambient_(ambient_dim) {
    if (basis_.empty()) return;
    Matrix bt = Matrix::from_rows(basis_, ambient_);
    Echelon e = row_reduce(bt);
    if (e.pivots.size() != basis_.size()) throw DimensionError("coordinate family is not independent");
    rows_ = e.pivots;
    std::size_t k = basis_.size();
    Matrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = basis_[j][rows_[i]];
    inv_ = *inverse(sub);
}

std::optional<Vec> Coordinates::of(const Vec& v) const {
    if (v.size() != ambient_) throw DimensionError("coordinates: vector length mismatch");
    Vec picked(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) picked[i] = v[rows_[i]];
    Vec c = basis_.empty() ? Vec{} : inv_.apply(picked);
    if (embed(c) != v) return std::nullopt;
    return c;
}

Vec Coordinates::embed(const Vec& coords) const {
    Vec v(ambient_);
    for (std::size_t j = 0; j < basis_.size(); ++j)
        if (sgn(coords[j]) != 0) axpy(v, coords[j], basis_[j]);
    return v;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("vector sum length mismatch");
    Vec c(a);
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("vector difference length mismatch");
    Vec c(a);
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return c;
}

Vec scale(const Vec& a, const Scalar& s) {
    Vec c(a);
    for (auto& x : c) x *= s;
    return c;
}

void axpy(Vec& y, const Scalar& s, const Vec& x) {
    if (y.size() != x.size()) throw DimensionError("axpy length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0) y[i] += s * x[i];
}

Vec unit_vector(std::size_t n, std::size_t i) {
    Vec v(n);
    v.at(i) = 1;
    return v;
}

std::string to_string(const Scalar& s) {
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

}  // namespace vbalg
