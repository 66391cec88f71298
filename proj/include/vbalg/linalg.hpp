#ifndef VBALG_LINALG_HPP
#define VBALG_LINALG_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vbalg {

/* Exact rationals. GMP keeps every result canonical (lowest terms,
   positive denominator), so equality is structural. */
using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, Vec entries);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Vec& entries() const { return a_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec column(std::size_t j) const;
    bool is_zero() const;
    Matrix transpose() const;
    Vec apply(const Vec& x) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Scalar& s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a) { return a *= Scalar(-1); }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vec a_;
};

// Kronecker product, used to turn left/right multiplication into matrices on
// row-major flattened matrices.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);

struct Subspace {
    std::size_t ambient_dim = 0;
    std::vector<Vec> basis;

    std::size_t dim() const { return basis.size(); }
    Matrix as_columns() const { return Matrix::from_columns(basis, ambient_dim); }
};

struct Echelon {
    Matrix rref;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Echelon row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);

// Mx = b. Free variables are set to zero.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);
Subspace span(std::size_t ambient_dim, const std::vector<Vec>& vectors);
// Standard basis vectors at the non-pivot coordinates of the reduced basis.
Subspace complement(const Subspace& s);
bool contains(const Subspace& s, const Vec& v);
bool independent(const std::vector<Vec>& vectors, std::size_t ambient_dim);

std::optional<Matrix> inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

/* Coordinates with respect to a fixed independent family. A set of
   coordinate rows on which the family is invertible is found once; each
   query then costs one small matrix-vector product plus a check. */
class Coordinates {
public:
    Coordinates() = default;
    Coordinates(std::vector<Vec> basis, std::size_t ambient_dim);

    std::size_t dim() const { return basis_.size(); }
    std::size_t ambient_dim() const { return ambient_; }
    const std::vector<Vec>& basis() const { return basis_; }

    std::optional<Vec> of(const Vec& v) const;
    Vec embed(const Vec& coords) const;

private:
    std::vector<Vec> basis_;
    std::size_t ambient_ = 0;
    std::vector<std::size_t> rows_;
    Matrix inv_;
};

bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Scalar& s);
void axpy(Vec& y, const Scalar& s, const Vec& x);
Vec unit_vector(std::size_t n, std::size_t i);

std::string to_string(const Scalar& s);

}  // namespace vbalg

#endif
