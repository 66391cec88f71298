#ifndef VBALG_TEST_HELPERS_HPP
#define VBALG_TEST_HELPERS_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "vbalg/linalg.hpp"

namespace testing {

using vbalg::Matrix;
using vbalg::Scalar;
using vbalg::Vec;

inline Scalar q(long num, long den = 1) {
    Scalar s(num, den);
    s.canonicalize();
    return s;
}

inline Vec vec(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Vec> r;
    std::size_t cols = 0;
    for (auto row : rows) {
        r.push_back(vec(row));
        cols = row.size();
    }
    return Matrix::from_rows(r, cols);
}

// Small-integer generator for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    long integer(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Scalar scalar(long lo = -3, long hi = 3) { return Scalar(integer(lo, hi)); }
    // Mostly zero entries so rank deficiency shows up often.
    Scalar sparse_scalar() { return integer(0, 2) == 0 ? Scalar(integer(-2, 2)) : Scalar(0); }
    Matrix matrix(std::size_t r, std::size_t c, bool sparse = false) {
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = sparse ? sparse_scalar() : scalar();
        return m;
    }
    Vec vector(std::size_t n) {
        Vec v(n);
        for (auto& x : v) x = scalar();
        return v;
    }
};

}  // namespace testing

#endif
