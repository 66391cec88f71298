#include "vbalg/ring.hpp"

#include <sstream>

namespace vbalg {

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
    std::ostringstream s;
    s << "(" << i << "," << j << "," << k << ")";
    return s.str();
}

// Over a point ring every module is free once its action is scalar.
void mark_free_if_point(RModule& m) {
    if (!m.ring.is_point() || m.free_rank) return;
    Matrix expected = Matrix::identity(m.dim) * m.ring.c(0, 0, 0);
    if (m.action.size() == 1 && m.action[0] == expected) m.free_rank = m.dim;
}

}  // namespace

BaseRing BaseRing::rationals() { return BaseRing{}; }

BaseRing BaseRing::truncated_polynomial(std::size_t n) {
    if (n == 0) throw DimensionError("truncated polynomial ring needs n >= 1");
    BaseRing r;
    r.dim = n;
    r.mult.assign(n * n * n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j) r.mult[(i * n + j) * n + i + j] = 1;
    r.unit = unit_vector(n, 0);
    return r;
}

BaseRing BaseRing::product(std::size_t n) {
    if (n == 0) throw DimensionError("product ring needs n >= 1");
    BaseRing r;
    r.dim = n;
    r.mult.assign(n * n * n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) r.mult[(i * n + i) * n + i] = 1;
    r.unit.assign(n, Scalar(1));
    return r;
}

Vec BaseRing::multiply(const Vec& a, const Vec& b) const {
    Vec out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (sgn(b[j]) == 0) continue;
            Scalar ab = a[i] * b[j];
            for (std::size_t k = 0; k < dim; ++k)
                if (sgn(c(i, j, k)) != 0) out[k] += ab * c(i, j, k);
        }
    }
    return out;
}

Matrix BaseRing::multiplication_matrix(const Vec& a) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) m(k, j) += a[i] * c(i, j, k);
    }
    return m;
}

bool BaseRing::is_idempotent_product() const {
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k)
                if (c(i, j, k) != ((i == j && j == k) ? 1 : 0)) return false;
    return true;
}

Report check_ring(const BaseRing& r) {
    Report rep;
    if (r.dim == 0) {
        rep.add("ring dimension is zero");
        return rep;
    }
    if (r.mult.size() != r.dim * r.dim * r.dim) {
        rep.add("structure constant tensor has wrong length");
        return rep;
    }
    if (r.unit.size() != r.dim) {
        rep.add("unit vector has wrong length");
        return rep;
    }
    std::size_t d = r.dim;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (r.c(i, j, k) != r.c(j, i, k)) {
                    rep.add("commutativity fails at basis pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
                    k = d;
                }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                Vec left = r.multiply(r.multiply(unit_vector(d, i), unit_vector(d, j)), unit_vector(d, k));
                Vec right = r.multiply(unit_vector(d, i), r.multiply(unit_vector(d, j), unit_vector(d, k)));
                if (left != right) rep.add("associativity fails at basis triple " + triple(i, j, k));
            }
    for (std::size_t i = 0; i < d; ++i) {
        if (r.multiply(r.unit, unit_vector(d, i)) != unit_vector(d, i))
            rep.add("unit fails on basis element " + std::to_string(i));
    }
    return rep;
}

Matrix RModule::act_matrix(const Vec& r) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < r.size(); ++i)
        if (sgn(r[i]) != 0) m += action[i] * r[i];
    return m;
}

Vec RModule::generator(std::size_t g) const {
    if (!free_rank || g >= *free_rank) throw DimensionError("generator index out of range");
    Vec v(dim);
    for (std::size_t c = 0; c < ring.dim; ++c) v[g * ring.dim + c] = ring.unit[c];
    return v;
}

RModule free_module(const BaseRing& r, std::size_t rank) {
    RModule m;
    m.ring = r;
    m.dim = rank * r.dim;
    m.free_rank = rank;
    for (std::size_t b = 0; b < r.dim; ++b) {
        Matrix mb = r.multiplication_matrix(unit_vector(r.dim, b));
        Matrix a(m.dim, m.dim);
        for (std::size_t g = 0; g < rank; ++g)
            for (std::size_t i = 0; i < r.dim; ++i)
                for (std::size_t j = 0; j < r.dim; ++j) a(g * r.dim + i, g * r.dim + j) = mb(i, j);
        m.action.push_back(std::move(a));
    }
    return m;
}

RModule zero_module(const BaseRing& r) { return free_module(r, 0); }

RModule direct_sum(const RModule& a, const RModule& b) {
    if (!(a.ring == b.ring)) throw std::invalid_argument("direct sum over different base rings");
    RModule m;
    m.ring = a.ring;
    m.dim = a.dim + b.dim;
    for (std::size_t r = 0; r < a.ring.dim; ++r) m.action.push_back(block_diag(a.action[r], b.action[r]));
    if (a.free_rank && b.free_rank) m.free_rank = *a.free_rank + *b.free_rank;
    return m;
}

RModule submodule(const RModule& m, const std::vector<Vec>& basis) {
    Coordinates co(basis, m.dim);
    RModule s;
    s.ring = m.ring;
    s.dim = basis.size();
    for (std::size_t r = 0; r < m.ring.dim; ++r) {
        Matrix a(s.dim, s.dim);
        for (std::size_t j = 0; j < s.dim; ++j) {
            auto c = co.of(m.action[r].apply(basis[j]));
            if (!c) throw std::invalid_argument("family is not stable under the ring action");
            for (std::size_t i = 0; i < s.dim; ++i) a(i, j) = (*c)[i];
        }
        s.action.push_back(std::move(a));
    }
    mark_free_if_point(s);
    return s;
}

RModule change_basis(const RModule& m, const Matrix& p) {
    auto pinv = inverse(p);
    if (!pinv) throw std::invalid_argument("change of basis matrix is singular");
    RModule s;
    s.ring = m.ring;
    s.dim = m.dim;
    for (const auto& a : m.action) s.action.push_back(*pinv * a * p);
    mark_free_if_point(s);
    return s;
}

Report check_module(const RModule& m) {
    Report rep;
    const BaseRing& r = m.ring;
    if (m.action.size() != r.dim) {
        rep.add("module has " + std::to_string(m.action.size()) + " action matrices, ring has dimension " +
                std::to_string(r.dim));
        return rep;
    }
    for (std::size_t i = 0; i < r.dim; ++i)
        if (m.action[i].rows() != m.dim || m.action[i].cols() != m.dim) {
            rep.add("action matrix " + std::to_string(i) + " has the wrong shape");
            return rep;
        }
    if (m.act_matrix(r.unit) != Matrix::identity(m.dim)) rep.add("ring unit does not act as the identity");
    for (std::size_t i = 0; i < r.dim; ++i)
        for (std::size_t j = 0; j < r.dim; ++j) {
            Matrix lhs = m.act_matrix(r.multiply(unit_vector(r.dim, i), unit_vector(r.dim, j)));
            if (lhs != m.action[i] * m.action[j])
                rep.add("action is not multiplicative on ring basis pair (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
        }
    if (m.free_rank) {
        if (*m.free_rank * r.dim != m.dim) {
            rep.add("free rank does not match dimension");
        } else if (!(free_module(r, *m.free_rank).action == m.action)) {
            rep.add("action does not match the free layout");
        }
    }
    return rep;
}

bool is_r_linear(const RModule& v, const RModule& w, const Matrix& f) {
    if (f.rows() != w.dim || f.cols() != v.dim) throw DimensionError("map shape does not match modules");
    for (std::size_t r = 0; r < v.ring.dim; ++r)
        if (w.action[r] * f != f * v.action[r]) return false;
    return true;
}

Matrix r_transpose(const Matrix& f, const RModule& src, const RModule& tgt) {
    if (!src.free_rank || !tgt.free_rank) throw std::invalid_argument("R-transpose needs free modules");
    std::size_t d = src.ring.dim, n = *src.free_rank, m = *tgt.free_rank;
    if (f.rows() != m * d || f.cols() != n * d) throw DimensionError("R-transpose shape mismatch");
    Matrix t(n * d, m * d);
    for (std::size_t h = 0; h < m; ++h)
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) t(g * d + i, h * d + j) = f(h * d + i, g * d + j);
    return t;
}

Matrix r_linear_extension(const RModule& src, const RModule& tgt, const std::vector<Vec>& images) {
    if (!src.free_rank) throw std::invalid_argument("R-linear extension needs a free source");
    std::size_t d = src.ring.dim;
    if (images.size() != *src.free_rank) throw DimensionError("one image per generator expected");
    Matrix f(tgt.dim, src.dim);
    for (std::size_t g = 0; g < images.size(); ++g)
        for (std::size_t j = 0; j < d; ++j) {
            Vec col = tgt.act(unit_vector(d, j), images[g]);
            for (std::size_t i = 0; i < tgt.dim; ++i) f(i, g * d + j) = col[i];
        }
    return f;
}

Vec dual_pairing(const RModule& m, const Vec& x, const Vec& xi) {
    if (!m.free_rank) throw std::invalid_argument("pairing needs a free module");
    const BaseRing& r = m.ring;
    std::size_t d = r.dim;
    Vec out(d);
    for (std::size_t h = 0; h < *m.free_rank; ++h)
        for (std::size_t j = 0; j < d; ++j) {
            if (sgn(x[h * d + j]) == 0) continue;
            for (std::size_t c = 0; c < d; ++c) {
                if (sgn(xi[h * d + c]) == 0) continue;
                Scalar s = x[h * d + j] * xi[h * d + c];
                for (std::size_t k = 0; k < d; ++k)
                    if (sgn(r.c(c, j, k)) != 0) out[k] += s * r.c(c, j, k);
            }
        }
    return out;
}

bool is_derivation(const BaseRing& r, const Matrix& l) {
    std::size_t d = r.dim;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Vec bi = unit_vector(d, i), bj = unit_vector(d, j);
            Vec lhs = l.apply(r.multiply(bi, bj));
            Vec rhs = add(r.multiply(l.apply(bi), bj), r.multiply(bi, l.apply(bj)));
            if (lhs != rhs) return false;
        }
    return true;
}

DerivationSpace derivations(const BaseRing& r) {
    std::size_t d = r.dim;
    // Unknown L(a,b) sits at a*d + b.
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t t = 0; t < d; ++t) {
                Vec row(d * d);
                for (std::size_t k = 0; k < d; ++k) row[t * d + k] += r.c(i, j, k);
                for (std::size_t a = 0; a < d; ++a) {
                    row[a * d + i] -= r.c(a, j, t);
                    row[a * d + j] -= r.c(i, a, t);
                }
                if (!is_zero(row)) rows.push_back(std::move(row));
            }
    Subspace k = rows.empty() ? Subspace{d * d, {}} : kernel(Matrix::from_rows(rows, d * d));
    if (rows.empty())
        for (std::size_t i = 0; i < d * d; ++i) k.basis.push_back(unit_vector(d * d, i));
    DerivationSpace out{r, {}};
    for (const auto& v : k.basis) out.basis.emplace_back(d, d, v);
    return out;
}

RModule derivation_module(const DerivationSpace& ds) {
    const BaseRing& r = ds.ring;
    std::vector<Vec> flat;
    for (const auto& b : ds.basis) flat.push_back(b.entries());
    Coordinates co(flat, r.dim * r.dim);
    RModule m;
    m.ring = r;
    m.dim = ds.dim();
    for (std::size_t b = 0; b < r.dim; ++b) {
        Matrix mb = r.multiplication_matrix(unit_vector(r.dim, b));
        Matrix a(m.dim, m.dim);
        for (std::size_t j = 0; j < m.dim; ++j) {
            auto c = co.of((mb * ds.basis[j]).entries());
            if (!c) throw std::logic_error("derivations are not closed under the ring action");
            for (std::size_t i = 0; i < m.dim; ++i) a(i, j) = (*c)[i];
        }
        m.action.push_back(std::move(a));
    }
    mark_free_if_point(m);
    return m;
}

Matrix HomSpace::to_matrix(const Vec& c) const {
    Vec flat = coords.embed(c);
    std::size_t rows = basis.empty() ? 0 : basis[0].rows();
    std::size_t cols = basis.empty() ? 0 : basis[0].cols();
    return Matrix(rows, cols, std::move(flat));
}

std::optional<Vec> HomSpace::coordinates(const Matrix& f) const {
    if (basis.empty()) {
        if (f.is_zero()) return Vec{};
        return std::nullopt;
    }
    return coords.of(f.entries());
}

HomSpace module_hom_space(const RModule& v, const RModule& w) {
    if (!(v.ring == w.ring)) throw std::invalid_argument("hom space over different base rings");
    const BaseRing& r = v.ring;
    std::size_t d = r.dim;
    HomSpace h;
    if (v.free_rank && w.free_rank) {
        std::size_t n = *v.free_rank, m = *w.free_rank;
        h.module = free_module(r, m * n);
        // Generator (hg, c) sends e_g (x) b_j to e_hg (x) b_c b_j.
        for (std::size_t hg = 0; hg < m; ++hg)
            for (std::size_t g = 0; g < n; ++g)
                for (std::size_t c = 0; c < d; ++c) {
                    Matrix f(w.dim, v.dim);
                    for (std::size_t j = 0; j < d; ++j)
                        for (std::size_t k = 0; k < d; ++k) f(hg * d + k, g * d + j) = r.c(c, j, k);
                    h.basis.push_back(std::move(f));
                }
    } else {
        std::size_t vd = v.dim, wd = w.dim;
        std::vector<Vec> rows;
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t a = 0; a < wd; ++a)
                for (std::size_t col = 0; col < vd; ++col) {
                    Vec row(wd * vd);
                    for (std::size_t c = 0; c < wd; ++c) row[c * vd + col] += w.action[b](a, c);
                    for (std::size_t c = 0; c < vd; ++c) row[a * vd + c] -= v.action[b](c, col);
                    if (!is_zero(row)) rows.push_back(std::move(row));
                }
        std::vector<Vec> kb;
        if (rows.empty()) {
            for (std::size_t i = 0; i < wd * vd; ++i) kb.push_back(unit_vector(wd * vd, i));
        } else {
            kb = kernel(Matrix::from_rows(rows, wd * vd)).basis;
        }
        for (const auto& k : kb) h.basis.emplace_back(wd, vd, k);
        Coordinates co(kb, wd * vd);
        h.module.ring = r;
        h.module.dim = kb.size();
        for (std::size_t b = 0; b < d; ++b) {
            Matrix a(kb.size(), kb.size());
            for (std::size_t j = 0; j < kb.size(); ++j) {
                auto c = co.of((w.action[b] * h.basis[j]).entries());
                for (std::size_t i = 0; i < kb.size(); ++i) a(i, j) = (*c)[i];
            }
            h.module.action.push_back(std::move(a));
        }
        mark_free_if_point(h.module);
    }
    std::vector<Vec> flat;
    for (const auto& b : h.basis) flat.push_back(b.entries());
    h.coords = Coordinates(flat, w.dim * v.dim);
    return h;
}

HomSpace dual_module(const RModule& w) { return module_hom_space(w, free_module(w.ring, 1)); }

}  // namespace vbalg
