#include "vbalg/algebroid.hpp"

#include <string>

namespace vbalg {

namespace {

std::string pair_name(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string triple_name(std::size_t i, std::size_t j, std::size_t k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

Vec Algebroid::bracket_basis(std::size_t i, std::size_t j) const {
    std::size_t n = dim();
    return Vec(bracket.begin() + static_cast<std::ptrdiff_t>((i * n + j) * n),
               bracket.begin() + static_cast<std::ptrdiff_t>((i * n + j + 1) * n));
}

Vec Algebroid::bracket_of(const Vec& x, const Vec& y) const {
    std::size_t n = dim();
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(y[j]) == 0) continue;
            Scalar s = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(structure(i, j, k)) != 0) out[k] += s * structure(i, j, k);
        }
    }
    return out;
}

Matrix Algebroid::anchor_of(const Vec& x) const {
    Matrix m(ring().dim, ring().dim);
    for (std::size_t i = 0; i < dim(); ++i)
        if (sgn(x[i]) != 0) m += anchor[i] * x[i];
    return m;
}

bool Algebroid::anchor_is_zero() const {
    for (const auto& a : anchor)
        if (!a.is_zero()) return false;
    return true;
}

Report check_algebroid(const Algebroid& a) {
    Report rep;
    rep.merge(check_module(a.module), "module: ");
    if (!rep.ok()) return rep;
    std::size_t n = a.dim(), d = a.ring().dim;
    if (a.bracket.size() != n * n * n) {
        rep.add("bracket tensor has wrong length");
        return rep;
    }
    if (a.anchor.size() != n) {
        rep.add("anchor needs one derivation per basis element");
        return rep;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (a.anchor[i].rows() != d || a.anchor[i].cols() != d) {
            rep.add("anchor of basis element " + std::to_string(i) + " has the wrong shape");
            return rep;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Vec ij = a.bracket_basis(i, j), ji = a.bracket_basis(j, i);
            if (!is_zero(add(ij, ji))) rep.add("bracket is not antisymmetric on pair " + pair_name(i, j));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
                Vec s = a.bracket_of(ei, a.bracket_of(ej, ek));
                s = add(s, a.bracket_of(ej, a.bracket_of(ek, ei)));
                s = add(s, a.bracket_of(ek, a.bracket_of(ei, ej)));
                if (!is_zero(s)) rep.add("Jacobi identity fails on triple " + triple_name(i, j, k));
            }
    for (std::size_t i = 0; i < n; ++i)
        if (!is_derivation(a.ring(), a.anchor[i]))
            rep.add("anchor of basis element " + std::to_string(i) + " is not a derivation");
    for (std::size_t r = 0; r < d; ++r) {
        Matrix mr = a.ring().multiplication_matrix(unit_vector(d, r));
        for (std::size_t i = 0; i < n; ++i) {
            Vec fx = a.module.action[r].column(i);
            if (a.anchor_of(fx) != mr * a.anchor[i])
                rep.add("anchor is not R-linear at ring element " + std::to_string(r) + ", basis element " +
                        std::to_string(i));
            for (std::size_t j = 0; j < n; ++j) {
                Vec lhs = a.bracket_of(unit_vector(n, i), a.module.action[r].column(j));
                Vec rhs = a.module.action[r].apply(a.bracket_basis(i, j));
                Vec rho_f = a.anchor[i].column(r);
                rhs = add(rhs, a.module.act(rho_f, unit_vector(n, j)));
                if (lhs != rhs)
                    rep.add("Leibniz rule fails at " + triple_name(i, r, j) + " (X, ring element, Y)");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Matrix lhs = a.anchor_of(a.bracket_basis(i, j));
            Matrix rhs = a.anchor[i] * a.anchor[j] - a.anchor[j] * a.anchor[i];
            if (lhs != rhs) rep.add("anchor does not preserve the bracket on pair " + pair_name(i, j));
        }
    return rep;
}

Matrix Connection::along(const Vec& x) const {
    Matrix m(coeff.dim, coeff.dim);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0) m += nabla[i] * x[i];
    return m;
}

Report check_connection(const Connection& c) {
    Report rep;
    const Algebroid& a = c.algebroid;
    const RModule& w = c.coeff;
    if (!(w.ring == a.ring())) {
        rep.add("coefficient module lives over a different ring");
        return rep;
    }
    if (c.nabla.size() != a.dim()) {
        rep.add("connection needs one operator per basis element");
        return rep;
    }
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (c.nabla[i].rows() != w.dim || c.nabla[i].cols() != w.dim) {
            rep.add("connection operator " + std::to_string(i) + " has the wrong shape");
            return rep;
        }
    std::size_t d = a.ring().dim;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t i = 0; i < a.dim(); ++i) {
            if (c.along(a.module.action[r].column(i)) != w.action[r] * c.nabla[i])
                rep.add("connection is not R-linear in X at ring element " + std::to_string(r) +
                        ", basis element " + std::to_string(i));
            Matrix lhs = c.nabla[i] * w.action[r];
            Matrix rhs = w.action[r] * c.nabla[i] + w.act_matrix(a.anchor[i].column(r));
            if (lhs != rhs)
                rep.add("Leibniz rule fails at ring element " + std::to_string(r) + ", basis element " +
                        std::to_string(i));
        }
    return rep;
}

Connection trivial_connection(const Algebroid& a) {
    return Connection{a, free_module(a.ring(), 1), a.anchor};
}

Connection adjoint_connection(const Algebroid& a) {
    if (!a.anchor_is_zero()) throw PreconditionError("adjoint connection needs a zero anchor");
    Connection c{a, a.module, {}};
    std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        Matrix m(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) m(k, j) = a.structure(i, j, k);
        c.nabla.push_back(std::move(m));
    }
    return c;
}

Matrix curvature_of(const Algebroid& a, const std::vector<Matrix>& nabla, std::size_t i, std::size_t j) {
    Matrix f = nabla[i] * nabla[j] - nabla[j] * nabla[i];
    Vec b = a.bracket_basis(i, j);
    for (std::size_t k = 0; k < b.size(); ++k)
        if (sgn(b[k]) != 0) f -= nabla[k] * b[k];
    return f;
}

Matrix curvature(const Connection& c, std::size_t i, std::size_t j) {
    return curvature_of(c.algebroid, c.nabla, i, j);
}

bool is_flat(const Connection& c) {
    std::size_t n = c.algebroid.dim();
    bool by_curvature = true;
    for (std::size_t i = 0; i < n && by_curvature; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!curvature(c, i, j).is_zero()) {
                by_curvature = false;
                break;
            }
    bool by_square = true;
    for (std::size_t p = 0; p + 2 <= n && by_square; ++p)
        if (!(ce_matrix(c, p + 1) * ce_matrix(c, p)).is_zero()) by_square = false;
    if (by_curvature != by_square) throw std::logic_error("curvature and d^2 disagree on flatness");
    return by_curvature;
}

Connection dual_connection(const Connection& c) {
    const RModule& w = c.coeff;
    if (!w.free_rank) throw PreconditionError("dual connection needs a free module");
    HomSpace dual = dual_module(w);
    Connection out{c.algebroid, dual.module, {}};
    std::size_t rank = *w.free_rank;
    for (std::size_t i = 0; i < c.algebroid.dim(); ++i) {
        std::vector<Vec> images;
        for (std::size_t g = 0; g < rank; ++g) images.push_back(c.nabla[i].apply(w.generator(g)));
        Matrix linear = r_linear_extension(w, w, images);
        Matrix op = kron(Matrix::identity(rank), c.algebroid.anchor[i]) - r_transpose(linear, w, w);
        out.nabla.push_back(std::move(op));
    }
    return out;
}

Connection hom_connection(const Connection& v, const Connection& w, const HomSpace& h) {
    Connection out{v.algebroid, h.module, {}};
    std::size_t k = h.basis.size();
    for (std::size_t i = 0; i < v.algebroid.dim(); ++i) {
        Matrix op(k, k);
        for (std::size_t j = 0; j < k; ++j) {
            Matrix img = w.nabla[i] * h.basis[j] - h.basis[j] * v.nabla[i];
            auto co = h.coordinates(img);
            if (!co) throw std::invalid_argument("connections do not preserve R-linear maps");
            for (std::size_t r = 0; r < k; ++r) op(r, j) = (*co)[r];
        }
        out.nabla.push_back(std::move(op));
    }
    return out;
}

Form Form::zero(std::size_t p, std::size_t n, std::size_t m) {
    return Form{p, n, m, std::vector<Vec>(Exterior::of(n).count(p), Vec(m))};
}

Form Form::from_raw(std::size_t p, std::size_t n, std::size_t m, const Vec& raw) {
    Form f = zero(p, n, m);
    if (raw.size() != f.comp.size() * m) throw DimensionError("raw form has wrong length");
    for (std::size_t s = 0; s < f.comp.size(); ++s)
        for (std::size_t k = 0; k < m; ++k) f.comp[s][k] = raw[s * m + k];
    return f;
}

Vec Form::raw() const {
    Vec out;
    out.reserve(comp.size() * m);
    for (const auto& v : comp) out.insert(out.end(), v.begin(), v.end());
    return out;
}

Vec Form::value(const std::vector<int>& idx) const {
    if (idx.size() != degree) throw DimensionError("form evaluated on a tuple of the wrong size");
    Mask msk = 0;
    for (int i : idx) {
        if (msk & (Mask(1) << i)) return Vec(m);
        msk |= Mask(1) << i;
    }
    // Sign of the sorting permutation.
    int inv = 0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (idx[a] > idx[b]) ++inv;
    Vec v = at(msk);
    return (inv & 1) ? scale(v, -1) : v;
}

bool Form::is_zero() const {
    for (const auto& v : comp)
        if (!vbalg::is_zero(v)) return false;
    return true;
}

Form& Form::operator+=(const Form& o) {
    if (degree != o.degree || n != o.n || m != o.m) throw DimensionError("form sum shape mismatch");
    for (std::size_t s = 0; s < comp.size(); ++s) comp[s] = add(comp[s], o.comp[s]);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    if (degree != o.degree || n != o.n || m != o.m) throw DimensionError("form difference shape mismatch");
    for (std::size_t s = 0; s < comp.size(); ++s) comp[s] = sub(comp[s], o.comp[s]);
    return *this;
}

Form& Form::operator*=(const Scalar& s) {
    for (auto& v : comp)
        for (auto& x : v) x *= s;
    return *this;
}

HomForm HomForm::zero(std::size_t p, std::size_t n, std::size_t rows, std::size_t cols) {
    return HomForm{p, n, rows, cols, std::vector<Matrix>(Exterior::of(n).count(p), Matrix(rows, cols))};
}

Matrix HomForm::value(const std::vector<int>& idx) const {
    if (idx.size() != degree) throw DimensionError("form evaluated on a tuple of the wrong size");
    Mask msk = 0;
    for (int i : idx) {
        if (msk & (Mask(1) << i)) return Matrix(rows, cols);
        msk |= Mask(1) << i;
    }
    int inv = 0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (idx[a] > idx[b]) ++inv;
    return (inv & 1) ? -at(msk) : at(msk);
}

bool HomForm::is_zero() const {
    for (const auto& v : comp)
        if (!v.is_zero()) return false;
    return true;
}

HomForm& HomForm::operator+=(const HomForm& o) {
    if (degree != o.degree || n != o.n || rows != o.rows || cols != o.cols)
        throw DimensionError("form sum shape mismatch");
    for (std::size_t s = 0; s < comp.size(); ++s) comp[s] += o.comp[s];
    return *this;
}

HomForm& HomForm::operator-=(const HomForm& o) {
    if (degree != o.degree || n != o.n || rows != o.rows || cols != o.cols)
        throw DimensionError("form difference shape mismatch");
    for (std::size_t s = 0; s < comp.size(); ++s) comp[s] -= o.comp[s];
    return *this;
}

HomForm& HomForm::operator*=(const Scalar& s) {
    for (auto& v : comp) v *= s;
    return *this;
}

HomForm compose(const Matrix& left, const HomForm& f) {
    HomForm out{f.degree, f.n, left.rows(), f.cols, {}};
    for (const auto& v : f.comp) out.comp.push_back(left * v);
    return out;
}

HomForm compose(const HomForm& f, const Matrix& right) {
    HomForm out{f.degree, f.n, f.rows, right.cols(), {}};
    for (const auto& v : f.comp) out.comp.push_back(v * right);
    return out;
}

Subspace form_space(const Algebroid& a, const RModule& w, std::size_t p) {
    std::size_t n = a.dim(), m = w.dim, d = a.ring().dim;
    const Exterior& ex = Exterior::of(n);
    std::size_t total = ex.count(p) * m;
    Subspace full{total, {}};
    if (p == 0 || d == 1) {
        for (std::size_t i = 0; i < total; ++i) full.basis.push_back(unit_vector(total, i));
        return full;
    }
    // omega(b_r a_i, rest) = b_r omega(a_i, rest), one row per output coordinate.
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < d; ++r) {
        const Matrix& la = a.module.action[r];
        const Matrix& lw = w.action[r];
        for (std::size_t i = 0; i < n; ++i)
            for (Mask rest : ex.masks(p - 1)) {
                for (std::size_t out = 0; out < m; ++out) {
                    Vec row(total);
                    for (std::size_t j = 0; j < n; ++j) {
                        if (sgn(la(j, i)) == 0 || (rest & (Mask(1) << j))) continue;
                        Mask s = rest | (Mask(1) << j);
                        row[ex.rank(s) * m + out] += la(j, i) * insert_sign(rest, static_cast<int>(j));
                    }
                    if (!(rest & (Mask(1) << i))) {
                        Mask s = rest | (Mask(1) << i);
                        int sg = insert_sign(rest, static_cast<int>(i));
                        for (std::size_t k = 0; k < m; ++k)
                            if (sgn(lw(out, k)) != 0) row[ex.rank(s) * m + k] -= lw(out, k) * sg;
                    }
                    if (!is_zero(row)) rows.push_back(std::move(row));
                }
            }
    }
    if (rows.empty()) {
        for (std::size_t i = 0; i < total; ++i) full.basis.push_back(unit_vector(total, i));
        return full;
    }
    return kernel(Matrix::from_rows(rows, total));
}

Report check_form(const Algebroid& a, const RModule& w, const Form& f) {
    Report rep;
    if (f.n != a.dim() || f.m != w.dim || f.comp.size() != Exterior::of(a.dim()).count(f.degree)) {
        rep.add("form shape does not match algebroid and coefficients");
        return rep;
    }
    for (const auto& v : f.comp)
        if (v.size() != f.m) {
            rep.add("form component has wrong length");
            return rep;
        }
    if (!contains(form_space(a, w, f.degree), f.raw())) rep.add("form is not R-multilinear");
    return rep;
}

Report check_hom_form(const Algebroid& a, const RModule& src, const RModule& tgt, const HomForm& f) {
    Report rep;
    if (f.n != a.dim() || f.rows != tgt.dim || f.cols != src.dim ||
        f.comp.size() != Exterior::of(a.dim()).count(f.degree)) {
        rep.add("form shape does not match algebroid and modules");
        return rep;
    }
    const Exterior& ex = Exterior::of(a.dim());
    for (std::size_t s = 0; s < f.comp.size(); ++s) {
        if (f.comp[s].rows() != f.rows || f.comp[s].cols() != f.cols) {
            rep.add("form component has wrong shape");
            return rep;
        }
        if (!is_r_linear(src, tgt, f.comp[s])) {
            std::string t;
            for (int i : indices_of(ex.masks(f.degree)[s])) t += (t.empty() ? "" : ",") + std::to_string(i);
            rep.add("value on tuple (" + t + ") is not R-linear");
        }
    }
    if (!rep.ok() || a.ring().dim == 1) return rep;
    // R-multilinearity in the algebroid slots.
    std::size_t d = a.ring().dim;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (Mask rest : ex.masks(f.degree == 0 ? 0 : f.degree - 1)) {
                if (f.degree == 0) break;
                std::vector<int> rest_idx = indices_of(rest);
                Matrix lhs(f.rows, f.cols);
                Vec fx = a.module.action[r].column(i);
                for (std::size_t j = 0; j < a.dim(); ++j) {
                    if (sgn(fx[j]) == 0) continue;
                    std::vector<int> idx{static_cast<int>(j)};
                    idx.insert(idx.end(), rest_idx.begin(), rest_idx.end());
                    lhs += f.value(idx) * fx[j];
                }
                std::vector<int> idx{static_cast<int>(i)};
                idx.insert(idx.end(), rest_idx.begin(), rest_idx.end());
                if (lhs != tgt.action[r] * f.value(idx)) {
                    rep.add("form is not R-multilinear at ring element " + std::to_string(r));
                    return rep;
                }
            }
    return rep;
}

Form to_form(const HomSpace& h, const HomForm& f) {
    Form out = Form::zero(f.degree, f.n, h.basis.size());
    for (std::size_t s = 0; s < f.comp.size(); ++s) {
        auto c = h.coordinates(f.comp[s]);
        if (!c) throw std::invalid_argument("form value is not in the hom space");
        out.comp[s] = *c;
    }
    return out;
}

HomForm to_hom_form(const HomSpace& h, const Form& f) {
    std::size_t rows = h.basis.empty() ? 0 : h.basis[0].rows();
    std::size_t cols = h.basis.empty() ? 0 : h.basis[0].cols();
    HomForm out{f.degree, f.n, rows, cols, {}};
    for (const auto& v : f.comp) out.comp.push_back(h.to_matrix(v));
    return out;
}

Matrix ce_matrix(const Algebroid& a, const std::vector<Matrix>& nabla, std::size_t m, std::size_t p) {
    std::size_t n = a.dim();
    const Exterior& ex = Exterior::of(n);
    Matrix d(ex.count(p + 1) * m, ex.count(p) * m);
    if (p + 1 > n) return d;
    for (Mask t : ex.masks(p + 1)) {
        std::size_t row0 = ex.rank(t) * m;
        std::vector<int> idx = indices_of(t);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            Mask s = t & ~(Mask(1) << idx[k]);
            std::size_t col0 = ex.rank(s) * m;
            const Matrix& nk = nabla[static_cast<std::size_t>(idx[k])];
            Scalar sign = (k & 1) ? -1 : 1;
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c)
                    if (sgn(nk(r, c)) != 0) d(row0 + r, col0 + c) += sign * nk(r, c);
        }
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t l = k + 1; l < idx.size(); ++l) {
                Mask rest = t & ~(Mask(1) << idx[k]) & ~(Mask(1) << idx[l]);
                int sign = ((k + l) & 1) ? -1 : 1;
                for (std::size_t c = 0; c < n; ++c) {
                    const Scalar& b = a.structure(static_cast<std::size_t>(idx[k]), static_cast<std::size_t>(idx[l]), c);
                    if (sgn(b) == 0 || (rest & (Mask(1) << c))) continue;
                    Mask s = rest | (Mask(1) << c);
                    Scalar coef = b * (sign * insert_sign(rest, static_cast<int>(c)));
                    std::size_t col0 = ex.rank(s) * m;
                    for (std::size_t r = 0; r < m; ++r) d(row0 + r, col0 + r) += coef;
                }
            }
    }
    return d;
}

Matrix ce_matrix(const Connection& c, std::size_t p) {
    return ce_matrix(c.algebroid, c.nabla, c.coeff.dim, p);
}

Form ce_differential(const Connection& c, const Form& f) {
    if (f.m != c.coeff.dim || f.n != c.algebroid.dim())
        throw std::invalid_argument("form coefficients do not match the connection");
    return Form::from_raw(f.degree + 1, f.n, f.m, ce_matrix(c, f.degree).apply(f.raw()));
}

HomForm hom_differential(const Algebroid& a, const std::vector<Matrix>& nabla_w, const std::vector<Matrix>& nabla_v,
                         const HomForm& f) {
    std::size_t n = a.dim();
    const Exterior& ex = Exterior::of(n);
    HomForm out = HomForm::zero(f.degree + 1, n, f.rows, f.cols);
    if (f.degree + 1 > n) return out;
    for (Mask t : ex.masks(f.degree + 1)) {
        Matrix& v = out.at(t);
        std::vector<int> idx = indices_of(t);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const Matrix& phi = f.at(t & ~(Mask(1) << idx[k]));
            Matrix term = nabla_w[static_cast<std::size_t>(idx[k])] * phi - phi * nabla_v[static_cast<std::size_t>(idx[k])];
            if (k & 1) v -= term;
            else v += term;
        }
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t l = k + 1; l < idx.size(); ++l) {
                Mask rest = t & ~(Mask(1) << idx[k]) & ~(Mask(1) << idx[l]);
                int sign = ((k + l) & 1) ? -1 : 1;
                for (std::size_t c = 0; c < n; ++c) {
                    const Scalar& b = a.structure(static_cast<std::size_t>(idx[k]), static_cast<std::size_t>(idx[l]), c);
                    if (sgn(b) == 0 || (rest & (Mask(1) << c))) continue;
                    v += f.at(rest | (Mask(1) << c)) * (b * (sign * insert_sign(rest, static_cast<int>(c))));
                }
            }
    }
    return out;
}

Form wedge(const RModule& w, const Form& scalar, const Form& f) {
    if (scalar.n != f.n || scalar.m != w.ring.dim || f.m != w.dim) throw DimensionError("wedge shape mismatch");
    std::size_t p = scalar.degree, q = f.degree, n = f.n;
    Form out = Form::zero(p + q, n, w.dim);
    if (p + q > n) return out;
    const Exterior& ex = Exterior::of(n);
    for (Mask t : ex.masks(p + q))
        for (Mask s : ex.masks(p)) {
            if ((s & t) != s) continue;
            const Vec& a = scalar.at(s);
            if (is_zero(a)) continue;
            Vec v = w.act(a, f.at(t & ~s));
            axpy(out.at(t), shuffle_sign(s, t & ~s), v);
        }
    return out;
}

namespace {

Matrix restrict_columns(const Matrix& d, const Subspace& s) {
    if (s.basis.empty()) return Matrix(d.rows(), 0);
    return d * s.as_columns();
}

}  // namespace

Cohomology cohomology(const Connection& c, std::size_t p) {
    if (!is_flat(c)) throw PreconditionError("cohomology needs a flat connection");
    const Algebroid& a = c.algebroid;
    std::size_t n = a.dim(), m = c.coeff.dim;
    Cohomology out;
    out.degree = p;
    if (p > n) return out;
    Subspace cur = form_space(a, c.coeff, p);
    Matrix dc = restrict_columns(ce_matrix(c, p), cur);
    std::vector<Vec> cycles;
    if (cur.dim() > 0) {
        Subspace k = kernel(dc);
        for (const auto& v : k.basis) cycles.push_back(cur.as_columns().apply(v));
    }
    std::vector<Vec> bounds;
    if (p > 0) {
        Subspace prev = form_space(a, c.coeff, p - 1);
        Matrix dp = restrict_columns(ce_matrix(c, p - 1), prev);
        if (dp.cols() > 0) bounds = image(dp).basis;
    }
    std::size_t total = Exterior::of(n).count(p) * m;
    out.cycles = cycles.size();
    out.boundaries = bounds.size();
    // Representatives: cycles not already in the span of boundaries and earlier picks.
    std::vector<Vec> span_vecs = bounds;
    std::size_t r = span_vecs.empty() ? 0 : rank(Matrix::from_rows(span_vecs, total));
    for (const auto& z : cycles) {
        span_vecs.push_back(z);
        std::size_t r2 = rank(Matrix::from_rows(span_vecs, total));
        if (r2 > r) {
            r = r2;
            out.basis.push_back(Form::from_raw(p, n, m, z));
        } else {
            span_vecs.pop_back();
        }
    }
    out.dim = out.basis.size();
    if (out.dim != out.cycles - out.boundaries) throw std::logic_error("cohomology dimension count mismatch");
    return out;
}

std::optional<Form> exactness_certificate(const Connection& c, const Form& f) {
    const Algebroid& a = c.algebroid;
    if (!ce_differential(c, f).is_zero()) throw PreconditionError("form is not closed");
    if (f.degree == 0) {
        if (f.is_zero()) return Form::zero(0, f.n, f.m);
        return std::nullopt;
    }
    Subspace prev = form_space(a, c.coeff, f.degree - 1);
    Matrix dp = restrict_columns(ce_matrix(c, f.degree - 1), prev);
    if (dp.cols() == 0) {
        if (f.is_zero()) return Form::zero(f.degree - 1, f.n, f.m);
        return std::nullopt;
    }
    auto y = solve(dp, f.raw());
    if (!y) return std::nullopt;
    Form eta = Form::from_raw(f.degree - 1, f.n, f.m, prev.as_columns().apply(*y));
    if (ce_differential(c, eta) != f) throw std::logic_error("exactness certificate failed to verify");
    return eta;
}

}  // namespace vbalg
