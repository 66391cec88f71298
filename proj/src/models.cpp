#include "vbalg/models.hpp"

#include <random>
#include <tuple>

#include "vbalg/classify.hpp"

namespace vbalg {

namespace {

Algebroid over_q(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, long>>& brackets) {
    std::vector<Vec> s(n * n * n, Vec{Scalar(0)});
    for (auto [i, j, k, c] : brackets) {
        s[(i * n + j) * n + k] = Vec{Scalar(c)};
        s[(j * n + i) * n + k] = Vec{Scalar(-c)};
    }
    return lie_algebra_over(BaseRing::rationals(), n, s);
}

using Rng = std::mt19937_64;

long draw(Rng& rng, long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long lo = -2, long hi = 2) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = draw(rng, lo, hi);
    return m;
}

Matrix random_invertible(Rng& rng, std::size_t n) {
    for (;;) {
        Matrix m = random_matrix(rng, n, n);
        if (sgn(determinant(m)) != 0) return m;
    }
}

// Linear functionals vanishing on [A, A], as rows.
std::vector<Vec> characters(const Algebroid& a) {
    std::size_t n = a.dim();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec b = a.bracket_basis(i, j);
            if (!is_zero(b)) rows.push_back(b);
        }
    if (rows.empty()) {
        std::vector<Vec> all;
        for (std::size_t i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
        return all;
    }
    return kernel(Matrix::from_rows(rows, n)).basis;
}

Connection character_connection(Rng& rng, const Algebroid& a, std::size_t m) {
    auto chars = characters(a);
    Vec chi(a.dim());
    for (const auto& c : chars) axpy(chi, Scalar(draw(rng, -1, 1)), c);
    Matrix nm = random_matrix(rng, m, m);
    Connection c{a, free_module(a.ring(), m), {}};
    for (std::size_t i = 0; i < a.dim(); ++i) c.nabla.push_back(nm * chi[i]);
    return c;
}

HomForm random_closed_omega(Rng& rng, const Connection& side, const Connection& core) {
    const Algebroid& a = side.algebroid;
    std::size_t n = a.dim();
    HomSpace h = module_hom_space(side.coeff, core.coeff);
    if (n < 2 || h.basis.empty()) return HomForm::zero(2, n, core.coeff.dim, side.coeff.dim);
    Connection hc = hom_connection(side, core, h);
    std::size_t raw = Exterior::of(n).count(2) * h.module.dim;
    std::vector<Vec> closed;
    if (n < 3) {
        for (std::size_t i = 0; i < raw; ++i) closed.push_back(unit_vector(raw, i));
    } else {
        closed = kernel(ce_matrix(hc, 2)).basis;
    }
    Vec v(raw);
    for (const auto& c : closed) axpy(v, Scalar(draw(rng, -2, 2)), c);
    return to_hom_form(h, Form::from_raw(2, n, h.module.dim, v));
}

}  // namespace

Algebroid lie_algebra_over(const BaseRing& r, std::size_t n, const std::vector<Vec>& structure) {
    if (structure.size() != n * n * n) throw DimensionError("structure constants need n^3 ring elements");
    std::size_t d = r.dim;
    Algebroid a;
    a.module = free_module(r, n);
    std::size_t q = n * d;
    a.bracket.assign(q * q * q, Scalar(0));
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t k = 0; k < n; ++k) {
                const Vec& s = structure[(g * n + h) * n + k];
                if (s.size() != d) throw DimensionError("structure constant is not a ring element");
                if (is_zero(s)) continue;
                for (std::size_t c = 0; c < d; ++c)
                    for (std::size_t e = 0; e < d; ++e) {
                        Vec coef = r.multiply(r.multiply(unit_vector(d, c), unit_vector(d, e)), s);
                        for (std::size_t l = 0; l < d; ++l)
                            a.bracket[((g * d + c) * q + h * d + e) * q + k * d + l] += coef[l];
                    }
            }
    a.anchor.assign(q, Matrix(d, d));
    return a;
}

Algebroid lie_algebra(const std::string& name, std::size_t n) {
    if (name == "abelian") return over_q(n, {});
    if (name == "aff1") return over_q(2, {{0, 1, 1, 1}});
    // basis h, e, f
    if (name == "sl2") return over_q(3, {{0, 1, 1, 2}, {0, 2, 2, -2}, {1, 2, 0, 1}});
    // basis x, y, z
    if (name == "heisenberg") return over_q(3, {{0, 1, 2, 1}});
    throw std::invalid_argument("unknown Lie algebra '" + name + "'");
}

Algebroid extend_scalars(const Algebroid& a, const BaseRing& r) {
    if (!a.ring().is_point()) throw PreconditionError("extension of scalars starts from an algebra over Q");
    std::size_t n = a.dim();
    std::vector<Vec> s;
    for (std::size_t i = 0; i < n * n * n; ++i) s.push_back(scale(r.unit, a.bracket[i]));
    return lie_algebra_over(r, n, s);
}

Algebroid product_algebra(const Algebroid& a, const Algebroid& b) {
    if (!a.ring().is_point() || !b.ring().is_point()) throw PreconditionError("product of Lie algebras over Q");
    std::size_t na = a.dim(), nb = b.dim(), n = na + nb;
    std::vector<Vec> s(n * n * n, Vec{Scalar(0)});
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < na; ++k) s[(i * n + j) * n + k][0] = a.structure(i, j, k);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < nb; ++k) s[((na + i) * n + na + j) * n + na + k][0] = b.structure(i, j, k);
    return lie_algebra_over(BaseRing::rationals(), n, s);
}

Algebroid tangent_algebroid(const BaseRing& r) {
    DerivationSpace ds = derivations(r);
    Algebroid a;
    a.module = derivation_module(ds);
    std::size_t n = ds.dim();
    std::vector<Vec> flat;
    for (const auto& b : ds.basis) flat.push_back(b.entries());
    Coordinates co(flat, r.dim * r.dim);
    a.bracket.assign(n * n * n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix c = ds.basis[i] * ds.basis[j] - ds.basis[j] * ds.basis[i];
            auto v = co.of(c.entries());
            if (!v) throw std::logic_error("derivations are not closed under the commutator");
            for (std::size_t k = 0; k < n; ++k) a.bracket[(i * n + j) * n + k] = (*v)[k];
        }
    a.anchor = ds.basis;
    return a;
}

SuperData adjoint_point_model(const Algebroid& a) {
    if (!a.ring().is_point()) throw PreconditionError("adjoint point model needs the base ring Q");
    SuperData d = zero_superdata(a, zero_module(a.ring()), a.module);
    d.nabla_c = adjoint_connection(a).nabla;
    return d;
}

SuperData rho_zero_adjoint_model(const Algebroid& a, const RModule& t, const std::vector<Matrix>& nabla_tilde) {
    if (!a.anchor_is_zero()) throw PreconditionError("the adjoint model needs a zero anchor");
    if (nabla_tilde.size() != t.dim) throw DimensionError("one operator per basis element of T expected");
    std::size_t n = a.dim();
    SuperData d = zero_superdata(a, t, a.module);
    d.nabla_c = adjoint_connection(a).nabla;
    for (auto& m : d.nabla_s) m = Matrix(t.dim, t.dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Matrix& om = d.omega.at((Mask(1) << i) | (Mask(1) << j));
            Vec x = unit_vector(n, i), y = unit_vector(n, j), xy = a.bracket_basis(i, j);
            for (std::size_t s = 0; s < t.dim; ++s) {
                const Matrix& nt = nabla_tilde[s];
                Vec col = sub(add(a.bracket_of(nt.apply(x), y), a.bracket_of(x, nt.apply(y))), nt.apply(xy));
                for (std::size_t r = 0; r < n; ++r) om(r, s) = col[r];
            }
        }
    Report rep = check_superdata(d);
    if (!rep.ok()) throw PreconditionError("adjoint model data is invalid", rep);
    return d;
}

RhoZeroFamily rho_zero_family(bool scaled) {
    BaseRing r = BaseRing::truncated_polynomial(2);
    Vec one{Scalar(1), Scalar(0)}, zero{Scalar(0), Scalar(0)};
    Vec coef = scaled ? Vec{Scalar(1), Scalar(1)} : one;
    std::vector<Vec> s(8, zero);
    s[(0 * 2 + 1) * 2 + 1] = coef;
    s[(1 * 2 + 0) * 2 + 1] = scale(coef, -1);
    RhoZeroFamily f;
    f.algebra = lie_algebra_over(r, 2, s);
    DerivationSpace ds = derivations(r);
    f.t = derivation_module(ds);
    for (const auto& l : ds.basis) f.nabla_tilde.push_back(kron(Matrix::identity(2), l));
    return f;
}

SuperData rho_zero_example(bool scaled) {
    RhoZeroFamily f = rho_zero_family(scaled);
    return rho_zero_adjoint_model(f.algebra, f.t, f.nabla_tilde);
}

Algebroid random_algebra(std::uint64_t seed, std::size_t dim) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    switch (dim) {
    case 0:
    case 1:
        return lie_algebra("abelian", dim);
    case 2:
        return draw(rng, 0, 2) == 0 ? lie_algebra("abelian", 2) : lie_algebra("aff1");
    case 3: {
        long c = draw(rng, 0, 3);
        if (c == 0) return lie_algebra("sl2");
        if (c == 1) return lie_algebra("heisenberg");
        if (c == 2) return product_algebra(lie_algebra("aff1"), lie_algebra("abelian", 1));
        return lie_algebra("abelian", 3);
    }
    case 4:
        return draw(rng, 0, 1) == 0 ? product_algebra(lie_algebra("aff1"), lie_algebra("aff1"))
                                    : product_algebra(lie_algebra("heisenberg"), lie_algebra("abelian", 1));
    default:
        throw PreconditionError("random instances support algebras of dimension at most 4");
    }
}

SuperData random_flat_instance(std::uint64_t seed, RandomDims dims) {
    if (dims.side > 4 || dims.core > 4) throw PreconditionError("random instances support dimensions at most 4");
    Algebroid a = random_algebra(seed, dims.algebra);
    Rng rng(seed);
    std::size_t n = a.dim();
    std::size_t f = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(std::min(dims.side, dims.core))));
    std::size_t v = dims.side - f, k = dims.core - f;

    Connection side0 = character_connection(rng, a, v);
    Connection core0 = character_connection(rng, a, k);
    SuperData d = build_type0(side0, core0, random_closed_omega(rng, side0, core0));

    Connection nf{a, free_module(a.ring(), f), {}};
    for (std::size_t i = 0; i < n; ++i) nf.nabla.push_back(random_matrix(rng, f, f));
    d = direct_sum(d, build_type1(nf));

    HomForm sigma = HomForm::zero(1, n, dims.core, dims.side);
    for (auto& m : sigma.comp) m = random_matrix(rng, dims.core, dims.side, -1, 1);
    d = gauge_transform(d, sigma);
    Matrix pe = random_invertible(rng, dims.side);
    Matrix pc = random_invertible(rng, dims.core);
    return change_of_basis(d, pe, pc);
}

HomForm random_gauge(std::uint64_t seed, const SuperData& d) {
    if (!d.algebroid.ring().is_point()) throw PreconditionError("random gauges are drawn over Q only");
    Rng rng(seed);
    HomForm sigma = HomForm::zero(1, d.algebroid.dim(), d.core.dim, d.side.dim);
    for (auto& m : sigma.comp) m = random_matrix(rng, d.core.dim, d.side.dim);
    return sigma;
}

SuperData aff1_lambda(const Scalar& lambda) {
    Algebroid a = lie_algebra("aff1");
    RModule q = free_module(a.ring(), 1);
    SuperData d = zero_superdata(a, q, q);
    d.del = Matrix::identity(1);
    d.nabla_c = {Matrix::identity(1) * lambda, Matrix(1, 1)};
    d.nabla_s = d.nabla_c;
    return d;
}

std::vector<std::string> example_names() {
    return {"aff1-type1",      "aff1-lambda",       "aff1-adjoint",    "sl2-adjoint",     "abelian2-type0",
            "heisenberg-adjoint", "rho-zero-constant", "rho-zero-scaled", "tangent-type1", "random"};
}

SuperData named_example(const std::string& name, std::uint64_t seed, RandomDims dims) {
    if (name == "aff1-type1") {
        Algebroid a = lie_algebra("aff1");
        return build_type1(Connection{a, free_module(a.ring(), 1), {Matrix(1, 1), Matrix::identity(1)}});
    }
    if (name == "aff1-lambda") return aff1_lambda(Scalar(1));
    if (name == "aff1-adjoint") return adjoint_point_model(lie_algebra("aff1"));
    if (name == "sl2-adjoint") return adjoint_point_model(lie_algebra("sl2"));
    if (name == "heisenberg-adjoint") return adjoint_point_model(lie_algebra("heisenberg"));
    if (name == "abelian2-type0") {
        Algebroid a = lie_algebra("abelian", 2);
        Connection triv{a, free_module(a.ring(), 1), {Matrix(1, 1), Matrix(1, 1)}};
        HomForm om = HomForm::zero(2, 2, 1, 1);
        om.at(0b11) = Matrix::identity(1);
        return build_type0(triv, triv, om);
    }
    if (name == "rho-zero-constant") return rho_zero_example(false);
    if (name == "rho-zero-scaled") return rho_zero_example(true);
    if (name == "tangent-type1") {
        BaseRing r = BaseRing::truncated_polynomial(3);
        Algebroid a = tangent_algebroid(r);
        // nabla_L f = L(f) + theta(L) f, theta(L) = (x-coefficient of L(x)) x^2.
        Connection c = trivial_connection(a);
        Matrix x2 = r.multiplication_matrix(unit_vector(3, 2));
        for (std::size_t i = 0; i < a.dim(); ++i) c.nabla[i] += x2 * a.anchor[i](1, 1);
        return build_type1(c);
    }
    if (name == "random") return random_flat_instance(seed, dims);
    throw std::invalid_argument("unknown example '" + name + "'");
}

}  // namespace vbalg
