#include "vbalg/chern_simons.hpp"

#include <random>

namespace vbalg {

namespace {

using Poly = std::vector<Matrix>;

Poly poly_mul(const Poly& a, const Poly& b) {
    std::size_t n = a.front().rows();
    Poly out(a.size() + b.size() - 1, Matrix(n, n));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

// R-trace of an R-linear endomorphism of a free module, as a ring element.
Vec r_trace(const RModule& m, const Matrix& phi) {
    const BaseRing& r = m.ring;
    std::size_t d = r.dim;
    Vec out(d);
    if (m.dim == 0) return out;
    if (!m.free_rank) throw PreconditionError("supertrace needs free side and core modules");
    for (std::size_t g = 0; g < *m.free_rank; ++g)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) out[i] += phi(g * d + i, g * d + j) * r.unit[j];
    return out;
}

Vec trace_all(const SuperData& d, const Poly& p, std::vector<Vec>& out) {
    for (const auto& m : p) out.push_back(supertrace(d, m));
    return out.back();
}

Matrix random_symmetric_invertible(std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Scalar v = static_cast<long>(rng() % 5) - 2;
                if (i == j) v += 3;
                m(i, j) = v;
                m(j, i) = v;
            }
        if (sgn(determinant(m)) != 0) return m;
    }
}

Matrix averaged(const Matrix& nabla, const Matrix& dual_nabla, const Matrix& gram, const Matrix& gram_inv) {
    return (nabla + gram_inv * dual_nabla * gram) * Scalar(1, 2);
}

TIForm power_supertrace(const SuperData& d, const Transgression& t, int k, bool with_plain) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    std::size_t n = t.start.rows();
    Poly curv{t.start * t.start, t.start * t.delta + t.delta * t.start, t.delta * t.delta};
    std::vector<Poly> powers{Poly{Matrix::identity(n)}};
    for (int i = 1; i < k; ++i) powers.push_back(poly_mul(powers.back(), curv));
    TIForm out;
    if (with_plain) trace_all(d, poly_mul(powers.back(), curv), out.plain);
    Poly dotted(2 * static_cast<std::size_t>(k) - 1, Matrix(n, n));
    for (int i = 0; i < k; ++i) {
        Poly left = powers[static_cast<std::size_t>(i)];
        for (auto& m : left) m = m * t.delta;
        Poly term = poly_mul(left, powers[static_cast<std::size_t>(k - 1 - i)]);
        for (std::size_t j = 0; j < term.size(); ++j) dotted[j] += term[j];
    }
    trace_all(d, dotted, out.dotted);
    return out;
}

void require_flat(const SuperData& d) {
    if (!is_flat_super(d).flat) throw PreconditionError("Chern-Simons forms need flat data");
}

void require_metric(const SuperData& d, const GradedMetric& g) {
    Report rep = check_metric(d, g);
    if (!rep.ok()) throw PreconditionError("invalid metric", rep);
}

}  // namespace

Report check_metric(const SuperData& d, const GradedMetric& g) {
    Report rep;
    auto check = [&](const RModule& m, const Matrix& gram, const std::string& name) {
        if (gram.rows() != m.dim || gram.cols() != m.dim) {
            rep.add(name + " gram has the wrong shape");
            return;
        }
        if (!m.free_rank) {
            rep.add(name + " module is not free");
            return;
        }
        RModule dual = dual_module(m).module;
        if (!is_r_linear(m, dual, gram)) rep.add(name + " gram is not R-linear");
        else if (r_transpose(gram, m, dual) != gram) rep.add(name + " gram is not symmetric");
        if (m.dim > 0 && sgn(determinant(gram)) == 0) rep.add(name + " gram is singular");
    };
    check(d.core, g.gram_c, "core");
    check(d.side, g.gram_s, "side");
    return rep;
}

GradedMetric identity_metric(const SuperData& d) {
    return {Matrix::identity(d.core.dim), Matrix::identity(d.side.dim)};
}

GradedMetric random_metric(std::uint64_t seed, const SuperData& d) {
    if (!d.algebroid.ring().is_point()) throw PreconditionError("random metrics are drawn over Q only");
    std::mt19937_64 rng(seed);
    GradedMetric g;
    g.gram_c = random_symmetric_invertible(rng, d.core.dim);
    g.gram_s = random_symmetric_invertible(rng, d.side.dim);
    return g;
}

Matrix metric_matrix(const GradedLayout& l, const GradedMetric& g) {
    const Exterior& ex = Exterior::of(l.n);
    Matrix m(l.size(), l.size());
    for (std::size_t p = 0; p <= l.n; ++p)
        for (Mask t : ex.masks(p))
            for (Slot s : {Slot::core, Slot::side}) {
                const Matrix& gram = s == Slot::core ? g.gram_c : g.gram_s;
                std::size_t o = l.index(p, t, s, 0);
                for (std::size_t i = 0; i < gram.rows(); ++i)
                    for (std::size_t j = 0; j < gram.cols(); ++j) m(o + i, o + j) = gram(i, j);
            }
    return m;
}

Matrix transport_operator(const SuperData& d, const GradedMetric& g, const Matrix& adjoint_op) {
    require_metric(d, g);
    GradedLayout l = d.layout();
    GradedMetric inv{d.core.dim ? *inverse(g.gram_c) : Matrix(0, 0), d.side.dim ? *inverse(g.gram_s) : Matrix(0, 0)};
    return metric_matrix(l, inv) * adjoint_op * metric_matrix(l, g);
}

Matrix metric_transport(const SuperData& d, const GradedMetric& g) {
    return transport_operator(d, g, adjoint_matrix(d));
}

GradedLayout scalar_layout(const Algebroid& a) { return {a.dim(), 0, a.ring().dim}; }

Form scalar_component(const Algebroid& a, const Vec& raw, std::size_t p) {
    GradedLayout l = scalar_layout(a);
    std::size_t n = a.dim(), dr = a.ring().dim;
    if (p > n) return Form::zero(p, n, dr);
    std::size_t o = l.offset(p, Slot::side), len = Exterior::of(n).count(p) * dr;
    return Form::from_raw(p, n, dr, Vec(raw.begin() + static_cast<std::ptrdiff_t>(o),
                                        raw.begin() + static_cast<std::ptrdiff_t>(o + len)));
}

Vec scalar_raw(const Algebroid& a, const std::vector<Form>& parts) {
    GradedLayout l = scalar_layout(a);
    Vec out(l.size());
    for (const auto& f : parts) {
        if (f.degree > a.dim()) continue;
        Vec r = f.raw();
        std::size_t o = l.offset(f.degree, Slot::side);
        for (std::size_t i = 0; i < r.size(); ++i) out[o + i] += r[i];
    }
    return out;
}

Vec supertrace(const SuperData& d, const Matrix& op) {
    GradedLayout l = d.layout();
    std::vector<EndTerm> terms = extract_end_form(l, op);
    if (koszul_matrix(l, terms) != op) throw PreconditionError("supertrace of an operator that is not form-linear");
    GradedLayout sc = scalar_layout(d.algebroid);
    const Exterior& ex = Exterior::of(l.n);
    Vec out(sc.size());
    for (const auto& t : terms) {
        if (t.tgt != t.src) continue;
        const RModule& m = t.tgt == Slot::side ? d.side : d.core;
        int sign = t.tgt == Slot::side ? 1 : -1;
        for (Mask u : ex.masks(t.form.degree)) {
            Vec tr = r_trace(m, t.form.at(u));
            std::size_t o = sc.index(t.form.degree, u, Slot::side, 0);
            for (std::size_t i = 0; i < tr.size(); ++i) out[o + i] += sign * tr[i];
        }
    }
    return out;
}

Transgression transgression(const SuperData& d, const GradedMetric& g) {
    Matrix gd = metric_transport(d, g);
    return {gd, superconnection_matrix(d) - gd};
}

TIForm curvature_power_supertrace(const SuperData& d, const Transgression& t, int k) {
    return power_supertrace(d, t, k, true);
}

Vec berezin_integral(const TIForm& f) {
    if (f.dotted.empty()) return {};
    Vec out(f.dotted.front().size());
    for (std::size_t i = 0; i < f.dotted.size(); ++i) axpy(out, Scalar(1, static_cast<long>(i + 1)), f.dotted[i]);
    return out;
}

Vec transgression_form(const SuperData& d, const Matrix& at_zero, const Matrix& at_one, int k) {
    return berezin_integral(power_supertrace(d, Transgression{at_zero, at_one - at_zero}, k, false));
}

Vec cs_form(const SuperData& d, const GradedMetric& g, int k) {
    require_flat(d);
    Vec cs = berezin_integral(power_supertrace(d, transgression(d, g), k, false));
    if (!is_zero(scalar_differential(d.algebroid).apply(cs))) throw std::logic_error("Chern-Simons form is not closed");
    return cs;
}

Vec cs_closed_form_remark(const SuperData& d, const GradedMetric& g, int k) {
    require_flat(d);
    if (k < 1) throw std::invalid_argument("k must be positive");
    Matrix dd = superconnection_matrix(d), gd = metric_transport(d, g);
    Matrix x = gd * dd;
    Matrix p = Matrix::identity(dd.rows());
    for (int i = 1; i < k; ++i) p = p * x;
    return supertrace(d, dd * p - p * gd);
}

std::optional<Vec> scalar_primitive(const Algebroid& a, const Vec& x) {
    Connection triv = trivial_connection(a);
    std::vector<Form> parts;
    for (std::size_t p = 0; p <= a.dim(); ++p) {
        Form c = scalar_component(a, x, p);
        if (c.is_zero()) continue;
        if (p == 0) return std::nullopt;
        auto eta = exactness_certificate(triv, c);
        if (!eta) return std::nullopt;
        parts.push_back(*eta);
    }
    Vec eta = scalar_raw(a, parts);
    if (scalar_differential(a).apply(eta) != x) throw std::logic_error("primitive failed to verify");
    return eta;
}

CsClass cs_class(const SuperData& d, const GradedMetric& g, int k) {
    CsClass c;
    c.k = k;
    c.representative = cs_form(d, g, k);
    const Algebroid& a = d.algebroid;
    c.closed = is_zero(scalar_differential(a).apply(c.representative));
    std::size_t top = 2 * static_cast<std::size_t>(k) - 1;
    c.top = scalar_component(a, c.representative, top);
    Vec lower = sub(c.representative, scalar_raw(a, {c.top}));
    c.lower_primitive = scalar_primitive(a, lower);
    return c;
}

std::optional<Vec> cs_class_difference(const Algebroid& alg, const CsClass& a, const CsClass& b) {
    if (a.k != b.k) throw std::invalid_argument("comparing Chern-Simons classes of different k");
    return scalar_primitive(alg, sub(a.representative, b.representative));
}

Matrix self_adjoint_comparison(const SuperData& d, const GradedMetric& g) {
    require_metric(d, g);
    Connection dc = dual_connection(d.core_connection());
    Connection ds = dual_connection(d.side_connection());
    auto inv_c = d.core.dim ? *inverse(g.gram_c) : Matrix(0, 0);
    auto inv_s = d.side.dim ? *inverse(g.gram_s) : Matrix(0, 0);
    std::vector<Matrix> nc, ns;
    for (std::size_t i = 0; i < d.algebroid.dim(); ++i) {
        nc.push_back(averaged(d.nabla_c[i], dc.nabla[i], g.gram_c, inv_c));
        ns.push_back(averaged(d.nabla_s[i], ds.nabla[i], g.gram_s, inv_s));
    }
    return covariant_matrix(d.layout(), d.algebroid, nc, ns);
}

}  // namespace vbalg
