#include "vbalg/superconn.hpp"

#include <algorithm>

namespace vbalg {

namespace {

bool odd_shift(Slot tgt, Slot src) { return tgt != src; }

std::string tuple_name(Mask t) {
    std::string s = "(";
    for (int i : indices_of(t)) s += (s.size() > 1 ? "," : "") + std::to_string(i);
    return s + ")";
}

// Adds the block m at (row0, col0) scaled by s.
void add_block(Matrix& out, std::size_t row0, std::size_t col0, const Matrix& m, const Scalar& s) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (sgn(m(r, c)) != 0) out(row0 + r, col0 + c) += s * m(r, c);
}

Matrix block(const Matrix& m, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) {
    Matrix b(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) b(r, c) = m(row0 + r, col0 + c);
    return b;
}

Matrix along(const std::vector<Matrix>& nabla, const Vec& x, std::size_t dim) {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0) m += nabla[i] * x[i];
    return m;
}

}  // namespace

std::size_t GradedLayout::offset(std::size_t p, Slot s) const {
    const Exterior& ex = Exterior::of(n);
    std::size_t off = 0;
    for (std::size_t q = 0; q < p; ++q) off += ex.count(q) * (core + side);
    if (s == Slot::side) off += ex.count(p) * core;
    return off;
}

std::size_t GradedLayout::size() const { return (std::size_t(1) << n) * (core + side); }

std::size_t GradedLayout::index(std::size_t p, Mask t, Slot s, std::size_t k) const {
    return offset(p, s) + Exterior::of(n).rank(t) * width(s) + k;
}

Matrix koszul_matrix(const GradedLayout& l, const std::vector<EndTerm>& terms) {
    const Exterior& ex = Exterior::of(l.n);
    Matrix out(l.size(), l.size());
    for (const auto& term : terms) {
        std::size_t q = term.form.degree;
        bool j = odd_shift(term.tgt, term.src);
        for (std::size_t p = 0; p + q <= l.n; ++p) {
            bool flip = ((q + (j ? 1 : 0)) * p) & 1;
            for (Mask s : ex.masks(p))
                for (Mask u : ex.masks(q)) {
                    if (s & u) continue;
                    const Matrix& phi = term.form.at(u);
                    if (phi.is_zero()) continue;
                    int sign = shuffle_sign(s, u) * (flip ? -1 : 1);
                    add_block(out, l.index(p + q, s | u, term.tgt, 0), l.index(p, s, term.src, 0), phi, Scalar(sign));
                }
        }
    }
    return out;
}

Matrix covariant_matrix(const GradedLayout& l, const Algebroid& a, const std::vector<Matrix>& core_nabla,
                        const std::vector<Matrix>& side_nabla) {
    Matrix out(l.size(), l.size());
    for (std::size_t p = 0; p < l.n; ++p) {
        if (l.core) add_block(out, l.offset(p + 1, Slot::core), l.offset(p, Slot::core), ce_matrix(a, core_nabla, l.core, p), 1);
        if (l.side) add_block(out, l.offset(p + 1, Slot::side), l.offset(p, Slot::side), ce_matrix(a, side_nabla, l.side, p), 1);
    }
    return out;
}

std::vector<EndTerm> extract_end_form(const GradedLayout& l, const Matrix& op) {
    const Exterior& ex = Exterior::of(l.n);
    std::vector<EndTerm> terms;
    for (Slot src : {Slot::core, Slot::side}) {
        if (l.width(src) == 0) continue;
        for (Slot tgt : {Slot::core, Slot::side}) {
            if (l.width(tgt) == 0) continue;
            for (std::size_t q = 0; q <= l.n; ++q) {
                HomForm f = HomForm::zero(q, l.n, l.width(tgt), l.width(src));
                for (Mask u : ex.masks(q))
                    f.at(u) = block(op, l.index(q, u, tgt, 0), l.offset(0, src), l.width(tgt), l.width(src));
                if (!f.is_zero()) terms.push_back({tgt, src, std::move(f)});
            }
        }
    }
    return terms;
}

bool is_form_linear(const GradedLayout& l, const Matrix& op) { return koszul_matrix(l, extract_end_form(l, op)) == op; }

Matrix SuperData::omega_of(const Vec& x, const Vec& y) const {
    std::size_t n = algebroid.dim();
    Matrix m(core.dim, side.dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Scalar c = x[i] * y[j] - x[j] * y[i];
            if (sgn(c) != 0) m += omega.at((Mask(1) << i) | (Mask(1) << j)) * c;
        }
    return m;
}

SuperData zero_superdata(const Algebroid& a, const RModule& side, const RModule& core) {
    SuperData d;
    d.algebroid = a;
    d.side = side;
    d.core = core;
    d.del = Matrix(side.dim, core.dim);
    Connection cc{a, core, {}}, cs{a, side, {}};
    // Zero would not satisfy Leibniz over a ring with derivations; use rho on free layouts.
    for (std::size_t i = 0; i < a.dim(); ++i) {
        d.nabla_c.push_back(core.free_rank ? kron(Matrix::identity(*core.free_rank), a.anchor[i]) : Matrix(core.dim, core.dim));
        d.nabla_s.push_back(side.free_rank ? kron(Matrix::identity(*side.free_rank), a.anchor[i]) : Matrix(side.dim, side.dim));
    }
    d.omega = HomForm::zero(2, a.dim(), core.dim, side.dim);
    return d;
}

Report check_superdata(const SuperData& d) {
    Report rep;
    rep.merge(check_algebroid(d.algebroid), "algebroid: ");
    rep.merge(check_module(d.side), "side: ");
    rep.merge(check_module(d.core), "core: ");
    if (!rep.ok()) return rep;
    if (!(d.side.ring == d.algebroid.ring()) || !(d.core.ring == d.algebroid.ring())) {
        rep.add("side and core must live over the algebroid's ring");
        return rep;
    }
    if (d.del.rows() != d.side.dim || d.del.cols() != d.core.dim) {
        rep.add("core-anchor has the wrong shape");
        return rep;
    }
    if (!is_r_linear(d.core, d.side, d.del)) rep.add("core-anchor is not R-linear");
    rep.merge(check_connection(d.core_connection()), "core connection: ");
    rep.merge(check_connection(d.side_connection()), "side connection: ");
    if (d.omega.degree != 2) rep.add("Omega must be a 2-form");
    else rep.merge(check_hom_form(d.algebroid, d.side, d.core, d.omega), "Omega: ");
    return rep;
}

SuperData direct_sum(const SuperData& a, const SuperData& b) {
    if (!(a.algebroid == b.algebroid)) throw std::invalid_argument("direct sum over different algebroids");
    SuperData d;
    d.algebroid = a.algebroid;
    d.side = direct_sum(a.side, b.side);
    d.core = direct_sum(a.core, b.core);
    d.del = block_diag(a.del, b.del);
    for (std::size_t i = 0; i < a.algebroid.dim(); ++i) {
        d.nabla_c.push_back(block_diag(a.nabla_c[i], b.nabla_c[i]));
        d.nabla_s.push_back(block_diag(a.nabla_s[i], b.nabla_s[i]));
    }
    d.omega = HomForm{2, a.algebroid.dim(), d.core.dim, d.side.dim, {}};
    for (std::size_t s = 0; s < a.omega.comp.size(); ++s) d.omega.comp.push_back(block_diag(a.omega.comp[s], b.omega.comp[s]));
    return d;
}

SuperData change_of_basis(const SuperData& d, const Matrix& pe, const Matrix& pc) {
    auto pe_inv = inverse(pe), pc_inv = inverse(pc);
    if (!pe_inv || !pc_inv) throw std::invalid_argument("change of basis matrix is singular");
    SuperData out;
    out.algebroid = d.algebroid;
    out.side = change_basis(d.side, pe);
    out.core = change_basis(d.core, pc);
    out.del = *pe_inv * d.del * pc;
    for (std::size_t i = 0; i < d.algebroid.dim(); ++i) {
        out.nabla_c.push_back(*pc_inv * d.nabla_c[i] * pc);
        out.nabla_s.push_back(*pe_inv * d.nabla_s[i] * pe);
    }
    out.omega = compose(compose(*pc_inv, d.omega), pe);
    return out;
}

GradedElement GradedElement::zero(const SuperData& d) {
    GradedElement g;
    std::size_t n = d.algebroid.dim();
    for (std::size_t p = 0; p <= n; ++p) {
        g.core.push_back(Form::zero(p, n, d.core.dim));
        g.side.push_back(Form::zero(p, n, d.side.dim));
    }
    return g;
}

GradedElement GradedElement::from_raw(const GradedLayout& l, const Vec& raw) {
    if (raw.size() != l.size()) throw DimensionError("graded element has wrong length");
    const Exterior& ex = Exterior::of(l.n);
    GradedElement g;
    for (std::size_t p = 0; p <= l.n; ++p) {
        std::size_t cn = ex.count(p) * l.core, sn = ex.count(p) * l.side;
        std::size_t c0 = l.offset(p, Slot::core), s0 = l.offset(p, Slot::side);
        g.core.push_back(Form::from_raw(p, l.n, l.core, Vec(raw.begin() + static_cast<std::ptrdiff_t>(c0),
                                                            raw.begin() + static_cast<std::ptrdiff_t>(c0 + cn))));
        g.side.push_back(Form::from_raw(p, l.n, l.side, Vec(raw.begin() + static_cast<std::ptrdiff_t>(s0),
                                                            raw.begin() + static_cast<std::ptrdiff_t>(s0 + sn))));
    }
    return g;
}

Vec GradedElement::raw(const GradedLayout& l) const {
    Vec out;
    out.reserve(l.size());
    for (std::size_t p = 0; p <= l.n; ++p) {
        Vec c = core.at(p).raw(), s = side.at(p).raw();
        out.insert(out.end(), c.begin(), c.end());
        out.insert(out.end(), s.begin(), s.end());
    }
    if (out.size() != l.size()) throw DimensionError("graded element does not match the layout");
    return out;
}

Matrix superconnection_matrix(const SuperData& d) {
    GradedLayout l = d.layout();
    Matrix m = covariant_matrix(l, d.algebroid, d.nabla_c, d.nabla_s);
    HomForm del0{0, l.n, d.side.dim, d.core.dim, {d.del}};
    m += koszul_matrix(l, {{Slot::side, Slot::core, del0}, {Slot::core, Slot::side, d.omega}});
    return m;
}

GradedElement apply_D(const SuperData& d, const GradedElement& v) {
    GradedLayout l = d.layout();
    return GradedElement::from_raw(l, superconnection_matrix(d).apply(v.raw(l)));
}

FlatnessReport is_flat_super(const SuperData& d) {
    FlatnessReport rep;
    const Algebroid& a = d.algebroid;
    std::size_t n = a.dim();
    const Exterior& ex = Exterior::of(n);
    rep.conditions.fill(true);
    for (std::size_t i = 0; i < n; ++i)
        if (d.del * d.nabla_c[i] != d.nabla_s[i] * d.del) {
            rep.conditions[0] = false;
            rep.witnesses.push_back("condition 1 (del nabla^c = nabla^s del) fails along basis element " + std::to_string(i));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Matrix& om = d.omega.at((Mask(1) << i) | (Mask(1) << j));
            if (!(curvature_of(a, d.nabla_c, i, j) + om * d.del).is_zero()) {
                rep.conditions[1] = false;
                rep.witnesses.push_back("condition 2 (F^c = -Omega del) fails on pair " + tuple_name((Mask(1) << i) | (Mask(1) << j)));
            }
            if (!(curvature_of(a, d.nabla_s, i, j) + d.del * om).is_zero()) {
                rep.conditions[2] = false;
                rep.witnesses.push_back("condition 3 (F^s = -del Omega) fails on pair " + tuple_name((Mask(1) << i) | (Mask(1) << j)));
            }
        }
    HomForm dom = hom_differential(a, d.nabla_c, d.nabla_s, d.omega);
    for (Mask t : ex.masks(std::min<std::size_t>(3, n + 1) == 3 && n >= 3 ? 3 : 0)) {
        if (n < 3) break;
        if (!dom.at(t).is_zero()) {
            rep.conditions[3] = false;
            rep.witnesses.push_back("condition 4 (D^c Omega + Omega D^s = 0) fails on triple " + tuple_name(t));
        }
    }

    GradedLayout l = d.layout();
    Matrix cov = covariant_matrix(l, a, d.nabla_c, d.nabla_s);
    HomForm del0{0, n, d.side.dim, d.core.dim, {d.del}};
    Matrix pd = koszul_matrix(l, {{Slot::side, Slot::core, del0}});
    Matrix po = koszul_matrix(l, {{Slot::core, Slot::side, d.omega}});
    rep.f_plus = pd * cov + cov * pd;
    rep.f_zero = cov * cov + pd * po + po * pd;
    rep.f_minus = cov * po + po * cov;
    Matrix full = superconnection_matrix(d);
    rep.square_zero = (full * full).is_zero();
    bool pieces_ok[3] = {rep.f_plus.is_zero(), rep.f_zero.is_zero(), rep.f_minus.is_zero()};
    if (pieces_ok[0] != rep.conditions[0] || pieces_ok[1] != (rep.conditions[1] && rep.conditions[2]) ||
        pieces_ok[2] != rep.conditions[3])
        throw std::logic_error("curvature pieces disagree with the componentwise conditions");
    rep.flat = std::all_of(rep.conditions.begin(), rep.conditions.end(), [](bool b) { return b; });
    if (rep.flat != rep.square_zero) throw std::logic_error("D^2 disagrees with the componentwise conditions");
    return rep;
}

Matrix gauge_matrix(const GradedLayout& l, const HomForm& sigma) {
    return koszul_matrix(l, {{Slot::core, Slot::side, sigma}});
}

SuperData gauge_transform(const SuperData& d, const HomForm& sigma) {
    const Algebroid& a = d.algebroid;
    std::size_t n = a.dim();
    if (sigma.degree != 1 || sigma.n != n || sigma.rows != d.core.dim || sigma.cols != d.side.dim)
        throw std::invalid_argument("gauge must be a Hom(E, C)-valued 1-form");
    SuperData out = d;
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix& si = sigma.at(Mask(1) << i);
        out.nabla_c[i] = d.nabla_c[i] + si * d.del;
        out.nabla_s[i] = d.nabla_s[i] + d.del * si;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Matrix& si = sigma.at(Mask(1) << i);
            const Matrix& sj = sigma.at(Mask(1) << j);
            Matrix s_br(d.core.dim, d.side.dim);
            Vec b = a.bracket_basis(i, j);
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(b[k]) != 0) s_br += sigma.at(Mask(1) << k) * b[k];
            Matrix& om = out.omega.at((Mask(1) << i) | (Mask(1) << j));
            om += s_br - si * d.nabla_s[j] + sj * d.nabla_s[i] - d.nabla_c[i] * sj + d.nabla_c[j] * si -
                  si * d.del * sj + sj * d.del * si;
        }
    return out;
}

GaugeExpansion gauge_expansion(const SuperData& d, const HomForm& sigma) {
    GradedLayout l = d.layout();
    Matrix s = gauge_matrix(l, sigma);
    GaugeExpansion e;
    e.d = superconnection_matrix(d);
    e.first = s * e.d - e.d * s;
    e.second = s * e.first - e.first * s;
    e.third = s * e.second - e.second * s;
    return e;
}

SuperData extract_superdata(const SuperData& shape, const Matrix& op) {
    GradedLayout l = shape.layout();
    std::size_t n = l.n, c = l.core, e = l.side;
    SuperData out = shape;
    out.del = block(op, l.offset(0, Slot::side), l.offset(0, Slot::core), e, c);
    for (std::size_t i = 0; i < n; ++i) {
        Mask t = Mask(1) << i;
        out.nabla_c[i] = block(op, l.index(1, t, Slot::core, 0), l.offset(0, Slot::core), c, c);
        out.nabla_s[i] = block(op, l.index(1, t, Slot::side, 0), l.offset(0, Slot::side), e, e);
    }
    for (Mask t : Exterior::of(n).masks(2)) out.omega.at(t) = block(op, l.index(2, t, Slot::core, 0), l.offset(0, Slot::side), c, e);
    if (superconnection_matrix(out) != op) throw std::logic_error("operator does not have the shape of a superconnection");
    return out;
}

SuperData gauge_transform_exp(const SuperData& d, const HomForm& sigma) {
    GaugeExpansion e = gauge_expansion(d, sigma);
    if (!e.third.is_zero()) throw std::logic_error("[s,[s,[s,D]]] does not vanish");
    Matrix op = e.d + e.first + e.second * Scalar(1, 2);
    return extract_superdata(d, op);
}

FatSection fat_bracket(const SuperData& d, const FatSection& a, const FatSection& b) {
    std::size_t c = d.core.dim, e = d.side.dim;
    Matrix nc_x = along(d.nabla_c, a.x, c), ns_x = along(d.nabla_s, a.x, e);
    Matrix nc_y = along(d.nabla_c, b.x, c), ns_y = along(d.nabla_s, b.x, e);
    const Matrix& phi = a.phi;
    const Matrix& psi = b.phi;
    Matrix chi = -d.omega_of(a.x, b.x) + nc_x * psi - psi * ns_x - nc_y * phi + phi * ns_y + phi * d.del * psi -
                 psi * d.del * phi;
    return {d.algebroid.bracket_of(a.x, b.x), chi};
}

std::pair<Matrix, Matrix> fat_representations(const SuperData& d, const FatSection& a) {
    Matrix psi_c = along(d.nabla_c, a.x, d.core.dim) + a.phi * d.del;
    Matrix psi_s = along(d.nabla_s, a.x, d.side.dim) + d.del * a.phi;
    return {psi_c, psi_s};
}

Scalar jacobi_omega(const SuperData& d) {
    std::size_t n = d.algebroid.dim();
    Scalar worst = 0;
    Matrix zero_phi(d.core.dim, d.side.dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec v[3] = {unit_vector(n, i), unit_vector(n, j), unit_vector(n, k)};
                Matrix sum(d.core.dim, d.side.dim);
                for (int r = 0; r < 3; ++r) {
                    const Vec& x = v[r];
                    const Vec& y = v[(r + 1) % 3];
                    const Vec& z = v[(r + 2) % 3];
                    sum += d.omega_of(d.algebroid.bracket_of(x, y), z);
                    FatSection lhs{Vec(n), d.omega_of(x, y)};
                    FatSection rhs{z, zero_phi};
                    sum += fat_bracket(d, lhs, rhs).phi;
                }
                for (const auto& x : sum.entries()) worst = std::max(worst, Scalar(abs(x)));
            }
    return worst;
}

Matrix adjoint_matrix(const SuperData& d) {
    const Algebroid& a = d.algebroid;
    Connection dc = dual_connection(d.core_connection());
    Connection ds = dual_connection(d.side_connection());
    GradedLayout l = d.layout();
    Matrix m = covariant_matrix(l, a, dc.nabla, ds.nabla);
    HomForm del_t{0, l.n, d.core.dim, d.side.dim, {r_transpose(d.del, d.core, d.side)}};
    HomForm om_t = HomForm::zero(2, l.n, d.side.dim, d.core.dim);
    for (std::size_t s = 0; s < d.omega.comp.size(); ++s) om_t.comp[s] = -r_transpose(d.omega.comp[s], d.side, d.core);
    m += koszul_matrix(l, {{Slot::core, Slot::side, del_t}, {Slot::side, Slot::core, om_t}});
    return m;
}

Vec pairing(const SuperData& d, const Vec& a, const Vec& s) {
    GradedLayout l = d.layout();
    std::size_t dr = d.algebroid.ring().dim;
    GradedLayout sc{l.n, 0, dr};
    const Exterior& ex = Exterior::of(l.n);
    Vec out(sc.size());
    for (Slot slot : {Slot::core, Slot::side}) {
        std::size_t w = l.width(slot);
        if (w == 0) continue;
        const RModule& mod = slot == Slot::core ? d.core : d.side;
        bool odd_a = slot == Slot::core;
        for (std::size_t p = 0; p <= l.n; ++p)
            for (Mask sm : ex.masks(p)) {
                std::size_t ia = l.index(p, sm, slot, 0);
                Vec x(a.begin() + static_cast<std::ptrdiff_t>(ia), a.begin() + static_cast<std::ptrdiff_t>(ia + w));
                if (is_zero(x)) continue;
                for (std::size_t q = 0; p + q <= l.n; ++q)
                    for (Mask um : ex.masks(q)) {
                        if (sm & um) continue;
                        std::size_t is = l.index(q, um, slot, 0);
                        Vec xi(s.begin() + static_cast<std::ptrdiff_t>(is), s.begin() + static_cast<std::ptrdiff_t>(is + w));
                        if (is_zero(xi)) continue;
                        Vec v = dual_pairing(mod, x, xi);
                        int sign = shuffle_sign(sm, um) * ((odd_a && (q & 1)) ? -1 : 1);
                        std::size_t io = sc.index(p + q, sm | um, Slot::side, 0);
                        for (std::size_t k = 0; k < dr; ++k) out[io + k] += sign * v[k];
                    }
            }
    }
    return out;
}

Matrix scalar_differential(const Algebroid& a) {
    std::size_t dr = a.ring().dim;
    GradedLayout sc{a.dim(), 0, dr};
    return covariant_matrix(sc, a, {}, a.anchor);
}

SuperData dualize(const SuperData& d) {
    if (!is_flat_super(d).flat) throw PreconditionError("dualize needs flat data");
    if (!d.side.free_rank || !d.core.free_rank) throw PreconditionError("dualize needs free side and core modules");
    Connection dc = dual_connection(d.core_connection());
    Connection ds = dual_connection(d.side_connection());
    SuperData out;
    out.algebroid = d.algebroid;
    out.side = dc.coeff;
    out.core = ds.coeff;
    out.del = r_transpose(d.del, d.core, d.side);
    out.nabla_c = ds.nabla;
    out.nabla_s = dc.nabla;
    out.omega = HomForm::zero(2, d.algebroid.dim(), out.core.dim, out.side.dim);
    for (std::size_t s = 0; s < d.omega.comp.size(); ++s) out.omega.comp[s] = -r_transpose(d.omega.comp[s], d.side, d.core);
    if (!is_flat_super(out).flat) throw std::logic_error("dual data is not flat");
    return out;
}

DualDifferentialReport dual_differential_check(const SuperData& d) {
    if (!d.side.free_rank || !d.core.free_rank) throw PreconditionError("dual differential needs free side and core modules");
    GradedLayout l = d.layout();
    std::size_t dr = d.algebroid.ring().dim;
    GradedLayout sc{l.n, 0, dr};
    const Exterior& ex = Exterior::of(l.n);
    Matrix dd = superconnection_matrix(d);
    Matrix da = scalar_differential(d.algebroid);
    DualDifferentialReport rep;
    rep.d_dual = Matrix(l.size(), l.size());
    // Degree-0 generators a and the pieces of D a they need.
    struct Probe {
        Slot slot;
        std::size_t gen;
        Vec a, da_vec;
    };
    std::vector<Probe> probes;
    for (Slot slot : {Slot::core, Slot::side}) {
        const RModule& mod = slot == Slot::core ? d.core : d.side;
        for (std::size_t g = 0; g < *mod.free_rank; ++g) {
            Vec a(l.size());
            Vec gen = mod.generator(g);
            for (std::size_t k = 0; k < gen.size(); ++k) a[l.index(0, 0, slot, k)] = gen[k];
            probes.push_back({slot, g, a, dd.apply(a)});
        }
    }
    for (std::size_t col = 0; col < l.size(); ++col) {
        Vec eta = unit_vector(l.size(), col);
        for (const auto& pr : probes) {
            bool odd_a = pr.slot == Slot::core;
            Vec rhs = sub(da.apply(pairing(d, pr.a, eta)), pairing(d, pr.da_vec, eta));
            if (odd_a) rhs = scale(rhs, -1);
            for (std::size_t r = 0; r <= l.n; ++r)
                for (Mask t : ex.masks(r)) {
                    std::size_t in = sc.index(r, t, Slot::side, 0);
                    int sign = (odd_a && (r & 1)) ? -1 : 1;
                    for (std::size_t c = 0; c < dr; ++c)
                        rep.d_dual(l.index(r, t, pr.slot, pr.gen * dr + c), col) = sign * rhs[in + c];
                }
        }
    }
    Matrix sq = rep.d_dual * rep.d_dual;
    rep.square_zero = sq.is_zero();
    if (!rep.square_zero) {
        for (std::size_t c = 0; c < sq.cols() && rep.witnesses.empty(); ++c)
            for (std::size_t r = 0; r < sq.rows(); ++r)
                if (sgn(sq(r, c)) != 0) {
                    rep.witnesses.push_back("d_D^2 is nonzero on raw basis element " + std::to_string(c));
                    break;
                }
    }
    rep.matches_adjoint = rep.d_dual == adjoint_matrix(d);
    return rep;
}

}  // namespace vbalg
