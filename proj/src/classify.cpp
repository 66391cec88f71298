#include "vbalg/classify.hpp"

#include <algorithm>

namespace vbalg {

namespace {

Matrix sub_block(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
    Matrix b(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) b(r, c) = m(r0 + r, c0 + c);
    return b;
}

void put_block(Matrix& m, std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) m(r0 + r, c0 + c) = b(r, c);
}

HomForm sub_block(const HomForm& f, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
    HomForm out{f.degree, f.n, rows, cols, {}};
    for (const auto& m : f.comp) out.comp.push_back(sub_block(m, r0, c0, rows, cols));
    return out;
}

Subspace all_of(std::size_t n) {
    Subspace s{n, {}};
    for (std::size_t i = 0; i < n; ++i) s.basis.push_back(unit_vector(n, i));
    return s;
}

Subspace kernel_of(const Matrix& m) {
    if (m.cols() == 0) return Subspace{0, {}};
    if (m.rows() == 0 || m.is_zero()) return all_of(m.cols());
    return kernel(m);
}

Subspace image_of(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return Subspace{m.rows(), {}};
    return image(m);
}

Vec reversed(Vec v) {
    std::reverse(v.begin(), v.end());
    return v;
}

// Coordinate complement; variant 1 scans the coordinates from the end.
Subspace complement_of(const Subspace& s, int variant) {
    if (s.ambient_dim == 0) return s;
    if (s.basis.empty()) return all_of(s.ambient_dim);
    if (variant == 0) return complement(s);
    Subspace r{s.ambient_dim, {}};
    for (const auto& v : s.basis) r.basis.push_back(reversed(v));
    Subspace c = complement(r);
    for (auto& v : c.basis) v = reversed(v);
    return c;
}

std::vector<Vec> embed_all(const Matrix& cols, const std::vector<Vec>& coords) {
    std::vector<Vec> out;
    for (const auto& c : coords) out.push_back(cols.apply(c));
    return out;
}

Matrix columns(std::size_t rows, const std::vector<Vec>& a, const std::vector<Vec>& b) {
    std::vector<Vec> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return Matrix::from_columns(all, rows);
}

bool same_tensors(const SuperData& a, const SuperData& b) {
    return a.del == b.del && a.nabla_c == b.nabla_c && a.nabla_s == b.nabla_s && a.omega == b.omega;
}

HomForm curvature_form(const Algebroid& a, const std::vector<Matrix>& nabla, std::size_t m) {
    std::size_t n = a.dim();
    HomForm f = HomForm::zero(2, n, m, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) f.at((Mask(1) << i) | (Mask(1) << j)) = curvature_of(a, nabla, i, j);
    return f;
}

void require_flat(const SuperData& d) {
    FlatnessReport f = is_flat_super(d);
    if (!f.flat) {
        Report rep;
        for (const auto& w : f.witnesses) rep.add(w);
        throw PreconditionError("data is not flat", rep);
    }
}

// Matrix of coordinates of the vectors in `vs` with respect to `basis`.
Matrix coordinates_of(const std::vector<Vec>& basis, std::size_t ambient, const std::vector<Vec>& vs) {
    Matrix out(basis.size(), vs.size());
    if (basis.empty()) return out;
    Coordinates co(basis, ambient);
    for (std::size_t j = 0; j < vs.size(); ++j) {
        auto c = co.of(vs[j]);
        if (!c) throw std::logic_error("vector is outside the expected span");
        for (std::size_t i = 0; i < basis.size(); ++i) out(i, j) = (*c)[i];
    }
    return out;
}

}  // namespace

SuperData build_type1(const Connection& nabla) {
    Report rep = check_connection(nabla);
    if (!rep.ok()) throw PreconditionError("invalid connection", rep);
    const Algebroid& a = nabla.algebroid;
    std::size_t m = nabla.coeff.dim;
    SuperData d;
    d.algebroid = a;
    d.side = nabla.coeff;
    d.core = nabla.coeff;
    d.del = -Matrix::identity(m);
    d.nabla_c = nabla.nabla;
    d.nabla_s = nabla.nabla;
    d.omega = curvature_form(a, nabla.nabla, m);
    return d;
}

SuperData build_type0(const Connection& side, const Connection& core, const HomForm& omega) {
    Report rep;
    rep.merge(check_connection(side), "side: ");
    rep.merge(check_connection(core), "core: ");
    if (rep.ok()) {
        if (!is_flat(side)) rep.add("side connection is not flat");
        if (!is_flat(core)) rep.add("core connection is not flat");
    }
    if (!rep.ok()) throw PreconditionError("invalid type-0 data", rep);
    const Algebroid& a = side.algebroid;
    SuperData d;
    d.algebroid = a;
    d.side = side.coeff;
    d.core = core.coeff;
    d.del = Matrix(side.coeff.dim, core.coeff.dim);
    d.nabla_c = core.nabla;
    d.nabla_s = side.nabla;
    d.omega = omega;
    rep.merge(check_superdata(d));
    if (rep.ok() && !hom_differential(a, core.nabla, side.nabla, omega).is_zero())
        rep.add("Omega is not closed: D^c Omega + Omega D^s != 0");
    if (!rep.ok()) throw PreconditionError("invalid type-0 data", rep);
    return d;
}

std::optional<RegularSplitting> regularity(const SuperData& d, int variant) {
    const BaseRing& r = d.algebroid.ring();
    if (!r.is_idempotent_product()) throw PreconditionError("classification needs a base ring of the form Q^m");
    std::size_t c = d.core.dim, e = d.side.dim;
    std::vector<Vec> ks, cs, fs, ns;
    std::optional<std::size_t> rank_per_factor;
    for (std::size_t i = 0; i < r.dim; ++i) {
        Subspace ci = image_of(d.core.action[i]);
        Subspace ei = image_of(d.side.action[i]);
        Matrix bc = ci.basis.empty() ? Matrix(c, 0) : ci.as_columns();
        Subspace kc = kernel_of(d.del * bc);
        Subspace cc = complement_of(kc, variant);
        std::vector<Vec> k_i = embed_all(bc, kc.basis), c_i = embed_all(bc, cc.basis), f_i;
        for (const auto& v : c_i) f_i.push_back(scale(d.del.apply(v), -1));
        if (rank_per_factor && *rank_per_factor != f_i.size()) return std::nullopt;
        rank_per_factor = f_i.size();
        Matrix fc = coordinates_of(ei.basis, e, f_i);
        Subspace fsub{ei.dim(), {}};
        for (std::size_t j = 0; j < fc.cols(); ++j) fsub.basis.push_back(fc.column(j));
        Subspace nc = complement_of(fsub, variant);
        Matrix be = ei.basis.empty() ? Matrix(e, 0) : ei.as_columns();
        std::vector<Vec> n_i = embed_all(be, nc.basis);
        ks.insert(ks.end(), k_i.begin(), k_i.end());
        cs.insert(cs.end(), c_i.begin(), c_i.end());
        fs.insert(fs.end(), f_i.begin(), f_i.end());
        ns.insert(ns.end(), n_i.begin(), n_i.end());
    }
    RegularSplitting s;
    s.kernel = {c, ks};
    s.complement_c = {c, cs};
    s.image = {e, fs};
    s.complement_e = {e, ns};
    s.basis_c = columns(c, ks, cs);
    s.basis_e = columns(e, ns, fs);
    if (s.basis_c.cols() != c || s.basis_e.cols() != e) throw std::logic_error("splitting does not span");
    return s;
}

BlockData block_decompose(const SuperData& d, const RegularSplitting& s) {
    BlockData b;
    b.adapted = change_of_basis(d, s.basis_e, s.basis_c);
    const SuperData& x = b.adapted;
    std::size_t k = s.k(), f = s.f(), v = s.v();
    Report rep;
    Matrix expected_del(v + f, k + f);
    put_block(expected_del, v, k, -Matrix::identity(f));
    if (x.del != expected_del) rep.add("core-anchor is not (0, 0; 0, -1) in the adapted bases");
    for (std::size_t i = 0; i < d.algebroid.dim(); ++i) {
        const Matrix& ns = x.nabla_s[i];
        const Matrix& nc = x.nabla_c[i];
        b.nabla_v.push_back(sub_block(ns, 0, 0, v, v));
        b.lambda.push_back(sub_block(ns, v, 0, f, v));
        b.nabla_f.push_back(sub_block(ns, v, v, f, f));
        b.nabla_k.push_back(sub_block(nc, 0, 0, k, k));
        b.gamma.push_back(sub_block(nc, 0, k, k, f));
        std::string at = " along basis element " + std::to_string(i);
        if (!sub_block(ns, 0, v, v, f).is_zero()) rep.add("nabla^s does not preserve im(del)" + at);
        if (!sub_block(nc, k, 0, f, k).is_zero()) rep.add("nabla^c does not preserve ker(del)" + at);
        if (sub_block(nc, k, k, f, f) != b.nabla_f.back()) rep.add("the two nabla^F blocks differ" + at);
    }
    if (!rep.ok()) throw PreconditionError("structural zero violated: input is not flat", rep);
    b.alpha = sub_block(x.omega, 0, 0, k, v);
    return b;
}

Diagonalized block_diagonalize(const SuperData& d, const RegularSplitting& s) {
    require_flat(d);
    BlockData b = block_decompose(d, s);
    std::size_t n = d.algebroid.dim(), k = s.k(), f = s.f(), v = s.v();
    Diagonalized out;
    out.sigma_adapted = HomForm::zero(1, n, k + f, v + f);
    for (std::size_t i = 0; i < n; ++i) {
        Matrix& m = out.sigma_adapted.at(Mask(1) << i);
        put_block(m, 0, v, b.gamma[i]);
        put_block(m, k, 0, b.lambda[i]);
    }
    out.adapted = gauge_transform(b.adapted, out.sigma_adapted);
    const SuperData& x = out.adapted;
    for (std::size_t i = 0; i < n; ++i)
        if (!sub_block(x.nabla_s[i], v, 0, f, v).is_zero() || !sub_block(x.nabla_c[i], 0, k, k, f).is_zero())
            throw std::logic_error("gauged connections are not block-diagonal");
    if (!sub_block(x.omega, 0, v, k, f).is_zero() || !sub_block(x.omega, k, 0, f, v).is_zero())
        throw std::logic_error("gauged Omega is not block-diagonal");
    if (sub_block(x.omega, k, v, f, f) != curvature_form(d.algebroid, b.nabla_f, f))
        throw std::logic_error("lower block of Omega is not the curvature of nabla^F");
    auto pe_inv = inverse(s.basis_e);
    out.sigma = compose(compose(s.basis_c, out.sigma_adapted), *pe_inv);
    if (!same_tensors(change_of_basis(gauge_transform(d, out.sigma), s.basis_e, s.basis_c), x))
        throw std::logic_error("gauge does not commute with the change of basis");
    return out;
}

OmegaExtraction extract_omega(const SuperData& d, const RegularSplitting& s) {
    BlockData b = block_decompose(d, s);
    std::size_t n = d.algebroid.dim(), k = s.k(), v = s.v();
    OmegaExtraction out;
    out.direct = b.alpha;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.direct.at((Mask(1) << i) | (Mask(1) << j)) +=
                b.gamma[j] * b.lambda[i] - b.gamma[i] * b.lambda[j];
    Diagonalized diag = block_diagonalize(d, s);
    out.gauged = sub_block(diag.adapted.omega, 0, 0, k, v);
    out.agree = out.direct == out.gauged;
    return out;
}

NormalForm normal_form(const SuperData& d, int variant) {
    auto split = regularity(d, variant);
    if (!split) throw PreconditionError("core-anchor does not have constant rank");
    NormalForm nf;
    nf.splitting = *split;
    const RegularSplitting& s = nf.splitting;
    std::size_t n = d.algebroid.dim(), k = s.k(), f = s.f(), v = s.v();
    Diagonalized diag = block_diagonalize(d, s);
    const SuperData& x = diag.adapted;
    nf.sigma = diag.sigma;

    SuperData& t0 = nf.type0;
    t0.algebroid = d.algebroid;
    t0.side = submodule(d.side, s.complement_e.basis);
    t0.core = submodule(d.core, s.kernel.basis);
    t0.del = Matrix(v, k);
    SuperData& t1 = nf.type1;
    t1.algebroid = d.algebroid;
    t1.side = submodule(d.side, s.image.basis);
    t1.core = submodule(d.core, s.complement_c.basis);
    t1.del = -Matrix::identity(f);
    for (std::size_t i = 0; i < n; ++i) {
        t0.nabla_s.push_back(sub_block(x.nabla_s[i], 0, 0, v, v));
        t0.nabla_c.push_back(sub_block(x.nabla_c[i], 0, 0, k, k));
        t1.nabla_s.push_back(sub_block(x.nabla_s[i], v, v, f, f));
        t1.nabla_c.push_back(sub_block(x.nabla_c[i], k, k, f, f));
    }
    t0.omega = sub_block(x.omega, 0, 0, k, v);
    t1.omega = sub_block(x.omega, k, v, f, f);
    nf.round_trip = same_tensors(direct_sum(t0, t1), x);

    // Tuple on the canonical bases: the kernel basis and the variant-0 complement of F.
    RegularSplitting canon = variant == 0 ? s : *regularity(d, 0);
    ClassifyingTuple& t = nf.tuple;
    t.kernel_rank = k;
    t.image_rank = f;
    t.cokernel_rank = v;
    t.del = d.del;
    t.kernel = canon.kernel;
    t.quotient = canon.complement_e;
    t.kernel_module = submodule(d.core, t.kernel.basis);
    t.quotient_module = submodule(d.side, t.quotient.basis);
    std::size_t e = d.side.dim, c = d.core.dim;
    for (std::size_t i = 0; i < n; ++i) {
        t.nabla_k.push_back(coordinates_of(t.kernel.basis, c, embed_all(d.nabla_c[i], t.kernel.basis)));
        std::vector<Vec> nu_f = t.quotient.basis;
        nu_f.insert(nu_f.end(), s.image.basis.begin(), s.image.basis.end());
        Matrix full = coordinates_of(nu_f, e, embed_all(d.nabla_s[i], t.quotient.basis));
        t.nabla_v.push_back(sub_block(full, 0, 0, v, v));
    }
    // omega lives on the chosen nu; precompose with E/F -> nu.
    std::vector<Vec> nu_f = s.complement_e.basis;
    nu_f.insert(nu_f.end(), s.image.basis.begin(), s.image.basis.end());
    Matrix to_nu = sub_block(coordinates_of(nu_f, e, t.quotient.basis), 0, 0, v, v);
    if (s.kernel.basis != t.kernel.basis) throw std::logic_error("kernel basis depends on the splitting variant");
    t.omega = compose(t0.omega, to_nu);
    return nf;
}

Connection omega_connection(const Algebroid& a, const ClassifyingTuple& t) {
    Connection side{a, t.quotient_module, t.nabla_v};
    Connection core{a, t.kernel_module, t.nabla_k};
    HomSpace h = module_hom_space(t.quotient_module, t.kernel_module);
    return hom_connection(side, core, h);
}

namespace {

Form omega_as_form(const ClassifyingTuple& t, const HomForm& f) {
    return to_form(module_hom_space(t.quotient_module, t.kernel_module), f);
}

}  // namespace

std::optional<HomForm> omega_difference_primitive(const Algebroid& a, const ClassifyingTuple& t1,
                                                  const ClassifyingTuple& t2) {
    if (t1.nabla_k != t2.nabla_k || t1.nabla_v != t2.nabla_v || !(t1.kernel_module == t2.kernel_module) ||
        !(t1.quotient_module == t2.quotient_module))
        throw PreconditionError("omega classes live in different complexes");
    Connection hc = omega_connection(a, t1);
    HomSpace h = module_hom_space(t1.quotient_module, t1.kernel_module);
    auto eta = exactness_certificate(hc, to_form(h, t2.omega - t1.omega));
    if (!eta) return std::nullopt;
    HomForm out = to_hom_form(h, *eta);
    if (h.basis.empty()) out = HomForm::zero(1, a.dim(), t1.kernel_rank, t1.cokernel_rank);
    return out;
}

bool omega_class_zero(const Algebroid& a, const ClassifyingTuple& t) {
    return exactness_certificate(omega_connection(a, t), omega_as_form(t, t.omega)).has_value();
}

std::optional<HomForm> omega_primitive(const SuperData& d) {
    if (!d.del.is_zero()) throw PreconditionError("omega_primitive needs a zero core-anchor");
    require_flat(d);
    HomSpace h = module_hom_space(d.side, d.core);
    Connection hc = hom_connection(d.side_connection(), d.core_connection(), h);
    auto eta = exactness_certificate(hc, to_form(h, d.omega));
    if (!eta) return std::nullopt;
    HomForm out = h.basis.empty() ? HomForm::zero(1, d.algebroid.dim(), d.core.dim, d.side.dim) : to_hom_form(h, *eta);
    if (!(hom_differential(d.algebroid, d.nabla_c, d.nabla_s, out) == d.omega))
        throw std::logic_error("omega primitive failed to verify");
    return out;
}

IsomorphismVerdict isomorphic(const SuperData& d1, const SuperData& d2) {
    if (!(d1.algebroid == d2.algebroid) || !(d1.side == d2.side) || !(d1.core == d2.core))
        throw PreconditionError("isomorphism test needs the same algebroid, side and core");
    IsomorphismVerdict out;
    NormalForm n1 = normal_form(d1), n2 = normal_form(d2);
    const ClassifyingTuple& t1 = n1.tuple;
    const ClassifyingTuple& t2 = n2.tuple;
    if (t1.image_rank != t2.image_rank) {
        out.reason = "core-anchor ranks differ";
        return out;
    }
    if (t1.del != t2.del) {
        out.reason = "core-anchors differ";
        return out;
    }
    if (t1.nabla_k != t2.nabla_k) {
        out.reason = "connections on ker(del) differ";
        return out;
    }
    if (t1.nabla_v != t2.nabla_v) {
        out.reason = "connections on coker(del) differ";
        return out;
    }
    auto eta = omega_difference_primitive(d1.algebroid, t1, t2);
    if (!eta) {
        out.reason = "[omega] differs";
        return out;
    }
    // Same del, so both normal forms use the same splitting.
    const RegularSplitting& s = n1.splitting;
    std::size_t n = d1.algebroid.dim(), k = s.k(), f = s.f(), v = s.v();
    HomForm fix = HomForm::zero(1, n, k + f, v + f);
    for (std::size_t i = 0; i < n; ++i) {
        Matrix& m = fix.at(Mask(1) << i);
        put_block(m, 0, 0, -eta->at(Mask(1) << i));
        put_block(m, k, v, n1.type1.nabla_c[i] - n2.type1.nabla_c[i]);
    }
    HomForm fix_orig = compose(compose(s.basis_c, fix), *inverse(s.basis_e));
    HomForm sigma = n1.sigma + fix_orig - n2.sigma;
    if (!same_tensors(gauge_transform(d1, sigma), d2)) throw std::logic_error("isomorphism certificate failed to verify");
    out.isomorphic = true;
    out.sigma = sigma;
    return out;
}

}  // namespace vbalg
