#include <doctest.h>

#include "support/helpers.hpp"
#include "vbalg/chern_simons.hpp"
#include "vbalg/classify.hpp"
#include "vbalg/models.hpp"

using namespace vbalg;
using testing::Gen;
using testing::mat;

namespace {

RandomDims cs_dims(std::uint64_t seed) {
    return {1 + seed % 4, 1 + seed % 3, 1 + (seed / 3) % 3};
}

HomForm random_gauge(Gen& g, const SuperData& d) {
    HomForm s = HomForm::zero(1, d.algebroid.dim(), d.core.dim, d.side.dim);
    for (auto& m : s.comp) m = g.matrix(d.core.dim, d.side.dim, true);
    return s;
}

// Non-flat data on the same layout.
SuperData perturb(Gen& g, SuperData d) {
    for (auto& m : d.nabla_s) m += g.matrix(m.rows(), m.cols(), true);
    for (auto& m : d.omega.comp) m += g.matrix(m.rows(), m.cols(), true);
    return d;
}

Matrix power(const Matrix& m, int e) {
    Matrix out = Matrix::identity(m.rows());
    for (int i = 0; i < e; ++i) out = out * m;
    return out;
}

/* cs_1 over Q computed from the connection matrices alone. The dual connection
   is -nabla^T, its transport is -g^-1 nabla^T g, so Delta has trace 2 tr nabla on
   each block; del and Omega only contribute off-diagonal blocks. */
Vec cs1_oracle(const SuperData& d) {
    std::size_t n = d.algebroid.dim();
    Form f = Form::zero(1, n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        Scalar t = 0;
        for (std::size_t r = 0; r < d.side.dim; ++r) t += 2 * d.nabla_s[i](r, r);
        for (std::size_t r = 0; r < d.core.dim; ++r) t -= 2 * d.nabla_c[i](r, r);
        f.at(Mask(1) << i) = Vec{t};
    }
    return scalar_raw(d.algebroid, {f});
}

GradedMetric metric_sum(const GradedMetric& a, const GradedMetric& b) {
    return {block_diag(a.gram_c, b.gram_c), block_diag(a.gram_s, b.gram_s)};
}

}  // namespace

TEST_CASE("supertrace: identity, zero data, and rank difference") {
    SuperData d = aff1_lambda(Scalar(3));
    Vec st = supertrace(d, Matrix::identity(d.layout().size()));
    CHECK(is_zero(st));
    SuperData e = zero_superdata(lie_algebra("aff1"), free_module(BaseRing::rationals(), 3), free_module(BaseRing::rationals(), 1));
    Vec se = supertrace(e, Matrix::identity(e.layout().size()));
    CHECK(se[0] == 2);
    for (std::size_t i = 1; i < se.size(); ++i) CHECK(se[i] == 0);
    CHECK_THROWS_AS(supertrace(d, superconnection_matrix(d)), PreconditionError);
}

TEST_CASE("supertrace of a supercommutator with D is exact") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        SuperData d = random_flat_instance(seed, cs_dims(seed));
        Gen g(seed);
        Matrix dd = superconnection_matrix(d);
        Matrix theta = superconnection_matrix(perturb(g, d)) - dd;  // odd, form-linear
        Matrix da = scalar_differential(d.algebroid);
        CHECK(supertrace(d, dd * theta + theta * dd) == da.apply(supertrace(d, theta)));
        Matrix m = metric_matrix(d.layout(), random_metric(seed, d));  // even
        CHECK(supertrace(d, dd * m - m * dd) == da.apply(supertrace(d, m)));
    }
}

TEST_CASE("metric transport: identity metric on self-adjoint data") {
    // del symmetric, nabla skew, Omega zero: gD = D for the identity grams.
    Algebroid a = lie_algebra("abelian", 2);
    RModule q2 = free_module(a.ring(), 2);
    SuperData d = zero_superdata(a, q2, q2);
    d.del = mat({{0, 0}, {0, 0}});
    d.nabla_c = {mat({{0, 1}, {-1, 0}}), mat({{0, 0}, {0, 0}})};
    d.nabla_s = d.nabla_c;
    REQUIRE(is_flat_super(d).flat);
    CHECK(metric_transport(d, identity_metric(d)) == superconnection_matrix(d));
    Vec cs = cs_form(d, identity_metric(d), 1);
    CHECK(is_zero(cs));
}

TEST_CASE("metric checks reject bad grams") {
    SuperData d = aff1_lambda(Scalar(1));
    GradedMetric g = identity_metric(d);
    CHECK(check_metric(d, g).ok());
    g.gram_s = mat({{0}});
    CHECK_FALSE(check_metric(d, g).ok());
    g.gram_s = mat({{1, 0}, {0, 1}});
    CHECK_FALSE(check_metric(d, g).ok());
    CHECK_THROWS_AS(cs_form(d, g, 1), PreconditionError);
}

TEST_CASE("cs forms need flat data and positive k") {
    SuperData d = aff1_lambda(Scalar(1));
    SuperData bad = d;
    bad.nabla_s[0] = mat({{5}});
    CHECK_THROWS_AS(cs_form(bad, identity_metric(bad), 1), PreconditionError);
    CHECK_THROWS_AS(cs_form(d, identity_metric(d), 0), std::invalid_argument);
}

TEST_CASE("cs_1 golden values on named examples") {
    // Frozen from cs1_oracle.
    SuperData lam = named_example("aff1-lambda");
    CHECK(is_zero(cs_form(lam, identity_metric(lam), 1)));
    SuperData sl2 = named_example("sl2-adjoint");
    CHECK(is_zero(cs_form(sl2, identity_metric(sl2), 1)));
    SuperData aff = named_example("aff1-adjoint");
    Vec want(aff.layout().size() / aff.core.dim);
    want[1] = -2;
    CHECK(cs_form(aff, identity_metric(aff), 1) == want);
    CHECK(cs_form(aff, random_metric(5, aff), 1) == want);
    CHECK(cs1_oracle(aff) == want);
}

TEST_CASE("property: cs_1 matches the trace oracle on random data") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        SuperData d = random_flat_instance(seed, cs_dims(seed));
        CHECK(cs_form(d, random_metric(seed, d), 1) == cs1_oracle(d));
    }
}

TEST_CASE("property: cs forms are closed, k = 2 vanishes, lower components are exact") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        SuperData d = random_flat_instance(seed, cs_dims(seed));
        GradedMetric g = random_metric(seed + 100, d);
        for (int k = 1; k <= 3; ++k) {
            CsClass c = cs_class(d, g, k);
            CHECK(c.closed);
            CHECK(c.lower_primitive.has_value());
            if (k == 2) CHECK(is_zero(c.representative));
        }
    }
}

TEST_CASE("property: cs classes are independent of metric and gauge") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SuperData d = random_flat_instance(seed, cs_dims(seed));
        Gen gen(seed);
        SuperData dg = gauge_transform(d, random_gauge(gen, d));
        GradedMetric g1 = random_metric(seed, d), g2 = random_metric(seed + 50, d);
        for (int k : {1, 3}) {
            CsClass base = cs_class(d, g1, k);
            CHECK(cs_class_difference(d.algebroid, base, cs_class(d, g2, k)).has_value());
            CHECK(cs_class_difference(d.algebroid, base, cs_class(dg, g1, k)).has_value());
        }
    }
}

TEST_CASE("property: transgression identities hold on non-flat operators") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        SuperData d = random_flat_instance(seed, cs_dims(seed));
        Gen gen(seed);
        SuperData p0 = perturb(gen, d), p1 = perturb(gen, d);
        Matrix a0 = superconnection_matrix(p0), a1 = superconnection_matrix(p1);
        Matrix da = scalar_differential(d.algebroid);
        for (int k = 1; k <= 3; ++k) {
            TIForm f = curvature_power_supertrace(d, Transgression{a0, a1 - a0}, k);
            REQUIRE(f.plain.size() == 2 * static_cast<std::size_t>(k) + 1);
            for (std::size_t i = 0; i + 1 < f.plain.size(); ++i) {
                Vec lhs = f.plain[i + 1];
                for (auto& x : lhs) x *= static_cast<long>(i + 1);
                Vec rhs = i < f.dotted.size() ? da.apply(f.dotted[i]) : Vec(lhs.size());
                CHECK(lhs == rhs);
            }
            Vec tf = transgression_form(d, a0, a1, k);
            CHECK(da.apply(tf) == sub(supertrace(d, power(a1, 2 * k)), supertrace(d, power(a0, 2 * k))));
        }
    }
}

TEST_CASE("property: str of even powers flips by (-1)^k under transport") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        SuperData d = random_flat_instance(seed, cs_dims(seed));
        Gen gen(seed);
        SuperData p = perturb(gen, d);
        GradedMetric g = random_metric(seed, d);
        Matrix o = superconnection_matrix(p), go = metric_transport(p, g);
        for (int k = 1; k <= 3; ++k) {
            Vec lhs = supertrace(p, power(o, 2 * k)), rhs = supertrace(p, power(go, 2 * k));
            if (k % 2) for (auto& x : rhs) x = -x;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("property: the averaged comparison operator is self-adjoint") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        SuperData d = random_flat_instance(seed, cs_dims(seed));
        GradedMetric g = random_metric(seed, d);
        Matrix o = self_adjoint_comparison(d, g);
        SuperData od = extract_superdata(d, o);
        CHECK(metric_transport(od, g) == o);
    }
}

TEST_CASE("property: cs forms add over direct sums") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        SuperData d = random_flat_instance(seed, cs_dims(seed));
        Gen gen(seed);
        SuperData e = gauge_transform(d, random_gauge(gen, d));
        GradedMetric g1 = random_metric(seed, d), g2 = random_metric(seed + 9, e);
        SuperData s = direct_sum(d, e);
        for (int k : {1, 3})
            CHECK(cs_form(s, metric_sum(g1, g2), k) == add(cs_form(d, g1, k), cs_form(e, g2, k)));
    }
}

TEST_CASE("closed-form expression: ratio 1 for k = 1 and 10 for k = 3") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SuperData d = random_flat_instance(seed, cs_dims(seed));
        GradedMetric g = random_metric(seed, d);
        CHECK(cs_closed_form_remark(d, g, 1) == cs_form(d, g, 1));
    }
    SuperData d = adjoint_point_model(product_algebra(lie_algebra("sl2"), lie_algebra("aff1")));
    GradedMetric g = random_metric(3, d);
    Vec cs = cs_form(d, g, 3);
    REQUIRE_FALSE(is_zero(cs));
    Vec ten = cs;
    for (auto& x : ten) x *= 10;
    CHECK(cs_closed_form_remark(d, g, 3) == ten);
}
