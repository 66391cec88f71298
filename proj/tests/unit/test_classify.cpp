#include <doctest.h>

#include "support/helpers.hpp"
#include "vbalg/classify.hpp"
#include "vbalg/models.hpp"

using namespace vbalg;
using testing::Gen;
using testing::mat;

namespace {

RandomDims class_dims(std::uint64_t seed) {
    return {1 + seed % 3, seed % 4, (seed / 4) % 4};
}

HomForm random_gauge(Gen& g, const SuperData& d) {
    HomForm s = HomForm::zero(1, d.algebroid.dim(), d.core.dim, d.side.dim);
    for (auto& m : s.comp) m = g.matrix(d.core.dim, d.side.dim, true);
    return s;
}

void check_same_tuple(const Algebroid& a, const ClassifyingTuple& x, const ClassifyingTuple& y) {
    CHECK(x.kernel_rank == y.kernel_rank);
    CHECK(x.image_rank == y.image_rank);
    CHECK(x.cokernel_rank == y.cokernel_rank);
    CHECK(x.del == y.del);
    CHECK(x.kernel.basis == y.kernel.basis);
    CHECK(x.quotient.basis == y.quotient.basis);
    CHECK(x.nabla_k == y.nabla_k);
    CHECK(x.nabla_v == y.nabla_v);
    CHECK(omega_difference_primitive(a, x, y).has_value());
}

Connection scalar_connection(const Algebroid& a, std::vector<long> values) {
    Connection c = trivial_connection(a);
    for (std::size_t i = 0; i < values.size(); ++i) c.nabla[i] = mat({{values[i]}});
    return c;
}

}  // namespace

TEST_CASE("regularity: invertible, zero, and rank-jumping core-anchors") {
    SuperData iso = aff1_lambda(Scalar(2));
    auto s = regularity(iso);
    REQUIRE(s);
    CHECK(s->k() == 0);
    CHECK(s->f() == 1);
    CHECK(s->v() == 0);

    Algebroid a = lie_algebra("aff1");
    SuperData z = zero_superdata(a, free_module(a.ring(), 2), free_module(a.ring(), 3));
    auto sz = regularity(z);
    REQUIRE(sz);
    CHECK(sz->k() == 3);
    CHECK(sz->f() == 0);
    CHECK(sz->v() == 2);

    // Over Q x Q the rank is 1 on the first factor and 0 on the second.
    Algebroid b = extend_scalars(a, BaseRing::product(2));
    SuperData jump = zero_superdata(b, free_module(b.ring(), 1), free_module(b.ring(), 1));
    jump.del = mat({{1, 0}, {0, 0}});
    REQUIRE(check_superdata(jump).ok());
    CHECK_FALSE(regularity(jump).has_value());
    CHECK_THROWS_AS(normal_form(jump), PreconditionError);

    jump.del = mat({{1, 0}, {0, -1}});
    auto sj = regularity(jump);
    REQUIRE(sj);
    CHECK(sj->f() == 2);

    CHECK_THROWS_AS(regularity(named_example("tangent-type1")), PreconditionError);
}

TEST_CASE("regularity: image basis is minus del of the complement") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SuperData d = random_flat_instance(seed, class_dims(seed));
        for (int variant : {0, 1}) {
            auto s = regularity(d, variant);
            REQUIRE(s);
            CHECK(s->k() + s->complement_c.dim() == d.core.dim);
            CHECK(s->v() + s->f() == d.side.dim);
            for (std::size_t j = 0; j < s->f(); ++j)
                CHECK(s->image.basis[j] == scale(d.del.apply(s->complement_c.basis[j]), -1));
            for (const auto& k : s->kernel.basis) CHECK(is_zero(d.del.apply(k)));
            CHECK(sgn(determinant(s->basis_c)) != 0);
            CHECK(sgn(determinant(s->basis_e)) != 0);
        }
    }
}

TEST_CASE("build_type0 and build_type1") {
    Algebroid a = lie_algebra("abelian", 2);
    Connection one = scalar_connection(a, {0, 0});
    HomForm om = HomForm::zero(2, 2, 1, 1);
    om.at(0b11) = mat({{1}});
    SuperData d0 = build_type0(one, one, om);
    CHECK(is_flat_super(d0).flat);
    CHECK(d0.del == mat({{0}}));

    // Both connections have to be flat.
    Algebroid aff = lie_algebra("aff1");
    Connection zero = scalar_connection(aff, {0, 0});
    HomForm bad = HomForm::zero(2, 2, 1, 1);
    bad.at(0b11) = mat({{1}});
    CHECK_NOTHROW(build_type0(zero, zero, bad));
    Connection nonflat = scalar_connection(aff, {0, 1});
    CHECK_THROWS_AS(build_type0(nonflat, zero, bad), PreconditionError);

    Connection any = scalar_connection(aff, {3, 5});
    SuperData d1 = build_type1(any);
    CHECK(is_flat_super(d1).flat);
    CHECK(d1.del == mat({{-1}}));
    CHECK(d1.omega.at(0b11) == curvature(any, 0, 1));
}

TEST_CASE("block_decompose rejects non-flat input") {
    SuperData d = aff1_lambda(Scalar(1));
    auto s = regularity(d);
    REQUIRE(s);
    SuperData bad = d;
    bad.nabla_s[0] = mat({{4}});
    CHECK_THROWS_AS(block_decompose(bad, *s), PreconditionError);
}

TEST_CASE("property: block diagonalization and the two Omega extractions agree") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        SuperData d = random_flat_instance(seed, class_dims(seed));
        auto s = regularity(d);
        REQUIRE(s);
        BlockData b = block_decompose(d, *s);
        CHECK(b.nabla_k.size() == d.algebroid.dim());
        Diagonalized diag = block_diagonalize(d, *s);
        CHECK(is_flat_super(diag.adapted).flat);
        OmegaExtraction om = extract_omega(d, *s);
        CHECK(om.agree);
        CHECK(om.direct == om.gauged);
    }
}

TEST_CASE("property: normal forms round-trip and tuples are invariant") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SuperData d = random_flat_instance(seed, class_dims(seed));
        NormalForm nf = normal_form(d);
        CHECK(nf.round_trip);
        CHECK(nf.tuple.kernel_rank + nf.tuple.image_rank == d.core.dim);
        CHECK(nf.tuple.cokernel_rank + nf.tuple.image_rank == d.side.dim);
        CHECK(is_flat_super(nf.type0).flat);
        CHECK(is_flat_super(nf.type1).flat);
        check_same_tuple(d.algebroid, nf.tuple, normal_form(d, 1).tuple);
        Gen g(seed);
        check_same_tuple(d.algebroid, nf.tuple, normal_form(gauge_transform(d, random_gauge(g, d))).tuple);
    }
}

TEST_CASE("normal form of a type-1 build has empty kernel and cokernel") {
    SuperData d = named_example("aff1-lambda");
    NormalForm nf = normal_form(d);
    CHECK(nf.round_trip);
    CHECK(nf.tuple.kernel_rank == 0);
    CHECK(nf.tuple.cokernel_rank == 0);
    CHECK(nf.tuple.image_rank == 1);
    CHECK_THROWS_AS(normal_form(named_example("rho-zero-scaled")), PreconditionError);
}

TEST_CASE("omega class on the abelian plane is detected") {
    SuperData d = named_example("abelian2-type0");
    NormalForm nf = normal_form(d);
    CHECK_FALSE(omega_class_zero(d.algebroid, nf.tuple));
    SuperData zero = d;
    zero.omega = HomForm::zero(2, 2, 1, 1);
    CHECK(omega_class_zero(d.algebroid, normal_form(zero).tuple));
}

TEST_CASE("isomorphic: Omega versus 2 Omega, type-1 builds, and gauges") {
    SuperData d = named_example("abelian2-type0");
    SuperData twice = d;
    twice.omega = Scalar(2) * d.omega;
    IsomorphismVerdict v = isomorphic(d, twice);
    CHECK_FALSE(v.isomorphic);
    CHECK(v.reason == "[omega] differs");

    Algebroid aff = lie_algebra("aff1");
    SuperData t1 = build_type1(scalar_connection(aff, {0, 0}));
    SuperData t2 = build_type1(scalar_connection(aff, {2, -1}));
    IsomorphismVerdict w = isomorphic(t1, t2);
    CHECK(w.isomorphic);
    REQUIRE(w.sigma);
    CHECK(gauge_transform(t1, *w.sigma) == t2);

    // On aff1 every 2-form with trivial coefficients is exact.
    Connection zero = scalar_connection(aff, {0, 0});
    HomForm om = HomForm::zero(2, 2, 1, 1);
    om.at(0b11) = mat({{3}});
    IsomorphismVerdict x = isomorphic(build_type0(zero, zero, om), build_type0(zero, zero, HomForm::zero(2, 2, 1, 1)));
    CHECK(x.isomorphic);

    SuperData c1 = build_type0(scalar_connection(aff, {1, 0}), zero, HomForm::zero(2, 2, 1, 1));
    SuperData c2 = build_type0(zero, zero, HomForm::zero(2, 2, 1, 1));
    IsomorphismVerdict y = isomorphic(c1, c2);
    CHECK_FALSE(y.isomorphic);
    CHECK(y.reason == "connections on coker(del) differ");
}

TEST_CASE("property: data is isomorphic to its gauge transforms") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SuperData d = random_flat_instance(seed, class_dims(seed));
        Gen g(seed * 3);
        SuperData e = gauge_transform(d, random_gauge(g, d));
        IsomorphismVerdict v = isomorphic(d, e);
        CHECK(v.isomorphic);
        REQUIRE(v.sigma);
        CHECK(gauge_transform(d, *v.sigma) == e);
    }
}

TEST_CASE("omega_primitive on the rho-zero models") {
    auto constant = omega_primitive(rho_zero_example(false));
    REQUIRE(constant);
    CHECK(constant->is_zero());
    // sigma(e1) = -x e1 on phi = x d/dx: d sigma(e1, e2) = -[e2, sigma(e1)] = -x e2, so this class vanishes as well.
    SuperData scaled = rho_zero_example(true);
    auto sigma = omega_primitive(scaled);
    REQUIRE(sigma);
    Matrix want(4, 1);
    want(1, 0) = -1;
    CHECK(sigma->at(0b0001) == want);
    CHECK(gauge_transform(scaled, *sigma).omega.is_zero());

    CHECK_THROWS_AS(omega_primitive(aff1_lambda(Scalar(1))), PreconditionError);
    SuperData d = named_example("abelian2-type0");
    CHECK_FALSE(omega_primitive(d).has_value());
}
