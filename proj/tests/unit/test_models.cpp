#include <doctest.h>

#include "support/helpers.hpp"
#include "vbalg/classify.hpp"
#include "vbalg/models.hpp"

using namespace vbalg;
using testing::mat;
using testing::vec;

TEST_CASE("rings: structure constants and derivations") {
    CHECK(check_ring(BaseRing::rationals()).ok());
    CHECK(check_ring(BaseRing::truncated_polynomial(3)).ok());
    CHECK(check_ring(BaseRing::product(3)).ok());
    BaseRing r = BaseRing::truncated_polynomial(2);
    CHECK(r.multiply(vec({0, 1}), vec({0, 1})) == vec({0, 0}));
    CHECK(r.multiply(vec({1, 1}), vec({1, -1})) == vec({1, 0}));
    CHECK(BaseRing::product(2).is_idempotent_product());
    CHECK_FALSE(r.is_idempotent_product());

    DerivationSpace der = derivations(r);
    REQUIRE(der.dim() == 1);
    CHECK(is_derivation(r, mat({{0, 0}, {0, 1}})));
    CHECK_FALSE(is_derivation(r, mat({{0, 0}, {1, 0}})));
    CHECK(derivations(BaseRing::product(2)).dim() == 0);
    CHECK(derivations(BaseRing::truncated_polynomial(3)).dim() == 2);

    BaseRing broken = r;
    broken.mult[0] = 2;
    CHECK_FALSE(check_ring(broken).ok());
}

TEST_CASE("Lie algebras and algebroids satisfy the axioms") {
    for (const char* name : {"abelian", "aff1", "sl2", "heisenberg"})
        CHECK(check_algebroid(lie_algebra(name, 3)).ok());
    CHECK(check_algebroid(tangent_algebroid(BaseRing::truncated_polynomial(3))).ok());
    CHECK(check_algebroid(product_algebra(lie_algebra("sl2"), lie_algebra("aff1"))).ok());
    CHECK(check_algebroid(extend_scalars(lie_algebra("sl2"), BaseRing::truncated_polynomial(2))).ok());
    for (std::size_t dim = 0; dim <= 4; ++dim)
        for (std::uint64_t seed = 1; seed <= 5; ++seed) CHECK(check_algebroid(random_algebra(seed, dim)).ok());
    CHECK_THROWS_AS(lie_algebra("unknown"), std::invalid_argument);

    Algebroid bad = lie_algebra("aff1");
    bad.bracket[1] = 3;  // [e1, e1] != 0
    CHECK_FALSE(check_algebroid(bad).ok());
}

TEST_CASE("Chevalley-Eilenberg differential on aff1") {
    Algebroid a = lie_algebra("aff1");
    Connection triv = trivial_connection(a);
    Form e2 = Form::zero(1, 2, 1);
    e2.at(0b10) = vec({1});
    Form d = ce_differential(triv, e2);
    CHECK(d.at(0b11) == vec({-1}));
    Form e1 = Form::zero(1, 2, 1);
    e1.at(0b01) = vec({1});
    CHECK(ce_differential(triv, e1).is_zero());
}

TEST_CASE("cohomology with trivial coefficients") {
    auto betti = [](const Algebroid& a) {
        std::vector<std::size_t> out;
        Connection triv = trivial_connection(a);
        for (std::size_t p = 0; p <= a.dim(); ++p) out.push_back(cohomology(triv, p).dim);
        return out;
    };
    CHECK(betti(lie_algebra("aff1")) == std::vector<std::size_t>{1, 1, 0});
    CHECK(betti(lie_algebra("sl2")) == std::vector<std::size_t>{1, 0, 0, 1});
    CHECK(betti(lie_algebra("heisenberg")) == std::vector<std::size_t>{1, 2, 2, 1});
    CHECK(betti(lie_algebra("abelian", 2)) == std::vector<std::size_t>{1, 2, 1});
    // Truncated polynomial tangent algebroid: functions killed by x d/dx and d/dx.
    CHECK(cohomology(trivial_connection(tangent_algebroid(BaseRing::truncated_polynomial(2))), 0).dim == 1);
}

TEST_CASE("exactness certificates") {
    Algebroid a = lie_algebra("aff1");
    Connection triv = trivial_connection(a);
    Form top = Form::zero(2, 2, 1);
    top.at(0b11) = vec({5});
    auto eta = exactness_certificate(triv, top);
    REQUIRE(eta);
    CHECK(ce_differential(triv, *eta) == top);
    Form e1 = Form::zero(1, 2, 1);
    e1.at(0b01) = vec({1});
    CHECK_FALSE(exactness_certificate(triv, e1).has_value());
}

TEST_CASE("rho-zero models: Omega is the derivation defect of the bracket") {
    SuperData constant = rho_zero_example(false);
    SuperData scaled = rho_zero_example(true);
    CHECK(is_flat_super(constant).flat);
    CHECK(is_flat_super(scaled).flat);
    CHECK(constant.omega.is_zero());
    // [e1, e2] = (1 + x) e2 and phi = x d/dx: Omega(e1, e2) phi = -phi(1 + x) e2 = -x e2.
    // Forms live on the Q-basis e1, x e1, e2, x e2 of A.
    const Matrix& om = scaled.omega.at(0b0101);
    REQUIRE(om.rows() == 4);
    REQUIRE(om.cols() == 1);
    Matrix want(4, 1);
    want(3, 0) = -1;
    CHECK(om == want);
}

TEST_CASE("named examples are valid flat data") {
    for (const auto& name : example_names()) {
        CAPTURE(name);
        SuperData d = named_example(name, 7, RandomDims{2, 2, 2});
        CHECK(check_superdata(d).ok());
        CHECK(is_flat_super(d).flat);
    }
    CHECK_THROWS_AS(named_example("nope"), std::invalid_argument);
}

TEST_CASE("random instances are deterministic and flat") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomDims dims{1 + seed % 4, seed % 4, (seed / 2) % 4};
        SuperData d = random_flat_instance(seed, dims);
        CHECK(d == random_flat_instance(seed, dims));
        CHECK(d.algebroid.dim() == dims.algebra);
        CHECK(d.side.dim == dims.side);
        CHECK(d.core.dim == dims.core);
        CHECK(is_flat_super(d).flat);
    }
    CHECK_FALSE(random_flat_instance(1, {2, 2, 2}) == random_flat_instance(2, {2, 2, 2}));
}
