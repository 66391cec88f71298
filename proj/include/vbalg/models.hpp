#ifndef VBALG_MODELS_HPP
#define VBALG_MODELS_HPP

#include <cstdint>
#include <string>

#include "vbalg/superconn.hpp"

namespace vbalg {

// abelian (dimension n), aff1, sl2, heisenberg; over Q with zero anchor.
Algebroid lie_algebra(const std::string& name, std::size_t n = 0);

/* A bundle of Lie algebras over R on the free module R^n. structure[(g*n + h)*n + k]
   is the ring element s with [e_g, e_h] = sum_k s e_k. */
Algebroid lie_algebra_over(const BaseRing& r, std::size_t n, const std::vector<Vec>& structure);
// Base change of a Lie algebra over Q to R (constant structure constants).
Algebroid extend_scalars(const Algebroid& a, const BaseRing& r);
// Direct product of two Lie algebras over Q.
Algebroid product_algebra(const Algebroid& a, const Algebroid& b);
// Der(R) with the identity anchor and the commutator bracket.
Algebroid tangent_algebroid(const BaseRing& r);

// E = 0, C = A, nabla^c = ad.
SuperData adjoint_point_model(const Algebroid& a);

/* Adjoint model with zero anchor over a ring: side T, core A, nabla^c = ad,
   nabla^s = 0 and
       Omega_{X,Y} phi = [nt_phi X, Y] + [X, nt_phi Y] - nt_phi [X, Y].
   nabla_tilde[t] is the Q-linear operator X -> nt_{tau_t} X on A, one per
   Q-basis element tau_t of T. */
SuperData rho_zero_adjoint_model(const Algebroid& a, const RModule& t, const std::vector<Matrix>& nabla_tilde);

struct RhoZeroFamily {
    Algebroid algebra;
    RModule t;
    std::vector<Matrix> nabla_tilde;
};

// aff1 over Q[x]/(x^2), bracket [e1, e2] = e2 (constant) or (1 + x) e2 (scaled);
// T = Der(R) and nt the coefficientwise derivative.
RhoZeroFamily rho_zero_family(bool scaled);
SuperData rho_zero_example(bool scaled);

struct RandomDims {
    std::size_t algebra = 2;
    std::size_t side = 2;
    std::size_t core = 2;
};

/* Flat instance over Q: type-0 part (character connections, random closed
   Omega) plus a type-1 part with a random connection, then a random gauge and
   a random change of basis. Generator: std::mt19937_64 seeded with seed. */
SuperData random_flat_instance(std::uint64_t seed, RandomDims dims);
// The algebra drawn by random_flat_instance, exposed for tests.
Algebroid random_algebra(std::uint64_t seed, std::size_t dim);

// Entries uniform in [-2, 2]; base ring Q only.
HomForm random_gauge(std::uint64_t seed, const SuperData& d);

std::vector<std::string> example_names();
// Named example documents; seed and dims only matter for "random".
SuperData named_example(const std::string& name, std::uint64_t seed = 1, RandomDims dims = {});
// The designated aff1 instance: E = C = Q, del = id, nabla_{e1} = lambda, nabla_{e2} = 0, Omega = 0.
SuperData aff1_lambda(const Scalar& lambda);

}  // namespace vbalg

#endif
