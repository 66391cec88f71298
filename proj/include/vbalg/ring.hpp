#ifndef VBALG_RING_HPP
#define VBALG_RING_HPP

#include <optional>

#include "vbalg/linalg.hpp"
#include "vbalg/report.hpp"

namespace vbalg {

/* A finite-dimensional commutative unital algebra over Q, given by
   structure constants on a basis b_0..b_{d-1}:
       b_i b_j = sum_k mult[(i*d + j)*d + k] b_k.                       */
struct BaseRing {
    std::size_t dim = 1;
    Vec mult{Scalar(1)};
    Vec unit{Scalar(1)};

    static BaseRing rationals();
    // Q[x]/(x^n) on the basis 1, x, ..., x^{n-1}.
    static BaseRing truncated_polynomial(std::size_t n);
    // Q^n on its idempotent basis.
    static BaseRing product(std::size_t n);

    const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const {
        return mult[(i * dim + j) * dim + k];
    }
    Vec multiply(const Vec& a, const Vec& b) const;
    // Column j holds a * b_j.
    Matrix multiplication_matrix(const Vec& a) const;
    bool is_point() const { return dim == 1; }
    // b_i b_j = delta_ij b_i, i.e. a product of copies of Q in idempotent form.
    bool is_idempotent_product() const;

    friend bool operator==(const BaseRing&, const BaseRing&) = default;
};

Report check_ring(const BaseRing& r);

/* A module over R, stored as a Q-vector space with one action matrix per
   ring basis element: column j of action[r] is b_r . m_j.
   A module with free_rank set uses the layout m_{g*d + c} = e_g (x) b_c. */
struct RModule {
    BaseRing ring;
    std::size_t dim = 0;
    std::vector<Matrix> action;
    std::optional<std::size_t> free_rank;

    Matrix act_matrix(const Vec& r) const;
    Vec act(const Vec& r, const Vec& m) const { return act_matrix(r).apply(m); }
    bool is_free() const { return free_rank.has_value(); }
    // Coordinates of the generator e_g (x) 1 in a free module.
    Vec generator(std::size_t g) const;

    friend bool operator==(const RModule&, const RModule&) = default;
};

RModule free_module(const BaseRing& r, std::size_t rank);
RModule zero_module(const BaseRing& r);
RModule direct_sum(const RModule& a, const RModule& b);
// The R-submodule spanned by an R-stable family, in that family's basis.
RModule submodule(const RModule& m, const std::vector<Vec>& basis);
// The same module in the basis given by the columns of p.
RModule change_basis(const RModule& m, const Matrix& p);
Report check_module(const RModule& m);
// f maps v into w (w.dim x v.dim); true iff f commutes with the R-action.
bool is_r_linear(const RModule& v, const RModule& w, const Matrix& f);

/* R-transpose of an R-linear map between free modules: the (h,g) block of
   ring multiplications moves to (g,h). */
Matrix r_transpose(const Matrix& f, const RModule& src, const RModule& tgt);
// The R-linear map from a free module sending generator g to images[g].
Matrix r_linear_extension(const RModule& src, const RModule& tgt, const std::vector<Vec>& images);
// R-valued pairing of a free module with its dual: <e_h (x) b_j, e_g^* (x) b_c>.
Vec dual_pairing(const RModule& m, const Vec& x, const Vec& xi);

struct DerivationSpace {
    BaseRing ring;
    std::vector<Matrix> basis;  // each dim x dim, column j = L(b_j)

    std::size_t dim() const { return basis.size(); }
};

DerivationSpace derivations(const BaseRing& r);
bool is_derivation(const BaseRing& r, const Matrix& l);
// Der(R) as an R-module: (f.L)(a) = f L(a).
RModule derivation_module(const DerivationSpace& d);

struct HomSpace {
    RModule module;             // Hom_R(V, W) with (r.phi) = r phi
    std::vector<Matrix> basis;  // each W.dim x V.dim
    Coordinates coords;         // on row-major flattened matrices

    Matrix to_matrix(const Vec& c) const;
    std::optional<Vec> coordinates(const Matrix& f) const;
};

HomSpace module_hom_space(const RModule& v, const RModule& w);
// Hom_R(W, R); free layout with the dual generators when W is free.
HomSpace dual_module(const RModule& w);

}  // namespace vbalg

#endif
