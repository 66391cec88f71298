#ifndef VBALG_ALGEBROID_HPP
#define VBALG_ALGEBROID_HPP

#include <optional>

#include "vbalg/exterior.hpp"
#include "vbalg/ring.hpp"

namespace vbalg {

/* A Lie-Rinehart algebra over R. The bracket and anchor are given on the
   Q-basis a_0..a_{n-1} of the module A:
       [a_i, a_j] = sum_k bracket[(i*n + j)*n + k] a_k,
       rho(a_i) = anchor[i], a derivation of R.                          */
struct Algebroid {
    RModule module;
    Vec bracket;
    std::vector<Matrix> anchor;

    const BaseRing& ring() const { return module.ring; }
    std::size_t dim() const { return module.dim; }
    const Scalar& structure(std::size_t i, std::size_t j, std::size_t k) const {
        return bracket[(i * dim() + j) * dim() + k];
    }
    Vec bracket_of(const Vec& x, const Vec& y) const;
    Vec bracket_basis(std::size_t i, std::size_t j) const;
    Matrix anchor_of(const Vec& x) const;
    bool anchor_is_zero() const;

    friend bool operator==(const Algebroid&, const Algebroid&) = default;
};

Report check_algebroid(const Algebroid& a);

/* An A-connection on a module W: nabla[i] is the Q-linear operator
   nabla_{a_i} on W. */
struct Connection {
    Algebroid algebroid;
    RModule coeff;
    std::vector<Matrix> nabla;

    Matrix along(const Vec& x) const;
};

Report check_connection(const Connection& c);
// R itself with nabla_X f = rho(X) f.
Connection trivial_connection(const Algebroid& a);
// nabla_X Y = [X, Y]; only a connection when the anchor vanishes.
Connection adjoint_connection(const Algebroid& a);
// F(a_i, a_j) = [nabla_i, nabla_j] - nabla_[a_i, a_j].
Matrix curvature(const Connection& c, std::size_t i, std::size_t j);
Matrix curvature_of(const Algebroid& a, const std::vector<Matrix>& nabla, std::size_t i, std::size_t j);
bool is_flat(const Connection& c);
// Dual connection on W* = Hom_R(W, R): (nabla* xi)(w) = rho xi(w) - xi(nabla w).
Connection dual_connection(const Connection& c);
// nabla_X phi = nabla^w_X phi - phi nabla^v_X on Hom_R(V, W), in the coordinates of h.
Connection hom_connection(const Connection& v, const Connection& w, const HomSpace& h);

/* A W-valued p-form, stored on sorted index tuples of the Q-basis of A.
   comp[s] is the value on the s-th tuple in lexicographic order. */
struct Form {
    std::size_t degree = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<Vec> comp;

    static Form zero(std::size_t p, std::size_t n, std::size_t m);
    static Form from_raw(std::size_t p, std::size_t n, std::size_t m, const Vec& raw);
    Vec raw() const;
    // Alternating evaluation on an arbitrary index tuple.
    Vec value(const std::vector<int>& idx) const;
    const Vec& at(Mask s) const { return comp[Exterior::of(n).rank(s)]; }
    Vec& at(Mask s) { return comp[Exterior::of(n).rank(s)]; }
    bool is_zero() const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Scalar& s);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Scalar& s, Form a) { return a *= s; }
    friend bool operator==(const Form&, const Form&) = default;
};

// A form with values in linear maps (rows x cols matrices).
struct HomForm {
    std::size_t degree = 0;
    std::size_t n = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Matrix> comp;

    static HomForm zero(std::size_t p, std::size_t n, std::size_t rows, std::size_t cols);
    Matrix value(const std::vector<int>& idx) const;
    const Matrix& at(Mask s) const { return comp[Exterior::of(n).rank(s)]; }
    Matrix& at(Mask s) { return comp[Exterior::of(n).rank(s)]; }
    bool is_zero() const;

    HomForm& operator+=(const HomForm& o);
    HomForm& operator-=(const HomForm& o);
    HomForm& operator*=(const Scalar& s);
    friend HomForm operator+(HomForm a, const HomForm& b) { return a += b; }
    friend HomForm operator-(HomForm a, const HomForm& b) { return a -= b; }
    friend HomForm operator*(const Scalar& s, HomForm a) { return a *= s; }
    friend HomForm operator-(HomForm a) { return a *= Scalar(-1); }
    friend bool operator==(const HomForm&, const HomForm&) = default;
};

// Pointwise left and right composition with a fixed map.
HomForm compose(const Matrix& left, const HomForm& f);
HomForm compose(const HomForm& f, const Matrix& right);

// R-multilinear W-valued p-forms, as a subspace of the raw coordinates.
Subspace form_space(const Algebroid& a, const RModule& w, std::size_t p);
Report check_form(const Algebroid& a, const RModule& w, const Form& f);
// Checks R-multilinearity and R-linearity of every value.
Report check_hom_form(const Algebroid& a, const RModule& src, const RModule& tgt, const HomForm& f);

Form to_form(const HomSpace& h, const HomForm& f);
HomForm to_hom_form(const HomSpace& h, const Form& f);

// Cartan differential Lambda^p (x) W -> Lambda^{p+1} (x) W in raw coordinates.
Matrix ce_matrix(const Connection& c, std::size_t p);
Matrix ce_matrix(const Algebroid& a, const std::vector<Matrix>& nabla, std::size_t m, std::size_t p);
Form ce_differential(const Connection& c, const Form& f);
// Same formula on Hom(V,W)-valued forms with nabla phi = nabla^w phi - phi nabla^v.
HomForm hom_differential(const Algebroid& a, const std::vector<Matrix>& nabla_w, const std::vector<Matrix>& nabla_v,
                         const HomForm& f);
// Wedge of an R-valued form with a W-valued form.
Form wedge(const RModule& w, const Form& scalar, const Form& f);

struct Cohomology {
    std::size_t degree = 0;
    std::size_t dim = 0;
    std::size_t cycles = 0;
    std::size_t boundaries = 0;
    std::vector<Form> basis;  // representatives
};

Cohomology cohomology(const Connection& c, std::size_t p);
// Some eta with d eta = f when f is exact; throws if f is not closed.
std::optional<Form> exactness_certificate(const Connection& c, const Form& f);

}  // namespace vbalg

#endif
