#ifndef VBALG_CHERN_SIMONS_HPP
#define VBALG_CHERN_SIMONS_HPP

#include <cstdint>
#include <optional>

#include "vbalg/superconn.hpp"

namespace vbalg {

/* Grams C -> C* and E -> E* in the dual generator bases. Required: R-linear,
   R-symmetric, invertible. Positivity is not used. */
struct GradedMetric {
    Matrix gram_c;
    Matrix gram_s;
};

Report check_metric(const SuperData& d, const GradedMetric& g);
GradedMetric identity_metric(const SuperData& d);
// Random symmetric invertible grams; base ring Q only.
GradedMetric random_metric(std::uint64_t seed, const SuperData& d);

// g on the whole graded space, form-linear.
Matrix metric_matrix(const GradedLayout& l, const GradedMetric& g);
// g^-1 D^dagger g: odd, squares to zero when D does, not degree-homogeneous.
Matrix metric_transport(const SuperData& d, const GradedMetric& g);

/* Scalar-valued forms of mixed degree are raw vectors over the layout
   {n, 0, dim R}: degree p occupies one contiguous block. */
GradedLayout scalar_layout(const Algebroid& a);
Form scalar_component(const Algebroid& a, const Vec& raw, std::size_t p);
Vec scalar_raw(const Algebroid& a, const std::vector<Form>& parts);

// str = R-trace on the side block minus R-trace on the core block; throws unless op is form-linear.
Vec supertrace(const SuperData& d, const Matrix& op);

// T = start + t delta over A x TI.
struct Transgression {
    Matrix start;
    Matrix delta;

    Matrix at(const Scalar& t) const { return start + delta * t; }
};

Transgression transgression(const SuperData& d, const GradedMetric& g);

/* str of (T^2 + tdot delta)^k as plain[i] t^i + tdot dotted[i] t^i, the
   curvature of tdot d/dt + T raised to the k-th power. */
struct TIForm {
    std::vector<Vec> plain;
    std::vector<Vec> dotted;
};

TIForm curvature_power_supertrace(const SuperData& d, const Transgression& t, int k);
// Berezin integral: integrate the tdot coefficient over [0, 1].
Vec berezin_integral(const TIForm& f);

// The transgression form between two odd operators, without flatness checks.
Vec transgression_form(const SuperData& d, const Matrix& at_zero, const Matrix& at_one, int k);
Vec cs_form(const SuperData& d, const GradedMetric& g, int k);
// str(D (gD D)^{k-1} - (gD D)^{k-1} gD).
Vec cs_closed_form_remark(const SuperData& d, const GradedMetric& g, int k);

// Some eta with d_A eta = x, degree by degree, when x is exact.
std::optional<Vec> scalar_primitive(const Algebroid& a, const Vec& x);

struct CsClass {
    int k = 0;
    Vec representative;
    bool closed = false;
    // Primitives for every component outside degree 2k - 1 (zero where the component vanishes).
    std::optional<Vec> lower_primitive;
    Form top;  // degree 2k - 1 component
};

CsClass cs_class(const SuperData& d, const GradedMetric& g, int k);
// eta with d_A eta = a.representative - b.representative.
std::optional<Vec> cs_class_difference(const Algebroid& alg, const CsClass& a, const CsClass& b);

// Connections averaged with their metric adjoints; the resulting covariant operator O has gO = O.
Matrix self_adjoint_comparison(const SuperData& d, const GradedMetric& g);
// g-transport of an arbitrary odd operator on the graded space.
Matrix transport_operator(const SuperData& d, const GradedMetric& g, const Matrix& adjoint_op);

}  // namespace vbalg

#endif
