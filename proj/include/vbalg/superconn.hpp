#ifndef VBALG_SUPERCONN_HPP
#define VBALG_SUPERCONN_HPP

#include <array>
#include <string>
#include <utility>

#include "vbalg/algebroid.hpp"

namespace vbalg {

/* Two-slot graded space  Omega(A) (x) (C (+) E)  in raw coordinates.
   The core slot C sits in odd degree, the side slot E in even degree.
   Layout: for p = 0..n, the core block (tuples x core) then the side block. */
enum class Slot { core = 0, side = 1 };

struct GradedLayout {
    std::size_t n = 0;
    std::size_t core = 0;
    std::size_t side = 0;

    std::size_t width(Slot s) const { return s == Slot::core ? core : side; }
    std::size_t offset(std::size_t p, Slot s) const;
    std::size_t size() const;
    std::size_t index(std::size_t p, Mask t, Slot s, std::size_t k) const;
};

/* An endomorphism-valued q-form with one slot-to-slot block. It acts by
       Phi(theta)(T) = (-1)^{(q+j)p} sum_S sgn(S, T\S) Phi(T\S) theta(S),
   where j is the parity of the slot change and p the degree of theta. */
struct EndTerm {
    Slot tgt = Slot::core;
    Slot src = Slot::core;
    HomForm form;
};

Matrix koszul_matrix(const GradedLayout& l, const std::vector<EndTerm>& terms);
// Covariant derivative d_nabla on both slots.
Matrix covariant_matrix(const GradedLayout& l, const Algebroid& a, const std::vector<Matrix>& core_nabla,
                        const std::vector<Matrix>& side_nabla);
// Reads an endomorphism-valued form off the degree-0 sections.
std::vector<EndTerm> extract_end_form(const GradedLayout& l, const Matrix& op);
bool is_form_linear(const GradedLayout& l, const Matrix& op);

/* Decomposed VB-algebroid data: side E, core C, core-anchor del: C -> E,
   A-connections on C and E, and Omega in Omega^2(A; Hom(E, C)). */
struct SuperData {
    Algebroid algebroid;
    RModule side;
    RModule core;
    Matrix del;
    std::vector<Matrix> nabla_c;
    std::vector<Matrix> nabla_s;
    HomForm omega;

    GradedLayout layout() const { return {algebroid.dim(), core.dim, side.dim}; }
    Connection core_connection() const { return {algebroid, core, nabla_c}; }
    Connection side_connection() const { return {algebroid, side, nabla_s}; }
    Matrix omega_of(const Vec& x, const Vec& y) const;

    friend bool operator==(const SuperData&, const SuperData&) = default;
};

SuperData zero_superdata(const Algebroid& a, const RModule& side, const RModule& core);
Report check_superdata(const SuperData& d);
SuperData direct_sum(const SuperData& a, const SuperData& b);
// Re-express the data in new bases (columns of pe for E, pc for C).
SuperData change_of_basis(const SuperData& d, const Matrix& pe, const Matrix& pc);

struct GradedElement {
    std::vector<Form> core;  // core[p] in Omega^p(A; C)
    std::vector<Form> side;  // side[p] in Omega^p(A; E)

    static GradedElement zero(const SuperData& d);
    static GradedElement from_raw(const GradedLayout& l, const Vec& raw);
    Vec raw(const GradedLayout& l) const;
    friend bool operator==(const GradedElement&, const GradedElement&) = default;
};

Matrix superconnection_matrix(const SuperData& d);
GradedElement apply_D(const SuperData& d, const GradedElement& v);

struct FlatnessReport {
    bool flat = false;
    bool square_zero = false;
    // del nabla^c = nabla^s del; F^c = -Omega del; F^s = -del Omega; d Omega = 0.
    std::array<bool, 4> conditions{};
    Matrix f_minus, f_zero, f_plus;  // pieces of D^2 by internal degree
    std::vector<std::string> witnesses;
};

FlatnessReport is_flat_super(const SuperData& d);

// The gauge sigma in Omega^1(A; Hom(E, C)), degree 0 in total.
Matrix gauge_matrix(const GradedLayout& l, const HomForm& sigma);
SuperData gauge_transform(const SuperData& d, const HomForm& sigma);

struct GaugeExpansion {
    Matrix d, first, second, third;  // D, [s,D], [s,[s,D]], [s,[s,[s,D]]]
};

GaugeExpansion gauge_expansion(const SuperData& d, const HomForm& sigma);
SuperData gauge_transform_exp(const SuperData& d, const HomForm& sigma);
// Reads the 4-tuple off an operator with the shape of a superconnection; throws if it has any other shape.
SuperData extract_superdata(const SuperData& shape, const Matrix& op);

struct FatSection {
    Vec x;
    Matrix phi;  // Hom(E, C)
};

FatSection fat_bracket(const SuperData& d, const FatSection& a, const FatSection& b);
// (psi^c on C, psi^s on E).
std::pair<Matrix, Matrix> fat_representations(const SuperData& d, const FatSection& a);
// Largest absolute entry of the cyclic sum Omega_{[X,Y],Z} + [Omega_{X,Y}, Z^] over basis triples.
Scalar jacobi_omega(const SuperData& d);

// Adjoint superconnection on Omega(A) (x) (C* (+) E*), laid out like the original.
Matrix adjoint_matrix(const SuperData& d);
// <a, s> in Omega(A; R), raw over GradedLayout{n, 0, dim R}.
Vec pairing(const SuperData& d, const Vec& a, const Vec& s);
Matrix scalar_differential(const Algebroid& a);

SuperData dualize(const SuperData& d);

struct DualDifferentialReport {
    bool square_zero = false;
    bool matches_adjoint = false;
    Matrix d_dual;
    std::vector<std::string> witnesses;
};

DualDifferentialReport dual_differential_check(const SuperData& d);

}  // namespace vbalg

#endif
