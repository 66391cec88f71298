#ifndef VBALG_CLASSIFY_HPP
#define VBALG_CLASSIFY_HPP

#include <optional>
#include <string>

#include "vbalg/superconn.hpp"

namespace vbalg {

// C = E, del = -id, nabla^c = nabla^s = nabla, Omega = F(nabla). Flat for any nabla.
SuperData build_type1(const Connection& nabla);
// del = 0; throws PreconditionError unless both connections are flat and Omega is closed.
SuperData build_type0(const Connection& side, const Connection& core, const HomForm& omega);

/* Splitting of a constant-rank core-anchor:
       C = K (+) C',  E = nu (+) F,  F = im del,  f_j = -del c'_j.
   Bases are adapted to the idempotents of the base ring. */
struct RegularSplitting {
    Subspace kernel;        // K
    Subspace complement_c;  // C'
    Subspace image;         // F, basis f_j = -del c'_j
    Subspace complement_e;  // nu
    Matrix basis_c;         // columns [K | C']
    Matrix basis_e;         // columns [nu | F]

    std::size_t k() const { return kernel.dim(); }
    std::size_t f() const { return image.dim(); }
    std::size_t v() const { return complement_e.dim(); }
};

// variant 0 takes complements greedily from the first coordinate, variant 1 from the last.
std::optional<RegularSplitting> regularity(const SuperData& d, int variant = 0);

/* The data in the adapted bases:
     nabla^s = (nabla^v, 0; Lambda, nabla^F),  nabla^c = (nabla^K, Gamma; 0, nabla^F),
     del = (0, 0; 0, -1),  alpha = upper-left block of Omega. */
struct BlockData {
    SuperData adapted;
    std::vector<Matrix> nabla_v, nabla_k, nabla_f, lambda, gamma;
    HomForm alpha;
};

BlockData block_decompose(const SuperData& d, const RegularSplitting& s);

struct Diagonalized {
    SuperData adapted;  // block-diagonal, in the adapted bases
    HomForm sigma;      // gauge on the original data
    HomForm sigma_adapted;
};

Diagonalized block_diagonalize(const SuperData& d, const RegularSplitting& s);

struct OmegaExtraction {
    HomForm direct;    // alpha - Gamma_X Lambda_Y + Gamma_Y Lambda_X
    HomForm gauged;    // upper-left block after block_diagonalize
    bool agree = false;
};

OmegaExtraction extract_omega(const SuperData& d, const RegularSplitting& s);

/* ranks, del, nabla^K on the kernel basis, nabla^v and omega on the canonical
   complement of F (i.e. on E/F). */
struct ClassifyingTuple {
    std::size_t kernel_rank = 0;
    std::size_t image_rank = 0;
    std::size_t cokernel_rank = 0;
    Matrix del;
    Subspace kernel;
    Subspace quotient;  // canonical complement of F
    RModule kernel_module;
    RModule quotient_module;
    std::vector<Matrix> nabla_k;
    std::vector<Matrix> nabla_v;
    HomForm omega;
};

struct NormalForm {
    RegularSplitting splitting;
    SuperData type0;  // side nu, core K
    SuperData type1;  // side F, core C'
    HomForm sigma;    // gauge on the input
    ClassifyingTuple tuple;
    bool round_trip = false;  // change_of_basis(gauge(d, sigma)) == type0 (+) type1
};

NormalForm normal_form(const SuperData& d, int variant = 0);

// The flat connection on Hom(E/F, K) carrying [omega].
Connection omega_connection(const Algebroid& a, const ClassifyingTuple& t);
// eta with d eta = t2.omega - t1.omega, when the classes agree.
std::optional<HomForm> omega_difference_primitive(const Algebroid& a, const ClassifyingTuple& t1,
                                                  const ClassifyingTuple& t2);
bool omega_class_zero(const Algebroid& a, const ClassifyingTuple& t);
// del = 0 over any base ring: sigma with d sigma = Omega in Omega^2(A; Hom(E, C)), if one exists.
std::optional<HomForm> omega_primitive(const SuperData& d);

struct IsomorphismVerdict {
    bool isomorphic = false;
    std::string reason;            // distinguishing invariant on failure
    std::optional<HomForm> sigma;  // gauge(d1, sigma) == d2 on success
};

IsomorphismVerdict isomorphic(const SuperData& d1, const SuperData& d2);

}  // namespace vbalg

#endif
