#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppi/isometry.hpp"
#include "ppi/matrix.hpp"

namespace ppi {

// Block upper staircase form of a matrix whose first k powers are partial
// isometries.  With respect to the orthogonal decomposition
//
//   H_1 (+) ... (+) H_k (+) H_core,
//   H_j = ker A^j minus ker A^(j-1),   H_core = range of A^k,
//
// the conjugated matrix V* A V has nonzero blocks only on the block
// superdiagonal (steps[j] mapping H_{j+2} into H_{j+1}, each with
// orthonormal columns), plus the pair (B, C) in the last block column:
// B maps the core into H_k, C maps the core to itself, and
// B*B + C*C = I on the core.
struct StaircaseForm {
    std::size_t k = 0;                    // number of staircase levels
    std::vector<std::size_t> sizes;       // dim H_j, nonincreasing, length k
    std::size_t core = 0;                 // dim of the core block
    std::vector<ComplexMatrix> steps;     // k >= 1 ? k-1 blocks : empty
    ComplexMatrix b;                      // sizes.back() x core
    ComplexMatrix c;                      // core x core
    ComplexMatrix v;                      // n x n unitary conjugator
    double residual = 0;                  // ||V*AV - assemble()||_F
};

// The full matrix carried by the form: blocks placed on the staircase
// pattern, zero elsewhere.
ComplexMatrix assemble(const StaircaseForm& sf);

// Jordan-plus-unitary data: block_sizes lists nilpotent single-block sizes
// (nonincreasing); unitary_summand, when present, is the unitary direct
// summand.  conjugator U satisfies
//   U* A U ~ unitary_summand (+) J_{k_1} (+) ... (+) J_{k_m}
// up to `residual` in Frobenius norm.
struct JordanSpec {
    std::vector<std::size_t> block_sizes;
    std::optional<ComplexMatrix> unitary_summand;
    ComplexMatrix conjugator;
    double residual = 0;
};

// Matrix described by the spec: unitary summand first, then the nilpotent
// blocks in listed order.
ComplexMatrix assemble(const JordanSpec& spec);

// Computes the staircase form with k = min(ell, ascent(A)) levels.  Requires
// A^1..A^k to be partial isometries (NotPowerPartialIsometry otherwise,
// carrying the first failing power).  The kernel-chain bases are built from
// SVD null spaces of successive powers, each orthogonalized against the
// accumulated basis; the core basis completes to a unitary.  ToleranceBreach
// if the mandated zero pattern, the step isometry identities, or
// B*B + C*C = I miss 1e-8-level bounds.
//
// Asking for ell larger than the ascent cannot add levels: the kernel chain
// has stabilized, so exactly min(ell, ascent) levels exist.
StaircaseForm staircase_form(const ComplexMatrix& a, std::size_t ell,
                             const Tolerance& tol = {});

// Staircase with every step equal to an identity, plus the nilpotent blocks
// split off as a Jordan tail.  The combined conjugator is stored in both
// parts: staircase.v == tail.conjugator =: W satisfies
//   W* A W ~ assemble(staircase) (+) assemble(tail)
// with the staircase occupying the leading coordinates.  The tail never has
// a unitary summand.
struct NormalizedStaircase {
    StaircaseForm staircase;
    JordanSpec tail;
};

NormalizedStaircase normalize_staircase(const StaircaseForm& sf);

// Unitary-plus-Jordan decomposition, valid exactly when every power is a
// partial isometry (checked through ascent+1; NotInfiniteIndex with the
// first failing power otherwise).  block_sizes come out nonincreasing with
// the largest equal to ascent(A); the unitary summand is present iff A has
// rank at ascent level, i.e. iff the staircase core survives.
JordanSpec halmos_wallen(const ComplexMatrix& a, const Tolerance& tol = {});

enum class PmaxKind {
    P_INFINITE,          // every power is a partial isometry
    P_EQUALS_N_MINUS_1,  // maximal finite index
    P_OTHER,
};

// Classification of the index relative to the dimension.  When the index
// equals n-1 the matrix is unitarily similar to the two-parameter model
// (superdiagonal ones, trailing column (a, b) with |a|^2 + |b|^2 = 1 and
// both entries nonzero); the recovered moduli are reported.  That model
// needs n >= 2, so a 1x1 non-partial-isometry (p = 0 = n-1) reports
// P_OTHER.
struct PmaxClassification {
    PmaxKind kind = PmaxKind::P_OTHER;
    PpiIndex p;
    double a_modulus = 0;  // set only for P_EQUALS_N_MINUS_1
    double b_modulus = 0;
};

PmaxClassification classify_pmax(const ComplexMatrix& a, const Tolerance& tol = {});

}  // namespace ppi
