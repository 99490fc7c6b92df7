#pragma once

#include <cstdint>
#include <vector>

#include "ppi/matrix.hpp"

namespace ppi {

// Deterministic default seed for the random complement columns in
// orthonormal_completion.  A fixed seed keeps every downstream
// decomposition reproducible run to run.
inline constexpr std::uint64_t kCompletionSeed = 0x9e3779b97f4a7c15ull;

// Eigendecomposition of a Hermitian matrix: H = V diag(values) V*,
// values ascending, V unitary with eigenvectors in columns.
struct EigResult {
    std::vector<double> values;
    ComplexMatrix vectors;
};

// Cyclic complex Jacobi iteration.  Each pivot (p, q) absorbs the phase of
// H(p,q) into a diagonal rotation and then applies the classical symmetric
// Jacobi rotation, annihilating the pivot exactly.  Sweeps stop once the
// off-diagonal Frobenius mass drops below 1e-13 * ||H||_F; more than 60
// sweeps raises NoConvergence.  Inputs failing the hermiticity gate
// ||H - H*||_F <= tol.abs * max(1, ||H||_F) raise NotHermitian; the
// iteration itself runs on the symmetrized (H + H*)/2.
EigResult hermitian_eig(const ComplexMatrix& h, const Tolerance& tol = {});

// Eigenvalues only (no accumulation of V); same iteration, ascending order.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, const Tolerance& tol = {});

// Largest eigenvalue of a Hermitian matrix; the hot path for support
// functions, so it skips eigenvector accumulation.
double lambda_max_hermitian(const ComplexMatrix& h, const Tolerance& tol = {});

// Singular value decomposition A = U diag(sigma) V*, sigma descending,
// U (rows x rows) and V (cols x cols) unitary.  Computed from the Hermitian
// eigendecomposition of A*A; left vectors are recovered as A v / sigma and
// re-orthonormalized, remaining columns come from orthonormal_completion.
// Eigenvalues of A*A below the formation-noise floor are clamped, so exact
// zero singular values come out as exact zeros.
struct SvdResult {
    ComplexMatrix u;
    std::vector<double> sigma;
    ComplexMatrix v;
};

SvdResult svd(const ComplexMatrix& a, const Tolerance& tol = {});

// Singular values only, descending.
std::vector<double> singular_values(const ComplexMatrix& a, const Tolerance& tol = {});

// sigma_max.
double operator_norm(const ComplexMatrix& a, const Tolerance& tol = {});

// Number of singular values above max(tol.rank_rel * sigma_max, tol.abs).
std::size_t rank_tol(const ComplexMatrix& a, const Tolerance& tol = {});

// Orthonormal basis of the right null space as columns (cols x nullity).
ComplexMatrix null_space(const ComplexMatrix& a, const Tolerance& tol = {});

// Extends an n x m matrix with orthonormal columns to a full n x n unitary.
// The first m columns are the input, bit for bit; the complement is built
// from seeded Gaussian draws by modified Gram-Schmidt with one
// re-orthogonalization pass.  Raises NotIsometric when
// ||W*W - I||_F > 1e-8.
ComplexMatrix orthonormal_completion(const ComplexMatrix& w,
                                     std::uint64_t seed = kCompletionSeed);

// Characteristic polynomial via the Faddeev-LeVerrier recurrence.
// Returns coefficients c[0..n] with c[n] = 1 for
// det(zI - A) = sum_j c[j] z^j.  Guarded to n <= 16; the recurrence loses
// accuracy beyond that (raises DimensionTooLarge).
std::vector<cplx> char_poly(const ComplexMatrix& a);

// det(A) by LU with partial pivoting.
cplx determinant(const ComplexMatrix& a);

// All eigenvalues.  Exactly triangular inputs short-circuit to the diagonal.
// Otherwise the roots of the characteristic polynomial are found by
// Durand-Kerner iteration: on the char_poly coefficients for n <= 16, on
// LU-evaluated det(zI - A) beyond that.  Accuracy for a root of
// multiplicity m is limited to O(eps^(1/m)), as for any root finder.
std::vector<cplx> eigenvalues(const ComplexMatrix& a, const Tolerance& tol = {});

// Horner evaluation of sum_j coeffs[j] z^j.
cplx poly_eval(const std::vector<cplx>& coeffs, cplx z);

}  // namespace ppi
