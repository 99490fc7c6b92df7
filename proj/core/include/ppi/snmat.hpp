#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ppi/canon.hpp"
#include "ppi/isometry.hpp"
#include "ppi/matrix.hpp"
#include "ppi/numrange.hpp"

namespace ppi {

// Structural verdicts for a noninvertible defect-one contraction, filled in
// by check_prop31:
//   ascent_equals_alg_mult  the ascent equals the algebraic multiplicity of
//                           the eigenvalue 0;
//   ppi                     the measured power-partial-isometry index;
//   ppi_in_allowed_set      that index is the ascent itself or infinite;
//   jordan_iff_holds        the index is infinite exactly when the matrix
//                           reduces to a single nilpotent Jordan block of
//                           full size;
//   rank_sequence_ok        rank A^j = n - j for every j up to the ascent.
struct Prop31Verdicts {
    bool ascent_equals_alg_mult = false;
    PpiIndex ppi;
    bool ppi_in_allowed_set = false;
    bool jordan_iff_holds = false;
    bool rank_sequence_ok = false;
};

// Membership report for the class of n-by-n contractions with all
// eigenvalues strictly inside the unit disc and rank(I - A*A) = 1.  The
// three defining conditions are reported separately; is_sn is their
// conjunction.  zero_multiplicity is the algebraic multiplicity of the
// eigenvalue 0, read off the stabilized rank of the power sequence.
struct SnReport {
    std::size_t n = 0;
    bool is_contraction = false;
    std::vector<cplx> eigenvalues;
    std::size_t defect_rank = 0;
    bool is_sn = false;
    std::size_t zero_multiplicity = 0;
    std::optional<Prop31Verdicts> prop31;
};

SnReport is_sn(const ComplexMatrix& a, const Tolerance& tol = {});

// Upper-triangular defect-one contraction with the prescribed eigenvalue
// list on its diagonal.  Entry (i,j) above the diagonal is
// sqrt(1-|l_i|^2) sqrt(1-|l_j|^2) prod_{i<k<j} (-conj(l_k)); with all
// eigenvalues zero this degenerates to the nilpotent Jordan block.  The
// output is validated before returning: it must pass is_sn and its computed
// spectrum must match the request as a multiset within 1e-7.
ComplexMatrix sn_from_eigenvalues(const std::vector<cplx>& lams);

// Runs the five structural checks on a noninvertible member of the class
// and returns the membership report with prop31 filled.  Raises NotSn when
// the matrix is not in the class, Invertible when 0 is not an eigenvalue.
SnReport check_prop31(const ComplexMatrix& a, const Tolerance& tol = {});

// Defect-one contraction of size n whose index and ascent both equal j:
// j zero eigenvalues plus n-j equally spaced values on the circle of
// radius 1/2.  The index and ascent are verified before returning.
ComplexMatrix construct_pq(std::size_t n, std::size_t j);

struct SearchCertificate {
    std::size_t n = 0;
    std::size_t j = 0;  // requested index
    std::size_t k = 0;  // requested ascent
    bool deterministic = false;
    std::size_t trials_used = 0;  // randomized trials consumed, 0 when deterministic
    PpiIndex index;
    std::size_t ascent = 0;
};

struct SearchResult {
    ComplexMatrix witness;
    SearchCertificate certificate;
};

// Looks for an n-by-n matrix with index j and ascent k, 1 <= j <= k <= n-1.
// Two regimes are deterministic: j = k uses construct_pq directly, and
// j <= n-k-1 uses a size-k Jordan block in direct sum with a defect-one
// block carrying the index.  Outside those the search draws randomized
// structured candidates (Jordan sums around a defect-one core, and
// staircase matrices with a random isometric tail pair), verifying each;
// it returns the first verified witness or nothing after `trials` draws.
// Every returned witness has its index and ascent re-measured.
std::optional<SearchResult> search_pa(std::size_t n, std::size_t j, std::size_t k,
                                      std::size_t trials = 200, std::uint64_t seed = 42);

enum class LawStatus {
    HOLDS,
    FAILS,
    NOT_APPLICABLE,
};

// Measured data and verdicts for the Kronecker-product laws on a pair of
// nonzero square matrices:
//   ascent_min_rule  a(A kron B) is determined by the factor ascents: the
//                    smaller one when both factors are nilpotent, the
//                    nilpotent factor's when exactly one is, the larger one
//                    when neither is (rank(A^s) rank(B^s) = rank of the
//                    product power forces each case);
//   pi_product       both factors partial isometries forces the product to
//                    be one (vacuously holds when the premise fails; the
//                    pi fields below record which case occurred);
//   pi_iff_both      for contractions the implication is two-sided;
//   index_min_rule   for contractions the index is the smaller factor
//                    index, unless some factor power vanishes at or before
//                    that index's chain break: zero powers are partial
//                    isometries and stay zero, so the product index is then
//                    infinite;
//   square_law       A is a partial isometry exactly when A kron A is, and
//                    their indices agree.
// The two contraction laws report NOT_APPLICABLE when either factor has
// operator norm above 1 at tolerance.
struct TensorLawReport {
    LawStatus ascent_min_rule = LawStatus::NOT_APPLICABLE;
    LawStatus pi_product = LawStatus::NOT_APPLICABLE;
    LawStatus pi_iff_both = LawStatus::NOT_APPLICABLE;
    LawStatus index_min_rule = LawStatus::NOT_APPLICABLE;
    LawStatus square_law = LawStatus::NOT_APPLICABLE;

    std::size_t a_ascent = 0;
    std::size_t b_ascent = 0;
    std::size_t kron_ascent = 0;
    bool a_pi = false;
    bool b_pi = false;
    bool kron_pi = false;
    std::optional<PpiIndex> a_index;  // filled only when both are contractions
    std::optional<PpiIndex> b_index;
    std::optional<PpiIndex> kron_index;
    PpiIndex index_of_a;   // index of A alone, any nonzero A
    PpiIndex index_of_aa;  // index of A kron A
};

TensorLawReport tensor_laws(const ComplexMatrix& a, const ComplexMatrix& b,
                            const Tolerance& tol = {});

// Three-way circularity equivalence for a defect-one contraction with
// spectrum inside the disc: the numerical range of A is a disc at the
// origin, the numerical range of A kron A is one, and A reduces to a single
// full-size nilpotent Jordan block.  All three are evaluated independently;
// agree demands identical verdicts with no INCONCLUSIVE certificate.
struct Theorem33Report {
    CircularityCertificate disc_a;
    CircularityCertificate disc_aa;
    bool similar_jn = false;
    bool agree = false;
};

Theorem33Report theorem33_check(const ComplexMatrix& a, const Tolerance& tol = {});

}  // namespace ppi
