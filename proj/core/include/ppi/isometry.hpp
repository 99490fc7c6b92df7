#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppi/matrix.hpp"

namespace ppi {

// Index of the last power that is still a partial isometry.  The index is
// either a small integer or infinite (every power works), never "unknown":
// ambiguity at tolerance surfaces as an exception instead.
struct PpiIndex {
    static PpiIndex finite(std::size_t k) { return {false, k}; }
    static PpiIndex infinite() { return {true, 0}; }

    bool is_infinite = false;
    std::size_t value = 0;  // meaningful only when !is_infinite

    bool operator==(const PpiIndex&) const = default;
};

// "inf" for the infinite index, the decimal value otherwise.
std::string to_string(const PpiIndex& p);

struct AnalysisReport {
    std::size_t n = 0;
    std::size_t ascent = 0;
    PpiIndex ppi;
    // pi_chain[j-1] says whether A^j is a partial isometry, j = 1..ascent+1.
    std::vector<bool> pi_chain;
    // Empty when the matrix is not a contraction (the question only makes
    // sense for contractions).
    std::optional<bool> unitary_part;
    double norm = 0;  // operator norm
};

// A is a partial isometry when A*A is an orthogonal projection,
// equivalently when every singular value is 0 or 1.  Two criteria are
// evaluated: the singular-value distance max_i dist(sigma_i, {0,1}) against
// tol.abs * sqrt(n), and the projection defect ||(A*A)^2 - A*A||_F against
// 3 n tol.abs.  They agree except in a thin band around the threshold;
// disagreement raises AmbiguousAtTolerance rather than guessing.
bool is_partial_isometry(const ComplexMatrix& a, const Tolerance& tol = {});

// Smallest k with ker A^k = ker A^(k+1), computed from the rank sequence of
// successive powers.  Always at most n.
std::size_t ascent(const ComplexMatrix& a, const Tolerance& tol = {});

// Largest j such that I, A, ..., A^j are all partial isometries.  Only
// powers 1..ascent+1 are tested: if all of them pass, every higher power
// does too and the index is infinite.
PpiIndex ppi_index(const ComplexMatrix& a, const Tolerance& tol = {});

// Whether the contraction A has a nonzero reducing subspace on which it is
// unitary, detected as a nonzero intersection of the kernels of
// I - A^j* A^j and I - A^j A^j* across powers j = 1..n.  Raises
// NotAContraction when ||A|| > 1 + tol.abs.
bool has_unitary_part(const ComplexMatrix& a, const Tolerance& tol = {});

// Builds a random matrix whose powers 1..k are all partial isometries,
// k = profile.size().  The construction is a width-profile.back() identity
// staircase with an isometric core pair stacked from a random unitary,
// plus nilpotent blocks realizing the rest of the kernel-dimension profile,
// conjugated by a random unitary.  The profile lists
// dim(ker A^j) - dim(ker A^(j-1)) for j = 1..k and must be nonincreasing
// and positive; core_dim is the rank of A^k.  The core unitary draw is
// rejection-sampled so both core blocks stay well conditioned, which makes
// the profile exactly recoverable and keeps the trailing column entries of
// chain-length-n-1 instances away from zero.
ComplexMatrix random_ppi(const std::vector<std::size_t>& profile, std::size_t core_dim,
                         std::uint64_t seed, const Tolerance& tol = {});

AnalysisReport analyze(const ComplexMatrix& a, const Tolerance& tol = {});

}  // namespace ppi
