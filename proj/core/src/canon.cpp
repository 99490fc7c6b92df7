#include "ppi/canon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ppi/errors.hpp"
#include "ppi/linalg.hpp"

namespace ppi {
namespace {

constexpr double kStructTol = 1e-8;

// Offsets of the staircase blocks inside the conjugated matrix: entry j is
// where level j starts, entry k is where the core starts.
std::vector<std::size_t> block_offsets(const std::vector<std::size_t>& sizes) {
    std::vector<std::size_t> offs(sizes.size() + 1, 0);
    for (std::size_t j = 0; j < sizes.size(); ++j) offs[j + 1] = offs[j] + sizes[j];
    return offs;
}

// In-place modified Gram-Schmidt on the columns of q, two passes.
void mgs_columns(ComplexMatrix& q) {
    const std::size_t n = q.rows(), m = q.cols();
    for (std::size_t j = 0; j < m; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                cplx dot{};
                for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, i)) * q(r, j);
                for (std::size_t r = 0; r < n; ++r) q(r, j) -= dot * q(r, i);
            }
        }
        double nrm = 0;
        for (std::size_t r = 0; r < n; ++r) nrm += std::norm(q(r, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-6)
            throw ToleranceBreach("staircase basis column collapsed during re-orthogonalization");
        for (std::size_t r = 0; r < n; ++r) q(r, j) /= nrm;
    }
}

// Basis of the part of span(cand) orthogonal to span(acc), which must have
// dimension `target`.  Projects acc out of cand, keeps the `target` dominant
// left singular vectors, then polishes with a second projection and MGS.
ComplexMatrix orth_against(const ComplexMatrix& acc, const ComplexMatrix& cand,
                           std::size_t target, const Tolerance& tol) {
    ComplexMatrix p = cand;
    if (acc.cols() > 0) p = cand - acc * (adjoint(acc) * cand);
    SvdResult dec = svd(p, tol);
    if (target > dec.sigma.size() || dec.sigma[target - 1] < 0.5)
        throw ToleranceBreach("kernel-chain step has deficient dimension");
    ComplexMatrix q = columns(dec.u, 0, target);
    if (acc.cols() > 0) q = q - acc * (adjoint(acc) * q);
    mgs_columns(q);
    return q;
}

// M(r, c) = t(order[r], order[c]).
ComplexMatrix permute_sym(const ComplexMatrix& t, const std::vector<std::size_t>& order) {
    const std::size_t n = order.size();
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = t(order[r], order[c]);
    return m;
}

// Unitary with columns P e_j = e_{order[j]}, so that P* T P = permute_sym.
ComplexMatrix permutation_matrix(const std::vector<std::size_t>& order) {
    ComplexMatrix p(order.size(), order.size());
    for (std::size_t j = 0; j < order.size(); ++j) p(order[j], j) = 1.0;
    return p;
}

ComplexMatrix nilpotent_sum(const std::vector<std::size_t>& sizes) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(sizes.size());
    for (std::size_t s : sizes) blocks.push_back(ComplexMatrix::jordan_block(s));
    return direct_sum(blocks);
}

}  // namespace

ComplexMatrix assemble(const StaircaseForm& sf) {
    const std::vector<std::size_t> offs = block_offsets(sf.sizes);
    const std::size_t core_off = offs[sf.k];
    ComplexMatrix t(core_off + sf.core, core_off + sf.core);
    for (std::size_t i = 0; i + 1 < sf.k; ++i) set_block(t, offs[i], offs[i + 1], sf.steps[i]);
    if (sf.k >= 1 && sf.core > 0) set_block(t, offs[sf.k - 1], core_off, sf.b);
    if (sf.core > 0) set_block(t, core_off, core_off, sf.c);
    return t;
}

ComplexMatrix assemble(const JordanSpec& spec) {
    std::vector<ComplexMatrix> blocks;
    if (spec.unitary_summand) blocks.push_back(*spec.unitary_summand);
    for (std::size_t s : spec.block_sizes) blocks.push_back(ComplexMatrix::jordan_block(s));
    return direct_sum(blocks);
}

StaircaseForm staircase_form(const ComplexMatrix& a, std::size_t ell, const Tolerance& tol) {
    if (!a.is_square() || a.rows() == 0)
        throw BadParameters("staircase_form needs a nonempty square matrix");
    const std::size_t n = a.rows();
    const std::size_t asc = ascent(a, tol);
    const std::size_t k = std::min(ell, asc);

    for (std::size_t j = 1; j <= k; ++j) {
        if (!is_partial_isometry(matrix_power(a, j), tol))
            throw NotPowerPartialIsometry(
                "staircase_form: power " + std::to_string(j) + " is not a partial isometry", j);
    }

    StaircaseForm sf;
    sf.k = k;
    if (k == 0) {
        sf.core = n;
        sf.b = ComplexMatrix(0, n);
        sf.c = a;
        sf.v = ComplexMatrix::identity(n);
        return sf;
    }

    // Kernel-chain basis: columns of acc span ker A^j after step j, grouped
    // into the increments H_1, ..., H_k.
    ComplexMatrix acc(n, 0);
    std::size_t prev_nul = 0;
    for (std::size_t j = 1; j <= k; ++j) {
        ComplexMatrix nj = null_space(matrix_power(a, j), tol);
        const std::size_t nul_j = nj.cols();
        if (nul_j <= prev_nul)
            throw ToleranceBreach("kernel chain failed to grow at power " + std::to_string(j));
        const std::size_t grow = nul_j - prev_nul;
        if (!sf.sizes.empty() && grow > sf.sizes.back())
            throw ToleranceBreach("kernel-chain increments must be nonincreasing");
        acc = hcat(acc, orth_against(acc, nj, grow, tol));
        sf.sizes.push_back(grow);
        prev_nul = nul_j;
    }

    sf.core = n - acc.cols();
    sf.v = orthonormal_completion(acc);

    const ComplexMatrix t = adjoint(sf.v) * a * sf.v;
    const std::vector<std::size_t> offs = block_offsets(sf.sizes);
    const std::size_t core_off = offs[k];
    for (std::size_t i = 0; i + 1 < k; ++i)
        sf.steps.push_back(block(t, offs[i], offs[i + 1], sf.sizes[i], sf.sizes[i + 1]));
    sf.b = block(t, offs[k - 1], core_off, sf.sizes[k - 1], sf.core);
    sf.c = block(t, core_off, core_off, sf.core, sf.core);

    sf.residual = frobenius_norm(t - assemble(sf));
    const double scale = std::max(1.0, frobenius_norm(a));
    if (sf.residual > kStructTol * scale)
        throw ToleranceBreach("staircase zero pattern violated beyond tolerance");
    for (std::size_t i = 0; i + 1 < k; ++i) {
        const ComplexMatrix& s = sf.steps[i];
        if (frobenius_norm(adjoint(s) * s - ComplexMatrix::identity(s.cols())) > kStructTol)
            throw ToleranceBreach("staircase step lost column orthonormality");
    }
    if (sf.core > 0) {
        const ComplexMatrix gram = adjoint(sf.b) * sf.b + adjoint(sf.c) * sf.c;
        if (frobenius_norm(gram - ComplexMatrix::identity(sf.core)) > kStructTol)
            throw ToleranceBreach("staircase core pair is not a column isometry");
    }
    return sf;
}

NormalizedStaircase normalize_staircase(const StaircaseForm& sf) {
    NormalizedStaircase out;
    if (sf.k == 0) {
        out.staircase = sf;
        out.tail.conjugator = sf.v;
        out.tail.residual = sf.residual;
        return out;
    }

    const std::size_t k = sf.k;
    const std::size_t w = sf.sizes[k - 1];
    const std::size_t m = sf.core;
    const std::vector<std::size_t> offs = block_offsets(sf.sizes);
    const std::size_t n = offs[k] + m;

    // Level unitaries, chosen right to left so every step becomes the
    // identity stacked on zeros.  The last level keeps its basis, which
    // leaves B and C untouched.
    std::vector<ComplexMatrix> u(k);
    u[k - 1] = ComplexMatrix::identity(w);
    for (std::size_t i = k - 1; i-- > 0;) u[i] = orthonormal_completion(sf.steps[i] * u[i + 1]);

    ComplexMatrix ud(n, n);
    for (std::size_t i = 0; i < k; ++i) set_block(ud, offs[i], offs[i], u[i]);
    set_block(ud, offs[k], offs[k], ComplexMatrix::identity(m));

    ComplexMatrix t2 = adjoint(ud) * assemble(sf) * ud;

    // Lane t lives at level i exactly when sizes[i] > t.  Lanes under the
    // final width w run through every level and stay with the core; wider
    // lanes break off as nilpotent chains.
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t t = 0; t < w; ++t) order.push_back(offs[i] + t);
    for (std::size_t s = 0; s < m; ++s) order.push_back(offs[k] + s);
    std::vector<std::size_t> tail_sizes;
    for (std::size_t t = w; t < sf.sizes[0]; ++t) {
        std::size_t len = 0;
        for (std::size_t i = 0; i < k && sf.sizes[i] > t; ++i) {
            order.push_back(offs[i] + t);
            ++len;
        }
        tail_sizes.push_back(len);
    }

    out.staircase.k = k;
    out.staircase.sizes.assign(k, w);
    out.staircase.core = m;
    for (std::size_t i = 0; i + 1 < k; ++i)
        out.staircase.steps.push_back(ComplexMatrix::identity(w));
    out.staircase.b = sf.b;
    out.staircase.c = sf.c;
    out.staircase.v = sf.v * ud * permutation_matrix(order);

    out.tail.block_sizes = tail_sizes;
    out.tail.conjugator = out.staircase.v;

    const ComplexMatrix ideal = direct_sum(assemble(out.staircase), nilpotent_sum(tail_sizes));
    const double total = sf.residual + frobenius_norm(permute_sym(t2, order) - ideal);
    out.staircase.residual = total;
    out.tail.residual = total;
    return out;
}

JordanSpec halmos_wallen(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square() || a.rows() == 0)
        throw BadParameters("halmos_wallen needs a nonempty square matrix");
    const std::size_t asc = ascent(a, tol);
    for (std::size_t j = 1; j <= asc + 1; ++j) {
        if (!is_partial_isometry(matrix_power(a, j), tol))
            throw NotInfiniteIndex(
                "halmos_wallen: power " + std::to_string(j) + " is not a partial isometry", j);
    }

    JordanSpec spec;
    if (asc == 0) {
        spec.unitary_summand = a;
        spec.conjugator = ComplexMatrix::identity(a.rows());
        return spec;
    }

    const NormalizedStaircase ns = normalize_staircase(staircase_form(a, asc, tol));
    const StaircaseForm& st = ns.staircase;
    const double scale = std::max(1.0, frobenius_norm(a));
    const double b_mass = frobenius_norm(st.b);
    if (b_mass > kStructTol * scale)
        throw ToleranceBreach("matrix with all powers partial isometries must decouple its core");
    if (st.core > 0 &&
        frobenius_norm(adjoint(st.c) * st.c - ComplexMatrix::identity(st.core)) > kStructTol)
        throw ToleranceBreach("decoupled core failed the unitarity check");

    const std::size_t k = st.k;
    const std::size_t w = st.sizes[k - 1];
    const std::size_t m = st.core;

    spec.block_sizes.assign(w, k);
    spec.block_sizes.insert(spec.block_sizes.end(), ns.tail.block_sizes.begin(),
                            ns.tail.block_sizes.end());
    if (m > 0) spec.unitary_summand = st.c;

    // Reorder from [level-major lanes | core | tail] to
    // [core | lane chains | tail]: the unitary summand leads, then each of
    // the w surviving lanes contributes one chain of length k.
    const std::size_t n = a.rows();
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t s = 0; s < m; ++s) order.push_back(k * w + s);
    for (std::size_t t = 0; t < w; ++t)
        for (std::size_t i = 0; i < k; ++i) order.push_back(i * w + t);
    for (std::size_t r = k * w + m; r < n; ++r) order.push_back(r);

    spec.conjugator = st.v * permutation_matrix(order);

    const ComplexMatrix before =
        direct_sum(assemble(st), nilpotent_sum(ns.tail.block_sizes));
    spec.residual = st.residual + frobenius_norm(permute_sym(before, order) - assemble(spec));
    return spec;
}

PmaxClassification classify_pmax(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square() || a.rows() == 0)
        throw BadParameters("classify_pmax needs a nonempty square matrix");
    PmaxClassification out;
    out.p = ppi_index(a, tol);
    if (out.p.is_infinite) {
        out.kind = PmaxKind::P_INFINITE;
        return out;
    }
    const std::size_t n = a.rows();
    if (n < 2 || out.p.value != n - 1) {
        out.kind = PmaxKind::P_OTHER;
        return out;
    }

    // Index n-1 pins the whole kernel chain: the ascent is n-1, nullities
    // grow by one per power, and the staircase is n-1 levels of size one
    // over a one-dimensional core carrying the two model parameters.
    const NormalizedStaircase ns = normalize_staircase(staircase_form(a, n - 1, tol));
    const StaircaseForm& sf = ns.staircase;
    if (sf.k != n - 1 || sf.core != 1 || !ns.tail.block_sizes.empty() ||
        std::any_of(sf.sizes.begin(), sf.sizes.end(), [](std::size_t s) { return s != 1; }))
        throw ToleranceBreach("index n-1 matrix failed to produce the thin staircase");
    const double am = std::abs(sf.b(0, 0));
    const double bm = std::abs(sf.c(0, 0));
    if (std::abs(am * am + bm * bm - 1.0) > 1e-8 || am <= tol.abs || bm <= tol.abs)
        throw ToleranceBreach("index n-1 model parameters are out of range");
    out.kind = PmaxKind::P_EQUALS_N_MINUS_1;
    out.a_modulus = am;
    out.b_modulus = bm;
    return out;
}

}  // namespace ppi
