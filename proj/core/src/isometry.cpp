#include "ppi/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "ppi/errors.hpp"
#include "ppi/linalg.hpp"
#include "ppi/rand.hpp"

namespace ppi {

std::string to_string(const PpiIndex& p) {
    return p.is_infinite ? "inf" : std::to_string(p.value);
}

bool is_partial_isometry(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw BadParameters("is_partial_isometry: square input required");
    const std::size_t n = a.rows();
    if (n == 0) return true;

    const std::vector<double> sig = singular_values(a, tol);
    double dist = 0;
    for (double s : sig) dist = std::max(dist, std::min(std::abs(s), std::abs(s - 1.0)));
    const bool sv_ok = dist <= tol.abs * std::sqrt(static_cast<double>(n));

    const ComplexMatrix p = adjoint(a) * a;
    const double defect = frobenius_norm(p * p - p);
    const bool proj_ok = defect <= 3.0 * static_cast<double>(n) * tol.abs;

    if (sv_ok != proj_ok) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "is_partial_isometry: criteria disagree (singular distance %.3e, "
                      "projection defect %.3e)",
                      dist, defect);
        throw AmbiguousAtTolerance(buf);
    }
    return sv_ok;
}

std::size_t ascent(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw BadParameters("ascent: square input required");
    const std::size_t n = a.rows();

    std::size_t prev_rank = n;  // rank of A^0
    ComplexMatrix power = a;
    for (std::size_t k = 0; k <= n; ++k) {
        if (k > 0) power = power * a;
        const std::size_t r = rank_tol(power, tol);
        if (r == prev_rank) return k;
        prev_rank = r;
    }
    // The rank sequence strictly decreases until it stabilizes, so it must
    // settle within n steps.
    return n;
}

PpiIndex ppi_index(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw BadParameters("ppi_index: square input required");
    const std::size_t limit = ascent(a, tol) + 1;

    ComplexMatrix power = a;
    for (std::size_t j = 1; j <= limit; ++j) {
        if (j > 1) power = power * a;
        if (!is_partial_isometry(power, tol)) return PpiIndex::finite(j - 1);
    }
    // The chain survived one power past the ascent; from there it can never
    // break, so the index is infinite.
    return PpiIndex::infinite();
}

namespace {

// Orthonormal basis (columns of k) intersected with ker(m): a vector k*y
// lies in ker(m) exactly when y lies in ker(m*k).
ComplexMatrix intersect_with_kernel(const ComplexMatrix& k, const ComplexMatrix& m,
                                    const Tolerance& tol) {
    if (k.cols() == 0) return k;
    const ComplexMatrix reduced = null_space(m * k, tol);
    return k * reduced;
}

}  // namespace

bool has_unitary_part(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw BadParameters("has_unitary_part: square input required");
    const std::size_t n = a.rows();
    if (n == 0) return false;
    if (operator_norm(a, tol) > 1.0 + tol.abs)
        throw NotAContraction("has_unitary_part: operator norm exceeds 1");

    const ComplexMatrix id = ComplexMatrix::identity(n);
    ComplexMatrix basis = id;
    ComplexMatrix power = id;
    for (std::size_t j = 1; j <= n; ++j) {
        power = power * a;
        basis = intersect_with_kernel(basis, id - adjoint(power) * power, tol);
        if (basis.cols() == 0) return false;
        basis = intersect_with_kernel(basis, id - power * adjoint(power), tol);
        if (basis.cols() == 0) return false;
    }
    return true;
}

ComplexMatrix random_ppi(const std::vector<std::size_t>& profile, std::size_t core_dim,
                         std::uint64_t seed, const Tolerance& tol) {
    if (profile.empty()) throw BadProfile("random_ppi: empty profile");
    for (std::size_t j = 0; j < profile.size(); ++j) {
        if (profile[j] == 0) throw BadProfile("random_ppi: profile entries must be positive");
        if (j > 0 && profile[j] > profile[j - 1])
            throw BadProfile("random_ppi: profile must be nonincreasing");
    }

    const std::size_t k = profile.size();
    const std::size_t width = profile.back();
    const std::size_t total = std::accumulate(profile.begin(), profile.end(), core_dim);

    Rng rng(seed);

    // Core blocks: stack [B; C] = first core_dim columns of a random unitary
    // of size width + core_dim, so B*B + C*C = I automatically.  Rejection
    // keeps both blocks away from singularity (see header).
    ComplexMatrix bblk(width, core_dim), cblk(core_dim, core_dim);
    if (core_dim > 0) {
        double best = -1.0;
        for (int attempt = 0; attempt < 200; ++attempt) {
            const ComplexMatrix u = random_unitary(width + core_dim, rng);
            const ComplexMatrix bc = block(u, 0, 0, width, core_dim);
            const ComplexMatrix cc = block(u, width, 0, core_dim, core_dim);
            const std::vector<double> sb = singular_values(bc, tol);
            const std::vector<double> sc = singular_values(cc, tol);
            const double quality = std::min(sb.empty() ? 1.0 : sb.back(),
                                            sc.empty() ? 1.0 : sc.back());
            if (quality > best) {
                best = quality;
                bblk = bc;
                cblk = cc;
            }
            if (best >= 0.05) break;
        }
    }

    // Identity staircase of k levels, each of size width, feeding the core.
    const std::size_t stair_dim = k * width + core_dim;
    ComplexMatrix model(total, total);
    for (std::size_t level = 0; level + 1 < k; ++level)
        for (std::size_t t = 0; t < width; ++t)
            model(level * width + t, (level + 1) * width + t) = 1.0;
    if (core_dim > 0) {
        set_block(model, (k - 1) * width, k * width, bblk);
        set_block(model, k * width, k * width, cblk);
    }

    // Nilpotent blocks completing the kernel-dimension profile: the lanes of
    // width profile[j] - profile[j+1] stop after level j, one single block of
    // size j+1 per lane.
    std::size_t offset = stair_dim;
    for (std::size_t j = k - 1; j >= 1; --j) {
        const std::size_t lanes = profile[j - 1] - profile[j];
        for (std::size_t t = 0; t < lanes; ++t) {
            const ComplexMatrix jb = ComplexMatrix::jordan_block(j);
            set_block(model, offset, offset, jb);
            offset += j;
        }
    }

    const ComplexMatrix v = random_unitary(total, rng);
    return adjoint(v) * model * v;
}

AnalysisReport analyze(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw BadParameters("analyze: square input required");
    AnalysisReport rep;
    rep.n = a.rows();
    rep.norm = operator_norm(a, tol);
    rep.ascent = ascent(a, tol);

    const std::size_t limit = rep.ascent + 1;
    ComplexMatrix power = a;
    std::size_t first_fail = 0;
    for (std::size_t j = 1; j <= limit && rep.n > 0; ++j) {
        if (j > 1) power = power * a;
        const bool ok = is_partial_isometry(power, tol);
        rep.pi_chain.push_back(ok);
        if (!ok && first_fail == 0) first_fail = j;
    }
    rep.ppi = first_fail == 0 ? PpiIndex::infinite() : PpiIndex::finite(first_fail - 1);

    if (rep.norm <= 1.0 + tol.abs)
        rep.unitary_part = has_unitary_part(a, tol);
    return rep;
}

}  // namespace ppi
