#include "ppi/snmat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "ppi/errors.hpp"
#include "ppi/linalg.hpp"
#include "ppi/rand.hpp"

namespace ppi {
namespace {

// Eigenvalues this close to the unit circle (in units of tol.abs) are not
// treated as strictly inside the disc.
constexpr double kInsideMargin = 10.0;
constexpr double kMatchRadius = 1e-7;

bool all_inside_disc(const std::vector<cplx>& lams, const Tolerance& tol) {
    for (const cplx& lam : lams)
        if (std::abs(lam) >= 1.0 - kInsideMargin * tol.abs) return false;
    return true;
}

// Greedy nearest-unused pairing of two spectra at the match radius.
bool multisets_match(std::vector<cplx> got, const std::vector<cplx>& want) {
    if (got.size() != want.size()) return false;
    for (const cplx& w : want) {
        std::size_t best = got.size();
        double dist = kMatchRadius;
        for (std::size_t i = 0; i < got.size(); ++i) {
            const double d = std::abs(got[i] - w);
            if (d <= dist) {
                dist = d;
                best = i;
            }
        }
        if (best == got.size()) return false;
        got.erase(got.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return true;
}

bool single_full_block(const JordanSpec& spec, std::size_t n) {
    return !spec.unitary_summand && spec.block_sizes.size() == 1 && spec.block_sizes[0] == n;
}

ComplexMatrix random_defect_one(std::size_t m, std::size_t zeros, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cplx> lams(m);
    for (std::size_t i = zeros; i < m; ++i) {
        const double radius = 0.2 + 0.6 * unit(rng);
        const double angle = 2.0 * std::numbers::pi * unit(rng);
        lams[i] = cplx{radius * std::cos(angle), radius * std::sin(angle)};
    }
    return sn_from_eigenvalues(lams);
}

// Jordan blocks around one defect-one summand that carries the index.
ComplexMatrix jordan_sum_candidate(std::size_t n, std::size_t j, std::size_t k, Rng& rng) {
    std::vector<ComplexMatrix> blocks;
    blocks.push_back(ComplexMatrix::jordan_block(k));
    std::size_t rem = n - k;
    if (rem >= 2) {
        std::size_t m = rem;
        if (rem >= j + 2) m = j + 1 + rng() % (rem - j);
        blocks.push_back(random_defect_one(m, std::min(j, m - 1), rng));
        rem -= m;
    }
    while (rem > 0) {
        const std::size_t s = 1 + rng() % std::min(k, rem);
        blocks.push_back(ComplexMatrix::jordan_block(s));
        rem -= s;
    }
    const ComplexMatrix u = random_unitary(n, rng);
    return u * direct_sum(blocks) * adjoint(u);
}

// Staircase with identity steps and a random isometric tail stack: the
// first power is always a partial isometry, later powers break at a
// draw-dependent point while the kernel chain keeps length k.
ComplexMatrix staircase_candidate(std::size_t n, std::size_t k, Rng& rng) {
    const std::size_t m = 1 + rng() % (n - k);
    std::vector<std::size_t> sizes(k, 1);
    for (std::size_t e = 0; e < n - k - m; ++e) ++sizes[rng() % k];
    std::sort(sizes.begin(), sizes.end(), std::greater<>());

    std::vector<std::size_t> off(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) off[i + 1] = off[i] + sizes[i];

    ComplexMatrix t(n, n);
    for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t r = 0; r < sizes[i + 1]; ++r) t(off[i] + r, off[i + 1] + r) = 1.0;

    const ComplexMatrix w = random_unitary(sizes[k - 1] + m, rng);
    for (std::size_t r = 0; r < sizes[k - 1]; ++r)
        for (std::size_t c = 0; c < m; ++c) t(off[k - 1] + r, n - m + c) = w(r, c);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) t(n - m + r, n - m + c) = w(sizes[k - 1] + r, c);

    const ComplexMatrix u = random_unitary(n, rng);
    return u * t * adjoint(u);
}

std::optional<SearchResult> verify_candidate(const ComplexMatrix& cand, std::size_t n,
                                             std::size_t j, std::size_t k, bool deterministic,
                                             std::size_t trials_used) {
    const Tolerance tol{};
    try {
        const std::size_t asc = ascent(cand, tol);
        if (asc != k) return std::nullopt;
        const PpiIndex p = ppi_index(cand, tol);
        if (!(p == PpiIndex::finite(j))) return std::nullopt;
        SearchResult res;
        res.witness = cand;
        res.certificate = {n, j, k, deterministic, trials_used, p, asc};
        return res;
    } catch (const AmbiguousAtTolerance&) {
        return std::nullopt;
    }
}

}  // namespace

SnReport is_sn(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square() || a.rows() == 0)
        throw BadParameters("is_sn needs a nonempty square matrix");
    const std::size_t n = a.rows();
    SnReport rep;
    rep.n = n;
    rep.is_contraction = operator_norm(a, tol) <= 1.0 + tol.abs;
    rep.eigenvalues = eigenvalues(a, tol);
    rep.defect_rank = rank_tol(ComplexMatrix::identity(n) - adjoint(a) * a, tol);
    rep.is_sn = rep.is_contraction && all_inside_disc(rep.eigenvalues, tol) && rep.defect_rank == 1;
    const std::size_t asc = ascent(a, tol);
    rep.zero_multiplicity = asc == 0 ? 0 : n - rank_tol(matrix_power(a, asc), tol);
    return rep;
}

ComplexMatrix sn_from_eigenvalues(const std::vector<cplx>& lams) {
    if (lams.empty()) throw BadParameters("sn_from_eigenvalues needs at least one eigenvalue");
    const Tolerance tol{};
    if (!all_inside_disc(lams, tol))
        throw BadParameters("sn_from_eigenvalues needs eigenvalues strictly inside the unit disc");

    const std::size_t n = lams.size();
    ComplexMatrix a(n, n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = lams[i];
        s[i] = std::sqrt(1.0 - std::norm(lams[i]));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            cplx entry = s[i] * s[j];
            for (std::size_t k = i + 1; k < j; ++k) entry *= -std::conj(lams[k]);
            a(i, j) = entry;
        }

    const SnReport rep = is_sn(a, tol);
    if (!rep.is_sn)
        throw ConstructionFailedValidation("sn_from_eigenvalues output failed the class checks");
    if (!multisets_match(rep.eigenvalues, lams))
        throw ConstructionFailedValidation(
            "sn_from_eigenvalues output spectrum drifted from the request");
    return a;
}

SnReport check_prop31(const ComplexMatrix& a, const Tolerance& tol) {
    SnReport rep = is_sn(a, tol);
    if (!rep.is_sn)
        throw NotSn("check_prop31 needs a defect-one contraction with spectrum inside the disc");
    const std::size_t n = rep.n;
    const std::size_t asc = ascent(a, tol);
    if (asc == 0) throw Invertible("check_prop31 needs 0 in the spectrum");

    Prop31Verdicts v;
    v.ascent_equals_alg_mult = asc == rep.zero_multiplicity;
    v.ppi = ppi_index(a, tol);
    v.ppi_in_allowed_set = v.ppi.is_infinite || v.ppi.value == asc;
    if (v.ppi.is_infinite) {
        v.jordan_iff_holds = single_full_block(halmos_wallen(a, tol), n);
    } else {
        // A finite index must come with a nonzero eigenvalue somewhere.
        v.jordan_iff_holds = rep.zero_multiplicity < n;
    }
    v.rank_sequence_ok = true;
    ComplexMatrix power = a;
    for (std::size_t p = 1; p <= asc; ++p) {
        if (p > 1) power = power * a;
        if (rank_tol(power, tol) != n - p) v.rank_sequence_ok = false;
    }
    rep.prop31 = v;
    return rep;
}

ComplexMatrix construct_pq(std::size_t n, std::size_t j) {
    if (n < 2 || j < 1 || j > n - 1)
        throw BadParameters("construct_pq needs 1 <= j <= n-1 with n >= 2");
    const std::size_t m = n - j;
    std::vector<cplx> lams(n);
    for (std::size_t t = 0; t < m; ++t) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(m);
        lams[j + t] = 0.5 * cplx{std::cos(angle), std::sin(angle)};
    }
    ComplexMatrix a = sn_from_eigenvalues(lams);
    const Tolerance tol{};
    if (ascent(a, tol) != j || !(ppi_index(a, tol) == PpiIndex::finite(j)))
        throw ConstructionFailedValidation("construct_pq output missed the requested index");
    return a;
}

std::optional<SearchResult> search_pa(std::size_t n, std::size_t j, std::size_t k,
                                      std::size_t trials, std::uint64_t seed) {
    if (n < 2 || j < 1 || j > k || k > n - 1)
        throw BadParameters("search_pa needs 1 <= j <= k <= n-1 with n >= 2");

    if (j == k) {
        auto hit = verify_candidate(construct_pq(n, j), n, j, k, true, 0);
        if (!hit)
            throw ConstructionFailedValidation("deterministic witness failed verification");
        return hit;
    }
    if (j + k + 1 <= n) {
        const ComplexMatrix cand =
            direct_sum(ComplexMatrix::jordan_block(k), construct_pq(n - k, j));
        auto hit = verify_candidate(cand, n, j, k, true, 0);
        if (!hit)
            throw ConstructionFailedValidation("deterministic witness failed verification");
        return hit;
    }

    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(seed + 0x9e3779b97f4a7c15ull * (t + 1));
        ComplexMatrix cand;
        try {
            cand = t % 2 == 0 ? jordan_sum_candidate(n, j, k, rng)
                              : staircase_candidate(n, k, rng);
        } catch (const ConstructionFailedValidation&) {
            continue;
        }
        auto hit = verify_candidate(cand, n, j, k, false, t + 1);
        if (hit) return hit;
    }
    return std::nullopt;
}

TensorLawReport tensor_laws(const ComplexMatrix& a, const ComplexMatrix& b,
                            const Tolerance& tol) {
    if (!a.is_square() || !b.is_square() || a.rows() == 0 || b.rows() == 0)
        throw BadParameters("tensor_laws needs nonempty square matrices");
    if (max_abs(a) == 0.0 || max_abs(b) == 0.0)
        throw BadParameters("tensor_laws needs nonzero matrices");

    TensorLawReport rep;
    const ComplexMatrix ab = kron(a, b);
    rep.a_ascent = ascent(a, tol);
    rep.b_ascent = ascent(b, tol);
    rep.kron_ascent = ascent(ab, tol);

    // rank((A kron B)^s) = rank(A^s) rank(B^s), and a rank sequence strictly
    // decreases until its ascent.  The product therefore stabilizes at the
    // smaller ascent when both factors are nilpotent (the product hits zero
    // there), at the nilpotent factor's ascent when only one is (the other
    // factor keeps the product positive until then), and at the larger ascent
    // when neither is (both factors must freeze before the product can).
    const auto nilpotent = [&](const ComplexMatrix& x, std::size_t asc) {
        return rank_tol(matrix_power(x, std::max<std::size_t>(asc, 1)), tol) == 0;
    };
    const bool a_nil = nilpotent(a, rep.a_ascent);
    const bool b_nil = nilpotent(b, rep.b_ascent);
    std::size_t expected;
    if (a_nil && b_nil)
        expected = std::min(rep.a_ascent, rep.b_ascent);
    else if (a_nil)
        expected = rep.a_ascent;
    else if (b_nil)
        expected = rep.b_ascent;
    else
        expected = std::max(rep.a_ascent, rep.b_ascent);
    rep.ascent_min_rule = rep.kron_ascent == expected ? LawStatus::HOLDS : LawStatus::FAILS;

    rep.a_pi = is_partial_isometry(a, tol);
    rep.b_pi = is_partial_isometry(b, tol);
    rep.kron_pi = is_partial_isometry(ab, tol);
    rep.pi_product =
        !(rep.a_pi && rep.b_pi) || rep.kron_pi ? LawStatus::HOLDS : LawStatus::FAILS;

    const bool contractions = operator_norm(a, tol) <= 1.0 + tol.abs &&
                              operator_norm(b, tol) <= 1.0 + tol.abs;
    if (contractions) {
        rep.pi_iff_both =
            (rep.a_pi && rep.b_pi) == rep.kron_pi ? LawStatus::HOLDS : LawStatus::FAILS;
        rep.a_index = ppi_index(a, tol);
        rep.b_index = ppi_index(b, tol);
        rep.kron_index = ppi_index(ab, tol);

        // (A kron B)^s is a partial isometry exactly when A^s and B^s both
        // are or when either power vanishes (the product is then zero).  A
        // factor power that has vanished stays zero, so once the smaller
        // factor index reaches past the first vanishing power the product
        // chain never breaks and the product index is infinite; below that
        // point the chain breaks right after the smaller factor index.
        const std::size_t kInf = std::numeric_limits<std::size_t>::max();
        const std::size_t nu_a = a_nil ? rep.a_ascent : kInf;
        const std::size_t nu_b = b_nil ? rep.b_ascent : kInf;
        const std::size_t nu_min = std::min(nu_a, nu_b);
        PpiIndex want = PpiIndex::infinite();
        if (!rep.a_index->is_infinite || !rep.b_index->is_infinite) {
            std::size_t p_min = std::min(rep.a_index->is_infinite ? kInf : rep.a_index->value,
                                         rep.b_index->is_infinite ? kInf : rep.b_index->value);
            if (p_min + 1 < nu_min) want = PpiIndex::finite(p_min);
        }
        rep.index_min_rule = *rep.kron_index == want ? LawStatus::HOLDS : LawStatus::FAILS;
    }

    const ComplexMatrix aa = kron(a, a);
    const bool aa_pi = is_partial_isometry(aa, tol);
    rep.index_of_a = ppi_index(a, tol);
    rep.index_of_aa = ppi_index(aa, tol);
    rep.square_law = rep.a_pi == aa_pi && rep.index_of_a == rep.index_of_aa
                         ? LawStatus::HOLDS
                         : LawStatus::FAILS;
    return rep;
}

Theorem33Report theorem33_check(const ComplexMatrix& a, const Tolerance& tol) {
    const SnReport rep = is_sn(a, tol);
    if (!rep.is_sn)
        throw NotSn("theorem33_check needs a defect-one contraction with spectrum inside the disc");

    Theorem33Report out;
    out.disc_a = is_disc_at_origin(a, 720, tol);
    out.disc_aa = is_disc_at_origin(kron(a, a), 720, tol);
    const PpiIndex p = ppi_index(a, tol);
    if (p.is_infinite) out.similar_jn = single_full_block(halmos_wallen(a, tol), rep.n);

    const bool decided = out.disc_a.verdict != DiscVerdict::INCONCLUSIVE &&
                         out.disc_aa.verdict != DiscVerdict::INCONCLUSIVE;
    const bool va = out.disc_a.verdict == DiscVerdict::DISC;
    const bool vb = out.disc_aa.verdict == DiscVerdict::DISC;
    out.agree = decided && va == vb && vb == out.similar_jn;
    return out;
}

}  // namespace ppi
