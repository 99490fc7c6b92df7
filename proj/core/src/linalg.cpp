#include "ppi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

#include "ppi/errors.hpp"
#include "ppi/rand.hpp"

namespace ppi {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Off-diagonal Frobenius mass of a flat Hermitian array.
double off_norm(const std::vector<cplx>& a, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a[i * n + j]);
    return std::sqrt(s);
}

// Cyclic complex Jacobi on the symmetrized copy of h.  When want_vectors is
// set, the accumulated rotations land in *vectors (columns = eigenvectors).
// Returns the eigenvalues ascending.
std::vector<double> jacobi(const ComplexMatrix& h, const Tolerance& tol,
                           bool want_vectors, ComplexMatrix* vectors) {
    if (!h.is_square()) throw BadParameters("hermitian_eig: square input required");
    const std::size_t n = h.rows();
    const double hnorm = frobenius_norm(h);
    if (hermiticity_defect(h) > tol.abs * std::max(1.0, hnorm))
        throw NotHermitian("hermitian_eig: input is not Hermitian at tolerance");

    std::vector<cplx> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = 0.5 * (h(i, j) + std::conj(h(j, i)));

    std::vector<cplx> v;
    if (want_vectors) {
        v.assign(n * n, cplx{});
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }

    const double target = 1e-13 * hnorm;
    // If every off-diagonal entry is below this, the total off-diagonal mass
    // is already at the target, so such pivots can be skipped outright.
    const double skip =
        n > 1 ? target / std::sqrt(static_cast<double>(n * (n - 1))) : 0.0;

    bool converged = (n < 2) || (off_norm(a, n) <= target);
    for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx hpq = a[p * n + q];
                const double apq = std::abs(hpq);
                if (apq <= skip) continue;

                const double app = a[p * n + p].real();
                const double aqq = a[q * n + q].real();
                const cplx phase = hpq / apq;  // e^{i phi}
                const double tau = (aqq - app) / (2.0 * apq);
                const double t =
                    (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on coords (p, q).
                const cplx sp = s * std::conj(phase);        // s e^{-i phi}
                const cplx cp = c * std::conj(phase);        // c e^{-i phi}

                // Columns: M <- M U.
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx x = a[i * n + p];
                    const cplx y = a[i * n + q];
                    a[i * n + p] = c * x - sp * y;
                    a[i * n + q] = s * x + cp * y;
                }
                // Rows: M <- U* M.
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx x = a[p * n + i];
                    const cplx y = a[q * n + i];
                    a[p * n + i] = c * x - std::conj(sp) * y;
                    a[q * n + i] = s * x + std::conj(cp) * y;
                }
                // The pivot block is known in closed form; assigning it
                // directly keeps the diagonal exactly real and the pivot
                // exactly zero.
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                if (want_vectors) {
                    for (std::size_t i = 0; i < n; ++i) {
                        const cplx x = v[i * n + p];
                        const cplx y = v[i * n + q];
                        v[i * n + p] = c * x - sp * y;
                        v[i * n + q] = s * x + cp * y;
                    }
                }
            }
        }
        converged = off_norm(a, n) <= target;
    }
    if (!converged)
        throw NoConvergence("hermitian_eig: Jacobi sweeps exhausted before convergence");

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a[i * n + i].real();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });

    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = values[order[i]];

    if (want_vectors) {
        ComplexMatrix vm(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) vm(i, j) = v[i * n + order[j]];
        *vectors = std::move(vm);
    }
    return sorted;
}

// Two-pass modified Gram-Schmidt of column j of q against columns [0, j).
// Returns the remaining norm (before normalization).
double mgs_column(ComplexMatrix& q, std::size_t j) {
    const std::size_t n = q.rows();
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx dot{};
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
    }
    double nrm = 0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
    return std::sqrt(nrm);
}

}  // namespace

EigResult hermitian_eig(const ComplexMatrix& h, const Tolerance& tol) {
    EigResult r;
    r.values = jacobi(h, tol, true, &r.vectors);
    return r;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, const Tolerance& tol) {
    return jacobi(h, tol, false, nullptr);
}

double lambda_max_hermitian(const ComplexMatrix& h, const Tolerance& tol) {
    const std::vector<double> vals = jacobi(h, tol, false, nullptr);
    if (vals.empty()) throw BadParameters("lambda_max_hermitian: empty matrix");
    return vals.back();
}

SvdResult svd(const ComplexMatrix& a, const Tolerance& tol) {
    const std::size_t n = a.rows(), m = a.cols();
    SvdResult r;
    r.sigma.assign(m, 0.0);

    if (m == 0) {
        r.u = ComplexMatrix::identity(n);
        r.v = ComplexMatrix(0, 0);
        return r;
    }

    const ComplexMatrix gram = adjoint(a) * a;
    EigResult eig = hermitian_eig(gram, tol);

    const double lam_max = std::max(0.0, eig.values.empty() ? 0.0 : eig.values.back());
    // Forming A*A commits rounding of order dim * eps * sigma_max^2, so
    // eigenvalues below that floor carry no information; clamping them keeps
    // exact kernels exact.
    const double clamp = 100.0 * static_cast<double>(std::max(n, m)) * kEps * lam_max;

    r.v = ComplexMatrix(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t src = m - 1 - j;  // descending order
        const double lam = eig.values[src];
        r.sigma[j] = lam > clamp ? std::sqrt(lam) : 0.0;
        for (std::size_t i = 0; i < m; ++i) r.v(i, j) = eig.vectors(i, src);
    }

    std::size_t positive = 0;
    while (positive < m && positive < n && r.sigma[positive] > 0.0) ++positive;
    // Singular values beyond row count are necessarily zero; drop any that
    // survived clamping only through rounding.
    for (std::size_t j = n; j < m; ++j) r.sigma[j] = 0.0;

    ComplexMatrix u_cols(n, positive);
    for (std::size_t j = 0; j < positive; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc{};
            for (std::size_t t = 0; t < m; ++t) acc += a(i, t) * r.v(t, j);
            u_cols(i, j) = acc / r.sigma[j];
        }
        mgs_column(u_cols, j);
        double nrm = 0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(u_cols(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 0.5)
            throw ToleranceBreach("svd: left singular vector collapsed during re-orthonormalization");
        for (std::size_t i = 0; i < n; ++i) u_cols(i, j) = u_cols(i, j) / nrm;
    }

    r.u = positive == 0 ? ComplexMatrix::identity(n) : orthonormal_completion(u_cols);
    return r;
}

std::vector<double> singular_values(const ComplexMatrix& a, const Tolerance& tol) {
    const std::size_t n = a.rows(), m = a.cols();
    if (m == 0) return {};
    std::vector<double> lam = hermitian_eigenvalues(adjoint(a) * a, tol);
    const double lam_max = std::max(0.0, lam.back());
    const double clamp = 100.0 * static_cast<double>(std::max(n, m)) * kEps * lam_max;
    std::vector<double> sig(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double v = lam[m - 1 - j];
        sig[j] = (v > clamp && j < n) ? std::sqrt(v) : 0.0;
    }
    return sig;
}

double operator_norm(const ComplexMatrix& a, const Tolerance& tol) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const std::vector<double> sig = singular_values(a, tol);
    return sig.empty() ? 0.0 : sig.front();
}

std::size_t rank_tol(const ComplexMatrix& a, const Tolerance& tol) {
    const std::vector<double> sig = singular_values(a, tol);
    if (sig.empty()) return 0;
    const double cutoff = std::max(tol.rank_rel * sig.front(), tol.abs);
    std::size_t r = 0;
    while (r < sig.size() && sig[r] > cutoff) ++r;
    return r;
}

ComplexMatrix null_space(const ComplexMatrix& a, const Tolerance& tol) {
    const std::size_t m = a.cols();
    if (m == 0) return ComplexMatrix(0, 0);
    SvdResult s = svd(a, tol);
    const double cutoff = std::max(tol.rank_rel * (s.sigma.empty() ? 0.0 : s.sigma.front()),
                                   tol.abs);
    std::size_t r = 0;
    while (r < m && s.sigma[r] > cutoff) ++r;
    return columns(s.v, r, m - r);
}

ComplexMatrix orthonormal_completion(const ComplexMatrix& w, std::uint64_t seed) {
    const std::size_t n = w.rows(), m = w.cols();
    if (m > n) throw BadParameters("orthonormal_completion: more columns than rows");

    if (m > 0) {
        const ComplexMatrix g = adjoint(w) * w;
        if (frobenius_norm(g - ComplexMatrix::identity(m)) > 1e-8)
            throw NotIsometric("orthonormal_completion: columns are not orthonormal");
    }

    ComplexMatrix q(n, n);
    set_block(q, 0, 0, w);

    Rng rng(seed);
    for (std::size_t j = m; j < n; ++j) {
        double nrm = 0;
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (std::size_t i = 0; i < n; ++i) q(i, j) = complex_gaussian(rng);
            nrm = mgs_column(q, j);
            if (nrm > 1e-3) break;
        }
        if (nrm <= 1e-3)
            throw ToleranceBreach("orthonormal_completion: could not extend basis");
        for (std::size_t i = 0; i < n; ++i) q(i, j) = q(i, j) / nrm;
    }
    return q;
}

std::vector<cplx> char_poly(const ComplexMatrix& a) {
    if (!a.is_square()) throw BadParameters("char_poly: square input required");
    const std::size_t n = a.rows();
    if (n > 16)
        throw DimensionTooLarge("char_poly: guarded to n <= 16");

    std::vector<cplx> c(n + 1);
    c[n] = 1.0;
    ComplexMatrix m = ComplexMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        const cplx ck = -trace(m) / static_cast<double>(k);
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += ck;
    }
    return c;
}

cplx determinant(const ComplexMatrix& a) {
    if (!a.is_square()) throw BadParameters("determinant: square input required");
    const std::size_t n = a.rows();
    if (n == 0) return 1.0;

    ComplexMatrix lu = a;
    cplx det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            det = -det;
        }
        det *= lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) / lu(k, k);
            if (f == cplx{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return det;
}

cplx poly_eval(const std::vector<cplx>& coeffs, cplx z) {
    cplx acc{};
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * z + coeffs[j];
    return acc;
}

namespace {

bool exactly_triangular_diag(const ComplexMatrix& a, std::vector<cplx>* diag) {
    const std::size_t n = a.rows();
    bool upper = true, lower = true;
    for (std::size_t i = 0; i < n && (upper || lower); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i > j && a(i, j) != cplx{}) upper = false;
            if (i < j && a(i, j) != cplx{}) lower = false;
        }
    if (!upper && !lower) return false;
    diag->resize(n);
    for (std::size_t i = 0; i < n; ++i) (*diag)[i] = a(i, i);
    return true;
}

// Durand-Kerner iteration for a monic polynomial of degree n, with p
// supplied as a callable so the same loop serves both coefficient and
// determinant evaluation.
template <typename Eval>
std::vector<cplx> durand_kerner(std::size_t n, double radius, Eval&& p) {
    std::vector<cplx> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ang = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n) + 0.37;
        z[i] = radius * cplx(std::cos(ang), std::sin(ang));
    }
    const double tol_step = 1e-14 * std::max(1.0, radius);
    for (int iter = 0; iter < 600; ++iter) {
        double max_step = 0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            if (std::abs(den) < 1e-300) {
                z[i] += cplx(1e-12 * radius, 1e-12 * radius);
                continue;
            }
            const cplx step = p(z[i]) / den;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step <= tol_step) break;
    }
    return z;
}

}  // namespace

std::vector<cplx> eigenvalues(const ComplexMatrix& a, const Tolerance&) {
    if (!a.is_square()) throw BadParameters("eigenvalues: square input required");
    const std::size_t n = a.rows();
    if (n == 0) return {};

    std::vector<cplx> diag;
    if (exactly_triangular_diag(a, &diag)) return diag;

    if (n <= 16) {
        const std::vector<cplx> c = char_poly(a);
        double radius = 0;
        for (std::size_t j = 0; j < n; ++j) radius = std::max(radius, std::abs(c[j]));
        radius = 1.0 + radius;  // Cauchy bound for a monic polynomial
        return durand_kerner(n, radius, [&](cplx z) { return poly_eval(c, z); });
    }

    double radius = 1.0 + frobenius_norm(a);
    const ComplexMatrix id = ComplexMatrix::identity(n);
    return durand_kerner(n, radius, [&](cplx z) {
        ComplexMatrix shifted = z * id - a;
        return determinant(shifted);
    });
}

}  // namespace ppi
