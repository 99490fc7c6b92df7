#include "ppi/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ppi/errors.hpp"
#include "ppi/isometry.hpp"
#include "ppi/linalg.hpp"

namespace ppi {
namespace {

constexpr double kGridGap = 1e-8;
constexpr double kTrigTol = 1e-7;
constexpr double kRadiusFloor = 1e-12;
constexpr double kThetaTol = 1e-10;

ComplexMatrix rotated_hermitian_part(const ComplexMatrix& a, double theta) {
    return hermitian_part(cplx{std::cos(theta), std::sin(theta)} * a);
}

// Golden-section search for the maximum of the support radius on
// [lo, hi], assumed to bracket a single local maximum.
double refine_support_max(const ComplexMatrix& a, double lo, double hi, const Tolerance& tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = support_radius(a, x1, tol);
    double f2 = support_radius(a, x2, tol);
    while (hi - lo > kThetaTol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = support_radius(a, x2, tol);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = support_radius(a, x1, tol);
        }
    }
    return std::max(f1, f2);
}

// Support radii over an even angular grid, without eigenvectors.
struct GridScan {
    double r_max = 0;
    double r_min = 0;
    double theta_max = 0;
    double theta_min = 0;
};

// A positive early_gap stops the sweep as soon as the spread between the
// largest and smallest radius seen so far exceeds it: the pair already
// witnesses a non-constant support function.
GridScan scan_support(const ComplexMatrix& a, std::size_t n_samples, const Tolerance& tol,
                      double early_gap = 0.0) {
    GridScan scan;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(n_samples);
        const double r = support_radius(a, theta, tol);
        if (s == 0 || r > scan.r_max) {
            scan.r_max = r;
            scan.theta_max = theta;
        }
        if (s == 0 || r < scan.r_min) {
            scan.r_min = r;
            scan.theta_min = theta;
        }
        if (early_gap > 0.0 && scan.r_max - scan.r_min > early_gap * std::max(1.0, scan.r_max))
            break;
    }
    return scan;
}

CircularityCertificate not_disc_by_grid(const GridScan& scan) {
    CircularityCertificate cert;
    cert.verdict = DiscVerdict::NOT_DISC;
    cert.method = DiscMethod::GRID;
    GridWitness w;
    w.theta_max = scan.theta_max;
    w.r_at_max = scan.r_max;
    w.theta_min = scan.theta_min;
    w.r_at_min = scan.r_min;
    cert.grid = w;
    cert.note = "support radius varies across directions";
    return cert;
}

struct TheoremOutcome {
    bool decided = false;
    bool disc = false;
    double radius = 0;
    std::optional<JordanSpec> jordan;
    std::string note;
};

// Structural route, available for contractions with index >= ascent - 1.
// A finite index or a surviving unitary summand excludes the disc; an
// all-nilpotent decomposition forces the disc of radius cos(pi/(ascent+1)).
TheoremOutcome theorem_route(const ComplexMatrix& a, const Tolerance& tol) {
    TheoremOutcome out;
    if (operator_norm(a, tol) > 1.0 + tol.abs) return out;
    PpiIndex p;
    try {
        p = ppi_index(a, tol);
    } catch (const AmbiguousAtTolerance&) {
        return out;
    }
    const std::size_t asc = ascent(a, tol);
    if (!p.is_infinite && p.value + 1 < asc) return out;

    if (!p.is_infinite) {
        out.decided = true;
        out.disc = false;
        out.note = "index ascent-1 contraction, range is not a disc";
        return out;
    }
    JordanSpec spec;
    try {
        spec = halmos_wallen(a, tol);
    } catch (const ToleranceBreach&) {
        return out;
    }
    out.decided = true;
    if (spec.unitary_summand) {
        out.disc = false;
        out.note = "unitary summand puts extreme points on the unit circle";
    } else {
        out.disc = true;
        out.radius = std::cos(std::numbers::pi / static_cast<double>(asc + 1));
        out.jordan = std::move(spec);
        out.note = "pure nilpotent decomposition";
    }
    return out;
}

}  // namespace

const char* to_string(DiscVerdict v) {
    switch (v) {
        case DiscVerdict::DISC: return "DISC";
        case DiscVerdict::NOT_DISC: return "NOT_DISC";
        case DiscVerdict::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

const char* to_string(DiscMethod m) {
    switch (m) {
        case DiscMethod::GRID: return "GRID";
        case DiscMethod::TRIG_POLY: return "TRIG_POLY";
        case DiscMethod::THEOREM_2_6: return "THEOREM_2_6";
    }
    return "GRID";
}

double support_radius(const ComplexMatrix& a, double theta, const Tolerance& tol) {
    if (!a.is_square() || a.rows() == 0)
        throw BadParameters("support_radius needs a nonempty square matrix");
    return lambda_max_hermitian(rotated_hermitian_part(a, theta), tol);
}

SupportProfile boundary_points(const ComplexMatrix& a, std::size_t n_samples,
                               const Tolerance& tol) {
    if (!a.is_square() || a.rows() == 0)
        throw BadParameters("boundary_points needs a nonempty square matrix");
    if (n_samples < 3) throw BadParameters("boundary_points needs at least 3 samples");
    const std::size_t n = a.rows();
    SupportProfile profile;
    profile.samples.reserve(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(n_samples);
        EigResult eig = hermitian_eig(rotated_hermitian_part(a, theta), tol);
        ThetaSample sample;
        sample.theta = theta;
        sample.r = eig.values.back();
        // Rayleigh quotient of the top eigenvector: a numerical-range point
        // on the supporting line for this direction.
        cplx z{};
        for (std::size_t i = 0; i < n; ++i) {
            cplx axj{};
            for (std::size_t j = 0; j < n; ++j) axj += a(i, j) * eig.vectors(j, n - 1);
            z += std::conj(eig.vectors(i, n - 1)) * axj;
        }
        sample.boundary = z;
        profile.samples.push_back(sample);
    }
    profile.r_max = profile.samples[0].r;
    profile.r_min = profile.samples[0].r;
    for (std::size_t s = 1; s < n_samples; ++s) {
        const double r = profile.samples[s].r;
        if (r > profile.r_max) {
            profile.r_max = r;
            profile.argmax = s;
        }
        if (r < profile.r_min) profile.r_min = r;
    }
    return profile;
}

double numerical_radius(const ComplexMatrix& a, std::size_t n_samples, const Tolerance& tol) {
    if (!a.is_square() || a.rows() == 0)
        throw BadParameters("numerical_radius needs a nonempty square matrix");
    if (n_samples < 3) throw BadParameters("numerical_radius needs at least 3 samples");
    const GridScan scan = scan_support(a, n_samples, tol);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n_samples);
    return std::max(scan.r_max,
                    refine_support_max(a, scan.theta_max - step, scan.theta_max + step, tol));
}

std::vector<cplx> trig_poly_coeffs(const ComplexMatrix& a, double r, const Tolerance&) {
    if (!a.is_square() || a.rows() == 0)
        throw BadParameters("trig_poly_coeffs needs a nonempty square matrix");
    if (!(r > 0)) throw BadParameters("trig_poly_coeffs needs a positive radius");
    const std::size_t n = a.rows();
    const std::size_t points = 2 * n + 1;
    const ComplexMatrix eye = ComplexMatrix::identity(n);

    std::vector<cplx> q(points);
    for (std::size_t s = 0; s < points; ++s) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(points);
        q[s] = determinant(r * eye - rotated_hermitian_part(a, theta));
    }

    // Entry n + j holds a_j for j = -n..n.
    std::vector<cplx> coeffs(points);
    for (std::size_t idx = 0; idx < points; ++idx) {
        const double j = static_cast<double>(idx) - static_cast<double>(n);
        cplx c{};
        for (std::size_t s = 0; s < points; ++s) {
            const double phase =
                -2.0 * std::numbers::pi * j * static_cast<double>(s) / static_cast<double>(points);
            c += q[s] * cplx{std::cos(phase), std::sin(phase)};
        }
        coeffs[idx] = c / static_cast<double>(points);
    }
    return coeffs;
}

CircularityCertificate is_disc_at_origin(const ComplexMatrix& a, std::size_t n_samples,
                                         const Tolerance& tol) {
    if (!a.is_square() || a.rows() == 0)
        throw BadParameters("is_disc_at_origin needs a nonempty square matrix");
    if (n_samples < 3) throw BadParameters("is_disc_at_origin needs at least 3 samples");
    const GridScan scan = scan_support(a, n_samples, tol, kGridGap);
    if (scan.r_max - scan.r_min > kGridGap * std::max(1.0, scan.r_max))
        return not_disc_by_grid(scan);

    const double step = 2.0 * std::numbers::pi / static_cast<double>(n_samples);
    const double r = std::max(
        scan.r_max, refine_support_max(a, scan.theta_max - step, scan.theta_max + step, tol));

    CircularityCertificate cert;
    if (r < kRadiusFloor) {
        cert.verdict = DiscVerdict::DISC;
        cert.method = DiscMethod::TRIG_POLY;
        cert.radius = r;
        cert.note = "range degenerates to the origin";
    } else {
        const std::vector<cplx> coeffs = trig_poly_coeffs(a, r, tol);
        // |a_{-j}| = |a_j|, so the nonnegative half carries all magnitudes.
        const std::size_t n = a.rows();
        std::size_t worst = 0;
        for (std::size_t j = 1; j <= n; ++j)
            if (std::abs(coeffs[n + j]) > std::abs(coeffs[n + worst])) worst = j;
        const double mag = std::abs(coeffs[n + worst]);
        cert.trig_index = worst;
        cert.trig_magnitude = mag;
        cert.method = DiscMethod::TRIG_POLY;
        const double bound = kTrigTol * std::max(1.0, std::pow(r, static_cast<double>(a.rows())));
        if (mag <= bound) {
            cert.verdict = DiscVerdict::DISC;
            cert.radius = r;
            cert.note = "vanishing characteristic trig polynomial at the support radius";
        } else {
            cert.verdict = DiscVerdict::NOT_DISC;
            cert.note = "support radius is not an eigenvalue in every direction";
        }
    }

    const TheoremOutcome thm = theorem_route(a, tol);
    if (!thm.decided) return cert;

    if (!thm.disc) {
        if (cert.verdict == DiscVerdict::NOT_DISC) {
            cert.method = DiscMethod::THEOREM_2_6;
            cert.note = thm.note;
        } else {
            cert.verdict = DiscVerdict::INCONCLUSIVE;
            cert.method = DiscMethod::THEOREM_2_6;
            cert.radius.reset();
            cert.note = "structural route excludes a disc the numerical stages accepted";
        }
        return cert;
    }

    if (cert.verdict == DiscVerdict::DISC && std::abs(r - thm.radius) <= kTrigTol) {
        cert.method = DiscMethod::THEOREM_2_6;
        cert.radius = thm.radius;
        cert.jordan = thm.jordan;
        cert.note = thm.note;
    } else {
        cert.verdict = DiscVerdict::INCONCLUSIVE;
        cert.method = DiscMethod::THEOREM_2_6;
        cert.radius.reset();
        cert.jordan = thm.jordan;
        cert.note = "structural disc disagrees with the numerical stages";
    }
    return cert;
}

}  // namespace ppi
