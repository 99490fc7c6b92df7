#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ppi/canon.hpp"
#include "ppi/matrix.hpp"

namespace ppi {

// One direction of the support sweep: r = max Re(e^{i theta} z) over the
// numerical range, attained at the boundary point z.
struct ThetaSample {
    double theta = 0;
    double r = 0;
    cplx boundary{};
};

struct SupportProfile {
    std::vector<ThetaSample> samples;
    double r_max = 0;
    double r_min = 0;
    std::size_t argmax = 0;  // index of the sample attaining r_max
};

// Support radius of the numerical range in direction theta: the largest
// eigenvalue of the Hermitian part of e^{i theta} A.
double support_radius(const ComplexMatrix& a, double theta, const Tolerance& tol = {});

// Uniform sweep over [0, 2pi) with boundary points (n_samples >= 3).
SupportProfile boundary_points(const ComplexMatrix& a, std::size_t n_samples = 720,
                               const Tolerance& tol = {});

// max |z| over the numerical range: grid sweep plus golden-section
// refinement of the best direction down to 1e-10 in theta.
double numerical_radius(const ComplexMatrix& a, std::size_t n_samples = 720,
                        const Tolerance& tol = {});

// Fourier coefficients of q(theta) = det(r I - Re(e^{i theta} A)), a
// trigonometric polynomial of degree at most n, recovered exactly by a DFT
// over 2n+1 equispaced angles.  The returned vector has length 2n+1 and
// holds a_{-n}..a_n in order, so entry n+j is the coefficient of
// e^{ij theta}; q real gives a_{-j} = conj(a_j).  When the numerical range
// is the closed disc of radius r centered at the origin, r is the top
// eigenvalue of every Hermitian part, q vanishes identically, and all
// coefficients are zero.  Requires r > 0.
std::vector<cplx> trig_poly_coeffs(const ComplexMatrix& a, double r,
                                   const Tolerance& tol = {});

enum class DiscVerdict { DISC, NOT_DISC, INCONCLUSIVE };

const char* to_string(DiscVerdict v);

// How the verdict was reached: support-grid variation, the vanishing
// trigonometric polynomial certificate, or the structural route through the
// unitary-plus-Jordan decomposition.
enum class DiscMethod { GRID, TRIG_POLY, THEOREM_2_6 };

const char* to_string(DiscMethod m);

struct GridWitness {
    double theta_max = 0;
    double r_at_max = 0;
    double theta_min = 0;
    double r_at_min = 0;
};

struct CircularityCertificate {
    DiscVerdict verdict = DiscVerdict::INCONCLUSIVE;
    DiscMethod method = DiscMethod::GRID;
    std::optional<double> radius;  // set only for DISC verdicts

    std::optional<GridWitness> grid;
    std::optional<std::size_t> trig_index;      // worst Fourier index
    std::optional<double> trig_magnitude;       // and its magnitude
    std::optional<JordanSpec> jordan;           // structural witness
    std::string note;
};

// Decides whether the numerical range is a closed circular disc centered at
// the origin.  Three stages, strongest applicable evidence wins:
//
//   1. support grid: variation beyond 1e-8 * max(1, r_max) is an immediate
//      NOT_DISC with the extremal directions as witness;
//   2. trig-poly certificate at the refined radius (skipped for radii under
//      1e-12, where the range is a point);
//   3. for contractions whose isometry index is at least ascent-1, the
//      structural decomposition settles the question exactly: a finite
//      index or a unitary summand rules the disc out, a pure nilpotent
//      decomposition pins radius cos(pi/(ascent+1)).
//
// Stage 3 must agree with the numerical stages; a clash downgrades the
// verdict to INCONCLUSIVE with both witnesses attached.
CircularityCertificate is_disc_at_origin(const ComplexMatrix& a,
                                         std::size_t n_samples = 720,
                                         const Tolerance& tol = {});

}  // namespace ppi
