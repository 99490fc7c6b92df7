#include "ppi/rand.hpp"

#include <cmath>

#include "ppi/errors.hpp"
#include "ppi/linalg.hpp"

namespace ppi {

cplx complex_gaussian(Rng& rng) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {re, im};
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = complex_gaussian(rng);
    return m;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    if (n == 0) return {};
    ComplexMatrix q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double nrm = 0;
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (std::size_t i = 0; i < n; ++i) q(i, j) = complex_gaussian(rng);
            // Two-pass MGS against the accepted columns.
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t k = 0; k < j; ++k) {
                    cplx dot{};
                    for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
                    for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
                }
            nrm = 0;
            for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
            nrm = std::sqrt(nrm);
            if (nrm > 1e-3) break;
        }
        if (nrm <= 1e-3) throw ToleranceBreach("random_unitary: degenerate Gaussian draw");
        for (std::size_t i = 0; i < n; ++i) q(i, j) = q(i, j) / nrm;
    }
    return q;
}

ComplexMatrix random_contraction(std::size_t n, Rng& rng, double norm_bound) {
    if (n == 0) return {};
    ComplexMatrix g = random_gaussian(n, n, rng);
    const double nrm = operator_norm(g);
    std::uniform_real_distribution<double> slack(0.05, 0.95);
    const double scale = nrm > 0 ? norm_bound * slack(rng) / nrm : 0.0;
    return cplx(scale, 0.0) * g;
}

}  // namespace ppi
