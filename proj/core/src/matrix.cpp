#include "ppi/matrix.hpp"

#include <cmath>
#include <cstddef>

#include "ppi/errors.hpp"

namespace ppi {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw BadParameters(msg);
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::jordan_block(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t nr = rows.size();
    const std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(nr, nc);
    std::size_t i = 0;
    for (const auto& row : rows) {
        require(row.size() == nc, "from_rows: ragged row lengths");
        std::size_t j = 0;
        for (const cplx& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "operator+: shape mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) c.data()[i] = a.data()[i] + b.data()[i];
    return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "operator-: shape mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.cols() == b.rows(), "operator*: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    for (std::size_t i = 0; i < n; ++i) {
        cplx* ci = c.data() + i * m;
        const cplx* ai = a.data() + i * k;
        for (std::size_t t = 0; t < k; ++t) {
            const cplx av = ai[t];
            if (av == cplx{}) continue;
            const cplx* bt = b.data() + t * m;
            for (std::size_t j = 0; j < m; ++j) ci[j] += av * bt[j];
        }
    }
    return c;
}

ComplexMatrix operator*(const cplx& s, const ComplexMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) c.data()[i] = s * a.data()[i];
    return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const cplx& s) { return s * a; }

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    require(a.is_square(), "hermitian_part: square input required");
    ComplexMatrix c(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return c;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, std::size_t k) {
    require(a.is_square(), "matrix_power: square input required");
    ComplexMatrix result = ComplexMatrix::identity(a.rows());
    for (std::size_t i = 0; i < k; ++i) result = result * a;
    return result;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx av = a(i, j);
            if (av == cplx{}) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    c(i * b.rows() + p, j * b.cols() + q) = av * b(p, q);
        }
    return c;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
    set_block(c, 0, 0, a);
    set_block(c, a.rows(), a.cols(), b);
    return c;
}

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks) {
    std::size_t nr = 0, nc = 0;
    for (const auto& blk : blocks) {
        nr += blk.rows();
        nc += blk.cols();
    }
    ComplexMatrix c(nr, nc);
    std::size_t r = 0, q = 0;
    for (const auto& blk : blocks) {
        set_block(c, r, q, blk);
        r += blk.rows();
        q += blk.cols();
    }
    return c;
}

cplx trace(const ComplexMatrix& a) {
    require(a.is_square(), "trace: square input required");
    cplx t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0;
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) s += std::norm(a.data()[i]);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& a) {
    double m = 0;
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a.data()[i]));
    return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
    require(a.is_square(), "hermiticity_defect: square input required");
    double s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += std::norm(a(i, j) - std::conj(a(j, i)));
    return std::sqrt(s);
}

bool is_finite(const ComplexMatrix& a) {
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx v = a.data()[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

ComplexMatrix block(const ComplexMatrix& a, std::size_t r0, std::size_t c0,
                    std::size_t nr, std::size_t nc) {
    require(r0 + nr <= a.rows() && c0 + nc <= a.cols(), "block: out of range");
    ComplexMatrix c(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) c(i, j) = a(r0 + i, c0 + j);
    return c;
}

void set_block(ComplexMatrix& a, std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
    require(r0 + b.rows() <= a.rows() && c0 + b.cols() <= a.cols(), "set_block: out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) a(r0 + i, c0 + j) = b(i, j);
}

ComplexMatrix columns(const ComplexMatrix& a, std::size_t c0, std::size_t nc) {
    return block(a, 0, c0, a.rows(), nc);
}

ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    require(a.rows() == b.rows(), "hcat: row counts differ");
    ComplexMatrix c(a.rows(), a.cols() + b.cols());
    set_block(c, 0, 0, a);
    set_block(c, 0, a.cols(), b);
    return c;
}

}  // namespace ppi
