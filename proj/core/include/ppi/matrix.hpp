#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ppi {

using cplx = std::complex<double>;

// Shared tolerance knobs.
//   abs      : absolute slack for "is this 0 / is this 1" style decisions
//   rank_rel : relative cutoff (against sigma_max) for numerical rank;
//              rank decisions use max(rank_rel * sigma_max, abs).
struct Tolerance {
    double abs = 1e-10;
    double rank_rel = 1e-9;
};

// Dense complex matrix, row-major storage.  Plain value type: copies are
// deep, all operations below return fresh matrices, and nothing keeps
// internal mutable state, so const instances can be shared across threads.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    // Nilpotent single block: ones on the superdiagonal, zero elsewhere.
    static ComplexMatrix jordan_block(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<cplx>& d);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    bool operator==(const ComplexMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const cplx& s, const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, const cplx& s);

// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

// (A + A*)/2; requires a square input.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

// A^k with A square and k >= 0 (k = 0 gives the identity).
ComplexMatrix matrix_power(const ComplexMatrix& a, std::size_t k);

// Kronecker product, row-major block layout: entry blocks a(i,j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks);

cplx trace(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
// ||A - A*||_F, the hermiticity defect.
double hermiticity_defect(const ComplexMatrix& a);
bool is_finite(const ComplexMatrix& a);

// Copy of the nr x nc submatrix starting at (r0, c0).
ComplexMatrix block(const ComplexMatrix& a, std::size_t r0, std::size_t c0,
                    std::size_t nr, std::size_t nc);
// Writes b into a starting at (r0, c0); b must fit.
void set_block(ComplexMatrix& a, std::size_t r0, std::size_t c0, const ComplexMatrix& b);

// Columns c0..c0+nc-1 as an rows x nc matrix.
ComplexMatrix columns(const ComplexMatrix& a, std::size_t c0, std::size_t nc);
// Horizontal concatenation [a | b]; row counts must agree.
ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace ppi
