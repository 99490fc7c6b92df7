#pragma once

#include <string>
#include <vector>

#include "ppi/matrix.hpp"
#include "ppi/numrange.hpp"

namespace ppi {

// 17-significant-digit decimal form; parses back to the identical double.
std::string format_double(double x);

std::string json_escape(const std::string& s);

// Canonical matrix serialization:
//   {"rows": n, "cols": m, "data": [[re, im], ...]}
// with data row-major.  The parser accepts exactly this shape and demands
// finite entries; parse(serialize(A)) reproduces A bit for bit.
std::string matrix_to_json_text(const ComplexMatrix& a);
ComplexMatrix matrix_from_json_text(const std::string& text);

// One matrix row per line, comma-separated complex tokens in re+imj form
// ("1.5", "-2j", "0.3-0.4j", "1e-3+2.5e+2j").
ComplexMatrix matrix_from_csv_text(const std::string& text);

// Eigenvalue list: a JSON array whose entries are plain reals or [re, im]
// pairs, either bare or wrapped as {"eigs": [...]}.
std::vector<cplx> eigenvalues_from_json_text(const std::string& text);

// File helpers.  load_matrix_file dispatches on the extension (.json or
// .csv); save_matrix_file always writes the canonical JSON form.  Failures
// to open, read, or recognize the format raise BadParameters.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
ComplexMatrix load_matrix_file(const std::string& path);
void save_matrix_file(const std::string& path, const ComplexMatrix& a);
std::vector<cplx> load_eigenvalues_file(const std::string& path);

// CSV rendering of a sampled boundary: header theta,r,re_z,im_z, one line
// per sample.
std::string wrange_csv(const SupportProfile& profile);

}  // namespace ppi
