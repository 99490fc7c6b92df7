#include "ppi/repro.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "ppi/canon.hpp"
#include "ppi/errors.hpp"
#include "ppi/io.hpp"
#include "ppi/isometry.hpp"
#include "ppi/linalg.hpp"
#include "ppi/matrix.hpp"
#include "ppi/numrange.hpp"

namespace ppi {
namespace {

void add_check(ReproResult& r, std::string name, std::string expected, std::string computed,
               bool pass) {
    r.checks.push_back({std::move(name), std::move(expected), std::move(computed), pass});
}

std::string radius_string(const CircularityCertificate& cert) {
    return cert.radius ? format_double(*cert.radius) : "none";
}

// Quotient of a degree-9 polynomial (ascending coefficients) by z^4 - 3z^2.
std::vector<cplx> divide_by_quartic(const std::vector<cplx>& asc) {
    std::vector<cplx> rem(10);
    for (std::size_t d = 0; d < 10; ++d) rem[d] = asc[9 - d];
    const double div[5] = {1.0, 0.0, -3.0, 0.0, 0.0};
    std::vector<cplx> q(6);
    for (std::size_t i = 0; i < 6; ++i) {
        const cplx lead = rem[i];
        for (std::size_t t = 0; t < 5; ++t) rem[i + t] -= lead * div[t];
        q[5 - i] = lead;
    }
    return q;
}

ReproResult example_27() {
    ReproResult r;
    r.example_id = "2.7";
    const double lambda = 0.4;
    const double mu = std::sqrt(1.0 - lambda * lambda);
    const ComplexMatrix tail = ComplexMatrix::from_rows({{0.0, mu}, {0.0, lambda}});
    const ComplexMatrix a = direct_sum(ComplexMatrix::jordan_block(3), tail);

    add_check(r, "lambda_within_stated_range", "0 < lambda <= sqrt(2)-1", format_double(lambda),
              lambda > 0.0 && lambda <= std::numbers::sqrt2 - 1.0);

    const std::size_t asc = ascent(a);
    add_check(r, "ascent_is_3", "3", std::to_string(asc), asc == 3);

    const PpiIndex p = ppi_index(a);
    add_check(r, "index_is_1", "1", to_string(p), p == PpiIndex::finite(1));

    const CircularityCertificate cert = is_disc_at_origin(a);
    add_check(r, "disc_verdict_is_disc", "DISC", to_string(cert.verdict),
              cert.verdict == DiscVerdict::DISC);
    const double want = std::numbers::sqrt2 / 2.0;
    add_check(r, "radius_sqrt2_over_2", format_double(want), radius_string(cert),
              cert.radius && std::abs(*cert.radius - want) <= 1e-8);

    double top = 0.0;
    for (const cplx& lam : eigenvalues(a)) top = std::max(top, std::abs(lam));
    add_check(r, "has_nonzero_eigenvalue", "true", top > 1e-7 ? "true" : "false", top > 1e-7);
    return r;
}

ReproResult example_35() {
    ReproResult r;
    r.example_id = "3.5";
    const double lambda = 0.6;
    const ComplexMatrix a =
        direct_sum(ComplexMatrix::from_rows({{lambda}}), ComplexMatrix::jordan_block(2));

    add_check(r, "lambda_within_stated_range", "1/2 < lambda <= 1/sqrt(2)",
              format_double(lambda), lambda > 0.5 && lambda <= 1.0 / std::numbers::sqrt2);

    const CircularityCertificate kron_cert = is_disc_at_origin(kron(a, a));
    add_check(r, "kron_disc_verdict_is_disc", "DISC", to_string(kron_cert.verdict),
              kron_cert.verdict == DiscVerdict::DISC);
    add_check(r, "kron_radius_one_half", format_double(0.5), radius_string(kron_cert),
              kron_cert.radius && std::abs(*kron_cert.radius - 0.5) <= 1e-8);

    const CircularityCertificate base_cert = is_disc_at_origin(a);
    add_check(r, "base_verdict_not_disc", "NOT_DISC", to_string(base_cert.verdict),
              base_cert.verdict == DiscVerdict::NOT_DISC);
    return r;
}

ReproResult example_36() {
    ReproResult r;
    r.example_id = "3.6";
    const double s2 = std::numbers::sqrt2;
    const ComplexMatrix a = ComplexMatrix::from_rows(
        {{0.0, -s2, 1.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, s2 / 2.0}});

    double dev = 0.0;
    for (std::size_t s = 0; s < 720; ++s) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(s) / 720.0;
        dev = std::max(dev, std::abs(support_radius(a, theta) - 1.0));
    }
    add_check(r, "support_radius_one_max_deviation", "<= 1e-08", format_double(dev),
              dev <= 1e-8);

    ComplexMatrix doubled = kron(a, a);
    doubled = doubled + adjoint(doubled);
    const std::vector<cplx> coeffs = char_poly(doubled);
    const double expected[10] = {1.0, -1.0, -20.0, 20.0, 97.0, -99.0, -138.0, 144.0, 0.0, 0.0};
    for (std::size_t d = 0; d < 10; ++d) {
        const cplx got = coeffs[9 - d];
        const bool ok =
            std::abs(got.real() - expected[d]) <= 1e-6 && std::abs(got.imag()) <= 1e-6;
        add_check(r, "charpoly_z" + std::to_string(9 - d), format_double(expected[d]),
                  format_double(got.real()), ok);
    }

    const cplx at_two = poly_eval(divide_by_quartic(coeffs), cplx{2.0, 0.0});
    add_check(r, "quintic_factor_at_two", "-8", format_double(at_two.real()),
              std::abs(at_two.real() + 8.0) <= 1e-5 && std::abs(at_two.imag()) <= 1e-5 &&
                  at_two.real() < 0.0);

    const CircularityCertificate kron_cert = is_disc_at_origin(kron(a, a));
    add_check(r, "kron_verdict_not_disc", "NOT_DISC", to_string(kron_cert.verdict),
              kron_cert.verdict == DiscVerdict::NOT_DISC);
    return r;
}

std::string normalize_id(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s.rfind("example", 0) == 0) {
        s.erase(0, 7);
        if (!s.empty() && s[0] == '-') s.erase(0, 1);
    }
    if (s == "2.7" || s == "3.5" || s == "3.6") return s;
    throw UnknownExample("unknown example id: " + raw);
}

}  // namespace

ReproResult repro(const std::string& example_id) {
    const std::string id = normalize_id(example_id);
    ReproResult r;
    if (id == "2.7") {
        r = example_27();
    } else if (id == "3.5") {
        r = example_35();
    } else {
        r = example_36();
    }
    r.all_pass = true;
    for (const ReproCheck& c : r.checks) r.all_pass = r.all_pass && c.pass;
    return r;
}

std::string repro_to_json(const ReproResult& r) {
    std::string out = "{\"example_id\": \"" + json_escape(r.example_id) +
                      "\", \"all_pass\": " + (r.all_pass ? "true" : "false") + ", \"checks\": [";
    bool first = true;
    for (const ReproCheck& c : r.checks) {
        if (!first) out += ", ";
        first = false;
        out += "{\"name\": \"" + json_escape(c.name) + "\", \"expected\": \"" +
               json_escape(c.expected) + "\", \"computed\": \"" + json_escape(c.computed) +
               "\", \"pass\": " + (c.pass ? "true" : "false") + "}";
    }
    out += "]}";
    return out;
}

}  // namespace ppi
