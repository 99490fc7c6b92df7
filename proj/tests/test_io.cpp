#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "ppi/errors.hpp"
#include "ppi/io.hpp"
#include "ppi/matrix.hpp"
#include "ppi/numrange.hpp"
#include "ppi/rand.hpp"

using namespace ppi;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("decimal formatting survives a round trip") {
    for (double x : {1.0 / 3.0, 0.1, 1e308, -0.0, 3.141592653589793, 2.5e-300, -7.25}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
    CHECK(format_double(0.0) == "0");
}

TEST_CASE("matrix json round trip is bit exact") {
    Rng rng(71);
    const ComplexMatrix a = random_contraction(4, rng);
    const ComplexMatrix b = matrix_from_json_text(matrix_to_json_text(a));
    CHECK(a == b);

    ComplexMatrix tall(3, 2);
    tall(0, 0) = cplx(1.0 / 3.0, -0.1);
    tall(2, 1) = cplx(0.0, 1e-17);
    CHECK(matrix_from_json_text(matrix_to_json_text(tall)) == tall);
}

TEST_CASE("matrix json parser rejects malformed input") {
    CHECK_THROWS_AS(matrix_from_json_text("not json"), BadParameters);
    CHECK_THROWS_AS(matrix_from_json_text("{\"rows\": 2, \"data\": [[1,0],[0,1]]}"),
                    BadParameters);
    // count mismatch against rows*cols
    CHECK_THROWS_AS(
        matrix_from_json_text("{\"rows\": 2, \"cols\": 2, \"data\": [[1,0],[0,1]]}"),
        BadParameters);
    // entries must be [re, im] pairs
    CHECK_THROWS_AS(matrix_from_json_text("{\"rows\": 1, \"cols\": 1, \"data\": [1.5]}"),
                    BadParameters);
    CHECK_THROWS_AS(matrix_from_json_text("{\"rows\": 1, \"cols\": 1, \"data\": [[1,2,3]]}"),
                    BadParameters);
}

TEST_CASE("csv complex tokens") {
    const ComplexMatrix m = matrix_from_csv_text("1.5, -2j\n0.3-0.4j, 1e-3+2.5e+2j\n");
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, 0) == cplx(1.5, 0.0));
    CHECK(m(0, 1) == cplx(0.0, -2.0));
    CHECK(m(1, 0) == cplx(0.3, -0.4));
    CHECK(m(1, 1) == cplx(1e-3, 2.5e+2));

    CHECK_THROWS_AS(matrix_from_csv_text("1, 2\n3\n"), BadParameters);
    CHECK_THROWS_AS(matrix_from_csv_text("1, pear\n"), BadParameters);
    CHECK_THROWS_AS(matrix_from_csv_text(""), BadParameters);
}

TEST_CASE("file dispatch on extension") {
    const auto json_path = temp_path("ppi_io_case.json");
    const auto csv_path = temp_path("ppi_io_case.csv");
    const auto odd_path = temp_path("ppi_io_case.xml");

    Rng rng(72);
    const ComplexMatrix a = random_unitary(3, rng);
    save_matrix_file(json_path.string(), a);
    CHECK(load_matrix_file(json_path.string()) == a);

    write_text_file(csv_path.string(), "0.5, 0\n0, 0.25j\n");
    const ComplexMatrix c = load_matrix_file(csv_path.string());
    CHECK(c(1, 1) == cplx(0.0, 0.25));

    // uppercase extension dispatches the same way
    const auto upper_path = temp_path("ppi_io_case.JSON");
    save_matrix_file(upper_path.string(), a);
    CHECK(load_matrix_file(upper_path.string()) == a);

    write_text_file(odd_path.string(), "<m/>");
    CHECK_THROWS_AS(load_matrix_file(odd_path.string()), BadParameters);
    CHECK_THROWS_AS(read_text_file(temp_path("ppi_io_missing.json").string()), BadParameters);

    std::filesystem::remove(json_path);
    std::filesystem::remove(csv_path);
    std::filesystem::remove(upper_path);
    std::filesystem::remove(odd_path);
}

TEST_CASE("eigenvalue lists") {
    const auto bare = eigenvalues_from_json_text("[0.5, [0.1, -0.2], 0]");
    REQUIRE(bare.size() == 3);
    CHECK(bare[0] == cplx(0.5, 0.0));
    CHECK(bare[1] == cplx(0.1, -0.2));
    CHECK(bare[2] == cplx(0.0, 0.0));

    const auto wrapped = eigenvalues_from_json_text("{\"eigs\": [0.25]}");
    REQUIRE(wrapped.size() == 1);
    CHECK(wrapped[0] == cplx(0.25, 0.0));

    CHECK_THROWS_AS(eigenvalues_from_json_text("{\"values\": [1]}"), BadParameters);
    CHECK_THROWS_AS(eigenvalues_from_json_text("[\"x\"]"), BadParameters);

    const auto path = temp_path("ppi_io_eigs.json");
    write_text_file(path.string(), "[0, 0.5]");
    const auto from_file = load_eigenvalues_file(path.string());
    REQUIRE(from_file.size() == 2);
    CHECK(from_file[1] == cplx(0.5, 0.0));
    std::filesystem::remove(path);
}

TEST_CASE("boundary sweep csv") {
    const ComplexMatrix j3 = ComplexMatrix::jordan_block(3);
    const SupportProfile profile = boundary_points(j3, 8);
    const std::string csv = wrange_csv(profile);

    REQUIRE(csv.rfind("theta,r,re_z,im_z\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 1 + profile.samples.size());

    // the first data line parses back to the first sample
    const std::size_t start = csv.find('\n') + 1;
    const std::string line = csv.substr(start, csv.find('\n', start) - start);
    double theta = -1, r = -1, re = 0, im = 0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &theta, &r, &re, &im) == 4);
    CHECK(theta == profile.samples[0].theta);
    CHECK(r == profile.samples[0].r);
    CHECK(re == profile.samples[0].boundary.real());
    CHECK(im == profile.samples[0].boundary.imag());
}

}  // TEST_SUITE
