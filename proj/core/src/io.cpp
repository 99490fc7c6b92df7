#include "ppi/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ppi/errors.hpp"

namespace ppi {
namespace {

using nlohmann::json;

double parse_strict_double(const std::string& s, const char* what) {
    if (s.empty()) throw BadParameters(std::string("empty number in ") + what);
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + s.size())
        throw BadParameters(std::string("bad number '") + s + "' in " + what);
    return v;
}

std::string strip(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

cplx parse_complex_token(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw BadParameters("empty complex token");

    if (s.back() != 'j' && s.back() != 'J') return {parse_strict_double(s, "complex token"), 0.0};

    std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not an exponent sign and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    std::string re_str;
    std::string im_str;
    if (split == std::string::npos) {
        im_str = body;
    } else {
        re_str = body.substr(0, split);
        im_str = body.substr(split);
    }
    double im;
    if (im_str.empty() || im_str == "+") {
        im = 1.0;
    } else if (im_str == "-") {
        im = -1.0;
    } else {
        im = parse_strict_double(im_str, "complex token");
    }
    const double re = re_str.empty() ? 0.0 : parse_strict_double(re_str, "complex token");
    return {re, im};
}

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw BadParameters(std::string(what) + ": " + e.what());
    }
}

cplx entry_from_json(const json& v, const char* what) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw BadParameters(std::string(what) + ": entries must be numbers or [re, im] pairs");
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    return out;
}

std::string matrix_to_json_text(const ComplexMatrix& a) {
    std::string out = "{\"rows\": " + std::to_string(a.rows()) +
                      ", \"cols\": " + std::to_string(a.cols()) + ", \"data\": [";
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != 0 || j != 0) out += ", ";
            const cplx& z = a(i, j);
            out += "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
        }
    out += "]}";
    return out;
}

ComplexMatrix matrix_from_json_text(const std::string& text) {
    const json j = parse_json(text, "matrix JSON");
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw BadParameters("matrix JSON: need an object with rows, cols, data");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw BadParameters("matrix JSON: rows and cols must be nonnegative integers");
    const std::size_t rows = j["rows"].get<std::size_t>();
    const std::size_t cols = j["cols"].get<std::size_t>();
    const json& data = j["data"];
    if (!data.is_array() || data.size() != rows * cols)
        throw BadParameters("matrix JSON: data must be a row-major array of rows*cols pairs");
    ComplexMatrix a(rows, cols);
    for (std::size_t idx = 0; idx < data.size(); ++idx) {
        const json& v = data[idx];
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw BadParameters("matrix JSON: entries must be [re, im] pairs");
        a(idx / std::max<std::size_t>(cols, 1), idx % std::max<std::size_t>(cols, 1)) = {
            v[0].get<double>(), v[1].get<double>()};
    }
    if (!is_finite(a)) throw BadParameters("matrix JSON: entries must be finite");
    return a;
}

ComplexMatrix matrix_from_csv_text(const std::string& text) {
    std::vector<std::vector<cplx>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (strip(line).empty()) continue;
        std::vector<cplx> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(parse_complex_token(cell));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw BadParameters("matrix CSV: no rows");
    const std::size_t cols = rows[0].size();
    for (const auto& row : rows)
        if (row.size() != cols) throw BadParameters("matrix CSV: ragged rows");
    ComplexMatrix a(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = rows[i][j];
    if (!is_finite(a)) throw BadParameters("matrix CSV: entries must be finite");
    return a;
}

std::vector<cplx> eigenvalues_from_json_text(const std::string& text) {
    json j = parse_json(text, "eigenvalue JSON");
    if (j.is_object()) {
        if (!j.contains("eigs")) throw BadParameters("eigenvalue JSON: need an eigs array");
        j = j["eigs"];
    }
    if (!j.is_array()) throw BadParameters("eigenvalue JSON: need an array");
    std::vector<cplx> lams;
    lams.reserve(j.size());
    for (const json& v : j) {
        const cplx z = entry_from_json(v, "eigenvalue JSON");
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw BadParameters("eigenvalue JSON: entries must be finite");
        lams.push_back(z);
    }
    return lams;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadParameters("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw BadParameters("cannot read " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadParameters("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out) throw BadParameters("cannot write " + path);
}

ComplexMatrix load_matrix_file(const std::string& path) {
    const std::size_t dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == "json") return matrix_from_json_text(read_text_file(path));
    if (ext == "csv") return matrix_from_csv_text(read_text_file(path));
    throw BadParameters("unsupported matrix file extension on " + path + " (use .json or .csv)");
}

void save_matrix_file(const std::string& path, const ComplexMatrix& a) {
    write_text_file(path, matrix_to_json_text(a) + "\n");
}

std::vector<cplx> load_eigenvalues_file(const std::string& path) {
    return eigenvalues_from_json_text(read_text_file(path));
}

std::string wrange_csv(const SupportProfile& profile) {
    std::string out = "theta,r,re_z,im_z\n";
    for (const ThetaSample& s : profile.samples) {
        out += format_double(s.theta) + "," + format_double(s.r) + "," +
               format_double(s.boundary.real()) + "," + format_double(s.boundary.imag()) + "\n";
    }
    return out;
}

}  // namespace ppi
