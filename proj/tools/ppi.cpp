// Command-line front end: matrix analysis, canonical forms, numerical-range
// sweeps, defect-one constructions, and the bundled example replays.
//
// Structured results are JSON on stdout; human-readable summaries go to
// stderr unless --json is given.  Exit codes: 0 all checks passed, 1 a
// check or search failed, 2 usage or input error, 3 numerical tolerance
// breached.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ppi/canon.hpp"
#include "ppi/errors.hpp"
#include "ppi/io.hpp"
#include "ppi/isometry.hpp"
#include "ppi/matrix.hpp"
#include "ppi/numrange.hpp"
#include "ppi/repro.hpp"
#include "ppi/snmat.hpp"

namespace {

using namespace ppi;

struct Options {
    Tolerance tol;
    bool json = false;
    std::uint64_t seed = 42;
};

void out_line(const std::string& s) {
    std::fputs(s.c_str(), stdout);
    std::fputc('\n', stdout);
}

std::string bool_json(bool b) { return b ? "true" : "false"; }

std::string index_json(const PpiIndex& p) {
    return p.is_infinite ? std::string("\"inf\"") : std::to_string(p.value);
}

std::string sizes_json(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

std::string jordan_json(const JordanSpec& spec) {
    std::string s = "{\"block_sizes\": " + sizes_json(spec.block_sizes);
    s += ", \"unitary_summand\": ";
    s += spec.unitary_summand ? matrix_to_json_text(*spec.unitary_summand) : "null";
    s += ", \"conjugator\": " + matrix_to_json_text(spec.conjugator);
    s += ", \"residual\": " + format_double(spec.residual);
    return s + "}";
}

std::string staircase_json(const StaircaseForm& sf) {
    std::string s = "{\"k\": " + std::to_string(sf.k);
    s += ", \"sizes\": " + sizes_json(sf.sizes);
    s += ", \"core\": " + std::to_string(sf.core);
    s += ", \"steps\": [";
    for (std::size_t i = 0; i < sf.steps.size(); ++i) {
        if (i) s += ", ";
        s += matrix_to_json_text(sf.steps[i]);
    }
    s += "], \"b\": " + matrix_to_json_text(sf.b);
    s += ", \"c\": " + matrix_to_json_text(sf.c);
    s += ", \"conjugator\": " + matrix_to_json_text(sf.v);
    s += ", \"residual\": " + format_double(sf.residual);
    return s + "}";
}

std::string certificate_json(const CircularityCertificate& cert) {
    std::string s = "{\"verdict\": \"" + std::string(to_string(cert.verdict)) + "\"";
    s += ", \"method\": \"" + std::string(to_string(cert.method)) + "\"";
    s += ", \"radius\": " + (cert.radius ? format_double(*cert.radius) : std::string("null"));
    if (cert.grid) {
        s += ", \"grid\": {\"theta_max\": " + format_double(cert.grid->theta_max);
        s += ", \"r_at_max\": " + format_double(cert.grid->r_at_max);
        s += ", \"theta_min\": " + format_double(cert.grid->theta_min);
        s += ", \"r_at_min\": " + format_double(cert.grid->r_at_min) + "}";
    } else {
        s += ", \"grid\": null";
    }
    s += ", \"trig_index\": ";
    s += cert.trig_index ? std::to_string(*cert.trig_index) : std::string("null");
    s += ", \"trig_magnitude\": ";
    s += cert.trig_magnitude ? format_double(*cert.trig_magnitude) : std::string("null");
    s += ", \"jordan\": ";
    s += cert.jordan ? jordan_json(*cert.jordan) : std::string("null");
    s += ", \"note\": \"" + json_escape(cert.note) + "\"";
    return s + "}";
}

std::string sn_report_json(const SnReport& rep) {
    std::string eig = "[";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        if (i) eig += ", ";
        eig += "[" + format_double(rep.eigenvalues[i].real()) + ", " +
               format_double(rep.eigenvalues[i].imag()) + "]";
    }
    eig += "]";
    std::string s = "{\"n\": " + std::to_string(rep.n);
    s += ", \"is_contraction\": " + bool_json(rep.is_contraction);
    s += ", \"defect_rank\": " + std::to_string(rep.defect_rank);
    s += ", \"is_sn\": " + bool_json(rep.is_sn);
    s += ", \"zero_multiplicity\": " + std::to_string(rep.zero_multiplicity);
    s += ", \"eigenvalues\": " + eig;
    s += ", \"prop31\": ";
    if (rep.prop31) {
        const Prop31Verdicts& v = *rep.prop31;
        s += "{\"ascent_equals_alg_mult\": " + bool_json(v.ascent_equals_alg_mult);
        s += ", \"ppi_index\": " + index_json(v.ppi);
        s += ", \"ppi_in_allowed_set\": " + bool_json(v.ppi_in_allowed_set);
        s += ", \"jordan_iff_holds\": " + bool_json(v.jordan_iff_holds);
        s += ", \"rank_sequence_ok\": " + bool_json(v.rank_sequence_ok) + "}";
    } else {
        s += "null";
    }
    return s + "}";
}

int run_analyze(const std::string& path, const Options& opt) {
    const ComplexMatrix a = load_matrix_file(path);
    const AnalysisReport rep = analyze(a, opt.tol);

    std::string chain = "[";
    for (std::size_t i = 0; i < rep.pi_chain.size(); ++i) {
        if (i) chain += ", ";
        chain += bool_json(rep.pi_chain[i]);
    }
    chain += "]";

    std::string s = "{\"n\": " + std::to_string(rep.n);
    s += ", \"ascent\": " + std::to_string(rep.ascent);
    s += ", \"ppi_index\": " + index_json(rep.ppi);
    s += ", \"is_pi_chain\": " + chain;
    s += ", \"has_unitary_part\": ";
    s += rep.unitary_part ? bool_json(*rep.unitary_part) : std::string("null");
    s += ", \"norm\": " + format_double(rep.norm) + "}";
    out_line(s);

    if (!opt.json) {
        std::fprintf(stderr, "%-15s %zu\n", "n", rep.n);
        std::fprintf(stderr, "%-15s %zu\n", "ascent", rep.ascent);
        std::fprintf(stderr, "%-15s %s\n", "ppi index", to_string(rep.ppi).c_str());
        std::string powers;
        for (std::size_t i = 0; i < rep.pi_chain.size(); ++i) {
            if (i) powers += "  ";
            powers += "A^" + std::to_string(i + 1) + (rep.pi_chain[i] ? " PI" : " --");
        }
        std::fprintf(stderr, "%-15s %s\n", "power chain", powers.c_str());
        std::fprintf(stderr, "%-15s %s\n", "unitary part",
                     rep.unitary_part ? (*rep.unitary_part ? "yes" : "no") : "n/a (not a contraction)");
        std::fprintf(stderr, "%-15s %.12g\n", "operator norm", rep.norm);
    }
    return 0;
}

int run_canon(const std::string& path, std::size_t ell, const std::string& mode,
              const Options& opt) {
    const ComplexMatrix a = load_matrix_file(path);
    if (ell == 0) ell = a.rows();  // as many levels as the kernel chain allows

    if (mode == "halmos-wallen") {
        const JordanSpec spec = halmos_wallen(a, opt.tol);
        out_line("{\"mode\": \"halmos-wallen\", \"form\": " + jordan_json(spec) + "}");
        if (!opt.json) {
            std::fprintf(stderr, "%-15s %s\n", "block sizes", sizes_json(spec.block_sizes).c_str());
            std::fprintf(stderr, "%-15s %zu\n", "unitary dim",
                         spec.unitary_summand ? spec.unitary_summand->rows() : std::size_t{0});
            std::fprintf(stderr, "%-15s %.3e\n", "residual", spec.residual);
        }
        return 0;
    }

    const StaircaseForm sf = staircase_form(a, ell, opt.tol);
    if (mode == "staircase") {
        out_line("{\"mode\": \"staircase\", \"form\": " + staircase_json(sf) + "}");
        if (!opt.json) {
            std::fprintf(stderr, "%-15s %zu\n", "levels", sf.k);
            std::fprintf(stderr, "%-15s %s\n", "sizes", sizes_json(sf.sizes).c_str());
            std::fprintf(stderr, "%-15s %zu\n", "core dim", sf.core);
            std::fprintf(stderr, "%-15s %.3e\n", "residual", sf.residual);
        }
        return 0;
    }

    const NormalizedStaircase ns = normalize_staircase(sf);
    out_line("{\"mode\": \"normalized\", \"staircase\": " + staircase_json(ns.staircase) +
             ", \"tail\": " + jordan_json(ns.tail) + "}");
    if (!opt.json) {
        std::fprintf(stderr, "%-15s %zu\n", "levels", ns.staircase.k);
        std::fprintf(stderr, "%-15s %s\n", "sizes", sizes_json(ns.staircase.sizes).c_str());
        std::fprintf(stderr, "%-15s %s\n", "tail blocks", sizes_json(ns.tail.block_sizes).c_str());
        std::fprintf(stderr, "%-15s %.3e\n", "residual", ns.staircase.residual);
    }
    return 0;
}

int run_wrange(const std::string& path, std::size_t samples, const std::string& out_path,
               bool disc_test, const Options& opt) {
    const ComplexMatrix a = load_matrix_file(path);
    const SupportProfile profile = boundary_points(a, samples, opt.tol);
    const std::string csv = wrange_csv(profile);
    if (!out_path.empty())
        write_text_file(out_path, csv);
    else
        std::fputs(csv.c_str(), stdout);

    if (!opt.json) {
        std::fprintf(stderr, "samples %zu  r in [%.12g, %.12g]  max at theta %.12g\n",
                     profile.samples.size(), profile.r_min, profile.r_max,
                     profile.samples[profile.argmax].theta);
        if (!out_path.empty()) std::fprintf(stderr, "wrote %s\n", out_path.c_str());
    }

    if (!disc_test) return 0;
    const CircularityCertificate cert = is_disc_at_origin(a, samples, opt.tol);
    out_line(certificate_json(cert));
    if (!opt.json) {
        std::fprintf(stderr, "disc test: %s (method %s%s)\n", to_string(cert.verdict),
                     to_string(cert.method),
                     cert.radius ? (", radius " + format_double(*cert.radius)).c_str() : "");
    }
    return cert.verdict == DiscVerdict::INCONCLUSIVE ? 3 : 0;
}

int run_sn_make(const std::string& eigs_path, const std::string& out_path, const Options& opt) {
    const std::vector<cplx> lams = load_eigenvalues_file(eigs_path);
    const ComplexMatrix a = sn_from_eigenvalues(lams);
    if (out_path.empty()) {
        out_line(matrix_to_json_text(a));
    } else {
        save_matrix_file(out_path, a);
        if (opt.json)
            out_line("{\"n\": " + std::to_string(a.rows()) + ", \"written\": \"" +
                     json_escape(out_path) + "\"}");
    }
    if (!opt.json)
        std::fprintf(stderr, "built %zux%zu defect-one contraction%s%s\n", a.rows(), a.cols(),
                     out_path.empty() ? "" : " -> ", out_path.c_str());
    return 0;
}

int run_sn_check(const std::string& path, const Options& opt) {
    const ComplexMatrix a = load_matrix_file(path);
    SnReport rep = is_sn(a, opt.tol);
    bool ok = rep.is_sn;
    if (rep.is_sn) {
        try {
            rep = check_prop31(a, opt.tol);
            if (rep.prop31)
                ok = rep.prop31->ascent_equals_alg_mult && rep.prop31->ppi_in_allowed_set &&
                     rep.prop31->jordan_iff_holds && rep.prop31->rank_sequence_ok;
        } catch (const Invertible&) {
            // no zero eigenvalue: membership stands, the zero-structure
            // verdicts are vacuous and stay null
        }
    }
    out_line(sn_report_json(rep));
    if (!opt.json) {
        std::fprintf(stderr, "%-22s %s\n", "class membership", rep.is_sn ? "yes" : "NO");
        std::fprintf(stderr, "%-22s %s\n", "contraction", rep.is_contraction ? "yes" : "NO");
        std::fprintf(stderr, "%-22s %zu\n", "defect rank", rep.defect_rank);
        std::fprintf(stderr, "%-22s %zu\n", "zero multiplicity", rep.zero_multiplicity);
        if (rep.prop31) {
            const Prop31Verdicts& v = *rep.prop31;
            std::fprintf(stderr, "%-22s %s\n", "ascent = mult(0)",
                         v.ascent_equals_alg_mult ? "yes" : "NO");
            std::fprintf(stderr, "%-22s %s\n", "index", to_string(v.ppi).c_str());
            std::fprintf(stderr, "%-22s %s\n", "index in {ascent, inf}",
                         v.ppi_in_allowed_set ? "yes" : "NO");
            std::fprintf(stderr, "%-22s %s\n", "full-block iff inf",
                         v.jordan_iff_holds ? "yes" : "NO");
            std::fprintf(stderr, "%-22s %s\n", "rank A^j = n-j",
                         v.rank_sequence_ok ? "yes" : "NO");
        }
        std::fprintf(stderr, "%s\n", ok ? "all checks passed" : "CHECKS FAILED");
    }
    return ok ? 0 : 1;
}

int run_search(std::size_t n, std::size_t j, std::size_t k, std::size_t trials,
               const Options& opt) {
    const auto res = search_pa(n, j, k, trials, opt.seed);
    if (!res) {
        out_line("{\"found\": false, \"note\": \"NOT_FOUND\"}");
        if (!opt.json)
            std::fprintf(stderr, "NOT_FOUND: no verified witness in %zu trials\n", trials);
        return 1;
    }
    const SearchCertificate& c = res->certificate;
    std::string s = "{\"found\": true, \"witness\": " + matrix_to_json_text(res->witness);
    s += ", \"certificate\": {\"n\": " + std::to_string(c.n);
    s += ", \"j\": " + std::to_string(c.j);
    s += ", \"k\": " + std::to_string(c.k);
    s += ", \"deterministic\": " + bool_json(c.deterministic);
    s += ", \"trials_used\": " + std::to_string(c.trials_used);
    s += ", \"index\": " + index_json(c.index);
    s += ", \"ascent\": " + std::to_string(c.ascent) + "}}";
    out_line(s);
    if (!opt.json)
        std::fprintf(stderr, "found %zux%zu witness: index %s, ascent %zu (%s, %zu trials)\n",
                     res->witness.rows(), res->witness.cols(), to_string(c.index).c_str(),
                     c.ascent, c.deterministic ? "deterministic" : "randomized", c.trials_used);
    return 0;
}

int run_repro(const std::string& id, const Options& opt) {
    const ReproResult r = repro(id);
    out_line(repro_to_json(r));
    if (!opt.json) {
        std::fprintf(stderr, "example %s\n", r.example_id.c_str());
        for (const auto& c : r.checks)
            std::fprintf(stderr, "  [%s] %-36s expected %s  computed %s\n",
                         c.pass ? "PASS" : "FAIL", c.name.c_str(), c.expected.c_str(),
                         c.computed.c_str());
        std::fprintf(stderr, "%s\n", r.all_pass ? "all checks passed" : "CHECKS FAILED");
    }
    return r.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    double tol_abs = Tolerance{}.abs;
    bool json = false;
    std::uint64_t seed = 42;

    CLI::App app{"power partial isometry toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "1.0.0");

    const CLI::Validator tol_range(
        [](std::string& s) -> std::string {
            double v = 0;
            try {
                v = std::stod(s);
            } catch (...) {
                return "tolerance is not a number";
            }
            if (!(v > 0.0) || v > 1e-4) return "tolerance must satisfy 0 < tol <= 1e-4";
            return {};
        },
        "TOL");
    app.add_option("--tol", tol_abs, "absolute tolerance (0 < tol <= 1e-4)")->check(tol_range);
    app.add_flag("--json", json, "machine output only; suppress stderr tables");
    app.add_option("--seed", seed, "seed for randomized search");

    const auto opts = [&] {
        Options o;
        o.tol.abs = tol_abs;
        o.json = json;
        o.seed = seed;
        return o;
    };

    int rc = 0;

    std::string an_path;
    auto* an = app.add_subcommand("analyze", "index and structure report for one matrix");
    an->fallthrough();
    an->add_option("matrix", an_path, "matrix file (.json or .csv)")->required();
    an->callback([&] { rc = run_analyze(an_path, opts()); });

    std::string canon_path;
    std::string mode = "staircase";
    std::size_t ell = 0;
    auto* canon = app.add_subcommand("canon", "unitary canonical forms");
    canon->fallthrough();
    canon->add_option("matrix", canon_path, "matrix file (.json or .csv)")->required();
    canon->add_option("--ell", ell, "staircase levels requested (default: full chain)");
    canon->add_option("--mode", mode, "staircase, normalized, or halmos-wallen")
        ->check(CLI::IsMember({"staircase", "normalized", "halmos-wallen"}));
    canon->callback([&] { rc = run_canon(canon_path, ell, mode, opts()); });

    std::string wr_path;
    std::string wr_out;
    std::size_t samples = 720;
    bool disc_test = false;
    auto* wr = app.add_subcommand("wrange", "numerical-range boundary sweep");
    wr->fallthrough();
    wr->add_option("matrix", wr_path, "matrix file (.json or .csv)")->required();
    wr->add_option("--samples", samples, "angular sample count (>= 3)")
        ->check(CLI::Range(std::size_t{3}, std::size_t{10000000}));
    wr->add_option("--out", wr_out, "write the boundary CSV here instead of stdout");
    wr->add_flag("--disc-test", disc_test, "also run the disc-at-origin certificate");
    wr->callback([&] { rc = run_wrange(wr_path, samples, wr_out, disc_test, opts()); });

    auto* sn = app.add_subcommand("sn", "defect-one contraction constructions and checks");
    sn->require_subcommand(1);
    sn->fallthrough();

    std::string eigs_path;
    std::string make_out;
    auto* mk = sn->add_subcommand("make", "build the defect-one contraction with given spectrum");
    mk->fallthrough();
    mk->add_option("--eigs", eigs_path, "eigenvalue list (JSON)")->required();
    mk->add_option("-o,--out", make_out, "output matrix file");
    mk->callback([&] { rc = run_sn_make(eigs_path, make_out, opts()); });

    std::string check_path;
    auto* ck = sn->add_subcommand("check", "class membership and structural verdicts");
    ck->fallthrough();
    ck->add_option("matrix", check_path, "matrix file (.json or .csv)")->required();
    ck->callback([&] { rc = run_sn_check(check_path, opts()); });

    std::size_t s_n = 0, s_j = 0, s_k = 0, trials = 200;
    auto* se = app.add_subcommand("search", "look for a witness with index j and ascent k");
    se->fallthrough();
    se->add_option("--n", s_n, "matrix size")->required();
    se->add_option("--j", s_j, "target index")->required();
    se->add_option("--k", s_k, "target ascent")->required();
    se->add_option("--trials", trials, "randomized draws before giving up");
    se->callback([&] { rc = run_search(s_n, s_j, s_k, trials, opts()); });

    std::string example_id;
    auto* rp = app.add_subcommand("repro", "replay a bundled worked example");
    rp->fallthrough();
    rp->add_option("id", example_id, "example id: 2.7, 3.5, or 3.6")->required();
    rp->callback([&] { rc = run_repro(example_id, opts()); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const AmbiguousAtTolerance& e) {
        std::fprintf(stderr, "tolerance ambiguity: %s\n", e.what());
        return 3;
    } catch (const ToleranceBreach& e) {
        std::fprintf(stderr, "tolerance breach: %s\n", e.what());
        return 3;
    } catch (const NoConvergence& e) {
        std::fprintf(stderr, "no convergence: %s\n", e.what());
        return 3;
    } catch (const UnknownExample& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const BadParameters& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
    return rc;
}
