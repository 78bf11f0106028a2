#include <chrono>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "moments/harness.hpp"
#include "moments/matrixio.hpp"
#include "moments/optimize.hpp"
#include "moments/plot.hpp"
#include "moments/report.hpp"

namespace {

using namespace moments;

/* exit codes: 0 success / all-pass, 1 verification failure, 2 usage or data
   error, 3 numerical non-convergence */
int exit_code_for(ErrorCode c) { return c == ErrorCode::NoConvergence ? 3 : 2; }

void emit(const std::string& doc, const std::string& out_path) {
    if (out_path.empty())
        std::cout << doc;
    else
        write_text_file(out_path, doc);
}

int run_delta(DeltaConfig& cfg) {
    ComplexMatrix a = read_matrix_file(cfg.input);
    auto t0 = std::chrono::steady_clock::now();

    DeltaOutcome o;
    o.matrix_class = classify(a);
    switch (o.matrix_class) {
        case MatrixClass::Hermitian: {
            Spectrum s = eig_hermitian(a);
            o.result = cfg.weak ? weak_moment_hermitian(s, cfg.k)
                                : strong_moment_discrete(s, cfg.k, cfg.tolerance);
            break;
        }
        case MatrixClass::NormalNonHermitian: {
            Spectrum s = eig_normal(a);
            o.result = cfg.weak ? weak_moment_discrete(s, cfg.k, cfg.tolerance)
                                : strong_moment_discrete(s, cfg.k, cfg.tolerance);
            break;
        }
        case MatrixClass::General: {
            MatrixMomentResult mm = cfg.weak
                                        ? weak_moment_matrix(a, cfg.k, cfg.budget, cfg.tolerance, cfg.seed)
                                        : strong_moment_matrix(a, cfg.k, cfg.budget, cfg.tolerance, cfg.seed);
            o.result = mm.lower;
            o.upper = mm.upper;
            break;
        }
    }
    o.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(render_delta(cfg, o), cfg.out);
    return 0;
}

int run_dist(DistConfig& cfg) {
    ComplexMatrix a = read_matrix_file(cfg.input);
    DistanceResult r = min_scalar_distance(a, cfg.tolerance);
    emit(render_dist(cfg, r), cfg.out);
    return 0;
}

int run_polynorm(PolynormConfig& cfg) {
    MomentPolynomial poly = build(cfg.k, cfg.kind);
    SupNormResult norm = sup_norm(poly);
    emit(render_polynorm(cfg, poly, norm), cfg.out);
    return 0;
}

std::vector<int> parse_k_list(const std::string& csv) {
    std::vector<int> ks;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        try {
            ks.push_back(std::stoi(csv.substr(pos, comma - pos)));
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "--k-list must be comma-separated integers, got: " + csv);
        }
        pos = comma + 1;
    }
    if (ks.empty()) throw Error(ErrorCode::ParseError, "--k-list must not be empty");
    return ks;
}

int run_verify(VerifyConfig& cfg, const std::string& k_list_csv) {
    if (!k_list_csv.empty()) cfg.suite_config.k_list = parse_k_list(k_list_csv);
    std::vector<CheckReport> reports =
        cfg.suite == "all" ? run_all(cfg.suite_config) : run_suite(cfg.suite, cfg.suite_config);
    emit(render_verify(cfg, reports), cfg.out);
    for (const CheckReport& r : reports)
        if (!r.passed) return 1;
    return 0;
}

int run_plot(const std::string& what, int k, const std::string& kind_str, const std::string& input,
             const std::string& out) {
    if (what == "poly") {
        MomentPolynomial poly = build(k, kind_str == "q" ? PolyKind::Q : PolyKind::P);
        write_text_file(out, polynomial_svg(poly, sup_norm(poly)));
        return 0;
    }
    if (input.empty())
        throw Error(ErrorCode::ParseError, "--input is required for spectrum plots");
    ComplexMatrix a = read_matrix_file(input);
    Spectrum s = eig_normal(a);
    EnclosingDisc disc = smallest_enclosing_disc(s.eigenvalues);
    write_text_file(out, spectrum_svg(s, disc));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal strong/weak central moments of matrices over states"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    DeltaConfig dc;
    CLI::App* delta = app.add_subcommand("delta", "k-th central moment maximized over states");
    delta->add_option("--input", dc.input, "matrix file, JSON {n, entries}")->required();
    delta->add_option("--k", dc.k, "moment order (>= 1)")->required();
    delta->add_flag("--weak", dc.weak, "weak moment |omega((a-mu)^k)|^{1/k}; default is the strong moment");
    delta->add_option("--tol", dc.tolerance, "optimizer tolerance");
    delta->add_option("--seed", dc.seed, "seed for randomized optimizers");
    delta->add_option("--budget", dc.budget, "restart budget for the general-matrix path");
    delta->add_option("--format", dc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    delta->add_option("--out", dc.out, "output path (default stdout)");

    DistConfig xc;
    CLI::App* dist = app.add_subcommand("dist", "distance to the scalars min ||A - lambda I||");
    dist->add_option("--input", xc.input, "matrix file")->required();
    dist->add_option("--tol", xc.tolerance, "descent stop tolerance");
    dist->add_option("--format", xc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    dist->add_option("--out", xc.out, "output path (default stdout)");

    PolynormConfig pc;
    std::string poly_kind = "p";
    CLI::App* polynorm = app.add_subcommand("polynorm", "sup norm of the extremal polynomials on [0,1]");
    polynorm->add_option("--k", pc.k, "moment order")->required();
    polynorm->add_option("--kind", poly_kind, "p or q")->required()->check(CLI::IsMember({"p", "q"}));
    polynorm->add_option("--format", pc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    polynorm->add_option("--out", pc.out, "output path (default stdout)");

    VerifyConfig vc;
    std::string k_list_csv;
    CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--suite", vc.suite, "theorem1|remark1|theorem234|lemma3|theorem5|examples|all "
                                            "(theorem2/3/4 are aliases)")
        ->required();
    verify->add_option("--seed", vc.suite_config.seed, "master seed");
    verify->add_option("--trials", vc.suite_config.trials, "randomized trials per suite");
    verify->add_option("--k-list", k_list_csv, "comma-separated moment orders, default 2,3,4,5,6");
    verify->add_option("--format", vc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--out", vc.out, "output path (default stdout)");

    std::string plot_what, plot_kind = "p", plot_input, plot_out;
    int plot_k = 3;
    CLI::App* plot = app.add_subcommand("plot", "emit an SVG figure");
    plot->add_option("--what", plot_what, "poly or spectrum")
        ->required()
        ->check(CLI::IsMember({"poly", "spectrum"}));
    plot->add_option("--k", plot_k, "polynomial order (poly)");
    plot->add_option("--kind", plot_kind, "p or q (poly)")->check(CLI::IsMember({"p", "q"}));
    plot->add_option("--input", plot_input, "matrix file (spectrum)");
    plot->add_option("--out", plot_out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*delta) return run_delta(dc);
        if (*dist) return run_dist(xc);
        if (*polynorm) {
            pc.kind = poly_kind == "q" ? PolyKind::Q : PolyKind::P;
            return run_polynorm(pc);
        }
        if (*verify) return run_verify(vc, k_list_csv);
        if (*plot) return run_plot(plot_what, plot_k, plot_kind, plot_input, plot_out);
    } catch (const Error& e) {
        std::cerr << "error: " << error_name(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
