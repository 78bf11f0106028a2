/* Acceptance gate: eleven release criteria, one verdict line each. The exit
   code is the number of failed criteria, so 0 means the build is clean. */

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <moments/distance.hpp>
#include <moments/harness.hpp>
#include <moments/linalg.hpp>
#include <moments/matrixio.hpp>
#include <moments/optimize.hpp>
#include <moments/polynomials.hpp>
#include <moments/random.hpp>
#include <moments/states.hpp>

using namespace moments;

namespace {

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
    std::printf("criterion %2d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexMatrix example1_matrix(const std::string& fixture_dir) {
    if (!fixture_dir.empty()) {
        try {
            return read_matrix_file(fixture_dir + "/example1.json");
        } catch (const Error&) { /* fall through to the inline copy */
        }
    }
    const double s3 = std::sqrt(3.0);
    return ComplexMatrix::diagonal({cplx{1, 0}, cplx{-0.5, s3 / 2}, cplx{-0.5, -s3 / 2}});
}

ComplexMatrix example2_matrix() {
    return ComplexMatrix::diagonal({cplx{1, 0}, cplx{0, 1}, cplx{0, 0}});
}

double p_root_norm(int k) { return std::pow(sup_norm(build(k, PolyKind::P)).value, 1.0 / k); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::string fixture_dir = argc > 2 ? argv[2] : "";
    const std::uint64_t master = 20240501;

    /* 1: equilateral example, strong second moment */
    {
        auto t0 = std::chrono::steady_clock::now();
        Spectrum spec = eig_normal(example1_matrix(fixture_dir));
        double v = strong_moment_discrete(spec, 2).value;
        double dt = seconds_since(t0);
        verdict(1, std::abs(v - 1.0) <= 1e-5 && dt < 5.0,
                "strong k=2 on the equilateral spectrum: " + num(v) + " (target 1, " + num(dt) + "s)");
    }

    /* 2: equilateral example, weak second moment and its balanced witness */
    {
        Spectrum spec = eig_normal(example1_matrix(fixture_dir));
        MomentResult r = weak_moment_discrete(spec, 2);
        bool ok = std::abs(r.value - std::sqrt(3.0) / 2) <= 1e-4;
        std::string wtxt = "witness";
        if (r.discrete_witness && r.discrete_witness->support.size() == 2) {
            for (double w : r.discrete_witness->weights) {
                ok = ok && std::abs(w - 0.5) <= 1e-3;
                wtxt += " " + num(w);
            }
        } else {
            ok = false;
            wtxt = "witness not a two-atom state";
        }
        verdict(2, ok, "weak k=2: " + num(r.value) + " (target sqrt(3)/2), " + wtxt);
    }

    /* 3: three-point normal example: tracial weak third moment against the
       pinned constant, and the scaled-distance side value */
    {
        ComplexMatrix ex2 = example2_matrix();
        DensityState trace_state(cplx{1.0 / 3.0, 0} * ComplexMatrix::identity(3));
        double tracial = weak_moment_fixed_state(ex2, trace_state, 3).value;
        double pinned = std::cbrt(50.0) / (3 * std::sqrt(2.0));
        bool a = std::abs(tracial - pinned) <= 1e-9;

        double side = 2 * p_root_norm(3) * min_scalar_distance(ex2).distance;
        double side_target = std::sqrt(2.0) * std::pow(108.0, -1.0 / 6.0);
        bool b = std::abs(side - side_target) <= 1e-6;
        verdict(3, a && b,
                "tracial weak k=3: " + num(tracial) + " vs pinned " + num(pinned) +
                    (a ? "" : " (off by " + num(std::abs(tracial - pinned)) + ")") +
                    "; distance side: " + num(side) + " vs " + num(side_target));
    }

    /* 4: normal matrices, even k: optimizer against the scaled-radius formula */
    {
        auto t0 = std::chrono::steady_clock::now();
        int bad = 0, total = 0;
        double worst = 0;
        for (int trial = 0; trial < 20; ++trial) {
            std::mt19937_64 rng(derive_seed(master, 0xAC04, static_cast<std::uint64_t>(trial)));
            int n = 2 + trial % 5;
            ComplexMatrix a = random_normal_matrix(n, rng);
            Spectrum spec = eig_normal(a);
            double r0 = min_scalar_distance(a).distance;
            for (int k : {2, 4, 6}) {
                double lhs = strong_moment_discrete(spec, k).value;
                double rhs = 2 * p_root_norm(k) * r0;
                double resid = std::abs(lhs - rhs) / (1 + rhs);
                worst = std::max(worst, resid);
                ++total;
                if (resid > 1e-4) ++bad;
            }
        }
        double dt = seconds_since(t0);
        verdict(4, bad == 0 && dt < 180.0,
                num(bad) + " of " + num(total) + " equality checks off (worst relative residual " +
                    num(worst) + ", " + num(dt) + "s)");
    }

    /* 5: Hermitian matrices: optimizer equals the closed form, witness sits on
       the two extreme eigenvalues */
    {
        int bad = 0, total = 0;
        double worst = 0;
        for (int trial = 0; trial < 20; ++trial) {
            std::mt19937_64 rng(derive_seed(master, 0xAC05, static_cast<std::uint64_t>(trial)));
            int n = 2 + trial % 7;
            Spectrum spec = eig_hermitian(random_hermitian(n, rng));
            double lo = spec.eigenvalues.front().real(), hi = spec.eigenvalues.back().real();
            double scale = std::max(std::abs(lo), std::abs(hi));
            for (int k = 2; k <= 6; ++k) {
                MomentResult opt = weak_moment_discrete(spec, k);
                MomentResult cf = weak_moment_hermitian(spec, k);
                double resid = std::abs(opt.value - cf.value) / (1 + cf.value);
                worst = std::max(worst, resid);
                bool row = resid <= 1e-5;
                for (const cplx& s : opt.discrete_witness->support) {
                    double d = std::min(std::abs(s - cplx{lo, 0}), std::abs(s - cplx{hi, 0}));
                    if (d > 1e-6 * (1 + scale)) row = false;
                }
                ++total;
                if (!row) ++bad;
            }
        }
        verdict(5, bad == 0,
                num(bad) + " of " + num(total) + " closed-form checks off (worst relative residual " +
                    num(worst) + ")");
    }

    /* 6: adjoining the conjugate block must not change the strong moments */
    {
        int bad = 0, total = 0;
        double worst = 0;
        for (int trial = 0; trial < 10; ++trial) {
            std::mt19937_64 rng(derive_seed(master, 0xAC06, static_cast<std::uint64_t>(trial)));
            int n = 2 + trial % 3;
            ComplexMatrix a = random_normal_matrix(n, rng);
            Spectrum single_spec = eig_normal(a);
            Spectrum doubled_spec = eig_normal(direct_sum_conjugate(a));
            for (int k : {2, 3, 4}) {
                double single = strong_moment_discrete(single_spec, k).value;
                double doubled = strong_moment_discrete(doubled_spec, k).value;
                double resid = std::abs(doubled - single) / (1 + single);
                worst = std::max(worst, resid);
                ++total;
                if (resid > 1e-4) ++bad;
            }
        }
        verdict(6, bad == 0,
                num(bad) + " of " + num(total) + " conjugate-block checks off (worst relative residual " +
                    num(worst) + ")");
    }

    /* 7: non-normal matrices: weak lower bounds against the scaled distance */
    {
        SuiteConfig cfg;
        cfg.seed = master;
        cfg.trials = 50;
        cfg.k_list = {2, 3, 4, 5, 6};
        std::vector<CheckReport> rows = check_theorem5(cfg);
        int bad = 0;
        for (const CheckReport& r : rows)
            if (!r.passed) ++bad;
        verdict(7, bad == 0, num(bad) + " of " + num(rows.size()) + " bound checks violated");
    }

    /* 8: polynomial sup norms against their closed forms */
    {
        double p2 = sup_norm(build(2, PolyKind::P)).value;
        double p3 = sup_norm(build(3, PolyKind::P)).value;
        double q3 = sup_norm(build(3, PolyKind::Q)).value;
        double p4 = sup_norm(build(4, PolyKind::P)).value;
        bool ok = std::abs(p2 - 0.25) <= 1e-12 && std::abs(p3 - 1 / std::sqrt(108.0)) <= 1e-12 &&
                  std::abs(q3 - 0.125) <= 1e-12 && std::abs(p4 - 1.0 / 12.0) <= 1e-12;
        verdict(8, ok,
                "p2 " + num(p2) + ", p3 " + num(p3) + ", q3 " + num(q3) + ", p4 " + num(p4));
    }

    /* 9: the full simplex never beats the best pair by more than grid slack
       in weak mode */
    {
        int bad = 0, total = 0;
        double worst = -1;
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            std::mt19937_64 rng(derive_seed(master, 0xAC09, static_cast<std::uint64_t>(trial)));
            int m = trial < 10 ? 3 : 4;
            std::vector<cplx> support;
            for (int i = 0; i < m; ++i) support.push_back(cplx{unif(rng), 0});
            for (int k = 2; k <= 6; ++k) {
                double full = bruteforce_simplex_oracle(support, k, MomentMode::Weak, 200);
                double best_pair = 0;
                for (size_t i = 0; i < support.size(); ++i)
                    for (size_t j = i + 1; j < support.size(); ++j)
                        best_pair = std::max(best_pair,
                                             weak_moment_discrete({support[i], support[j]}, k).value);
                double excess = full - best_pair;
                worst = std::max(worst, excess);
                ++total;
                if (excess > 5e-3) ++bad;
            }
        }
        verdict(9, bad == 0,
                num(bad) + " of " + num(total) + " concentration checks off (worst excess " + num(worst) +
                    ")");
    }

    /* 10: scalar distance: the two paths agree and transform correctly */
    {
        int bad = 0;
        const cplx shift{0.7, -1.3};
        const double s = 2.5;
        for (int trial = 0; trial < 20; ++trial) {
            std::mt19937_64 rng(derive_seed(master, 0xAC0A, static_cast<std::uint64_t>(trial)));
            int n = 2 + trial % 7;
            ComplexMatrix a = random_normal_matrix(n, rng);
            DistanceResult disc = min_scalar_distance(a);
            DistanceResult desc = min_scalar_distance_descent(a);
            bool row = std::abs(disc.distance - desc.distance) <= 1e-7 * (1 + disc.distance);

            DistanceResult moved = min_scalar_distance(a + shift * ComplexMatrix::identity(n));
            row = row && std::abs(moved.lambda0 - (disc.lambda0 + shift)) <= 1e-7;
            row = row && std::abs(moved.distance - disc.distance) <= 1e-9 * (1 + disc.distance);

            DistanceResult scaled = min_scalar_distance(cplx{s, 0} * a);
            row = row && std::abs(scaled.distance - s * disc.distance) <= 1e-9 * (1 + s * disc.distance);
            row = row && std::abs(scaled.lambda0 - s * disc.lambda0) <= 1e-7;
            if (!row) ++bad;
        }
        verdict(10, bad == 0, num(bad) + " of 20 distance consistency checks off");
    }

    /* 11: the verification run is reproducible byte for byte */
    {
        if (cli.empty()) {
            verdict(11, false, "no CLI binary path supplied on the command line");
        } else {
            namespace fs = std::filesystem;
            const std::string out1 = (fs::temp_directory_path() / "momentlab_accept_run1.json").string();
            const std::string out2 = (fs::temp_directory_path() / "momentlab_accept_run2.json").string();
            const std::string base =
                "\"" + cli + "\" verify --suite all --seed 20240501 --out ";
            int rc1 = std::system((base + out1 + " >/dev/null 2>&1").c_str());
            int rc2 = std::system((base + out2 + " >/dev/null 2>&1").c_str());
            std::string run1 = slurp(out1), run2 = slurp(out2);
            bool ok = !run1.empty() && run1 == run2;
            verdict(11, ok,
                    "two runs produced " + num(run1.size()) + " and " + num(run2.size()) +
                        " bytes, " + (run1 == run2 ? "identical" : "DIFFERENT") + " (exit " +
                        num(rc1) + "/" + num(rc2) + ")");
            fs::remove(out1);
            fs::remove(out2);
        }
    }

    std::printf("acceptance: %d of 11 criteria failed\n", failures);
    return failures;
}
