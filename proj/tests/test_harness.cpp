#include <doctest.h>

#include <moments/errors.hpp>
#include <moments/harness.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

using namespace moments;

namespace {

const CheckReport& find_row(const std::vector<CheckReport>& rows, const std::string& id) {
    for (const CheckReport& r : rows)
        if (r.check_id == id) return r;
    static CheckReport missing;
    FAIL("missing row ", id);
    return missing;
}

bool same_reports(const std::vector<CheckReport>& a, const std::vector<CheckReport>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        const CheckReport &x = a[i], &y = b[i];
        if (x.check_id != y.check_id || x.inputs_digest != y.inputs_digest) return false;
        if (x.lhs != y.lhs || x.rhs != y.rhs || x.residual != y.residual) return false;
        if (x.relation != y.relation || x.tolerance != y.tolerance || x.passed != y.passed) return false;
    }
    return true;
}

int failed_count(const std::vector<CheckReport>& rows) {
    int c = 0;
    for (const CheckReport& r : rows)
        if (!r.passed) ++c;
    return c;
}

}  // namespace

TEST_CASE("pass rules at their boundaries") {
    // Eq allows tol * (1 + |rhs|)
    CheckReport eq = make_report("x", "d", 1e-3, 0.0, Relation::Eq, 1e-3);
    CHECK(eq.passed);
    CHECK(eq.residual == 1e-3);
    CHECK(eq.check_id == "x");
    CHECK(eq.inputs_digest == "d");
    CHECK(eq.tolerance == 1e-3);
    CHECK_FALSE(make_report("x", "d", 2.1e-3, 0.0, Relation::Eq, 1e-3).passed);
    CHECK(make_report("x", "d", 3.0 + 3.9e-3, 3.0, Relation::Eq, 1e-3).passed);
    CHECK_FALSE(make_report("x", "d", 3.0 + 4.5e-3, 3.0, Relation::Eq, 1e-3).passed);

    // Le and Ge use an absolute slack and keep signed residuals
    CheckReport le = make_report("x", "d", -1.0, 0.0, Relation::Le, 1e-6);
    CHECK(le.passed);
    CHECK(le.residual == -1.0);
    CHECK(make_report("x", "d", 5e-7, 0.0, Relation::Le, 1e-6).passed);
    CHECK_FALSE(make_report("x", "d", 2e-6, 0.0, Relation::Le, 1e-6).passed);

    CheckReport ge = make_report("x", "d", -5e-7, 0.0, Relation::Ge, 1e-6);
    CHECK(ge.passed);
    CHECK(ge.residual == 5e-7);
    CHECK_FALSE(make_report("x", "d", -2e-6, 0.0, Relation::Ge, 1e-6).passed);
}

TEST_CASE("random suites are deterministic and shaped as documented") {
    SuiteConfig cfg;
    cfg.trials = 2;
    cfg.k_list = {2, 3};

    std::vector<CheckReport> t1 = check_theorem1(cfg);
    CHECK(t1.size() == 8);  // trials * k * (equality + witness rows)
    for (const CheckReport& r : t1) {
        CHECK(r.check_id.rfind("theorem1/", 0) == 0);
        CHECK_FALSE(r.inputs_digest.empty());
        CHECK(r.passed);
    }
    CHECK(same_reports(t1, check_theorem1(cfg)));

    std::vector<CheckReport> r1 = check_remark_eq1(cfg);
    CHECK(r1.size() == 6);  // one bound row per k plus an equality row per even k
    CHECK(failed_count(r1) == 0);
}

TEST_CASE("anchor rows report the computed side against the pinned side") {
    SuiteConfig cfg;
    cfg.trials = 1;
    cfg.k_list = {2};

    std::vector<CheckReport> t234 = check_theorem2_3_4(cfg);
    CHECK(t234.size() == 6);  // 3 fixed anchors + q_upper/p_lower/even_equality for the one trial
    CHECK(find_row(t234, "theorem234/fixed/cube_roots/k=2/equality").passed);
    CHECK(find_row(t234, "theorem234/fixed/diag_1_i_0/k=3/p_lower").passed);

    /* the pinned target for the tracial lower bound exceeds the optimizer's
       maximum over all states, so this row documents a real shortfall */
    const CheckReport& pinned = find_row(t234, "theorem234/fixed/diag_1_i_0/k=3/trace_state_lower");
    CHECK_FALSE(pinned.passed);
    CHECK(pinned.lhs == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
    CHECK(pinned.rhs == doctest::Approx(0.8683345515978187).epsilon(1e-12));
    CHECK(pinned.lhs < pinned.rhs);

    std::vector<CheckReport> l3 = check_lemma3(cfg);
    CHECK(l3.size() == 2);
    const CheckReport& doubling = find_row(l3, "lemma3/fixed/diag_1_i_0/k=2/doubling");
    CHECK_FALSE(doubling.passed);
    // doubling the example matrix genuinely raises the second moment
    CHECK(doubling.lhs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(doubling.rhs == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));

    std::vector<CheckReport> t5 = check_theorem5(cfg);
    CHECK(t5.size() == 2);
    CHECK(failed_count(t5) == 0);
}

TEST_CASE("worked examples suite pins its fixed rows") {
    std::vector<CheckReport> rows = run_examples();
    REQUIRE(rows.size() == 7);

    CHECK(find_row(rows, "examples/cube_roots/k=2/strong").passed);
    CHECK(find_row(rows, "examples/cube_roots/k=2/weak").passed);
    CHECK(find_row(rows, "examples/diag_1_i_0/k=3/p_lower_side").passed);
    CHECK(find_row(rows, "examples/diag_1_m1/k=2/weak").passed);
    CHECK(find_row(rows, "examples/diag_1_m1/k=4/weak").passed);

    const CheckReport& tracial = find_row(rows, "examples/diag_1_i_0/k=3/trace_state_weak");
    CHECK_FALSE(tracial.passed);
    CHECK(tracial.lhs == doctest::Approx(std::pow(50.0, 1.0 / 6.0) / 3.0).epsilon(1e-9));
    CHECK(tracial.rhs == doctest::Approx(std::cbrt(50.0) / (3 * std::sqrt(2.0))).epsilon(1e-12));
    CHECK(failed_count(rows) == 1);

    const CheckReport& marker = rows.back();
    CHECK(marker.check_id == "examples/shift_isometry_equalities");
    CHECK(marker.passed);
    CHECK(marker.tolerance == 0.0);
    CHECK(marker.inputs_digest.rfind("untestable", 0) == 0);

    CHECK(same_reports(rows, run_examples()));
}

TEST_CASE("suite dispatch, aliases, and combined ordering") {
    const std::vector<std::string>& names = suite_names();
    REQUIRE(names.size() == 6);
    CHECK(names == std::vector<std::string>{"theorem1", "remark1", "theorem234", "lemma3", "theorem5",
                                            "examples"});

    SuiteConfig cfg;
    cfg.trials = 1;
    cfg.k_list = {2};

    std::vector<CheckReport> canonical = run_suite("theorem234", cfg);
    for (const std::string alias : {"theorem2", "theorem3", "theorem4"})
        CHECK(same_reports(canonical, run_suite(alias, cfg)));

    try {
        run_suite("bogus", cfg);
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownSuite);
    }

    std::vector<CheckReport> all = run_all(cfg);
    CHECK(all.size() == 21);
    CHECK(all.back().check_id == "examples/shift_isometry_equalities");
    std::vector<std::string> block_order;
    for (const CheckReport& r : all) {
        std::string prefix = r.check_id.substr(0, r.check_id.find('/'));
        if (block_order.empty() || block_order.back() != prefix) block_order.push_back(prefix);
    }
    CHECK(block_order == names);
}
