#include "doctest.h"

#include "jetforge/check_suite.hpp"
#include "jetforge/errors.hpp"
#include "support.hpp"

using namespace testing;

namespace {

bool coefficients_in_range(const Poly& p)
{
    for (const auto& t : p.terms()) {
        const auto& q = t.coeff.as_rational();
        if (q.get_den() != 1 || q > 9 || q < -9)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("thirteen suites")
{
    CHECK(suite_names().size() == 13);
    CheckConfig cfg;
    CHECK(cfg.selected_suites().size() == 13);
    cfg.suites = {"zigzag", "leibniz"};
    CHECK(cfg.selected_suites() == std::vector<std::string>{"leibniz", "zigzag"});
}

TEST_CASE("configuration is validated")
{
    CheckConfig cfg;
    cfg.suites = {"nosuch"};
    CHECK_THROWS_AS(cfg.validate(), UnknownSuite);
    CHECK_THROWS_AS(run_suite(cfg), UnknownSuite);
    cfg.suites = {};
    cfg.max_level = 5;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.max_level = 4;
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.trials = 1;
    cfg.coeff_max = 10;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    CHECK_THROWS_AS(evaluate_suite("nosuch", SuiteInstance{}, 0), UnknownSuite);
}

TEST_CASE("a single leibniz trial is reproducible")
{
    CheckConfig cfg;
    cfg.seed = 1234;
    cfg.trials = 1;
    cfg.suites = {"leibniz"};
    auto a = run_suite(cfg), b = run_suite(cfg);
    REQUIRE(a.suites.size() == 1);
    CHECK(a.suites[0].trials == 1);
    CHECK(a.suites[0].oracle_checks == 1);
    CHECK(a.passed());
    CHECK(a.to_json(false) == b.to_json(false));
    CHECK(print_document(random_instance("leibniz", cfg, 0).doc) ==
          print_document(random_instance("leibniz", cfg, 0).doc));
}

TEST_CASE("reports are deterministic and independent of the worker count")
{
    CheckConfig cfg;
    cfg.seed = 7;
    cfg.trials = 6;
    auto serial = run_suite(cfg);
    cfg.jobs = 3;
    auto parallel = run_suite(cfg);
    CHECK(serial.passed());
    CHECK(serial.to_json(false).dump() == parallel.to_json(false).dump());
    CHECK(serial.suites.size() == 13);
    CHECK(serial.to_text().find("all 13 suites passed") != std::string::npos);
}

TEST_CASE("different seeds give different instances")
{
    CheckConfig a, b;
    a.seed = 1;
    b.seed = 2;
    int differ = 0;
    for (std::uint32_t t = 2; t < 12; ++t)
        differ += print_document(random_instance("leibniz", a, t).doc) !=
                  print_document(random_instance("leibniz", b, t).doc);
    CHECK(differ > 5);
}

TEST_CASE("degenerate instances lead every stream")
{
    CheckConfig cfg;
    cfg.seed = 5;
    for (const auto& suite : suite_names()) {
        auto first = random_instance(suite, cfg, 0);
        CHECK(first.n == 0);
        CHECK(first.doc.relations.empty());
        for (const auto& e : first.doc.elements)
            CHECK(e.poly.is_zero());
        if (first.doc.module) {
            CHECK(first.doc.module->rank == 0);
        }
        auto second = random_instance(suite, cfg, 1);
        CHECK(second.doc.relations.empty());
        if (!second.doc.elements.empty())
            CHECK(second.doc.elements[0].poly.is_zero());
        if (second.doc.module) {
            CHECK(second.doc.module->rank == 1);
            CHECK(second.doc.module->rows.empty());
        }
    }
}

TEST_CASE("instances respect the configured bounds")
{
    CheckConfig cfg;
    cfg.seed = 77;
    bool saw_free = false;
    for (const auto& suite : suite_names())
        for (std::uint32_t t = 0; t < 60; ++t) {
            auto inst = random_instance(suite, cfg, t);
            const auto& doc = inst.doc;
            CHECK(doc.vars.size() <= 3);
            CHECK(doc.relations.size() <= 2);
            CHECK(inst.n <= 4);
            if (suite == "bigrade_commute")
                CHECK((inst.n <= 2 && inst.m <= 2));
            if (suite == "cotruncation")
                CHECK((inst.m > inst.n && inst.m <= 4));
            if (suite == "p1_cocycle")
                CHECK((inst.d >= -2 && inst.d <= 2 && inst.n <= 3));
            for (const auto& r : doc.relations) {
                CHECK(r.poly.total_degree() <= 3);
                CHECK(r.poly.terms().size() <= 6);
                CHECK(coefficients_in_range(r.poly));
            }
            for (const auto& e : doc.elements) {
                CHECK(e.poly.total_degree() <= 3);
                CHECK(e.poly.terms().size() <= 6);
                CHECK(coefficients_in_range(e.poly));
            }
            if (doc.module)
                CHECK(doc.module->rank <= 2);
            if (doc.grading)
                for (const auto& r : doc.relations)
                    CHECK((r.poly.is_zero() || homogeneous_degree(r.poly, GradingMode::induced, doc.grading)));
            saw_free = saw_free || (t >= 2 && doc.relations.empty() && !doc.vars.empty());
        }
    CHECK(saw_free);
}

TEST_CASE("evaluation failures become reported failures")
{
    SuiteInstance inst{parse_input("ring Q[x]\n"), 1, 0, 0};
    auto r = evaluate_suite("sym_theorem", inst, 0);
    CHECK(!r.ok);
    CHECK(r.detail.find("exception") == 0);

    auto ok = evaluate_suite("leibniz", SuiteInstance{parse_input("ring Q[x,y]\nelement f = x*y\nelement g = y^3 - x"), 3, 0, 0}, 9);
    CHECK(ok.ok);
    CHECK(ok.oracle_used);
    CHECK(ok.oracle_agrees);

    auto jac = evaluate_suite("jacobian_identity", SuiteInstance{parse_input("ring Q[x,y]\nelement f = y^2 - x^3"), 2, 0, 0}, 4);
    CHECK(jac.ok);
    CHECK(jac.oracle_agrees);

    auto f5 = evaluate_suite("leibniz", SuiteInstance{parse_input("ring F5[x,y]\nelement f = x^3*y + 2\nelement g = 4*y"), 4, 0, 0}, 3);
    CHECK(f5.ok);
}

TEST_CASE("report serialization")
{
    CheckReport report;
    report.seed = 3;
    report.trials = 2;
    SuiteReport s;
    s.name = "leibniz";
    s.trials = 2;
    s.failures.push_back(TrialFailure{1, "ring Q[x]\n", "jetforge check --suite leibniz", "bad"});
    report.suites.push_back(s);
    CHECK(!report.passed());
    auto j = report.to_json(false);
    CHECK(j["passed"] == false);
    CHECK(j["suites"][0]["failures"][0]["instance"] == "ring Q[x]\n");
    CHECK(!j["suites"][0].contains("wall_ms"));
    CHECK(report.to_text().find("FAIL leibniz") != std::string::npos);
    CHECK(report.to_text().find("1 of 1 suites failed") != std::string::npos);
}
