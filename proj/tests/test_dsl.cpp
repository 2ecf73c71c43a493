#include "doctest.h"

#include <cstdlib>

#include "jetforge/check_suite.hpp"
#include "jetforge/errors.hpp"
#include "support.hpp"

using namespace testing;

namespace {

ParseError parse_error(const std::string& text)
{
    try {
        parse_input(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error for: " << text);
    throw;
}

} // namespace

TEST_CASE("cusp document")
{
    auto doc = parse_input("ring Q[x,y]\nideal f = y^2 - x^3");
    CHECK(doc.field == Q);
    CHECK(doc.vars == std::vector<std::string>{"x", "y"});
    REQUIRE(doc.relations.size() == 1);
    CHECK(doc.relations[0].name == "f");
    CHECK(doc.relations[0].poly == var(1) * var(1) - var(0).pow(3));
    CHECK(!doc.grading);
    CHECK(print_document(doc) == "ring Q[x,y]\nideal f = -x^3 + y^2\n");
}

TEST_CASE("undeclared variables are reported at the token")
{
    auto e = parse_error("ring Q[x,y]\nideal f = y^2 - z");
    CHECK(e.kind() == ParseError::Kind::undeclared_variable);
    CHECK(e.line() == 2);
    CHECK(e.column() == 17);
}

TEST_CASE("inhomogeneous relations under a grading")
{
    auto e = parse_error("ring Q[x]\ngrade x = 1\nideal f = x^2 + x");
    CHECK(e.kind() == ParseError::Kind::inhomogeneous_relation);
    CHECK(e.line() == 3);
    CHECK(e.column() == 11);

    auto ok = parse_input("ring Q[x,y]\ngrade x = 2\ngrade y = 3\nideal f = y^2 - x^3");
    CHECK(ok.grading == std::vector<std::uint32_t>{2, 3});
    CHECK(parse_error("ring Q[x,y]\ngrade x = 1\n").kind() == ParseError::Kind::missing_declaration);
}

TEST_CASE("lexical and syntax errors carry positions")
{
    auto e = parse_error("ring Q[x]\nideal f = x $ 1");
    CHECK(e.kind() == ParseError::Kind::lexical);
    CHECK(e.line() == 2);
    CHECK(e.column() == 13);
    CHECK(parse_error("ring Q[x]\nideal f = x_1").kind() == ParseError::Kind::lexical);
    CHECK(parse_error("ring Q[x]\nideal f = x +").kind() == ParseError::Kind::syntax);
    CHECK(parse_error("ring Q[x]\nideal f = (x").kind() == ParseError::Kind::syntax);
    CHECK(parse_error("ring Q[x]\nfoo").kind() == ParseError::Kind::syntax);
    CHECK(parse_error("ring Q[x]\nideal f = x / x").kind() == ParseError::Kind::syntax);
    CHECK(parse_error("ring Q[x]\nideal f = x / 0").kind() == ParseError::Kind::syntax);
    CHECK(parse_error("ideal f = x").kind() == ParseError::Kind::missing_declaration);
    CHECK(parse_error("").kind() == ParseError::Kind::missing_declaration);
    CHECK(parse_error("ring Q[x,x]").kind() == ParseError::Kind::duplicate_declaration);
    CHECK(parse_error("ring Q[x]\nideal f = x\nideal f = x^2").kind() == ParseError::Kind::duplicate_declaration);
    CHECK(parse_error("ring R[x]").kind() == ParseError::Kind::invalid_field);
    CHECK(parse_error("ring F4[x]").kind() == ParseError::Kind::invalid_field);
}

TEST_CASE("coefficients, fields and comments")
{
    auto doc = parse_input("# plane curve\nring Q[x,y]   # coordinates\nideal f = 1/2*x^2 - (x - y)*(x + y) / 3\n");
    CHECK(to_string(doc.relations[0].poly, doc.base_names()) == "1/6*x^2 + 1/3*y^2");

    auto f7 = parse_input("ring F7[x]\nideal f = 8*x + 3/2");
    CHECK(f7.field == Field::prime(7));
    CHECK(to_string(f7.relations[0].poly, f7.base_names()) == "x + 5");

    auto k = parse_input("ring k[x]\nideal f = x", Field::prime(5));
    CHECK(k.field == Field::prime(5));
    CHECK(print_document(k) == "ring F5[x]\nideal f = x\n");

    auto windows = parse_input("ring Q[x]\r\nideal f = x^2\r\n");
    CHECK(windows.relations.size() == 1);
}

TEST_CASE("modules and morphisms")
{
    auto doc = parse_input("ring Q[x,y]\n"
                           "module rank 2\n"
                           "relation x, y\n"
                           "relation 0, x^2\n"
                           "target Q[u]\n"
                           "target ideal h = u^3\n"
                           "map x = u^2\n"
                           "map y = u^3\n");
    REQUIRE(doc.module);
    CHECK(doc.module->rank == 2);
    CHECK(doc.module_presentation().relations().size() == 2);
    REQUIRE(doc.morphism);
    CHECK(doc.morphism->target_vars == std::vector<std::string>{"u"});
    auto phi = doc.morphism_map();
    CHECK(phi.apply(var(0) * var(1)) == var(0).pow(5));
    CHECK(parse_input(print_document(doc)) == doc);

    CHECK(parse_error("ring Q[x]\nmodule rank 2\nrelation x").kind() == ParseError::Kind::syntax);
    CHECK(parse_error("ring Q[x]\nrelation x").kind() == ParseError::Kind::missing_declaration);
    CHECK(parse_error("ring Q[x,y]\ntarget Q[u]\nmap x = u").kind() == ParseError::Kind::missing_declaration);
    CHECK(parse_error("ring Q[x]\ntarget Q[u]\nmap x = x").kind() == ParseError::Kind::undeclared_variable);
    CHECK(parse_error("ring Q[x]\ntarget F3[u]\nmap x = u").kind() == ParseError::Kind::invalid_field);
    CHECK(parse_error("ring Q[x]\nmap x = 1").kind() == ParseError::Kind::missing_declaration);

    auto rank0 = parse_input("ring Q[x]\nmodule rank 0\nrelation\n");
    CHECK(rank0.module->rows.size() == 1);
    CHECK(parse_input(print_document(rank0)) == rank0);
    CHECK_THROWS_AS(parse_input("ring Q[x]").module_presentation(), Error);
}

TEST_CASE("default field from the environment")
{
    ::unsetenv("JETFORGE_FIELD");
    CHECK(default_field_from_env() == Q);
    ::setenv("JETFORGE_FIELD", "F11", 1);
    CHECK(default_field_from_env() == Field::prime(11));
    ::setenv("JETFORGE_FIELD", "nonsense", 1);
    CHECK_THROWS_AS(default_field_from_env(), InvalidConfig);
    ::unsetenv("JETFORGE_FIELD");
}

TEST_CASE("property: printing and parsing round-trip")
{
    CheckConfig cfg;
    cfg.seed = 99;
    for (const auto& suite : suite_names())
        for (std::uint32_t t = 0; t < 20; ++t) {
            auto doc = random_instance(suite, cfg, t).doc;
            auto text = print_document(doc);
            auto again = parse_input(text);
            CHECK(again == doc);
            CHECK(print_document(again) == text);
        }
}
