#include "doctest.h"

#include "jetforge/errors.hpp"
#include "jetforge/series.hpp"
#include "support.hpp"

using namespace testing;

namespace {

AlgebraPresentation cusp() { return AlgebraPresentation(Q, {"x", "y"}, {parse_poly("y^2 - x^3")}); }

AlgebraPresentation random_algebra(Rng& rng, bool graded = false)
{
    std::uint32_t nvars = 1 + rng.below(3);
    auto all = xyz().names;
    std::vector<std::string> names(all.begin(), all.begin() + nvars);
    std::vector<Poly> rels;
    auto count = rng.below(3);
    for (std::uint32_t k = 0; k < count; ++k)
        rels.push_back(rng.poly(nvars, 3, 4));
    if (!graded)
        return AlgebraPresentation(Q, names, rels);
    // each relation replaced by its part of one fixed weighted degree
    std::vector<std::uint32_t> weights;
    for (std::uint32_t v = 0; v < nvars; ++v)
        weights.push_back(1 + rng.below(3));
    std::vector<Poly> homogeneous;
    for (const auto& r : rels) {
        if (r.is_zero())
            continue;
        auto target = grade_monomial(r.terms().front().monomial, GradingMode::induced, weights);
        std::vector<Term> keep;
        for (const auto& t : r.terms())
            if (grade_monomial(t.monomial, GradingMode::induced, weights) == target)
                keep.push_back(t);
        homogeneous.push_back(Poly::from_terms(Q, keep));
    }
    return AlgebraPresentation(Q, names, homogeneous, weights);
}

TruncSeries<Scalar> eval_on_series(const Poly& f, const std::vector<TruncSeries<Scalar>>& args)
{
    auto level = args.front().level();
    auto total = TruncSeries<Scalar>::constant(level, Scalar(Q, 0));
    for (const auto& term : f.terms()) {
        auto acc = TruncSeries<Scalar>::constant(level, term.coeff);
        for (const auto& [v, e] : term.monomial.factors())
            acc = acc * args.at(v.base()).pow(e);
        total = total + acc;
    }
    return total;
}

} // namespace

TEST_CASE("hs components of a product")
{
    auto d = hs_components(var(0) * var(1), 1);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == var(0, 0) * var(1, 0));
    CHECK(d[1] == var(0, 0) * var(1, 1) + var(0, 1) * var(1, 0));
}

TEST_CASE("hs components of a constant")
{
    auto d = hs_components(num(7), 3);
    REQUIRE(d.size() == 4);
    CHECK(d[0] == num(7));
    for (std::uint32_t i = 1; i <= 3; ++i)
        CHECK(d[i].is_zero());
    CHECK(hs_components(Poly(Q), 2) == std::vector<Poly>(3, Poly(Q)));
}

TEST_CASE("cusp components against the brute-force oracle and random points")
{
    auto f = parse_poly("y^2 - x^3");
    auto d = hs_components(f, 2);
    CHECK(str(d[0]) == "-x_0^3 + y_0^2");
    CHECK(str(d[1]) == "-3*x_0^2*x_1 + 2*y_0*y_1");
    CHECK(str(d[2]) == "-3*x_0^2*x_2 - 3*x_0*x_1^2 + 2*y_0*y_2 + y_1^2");
    for (std::uint32_t i = 0; i <= 2; ++i)
        CHECK(d[i] == naive_component(f, i));

    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        std::vector<TruncSeries<Scalar>> args;
        Assignment pt;
        for (std::uint32_t v = 0; v < 2; ++v) {
            std::vector<Scalar> c;
            for (std::uint32_t i = 0; i <= 2; ++i) {
                c.push_back(rng.scalar());
                pt.emplace(JetVar(v, i), c.back());
            }
            args.emplace_back(2, c);
        }
        auto direct = eval_on_series(f, args);
        for (std::uint32_t i = 0; i <= 2; ++i)
            CHECK(eval_at_point(d[i], pt) == direct[i]);
    }
}

TEST_CASE("hs components reject jet variables")
{
    CHECK_THROWS_AS(hs_components(var(0, 1), 2), NotABaseElement);
    CHECK_THROWS_AS(hs_components_2d(var(0, 2), 1, 1), NotABaseElement);
}

TEST_CASE("bivariate components")
{
    auto d = hs_components_2d(var(0), 2, 1);
    REQUIRE(d.size() == 3);
    for (std::uint32_t i = 0; i <= 2; ++i)
        for (std::uint32_t j = 0; j <= 1; ++j)
            CHECK(d[i][j] == Poly::variable(Q, JetVar(0, i, j)));

    auto b = [](std::uint32_t v, std::uint32_t i, std::uint32_t j) { return Poly::variable(Q, JetVar(v, i, j)); };
    auto xy = hs_components_2d(var(0) * var(1), 1, 1);
    CHECK(xy[1][1] == b(0, 0, 0) * b(1, 1, 1) + b(0, 1, 0) * b(1, 0, 1) + b(0, 0, 1) * b(1, 1, 0) +
                          b(0, 1, 1) * b(1, 0, 0));
    CHECK(str(xy[1][1]) == "x_0_0*y_1_1 + x_0_1*y_1_0 + x_1_0*y_0_1 + x_1_1*y_0_0");

    auto c = hs_components_2d(num(4), 1, 2);
    CHECK(c[0][0] == num(4));
    CHECK(c[1][2].is_zero());
    CHECK(c[0][1].is_zero());
}

TEST_CASE("jet presentation of the cusp")
{
    auto jp = jet_presentation(cusp(), 1);
    CHECK(jp.jet_vars() == std::vector<JetVar>{JetVar(0, 0), JetVar(0, 1), JetVar(1, 0), JetVar(1, 1)});
    REQUIRE(jp.relations().size() == 2);
    CHECK(to_string(jp.relations()[0], jp.names()) == "-x_0^3 + y_0^2");
    CHECK(to_string(jp.relations()[1], jp.names()) == "-3*x_0^2*x_1 + 2*y_0*y_1");

    auto flat = jp.as_algebra();
    CHECK(flat.vars() == std::vector<std::string>{"x_0", "x_1", "y_0", "y_1"});
    CHECK(jp.flat_index(JetVar(1, 1)) == 3);
}

TEST_CASE("jet presentation edge cases")
{
    AlgebraPresentation free(Q, {"x"}, {});
    auto jp = jet_presentation(free, 3);
    CHECK(jp.jet_vars().size() == 4);
    CHECK(jp.relations().empty());

    auto zero = jet_presentation(cusp(), 0);
    REQUIRE(zero.relations().size() == 1);
    CHECK(zero.relations()[0] == rename(cusp().relations()[0], [](JetVar v) { return JetVar(v.base(), 0); }));
}

TEST_CASE("algebra presentations are validated")
{
    CHECK_THROWS_AS(AlgebraPresentation(Q, {"x"}, {var(1)}), UndeclaredVariable);
    CHECK_THROWS_AS(AlgebraPresentation(Q, {"x"}, {var(0, 1)}), NotABaseElement);
    CHECK_THROWS_AS(AlgebraPresentation(Q, {"x"}, {var(0) * var(0) + var(0)}, std::vector<std::uint32_t>{1}),
                    InhomogeneousRelation);
    CHECK_THROWS_AS(AlgebraPresentation(Q, {"x", "y"}, {}, std::vector<std::uint32_t>{1}), MissingGrading);
    CHECK_THROWS_AS(AlgebraPresentation(Q, {"x"}, {Poly::constant(Field::prime(3), 1)}), FieldMismatch);
}

TEST_CASE("grading of monomials")
{
    auto m = Monomial::from_factors({{JetVar(0, 1), 1}, {JetVar(1, 2), 1}});
    CHECK(grade_monomial(m, GradingMode::structural) == 3);
    CHECK(grade_monomial(Monomial(JetVar(0, 1)), GradingMode::induced, std::vector<std::uint32_t>{2}) == 2);
    CHECK(grade_monomial(Monomial(), GradingMode::structural) == 0);
    CHECK(grade_monomial(Monomial(), GradingMode::induced, std::vector<std::uint32_t>{}) == 0);
    CHECK_THROWS_AS(grade_monomial(m, GradingMode::induced), MissingGrading);
    CHECK(!homogeneous_degree(Poly(Q), GradingMode::structural));
    CHECK(homogeneous_degree(var(0, 2) + var(1, 1) * var(0, 1), GradingMode::structural) == 2u);
}

TEST_CASE("co-truncation")
{
    CHECK(cotruncation_subset_check(cusp(), 1, 2).ok);
    CHECK(cotruncation_subset_check(cusp(), 0, 1).ok);
    CHECK(cotruncation_subset_check(AlgebraPresentation(Q, {"x"}, {}), 2, 4).ok);
    CHECK_THROWS_AS(cotruncation_subset_check(cusp(), 2, 2), BadLevels);
    CHECK_THROWS_AS(cotruncation_subset_check(cusp(), 3, 1), BadLevels);
}

TEST_CASE("induced morphisms")
{
    AlgebraPresentation ax(Q, {"x"}, {});
    AlgebraPresentation au(Q, {"u"}, {});
    auto fn = induced_morphism(AlgebraMorphism(ax, au, {var(0) * var(0)}), 1);
    CHECK(fn.images().at(JetVar(0, 1)) == num(2) * var(0, 0) * var(0, 1));
    CHECK(fn.images().at(JetVar(0, 0)) == var(0, 0) * var(0, 0));

    AlgebraPresentation a2(Q, {"x", "y"}, {});
    auto id = induced_morphism(AlgebraMorphism(a2, a2, {var(0), var(1)}), 3);
    for (const auto& [v, image] : id.images())
        CHECK(image == Poly::variable(Q, v));

    auto constant = induced_morphism(AlgebraMorphism(ax, au, {num(5)}), 2);
    CHECK(constant.images().at(JetVar(0, 0)) == num(5));
    CHECK(constant.images().at(JetVar(0, 1)).is_zero());
    CHECK(constant.images().at(JetVar(0, 2)).is_zero());

    CHECK_THROWS_AS(AlgebraMorphism(ax, au, {}), DimensionMismatch);
    CHECK_THROWS_AS(AlgebraMorphism(ax, au, {var(1)}), UndeclaredVariable);
}

TEST_CASE("bigrade commutation examples")
{
    CHECK(bigrade_commute_check(AlgebraPresentation(Q, {"x"}, {}), 2, 1).ok);
    auto sets = bigrade_generator_sets(cusp(), 1, 1);
    CHECK(sets.nested_nm.size() == 4);
    CHECK(sets.nested_mn.size() == 4);
    CHECK(sets.direct.size() == 4);
    CHECK(bigrade_commute_check(cusp(), 1, 1).ok);
    CHECK(bigrade_commute_check(cusp(), 2, 0).ok);
    CHECK(bigrade_commute_check(cusp(), 0, 2).ok);

    VarNames names{{"x", "y"}, true};
    CHECK(normalized_generator_set(sets.nested_nm, names) == normalized_generator_set(sets.direct, names));
    CHECK(normalized_generator_set({Poly(Q), var(0), var(0)}, names) == std::vector<std::string>{"x_0"});
}

TEST_CASE("property: Leibniz rule and linearity")
{
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = rng.poly(), g = rng.poly();
        auto n = rng.below(5);
        auto df = hs_components(f, n), dg = hs_components(g, n), dfg = hs_components(f * g, n);
        auto a = rng.scalar(), b = rng.scalar();
        auto lin = hs_components(a * f + b * g, n);
        for (std::uint32_t i = 0; i <= n; ++i) {
            Poly sum(Q);
            for (std::uint32_t k = 0; k <= i; ++k)
                sum += df[k] * dg[i - k];
            CHECK(dfg[i] == sum);
            CHECK(lin[i] == a * df[i] + b * dg[i]);
        }
    }
}

TEST_CASE("property: components agree with the brute-force oracle")
{
    Rng rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        auto f = rng.poly();
        auto n = rng.below(4);
        auto d = hs_components(f, n);
        for (std::uint32_t i = 0; i <= n; ++i)
            CHECK(d[i] == naive_component(f, i));
    }
}

TEST_CASE("property: structural and induced homogeneity")
{
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        auto f = rng.poly();
        auto n = rng.below(5);
        auto d = hs_components(f, n);
        for (std::uint32_t i = 0; i <= n; ++i)
            for (const auto& t : d[i].terms())
                CHECK(grade_monomial(t.monomial, GradingMode::structural) == i);

        auto a = random_algebra(rng, true);
        auto jp = jet_presentation(a, n);
        for (std::size_t k = 0; k < a.relations().size(); ++k) {
            auto deg = homogeneous_degree(a.relations()[k], GradingMode::induced, a.grading());
            REQUIRE(deg);
            for (std::uint32_t i = 0; i <= n; ++i)
                for (const auto& t : jp.relation(k, i).terms())
                    CHECK(jp.induced_degree(t.monomial) == *deg);
        }
    }
}

TEST_CASE("property: functoriality")
{
    Rng rng(24);
    for (int trial = 0; trial < 60; ++trial) {
        auto src = random_algebra(rng);
        AlgebraPresentation tgt(Q, {"u", "v"}, {});
        std::vector<Poly> images;
        for (std::size_t v = 0; v < src.var_count(); ++v)
            images.push_back(rng.poly(2, 2, 3));
        AlgebraMorphism phi(src, tgt, images);
        auto n = rng.below(4);
        auto fn = induced_morphism(phi, n);
        auto g = rng.poly(static_cast<std::uint32_t>(src.var_count()), 3, 4);
        auto lhs = hs_components(g, n), rhs = hs_components(phi.apply(g), n);
        for (std::uint32_t i = 0; i <= n; ++i)
            CHECK(fn.apply(lhs[i]) == rhs[i]);
    }
}

TEST_CASE("property: bigrade commutation and co-truncation")
{
    Rng rng(25);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_algebra(rng);
        auto n = rng.below(3), m = rng.below(3);
        CHECK(bigrade_commute_check(a, n, m).ok);
        CHECK(cotruncation_subset_check(a, n, n + 1 + rng.below(2)).ok);
    }
}
