#include "jetforge/hs_engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "jetforge/errors.hpp"
#include "jetforge/series.hpp"

namespace jetforge {

namespace {

void require_base(const Poly& f)
{
    for (const auto& t : f.terms())
        for (const auto& [v, e] : t.monomial.factors())
            if (!v.is_base())
                throw NotABaseElement("polynomial contains a jet variable of positive order");
}

// Truncated bivariate series: coefficient (i, j) of s^i t^j, row-major.
class Grid {
public:
    Grid(std::uint32_t n, std::uint32_t m, Field field)
        : n_(n), m_(m), cells_(std::size_t{n + 1} * (m + 1), Poly(field))
    {
    }

    Poly& at(std::uint32_t i, std::uint32_t j) { return cells_[std::size_t{i} * (m_ + 1) + j]; }
    const Poly& at(std::uint32_t i, std::uint32_t j) const { return cells_[std::size_t{i} * (m_ + 1) + j]; }

    friend Grid operator*(const Grid& a, const Grid& b)
    {
        Grid r(a.n_, a.m_, a.cells_[0].field());
        for (std::uint32_t i1 = 0; i1 <= a.n_; ++i1)
            for (std::uint32_t j1 = 0; j1 <= a.m_; ++j1) {
                const auto& x = a.at(i1, j1);
                if (x.is_zero())
                    continue;
                for (std::uint32_t i2 = 0; i1 + i2 <= a.n_; ++i2)
                    for (std::uint32_t j2 = 0; j1 + j2 <= a.m_; ++j2) {
                        const auto& y = b.at(i2, j2);
                        if (!y.is_zero())
                            r.at(i1 + i2, j1 + j2) += x * y;
                    }
            }
        return r;
    }

    Grid& operator+=(const Grid& b)
    {
        for (std::size_t k = 0; k < cells_.size(); ++k)
            cells_[k] += b.cells_[k];
        return *this;
    }

private:
    std::uint32_t n_, m_;
    std::vector<Poly> cells_;
};

} // namespace

// ------------------------------------------------------ AlgebraPresentation

AlgebraPresentation::AlgebraPresentation(Field field, std::vector<std::string> vars, std::vector<Poly> relations,
                                         std::optional<std::vector<std::uint32_t>> grading)
    : field_(field), vars_(std::move(vars)), relations_(std::move(relations)), grading_(std::move(grading))
{
    if (grading_ && grading_->size() != vars_.size())
        throw MissingGrading("grading must assign a degree to each of the " + std::to_string(vars_.size()) +
                             " variables");
    for (std::size_t k = 0; k < relations_.size(); ++k) {
        const auto& f = relations_[k];
        if (f.field() != field_)
            throw FieldMismatch("relation " + std::to_string(k) + " is over " + f.field().name());
        for (auto v : f.variables()) {
            if (!v.is_base())
                throw NotABaseElement("relation " + std::to_string(k) + " contains a jet variable");
            if (v.base() >= vars_.size())
                throw UndeclaredVariable("relation " + std::to_string(k) + " uses undeclared variable index " +
                                         std::to_string(v.base()));
        }
        if (grading_ && !f.is_zero() && !homogeneous_degree(f, GradingMode::induced, grading_))
            throw InhomogeneousRelation("relation " + std::to_string(k) + " is not homogeneous: " +
                                        to_string(f, base_names()));
    }
}

// ------------------------------------------------------------------ grading

std::uint32_t grade_monomial(const Monomial& m, GradingMode mode,
                             const std::optional<std::vector<std::uint32_t>>& grading)
{
    if (mode == GradingMode::induced && !grading)
        throw MissingGrading("induced degree requires a grading of the base variables");
    std::uint32_t d = 0;
    for (const auto& [v, e] : m.factors()) {
        if (mode == GradingMode::structural)
            d += e * v.order();
        else {
            if (v.base() >= grading->size())
                throw MissingGrading("no degree for variable index " + std::to_string(v.base()));
            d += e * (*grading)[v.base()];
        }
    }
    return d;
}

std::optional<std::uint32_t> homogeneous_degree(const Poly& f, GradingMode mode,
                                                const std::optional<std::vector<std::uint32_t>>& grading)
{
    std::optional<std::uint32_t> deg;
    for (const auto& t : f.terms()) {
        auto d = grade_monomial(t.monomial, mode, grading);
        if (deg && *deg != d)
            return std::nullopt;
        deg = d;
    }
    return deg;
}

// ------------------------------------------------------------ hs components

std::vector<Poly> hs_components(const Poly& f, std::uint32_t n)
{
    require_base(f);
    const auto field = f.field();
    using Series = TruncSeries<Poly>;

    // powers[x] holds S_x^1, S_x^2, ... computed on demand
    std::map<std::uint32_t, std::vector<Series>> powers;
    auto power = [&](std::uint32_t x, std::uint32_t e) -> const Series& {
        auto& list = powers[x];
        if (list.empty()) {
            std::vector<Poly> c;
            for (std::uint32_t i = 0; i <= n; ++i)
                c.push_back(Poly::variable(field, JetVar(x, i)));
            list.emplace_back(n, std::move(c));
        }
        while (list.size() < e)
            list.push_back(list.back() * list.front());
        return list[e - 1];
    };

    auto total = Series::constant(n, Poly(field));
    for (const auto& t : f.terms()) {
        auto term = Series::constant(n, Poly::constant(t.coeff));
        for (const auto& [v, e] : t.monomial.factors())
            term = term * power(v.base(), e);
        total = total + term;
    }
    return total.coeffs();
}

std::vector<std::vector<Poly>> hs_components_2d(const Poly& f, std::uint32_t n, std::uint32_t m)
{
    require_base(f);
    const auto field = f.field();

    std::map<std::uint32_t, std::vector<Grid>> powers;
    auto power = [&](std::uint32_t x, std::uint32_t e) -> const Grid& {
        auto& list = powers[x];
        if (list.empty()) {
            Grid g(n, m, field);
            for (std::uint32_t i = 0; i <= n; ++i)
                for (std::uint32_t j = 0; j <= m; ++j)
                    g.at(i, j) = Poly::variable(field, JetVar(x, i, j));
            list.push_back(std::move(g));
        }
        while (list.size() < e)
            list.push_back(list.back() * list.front());
        return list[e - 1];
    };

    Grid total(n, m, field);
    for (const auto& t : f.terms()) {
        Grid term(n, m, field);
        term.at(0, 0) = Poly::constant(t.coeff);
        for (const auto& [v, e] : t.monomial.factors())
            term = term * power(v.base(), e);
        total += term;
    }

    std::vector<std::vector<Poly>> out(n + 1);
    for (std::uint32_t i = 0; i <= n; ++i)
        for (std::uint32_t j = 0; j <= m; ++j)
            out[i].push_back(total.at(i, j));
    return out;
}

// ---------------------------------------------------------- JetPresentation

JetPresentation::JetPresentation(AlgebraPresentation source, std::uint32_t level)
    : source_(std::move(source)), level_(level)
{
    for (std::uint32_t x = 0; x < source_.var_count(); ++x)
        for (std::uint32_t i = 0; i <= level_; ++i)
            jet_vars_.emplace_back(x, i);
    relations_.reserve(source_.relations().size() * (level_ + 1));
    for (const auto& f : source_.relations()) {
        auto comps = hs_components(f, level_);
        relations_.insert(relations_.end(), comps.begin(), comps.end());
    }
}

std::uint32_t JetPresentation::structural_degree(const Monomial& m) const
{
    return grade_monomial(m, GradingMode::structural);
}

std::uint32_t JetPresentation::induced_degree(const Monomial& m) const
{
    return grade_monomial(m, GradingMode::induced, source_.grading());
}

AlgebraPresentation JetPresentation::as_algebra() const
{
    std::vector<std::string> names;
    std::optional<std::vector<std::uint32_t>> grading;
    if (source_.grading())
        grading.emplace();
    for (auto v : jet_vars_) {
        names.push_back(source_.vars()[v.base()] + "_" + std::to_string(v.order()));
        if (grading)
            grading->push_back((*source_.grading())[v.base()]);
    }
    std::vector<Poly> rels;
    rels.reserve(relations_.size());
    for (const auto& r : relations_)
        rels.push_back(rename(r, [this](JetVar v) { return JetVar(flat_index(v)); }));
    return AlgebraPresentation(source_.field(), std::move(names), std::move(rels), std::move(grading));
}

JetPresentation jet_presentation(const AlgebraPresentation& a, std::uint32_t n)
{
    return JetPresentation(a, n);
}

// -------------------------------------------------------- BiJetPresentation

BiJetPresentation::BiJetPresentation(AlgebraPresentation source, std::uint32_t n, std::uint32_t m)
    : source_(std::move(source)), n_(n), m_(m)
{
    for (std::uint32_t x = 0; x < source_.var_count(); ++x)
        for (std::uint32_t i = 0; i <= n_; ++i)
            for (std::uint32_t j = 0; j <= m_; ++j)
                jet_vars_.emplace_back(x, i, j);
    for (const auto& f : source_.relations())
        for (auto& row : hs_components_2d(f, n_, m_))
            relations_.insert(relations_.end(), row.begin(), row.end());
}

// ------------------------------------------------------------- cotruncation

CheckOutcome cotruncation_subset_check(const AlgebraPresentation& a, std::uint32_t n, std::uint32_t m)
{
    if (m <= n)
        throw BadLevels("co-truncation needs m > n, got n=" + std::to_string(n) + ", m=" + std::to_string(m));
    auto low = jet_presentation(a, n);
    auto high = jet_presentation(a, m);
    CheckOutcome out;
    for (std::size_t k = 0; k < a.relations().size(); ++k)
        for (std::uint32_t i = 0; i <= n; ++i)
            if (low.relation(k, i) != high.relation(k, i)) {
                out.ok = false;
                out.report += "relation " + std::to_string(k) + " order " + std::to_string(i) + ": level " +
                              std::to_string(n) + " gives " + to_string(low.relation(k, i), low.names()) +
                              ", level " + std::to_string(m) + " gives " +
                              to_string(high.relation(k, i), high.names()) + "\n";
            }
    if (out.ok)
        out.report = std::to_string(low.relations().size()) + " level-" + std::to_string(n) +
                     " generators found verbatim at level " + std::to_string(m);
    return out;
}

// ---------------------------------------------------------------- morphisms

AlgebraMorphism::AlgebraMorphism(AlgebraPresentation source, AlgebraPresentation target, std::vector<Poly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (images_.size() != source_.var_count())
        throw DimensionMismatch("morphism needs one image per source variable");
    if (source_.field() != target_.field())
        throw FieldMismatch("morphism between rings over different fields");
    for (const auto& p : images_) {
        if (p.field() != target_.field())
            throw FieldMismatch("morphism image over the wrong field");
        for (auto v : p.variables())
            if (!v.is_base() || v.base() >= target_.var_count())
                throw UndeclaredVariable("morphism image uses a variable outside the target ring");
    }
}

Poly AlgebraMorphism::apply(const Poly& g) const
{
    std::map<JetVar, Poly> map;
    for (std::uint32_t x = 0; x < images_.size(); ++x)
        map.emplace(JetVar(x), images_[x]);
    // Source variables without an image would leak into the target ring.
    for (auto v : g.variables())
        if (!map.count(v))
            throw UndeclaredVariable("polynomial is not in the source ring");
    return substitute(g, map);
}

JetMorphism::JetMorphism(JetPresentation source, JetPresentation target, std::map<JetVar, Poly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (source_.level() != target_.level())
        throw BadLevels("jet morphism between different levels");
}

Poly JetMorphism::apply(const Poly& g) const
{
    for (auto v : g.variables())
        if (!images_.count(v))
            throw UndeclaredVariable("polynomial is not in the source jet ring");
    return substitute(g, images_);
}

JetMorphism induced_morphism(const AlgebraMorphism& phi, std::uint32_t n)
{
    std::map<JetVar, Poly> images;
    for (std::uint32_t x = 0; x < phi.images().size(); ++x) {
        auto comps = hs_components(phi.images()[x], n);
        for (std::uint32_t i = 0; i <= n; ++i)
            images.emplace(JetVar(x, i), std::move(comps[i]));
    }
    return JetMorphism(jet_presentation(phi.source(), n), jet_presentation(phi.target(), n), std::move(images));
}

// ---------------------------------------------------------------- bigrading

namespace {

// Jets of jets: level `outer` jets of the level `inner` jet algebra, renamed
// so that (x^{(j)})^{(i)} becomes x^{(i,j)} when outer_first, and
// (x^{(i)})^{(j)} becomes x^{(i,j)} otherwise.
std::vector<Poly> nested_generators(const AlgebraPresentation& a, std::uint32_t inner, std::uint32_t outer,
                                    bool outer_first)
{
    auto inner_jets = jet_presentation(a, inner);
    auto outer_jets = jet_presentation(inner_jets.as_algebra(), outer);
    auto to_bivariate = [inner, outer_first](JetVar v) {
        // v = (flat variable b)^{(order)} with b = x * (inner + 1) + inner order
        std::uint32_t x = v.base() / (inner + 1);
        std::uint32_t inner_order = v.base() % (inner + 1);
        return outer_first ? JetVar(x, v.order(), inner_order) : JetVar(x, inner_order, v.order());
    };
    std::vector<Poly> out;
    out.reserve(outer_jets.relations().size());
    for (const auto& r : outer_jets.relations())
        out.push_back(rename(r, to_bivariate));
    return out;
}

} // namespace

BigradeSets bigrade_generator_sets(const AlgebraPresentation& a, std::uint32_t n, std::uint32_t m)
{
    BigradeSets sets;
    sets.nested_nm = nested_generators(a, m, n, true);
    sets.nested_mn = nested_generators(a, n, m, false);
    sets.direct = BiJetPresentation(a, n, m).relations();
    return sets;
}

std::vector<std::string> normalized_generator_set(const std::vector<Poly>& gens, const VarNames& names)
{
    std::set<std::string> set;
    for (const auto& g : gens)
        if (!g.is_zero())
            set.insert(to_string(g, names));
    return {set.begin(), set.end()};
}

CheckOutcome bigrade_commute_check(const AlgebraPresentation& a, std::uint32_t n, std::uint32_t m)
{
    auto sets = bigrade_generator_sets(a, n, m);
    VarNames names{a.vars(), true};
    auto nm = normalized_generator_set(sets.nested_nm, names);
    auto mn = normalized_generator_set(sets.nested_mn, names);
    auto direct = normalized_generator_set(sets.direct, names);

    CheckOutcome out;
    out.ok = nm == direct && mn == direct;
    std::ostringstream report;
    report << "(n,m)=(" << n << "," << m << "): " << sets.nested_nm.size() << " / " << sets.nested_mn.size()
           << " / " << sets.direct.size() << " generators (n∘m / m∘n / bivariate), " << direct.size()
           << " distinct nonzero";
    if (!out.ok) {
        auto diff = [&](const std::vector<std::string>& x, const char* label) {
            std::vector<std::string> only;
            std::set_symmetric_difference(x.begin(), x.end(), direct.begin(), direct.end(),
                                          std::back_inserter(only));
            for (const auto& s : only)
                report << "\n  " << label << " differs at: " << s;
        };
        diff(nm, "n∘m");
        diff(mn, "m∘n");
    }
    out.report = report.str();
    return out;
}

} // namespace jetforge
