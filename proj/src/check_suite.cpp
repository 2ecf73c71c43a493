#include "jetforge/check_suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "jetforge/errors.hpp"
#include "jetforge/p1.hpp"
#include "jetforge/series.hpp"

namespace jetforge {

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {
        "leibniz",         "structural_grading", "induced_grading", "jacobian_identity", "bigrade_commute",
        "cotruncation",    "functoriality",      "twisted_ring_hom", "sym_theorem",      "cotangent_theorem",
        "base_change",     "zigzag",             "p1_cocycle",
    };
    return names;
}

void CheckConfig::validate() const
{
    for (const auto& s : suites)
        if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw UnknownSuite("no suite named '" + s + "'");
    if (trials == 0)
        throw InvalidConfig("trials must be positive");
    if (max_vars < 1 || max_vars > 3)
        throw InvalidConfig("max_vars must lie in 1..3");
    if (max_relations > 2)
        throw InvalidConfig("max_relations must be at most 2");
    if (max_degree < 1 || max_degree > 3)
        throw InvalidConfig("max_degree must lie in 1..3");
    if (max_level < 1 || max_level > 4)
        throw InvalidConfig("max_level must lie in 1..4");
    if (max_bilevel > 2)
        throw InvalidConfig("max_bilevel must be at most 2");
    if (coeff_min < -9 || coeff_max > 9 || coeff_min > coeff_max || (coeff_min == 0 && coeff_max == 0))
        throw InvalidConfig("coefficient range must be a nonzero subrange of [-9, 9]");
    if (jobs == 0)
        throw InvalidConfig("jobs must be positive");
}

std::vector<std::string> CheckConfig::selected_suites() const
{
    if (suites.empty() || std::find(suites.begin(), suites.end(), "all") != suites.end())
        return suite_names();
    std::vector<std::string> out;
    for (const auto& name : suite_names())
        if (std::find(suites.begin(), suites.end(), name) != suites.end())
            out.push_back(name);
    return out;
}

namespace {

enum Purpose : std::uint64_t { kInstance = 1, kOracle = 2 };

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& suite, std::uint32_t trial, Purpose purpose)
{
    auto it = std::find(suite_names().begin(), suite_names().end(), suite);
    auto index = static_cast<std::uint64_t>(it - suite_names().begin());
    std::uint64_t h = splitmix(seed);
    h = splitmix(h ^ index);
    h = splitmix(h ^ trial);
    return splitmix(h ^ purpose);
}

// mt19937_64 with a fixed reduction so streams match across standard libraries.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do
            r = engine_();
        while (r >= limit);
        return r % bound;
    }

    int range(int lo, int hi)
    {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    std::uint32_t range(std::uint32_t lo, std::uint32_t hi)
    {
        return lo + static_cast<std::uint32_t>(below(std::uint64_t{hi} - lo + 1));
    }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 engine_;
};

const std::vector<std::string> kSourceNames = {"x", "y", "z"};
const std::vector<std::string> kTargetNames = {"u", "v", "w"};

// Exponent vectors of total degree <= max_degree in nvars variables.
std::vector<std::vector<std::uint32_t>> exponent_vectors(std::uint32_t nvars, std::uint32_t max_degree)
{
    std::vector<std::vector<std::uint32_t>> out{{}};
    for (std::uint32_t v = 0; v < nvars; ++v) {
        std::vector<std::vector<std::uint32_t>> next;
        for (const auto& e : out) {
            std::uint32_t used = 0;
            for (auto k : e)
                used += k;
            for (std::uint32_t k = 0; used + k <= max_degree; ++k) {
                auto f = e;
                f.push_back(k);
                next.push_back(std::move(f));
            }
        }
        out = std::move(next);
    }
    return out;
}

Monomial monomial_of(const std::vector<std::uint32_t>& exps)
{
    std::vector<Monomial::Factor> factors;
    for (std::uint32_t v = 0; v < exps.size(); ++v)
        if (exps[v])
            factors.emplace_back(JetVar(v), exps[v]);
    return Monomial::from_factors(std::move(factors));
}

Scalar random_coeff(Stream& s, Field field, const CheckConfig& cfg)
{
    int c = 0;
    while (c == 0)
        c = s.range(cfg.coeff_min, cfg.coeff_max);
    return Scalar(field, c);
}

Poly poly_from(Stream& s, Field field, const std::vector<std::vector<std::uint32_t>>& pool, std::uint32_t terms,
               const CheckConfig& cfg)
{
    // distinct monomials, so coefficients stay inside the configured range
    std::vector<std::size_t> order(pool.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        order[k] = k;
    Poly p(field);
    for (std::size_t t = 0; t < std::min<std::size_t>(terms, order.size()); ++t) {
        std::swap(order[t], order[t + s.below(order.size() - t)]);
        p += Poly::monomial(random_coeff(s, field, cfg), monomial_of(pool[order[t]]));
    }
    return p;
}

// At most six terms; the zero polynomial occurs with positive probability.
Poly random_poly(Stream& s, Field field, std::uint32_t nvars, std::uint32_t max_degree, const CheckConfig& cfg)
{
    if (s.chance(1, 12))
        return Poly(field);
    return poly_from(s, field, exponent_vectors(nvars, max_degree), s.range(1u, 6u), cfg);
}

Poly random_homogeneous(Stream& s, Field field, const std::vector<std::uint32_t>& weights, std::uint32_t max_degree,
                        const CheckConfig& cfg)
{
    auto all = exponent_vectors(static_cast<std::uint32_t>(weights.size()), max_degree);
    auto weight = [&](const std::vector<std::uint32_t>& e) {
        std::uint32_t w = 0;
        for (std::size_t v = 0; v < e.size(); ++v)
            w += e[v] * weights[v];
        return w;
    };
    auto target = weight(all[1 + s.below(all.size() - 1)]);
    std::vector<std::vector<std::uint32_t>> pool;
    for (const auto& e : all)
        if (weight(e) == target)
            pool.push_back(e);
    return poly_from(s, field, pool, s.range(1u, 4u), cfg);
}

std::uint32_t level_cap(const std::string& suite, const CheckConfig& cfg)
{
    if (suite == "bigrade_commute")
        return cfg.max_bilevel;
    if (suite == "sym_theorem" || suite == "cotangent_theorem" || suite == "p1_cocycle")
        return std::min(cfg.max_level, 3u);
    return cfg.max_level;
}

bool uses_module(const std::string& suite) { return suite == "sym_theorem" || suite == "base_change"; }
bool uses_morphism(const std::string& suite) { return suite == "functoriality" || suite == "base_change"; }

std::uint32_t element_count(const std::string& suite)
{
    if (suite == "leibniz" || suite == "twisted_ring_hom")
        return 2;
    if (suite == "structural_grading" || suite == "induced_grading" || suite == "jacobian_identity" ||
        suite == "functoriality")
        return 1;
    return 0;
}

} // namespace

std::uint64_t oracle_seed(const CheckConfig& config, const std::string& suite, std::uint32_t trial)
{
    return derive_seed(config.seed, suite, trial, kOracle);
}

SuiteInstance random_instance(const std::string& suite, const CheckConfig& cfg, std::uint32_t trial)
{
    Stream s(derive_seed(cfg.seed, suite, trial, kInstance));
    const bool degenerate = trial < 2;
    const Field field = Field::rationals();
    SuiteInstance inst;
    auto& doc = inst.doc;
    doc.field = field;

    if (suite == "p1_cocycle") {
        doc.vars = {"t0", "t1"};
        inst.n = trial == 0 ? 0 : s.range(0u, level_cap(suite, cfg));
        inst.d = trial == 0 ? 0 : s.range(-2, 2);
        return inst;
    }
    if (suite == "zigzag") {
        doc.vars = {"x"};
        inst.n = trial == 0 ? 0 : s.range(0u, cfg.max_level);
        return inst;
    }

    const auto nvars = s.range(1u, cfg.max_vars);
    doc.vars.assign(kSourceNames.begin(), kSourceNames.begin() + nvars);

    if (suite == "cotruncation") {
        inst.n = trial == 0 ? 0 : s.range(0u, cfg.max_level - 1);
        inst.m = trial == 0 ? 1 : s.range(inst.n + 1, cfg.max_level);
    } else {
        inst.n = trial == 0 ? 0 : s.range(trial == 1 ? 1u : 0u, std::max(level_cap(suite, cfg), 1u));
        if (suite == "bigrade_commute")
            inst.m = trial == 0 ? 0 : s.range(0u, cfg.max_bilevel);
    }

    const bool graded = suite == "induced_grading";
    std::vector<std::uint32_t> weights;
    if (graded) {
        for (std::uint32_t v = 0; v < nvars; ++v)
            weights.push_back(s.range(1u, 3u));
        doc.grading = weights;
    }
    auto draw = [&] {
        return graded ? random_homogeneous(s, field, weights, cfg.max_degree, cfg)
                      : random_poly(s, field, nvars, cfg.max_degree, cfg);
    };

    const auto nrel = degenerate ? 0u : s.range(0u, cfg.max_relations);
    for (std::uint32_t k = 0; k < nrel; ++k) {
        auto p = draw();
        doc.relations.push_back(NamedPoly{"r" + std::to_string(k + 1), std::move(p)});
    }

    const auto nelem = element_count(suite);
    for (std::uint32_t k = 0; k < nelem; ++k) {
        bool zero = trial == 0 || (trial == 1 && k == 0);
        doc.elements.push_back(NamedPoly{std::string(1, static_cast<char>('f' + k)), zero ? Poly(field) : draw()});
    }

    if (uses_module(suite)) {
        ModuleDecl mod;
        mod.rank = trial == 0 ? 0 : trial == 1 ? 1 : s.range(0u, 2u);
        const auto rows = degenerate ? 0u : s.range(0u, cfg.max_relations);
        for (std::uint32_t k = 0; k < rows; ++k) {
            std::vector<Poly> row;
            for (std::uint32_t l = 0; l < mod.rank; ++l)
                row.push_back(random_poly(s, field, nvars, cfg.max_degree, cfg));
            mod.rows.push_back(std::move(row));
        }
        doc.module = std::move(mod);
    }

    if (uses_morphism(suite)) {
        MorphismDecl mor;
        mor.field = field;
        const auto ntarget = s.range(1u, cfg.max_vars);
        mor.target_vars.assign(kTargetNames.begin(), kTargetNames.begin() + ntarget);
        if (!degenerate && s.chance(1, 2))
            mor.target_relations.push_back(
                NamedPoly{"h1", random_poly(s, field, ntarget, cfg.max_degree, cfg)});
        for (std::uint32_t v = 0; v < nvars; ++v)
            mor.images.push_back(trial == 0 ? Poly::constant(random_coeff(s, field, cfg))
                                            : random_poly(s, field, ntarget, std::min(cfg.max_degree, 2u), cfg));
        doc.morphism = std::move(mor);
    }
    return inst;
}

namespace {

// Scalar[e]/(e^2), for first derivatives along one coordinate.
struct Dual {
    Scalar a, b;

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    Dual operator-() const { return {-a, -b}; }
    Dual& operator+=(const Dual& o)
    {
        a += o.a;
        b += o.b;
        return *this;
    }
    friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
    friend bool operator==(const Dual&, const Dual&) = default;
};

Dual zero_like(const Dual& x) { return {jetforge::zero_like(x.a), jetforge::zero_like(x.a)}; }
Dual one_like(const Dual& x) { return {jetforge::one_like(x.a), jetforge::zero_like(x.a)}; }


Scalar lift(const Scalar& c, const Scalar&) { return c; }
Dual lift(const Scalar& c, const Dual&) { return {c, jetforge::zero_like(c)}; }

// f evaluated on one truncated series per base variable, by plain series
// multiplication; shares no code with hs_components.
template <class C>
TruncSeries<C> eval_series(const Poly& f, const std::vector<TruncSeries<C>>& args)
{
    const auto level = args.front().level();
    const C& sample = args.front()[0];
    auto total = TruncSeries<C>::constant(level, zero_like(sample));
    for (const auto& term : f.terms()) {
        auto acc = TruncSeries<C>::constant(level, lift(term.coeff, sample));
        for (const auto& [v, e] : term.monomial.factors())
            acc = acc * args.at(v.base()).pow(e);
        total = total + acc;
    }
    return total;
}

Scalar random_point_value(Stream& s, Field field)
{
    if (!field.is_rational())
        return Scalar(field, s.range(-40, 40));
    return Scalar(field, mpz_class(s.range(-20, 20)), mpz_class(s.range(1, 7)));
}

constexpr int kOraclePoints = 20;

struct RandomPoint {
    std::vector<TruncSeries<Scalar>> series; // one per base variable
    Assignment assignment;                   // x^{(i)} -> coefficient i
};

RandomPoint random_point(Stream& s, Field field, std::size_t nvars, std::uint32_t n)
{
    RandomPoint p;
    for (std::uint32_t x = 0; x < nvars; ++x) {
        std::vector<Scalar> c;
        for (std::uint32_t i = 0; i <= n; ++i) {
            c.push_back(random_point_value(s, field));
            p.assignment.emplace(JetVar(x, i), c.back());
        }
        p.series.emplace_back(n, std::move(c));
    }
    return p;
}

std::vector<TruncSeries<Dual>> perturbed(const RandomPoint& p, std::uint32_t var, std::uint32_t order)
{
    std::vector<TruncSeries<Dual>> out;
    for (std::uint32_t x = 0; x < p.series.size(); ++x) {
        std::vector<Dual> c;
        const auto& s = p.series[x];
        for (std::uint32_t i = 0; i <= s.level(); ++i)
            c.push_back({s[i], Scalar(s[i].field(), x == var && i == order ? 1 : 0)});
        out.emplace_back(s.level(), std::move(c));
    }
    return out;
}

std::string show(const Poly& f, const VarNames& names) { return to_string(f, names); }

TrialResult check_leibniz(const SuiteInstance& inst, std::uint64_t seed)
{
    const auto& doc = inst.doc;
    const auto n = inst.n;
    const auto names = VarNames{doc.vars, true};
    std::vector<Poly> els;
    for (const auto& e : doc.elements)
        els.push_back(e.poly);
    if (els.empty())
        els.push_back(Poly(doc.field));

    TrialResult r;
    struct Pair {
        Poly fg;
        std::vector<Poly> dfg, rhs;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < els.size(); ++a)
        for (std::size_t b = a; b < els.size(); ++b) {
            auto df = hs_components(els[a], n);
            auto dg = hs_components(els[b], n);
            Pair p{els[a] * els[b], {}, {}};
            p.dfg = hs_components(p.fg, n);
            for (std::uint32_t i = 0; i <= n; ++i) {
                Poly sum(doc.field);
                for (std::uint32_t k = 0; k <= i; ++k)
                    sum += df[k] * dg[i - k];
                p.rhs.push_back(sum);
                if (r.ok && p.dfg[i] != sum) {
                    r.ok = false;
                    r.detail = "d_" + std::to_string(i) + "(fg) = " + show(p.dfg[i], names) +
                               " but the Leibniz sum is " + show(sum, names);
                }
            }
            // k-linearity with fixed weights 2 and -3
            const Scalar two(doc.field, 2), minus_three(doc.field, -3);
            auto lin = hs_components(two * els[a] + minus_three * els[b], n);
            for (std::uint32_t i = 0; i <= n; ++i)
                if (r.ok && lin[i] != two * df[i] + minus_three * dg[i]) {
                    r.ok = false;
                    r.detail = "d_" + std::to_string(i) + " is not linear on 2f - 3g";
                }
            pairs.push_back(std::move(p));
        }

    Stream s(seed);
    bool numeric_ok = true;
    for (int k = 0; k < kOraclePoints && numeric_ok; ++k) {
        auto point = random_point(s, doc.field, doc.vars.size(), n);
        for (const auto& p : pairs) {
            auto direct = eval_series(p.fg, point.series);
            for (std::uint32_t i = 0; i <= n; ++i)
                if (eval_at_point(p.dfg[i], point.assignment) != direct[i] ||
                    eval_at_point(p.rhs[i], point.assignment) != direct[i])
                    numeric_ok = false;
        }
    }
    r.oracle_used = true;
    r.oracle_agrees = numeric_ok == r.ok;
    if (!r.oracle_agrees)
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("random-point oracle disagrees with the symbolic verdict");
    r.ok = r.ok && r.oracle_agrees;
    return r;
}

TrialResult check_jacobian(const SuiteInstance& inst, std::uint64_t seed)
{
    const auto& doc = inst.doc;
    const auto n = inst.n;
    const auto names = VarNames{doc.vars, true};
    const auto nvars = static_cast<std::uint32_t>(doc.vars.size());
    TrialResult r;

    struct Entry {
        std::size_t element;
        std::uint32_t i, j, l;
        Poly lhs, rhs;
    };
    std::vector<Entry> entries;
    for (std::size_t e = 0; e < doc.elements.size(); ++e) {
        const auto& f = doc.elements[e].poly;
        auto df = hs_components(f, n);
        for (std::uint32_t l = 0; l < nvars; ++l) {
            auto dpartial = hs_components(partial_derivative(f, JetVar(l)), n);
            for (std::uint32_t i = 0; i <= n; ++i)
                for (std::uint32_t j = 0; j <= n; ++j) {
                    Entry en{e, i, j, l, partial_derivative(df[i], JetVar(l, j)),
                             j <= i ? dpartial[i - j] : Poly(doc.field)};
                    if (r.ok && en.lhs != en.rhs) {
                        r.ok = false;
                        r.detail = "d(d_" + std::to_string(i) + " f)/d " + names.render(JetVar(l, j)) + " = " +
                                   show(en.lhs, names) + " but d_" + std::to_string(int(i) - int(j)) + "(df/d" +
                                   doc.vars[l] + ") = " + show(en.rhs, names);
                    }
                    entries.push_back(std::move(en));
                }
        }
    }

    // e-parts of f(X + e t^j) and f(X + e) give both sides independently.
    Stream s(seed);
    bool numeric_ok = true;
    for (int k = 0; k < kOraclePoints && numeric_ok; ++k) {
        auto point = random_point(s, doc.field, nvars, n);
        for (std::size_t e = 0; e < doc.elements.size(); ++e) {
            const auto& f = doc.elements[e].poly;
            for (std::uint32_t l = 0; l < nvars; ++l) {
                auto along_base = eval_series(f, perturbed(point, l, 0));
                for (std::uint32_t j = 0; j <= n; ++j) {
                    auto along_jet = eval_series(f, perturbed(point, l, j));
                    for (std::uint32_t i = 0; i <= n; ++i) {
                        const auto& en = entries[((e * nvars + l) * (n + 1) + i) * (n + 1) + j];
                        Scalar want_lhs = along_jet[i].b;
                        Scalar want_rhs = j <= i ? along_base[i - j].b : Scalar(doc.field, 0);
                        if (eval_at_point(en.lhs, point.assignment) != want_lhs ||
                            eval_at_point(en.rhs, point.assignment) != want_rhs || want_lhs != want_rhs)
                            numeric_ok = false;
                    }
                }
            }
        }
    }
    r.oracle_used = true;
    r.oracle_agrees = numeric_ok == r.ok;
    if (!r.oracle_agrees)
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("random-point oracle disagrees with the symbolic verdict");
    r.ok = r.ok && r.oracle_agrees;
    return r;
}

TrialResult check_structural(const SuiteInstance& inst)
{
    const auto& doc = inst.doc;
    auto a = doc.algebra();
    JetPresentation jp(a, inst.n);
    TrialResult r;
    for (std::size_t k = 0; k < a.relations().size() && r.ok; ++k)
        for (std::uint32_t i = 0; i <= inst.n; ++i)
            for (const auto& t : jp.relation(k, i).terms())
                if (jp.structural_degree(t.monomial) != i) {
                    r.ok = false;
                    r.detail = "relation " + std::to_string(k + 1) + " order " + std::to_string(i) +
                               " has a monomial of structural degree " +
                               std::to_string(jp.structural_degree(t.monomial));
                }
    for (const auto& e : doc.elements) {
        auto d = hs_components(e.poly, inst.n);
        for (std::uint32_t i = 0; i <= inst.n; ++i)
            for (const auto& t : d[i].terms())
                if (r.ok && grade_monomial(t.monomial, GradingMode::structural) != i) {
                    r.ok = false;
                    r.detail = "d_" + std::to_string(i) + "(" + e.name + ") is not of structural degree " +
                               std::to_string(i);
                }
    }
    return r;
}

TrialResult check_induced(const SuiteInstance& inst)
{
    const auto& doc = inst.doc;
    TrialResult r;
    if (!doc.grading) {
        r.ok = false;
        r.detail = "instance has no grading";
        return r;
    }
    auto a = doc.algebra();
    JetPresentation jp(a, inst.n);
    auto check = [&](const Poly& f, const std::vector<Poly>& jets, const std::string& what) {
        auto deg = homogeneous_degree(f, GradingMode::induced, doc.grading);
        if (!deg)
            return;
        for (std::uint32_t i = 0; i <= inst.n; ++i)
            for (const auto& t : jets[i].terms())
                if (r.ok && jp.induced_degree(t.monomial) != *deg) {
                    r.ok = false;
                    r.detail = "d_" + std::to_string(i) + " of " + what + " leaves induced degree " +
                               std::to_string(*deg);
                }
    };
    for (std::size_t k = 0; k < a.relations().size(); ++k) {
        std::vector<Poly> jets;
        for (std::uint32_t i = 0; i <= inst.n; ++i)
            jets.push_back(jp.relation(k, i));
        check(a.relations()[k], jets, "relation " + std::to_string(k + 1));
    }
    for (const auto& e : doc.elements)
        check(e.poly, hs_components(e.poly, inst.n), e.name);
    return r;
}

TrialResult check_functoriality(const SuiteInstance& inst)
{
    const auto& doc = inst.doc;
    auto phi = doc.morphism_map();
    auto fn = induced_morphism(phi, inst.n);
    TrialResult r;
    std::vector<NamedPoly> subjects = doc.elements;
    subjects.insert(subjects.end(), doc.relations.begin(), doc.relations.end());
    const VarNames target{doc.morphism->target_vars, true};
    for (const auto& g : subjects) {
        auto lhs = hs_components(g.poly, inst.n);
        auto rhs = hs_components(phi.apply(g.poly), inst.n);
        for (std::uint32_t i = 0; i <= inst.n; ++i) {
            auto mapped = fn.apply(lhs[i]);
            if (r.ok && mapped != rhs[i]) {
                r.ok = false;
                r.detail = "f_n(d_" + std::to_string(i) + " " + g.name + ") = " + show(mapped, target) +
                           " but d_" + std::to_string(i) + "(phi(" + g.name + ")) = " + show(rhs[i], target);
            }
        }
    }
    return r;
}

TrialResult check_twisted(const SuiteInstance& inst)
{
    const auto& doc = inst.doc;
    const auto n = inst.n;
    Poly p = doc.elements.size() > 0 ? doc.elements[0].poly : Poly(doc.field);
    Poly q = doc.elements.size() > 1 ? doc.elements[1].poly : Poly(doc.field);
    TrialResult r;
    auto fail = [&](const std::string& what) {
        if (r.ok) {
            r.ok = false;
            r.detail = what;
        }
    };
    auto tp = twisted_action_matrix(p, n), tq = twisted_action_matrix(q, n);
    if (twisted_action_matrix(p + q, n) != tp + tq)
        fail("T(p + q) != T(p) + T(q)");
    if (twisted_action_matrix(p * q, n) != tp * tq)
        fail("T(pq) != T(p) T(q)");
    auto one = twisted_action_matrix(Poly::constant(doc.field, 1), n);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j)
            if (one(i, j) != (i == j ? Poly::constant(doc.field, 1) : Poly(doc.field)))
                fail("T(1) is not the identity");
    auto dp = hs_components(p, n);
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= n; ++i)
            if (tp(j, i) != (j <= i ? dp[i - j] : Poly(doc.field)))
                fail("T(p) entry (" + std::to_string(j) + ", " + std::to_string(i) + ") is not d_{i-j}(p)");
    return r;
}

TrialResult check_p1(const SuiteInstance& inst)
{
    TrialResult r;
    auto c = cocycle_check(inst.d, inst.n);
    if (!c.ok) {
        r.ok = false;
        r.detail = c.report;
        return r;
    }
    if (inst.d >= 0) {
        auto t1 = Poly::variable(Field::rationals(), JetVar(1)).pow(static_cast<std::uint32_t>(inst.d));
        auto twisted = twisted_action_matrix(t1, inst.n);
        auto tm = p1_transition(inst.d, inst.n, P1Coords::chart1);
        for (std::size_t i = 0; i <= inst.n; ++i)
            for (std::size_t j = 0; j <= inst.n; ++j) {
                const auto& e = tm.entries[i][j];
                if (r.ok && (e.denom_exp() != 0 || e.numerator() != twisted(i, j))) {
                    r.ok = false;
                    r.detail = "transition entry (" + std::to_string(i) + ", " + std::to_string(j) +
                               ") differs from the twisted matrix of t1^d";
                }
            }
    }
    if (inst.d == 1) {
        auto sections = global_sections(1, inst.n);
        bool all_global = std::all_of(sections.begin(), sections.end(), [](const auto& s) { return s.global; });
        if (r.ok && (sections.size() != 2 * (std::size_t{inst.n} + 1) || !all_global)) {
            r.ok = false;
            r.detail = "O(1) sections are not the expected global generators";
        }
    }
    return r;
}

TrialResult from_outcome(const CheckOutcome& c) { return TrialResult{c.ok, c.ok ? "" : c.report}; }

} // namespace

TrialResult evaluate_suite(const std::string& suite, const SuiteInstance& inst, std::uint64_t seed)
{
    try {
        if (suite == "leibniz")
            return check_leibniz(inst, seed);
        if (suite == "structural_grading")
            return check_structural(inst);
        if (suite == "induced_grading")
            return check_induced(inst);
        if (suite == "jacobian_identity")
            return check_jacobian(inst, seed);
        if (suite == "bigrade_commute")
            return from_outcome(bigrade_commute_check(inst.doc.algebra(), inst.n, inst.m));
        if (suite == "cotruncation")
            return from_outcome(cotruncation_subset_check(inst.doc.algebra(), inst.n, inst.m));
        if (suite == "functoriality")
            return check_functoriality(inst);
        if (suite == "twisted_ring_hom")
            return check_twisted(inst);
        if (suite == "sym_theorem")
            return from_outcome(sym_theorem_check(inst.doc.module_presentation(), inst.n));
        if (suite == "cotangent_theorem")
            return from_outcome(cotangent_theorem_check(inst.doc.algebra(), inst.n));
        if (suite == "base_change")
            return from_outcome(base_change_check(inst.doc.morphism_map(), inst.doc.module_presentation(), inst.n));
        if (suite == "zigzag")
            return from_outcome(free_dual_zigzag_check(inst.n));
        if (suite == "p1_cocycle")
            return check_p1(inst);
    } catch (const UnknownSuite&) {
        throw;
    } catch (const std::exception& e) {
        return TrialResult{false, std::string("exception: ") + e.what()};
    }
    throw UnknownSuite("no suite named '" + suite + "'");
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string replay_command(const std::string& suite, const SuiteInstance& inst, std::uint64_t seed)
{
    std::ostringstream cmd;
    cmd << "jetforge check --suite " << suite << " --instance INSTANCE_FILE --n " << inst.n << " --m " << inst.m
        << " --d " << inst.d << " --seed " << seed;
    return cmd.str();
}

SuiteReport run_one(const std::string& suite, const CheckConfig& cfg)
{
    auto start = std::chrono::steady_clock::now();
    struct Slot {
        TrialResult result;
        SuiteInstance instance;
    };
    std::vector<Slot> slots(cfg.trials);
    auto work = [&](std::uint32_t t) {
        auto inst = random_instance(suite, cfg, t);
        slots[t].result = evaluate_suite(suite, inst, oracle_seed(cfg, suite, t));
        if (!slots[t].result.ok)
            slots[t].instance = std::move(inst);
    };
    const auto jobs = std::min(cfg.jobs, cfg.trials);
    if (jobs <= 1) {
        for (std::uint32_t t = 0; t < cfg.trials; ++t)
            work(t);
    } else {
        std::atomic<std::uint32_t> next{0};
        std::vector<std::thread> pool;
        for (std::uint32_t w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (auto t = next++; t < cfg.trials; t = next++)
                    work(t);
            });
        for (auto& th : pool)
            th.join();
    }

    SuiteReport rep;
    rep.name = suite;
    rep.trials = cfg.trials;
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        const auto& r = slots[t].result;
        if (r.oracle_used) {
            ++rep.oracle_checks;
            if (!r.oracle_agrees)
                ++rep.oracle_disagreements;
        }
        if (!r.ok)
            rep.failures.push_back(TrialFailure{t, print_document(slots[t].instance.doc),
                                                replay_command(suite, slots[t].instance, oracle_seed(cfg, suite, t)),
                                                r.detail});
    }
    rep.wall_ms = elapsed_ms(start);
    return rep;
}

} // namespace

CheckReport run_suite(const CheckConfig& config)
{
    config.validate();
    auto start = std::chrono::steady_clock::now();
    CheckReport report;
    report.seed = config.seed;
    report.trials = config.trials;
    for (const auto& suite : config.selected_suites())
        report.suites.push_back(run_one(suite, config));
    report.wall_ms = elapsed_ms(start);
    return report;
}

bool CheckReport::passed() const
{
    return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.passed(); });
}

nlohmann::ordered_json CheckReport::to_json(bool with_timings) const
{
    using nlohmann::ordered_json;
    ordered_json out;
    out["seed"] = seed;
    out["trials"] = trials;
    out["passed"] = passed();
    ordered_json list = ordered_json::array();
    for (const auto& s : suites) {
        ordered_json js;
        js["name"] = s.name;
        js["trials"] = s.trials;
        js["passed"] = s.passed();
        ordered_json failures = ordered_json::array();
        for (const auto& f : s.failures)
            failures.push_back({{"trial", f.trial}, {"detail", f.detail}, {"instance", f.instance}, {"replay", f.replay}});
        js["failures"] = std::move(failures);
        js["oracle_checks"] = s.oracle_checks;
        js["oracle_disagreements"] = s.oracle_disagreements;
        if (with_timings)
            js["wall_ms"] = s.wall_ms;
        list.push_back(std::move(js));
    }
    out["suites"] = std::move(list);
    if (with_timings)
        out["wall_ms"] = wall_ms;
    return out;
}

std::string CheckReport::to_text() const
{
    std::ostringstream out;
    out << std::fixed << std::setprecision(1);
    std::size_t failed = 0;
    for (const auto& s : suites) {
        out << (s.passed() ? "PASS " : "FAIL ") << std::left << std::setw(20) << s.name << " trials=" << s.trials
            << " failures=" << s.failures.size();
        if (s.oracle_checks)
            out << " oracle=" << (s.oracle_checks - s.oracle_disagreements) << "/" << s.oracle_checks << " agree";
        out << " time=" << s.wall_ms << "ms\n";
        for (const auto& f : s.failures) {
            out << "  trial " << f.trial << ": " << f.detail << "\n";
            out << "  replay: " << f.replay << "\n";
            std::istringstream lines(f.instance);
            for (std::string line; std::getline(lines, line);)
                out << "    " << line << "\n";
        }
        if (!s.passed())
            ++failed;
    }
    out << (failed ? std::to_string(failed) + " of " : "all ") << suites.size() << " suites "
        << (failed ? "failed" : "passed") << " (seed " << seed << ", " << trials << " trials, " << wall_ms
        << "ms)\n";
    return out.str();
}

} // namespace jetforge
