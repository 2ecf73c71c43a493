#include "jetforge/poly.hpp"

#include <algorithm>
#include <set>

#include "jetforge/errors.hpp"

namespace jetforge {

std::string VarNames::render(JetVar v) const
{
    std::string name = v.base() < names.size() ? names[v.base()] : "v" + std::to_string(v.base());
    if (v.bivariate())
        return name + "_" + std::to_string(v.order()) + "_" + std::to_string(v.order2());
    if (!jet_suffix && v.order() == 0)
        return name;
    return name + "_" + std::to_string(v.order());
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(JetVar v, std::uint32_t exponent)
{
    if (exponent > 0)
        factors_.emplace_back(v, exponent);
}

Monomial Monomial::from_factors(std::vector<Factor> factors)
{
    std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
    Monomial m;
    for (const auto& [v, e] : factors) {
        if (e == 0)
            continue;
        if (!m.factors_.empty() && m.factors_.back().first == v)
            m.factors_.back().second += e;
        else
            m.factors_.emplace_back(v, e);
    }
    return m;
}

std::uint32_t Monomial::exponent(JetVar v) const
{
    auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                               [](const Factor& f, JetVar x) { return f.first < x; });
    return it != factors_.end() && it->first == v ? it->second : 0;
}

std::uint32_t Monomial::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto& f : factors_)
        d += f.second;
    return d;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
        if (i->first < j->first)
            r.factors_.push_back(*i++);
        else if (j->first < i->first)
            r.factors_.push_back(*j++);
        else {
            r.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    r.factors_.insert(r.factors_.end(), i, a.factors_.end());
    r.factors_.insert(r.factors_.end(), j, b.factors_.end());
    return r;
}

Monomial Monomial::divided(JetVar v, std::uint32_t by) const
{
    Monomial r = *this;
    auto it = std::find_if(r.factors_.begin(), r.factors_.end(), [v](const Factor& f) { return f.first == v; });
    if (it == r.factors_.end() || it->second < by)
        throw DivisionByZero("monomial not divisible");
    it->second -= by;
    if (it->second == 0)
        r.factors_.erase(it);
    return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
{
    // The first variable (in canonical order) where exponents differ decides;
    // a variable missing from one side has exponent 0 there.
    auto i = a.factors_.begin(), j = b.factors_.begin();
    for (; i != a.factors_.end() && j != b.factors_.end(); ++i, ++j) {
        if (i->first != j->first)
            return i->first < j->first ? std::strong_ordering::greater : std::strong_ordering::less;
        if (i->second != j->second)
            return i->second <=> j->second;
    }
    if (i != a.factors_.end())
        return std::strong_ordering::greater;
    if (j != b.factors_.end())
        return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

// -------------------------------------------------------------------- Poly

namespace {

struct Descending {
    bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
};

void require_same_field(const Poly& a, const Poly& b)
{
    if (a.field() != b.field())
        throw FieldMismatch("polynomials over " + a.field().name() + " and " + b.field().name());
}

} // namespace

Poly Poly::constant(const Scalar& c)
{
    return monomial(c, Monomial{});
}

Poly Poly::variable(Field field, JetVar v)
{
    return monomial(Scalar(field, 1), Monomial(v));
}

Poly Poly::monomial(const Scalar& c, Monomial m)
{
    Poly p(c.field());
    if (!c.is_zero())
        p.terms_.push_back(Term{std::move(m), c});
    return p;
}

Poly Poly::from_terms(Field field, std::vector<Term> terms)
{
    std::map<Monomial, Scalar, Descending> acc;
    for (auto& t : terms) {
        if (t.coeff.field() != field)
            throw FieldMismatch("term coefficient over " + t.coeff.field().name());
        auto [it, inserted] = acc.try_emplace(std::move(t.monomial), t.coeff);
        if (!inserted)
            it->second += t.coeff;
    }
    Poly p(field);
    for (auto& [m, c] : acc)
        if (!c.is_zero())
            p.terms_.push_back(Term{m, c});
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_unit());
}

Scalar Poly::constant_term() const
{
    if (!terms_.empty() && terms_.back().monomial.is_unit())
        return terms_.back().coeff;
    return Scalar(field_, 0);
}

std::uint32_t Poly::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto& t : terms_)
        d = std::max(d, t.monomial.total_degree());
    return d;
}

std::vector<JetVar> Poly::variables() const
{
    std::set<JetVar> vars;
    for (const auto& t : terms_)
        for (const auto& f : t.monomial.factors())
            vars.insert(f.first);
    return {vars.begin(), vars.end()};
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

Poly operator+(const Poly& a, const Poly& b)
{
    require_same_field(a, b);
    Poly r(a.field_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() && j != b.terms_.end()) {
        auto cmp = i->monomial <=> j->monomial;
        if (cmp > 0)
            r.terms_.push_back(*i++);
        else if (cmp < 0)
            r.terms_.push_back(*j++);
        else {
            auto c = i->coeff + j->coeff;
            if (!c.is_zero())
                r.terms_.push_back(Term{i->monomial, c});
            ++i;
            ++j;
        }
    }
    r.terms_.insert(r.terms_.end(), i, a.terms_.end());
    r.terms_.insert(r.terms_.end(), j, b.terms_.end());
    return r;
}

Poly operator-(const Poly& a, const Poly& b)
{
    return a + (-b);
}

Poly operator*(const Poly& a, const Poly& b)
{
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero())
        return Poly(a.field_);
    std::map<Monomial, Scalar, Descending> acc;
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) {
            auto [it, inserted] = acc.try_emplace(s.monomial * t.monomial, s.coeff * t.coeff);
            if (!inserted)
                it->second += s.coeff * t.coeff;
        }
    Poly r(a.field_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero())
            r.terms_.push_back(Term{m, c});
    return r;
}

Poly operator*(const Scalar& c, const Poly& a)
{
    if (c.field() != a.field_)
        throw FieldMismatch("scalar over " + c.field().name());
    if (c.is_zero())
        return Poly(a.field_);
    Poly r = a;
    for (auto& t : r.terms_)
        t.coeff *= c;
    return r;
}

Poly Poly::pow(std::uint32_t e) const
{
    Poly result = constant(field_, 1);
    Poly base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

// ---------------------------------------------------------------- free ops

std::string to_string(const Poly& f, const VarNames& names)
{
    if (f.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        bool negative = t.coeff.is_negative();
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;

        std::string coeff = f.field().is_rational() ? t.coeff.abs_string() : t.coeff.to_string();
        bool unit_coeff = coeff == "1";
        bool need_star = false;
        if (!unit_coeff || t.monomial.is_unit()) {
            out += coeff;
            need_star = true;
        }
        for (const auto& [v, e] : t.monomial.factors()) {
            if (need_star)
                out += "*";
            out += names.render(v);
            if (e > 1)
                out += "^" + std::to_string(e);
            need_star = true;
        }
    }
    return out;
}

Poly partial_derivative(const Poly& f, JetVar v)
{
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        auto e = t.monomial.exponent(v);
        if (e == 0)
            continue;
        terms.push_back(Term{t.monomial.divided(v), t.coeff * Scalar(f.field(), static_cast<long>(e))});
    }
    // Distinct monomials stay distinct after dividing by the same variable,
    // but their relative order can change, so rebuild canonically.
    return Poly::from_terms(f.field(), std::move(terms));
}

Poly substitute(const Poly& f, const std::map<JetVar, Poly>& images)
{
    std::map<std::pair<JetVar, std::uint32_t>, Poly> powers;
    auto power = [&](JetVar v, std::uint32_t e) -> const Poly& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it != powers.end())
            return it->second;
        auto img = images.find(v);
        Poly p = img != images.end() ? img->second : Poly::variable(f.field(), v);
        return powers.emplace(key, p.pow(e)).first->second;
    };

    Poly result(f.field());
    for (const auto& t : f.terms()) {
        Poly term = Poly::constant(t.coeff);
        for (const auto& [v, e] : t.monomial.factors())
            term *= power(v, e);
        result += term;
    }
    return result;
}

Poly rename(const Poly& f, const std::function<JetVar(JetVar)>& fn)
{
    std::vector<Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        std::vector<Monomial::Factor> factors;
        for (const auto& [v, e] : t.monomial.factors())
            factors.emplace_back(fn(v), e);
        terms.push_back(Term{Monomial::from_factors(std::move(factors)), t.coeff});
    }
    return Poly::from_terms(f.field(), std::move(terms));
}

Scalar eval_at_point(const Poly& f, const Assignment& point)
{
    Scalar sum(f.field(), 0);
    for (const auto& t : f.terms()) {
        Scalar prod = t.coeff;
        for (const auto& [v, e] : t.monomial.factors()) {
            auto it = point.find(v);
            if (it == point.end())
                throw UnboundVariable("no value for variable (base " + std::to_string(v.base()) + ", order " +
                                      std::to_string(v.order()) + ")");
            for (std::uint32_t k = 0; k < e; ++k)
                prod *= it->second;
        }
        sum += prod;
    }
    return sum;
}

} // namespace jetforge
