#include "jetforge/series.hpp"

#include <algorithm>
#include <limits>

namespace jetforge {

namespace {

Poly times_unit_power(const Poly& p, JetVar u, std::uint32_t e)
{
    if (e == 0 || p.is_zero())
        return p;
    return p * Poly::monomial(Scalar(p.field(), 1), Monomial(u, e));
}

void require_same_ring(const LocalPoly& a, const LocalPoly& b)
{
    if (a.unit_var() != b.unit_var())
        throw RingMismatch("localizations at different variables");
}

} // namespace

LocalPoly::LocalPoly(Poly numerator, JetVar unit, std::uint32_t denom_exp)
    : numerator_(std::move(numerator)), unit_(unit), denom_exp_(denom_exp)
{
    if (numerator_.is_zero()) {
        denom_exp_ = 0;
        return;
    }
    if (denom_exp_ == 0)
        return;
    std::uint32_t common = std::numeric_limits<std::uint32_t>::max();
    for (const auto& t : numerator_.terms())
        common = std::min(common, t.monomial.exponent(unit_));
    common = std::min(common, denom_exp_);
    if (common == 0)
        return;
    std::vector<Term> terms;
    for (const auto& t : numerator_.terms())
        terms.push_back(Term{t.monomial.divided(unit_, common), t.coeff});
    numerator_ = Poly::from_terms(numerator_.field(), std::move(terms));
    denom_exp_ -= common;
}

bool LocalPoly::is_unit() const
{
    if (numerator_.terms().size() != 1)
        return false;
    const auto& factors = numerator_.terms()[0].monomial.factors();
    return factors.empty() || (factors.size() == 1 && factors[0].first == unit_);
}

LocalPoly LocalPoly::inverse() const
{
    if (!is_unit())
        throw NonUnitLeadingCoefficient("not a unit of the localized ring");
    const auto& t = numerator_.terms()[0];
    std::uint32_t num_exp = t.monomial.exponent(unit_);
    // (c u^a / u^b)^{-1} = c^{-1} u^b / u^a
    auto inv = Poly::monomial(t.coeff.inverse(), Monomial(unit_, denom_exp_));
    return LocalPoly(std::move(inv), unit_, num_exp);
}

LocalPoly LocalPoly::operator-() const
{
    return LocalPoly(-numerator_, unit_, denom_exp_);
}

LocalPoly operator+(const LocalPoly& a, const LocalPoly& b)
{
    require_same_ring(a, b);
    auto e = std::max(a.denom_exp_, b.denom_exp_);
    auto num = times_unit_power(a.numerator_, a.unit_, e - a.denom_exp_) +
               times_unit_power(b.numerator_, b.unit_, e - b.denom_exp_);
    return LocalPoly(std::move(num), a.unit_, e);
}

LocalPoly operator-(const LocalPoly& a, const LocalPoly& b)
{
    return a + (-b);
}

LocalPoly operator*(const LocalPoly& a, const LocalPoly& b)
{
    require_same_ring(a, b);
    return LocalPoly(a.numerator_ * b.numerator_, a.unit_, a.denom_exp_ + b.denom_exp_);
}

std::string to_string(const LocalPoly& f, const VarNames& names)
{
    auto num = to_string(f.numerator(), names);
    if (f.denom_exp() == 0)
        return num;
    auto den = names.render(f.unit_var());
    if (f.denom_exp() > 1)
        den += "^" + std::to_string(f.denom_exp());
    return "(" + num + ")/" + den;
}

Scalar eval_at_point(const LocalPoly& f, const Assignment& point)
{
    auto num = eval_at_point(f.numerator(), point);
    if (f.denom_exp() == 0)
        return num;
    auto it = point.find(f.unit_var());
    if (it == point.end())
        throw UnboundVariable("no value for the unit variable");
    if (it->second.is_zero())
        throw DivisionByZero("unit variable evaluated at zero");
    Scalar den(f.field(), 1);
    for (std::uint32_t k = 0; k < f.denom_exp(); ++k)
        den *= it->second;
    return num / den;
}

LocalPoly substitute(const LocalPoly& f, const std::map<JetVar, LocalPoly>& images, JetVar target_unit)
{
    auto image_of = [&](JetVar v) {
        auto it = images.find(v);
        return it != images.end() ? it->second : LocalPoly(Poly::variable(f.field(), v), target_unit);
    };

    LocalPoly result(Poly(f.field()), target_unit);
    for (const auto& t : f.numerator().terms()) {
        LocalPoly term(Poly::constant(t.coeff), target_unit);
        for (const auto& [v, e] : t.monomial.factors()) {
            auto img = image_of(v);
            for (std::uint32_t k = 0; k < e; ++k)
                term *= img;
        }
        result += term;
    }
    if (f.denom_exp() > 0) {
        auto inv = image_of(f.unit_var()).inverse();
        for (std::uint32_t k = 0; k < f.denom_exp(); ++k)
            result *= inv;
    }
    return result;
}

Poly invert_unit(const Poly& p)
{
    if (!p.is_constant() || p.is_zero())
        throw NonUnitLeadingCoefficient("constant coefficient is not an invertible scalar");
    return Poly::constant(p.constant_term().inverse());
}

} // namespace jetforge
