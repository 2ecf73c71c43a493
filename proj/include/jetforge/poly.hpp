#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetforge/scalar.hpp"

namespace jetforge {

/// A variable x^{(i)} (univariate jets) or x^{(i,j)} (bivariate jets) over the
/// base variable with stable index `base`. Order 0 without a second order is
/// the base variable x itself.
class JetVar {
public:
    constexpr JetVar() = default;
    constexpr explicit JetVar(std::uint32_t base, std::uint32_t order = 0)
        : key_((std::uint64_t{base} << 32) | (std::uint64_t{order} << 16))
    {
    }
    constexpr JetVar(std::uint32_t base, std::uint32_t order1, std::uint32_t order2)
        : key_((std::uint64_t{base} << 32) | (std::uint64_t{order1} << 16) | (order2 + 1))
    {
    }

    constexpr std::uint32_t base() const { return static_cast<std::uint32_t>(key_ >> 32); }
    constexpr std::uint32_t order() const { return static_cast<std::uint32_t>((key_ >> 16) & 0xffff); }
    constexpr bool bivariate() const { return (key_ & 0xffff) != 0; }
    constexpr std::uint32_t order2() const { return static_cast<std::uint32_t>(key_ & 0xffff) - 1; }
    constexpr bool is_base() const { return order() == 0 && !bivariate(); }

    /// Packs (base, order1, order2) so that integer order is the canonical
    /// variable order.
    constexpr std::uint64_t key() const { return key_; }

    friend constexpr auto operator<=>(JetVar, JetVar) = default;

private:
    std::uint64_t key_ = 0;
};

/// Names of base variables, indexed by JetVar::base().
struct VarNames {
    std::vector<std::string> names;
    /// When false, order-0 univariate variables print as the bare base name
    /// (the input language); when true they print as "x_0".
    bool jet_suffix = true;

    std::string render(JetVar v) const;
};

/// A power product; exponents are positive and factors are sorted by the
/// canonical variable order.
class Monomial {
public:
    using Factor = std::pair<JetVar, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(JetVar v, std::uint32_t exponent = 1);
    /// `factors` need not be sorted; repeated variables are merged.
    static Monomial from_factors(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    std::uint32_t exponent(JetVar v) const;
    std::uint32_t total_degree() const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Lowers the exponent of `v` by `by`; the exponent must be at least `by`.
    Monomial divided(JetVar v, std::uint32_t by = 1) const;

    /// Lex on exponent vectors over the canonical variable order.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) = default;

private:
    std::vector<Factor> factors_;
};

struct Term {
    Monomial monomial;
    Scalar coeff;
    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial. Terms are kept in descending monomial
/// order with no zero coefficients, so structural equality is ring equality.
class Poly {
public:
    Poly() = default;
    explicit Poly(Field field) : field_(field) {}

    static Poly constant(const Scalar& c);
    static Poly constant(Field field, long c) { return constant(Scalar(field, c)); }
    static Poly variable(Field field, JetVar v);
    static Poly monomial(const Scalar& c, Monomial m);
    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    static Poly from_terms(Field field, std::vector<Term> terms);

    Field field() const { return field_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    Scalar constant_term() const;
    std::uint32_t total_degree() const;
    std::vector<JetVar> variables() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Scalar& c, const Poly& a);
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }
    Poly pow(std::uint32_t e) const;

    friend bool operator==(const Poly& a, const Poly& b) = default;

private:
    Field field_;
    std::vector<Term> terms_;
};

/// Canonical text: terms in descending order joined by " + " / " - ",
/// factors joined by "*", exponents as "^e", coefficients "p/q". The zero
/// polynomial is "0".
std::string to_string(const Poly& f, const VarNames& names);

/// Formal partial derivative.
Poly partial_derivative(const Poly& f, JetVar v);

/// Ring map fixing the field: each variable found in `images` is replaced by
/// its image, all others are kept.
Poly substitute(const Poly& f, const std::map<JetVar, Poly>& images);

/// Injective renaming of variables.
Poly rename(const Poly& f, const std::function<JetVar(JetVar)>& fn);

using Assignment = std::map<JetVar, Scalar>;

/// Exact evaluation; throws UnboundVariable if a variable of `f` is missing.
Scalar eval_at_point(const Poly& f, const Assignment& point);

} // namespace jetforge
