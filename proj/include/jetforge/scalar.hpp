#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace jetforge {

/// The coefficient field: Q when modulus() == 0, otherwise F_p.
class Field {
public:
    constexpr Field() = default;

    static constexpr Field rationals() { return Field{}; }
    /// `p` must be a prime below 2^31.
    static Field prime(std::uint32_t p);

    constexpr bool is_rational() const { return modulus_ == 0; }
    constexpr std::uint32_t modulus() const { return modulus_; }

    /// "Q" or "F<p>", the spelling used by the input language.
    std::string name() const;
    /// Inverse of name(); throws InvalidConfig on anything else.
    static Field parse(const std::string& text);

    friend constexpr bool operator==(Field a, Field b) = default;

private:
    friend class Scalar;
    constexpr explicit Field(std::uint32_t p) : modulus_(p) {}

    std::uint32_t modulus_ = 0;
};

/// An exact element of a Field. Rationals are always in lowest terms with a
/// positive denominator (mpq canonical form).
class Scalar {
public:
    Scalar() : value_(mpq_class(0)) {}
    Scalar(Field field, long value);
    Scalar(Field field, const mpz_class& num, const mpz_class& den);
    static Scalar rational(const mpq_class& q);

    Field field() const;
    bool is_zero() const;
    bool is_one() const;
    bool is_negative() const; // sign of the rational; false in F_p

    Scalar operator-() const;
    Scalar inverse() const; // throws DivisionByZero on zero

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend bool operator==(const Scalar& a, const Scalar& b);

    /// Canonical text: "p/q", q omitted when 1. F_p elements print as their
    /// representative in [0, p).
    std::string to_string() const;
    /// The absolute value's text (for sign-split term printing).
    std::string abs_string() const;

    const mpq_class& as_rational() const { return std::get<mpq_class>(value_); }

private:
    struct Mod {
        std::uint32_t value;
        std::uint32_t modulus;
        bool operator==(const Mod&) const = default;
    };
    explicit Scalar(Mod m) : value_(m) {}

    std::variant<mpq_class, Mod> value_;
};

} // namespace jetforge
