#include "jetforge/scalar.hpp"

#include <cctype>

#include "jetforge/errors.hpp"

namespace jetforge {

namespace {

bool is_prime(std::uint32_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

std::uint32_t reduce(long value, std::uint32_t p)
{
    long r = value % static_cast<long>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint32_t reduce(const mpz_class& value, std::uint32_t p)
{
    mpz_class r = value % p;
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p)
{
    std::uint64_t result = 1;
    base %= p;
    while (exp) {
        if (exp & 1)
            result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

} // namespace

Field Field::prime(std::uint32_t p)
{
    if (p >= (1u << 31) || !is_prime(p))
        throw InvalidConfig("field modulus " + std::to_string(p) + " is not a prime below 2^31");
    Field f;
    f.modulus_ = p;
    return f;
}

std::string Field::name() const
{
    return is_rational() ? "Q" : "F" + std::to_string(modulus_);
}

Field Field::parse(const std::string& text)
{
    if (text == "Q")
        return rationals();
    if (text.size() > 1 && text[0] == 'F') {
        std::uint64_t p = 0;
        for (std::size_t i = 1; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i])) || p > (1ull << 32))
                throw InvalidConfig("bad field '" + text + "'");
            p = p * 10 + static_cast<std::uint64_t>(text[i] - '0');
        }
        if (p >= (1ull << 31))
            throw InvalidConfig("field modulus too large in '" + text + "'");
        return prime(static_cast<std::uint32_t>(p));
    }
    throw InvalidConfig("bad field '" + text + "', expected Q or F<prime>");
}

Scalar::Scalar(Field field, long value)
{
    if (field.is_rational())
        value_ = mpq_class(value);
    else
        value_ = Mod{reduce(value, field.modulus()), field.modulus()};
}

Scalar::Scalar(Field field, const mpz_class& num, const mpz_class& den)
{
    if (den == 0)
        throw DivisionByZero("zero denominator");
    if (field.is_rational()) {
        mpq_class q(num, den);
        q.canonicalize();
        value_ = q;
    } else {
        auto p = field.modulus();
        auto d = reduce(den, p);
        if (d == 0)
            throw DivisionByZero("denominator vanishes in " + field.name());
        value_ = Mod{static_cast<std::uint32_t>(static_cast<std::uint64_t>(reduce(num, p)) * pow_mod(d, p - 2, p) % p), p};
    }
}

Scalar Scalar::rational(const mpq_class& q)
{
    Scalar s;
    s.value_ = q;
    std::get<mpq_class>(s.value_).canonicalize();
    return s;
}

Field Scalar::field() const
{
    if (auto m = std::get_if<Mod>(&value_))
        return Field(m->modulus);
    return Field::rationals();
}

bool Scalar::is_zero() const
{
    if (auto m = std::get_if<Mod>(&value_))
        return m->value == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const
{
    if (auto m = std::get_if<Mod>(&value_))
        return m->value == 1;
    return std::get<mpq_class>(value_) == 1;
}

bool Scalar::is_negative() const
{
    if (auto q = std::get_if<mpq_class>(&value_))
        return sgn(*q) < 0;
    return false;
}

Scalar Scalar::operator-() const
{
    if (auto m = std::get_if<Mod>(&value_))
        return Scalar(Mod{m->value == 0 ? 0 : m->modulus - m->value, m->modulus});
    return rational(-std::get<mpq_class>(value_));
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw DivisionByZero("inverse of zero");
    if (auto m = std::get_if<Mod>(&value_))
        return Scalar(Mod{pow_mod(m->value, m->modulus - 2, m->modulus), m->modulus});
    return rational(1 / std::get<mpq_class>(value_));
}

// Both operands must live in the same field.
static void require_same_field(const Scalar& a, const Scalar& b)
{
    if (a.field() != b.field())
        throw FieldMismatch(a.field().name() + " vs " + b.field().name());
}

Scalar operator+(const Scalar& a, const Scalar& b)
{
    require_same_field(a, b);
    if (auto m = std::get_if<Scalar::Mod>(&a.value_)) {
        auto n = std::get<Scalar::Mod>(b.value_);
        return Scalar(Scalar::Mod{static_cast<std::uint32_t>((std::uint64_t{m->value} + n.value) % m->modulus), m->modulus});
    }
    Scalar r;
    r.value_ = mpq_class(std::get<mpq_class>(a.value_) + std::get<mpq_class>(b.value_));
    return r;
}

Scalar operator-(const Scalar& a, const Scalar& b)
{
    return a + (-b);
}

Scalar operator*(const Scalar& a, const Scalar& b)
{
    require_same_field(a, b);
    if (auto m = std::get_if<Scalar::Mod>(&a.value_)) {
        auto n = std::get<Scalar::Mod>(b.value_);
        return Scalar(Scalar::Mod{static_cast<std::uint32_t>(std::uint64_t{m->value} * n.value % m->modulus), m->modulus});
    }
    Scalar r;
    r.value_ = mpq_class(std::get<mpq_class>(a.value_) * std::get<mpq_class>(b.value_));
    return r;
}

Scalar operator/(const Scalar& a, const Scalar& b)
{
    require_same_field(a, b);
    return a * b.inverse();
}

bool operator==(const Scalar& a, const Scalar& b)
{
    return a.value_ == b.value_;
}

std::string Scalar::to_string() const
{
    if (auto m = std::get_if<Mod>(&value_))
        return std::to_string(m->value);
    return std::get<mpq_class>(value_).get_str();
}

std::string Scalar::abs_string() const
{
    if (auto q = std::get_if<mpq_class>(&value_))
        return mpq_class(abs(*q)).get_str();
    return to_string();
}

} // namespace jetforge
