#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jetforge/errors.hpp"
#include "jetforge/poly.hpp"

namespace jetforge {

/// numerator / u^k for one distinguished invertible variable u. Normalized
/// so that u does not divide the numerator whenever k > 0; the zero element
/// always has k = 0.
class LocalPoly {
public:
    LocalPoly(Poly numerator, JetVar unit, std::uint32_t denom_exp = 0);

    const Poly& numerator() const { return numerator_; }
    JetVar unit_var() const { return unit_; }
    std::uint32_t denom_exp() const { return denom_exp_; }
    Field field() const { return numerator_.field(); }
    bool is_zero() const { return numerator_.is_zero(); }
    /// True iff the element is c * u^e for some nonzero scalar c and integer e.
    bool is_unit() const;
    /// Inverse of a unit; throws NonUnitLeadingCoefficient otherwise.
    LocalPoly inverse() const;

    LocalPoly operator-() const;
    friend LocalPoly operator+(const LocalPoly& a, const LocalPoly& b);
    friend LocalPoly operator-(const LocalPoly& a, const LocalPoly& b);
    friend LocalPoly operator*(const LocalPoly& a, const LocalPoly& b);
    LocalPoly& operator+=(const LocalPoly& b) { return *this = *this + b; }
    LocalPoly& operator*=(const LocalPoly& b) { return *this = *this * b; }

    friend bool operator==(const LocalPoly&, const LocalPoly&) = default;

private:
    Poly numerator_;
    JetVar unit_;
    std::uint32_t denom_exp_ = 0;
};

/// "num" when denominator-free, otherwise "(num)/u" or "(num)/u^k".
std::string to_string(const LocalPoly& f, const VarNames& names);

/// Throws DivisionByZero if the unit variable is assigned zero.
Scalar eval_at_point(const LocalPoly& f, const Assignment& point);

/// Substitutes localized images for variables of the numerator. The image of
/// the unit variable must itself be a unit in the target ring; all images
/// share the target unit variable `target_unit`.
LocalPoly substitute(const LocalPoly& f, const std::map<JetVar, LocalPoly>& images, JetVar target_unit);

inline Scalar zero_like(const Scalar& c) { return Scalar(c.field(), 0); }
inline Scalar one_like(const Scalar& c) { return Scalar(c.field(), 1); }
inline Scalar invert_unit(const Scalar& c)
{
    if (c.is_zero())
        throw NonUnitLeadingCoefficient("constant coefficient is zero");
    return c.inverse();
}
inline Poly zero_like(const Poly& p) { return Poly(p.field()); }
inline Poly one_like(const Poly& p) { return Poly::constant(p.field(), 1); }
inline LocalPoly zero_like(const LocalPoly& p) { return LocalPoly(Poly(p.field()), p.unit_var()); }
inline LocalPoly one_like(const LocalPoly& p) { return LocalPoly(Poly::constant(p.field(), 1), p.unit_var()); }

/// Inverse of a polynomial constant term: must be a nonzero scalar.
Poly invert_unit(const Poly& p);
inline LocalPoly invert_unit(const LocalPoly& p) { return p.inverse(); }

/// Element of C[[t]]_n = C[[t]]/(t^{n+1}); coefficient k multiplies t^k.
template <class C>
class TruncSeries {
public:
    /// `coeffs` must have exactly level + 1 entries.
    TruncSeries(std::uint32_t level, std::vector<C> coeffs) : level_(level), coeffs_(std::move(coeffs))
    {
        if (coeffs_.size() != std::size_t{level} + 1)
            throw DimensionMismatch("series of level " + std::to_string(level) + " needs " +
                                    std::to_string(level + 1) + " coefficients");
    }

    /// The constant series c.
    static TruncSeries constant(std::uint32_t level, const C& c)
    {
        std::vector<C> v(level + 1, zero_like(c));
        v[0] = c;
        return TruncSeries(level, std::move(v));
    }

    std::uint32_t level() const { return level_; }
    const std::vector<C>& coeffs() const { return coeffs_; }
    const C& operator[](std::size_t k) const { return coeffs_[k]; }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b)
    {
        check_levels(a, b);
        auto v = a.coeffs_;
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] += b.coeffs_[k];
        return TruncSeries(a.level_, std::move(v));
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
    {
        check_levels(a, b);
        std::vector<C> v(a.coeffs_.size(), zero_like(a.coeffs_[0]));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (a.coeffs_[i].is_zero())
                continue;
            for (std::size_t j = 0; i + j < v.size(); ++j)
                if (!b.coeffs_[j].is_zero())
                    v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return TruncSeries(a.level_, std::move(v));
    }

    TruncSeries pow(std::uint32_t e) const
    {
        auto result = constant(level_, one_like(coeffs_[0]));
        for (std::uint32_t k = 0; k < e; ++k)
            result = result * *this;
        return result;
    }

    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

private:
    static void check_levels(const TruncSeries& a, const TruncSeries& b)
    {
        if (a.level_ != b.level_)
            throw DimensionMismatch("series levels differ");
    }

    std::uint32_t level_;
    std::vector<C> coeffs_;
};

/// Multiplicative inverse in C[[t]]_n. The constant coefficient must be a
/// unit of C (NonUnitLeadingCoefficient otherwise).
template <class C>
TruncSeries<C> series_invert(const TruncSeries<C>& s)
{
    const auto& c = s.coeffs();
    std::vector<C> b;
    b.reserve(c.size());
    b.push_back(invert_unit(c[0]));
    for (std::size_t k = 1; k < c.size(); ++k) {
        C acc = zero_like(c[0]);
        for (std::size_t i = 1; i <= k; ++i)
            if (!c[i].is_zero())
                acc += c[i] * b[k - i];
        b.push_back(-(b[0] * acc));
    }
    return TruncSeries<C>(s.level(), std::move(b));
}

/// s^e for any integer e; negative powers go through series_invert.
template <class C>
TruncSeries<C> series_pow(const TruncSeries<C>& s, long e)
{
    if (e >= 0)
        return s.pow(static_cast<std::uint32_t>(e));
    return series_invert(s).pow(static_cast<std::uint32_t>(-e));
}

} // namespace jetforge
