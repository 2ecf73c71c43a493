#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jetforge/dsl.hpp"
#include "jetforge/hs_engine.hpp"
#include "jetforge/poly.hpp"

namespace testing {

using namespace jetforge;

inline const Field Q = Field::rationals();

inline Poly var(std::uint32_t base, std::uint32_t order = 0) { return Poly::variable(Q, JetVar(base, order)); }
inline Poly num(long c) { return Poly::constant(Q, c); }

inline VarNames xyz() { return VarNames{{"x", "y", "z"}, true}; }
inline VarNames xyz_bare() { return VarNames{{"x", "y", "z"}, false}; }

/// A polynomial in base variables x, y, z written in the input language.
inline Poly parse_poly(const std::string& text, Field field = Q)
{
    auto doc = parse_input("ring " + field.name() + "[x,y,z]\nelement f = " + text + "\n");
    return doc.elements.at(0).poly;
}

inline std::string str(const Poly& f) { return to_string(f, xyz()); }

/// Fixed-seed source for property tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    int range(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    std::uint32_t below(std::uint32_t bound) { return static_cast<std::uint32_t>(engine_() % bound); }

    Scalar scalar(Field field = Q)
    {
        if (!field.is_rational())
            return Scalar(field, range(-50, 50));
        return Scalar(field, mpz_class(range(-30, 30)), mpz_class(range(1, 9)));
    }

    /// Up to `terms` terms of degree <= max_degree in the first nvars base
    /// variables; may be zero.
    Poly poly(std::uint32_t nvars = 3, std::uint32_t max_degree = 3, std::uint32_t terms = 5, Field field = Q)
    {
        Poly p(field);
        auto count = below(terms + 1);
        for (std::uint32_t t = 0; t < count; ++t) {
            std::vector<Monomial::Factor> factors;
            std::uint32_t budget = below(max_degree + 1);
            while (budget > 0) {
                std::uint32_t e = 1 + below(budget);
                factors.emplace_back(JetVar(below(nvars)), e);
                budget -= e;
            }
            p += Poly::monomial(Scalar(field, range(-9, 9)), Monomial::from_factors(std::move(factors)));
        }
        return p;
    }

private:
    std::mt19937_64 engine_;
};

/// d_i(f) by brute force: every occurrence of a variable in a monomial picks
/// its own jet order, and the orders must add up to i.
inline Poly naive_component(const Poly& f, std::uint32_t i)
{
    Poly out(f.field());
    for (const auto& term : f.terms()) {
        std::vector<std::uint32_t> occurrences;
        for (const auto& [v, e] : term.monomial.factors())
            for (std::uint32_t k = 0; k < e; ++k)
                occurrences.push_back(v.base());
        std::vector<std::uint32_t> orders(occurrences.size(), 0);
        auto emit = [&] {
            Poly p = Poly::constant(term.coeff);
            for (std::size_t k = 0; k < occurrences.size(); ++k)
                p *= Poly::variable(f.field(), JetVar(occurrences[k], orders[k]));
            out += p;
        };
        auto recurse = [&](auto&& self, std::size_t k, std::uint32_t left) -> void {
            if (k == occurrences.size()) {
                if (left == 0)
                    emit();
                return;
            }
            for (std::uint32_t o = 0; o <= left; ++o) {
                orders[k] = o;
                self(self, k + 1, left - o);
            }
        };
        recurse(recurse, 0, i);
    }
    return out;
}

} // namespace testing
