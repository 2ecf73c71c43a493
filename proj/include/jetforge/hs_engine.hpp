#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetforge/poly.hpp"

namespace jetforge {

/// k[vars]/(relations), optionally N-graded by a degree per variable.
/// Relations are written in base variables JetVar(index).
class AlgebraPresentation {
public:
    /// Validates that relations use only declared base variables, live over
    /// `field`, and are homogeneous when a grading is given.
    AlgebraPresentation(Field field, std::vector<std::string> vars, std::vector<Poly> relations,
                        std::optional<std::vector<std::uint32_t>> grading = std::nullopt);

    Field field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Poly>& relations() const { return relations_; }
    const std::optional<std::vector<std::uint32_t>>& grading() const { return grading_; }
    std::size_t var_count() const { return vars_.size(); }

    Poly var(std::uint32_t index) const { return Poly::variable(field_, JetVar(index)); }
    /// Names printing base variables bare ("x").
    VarNames base_names() const { return VarNames{vars_, false}; }

    friend bool operator==(const AlgebraPresentation&, const AlgebraPresentation&) = default;

private:
    Field field_;
    std::vector<std::string> vars_;
    std::vector<Poly> relations_;
    std::optional<std::vector<std::uint32_t>> grading_;
};

enum class GradingMode { structural, induced };

/// structural: sum of exponent * jet order; induced: sum of exponent *
/// degree of the base variable. Induced mode without a grading throws
/// MissingGrading.
std::uint32_t grade_monomial(const Monomial& m, GradingMode mode,
                             const std::optional<std::vector<std::uint32_t>>& grading = std::nullopt);

/// Degree of a polynomial all of whose monomials share one degree; nullopt
/// for inhomogeneous input and for zero.
std::optional<std::uint32_t> homogeneous_degree(const Poly& f, GradingMode mode,
                                                const std::optional<std::vector<std::uint32_t>>& grading = std::nullopt);

/// d_0(f), ..., d_n(f): the coefficients of t^i after substituting
/// x -> sum_i x^{(i)} t^i for every base variable. Throws NotABaseElement if
/// f contains jet variables of positive order.
std::vector<Poly> hs_components(const Poly& f, std::uint32_t n);

/// Entry (i, j) is the coefficient of s^i t^j after substituting
/// x -> sum x^{(i,j)} s^i t^j.
std::vector<std::vector<Poly>> hs_components_2d(const Poly& f, std::uint32_t n, std::uint32_t m);

/// Level-n jet algebra of a presentation.
class JetPresentation {
public:
    JetPresentation(AlgebraPresentation source, std::uint32_t level);

    std::uint32_t level() const { return level_; }
    const AlgebraPresentation& source() const { return source_; }
    /// x_0..x_n for every base variable x, in canonical order.
    const std::vector<JetVar>& jet_vars() const { return jet_vars_; }
    /// Indexed (relation k, order i) lexicographically.
    const std::vector<Poly>& relations() const { return relations_; }
    const Poly& relation(std::size_t k, std::uint32_t i) const { return relations_[k * (level_ + 1) + i]; }

    std::uint32_t structural_degree(const Monomial& m) const;
    std::uint32_t induced_degree(const Monomial& m) const;

    VarNames names() const { return VarNames{source_.vars(), true}; }

    /// The same ring presented with every jet variable x^{(i)} promoted to a
    /// base variable named "x_i" (index x * (level + 1) + i). Carries the
    /// induced grading when the source is graded.
    AlgebraPresentation as_algebra() const;
    /// Base-variable index of x^{(i)} in as_algebra().
    std::uint32_t flat_index(JetVar v) const { return v.base() * (level_ + 1) + v.order(); }

private:
    AlgebraPresentation source_;
    std::uint32_t level_;
    std::vector<JetVar> jet_vars_;
    std::vector<Poly> relations_;
};

JetPresentation jet_presentation(const AlgebraPresentation& a, std::uint32_t n);

/// Level-(n, m) bivariate jet algebra.
class BiJetPresentation {
public:
    BiJetPresentation(AlgebraPresentation source, std::uint32_t n, std::uint32_t m);

    std::uint32_t n() const { return n_; }
    std::uint32_t m() const { return m_; }
    const AlgebraPresentation& source() const { return source_; }
    const std::vector<JetVar>& jet_vars() const { return jet_vars_; }
    /// Indexed (relation k, i, j) lexicographically.
    const std::vector<Poly>& relations() const { return relations_; }
    VarNames names() const { return VarNames{source_.vars(), true}; }

private:
    AlgebraPresentation source_;
    std::uint32_t n_, m_;
    std::vector<JetVar> jet_vars_;
    std::vector<Poly> relations_;
};

/// Outcome of a structural identity check.
struct CheckOutcome {
    bool ok = true;
    std::string report;
};

/// Level-n jet relations must reappear verbatim among the level-m ones
/// (co-truncation is the inclusion x^{(i)} -> x^{(i)}). Requires m > n,
/// otherwise BadLevels.
CheckOutcome cotruncation_subset_check(const AlgebraPresentation& a, std::uint32_t n, std::uint32_t m);

/// An algebra map given by images of the source base variables, written in
/// target base variables. Validity (relations map into the target ideal) is
/// the caller's contract.
class AlgebraMorphism {
public:
    AlgebraMorphism(AlgebraPresentation source, AlgebraPresentation target, std::vector<Poly> images);

    const AlgebraPresentation& source() const { return source_; }
    const AlgebraPresentation& target() const { return target_; }
    const std::vector<Poly>& images() const { return images_; }

    Poly apply(const Poly& g) const;

private:
    AlgebraPresentation source_;
    AlgebraPresentation target_;
    std::vector<Poly> images_;
};

/// f_n between level-n jet presentations, x^{(i)} -> d_i(phi(x)).
class JetMorphism {
public:
    JetMorphism(JetPresentation source, JetPresentation target, std::map<JetVar, Poly> images);

    std::uint32_t level() const { return source_.level(); }
    const JetPresentation& source() const { return source_; }
    const JetPresentation& target() const { return target_; }
    const std::map<JetVar, Poly>& images() const { return images_; }

    Poly apply(const Poly& g) const;

private:
    JetPresentation source_;
    JetPresentation target_;
    std::map<JetVar, Poly> images_;
};

JetMorphism induced_morphism(const AlgebraMorphism& phi, std::uint32_t n);

/// Generators of the three presentations of the bivariate jet algebra:
/// jets-of-jets in both nesting orders (renamed to x^{(i,j)}) and the direct
/// bivariate substitution.
struct BigradeSets {
    std::vector<Poly> nested_nm; // UHS^n(UHS^m(A)), (x^{(j)})^{(i)} -> x^{(i,j)}
    std::vector<Poly> nested_mn; // UHS^m(UHS^n(A)), (x^{(i)})^{(j)} -> x^{(i,j)}
    std::vector<Poly> direct;    // hs_components_2d
};

BigradeSets bigrade_generator_sets(const AlgebraPresentation& a, std::uint32_t n, std::uint32_t m);

CheckOutcome bigrade_commute_check(const AlgebraPresentation& a, std::uint32_t n, std::uint32_t m);

/// Canonical strings of the nonzero generators, sorted and deduplicated.
std::vector<std::string> normalized_generator_set(const std::vector<Poly>& gens, const VarNames& names);

} // namespace jetforge
