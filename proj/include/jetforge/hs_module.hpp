#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jetforge/hs_engine.hpp"
#include "jetforge/poly.hpp"

namespace jetforge {

using PolyMatrix = std::vector<std::vector<Poly>>;

/// T(p): entry (row j, column i) is d_{i-j}(p) for j <= i and 0 below the
/// diagonal. Column i is a * e^{(i)} = sum_{j <= i} a^{(i-j)} e^{(j)}.
class TwistedMatrix {
public:
    TwistedMatrix(std::uint32_t level, PolyMatrix entries);

    std::uint32_t level() const { return level_; }
    std::size_t size() const { return entries_.size(); }
    const Poly& operator()(std::size_t row, std::size_t col) const { return entries_[row][col]; }
    const PolyMatrix& entries() const { return entries_; }

    friend TwistedMatrix operator+(const TwistedMatrix& a, const TwistedMatrix& b);
    friend TwistedMatrix operator*(const TwistedMatrix& a, const TwistedMatrix& b);
    friend bool operator==(const TwistedMatrix&, const TwistedMatrix&) = default;

private:
    std::uint32_t level_;
    PolyMatrix entries_;
};

TwistedMatrix twisted_action_matrix(const Poly& p, std::uint32_t n);

/// Cokernel of an s x r relation matrix over a presented algebra; row k is
/// the relation sum_l p_{kl} e_l.
class ModulePresentation {
public:
    ModulePresentation(AlgebraPresentation over, std::uint32_t rank, PolyMatrix relations);

    const AlgebraPresentation& over() const { return over_; }
    std::uint32_t rank() const { return rank_; }
    const PolyMatrix& relations() const { return relations_; }

private:
    AlgebraPresentation over_;
    std::uint32_t rank_;
    PolyMatrix relations_;
};

/// UHS^n(M) = M (x) dual(A_n[[t]]_n) as a cokernel over A_n. Basis (l, i)
/// stands for e_l (x) t^{[i]} and is ordered l first; row (k, i) is
/// sum_l sum_{j <= i} d_{i-j}(p_{kl}) e_l^{(j)}.
class HSModulePresentation {
public:
    HSModulePresentation(JetPresentation over, std::uint32_t base_rank, PolyMatrix relations);

    const JetPresentation& over() const { return over_; }
    std::uint32_t level() const { return over_.level(); }
    std::uint32_t base_rank() const { return base_rank_; }
    std::uint32_t rank() const { return base_rank_ * (level() + 1); }
    std::size_t column(std::uint32_t l, std::uint32_t i) const { return std::size_t{l} * (level() + 1) + i; }
    const PolyMatrix& relations() const { return relations_; }
    /// "e{l+1}_{i}" for every basis element in order.
    std::vector<std::string> basis_labels() const;

private:
    JetPresentation over_;
    std::uint32_t base_rank_;
    PolyMatrix relations_;
};

HSModulePresentation hs_module_presentation(const ModulePresentation& m, std::uint32_t n);

/// a * (e_l (x) t^{[i]}) in the basis of hs_module_presentation(M, n):
/// sum_{j <= i} d_{i-j}(a) (e_l (x) t^{[j]}). Throws IndexOutOfRange.
std::vector<Poly> delta_apply(const Poly& a, std::uint32_t l, std::uint32_t i, const ModulePresentation& m,
                              std::uint32_t n);

/// Jacobian presentation of Omega: one column per variable (base variables,
/// or jet variables in canonical order), one row per relation.
struct KaehlerPresentation {
    std::vector<JetVar> basis;
    PolyMatrix relations;
};

KaehlerPresentation kaehler_presentation(const AlgebraPresentation& a);
KaehlerPresentation kaehler_presentation(const JetPresentation& j);

/// Omega_{A/k} as a ModulePresentation over A (rank = number of variables).
ModulePresentation kaehler_module(const AlgebraPresentation& a);

/// Jacobian of the jet presentation against the HS module of Omega_{A/k}:
/// both are indexed rows (k, i), columns (l, j) and must agree verbatim.
CheckOutcome cotangent_theorem_check(const AlgebraPresentation& a, std::uint32_t n);

/// Sym_A(M): base variables (degree 0) plus generators e1..er (degree 1)
/// and the module relations as degree-1 equations.
struct SymPresentation {
    AlgebraPresentation algebra;
    std::uint32_t base_var_count;
    std::uint32_t base_relation_count;
    std::uint32_t rank;
    /// Variable index of generator e_l.
    std::uint32_t generator(std::uint32_t l) const { return base_var_count + l; }
};

SymPresentation sym_presentation(const ModulePresentation& m);

/// UHS^n(Sym_A M) with its induced grading against Sym_{A_n}(UHS^n M):
/// degree-0 relations must be the jet relations of A and degree-1
/// relations, read as linear forms in the e_l^{(j)}, the HS module rows.
CheckOutcome sym_theorem_check(const ModulePresentation& m, std::uint32_t n);

/// M (x)_A A' along phi.
ModulePresentation base_change(const AlgebraMorphism& phi, const ModulePresentation& m);

/// f_n applied to every entry of hs_module_presentation(M, n) against
/// hs_module_presentation(M (x) A', n).
CheckOutcome base_change_check(const AlgebraMorphism& phi, const ModulePresentation& m, std::uint32_t n);

/// Zig-zag identities of the free dual pair (A_n[[t]]_n, its dual) with
/// coevaluation 1 -> sum t^{[i]} (x) t^i and evaluation t^i (x) t^{[j]} ->
/// delta_ij, plus compatibility of the coevaluation with the twisted action
/// of a generic element.
CheckOutcome free_dual_zigzag_check(std::uint32_t n);

} // namespace jetforge
