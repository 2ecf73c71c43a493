#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jetforge/hs_engine.hpp"
#include "jetforge/series.hpp"

namespace jetforge {

// Jet line bundles O(d)_n on the jet space of P^1. Chart i has coordinate
// t_i (base index i) and jet coordinates t_i^{(0..n)}; on the overlap
// t_1 = 1/t_0 and e_0 = t_1^d e_1.

enum class P1Coords {
    chart1,  ///< entries in t1 jets, localized at t1_0
    overlap, ///< entries in t0 jets, localized at t0_0
};

/// Naming table shared by both charts: t0 and t1.
VarNames p1_names();

/// Matrix of the bundle map between the level-n jet frames; column j is
/// the image of the source frame element j.
struct TransitionMatrix {
    int d;
    std::uint32_t n;
    P1Coords coords;
    std::vector<std::vector<LocalPoly>> entries;
    std::vector<std::string> basis_from;
    std::vector<std::string> basis_to;
};

/// e_0^{(j)} -> Delta_j(t1^d e_1) = sum_i d_{j-i}(t1^d) e_1^{(i)}.
TransitionMatrix p1_transition(int d, std::uint32_t n, P1Coords coords);

/// The opposite direction e_1^{(j)} -> Delta_j(t0^d e_0), in t0 jets.
TransitionMatrix p1_reverse_transition(int d, std::uint32_t n);

/// Both composites of p1_transition(d, n, overlap) with the reverse map are
/// the identity over the localized ring.
CheckOutcome cocycle_check(int d, std::uint32_t n);

struct SectionDescriptor {
    std::string label; ///< "e{chart}_{order}"
    std::uint32_t chart;
    std::uint32_t order;
    bool global;
};

/// Whether the frame element e_chart^{(order)} of O(d)_n extends over the
/// other chart, i.e. its expression there is denominator-free.
bool section_is_global(int d, std::uint32_t n, std::uint32_t chart, std::uint32_t order);

/// The 2(n+1) generators e_i^{(j)} of the global sections of O(1)_n, each
/// verified global. Throws UnsupportedTwist for d != 1.
std::vector<SectionDescriptor> global_sections(int d, std::uint32_t n);

} // namespace jetforge
