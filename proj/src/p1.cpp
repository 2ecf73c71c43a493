#include "jetforge/p1.hpp"

#include "jetforge/errors.hpp"

namespace jetforge {

namespace {

constexpr std::uint32_t kChart0 = 0;
constexpr std::uint32_t kChart1 = 1;

const Field kField = Field::rationals();

// sum_i t_c^{(i)} s^i over the ring localized at t_c^{(0)}
TruncSeries<LocalPoly> coordinate_series(std::uint32_t chart, std::uint32_t n)
{
    JetVar unit(chart, 0);
    std::vector<LocalPoly> c;
    for (std::uint32_t i = 0; i <= n; ++i)
        c.emplace_back(Poly::variable(kField, JetVar(chart, i)), unit);
    return TruncSeries<LocalPoly>(n, std::move(c));
}

std::vector<std::string> frame_labels(std::uint32_t chart, std::uint32_t n)
{
    std::vector<std::string> labels;
    for (std::uint32_t j = 0; j <= n; ++j)
        labels.push_back("e" + std::to_string(chart) + "_" + std::to_string(j));
    return labels;
}

// Entry (i, j) = coefficient j - i of the series, zero below the diagonal.
std::vector<std::vector<LocalPoly>> toeplitz(const TruncSeries<LocalPoly>& s)
{
    const auto size = s.coeffs().size();
    auto zero = zero_like(s[0]);
    std::vector<std::vector<LocalPoly>> m(size, std::vector<LocalPoly>(size, zero));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i; j < size; ++j)
            m[i][j] = s[j - i];
    return m;
}

using LocalMatrix = std::vector<std::vector<LocalPoly>>;

LocalMatrix product(const LocalMatrix& a, const LocalMatrix& b)
{
    const auto size = a.size();
    auto zero = zero_like(a[0][0]);
    LocalMatrix r(size, std::vector<LocalPoly>(size, zero));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            for (std::size_t k = 0; k < size; ++k)
                r[i][j] += a[i][k] * b[k][j];
    return r;
}

bool is_identity(const LocalMatrix& m)
{
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            const auto& e = m[i][j];
            bool want_one = i == j;
            if (want_one ? !(e.denom_exp() == 0 && e.numerator() == Poly::constant(kField, 1)) : !e.is_zero())
                return false;
        }
    return true;
}

} // namespace

VarNames p1_names()
{
    return VarNames{{"t0", "t1"}, true};
}

TransitionMatrix p1_transition(int d, std::uint32_t n, P1Coords coords)
{
    TransitionMatrix t{d, n, coords, {}, frame_labels(kChart0, n), frame_labels(kChart1, n)};
    auto chart1 = toeplitz(series_pow(coordinate_series(kChart1, n), d));
    if (coords == P1Coords::chart1) {
        t.entries = std::move(chart1);
        return t;
    }

    // t1^{(i)} -> d_i(t0^{-1}), read off the inverse of the t0 series
    auto inverse = series_invert(coordinate_series(kChart0, n));
    std::map<JetVar, LocalPoly> images;
    for (std::uint32_t i = 0; i <= n; ++i)
        images.emplace(JetVar(kChart1, i), inverse[i]);
    JetVar unit0(kChart0, 0);
    for (auto& row : chart1)
        for (auto& e : row)
            e = substitute(e, images, unit0);
    t.entries = std::move(chart1);
    return t;
}

TransitionMatrix p1_reverse_transition(int d, std::uint32_t n)
{
    return TransitionMatrix{d, n, P1Coords::overlap, toeplitz(series_pow(coordinate_series(kChart0, n), d)),
                            frame_labels(kChart1, n), frame_labels(kChart0, n)};
}

CheckOutcome cocycle_check(int d, std::uint32_t n)
{
    auto forward = p1_transition(d, n, P1Coords::overlap).entries;
    auto reverse = p1_reverse_transition(d, n).entries;
    CheckOutcome out;
    if (!is_identity(product(forward, reverse)))
        out.report = "forward * reverse is not the identity";
    if (!is_identity(product(reverse, forward)))
        out.report += std::string(out.report.empty() ? "" : "; ") + "reverse * forward is not the identity";
    out.ok = out.report.empty();
    if (out.ok)
        out.report = "O(" + std::to_string(d) + ")_" + std::to_string(n) + ": transition composites are the identity";
    return out;
}

bool section_is_global(int d, std::uint32_t n, std::uint32_t chart, std::uint32_t order)
{
    if (chart > 1 || order > n)
        throw IndexOutOfRange("no frame element e" + std::to_string(chart) + "_" + std::to_string(order));
    // Expressed in the other chart's own coordinates.
    auto m = chart == kChart0 ? p1_transition(d, n, P1Coords::chart1).entries : p1_reverse_transition(d, n).entries;
    for (const auto& row : m)
        if (row[order].denom_exp() != 0)
            return false;
    return true;
}

std::vector<SectionDescriptor> global_sections(int d, std::uint32_t n)
{
    if (d != 1)
        throw UnsupportedTwist("global sections are only computed for O(1), got d=" + std::to_string(d));
    std::vector<SectionDescriptor> out;
    for (std::uint32_t chart : {kChart0, kChart1})
        for (std::uint32_t j = 0; j <= n; ++j)
            out.push_back(SectionDescriptor{"e" + std::to_string(chart) + "_" + std::to_string(j), chart, j,
                                            section_is_global(d, n, chart, j)});
    return out;
}

} // namespace jetforge
