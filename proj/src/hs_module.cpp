#include "jetforge/hs_module.hpp"

#include <algorithm>
#include <sstream>

#include "jetforge/errors.hpp"

namespace jetforge {

namespace {

std::string mismatch_report(const PolyMatrix& lhs, const PolyMatrix& rhs, const VarNames& names,
                            const char* lhs_label, const char* rhs_label)
{
    std::ostringstream out;
    if (lhs.size() != rhs.size()) {
        out << lhs_label << " has " << lhs.size() << " rows, " << rhs_label << " has " << rhs.size();
        return out.str();
    }
    for (std::size_t r = 0; r < lhs.size(); ++r) {
        if (lhs[r].size() != rhs[r].size()) {
            out << "row " << r << ": " << lhs[r].size() << " vs " << rhs[r].size() << " columns";
            return out.str();
        }
        for (std::size_t c = 0; c < lhs[r].size(); ++c)
            if (lhs[r][c] != rhs[r][c]) {
                out << "entry (" << r << "," << c << "): " << lhs_label << " " << to_string(lhs[r][c], names)
                    << ", " << rhs_label << " " << to_string(rhs[r][c], names);
                return out.str();
            }
    }
    return {};
}

} // namespace

// ------------------------------------------------------------ TwistedMatrix

TwistedMatrix::TwistedMatrix(std::uint32_t level, PolyMatrix entries) : level_(level), entries_(std::move(entries))
{
    if (entries_.size() != level_ + 1)
        throw DimensionMismatch("twisted matrix must be (n+1)x(n+1)");
    for (const auto& row : entries_)
        if (row.size() != level_ + 1)
            throw DimensionMismatch("twisted matrix must be (n+1)x(n+1)");
}

TwistedMatrix operator+(const TwistedMatrix& a, const TwistedMatrix& b)
{
    if (a.level_ != b.level_)
        throw DimensionMismatch("twisted matrices of different levels");
    auto e = a.entries_;
    for (std::size_t r = 0; r < e.size(); ++r)
        for (std::size_t c = 0; c < e.size(); ++c)
            e[r][c] += b.entries_[r][c];
    return TwistedMatrix(a.level_, std::move(e));
}

TwistedMatrix operator*(const TwistedMatrix& a, const TwistedMatrix& b)
{
    if (a.level_ != b.level_)
        throw DimensionMismatch("twisted matrices of different levels");
    const auto size = a.entries_.size();
    const auto field = a.entries_[0][0].field();
    PolyMatrix e(size, std::vector<Poly>(size, Poly(field)));
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c)
            for (std::size_t k = 0; k < size; ++k)
                if (!a.entries_[r][k].is_zero() && !b.entries_[k][c].is_zero())
                    e[r][c] += a.entries_[r][k] * b.entries_[k][c];
    return TwistedMatrix(a.level_, std::move(e));
}

TwistedMatrix twisted_action_matrix(const Poly& p, std::uint32_t n)
{
    auto d = hs_components(p, n);
    PolyMatrix e(n + 1, std::vector<Poly>(n + 1, Poly(p.field())));
    for (std::uint32_t j = 0; j <= n; ++j)
        for (std::uint32_t i = j; i <= n; ++i)
            e[j][i] = d[i - j];
    return TwistedMatrix(n, std::move(e));
}

// ------------------------------------------------------- module presentations

ModulePresentation::ModulePresentation(AlgebraPresentation over, std::uint32_t rank, PolyMatrix relations)
    : over_(std::move(over)), rank_(rank), relations_(std::move(relations))
{
    for (const auto& row : relations_) {
        if (row.size() != rank_)
            throw DimensionMismatch("module relation has " + std::to_string(row.size()) + " entries, rank is " +
                                    std::to_string(rank_));
        for (const auto& p : row) {
            if (p.field() != over_.field())
                throw FieldMismatch("module relation over the wrong field");
            for (auto v : p.variables()) {
                if (!v.is_base())
                    throw NotABaseElement("module relation contains a jet variable");
                if (v.base() >= over_.var_count())
                    throw UndeclaredVariable("module relation uses an undeclared variable");
            }
        }
    }
}

HSModulePresentation::HSModulePresentation(JetPresentation over, std::uint32_t base_rank, PolyMatrix relations)
    : over_(std::move(over)), base_rank_(base_rank), relations_(std::move(relations))
{
    for (const auto& row : relations_)
        if (row.size() != rank())
            throw DimensionMismatch("HS module row has the wrong width");
}

std::vector<std::string> HSModulePresentation::basis_labels() const
{
    std::vector<std::string> labels;
    for (std::uint32_t l = 0; l < base_rank_; ++l)
        for (std::uint32_t i = 0; i <= level(); ++i)
            labels.push_back("e" + std::to_string(l + 1) + "_" + std::to_string(i));
    return labels;
}

HSModulePresentation hs_module_presentation(const ModulePresentation& m, std::uint32_t n)
{
    const auto width = std::size_t{m.rank()} * (n + 1);
    const auto field = m.over().field();
    PolyMatrix rows;
    rows.reserve(m.relations().size() * (n + 1));
    for (const auto& relation : m.relations()) {
        std::vector<TwistedMatrix> blocks;
        blocks.reserve(m.rank());
        for (const auto& p : relation)
            blocks.push_back(twisted_action_matrix(p, n));
        for (std::uint32_t i = 0; i <= n; ++i) {
            std::vector<Poly> row(width, Poly(field));
            // row (k, i) is column i of each block T(p_kl)
            for (std::uint32_t l = 0; l < m.rank(); ++l)
                for (std::uint32_t j = 0; j <= i; ++j)
                    row[std::size_t{l} * (n + 1) + j] = blocks[l](j, i);
            rows.push_back(std::move(row));
        }
    }
    return HSModulePresentation(jet_presentation(m.over(), n), m.rank(), std::move(rows));
}

std::vector<Poly> delta_apply(const Poly& a, std::uint32_t l, std::uint32_t i, const ModulePresentation& m,
                              std::uint32_t n)
{
    if (l >= m.rank())
        throw IndexOutOfRange("basis index " + std::to_string(l) + " but rank is " + std::to_string(m.rank()));
    if (i > n)
        throw IndexOutOfRange("order " + std::to_string(i) + " exceeds level " + std::to_string(n));
    auto d = hs_components(a, n);
    std::vector<Poly> v(std::size_t{m.rank()} * (n + 1), Poly(a.field()));
    for (std::uint32_t j = 0; j <= i; ++j)
        v[std::size_t{l} * (n + 1) + j] = d[i - j];
    return v;
}

// --------------------------------------------------------- Kaehler differentials

namespace {

KaehlerPresentation jacobian(const std::vector<Poly>& relations, std::vector<JetVar> basis)
{
    KaehlerPresentation k{std::move(basis), {}};
    for (const auto& f : relations) {
        std::vector<Poly> row;
        row.reserve(k.basis.size());
        for (auto v : k.basis)
            row.push_back(partial_derivative(f, v));
        k.relations.push_back(std::move(row));
    }
    return k;
}

} // namespace

KaehlerPresentation kaehler_presentation(const AlgebraPresentation& a)
{
    std::vector<JetVar> basis;
    for (std::uint32_t x = 0; x < a.var_count(); ++x)
        basis.emplace_back(x);
    return jacobian(a.relations(), std::move(basis));
}

KaehlerPresentation kaehler_presentation(const JetPresentation& j)
{
    return jacobian(j.relations(), j.jet_vars());
}

ModulePresentation kaehler_module(const AlgebraPresentation& a)
{
    auto k = kaehler_presentation(a);
    return ModulePresentation(a, static_cast<std::uint32_t>(a.var_count()), std::move(k.relations));
}

CheckOutcome cotangent_theorem_check(const AlgebraPresentation& a, std::uint32_t n)
{
    auto jets = jet_presentation(a, n);
    auto lhs = kaehler_presentation(jets);
    auto rhs = hs_module_presentation(kaehler_module(a), n);
    CheckOutcome out;
    auto diff = mismatch_report(lhs.relations, rhs.relations(), jets.names(), "Omega(A_n)", "UHS^n(Omega_A)");
    out.ok = diff.empty();
    out.report = out.ok ? std::to_string(lhs.relations.size()) + "x" + std::to_string(lhs.basis.size()) +
                              " Jacobian equals the block twisted matrix"
                        : diff;
    return out;
}

// ------------------------------------------------------------ symmetric algebra

SymPresentation sym_presentation(const ModulePresentation& m)
{
    const auto& a = m.over();
    auto vars = a.vars();
    // Generator names must not collide with the base variables.
    std::string prefix;
    for (const char* candidate : {"e", "E", "g", "G", "h", "H"}) {
        bool clash = false;
        for (std::uint32_t l = 0; l < m.rank() && !clash; ++l)
            clash = std::find(vars.begin(), vars.end(), candidate + std::to_string(l + 1)) != vars.end();
        if (!clash) {
            prefix = candidate;
            break;
        }
    }
    if (prefix.empty())
        prefix = "gen";

    const auto base = static_cast<std::uint32_t>(vars.size());
    std::vector<std::uint32_t> grading(base, 0);
    for (std::uint32_t l = 0; l < m.rank(); ++l) {
        vars.push_back(prefix + std::to_string(l + 1));
        grading.push_back(1);
    }

    auto relations = a.relations();
    for (const auto& row : m.relations()) {
        Poly r(a.field());
        for (std::uint32_t l = 0; l < m.rank(); ++l)
            r += row[l] * Poly::variable(a.field(), JetVar(base + l));
        relations.push_back(std::move(r));
    }
    return SymPresentation{AlgebraPresentation(a.field(), std::move(vars), std::move(relations), std::move(grading)),
                           base, static_cast<std::uint32_t>(a.relations().size()), m.rank()};
}

CheckOutcome sym_theorem_check(const ModulePresentation& m, std::uint32_t n)
{
    auto sym = sym_presentation(m);
    auto jets = jet_presentation(sym.algebra, n);
    auto base_jets = jet_presentation(m.over(), n);
    auto module = hs_module_presentation(m, n);
    auto names = jets.names();

    std::vector<Poly> degree0;
    PolyMatrix degree1;
    CheckOutcome out;
    std::ostringstream report;

    const auto& grading = sym.algebra.grading();
    for (std::size_t k = 0; k < sym.algebra.relations().size(); ++k)
        for (std::uint32_t i = 0; i <= n; ++i) {
            const auto& r = jets.relation(k, i);
            auto deg = homogeneous_degree(r, GradingMode::induced, grading);
            if (!deg && r.is_zero())
                deg = k < sym.base_relation_count ? 0u : 1u;
            if (!deg || *deg > 1) {
                out.ok = false;
                report << "jet relation (" << k << "," << i << ") has unexpected induced degree: "
                       << to_string(r, names) << "\n";
                continue;
            }
            if (*deg == 0) {
                degree0.push_back(r);
                continue;
            }
            // Read the degree-1 relation as a linear form in the e_l^{(j)}.
            std::vector<Poly> row(module.rank(), Poly(r.field()));
            for (const auto& t : r.terms()) {
                const Monomial::Factor* gen = nullptr;
                for (const auto& f : t.monomial.factors())
                    if (f.first.base() >= sym.base_var_count)
                        gen = &f;
                auto v = gen->first;
                row[module.column(v.base() - sym.base_var_count, v.order())] +=
                    Poly::monomial(t.coeff, t.monomial.divided(v));
            }
            degree1.push_back(std::move(row));
        }

    if (degree0 != base_jets.relations()) {
        out.ok = false;
        report << "degree-0 relations differ from the jet relations of A ("
               << degree0.size() << " vs " << base_jets.relations().size() << ")\n";
    }
    auto diff = mismatch_report(degree1, module.relations(), names, "UHS^n(Sym M)_1", "UHS^n(M)");
    if (!diff.empty()) {
        out.ok = false;
        report << "degree-1 relations: " << diff << "\n";
    }
    if (out.ok)
        report << degree0.size() << " degree-0 and " << degree1.size() << " degree-1 relations match";
    out.report = report.str();
    return out;
}

// ----------------------------------------------------------------- base change

ModulePresentation base_change(const AlgebraMorphism& phi, const ModulePresentation& m)
{
    PolyMatrix rows;
    for (const auto& row : m.relations()) {
        std::vector<Poly> r;
        for (const auto& p : row)
            r.push_back(phi.apply(p));
        rows.push_back(std::move(r));
    }
    return ModulePresentation(phi.target(), m.rank(), std::move(rows));
}

CheckOutcome base_change_check(const AlgebraMorphism& phi, const ModulePresentation& m, std::uint32_t n)
{
    auto fn = induced_morphism(phi, n);
    auto source = hs_module_presentation(m, n);
    PolyMatrix pushed;
    for (const auto& row : source.relations()) {
        std::vector<Poly> r;
        for (const auto& p : row)
            r.push_back(fn.apply(p));
        pushed.push_back(std::move(r));
    }
    auto target = hs_module_presentation(base_change(phi, m), n);
    CheckOutcome out;
    auto diff = mismatch_report(pushed, target.relations(), target.over().names(), "f_n(UHS^n M)",
                                "UHS^n(M (x) A')");
    out.ok = diff.empty();
    out.report = out.ok ? std::to_string(pushed.size()) + " rows agree after base change" : diff;
    return out;
}

// ------------------------------------------------------------------ dual pair

CheckOutcome free_dual_zigzag_check(std::uint32_t n)
{
    const auto size = std::size_t{n} + 1;
    const auto field = Field::rationals();
    const Poly zero(field), one = Poly::constant(field, 1);
    auto identity = [&] {
        PolyMatrix id(size, std::vector<Poly>(size, zero));
        for (std::size_t i = 0; i < size; ++i)
            id[i][i] = one;
        return id;
    };
    auto product = [&](const PolyMatrix& a, const PolyMatrix& b) {
        PolyMatrix r(size, std::vector<Poly>(size, zero));
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = 0; j < size; ++j)
                for (std::size_t k = 0; k < size; ++k)
                    r[i][j] += a[i][k] * b[k][j];
        return r;
    };

    // coev[q][p]: coefficient of t^{[q]} (x) t^p in the image of 1.
    PolyMatrix coev(size, std::vector<Poly>(size, zero));
    for (std::size_t i = 0; i < size; ++i)
        coev[i][i] = one;
    // ev[p][q]: the functional t^{[q]} applied to t^p.
    auto dual_basis = identity();
    PolyMatrix ev(size, std::vector<Poly>(size, zero));
    for (std::size_t p = 0; p < size; ++p)
        for (std::size_t q = 0; q < size; ++q)
            ev[p][q] = dual_basis[q][p];

    CheckOutcome out;
    std::ostringstream report;
    // Q -> Q (x) P (x) Q -> Q and P -> P (x) Q (x) P -> P
    if (product(coev, ev) != identity()) {
        out.ok = false;
        report << "Q-side zig-zag is not the identity\n";
    }
    if (product(ev, coev) != identity()) {
        out.ok = false;
        report << "P-side zig-zag is not the identity\n";
    }

    // Balancing against a generic a = x: a acts on the dual by the twisted
    // matrix and on A_n[[t]]_n by multiplication with gamma(a).
    auto x = Poly::variable(field, JetVar(0));
    auto twist = twisted_action_matrix(x, n).entries();
    auto d = hs_components(x, n);
    PolyMatrix gamma(size, std::vector<Poly>(size, zero)); // gamma[p'][p]: t^{p'} in gamma(a) t^p
    for (std::size_t p = 0; p < size; ++p)
        for (std::size_t pp = p; pp < size; ++pp)
            gamma[pp][p] = d[pp - p];
    auto transpose = [&](const PolyMatrix& m) {
        PolyMatrix r(size, std::vector<Poly>(size, zero));
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = 0; j < size; ++j)
                r[i][j] = m[j][i];
        return r;
    };
    // a * coev(1) = coev(1) * a
    if (product(twist, coev) != transpose(product(gamma, transpose(coev)))) {
        out.ok = false;
        report << "coevaluation is not balanced for the twisted action\n";
    }
    // ev(t^p a (x) t^{[q]}) = ev(t^p (x) a t^{[q]})
    if (product(transpose(gamma), ev) != product(ev, twist)) {
        out.ok = false;
        report << "evaluation is not balanced for the twisted action\n";
    }
    if (out.ok)
        report << "both zig-zags are the " << size << "x" << size << " identity; pairing balanced";
    out.report = report.str();
    return out;
}

} // namespace jetforge
