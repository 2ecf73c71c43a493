#include "jetforge/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "jetforge/check_suite.hpp"
#include "jetforge/dsl.hpp"
#include "jetforge/hs_module.hpp"
#include "jetforge/p1.hpp"

namespace jetforge::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
    std::string format = "text";
    std::string input;
    std::uint32_t n = 1;
    std::uint32_t m = 1;
    std::optional<std::uint32_t> omega_n;
    int d = 1;
    bool cocycle = false;
    bool sections = false;
    std::string coords = "chart1";
    std::vector<std::string> suites{"all"};
    std::uint32_t trials = 100;
    std::uint64_t seed = 0;
    std::uint32_t jobs = 1;
    std::string instance;
    std::uint32_t check_n = 0, check_m = 0;
    int check_d = 0;
};

class UsageError : public Error {
    using Error::Error;
};

std::string read_all(std::istream& s)
{
    std::ostringstream buf;
    buf << s.rdbuf();
    return buf.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot open '" + path + "'");
    return read_all(f);
}

InputDocument load(const Options& o, std::istream& in)
{
    auto text = o.input.empty() || o.input == "-" ? read_all(in) : read_file(o.input);
    return parse_input(text, default_field_from_env());
}

ordered_json strings(const std::vector<Poly>& polys, const VarNames& names)
{
    auto out = ordered_json::array();
    for (const auto& p : polys)
        out.push_back(to_string(p, names));
    return out;
}

ordered_json matrix(const PolyMatrix& rows, const VarNames& names)
{
    auto out = ordered_json::array();
    for (const auto& row : rows)
        out.push_back(strings(row, names));
    return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i)
        s += (i ? sep : "") + items[i];
    return s;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

void print_matrix(std::ostream& out, const PolyMatrix& rows, const VarNames& names)
{
    for (const auto& row : rows) {
        std::vector<std::string> cells;
        for (const auto& p : row)
            cells.push_back(to_string(p, names));
        out << "  [" << join(cells, ", ") << "]\n";
    }
}

int cmd_jet(const Options& o, std::istream& in, std::ostream& out)
{
    auto doc = load(o, in);
    auto jp = jet_presentation(doc.algebra(), o.n);
    auto names = jp.names();
    std::vector<std::string> vars;
    for (auto v : jp.jet_vars())
        vars.push_back(names.render(v));

    if (o.format == "json") {
        ordered_json j;
        j["level"] = o.n;
        j["vars"] = vars;
        j["relations"] = strings(jp.relations(), names);
        ordered_json structural = ordered_json::object(), induced = ordered_json::object();
        for (auto v : jp.jet_vars()) {
            structural[names.render(v)] = v.order();
            if (doc.grading)
                induced[names.render(v)] = (*doc.grading)[v.base()];
        }
        j["structural_degrees"] = structural;
        j["induced_degrees"] = induced;
        emit(out, j);
        return ok;
    }
    out << "jet algebra of level " << o.n << " over " << doc.field.name() << "\n";
    out << "variables: " << join(vars, ", ") << "\n";
    out << "relations:\n";
    for (std::size_t k = 0; k < doc.relations.size(); ++k)
        for (std::uint32_t i = 0; i <= o.n; ++i)
            out << "  " << doc.relations[k].name << "_" << i << " = " << to_string(jp.relation(k, i), names) << "\n";
    return ok;
}

int cmd_jet2(const Options& o, std::istream& in, std::ostream& out)
{
    auto doc = load(o, in);
    BiJetPresentation bj(doc.algebra(), o.n, o.m);
    auto names = bj.names();
    std::vector<std::string> vars;
    for (auto v : bj.jet_vars())
        vars.push_back(names.render(v));
    if (o.format == "json") {
        ordered_json j;
        j["levels"] = {o.n, o.m};
        j["vars"] = vars;
        j["relations"] = strings(bj.relations(), names);
        emit(out, j);
        return ok;
    }
    out << "bivariate jet algebra of level (" << o.n << ", " << o.m << ") over " << doc.field.name() << "\n";
    out << "variables: " << join(vars, ", ") << "\n";
    out << "relations:\n";
    std::size_t idx = 0;
    for (const auto& r : doc.relations)
        for (std::uint32_t i = 0; i <= o.n; ++i)
            for (std::uint32_t jj = 0; jj <= o.m; ++jj)
                out << "  " << r.name << "_" << i << "_" << jj << " = " << to_string(bj.relations()[idx++], names)
                    << "\n";
    return ok;
}

int cmd_module(const Options& o, std::istream& in, std::ostream& out)
{
    auto doc = load(o, in);
    auto hs = hs_module_presentation(doc.module_presentation(), o.n);
    auto names = hs.over().names();
    if (o.format == "json") {
        ordered_json j;
        j["level"] = o.n;
        j["rank"] = hs.rank();
        j["basis"] = hs.basis_labels();
        j["relations"] = matrix(hs.relations(), names);
        emit(out, j);
        return ok;
    }
    out << "Hasse-Schmidt module of level " << o.n << ", rank " << hs.rank() << "\n";
    out << "basis: " << join(hs.basis_labels(), ", ") << "\n";
    out << "relations (" << hs.relations().size() << "):\n";
    print_matrix(out, hs.relations(), names);
    return ok;
}

int cmd_omega(const Options& o, std::istream& in, std::ostream& out)
{
    auto doc = load(o, in);
    auto a = doc.algebra();
    KaehlerPresentation kp;
    VarNames names;
    if (o.omega_n) {
        auto jp = jet_presentation(a, *o.omega_n);
        kp = kaehler_presentation(jp);
        names = jp.names();
    } else {
        kp = kaehler_presentation(a);
        names = a.base_names();
    }
    std::vector<std::string> basis;
    for (auto v : kp.basis)
        basis.push_back("d" + names.render(v));
    if (o.format == "json") {
        ordered_json j;
        if (o.omega_n)
            j["level"] = *o.omega_n;
        j["rank"] = basis.size();
        j["basis"] = basis;
        j["relations"] = matrix(kp.relations, names);
        emit(out, j);
        return ok;
    }
    out << "Kaehler differentials";
    if (o.omega_n)
        out << " of the level " << *o.omega_n << " jet algebra";
    out << ", rank " << basis.size() << "\n";
    out << "basis: " << join(basis, ", ") << "\n";
    out << "relations (" << kp.relations.size() << "):\n";
    print_matrix(out, kp.relations, names);
    return ok;
}

int cmd_sym(const Options& o, std::istream& in, std::ostream& out)
{
    auto doc = load(o, in);
    auto sp = sym_presentation(doc.module_presentation());
    const auto& alg = sp.algebra;
    auto names = alg.base_names();
    if (o.format == "json") {
        ordered_json j;
        j["vars"] = alg.vars();
        ordered_json grading = ordered_json::object();
        for (std::size_t v = 0; v < alg.var_count(); ++v)
            grading[alg.vars()[v]] = (*alg.grading())[v];
        j["grading"] = grading;
        j["relations"] = strings(alg.relations(), names);
        emit(out, j);
        return ok;
    }
    out << "symmetric algebra over " << alg.field().name() << "[" << join(alg.vars(), ",") << "]\n";
    out << "grading:";
    for (std::size_t v = 0; v < alg.var_count(); ++v)
        out << " " << alg.vars()[v] << "=" << (*alg.grading())[v];
    out << "\nrelations:\n";
    for (const auto& r : alg.relations())
        out << "  " << to_string(r, names) << "\n";
    return ok;
}

int cmd_morphism(const Options& o, std::istream& in, std::ostream& out)
{
    auto doc = load(o, in);
    auto fn = induced_morphism(doc.morphism_map(), o.n);
    auto source = fn.source().names();
    auto target = fn.target().names();
    if (o.format == "json") {
        ordered_json j;
        j["level"] = o.n;
        ordered_json images = ordered_json::object();
        for (const auto& [v, p] : fn.images())
            images[source.render(v)] = to_string(p, target);
        j["images"] = images;
        emit(out, j);
        return ok;
    }
    out << "induced morphism of level " << o.n << "\n";
    for (const auto& [v, p] : fn.images())
        out << "  " << source.render(v) << " -> " << to_string(p, target) << "\n";
    return ok;
}

int cmd_check(const Options& o, std::ostream& out)
{
    CheckConfig cfg;
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    cfg.suites = o.suites;
    cfg.jobs = o.jobs;
    cfg.validate();

    if (!o.instance.empty()) {
        auto selected = cfg.selected_suites();
        if (selected.size() != 1)
            throw UsageError("--instance replays exactly one suite");
        SuiteInstance inst{parse_input(read_file(o.instance), default_field_from_env()), o.check_n, o.check_m,
                           o.check_d};
        auto r = evaluate_suite(selected.front(), inst, o.seed);
        if (o.format == "json") {
            ordered_json j;
            j["suite"] = selected.front();
            j["passed"] = r.ok;
            j["detail"] = r.detail;
            if (r.oracle_used)
                j["oracle_agrees"] = r.oracle_agrees;
            emit(out, j);
        } else {
            out << (r.ok ? "PASS " : "FAIL ") << selected.front();
            if (!r.detail.empty())
                out << ": " << r.detail;
            out << "\n";
        }
        return r.ok ? ok : check_failed;
    }

    auto report = run_suite(cfg);
    if (o.format == "json")
        emit(out, report.to_json());
    else
        out << report.to_text();
    return report.passed() ? ok : check_failed;
}

int cmd_p1(const Options& o, std::ostream& out)
{
    auto coords = o.coords == "overlap" ? P1Coords::overlap : P1Coords::chart1;
    auto tm = p1_transition(o.d, o.n, coords);
    auto names = p1_names();
    std::optional<CheckOutcome> cocycle;
    if (o.cocycle || o.format == "json")
        cocycle = cocycle_check(o.d, o.n);
    std::vector<SectionDescriptor> sections;
    if (o.sections || (o.format == "json" && o.d == 1))
        sections = global_sections(o.d, o.n);

    std::vector<std::vector<std::string>> cells;
    for (const auto& row : tm.entries) {
        cells.emplace_back();
        for (const auto& e : row)
            cells.back().push_back(to_string(e, names));
    }

    if (o.format == "json") {
        ordered_json j;
        j["d"] = o.d;
        j["n"] = o.n;
        j["coords"] = o.coords;
        j["basis_from"] = tm.basis_from;
        j["basis_to"] = tm.basis_to;
        j["transition"] = cells;
        j["cocycle_ok"] = cocycle->ok;
        auto labels = ordered_json::array();
        for (const auto& s : sections)
            if (s.global)
                labels.push_back(s.label);
        j["global_sections"] = labels;
        emit(out, j);
    } else {
        out << "O(" << o.d << ")_" << o.n << " transition in " << o.coords
            << " coordinates; column j is the image of " << tm.basis_from.front().substr(0, 2) << "_j\n";
        for (std::size_t i = 0; i < cells.size(); ++i)
            out << "  " << tm.basis_to[i] << ": [" << join(cells[i], ", ") << "]\n";
        if (cocycle)
            out << "cocycle: " << (cocycle->ok ? "ok" : "FAILED") << " (" << cocycle->report << ")\n";
        if (o.sections) {
            std::vector<std::string> labels;
            for (const auto& s : sections)
                labels.push_back(s.label + (s.global ? "" : " (not global)"));
            out << "global sections (" << sections.size() << "): " << join(labels, ", ") << "\n";
        }
    }
    bool good = (!cocycle || cocycle->ok) &&
                std::all_of(sections.begin(), sections.end(), [](const auto& s) { return s.global; });
    return good ? ok : check_failed;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Hasse-Schmidt jet algebras, modules and their structural identities", "jetforge"};
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto input_option = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "Input file (stdin when omitted or '-')");
    };

    auto* jet = app.add_subcommand("jet", "Jet algebra presentation");
    jet->add_option("--n", o.n, "Jet level")->required();
    input_option(jet);

    auto* jet2 = app.add_subcommand("jet2", "Bivariate jet algebra presentation");
    jet2->add_option("--n", o.n, "First level")->required();
    jet2->add_option("--m", o.m, "Second level")->required();
    input_option(jet2);

    auto* module = app.add_subcommand("module", "Hasse-Schmidt module of the declared module");
    module->add_option("--n", o.n, "Jet level")->required();
    input_option(module);

    auto* omega = app.add_subcommand("omega", "Kaehler differentials, of the jet algebra when --n is given");
    omega->add_option("--n", o.omega_n, "Jet level");
    input_option(omega);

    auto* sym = app.add_subcommand("sym", "Graded presentation of the symmetric algebra of the module");
    input_option(sym);

    auto* morphism = app.add_subcommand("morphism", "Induced map of jet algebras");
    morphism->add_option("--n", o.n, "Jet level")->required();
    input_option(morphism);

    auto* check = app.add_subcommand("check", "Run the randomized theorem suites");
    check->add_option("--suite", o.suites, "Suite name or 'all' (comma separated)")->delimiter(',');
    check->add_option("--trials", o.trials, "Trials per suite");
    check->add_option("--seed", o.seed, "Seed; with --instance, the random-point seed");
    check->add_option("--jobs", o.jobs, "Worker threads");
    auto* instance = check->add_option("--instance", o.instance, "Replay one instance file");
    check->add_option("--n", o.check_n, "Level for --instance")->needs(instance);
    check->add_option("--m", o.check_m, "Second level for --instance")->needs(instance);
    check->add_option("--d", o.check_d, "Twist for --instance")->needs(instance);

    auto* p1 = app.add_subcommand("p1", "Jet line bundles O(d)_n on the projective line");
    p1->add_option("--d", o.d, "Twist")->required();
    p1->add_option("--n", o.n, "Jet level")->required();
    p1->add_flag("--cocycle", o.cocycle, "Verify the cocycle condition");
    p1->add_flag("--sections", o.sections, "List global sections (d = 1)");
    p1->add_option("--coords", o.coords, "Coordinates of the entries")->check(CLI::IsMember({"chart1", "overlap"}));

    for (auto* sub : {jet, jet2, module, omega, sym, morphism, check, p1})
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (jet->parsed())
            return cmd_jet(o, in, out);
        if (jet2->parsed())
            return cmd_jet2(o, in, out);
        if (module->parsed())
            return cmd_module(o, in, out);
        if (omega->parsed())
            return cmd_omega(o, in, out);
        if (sym->parsed())
            return cmd_sym(o, in, out);
        if (morphism->parsed())
            return cmd_morphism(o, in, out);
        if (check->parsed())
            return cmd_check(o, out);
        if (p1->parsed())
            return cmd_p1(o, out);
    } catch (const ParseError& e) {
        err << "error: " << (o.input.empty() ? "<stdin>" : o.input) << ": " << e.what() << "\n";
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
    return usage_error;
}

} // namespace jetforge::cli
