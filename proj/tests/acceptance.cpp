#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "jetforge/check_suite.hpp"
#include "jetforge/cli.hpp"
#include "jetforge/hs_module.hpp"
#include "jetforge/p1.hpp"
#include "jetforge/series.hpp"
#include "support.hpp"

using namespace testing;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail)
{
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << what << " [" << detail << "]\n";
    if (!pass)
        ++failures;
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// Fresh instances, unrelated to the seed-42 theorem run.
constexpr std::uint64_t kSeed = 20240611;

template <class Check>
int count_mismatches(const std::string& suite, Check check)
{
    CheckConfig cfg;
    cfg.seed = kSeed;
    int mismatches = 0;
    for (std::uint32_t t = 0; t < 50; ++t)
        if (!check(random_instance(suite, cfg, t)))
            ++mismatches;
    return mismatches;
}

} // namespace

int main()
{
    // 1 and 7: the full theorem run
    CheckConfig cfg;
    cfg.seed = 42;
    cfg.trials = 100;
    auto start = std::chrono::steady_clock::now();
    auto rep = run_suite(cfg);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t failed_trials = 0;
    for (const auto& s : rep.suites)
        failed_trials += s.failures.size();
    {
        std::ostringstream d;
        d << rep.suites.size() << " suites, " << failed_trials << " failures, " << seconds << " s";
        report(1, rep.suites.size() == 13 && rep.passed() && seconds < 60.0,
               "check --suite all --trials 100 --seed 42 passes within 60 s", d.str());
    }

    // 2: golden file, plus the brute-force and random-point oracles
    {
        std::istringstream in(slurp(JETFORGE_GOLDEN_DIR "/cusp.jf"));
        std::ostringstream out, err;
        int code = jetforge::cli::run({"--format", "json", "jet", "--n", "2"}, in, out, err);
        bool golden = code == 0 && out.str() == slurp(JETFORGE_GOLDEN_DIR "/cusp_jet_n2.json");

        auto f = parse_poly("y^2 - x^3");
        auto d = hs_components(f, 2);
        bool naive = true;
        for (std::uint32_t i = 0; i <= 2; ++i)
            naive = naive && d[i] == naive_component(f, i);
        Rng rng(2);
        bool points = true;
        for (int k = 0; k < 20; ++k) {
            std::vector<TruncSeries<Scalar>> args;
            Assignment pt;
            for (std::uint32_t v = 0; v < 2; ++v) {
                std::vector<Scalar> c;
                for (std::uint32_t i = 0; i <= 2; ++i) {
                    c.push_back(rng.scalar());
                    pt.emplace(JetVar(v, i), c.back());
                }
                args.emplace_back(2, c);
            }
            auto direct = args[1].pow(2) + TruncSeries<Scalar>::constant(2, Scalar(Q, -1)) * args[0].pow(3);
            for (std::uint32_t i = 0; i <= 2; ++i)
                points = points && eval_at_point(d[i], pt) == direct[i];
        }
        report(2, golden && naive && points, "cusp jet --n 2 is byte-identical to the golden file",
               std::string("golden ") + (golden ? "match" : "MISMATCH") + ", brute force " +
                   (naive ? "agrees" : "DISAGREES") + ", 20 points " + (points ? "agree" : "DISAGREE"));
    }

    // 3: cotangent formula
    {
        int bad = count_mismatches("cotangent_theorem", [](const SuiteInstance& inst) {
            return cotangent_theorem_check(inst.doc.algebra(), inst.n).ok;
        });
        report(3, bad == 0, "Jacobian of the jet presentation equals the HS module of the Jacobian",
               "50 presentations, " + std::to_string(bad) + " mismatches");
    }

    // 4: Sym commutation, n <= 3
    {
        int bad = count_mismatches("sym_theorem", [](const SuiteInstance& inst) {
            return inst.n <= 3 && sym_theorem_check(inst.doc.module_presentation(), inst.n).ok;
        });
        report(4, bad == 0, "degree-0 and degree-1 generators of the Sym comparison agree",
               "50 modules, " + std::to_string(bad) + " mismatches");
    }

    // 5: functor commutation, (n, m) <= (2, 2)
    {
        int bad = count_mismatches("bigrade_commute", [](const SuiteInstance& inst) {
            return inst.n <= 2 && inst.m <= 2 && bigrade_commute_check(inst.doc.algebra(), inst.n, inst.m).ok;
        });
        report(5, bad == 0, "three bivariate generator sets coincide",
               "50 algebras, " + std::to_string(bad) + " mismatches");
    }

    // 6: projective line
    {
        int cocycle_bad = 0, section_bad = 0;
        for (int d = -2; d <= 2; ++d)
            for (std::uint32_t n = 0; n <= 3; ++n)
                cocycle_bad += !cocycle_check(d, n).ok;
        for (std::uint32_t n = 0; n <= 3; ++n) {
            auto s = global_sections(1, n);
            bool good = s.size() == 2 * (n + 1);
            for (const auto& x : s)
                good = good && x.global && section_is_global(1, n, x.chart, x.order);
            section_bad += !good;
        }
        report(6, cocycle_bad == 0 && section_bad == 0, "P1 cocycles for d in -2..2 and O(1) sections for n <= 3",
               std::to_string(cocycle_bad) + " cocycle failures, " + std::to_string(section_bad) +
                   " section failures");
    }

    // 7: oracle agreement in the seed-42 run
    {
        std::uint32_t checks = 0, disagreements = 0;
        for (const auto& s : rep.suites)
            if (s.name == "leibniz" || s.name == "jacobian_identity") {
                checks += s.oracle_checks;
                disagreements += s.oracle_disagreements;
            }
        report(7, checks == 200 && disagreements == 0,
               "symbolic and random-point verdicts agree on leibniz and jacobian_identity",
               std::to_string(checks) + " trials, " + std::to_string(disagreements) + " disagreements");
    }

    return failures == 0 ? 0 : 1;
}
