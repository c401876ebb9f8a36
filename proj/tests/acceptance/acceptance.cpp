// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cli/commands.hpp"
#include "cli/document.hpp"
#include "echinf/ech_model.hpp"
#include "echinf/o_complex.hpp"
#include "echinf/verifier.hpp"
#include "json.hpp"
#include "paths.hpp"
#include "random_hf.hpp"

using namespace echinf;
using echinf::testing::data_path;

namespace {

constexpr double lemma_seconds = 1.0;
constexpr double square_zero_seconds = 60.0;
constexpr double ladder_seconds = 300.0;
constexpr double collapse_seconds = 60.0;
constexpr int square_zero_instances = 200;
constexpr int ladder_instances = 50;
constexpr std::uint64_t seed = 20240611;

const std::vector<std::string> corpus = {"trivial", "acyclic", "graded_p4", "stress_g2"};
const std::vector<int> corpus_genera = {1, 2, 3};

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail)
{
    if (!ok)
        ++failures;
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt_seconds(double s, double limit)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s (limit %.0f s)", s, limit);
    return buf;
}

HFData load(const std::string& name)
{
    return cli::read_document(data_path("corpus/" + name + ".json"));
}

struct Instance {
    std::string name;
    HFData hf;
    int g;
};

std::vector<Instance> ladder_family()
{
    std::vector<Instance> out;
    for (const auto& name : corpus)
        for (int g : corpus_genera)
            out.push_back({name, load(name), g});
    std::mt19937_64 rng(seed + 1);
    const std::int64_t moduli[] = {0, 2, 4, 8};
    for (int i = 0; i < ladder_instances; ++i) {
        testing::RandomHFOptions opt;
        opt.modulus = moduli[i % 4];
        int g = 1 + (i / 4) % 3;
        out.push_back({"random#" + std::to_string(i), testing::random_hf(rng, opt), g});
    }
    return out;
}

std::string first_failure(const VerificationReport& r)
{
    for (const auto& f : r.findings)
        if (!f.ok)
            return f.check + ": " + f.detail;
    return r.witness.empty() ? verdict_name(r.verdict) : r.witness;
}

// Interior groups keyed by (table, flavor, grading).
using GroupTable = std::map<std::tuple<std::string, std::string, GradingKey>, std::string>;

GroupTable interior_groups(const VerificationReport& r)
{
    GroupTable t;
    for (const auto& e : r.groups)
        if (e.interior)
            t[{e.table, e.flavor, e.grading}] = e.group;
    return t;
}

// Every interior entry of `base` must reappear unchanged in `wide`.
std::string compare_groups(const GroupTable& base, const GroupTable& wide)
{
    for (const auto& [key, group] : base) {
        auto it = wide.find(key);
        if (it == wide.end())
            return std::get<0>(key) + "/" + std::get<1>(key) + " grading " + std::to_string(std::get<2>(key)) +
                   " missing";
        if (it->second != group)
            return std::get<0>(key) + "/" + std::get<1>(key) + " grading " + std::to_string(std::get<2>(key)) + ": " +
                   group + " became " + it->second;
    }
    return {};
}

Budgets widened(int g)
{
    Budgets b;
    b.L = minimal_level(g) + 2;
    b.i_min -= 2;
    b.i_max += 2;
    return b;
}

void criterion_lemma()
{
    Stopwatch sw;
    OLimit lim = limit_homology(8);
    VerificationReport r = check_lemma_2_5(8);
    double s = sw.seconds();
    bool groups = lim.stable && lim.colimit.size() == 3 && lim.colimit[0].same_type(FinAbGroup{1, {}, {}}) &&
                  lim.colimit[1].same_type(FinAbGroup{1, {}, {}}) && lim.colimit[2].is_trivial();
    std::string detail = "colimit " + (lim.colimit.size() == 3 ? lim.colimit[0].describe() + ", " +
                                                                     lim.colimit[1].describe() + ", " +
                                                                     lim.colimit[2].describe()
                                                               : std::string("missing"));
    if (!r.passed())
        detail += "; " + first_failure(r);
    report(1, "O-window direct limit", groups && r.passed() && s < lemma_seconds, detail + "; " + fmt_seconds(s, lemma_seconds));
}

void criterion_square_zero()
{
    std::mt19937_64 rng(seed);
    const std::int64_t moduli[] = {0, 2, 4, 8};
    Stopwatch sw;
    int bad = 0;
    std::size_t cells = 0;
    std::string witness;
    for (int i = 0; i < square_zero_instances; ++i) {
        testing::RandomHFOptions opt;
        opt.modulus = moduli[i % 4];
        HFData hf = testing::random_hf(rng, opt);
        EchParams p;
        p.g = 1 + i % 3;
        p.L = 1 + (i / 3) % 6;
        p.i_min = -4;
        p.i_max = 4;
        GradedComplex e = build_ech(hf, p);
        cells += e.size();
        auto check = verify_complex(e);
        if (!check.ok()) {
            ++bad;
            if (witness.empty())
                witness = "instance " + std::to_string(i) + ": " + check.message;
        }
    }
    double s = sw.seconds();
    std::string detail = std::to_string(square_zero_instances - bad) + "/" + std::to_string(square_zero_instances) +
                         " complexes, " + std::to_string(cells) + " cells; " + fmt_seconds(s, square_zero_seconds);
    if (!witness.empty())
        detail += "; " + witness;
    report(2, "d^2 = 0 suite", bad == 0 && s < square_zero_seconds, detail);
}

std::vector<VerificationReport> ladder_reports;
std::vector<VerificationReport> collapse_reports;

void criterion_ladder(const std::vector<Instance>& family)
{
    Stopwatch sw;
    int bad = 0;
    std::string witness;
    for (const auto& inst : family) {
        auto r = check_theorem_2_4(inst.hf, inst.g, Coefficients::integers(), Budgets{});
        if (!r.passed()) {
            ++bad;
            if (witness.empty())
                witness = inst.name + " g=" + std::to_string(inst.g) + ": " + first_failure(r);
        }
        ladder_reports.push_back(std::move(r));
    }
    double s = sw.seconds();
    std::string detail = std::to_string(family.size() - bad) + "/" + std::to_string(family.size()) +
                         " instances (corpus at g=1..3 plus " + std::to_string(ladder_instances) + " random); " +
                         fmt_seconds(s, ladder_seconds);
    if (!witness.empty())
        detail += "; " + witness;
    report(3, "flavor ladder", bad == 0 && s < ladder_seconds, detail);
}

void criterion_collapse()
{
    Stopwatch sw;
    int bad = 0;
    std::string witness;
    for (const auto& name : corpus) {
        HFData hf = load(name);
        for (int g : corpus_genera) {
            auto r = check_collapse(hf, g, Budgets{});
            if (!r.passed()) {
                ++bad;
                if (witness.empty())
                    witness = name + " g=" + std::to_string(g) + ": " + first_failure(r);
            }
            collapse_reports.push_back(std::move(r));
        }
    }
    double s = sw.seconds();
    std::size_t total = corpus.size() * corpus_genera.size();
    std::string detail = std::to_string(total - bad) + "/" + std::to_string(total) + " corpus runs at g=1..3; " +
                         fmt_seconds(s, collapse_seconds);
    if (!witness.empty())
        detail += "; " + witness;
    report(4, "collapse realization", bad == 0 && s < collapse_seconds, detail);
}

void criterion_o_table()
{
    std::ifstream in(data_path("golden/o_window.json"));
    auto golden = nlohmann::json::parse(in);
    OLimit lim = limit_homology(6);
    std::string mismatch;
    std::size_t rows = 0;
    for (const auto& row : golden["rows"]) {
        std::int64_t L = row["L"];
        const auto& w = lim.windows.at(static_cast<std::size_t>(L - 1));
        if (o_window_size(L) != row["size"].get<std::size_t>() && mismatch.empty())
            mismatch = "size at L=" + std::to_string(L);
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& gj = row["groups"][k];
            std::vector<Integer> torsion;
            for (const auto& t : gj["torsion"])
                torsion.push_back(parse_integer(t.get<std::string>()));
            FinAbGroup want{gj["free_rank"].get<std::size_t>(), torsion, {}};
            if (!w.groups.at(k).same_type(want) && mismatch.empty())
                mismatch = "L=" + std::to_string(L) + " grading " + std::to_string(k) + ": engine " +
                           w.groups[k].describe() + ", oracle " + want.describe();
        }
        ++rows;
    }
    std::string ranks;
    for (const auto& w : lim.windows)
        ranks += (ranks.empty() ? "" : ",") + std::to_string(w.groups[0].free_rank);
    report(5, "O-window table", mismatch.empty() && rows == 6,
           mismatch.empty() ? std::to_string(rows) + " windows match the oracle; H_0 ranks " + ranks : mismatch);
}

void criterion_stability(const std::vector<Instance>& family)
{
    std::string problem;
    auto note = [&](const std::string& p) {
        if (problem.empty())
            problem = p;
    };
    auto base = check_lemma_2_5(8), wide = check_lemma_2_5(10);
    if (base.verdict != wide.verdict)
        note("lemma verdict changed at L_max 10");
    else if (auto d = compare_groups(interior_groups(base), interior_groups(wide)); !d.empty())
        note("lemma " + d);

    std::size_t compared = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& inst = family[i];
        auto r = check_theorem_2_4(inst.hf, inst.g, Coefficients::integers(), widened(inst.g));
        if (r.verdict != ladder_reports[i].verdict)
            note(inst.name + " g=" + std::to_string(inst.g) + ": ladder verdict " +
                 verdict_name(ladder_reports[i].verdict) + " became " + verdict_name(r.verdict));
        else if (auto d = compare_groups(interior_groups(ladder_reports[i]), interior_groups(r)); !d.empty())
            note(inst.name + " g=" + std::to_string(inst.g) + ": " + d);
        compared += interior_groups(ladder_reports[i]).size();
    }
    std::size_t c = 0;
    for (const auto& name : corpus) {
        HFData hf = load(name);
        for (int g : corpus_genera) {
            auto r = check_collapse(hf, g, widened(g));
            if (r.verdict != collapse_reports[c].verdict)
                note(name + " g=" + std::to_string(g) + ": collapse verdict changed");
            ++c;
        }
    }
    report(6, "stability of verdicts", problem.empty(),
           problem.empty() ? "L + 2 and window [-4, 4]: all verdicts unchanged, " + std::to_string(compared) +
                                 " interior groups and the lemma generators unchanged"
                           : problem);
}

void criterion_mutations()
{
    std::vector<std::string> caught;
    std::string missed;
    for (OMutation m : all_mutations()) {
        auto lemma = check_lemma_2_5(8, m);
        if (!lemma.passed()) {
            caught.push_back(mutation_name(m) + " by lemma");
            continue;
        }
        bool found = false;
        for (const auto& name : corpus) {
            for (int g : {1, 2}) {
                if (!check_collapse(load(name), g, Budgets{}, m).passed()) {
                    caught.push_back(mutation_name(m) + " by collapse on " + name);
                    found = true;
                    break;
                }
            }
            if (found)
                break;
        }
        if (!found && missed.empty())
            missed = mutation_name(m) + " survived both checks";
    }
    std::string detail;
    for (const auto& c : caught)
        detail += (detail.empty() ? "" : ", ") + c;
    report(7, "mutation sensitivity", missed.empty() && caught.size() == 6, missed.empty() ? detail : missed);
}

void criterion_coefficients()
{
    std::string problem;
    std::size_t rows = 0;
    const std::int64_t modulus = 4;
    for (const std::string flavor : {"inf", "minus", "plus"}) {
        std::map<std::string, cli::Report> reports;
        for (const std::string coeff : {"z", "q", "f2"}) {
            cli::Options opt;
            opt.command = "homology";
            opt.input = data_path("corpus/graded_p4.json");
            opt.flavor = flavor;
            opt.coeff = coeff;
            reports[coeff] = cli::compute(opt);
        }
        auto by_key = [](const cli::Report& r) {
            std::map<std::int64_t, nlohmann::ordered_json> out;
            for (const auto& row : r["groups"])
                out[row["grading"].get<std::int64_t>()] = row;
            return out;
        };
        auto z = by_key(reports["z"]), q = by_key(reports["q"]), f2 = by_key(reports["f2"]);
        auto twos = [&](std::int64_t k, const char* column) -> std::size_t {
            auto it = z.find(((k % modulus) + modulus) % modulus);
            if (it == z.end())
                return 0;
            std::size_t n = 0;
            for (const auto& t : (it->second)[column]["torsion"])
                if (parse_integer(t.get<std::string>()) % 2 == 0)
                    ++n;
            return n;
        };
        for (const auto& [k, row] : z) {
            for (const char* column : {"truncated", "stable"}) {
                std::size_t free = row[column]["free_rank"];
                std::size_t qr = q.count(k) ? q[k][column]["free_rank"].get<std::size_t>() : 0;
                std::size_t fr = f2.count(k) ? f2[k][column]["torsion"].size() : 0;
                // universal coefficients: 2-torsion in degrees k and k - 1
                std::size_t expect = free + twos(k, column) + twos(k - 1, column);
                if (qr != free && problem.empty())
                    problem = flavor + " " + column + " grading " + std::to_string(k) + ": Q rank " +
                              std::to_string(qr) + ", Z free rank " + std::to_string(free);
                if (fr != expect && problem.empty())
                    problem = flavor + " " + column + " grading " + std::to_string(k) + ": F2 rank " +
                              std::to_string(fr) + ", expected " + std::to_string(expect);
                ++rows;
            }
        }
    }
    report(8, "coefficient consistency", problem.empty() && rows > 0,
           problem.empty() ? std::to_string(rows) + " rows on graded_p4 (inf, minus, plus; truncated and stable)" : problem);
}

}  // namespace

int main()
{
    try {
        criterion_lemma();
        criterion_square_zero();
        auto family = ladder_family();
        criterion_ladder(family);
        criterion_collapse();
        criterion_o_table();
        criterion_stability(family);
        criterion_mutations();
        criterion_coefficients();
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance run aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
