#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "document.hpp"
#include "echinf/errors.hpp"
#include "echinf/verifier.hpp"
#include "echinf/version.hpp"

namespace echinf::cli {

using nlohmann::ordered_json;

namespace {

struct Window {
    std::int64_t a = -2;
    std::int64_t b = 2;
};

Window parse_window(const std::string& text)
{
    auto colon = text.find(':', 1);
    if (colon == std::string::npos)
        throw std::invalid_argument("--window expects A:B, got '" + text + "'");
    Window w;
    try {
        std::size_t used = 0;
        w.a = std::stoll(text.substr(0, colon), &used);
        if (used != colon)
            throw std::invalid_argument("");
        std::string rest = text.substr(colon + 1);
        w.b = std::stoll(rest, &used);
        if (used != rest.size())
            throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("--window expects A:B, got '" + text + "'");
    }
    if (w.a > w.b)
        throw std::invalid_argument("--window: A must not exceed B");
    return w;
}

Budgets budgets_of(const Options& opt)
{
    if (opt.g < 1)
        throw std::invalid_argument("--g must be at least 1");
    if (opt.L < 0)
        throw std::invalid_argument("--L must be positive");
    Window w = parse_window(opt.window);
    Budgets b;
    b.L = opt.L;
    b.i_min = w.a;
    b.i_max = w.b;
    b.L_max = opt.L_max;
    return b;
}

ordered_json group_json(const FinAbGroup& g)
{
    ordered_json t = ordered_json::array();
    for (const auto& x : g.torsion)
        t.push_back(to_string(x));
    return ordered_json{{"group", g.describe()}, {"free_rank", g.free_rank}, {"torsion", std::move(t)}};
}

Report skeleton(const Options& opt, const std::string& digest)
{
    Report r;
    r["format"] = "echinf-report";
    r["version"] = 1;
    r["engine"] = std::string("echinf ") + engine_version;
    r["command"] = opt.command;
    if (!opt.statement.empty())
        r["statement"] = opt.statement;
    r["input_digest"] = digest.empty() ? ordered_json(nullptr) : ordered_json("sha256:" + digest);
    return r;
}

struct Loaded {
    HFData hf;
    std::string digest;
};

Loaded load(const Options& opt)
{
    if (opt.input.empty())
        throw std::invalid_argument("an input file is required");
    std::string text = read_file(opt.input);
    Loaded l{parse_document(text), sha256_hex(text)};
    return l;
}

void require_valid(const HFData& hf)
{
    auto v = validate(hf);
    if (!v.ok)
        throw InvalidInput(v.violation);
}

Report report_of(const VerificationReport& v, Report r)
{
    ordered_json params = ordered_json::object();
    for (const auto& [k, val] : v.parameters)
        params[k] = val;
    r["parameters"] = std::move(params);
    ordered_json groups = ordered_json::array();
    for (const auto& e : v.groups)
        groups.push_back(ordered_json{{"table", e.table},
                                      {"flavor", e.flavor},
                                      {"grading", e.grading},
                                      {"group", e.group},
                                      {"interior", e.interior}});
    r["groups"] = std::move(groups);
    ordered_json findings = ordered_json::array();
    for (const auto& f : v.findings)
        findings.push_back(ordered_json{{"check", f.check}, {"ok", f.ok}, {"detail", f.detail}});
    r["findings"] = std::move(findings);
    r["notes"] = v.notes;
    r["verdict"] = verdict_name(v.verdict);
    r["witness"] = v.witness;
    return r;
}

Report compute_validate(const Options& opt)
{
    std::string text = read_file(opt.input);
    Report r = skeleton(opt, sha256_hex(text));
    HFData hf = parse_document(text);
    auto v = validate(hf);
    r["parameters"] = ordered_json{{"generators", hf.size()}, {"modulus", std::to_string(hf.modulus)}};
    r["verdict"] = v.ok ? "valid" : "invalid";
    r["witness"] = v.violation;
    return r;
}

Report compute_homology(const Options& opt)
{
    Loaded in = load(opt);
    require_valid(in.hf);
    Budgets b = budgets_of(opt);
    Flavor flavor = parse_flavor(opt.flavor);
    Coefficients coeff = Coefficients::parse(opt.coeff);
    EchParams p{opt.g, b.level(opt.g), b.i_min, b.i_max, OMutation::none};
    EchHomology h = ech_flavor_homology(in.hf, flavor, p, coeff);

    Report r = skeleton(opt, in.digest);
    r["parameters"] = ordered_json{{"flavor", flavor_name(flavor)},
                                   {"g", std::to_string(opt.g)},
                                   {"L", std::to_string(p.L)},
                                   {"window", std::to_string(p.i_min) + ":" + std::to_string(p.i_max)},
                                   {"coefficients", coeff.name()},
                                   {"modulus", std::to_string(in.hf.modulus)}};
    ordered_json rows = ordered_json::array();
    for (const auto& row : h.rows) {
        ordered_json j;
        j["grading"] = row.key;
        j["truncated"] = group_json(row.raw);
        j["stable"] = group_json(row.stable);
        if (!h.window_relative)
            j["window_stable"] = row.window_stable;
        rows.push_back(std::move(j));
    }
    r["groups"] = std::move(rows);
    r["stabilization"] = ordered_json{{"status", h.status()},
                                      {"L_stable", h.L_stable},
                                      {"compared_L", std::to_string(p.L + 1)},
                                      {"window_relative", h.window_relative}};
    r["verdict"] = h.L_stable ? "stable" : "not-stabilized";
    return r;
}

Report compute_verify(const Options& opt)
{
    OMutation mutation = parse_mutation(opt.mutation);
    if (opt.statement == "lemma25") {
        if (opt.L_max < 1)
            throw std::invalid_argument("--Lmax must be positive");
        Report r = skeleton(opt, "");
        return report_of(check_lemma_2_5(opt.L_max, mutation), std::move(r));
    }
    if (opt.statement != "thm24" && opt.statement != "collapse" && opt.statement != "modules")
        throw std::invalid_argument("unknown statement '" + opt.statement + "'");
    Loaded in = load(opt);
    require_valid(in.hf);
    Budgets b = budgets_of(opt);
    Report r = skeleton(opt, in.digest);
    if (opt.statement == "thm24")
        return report_of(check_theorem_2_4(in.hf, opt.g, Coefficients::parse(opt.coeff), b, mutation), std::move(r));
    if (opt.statement == "collapse")
        return report_of(check_collapse(in.hf, opt.g, b, mutation), std::move(r));
    return report_of(check_module_structure(in.hf, opt.g, Coefficients::parse(opt.coeff), b), std::move(r));
}

std::string cache_key(const Options& opt, const std::string& digest)
{
    ordered_json k{{"engine", engine_version},   {"command", opt.command}, {"statement", opt.statement},
                   {"digest", digest},            {"flavor", opt.flavor},   {"g", opt.g},
                   {"L", opt.L},                  {"window", opt.window},   {"coeff", opt.coeff},
                   {"L_max", opt.L_max},          {"mutation", opt.mutation}};
    return sha256_hex(k.dump());
}

std::string cache_dir_of(const Options& opt)
{
    if (!opt.cache_dir.empty())
        return opt.cache_dir;
    if (const char* env = std::getenv(cache_env))
        return env;
    return {};
}

const char* node_label(bool ok)
{
    return ok ? "ok  " : "FAIL";
}

}  // namespace

Report compute(const Options& opt)
{
    if (opt.command == "validate")
        return compute_validate(opt);
    if (opt.command == "homology")
        return compute_homology(opt);
    if (opt.command == "verify")
        return compute_verify(opt);
    throw std::invalid_argument("unknown command '" + opt.command + "'");
}

int exit_code(const Report& r)
{
    std::string v = r.value("verdict", "");
    if (v == "pass" || v == "valid" || v == "stable")
        return exit_ok;
    if (v == "not-stabilized")
        return exit_not_stabilized;
    if (v == "invalid")
        return exit_input;
    return exit_fail;
}

void render(const Report& r, std::ostream& out)
{
    std::string cmd = r.value("command", "");
    if (cmd == "validate") {
        if (r["verdict"] == "valid") {
            auto n = r["parameters"]["generators"].get<std::size_t>();
            out << "valid: " << n << (n == 1 ? " generator" : " generators") << ", p = "
                << r["parameters"]["modulus"].get<std::string>() << "\n";
        }
        else
            out << "invalid: " << r["witness"].get<std::string>() << "\n";
        return;
    }
    const auto& params = r["parameters"];
    if (cmd == "homology") {
        out << "ech homology";
        for (const auto& [k, v] : params.items())
            out << "  " << k << "=" << v.get<std::string>();
        out << "\n";
        bool windowed = !r["stabilization"]["window_relative"].get<bool>();
        out << std::left << std::setw(10) << "grading" << std::setw(28) << "truncated" << std::setw(28) << "stable";
        if (windowed)
            out << "window";
        out << "\n";
        for (const auto& row : r["groups"]) {
            out << std::left << std::setw(10) << row["grading"].get<std::int64_t>() << std::setw(28)
                << row["truncated"]["group"].get<std::string>() << std::setw(28)
                << row["stable"]["group"].get<std::string>();
            if (windowed)
                out << (row["window_stable"].get<bool>() ? "stable" : "edge");
            out << "\n";
        }
        out << "status: " << r["stabilization"]["status"].get<std::string>() << "\n";
        if (r["verdict"] == "not-stabilized")
            out << "the image tower moved between L and L+1; rerun with a larger --L\n";
        return;
    }
    out << "statement " << r["statement"].get<std::string>() << ": " << r["verdict"].get<std::string>() << "\n";
    out << "parameters:";
    for (const auto& [k, v] : params.items())
        out << " " << k << "=" << v.get<std::string>();
    out << "\n";
    std::string last;
    for (const auto& g : r["groups"]) {
        std::string head = g["table"].get<std::string>() + (g["flavor"].get<std::string>().empty() ? "" : " " + g["flavor"].get<std::string>());
        if (head != last) {
            out << head << ":\n";
            last = head;
        }
        out << "  grading " << std::setw(4) << std::right << g["grading"].get<std::int64_t>() << "  "
            << g["group"].get<std::string>() << (g["interior"].get<bool>() ? "" : "  (edge)") << "\n";
    }
    for (const auto& f : r["findings"]) {
        out << "[" << node_label(f["ok"].get<bool>()) << "] " << f["check"].get<std::string>();
        if (!f["detail"].get<std::string>().empty())
            out << ": " << f["detail"].get<std::string>();
        out << "\n";
    }
    for (const auto& n : r["notes"])
        out << "note: " << n.get<std::string>() << "\n";
    if (r["verdict"] == "not-stabilized")
        out << "not stabilized; rerun with larger budgets (--L, --Lmax)\n";
}

int run(const Options& opt, std::ostream& out, std::ostream& err)
{
    auto start = std::chrono::steady_clock::now();
    Report r;
    bool cached = false;
    try {
        std::string dir = cache_dir_of(opt);
        std::filesystem::path file;
        if (!dir.empty() && opt.command != "validate") {
            std::string digest = opt.input.empty() ? "" : sha256_hex(read_file(opt.input));
            file = std::filesystem::path(dir) / (cache_key(opt, digest) + ".json");
            std::ifstream in(file);
            if (in) {
                try {
                    in >> r;
                    cached = true;
                } catch (const std::exception&) {
                    r = Report();
                }
            }
        }
        if (!cached) {
            r = compute(opt);
            if (!file.empty()) {
                std::filesystem::create_directories(file.parent_path());
                std::ofstream(file) << r.dump(2) << "\n";
            }
        }
    } catch (const DocumentError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const InvalidInput& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const NotStabilized& e) {
        err << "not stabilized: " << e.what() << "\n";
        return exit_not_stabilized;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r["timing"] = ordered_json{{"seconds", secs}, {"cached", cached}};
    render(r, out);
    if (!opt.report_path.empty()) {
        std::ofstream f(opt.report_path);
        if (!f) {
            err << "cannot write report to '" << opt.report_path << "'\n";
            return exit_input;
        }
        f << r.dump(2) << "\n";
    }
    return exit_code(r);
}

}  // namespace echinf::cli
