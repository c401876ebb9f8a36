#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

namespace echinf::cli {

enum ExitCode : int { exit_ok = 0, exit_fail = 2, exit_not_stabilized = 3, exit_input = 4, exit_internal = 5 };

// Environment variable naming the default cache directory.
inline constexpr const char* cache_env = "ECHINF_CACHE_DIR";

struct Options {
    std::string command;    // validate | homology | verify
    std::string statement;  // verify: lemma25 | thm24 | collapse | modules
    std::string input;
    std::string flavor = "inf";
    int g = 1;
    std::int64_t L = 0;  // 0: 3g + 1
    std::string window = "-2:2";
    std::string coeff = "z";
    std::int64_t L_max = 8;
    std::string cache_dir;  // empty: take cache_env, if set
    std::string report_path;
    std::string mutation = "none";  // test hook: corrupts the O-complex differential
};

using Report = nlohmann::ordered_json;

// Runs a command and returns its report (without timing). Throws on input
// errors (DocumentError, echinf::InvalidInput, std::invalid_argument).
Report compute(const Options& opt);
int exit_code(const Report& r);
// Human-readable rendering of a report.
void render(const Report& r, std::ostream& out);

// compute + cache + timing + rendering + report file; never throws.
int run(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace echinf::cli
