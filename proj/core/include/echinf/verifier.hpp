#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "echinf/ech_model.hpp"
#include "echinf/hf_model.hpp"
#include "echinf/homology.hpp"
#include "echinf/o_complex.hpp"

namespace echinf {

enum class Verdict { pass, fail, not_stabilized };
std::string verdict_name(Verdict v);

struct Finding {
    std::string check;
    bool ok = true;
    std::string detail;
};

// One line of an evidence table: a group at a grading slot.
struct GroupEntry {
    std::string table;
    std::string flavor;
    GradingKey grading = 0;
    std::string group;
    bool interior = true;  // unaffected by the i-window edges
};

struct VerificationReport {
    std::string statement;
    Verdict verdict = Verdict::pass;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<Finding> findings;
    std::vector<GroupEntry> groups;
    std::vector<std::string> notes;
    std::string witness;

    void record(const std::string& check, bool ok, const std::string& detail = {});
    bool passed() const noexcept { return verdict == Verdict::pass; }
};

struct Budgets {
    std::int64_t L = 0;  // 0 selects 3g + 1
    std::int64_t i_min = -2;
    std::int64_t i_max = 2;
    std::int64_t L_max = 8;
    // Widest grading slot of the ech truncation whose homology is computed
    // directly; wider ones go through the Kunneth splitting of the handle factor.
    std::size_t direct_limit = 1500;

    std::int64_t level(int g) const { return L > 0 ? L : 3 * static_cast<std::int64_t>(g) + 1; }
};

// Smallest handle truncation that contains every product of the classes
// (0,0) and (0,1) - (1,-1).
inline std::int64_t minimal_level(int g) { return 3 * static_cast<std::int64_t>(g) + 1; }

// The V-hat group: Z in grading 0 and Z in grading 1.
FinAbGroup vhat_group(GradingKey k);

VerificationReport check_lemma_2_5(std::int64_t L_max, OMutation mutation = OMutation::none);
VerificationReport check_theorem_2_4(const HFData& hf, int g, Coefficients coeff, const Budgets& b,
                                     OMutation mutation = OMutation::none);
VerificationReport check_collapse(const HFData& hf, int g, const Budgets& b, OMutation mutation = OMutation::none);
VerificationReport check_module_structure(const HFData& hf, int g, Coefficients coeff, const Budgets& b);

// Gradings (modulus 0 only) whose groups cannot see the edges of the i-window.
bool interior_grading(const HFData& hf, int g, std::int64_t i_min, std::int64_t i_max, GradingKey n);

}  // namespace echinf
