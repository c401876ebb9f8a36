#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "echinf/graded_complex.hpp"
#include "echinf/homology.hpp"
#include "echinf/reduction.hpp"
#include "echinf/tower.hpp"

namespace echinf {

// o-codes as stored in labels: 0, +1, -1, and 2 for the pair {1,-1}.
inline constexpr std::int32_t o_zero = 0;
inline constexpr std::int32_t o_plus = 1;
inline constexpr std::int32_t o_minus = -1;
inline constexpr std::int32_t o_both = 2;

struct OLabel {
    std::int32_t m = 0;
    std::int32_t o = o_zero;
    friend bool operator==(const OLabel&, const OLabel&) = default;
};

// |o|_o: 0, 1, 1, 2.
int o_weight(std::int32_t o);
// |m| + 2|o|_o
std::int64_t o_norm(const OLabel& x);
std::string o_label_string(const OLabel& x);

// Deliberate single-term or single-sign corruptions of the boundary rules,
// used to check that the verifiers notice.
enum class OMutation {
    none,
    drop_plus_next,    // (m,1) -> (m,0)
    flip_plus_next,    // (m,1) -> (m,0) - (m+1,0)
    drop_minus_prev,   // (m,-1) -> (m,0)
    flip_minus_prev,   // (m,-1) -> (m,0) - (m-1,0)
    drop_both_shift,   // (m,both) loses (m+1,-1)
    flip_both_plus,    // (m,both) gets +(m,1)
};
const std::vector<OMutation>& all_mutations();
std::string mutation_name(OMutation m);
OMutation parse_mutation(const std::string& name);

struct OTerm {
    OLabel label;
    int coef;
};
std::vector<OTerm> boundary_star(const OLabel& x, OMutation mutation = OMutation::none);

// Number of (m,o) with |m| + 2|o|_o < L.
std::size_t o_window_size(std::int64_t L);

// V_L as a complex on labels (m, o) with grading |o|_o, cells ordered by m
// and then o in the order 0, +1, -1, both.
GradedComplex o_window(std::int64_t L, OMutation mutation = OMutation::none);

// Inward cancellation: (m,0)~(m,-1) and (m,1)~(m,both) for m >= 1,
// (m,0)~(m,1) and (m,-1)~(m,both) for m <= -1, (0,-1)~(0,both).
// (0,0) and (0,1) are never matched.
std::optional<OLabel> canonical_partner(const OLabel& x);
bool is_core(const OLabel& x);
// The canonical pairs with both cells inside the window.
std::vector<MatchedPair> canonical_o_matching(const GradedComplex& window);

SparseMatrix o_inclusion(const GradedComplex& from, const GradedComplex& to);

struct OWindowHomology {
    std::int64_t L;
    std::vector<FinAbGroup> groups;  // gradings 0, 1, 2
};

struct OLimit {
    std::int64_t L_max = 0;
    bool stable = false;
    std::size_t stable_level = 0;          // smallest L from which the colimit is read off
    std::vector<OWindowHomology> windows;  // L = 1..L_max
    std::vector<FinAbGroup> colimit;       // gradings 0, 1, 2
    std::vector<std::vector<Chain>> generators;  // cycles in V_{L_max}
    GradedComplex top;                     // V_{L_max}
    ComplexCheck complex_check;            // first failing window, if any
    std::int64_t failing_window = 0;
};

// H(V_L) for L = 1..L_max with inclusion-induced maps and the colimit per grading.
// If some window is not a complex the result carries the failure and no homology.
OLimit limit_homology(std::int64_t L_max, OMutation mutation = OMutation::none);

}  // namespace echinf
