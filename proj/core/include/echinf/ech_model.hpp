#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "echinf/graded_complex.hpp"
#include "echinf/hf_model.hpp"
#include "echinf/homology.hpp"
#include "echinf/o_complex.hpp"
#include "echinf/reduction.hpp"

namespace echinf {

struct EchParams {
    int g = 1;
    std::int64_t L = 1;
    std::int64_t i_min = -2;
    std::int64_t i_max = 2;
    OMutation mutation = OMutation::none;
    // Widest grading slot measured directly; beyond it homology is assembled
    // from H(HF) through the Kunneth splitting of the reduced handle factor.
    std::size_t direct_limit = 1500;
};

// Sum over handles of |m_p| + 2|o_p|_o for a label tail (m_1, o_1, ..., m_g, o_g).
std::int64_t handle_norm(std::span<const std::int32_t> handles);
bool all_core(std::span<const std::int32_t> handles);
std::string handles_string(std::span<const std::int32_t> handles);

// The handle factor: g-tuples of (m, o) with total norm < L, differential
// sum_p (-1)^{|o_1| + ... + |o_{p-1}|} d_p, tuples in lexicographic order.
GradedComplex handle_complex(int g, std::int64_t L, OMutation mutation = OMutation::none);
// Product of the canonical matchings: the first non-core handle decides the
// partner; only pairs with both cells present are kept.
std::vector<MatchedPair> handle_matching(const GradedComplex& w);
// The 2^g core tuples with zero differential, labels (0,o_1,...,0,o_g).
GradedComplex core_handle_complex(int g);

// Cells (x, i, m_1, o_1, ..., m_g, o_g) with i in the window and handle norm < L;
// d = d_HF (x) 1 + (-1)^{deg(x,i)} 1 (x) d_handles.
GradedComplex build_ech(const HFData& hf, const EchParams& p);
// The handle matching applied in every (x, i) slot.
std::vector<MatchedPair> ech_matching(const GradedComplex& e, int g);
// (x, i, handles) -> (x, i - 1, handles)
SparseMatrix t_action(const GradedComplex& e);

LabelFormatter ech_formatter(const HFData& hf);

// Handle factor together with its canonical reduction (exactly the product
// matching) and a minimal one (product matching, then greedy cancellation).
struct HandleModel {
    int g = 0;
    std::int64_t L = 0;
    OMutation mutation = OMutation::none;
    GradedComplex complex;
    Reduction canonical;
    Reduction minimal;
};
// Memoised per (g, L, mutation).
std::shared_ptr<const HandleModel> handle_model(int g, std::int64_t L, OMutation mutation = OMutation::none);

// A chain map acting on the handle part of labels (prefix of hf_arity entries kept).
using HandleMap = std::map<Label, std::vector<std::pair<Label, Integer>>>;
SparseMatrix apply_handle_map(const GradedComplex& from, const GradedComplex& to, const HandleMap& m,
                              std::size_t hf_arity = 2);
// core tuple v -> project_minimal(lift_canonical(v))
HandleMap core_to_minimal(const HandleModel& h);
// minimal cell of h -> project_minimal_next(lift_minimal(cell)) across V_L -> V_{L'}
HandleMap minimal_to_next(const HandleModel& h, const HandleModel& next);

// tensor(c, minimal reduced handle complex); homotopy equivalent to build_ech
// restricted to c's cells.
GradedComplex reduced_ech(const GradedComplex& c, const HandleModel& h);

struct EchGradingRow {
    GradingKey key = 0;
    FinAbGroup raw;     // H of the truncation at L
    FinAbGroup stable;  // image of H at L in H at L + 1
    bool window_stable = false;
};

struct EchHomology {
    Flavor flavor = Flavor::infinity;
    EchParams params;
    Coefficients coefficients;
    std::vector<EchGradingRow> rows;
    bool L_stable = false;
    bool window_relative = false;  // modulus > 0: groups depend on the window by construction
    std::string status() const;
};

EchHomology ech_flavor_homology(const HFData& hf, Flavor flavor, const EchParams& p, Coefficients coeff);

}  // namespace echinf
