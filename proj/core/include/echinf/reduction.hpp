#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "echinf/graded_complex.hpp"

namespace echinf {

// A cancellable pair: d(up) contains down with a unit coefficient.
struct MatchedPair {
    std::uint32_t up;
    std::uint32_t down;
};

// Result of algebraic Gaussian elimination: a homotopy equivalent complex on
// the surviving (critical) cells, together with the chain maps
// project: C -> reduced and lift: reduced -> C.
// With characteristic p > 0 everything is computed over F_p and coefficients
// are kept in [0, p).
class Reduction {
public:
    const GradedComplex& reduced() const noexcept { return reduced_; }
    // Original index of each reduced cell.
    const std::vector<std::uint32_t>& critical() const noexcept { return critical_; }
    std::uint32_t characteristic() const noexcept { return char_; }
    std::size_t original_size() const noexcept { return step_of_.size(); }
    std::size_t eliminated_pairs() const noexcept { return steps_.size(); }
    const std::vector<MatchedPair>& pairs() const noexcept { return pairs_; }

    // Chain in the original basis -> chain in the reduced basis.
    Chain project(const Chain& z) const;
    // Chain in the reduced basis -> chain in the original basis.
    Chain lift(const Chain& z) const;
    // Reduced index of an original cell, or -1 if it was cancelled.
    std::int64_t reduced_index(std::uint32_t original) const;

private:
    friend class Eliminator;

    struct Step {
        std::uint32_t up;
        std::uint32_t down;
        Integer unit_inverse;
        Chain gamma;                  // d(up) minus its down term, at elimination time
        std::vector<Term> beta;       // (cell, coefficient of down in its boundary)
    };

    std::uint32_t char_ = 0;
    GradedComplex reduced_;
    std::vector<std::uint32_t> critical_;
    std::vector<std::int64_t> reduced_index_;
    std::vector<std::int32_t> step_of_;  // -1 for critical cells
    std::vector<Step> steps_;
    std::vector<MatchedPair> pairs_;
    std::vector<std::vector<std::uint32_t>> beta_steps_;
};

// Cancels exactly the given pairs. Pairs must be disjoint, have unit
// coefficients (NonUnitPivot) and form an acyclic matching (CyclicMatching).
Reduction morse_reduce(const GradedComplex& c, std::span<const MatchedPair> matching, std::uint32_t characteristic = 0);

// Cancels the seed pairs, then keeps cancelling unit entries greedily: cells
// are scanned by grading key then index and the pivot with the fewest
// occurrences (then lowest index) is taken, until no unit entry remains.
Reduction reduce(const GradedComplex& c, std::span<const MatchedPair> seed = {}, std::uint32_t characteristic = 0);

}  // namespace echinf
