#pragma once

#include <optional>
#include <string>
#include <vector>

#include "echinf/graded_complex.hpp"
#include "echinf/homology.hpp"

namespace echinf {

enum class LesPart { sub, total, quotient };

struct LesNode {
    LesPart part;
    GradingKey key;
    FinAbGroup group;
};

// ... -> H_n(sub) -> H_n(total) -> H_n(quotient) -> H_{n-1}(sub) -> ...
// For modulus 0 the row is finite and is padded with a trivial node at each
// end; for modulus p it closes up into a cycle of 3p nodes.
struct LesRow {
    std::vector<LesNode> nodes;
    std::vector<IntMatrix> maps;  // maps[i]: nodes[i] -> nodes[(i + 1) % size]
    bool cyclic = false;
    bool rational = false;

    std::size_t index_of(LesPart part, GradingKey key) const;
    std::optional<std::size_t> first_inexact() const;
    std::string node_name(std::size_t i) const;
};

// Connecting map H_n(quotient) -> H_{n-1}(sub): lift, apply d, restrict.
IntMatrix connecting_map(const ShortExactSequence& s, const ComplexHomology& sub, const ComplexHomology& quotient,
                         GradingKey n);

// Builds the row from precomputed homologies of s.sub, s.total, s.quotient.
// With verify set, throws ExactnessFailure at the first inexact node.
LesRow long_exact_sequence(const ShortExactSequence& s, const ComplexHomology& sub, const ComplexHomology& total,
                           const ComplexHomology& quotient, bool verify = true);

std::string part_name(LesPart p);

}  // namespace echinf
