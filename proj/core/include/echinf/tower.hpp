#pragma once

#include <optional>
#include <vector>

#include "echinf/abelian.hpp"

namespace echinf {

// Directed system G_1 -> G_2 -> ... -> G_K of finitely generated abelian groups.
//
// Level j counts as settled when j + 2 <= K and the images of G_j in G_{j+1}
// and in G_{j+2} have the same type. S(j) is the image of G_j in G_K. The
// colimit is detected when the last three levels that can be settled
// (j = K-4, K-3, K-2) are settled and have equal S(j) as subgroups of G_K; it
// is then S(K-4).
struct ColimitResult {
    bool stable = false;
    std::size_t stable_level = 0;  // j*, 1-based
    FinAbGroup group;              // type of the colimit
    IntMatrix basis;               // columns in G_K coordinates, one per summand
    std::vector<FinAbGroup> image_types;  // type of S(j), j = 1..K
};

// maps[j] : groups[j] -> groups[j + 1] (0-based), so maps.size() == groups.size() - 1.
ColimitResult directed_colimit(const std::vector<FinAbGroup>& groups, const std::vector<IntMatrix>& maps,
                               bool rational = false);

}  // namespace echinf
