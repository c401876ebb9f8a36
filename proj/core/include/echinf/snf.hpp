#pragma once

#include <vector>

#include "echinf/matrix.hpp"

namespace echinf {

struct SNFOptions {
    bool left = true;
    bool right = true;
    bool left_inverse = false;
    bool right_inverse = false;
};

// left * A * right = diag(d) padded with zeros. d holds min(rows, cols) entries,
// nonnegative, nonzero entries first, each dividing the next.
// Transforms not requested in SNFOptions are left empty.
struct SNFResult {
    std::vector<Integer> d;
    IntMatrix left;
    IntMatrix right;
    IntMatrix left_inverse;
    IntMatrix right_inverse;

    std::size_t rank() const;
};

SNFResult smith_normal_form(const IntMatrix& a, const SNFOptions& options = {});

}  // namespace echinf
