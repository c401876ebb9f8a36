#include "echinf/tower.hpp"

#include <stdexcept>

#include "echinf/field.hpp"

namespace echinf {

ColimitResult directed_colimit(const std::vector<FinAbGroup>& groups, const std::vector<IntMatrix>& maps, bool rational)
{
    std::size_t k = groups.size();
    if (k == 0 || maps.size() + 1 != k)
        throw std::invalid_argument("tower needs one map between each pair of consecutive groups");
    // to_top[j]: G_j -> G_K
    std::vector<IntMatrix> to_top(k);
    to_top[k - 1] = IntMatrix::identity(groups[k - 1].dimension());
    for (std::size_t j = k - 1; j-- > 0;)
        to_top[j] = reduce_hom(to_top[j + 1] * maps[j], groups[k - 1]);

    ColimitResult res;
    for (std::size_t j = 0; j < k; ++j)
        res.image_types.push_back(image_type(to_top[j], groups[j], groups[k - 1], rational));

    auto settled = [&](std::size_t j) {
        if (j + 2 >= k)
            return false;
        IntMatrix one = maps[j];
        IntMatrix two = reduce_hom(maps[j + 1] * maps[j], groups[j + 2]);
        return image_type(one, groups[j], groups[j + 1], rational).same_type(
            image_type(two, groups[j], groups[j + 2], rational));
    };
    // Only the last three levels that can be settled are consulted; earlier
    // agreement can be an artefact of classes that have not been born yet.
    if (k >= 5) {
        std::size_t j = k - 5;
        if (!settled(j) || !settled(j + 1) || !settled(j + 2))
            return res;
        const FinAbGroup& top = groups[k - 1];
        if (same_image(to_top[j], to_top[j + 1], top, rational) && same_image(to_top[j + 1], to_top[j + 2], top, rational)) {
            res.stable = true;
            res.stable_level = j + 1;
            if (rational) {
                res.group.free_rank = res.image_types[j].free_rank;
                res.basis = IntMatrix(top.dimension(), 0);
                for (std::size_t c = 0; c < to_top[j].cols(); ++c) {
                    IntMatrix grown = res.basis.hconcat(to_top[j].select_cols(c, c + 1));
                    if (rank_rational(grown) == grown.cols())
                        res.basis = std::move(grown);
                }
            } else {
                res.basis = image_basis(to_top[j], groups[j], top, &res.group);
            }
        }
    }
    return res;
}

}  // namespace echinf
