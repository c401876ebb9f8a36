#include <gtest/gtest.h>

#include <random>

#include "compare.hpp"
#include "dense_homology.hpp"
#include "echinf/ech_model.hpp"
#include "echinf/errors.hpp"
#include "random_hf.hpp"

using namespace echinf;
using echinf::testing::complex_difference;

namespace {

HFData single()
{
    HFData hf;
    hf.names = {"x"};
    hf.gradings = {0};
    return hf;
}

HFData random_instance(std::mt19937_64& rng, std::int64_t modulus)
{
    echinf::testing::RandomHFOptions opt;
    opt.modulus = modulus;
    return echinf::testing::random_hf(rng, opt);
}

EchParams params(int g, std::int64_t L, std::int64_t lo = -2, std::int64_t hi = 2)
{
    EchParams p;
    p.g = g;
    p.L = L;
    p.i_min = lo;
    p.i_max = hi;
    return p;
}

// Cells of a tensor power of O-windows with total norm below L.
GradedComplex handle_power_reference(int g, std::int64_t L)
{
    GradedComplex t = o_window(L);
    for (int p = 1; p < g; ++p)
        t = tensor(t, o_window(L));
    auto s = sub_quotient(t, [&](std::span<const std::int32_t> l) { return handle_norm(l) < L; });
    return s.sub;
}

void expect_same_rows(const EchHomology& a, const EchHomology& b, const std::string& what)
{
    auto table = [](const EchHomology& h) {
        std::map<GradingKey, std::pair<FinAbGroup, FinAbGroup>> m;
        for (const auto& r : h.rows)
            if (!r.raw.is_trivial() || !r.stable.is_trivial())
                m[r.key] = {r.raw, r.stable};
        return m;
    };
    auto x = table(a), y = table(b);
    ASSERT_EQ(x.size(), y.size()) << what;
    for (const auto& [k, v] : x) {
        ASSERT_TRUE(y.count(k)) << what << " grading " << k;
        EXPECT_TRUE(v.first.same_type(y[k].first)) << what << " raw grading " << k;
        EXPECT_TRUE(v.second.same_type(y[k].second)) << what << " stable grading " << k << ": "
                                                     << v.second.describe() << " vs " << y[k].second.describe();
    }
}

}  // namespace

TEST(HandleComplex, MatchesTensorPowerOfWindows)
{
    for (int g = 1; g <= 3; ++g)
        for (std::int64_t L = 1; L <= (g == 3 ? 5 : 7); ++L)
            EXPECT_EQ(complex_difference(handle_power_reference(g, L), handle_complex(g, L)), "")
                << "g = " << g << ", L = " << L;
}

TEST(HandleComplex, CoreTuples)
{
    GradedComplex core = core_handle_complex(3);
    EXPECT_EQ(core.size(), 8u);
    EXPECT_TRUE(core.differential().is_zero());
    for (std::size_t i = 0; i < core.size(); ++i)
        EXPECT_TRUE(all_core(core.label(i)));
}

TEST(BuildEch, LevelOneIsTheHFWindow)
{
    HFData hf;
    hf.names = {"x", "y"};
    hf.gradings = {0, 1};
    hf.differential = {{0, 1, 1, 1}};
    GradedComplex e = build_ech(hf, params(1, 1));
    GradedComplex w = hf_window(hf, -2, 2);
    ASSERT_EQ(e.size(), w.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        EXPECT_EQ(e.label(i)[2], 0);
        EXPECT_EQ(e.label(i)[3], o_zero);
    }
    EXPECT_EQ(complex_difference(tensor(w, o_window(1)), e), "");
}

TEST(BuildEch, SingleGeneratorIsTheOWindow)
{
    GradedComplex e = build_ech(single(), params(1, 5));
    EXPECT_EQ(e.size(), 5 * o_window_size(5));
    EXPECT_EQ(complex_difference(tensor(hf_window(single(), -2, 2), o_window(5)), e), "");
}

TEST(BuildEch, AgreesWithGenericTensor)
{
    std::mt19937_64 rng(37);
    const std::int64_t moduli[] = {0, 2, 4, 8};
    for (int trial = 0; trial < 40; ++trial) {
        HFData hf = random_instance(rng, moduli[trial % 4]);
        int g = 1 + trial % 3;
        std::int64_t L = 1 + trial % (g == 3 ? 4 : 6);
        auto p = params(g, L, -3, 2);
        EXPECT_EQ(complex_difference(tensor(hf_window(hf, -3, 2), handle_complex(g, L)), build_ech(hf, p)), "")
            << "trial " << trial;
    }
}

TEST(BuildEch, SquareZeroOnRandomInstances)
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        HFData hf = random_instance(rng, trial % 2 ? 4 : 0);
        auto check = verify_complex(build_ech(hf, params(2, 5)));
        EXPECT_TRUE(check.ok()) << check.message;
    }
}

TEST(BuildEch, FiltrationIsPreserved)
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        HFData hf = random_instance(rng, 0);
        int g = 1 + trial % 2;
        std::int64_t L = 3 + trial % 3;
        GradedComplex big = build_ech(hf, params(g, L + 1));
        auto keep = [&](std::span<const std::int32_t> l) { return handle_norm(l.subspan(2)) < L; };
        ShortExactSequence s;
        ASSERT_NO_THROW(s = sub_quotient(big, keep));
        EXPECT_EQ(complex_difference(build_ech(hf, params(g, L)), s.sub), "");
    }
}

TEST(BuildEch, TActionIsAChainMap)
{
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        HFData hf = random_instance(rng, trial % 2 ? 2 : 0);
        GradedComplex e = build_ech(hf, params(1 + trial % 2, 4));
        SparseMatrix t = t_action(e);
        EXPECT_FALSE(chain_map_violation(t, e, e));
        EXPECT_FALSE(degree_violation(t, e, e, -2));
    }
}

TEST(EchMatching, IsAcyclicWithUnitPivots)
{
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        HFData hf = random_instance(rng, 0);
        int g = 1 + trial % 3;
        GradedComplex e = build_ech(hf, params(g, 3 * g + 1));
        EXPECT_NO_THROW(morse_reduce(e, ech_matching(e, g)));
    }
}

TEST(HandleModel, MinimalReductionHasZeroDifferential)
{
    for (int g = 1; g <= 3; ++g)
        for (std::int64_t L = 3 * g + 1; L <= 3 * g + (g == 3 ? 1 : 2); ++L) {
            auto h = handle_model(g, L);
            EXPECT_TRUE(h->minimal.reduced().differential().is_zero()) << "g = " << g << ", L = " << L;
            if (g < 3)
                EXPECT_TRUE(echinf::testing::same_homology(echinf::testing::dense_homology(h->complex),
                                                           echinf::testing::dense_homology(h->minimal.reduced())));
            EXPECT_EQ(handle_model(g, L).get(), h.get());
        }
}

TEST(EchHomology, KunnethAgreesWithDirect)
{
    std::mt19937_64 rng(59);
    const std::int64_t moduli[] = {0, 2, 4, 8};
    for (int trial = 0; trial < 16; ++trial) {
        HFData hf = random_instance(rng, moduli[trial % 4]);
        for (Flavor f : {Flavor::infinity, Flavor::minus, Flavor::plus}) {
            for (const char* c : {"z", "f2", "q"}) {
                if (trial % 4 != 0 && std::string(c) != "z")
                    continue;
                auto direct = params(2, 7), split = params(2, 7);
                direct.direct_limit = 1u << 30;
                split.direct_limit = 0;
                auto coeff = Coefficients::parse(c);
                expect_same_rows(ech_flavor_homology(hf, f, direct, coeff), ech_flavor_homology(hf, f, split, coeff),
                                 "trial " + std::to_string(trial) + " " + flavor_name(f) + " " + c);
            }
        }
    }
}

TEST(EchHomology, SingleGeneratorDoublesRanks)
{
    auto h = ech_flavor_homology(single(), Flavor::infinity, params(1, 4), Coefficients::integers());
    EXPECT_TRUE(h.L_stable);
    // Z in each grading -4..5: HF window gradings -4..4 (even) times V-hat
    for (const auto& r : h.rows) {
        bool inside = r.key >= -4 && r.key <= 5;
        EXPECT_TRUE(r.stable.same_type(FinAbGroup{inside ? 1u : 0u, {}, {}})) << "grading " << r.key;
    }
}
