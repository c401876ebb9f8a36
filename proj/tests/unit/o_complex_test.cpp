#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "echinf/field.hpp"
#include "echinf/o_complex.hpp"
#include "json.hpp"
#include "paths.hpp"

using namespace echinf;

namespace {

std::vector<std::pair<OLabel, int>> terms(const OLabel& x, OMutation m = OMutation::none)
{
    std::vector<std::pair<OLabel, int>> out;
    for (const auto& t : boundary_star(x, m))
        out.emplace_back(t.label, t.coef);
    return out;
}

int coefficient_of(const std::vector<OTerm>& chain, const OLabel& y)
{
    int c = 0;
    for (const auto& t : chain)
        if (t.label == y)
            c += t.coef;
    return c;
}

// d applied twice on the unbounded complex, collected by label.
std::map<std::pair<int, int>, int> square(const OLabel& x, OMutation m = OMutation::none)
{
    std::map<std::pair<int, int>, int> acc;
    for (const auto& t : boundary_star(x, m))
        for (const auto& u : boundary_star(t.label, m))
            acc[{u.label.m, u.label.o}] += t.coef * u.coef;
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    return acc;
}

std::vector<OLabel> labels(const GradedComplex& c)
{
    std::vector<OLabel> out;
    for (std::size_t i = 0; i < c.size(); ++i)
        out.push_back({c.label(i)[0], c.label(i)[1]});
    return out;
}

}  // namespace

TEST(BoundaryStar, Rules)
{
    EXPECT_TRUE(boundary_star({0, o_zero}).empty());
    EXPECT_TRUE(boundary_star({-4, o_zero}).empty());
    auto plus = boundary_star({2, o_plus});
    EXPECT_EQ(plus.size(), 2u);
    EXPECT_EQ(coefficient_of(plus, {2, o_zero}), 1);
    EXPECT_EQ(coefficient_of(plus, {3, o_zero}), 1);
    auto minus = boundary_star({2, o_minus});
    EXPECT_EQ(coefficient_of(minus, {2, o_zero}), 1);
    EXPECT_EQ(coefficient_of(minus, {1, o_zero}), 1);
    auto both = boundary_star({0, o_both});
    EXPECT_EQ(both.size(), 4u);
    EXPECT_EQ(coefficient_of(both, {0, o_minus}), 1);
    EXPECT_EQ(coefficient_of(both, {0, o_plus}), -1);
    EXPECT_EQ(coefficient_of(both, {1, o_minus}), 1);
    EXPECT_EQ(coefficient_of(both, {-1, o_plus}), -1);
}

TEST(BoundaryStar, SquaresToZero)
{
    EXPECT_TRUE(square({5, o_both}).empty());
    for (int m = -10; m <= 10; ++m)
        for (int o : {o_zero, o_plus, o_minus, o_both})
            EXPECT_TRUE(square({m, o}).empty()) << o_label_string({m, o});
}

TEST(BoundaryStar, EveryMutationBreaksSomething)
{
    EXPECT_EQ(all_mutations().size(), 6u);
    for (OMutation mut : all_mutations()) {
        bool changed = false;
        for (int m = -3; m <= 3; ++m)
            for (int o : {o_plus, o_minus, o_both})
                if (terms({m, o}, mut) != terms({m, o}))
                    changed = true;
        EXPECT_TRUE(changed) << mutation_name(mut);
        EXPECT_EQ(parse_mutation(mutation_name(mut)), mut);
    }
    EXPECT_THROW(parse_mutation("nonsense"), std::invalid_argument);
}

TEST(OWindow, SmallWindows)
{
    auto w1 = labels(o_window(1));
    ASSERT_EQ(w1.size(), 1u);
    EXPECT_EQ(w1[0], (OLabel{0, o_zero}));

    auto w2 = labels(o_window(2));
    EXPECT_EQ(w2, (std::vector<OLabel>{{-1, o_zero}, {0, o_zero}, {1, o_zero}}));

    auto w3 = labels(o_window(3));
    std::set<std::pair<int, int>> s3;
    for (const auto& x : w3)
        s3.insert({x.m, x.o});
    EXPECT_EQ(s3, (std::set<std::pair<int, int>>{
                      {-2, o_zero}, {-1, o_zero}, {0, o_zero}, {1, o_zero}, {2, o_zero}, {0, o_plus}, {0, o_minus}}));
    ComplexHomology h(o_window(3));
    EXPECT_TRUE(h.group(0).same_type(FinAbGroup{3, {}, {}}));
    EXPECT_TRUE(h.group(1).is_trivial());
}

TEST(OWindow, SizeMatchesEnumeration)
{
    for (std::int64_t L = 0; L <= 40; ++L) {
        std::size_t count = 0;
        for (int m = -50; m <= 50; ++m)
            for (int o : {o_zero, o_plus, o_minus, o_both})
                if (o_norm({m, o}) < L)
                    ++count;
        EXPECT_EQ(o_window_size(L), count) << "L = " << L;
        if (L >= 1)
            EXPECT_EQ(o_window(L).size(), count);
    }
}

TEST(OWindow, ClosedUnderBoundary)
{
    for (std::int64_t L = 1; L <= 10; ++L)
        for (const auto& x : labels(o_window(L)))
            for (const auto& t : boundary_star(x))
                EXPECT_LT(o_norm(t.label), L) << o_label_string(x);
}

TEST(OWindow, MatchesOracleTable)
{
    std::ifstream in(echinf::testing::data_path("golden/o_window.json"));
    ASSERT_TRUE(in);
    auto golden = nlohmann::json::parse(in);
    ASSERT_EQ(golden["rows"].size(), 6u);
    for (const auto& row : golden["rows"]) {
        std::int64_t L = row["L"];
        ComplexHomology h(o_window(L));
        for (GradingKey k = 0; k < 3; ++k) {
            const auto& g = row["groups"][k];
            std::vector<Integer> torsion;
            for (const auto& t : g["torsion"])
                torsion.push_back(parse_integer(t.get<std::string>()));
            EXPECT_TRUE(h.group(k).same_type(FinAbGroup{g["free_rank"].get<std::size_t>(), torsion, {}}))
                << "L = " << L << ", grading " << k << ": " << h.group(k).describe();
        }
    }
}

TEST(OWindow, InclusionSendsGeneratorsToOneClass)
{
    GradedComplex v3 = o_window(3), v5 = o_window(5);
    ComplexHomology h3(v3), h5(v5);
    IntMatrix f = h3.induced(o_inclusion(v3, v5), h5, 0);
    ASSERT_EQ(f.cols(), 3u);
    EXPECT_EQ(rank_rational(f), 1u);
    EXPECT_TRUE(image_type(f, h3.group(0), h5.group(0)).same_type(FinAbGroup{1, {}, {}}));
    for (std::size_t c = 0; c < 3; ++c)
        EXPECT_FALSE(f.select_cols(c, c + 1).is_zero());
}

TEST(CanonicalMatching, Partners)
{
    EXPECT_FALSE(canonical_partner({0, o_zero}));
    EXPECT_FALSE(canonical_partner({0, o_plus}));
    EXPECT_TRUE(is_core({0, o_zero}));
    EXPECT_TRUE(is_core({0, o_plus}));
    EXPECT_EQ(*canonical_partner({3, o_zero}), (OLabel{3, o_minus}));
    EXPECT_EQ(*canonical_partner({-3, o_zero}), (OLabel{-3, o_plus}));
    EXPECT_EQ(*canonical_partner({0, o_minus}), (OLabel{0, o_both}));
    for (int m = -6; m <= 6; ++m)
        for (int o : {o_zero, o_plus, o_minus, o_both}) {
            auto p = canonical_partner({m, o});
            if (!p)
                continue;
            auto back = canonical_partner(*p);
            ASSERT_TRUE(back);
            EXPECT_EQ(*back, (OLabel{m, o}));
            // the higher cell has the partner with unit coefficient in its boundary
            OLabel up = o_weight(o) > o_weight(p->o) ? OLabel{m, o} : *p;
            OLabel down = up == OLabel{m, o} ? *p : OLabel{m, o};
            int c = coefficient_of(boundary_star(up), down);
            EXPECT_TRUE(c == 1 || c == -1) << o_label_string(up);
        }
}

TEST(LimitHomology, LimitGroupsAndGenerators)
{
    OLimit lim = limit_homology(8);
    ASSERT_TRUE(lim.complex_check.ok());
    ASSERT_TRUE(lim.stable);
    EXPECT_EQ(lim.windows.size(), 8u);
    EXPECT_TRUE(lim.colimit[0].same_type(FinAbGroup{1, {}, {}}));
    EXPECT_TRUE(lim.colimit[1].same_type(FinAbGroup{1, {}, {}}));
    EXPECT_TRUE(lim.colimit[2].is_trivial());

    ComplexHomology top(lim.top);
    auto class_of = [&](GradingKey k, Chain z) { return top.coordinates(k, z); };
    auto negated = [](std::vector<Integer> v) {
        for (auto& x : v)
            x = -x;
        return v;
    };
    auto cell = [&](int m, int o) { return *lim.top.find(std::vector<std::int32_t>{m, o}); };
    Chain x0 = {{cell(0, o_zero), 1}};
    Chain x1 = make_chain({{cell(0, o_plus), 1}, {cell(1, o_minus), -1}});
    ASSERT_EQ(lim.generators[0].size(), 1u);
    ASSERT_EQ(lim.generators[1].size(), 1u);
    auto a = class_of(0, lim.generators[0][0]), b = class_of(0, x0);
    EXPECT_TRUE(a == b || a == negated(b));
    auto c = class_of(1, lim.generators[1][0]), d = class_of(1, x1);
    EXPECT_TRUE(c == d || c == negated(d));
}

TEST(LimitHomology, MutationsBreakSquareZero)
{
    for (OMutation m : all_mutations()) {
        OLimit lim = limit_homology(8, m);
        EXPECT_FALSE(lim.complex_check.ok()) << mutation_name(m);
        EXPECT_GT(lim.failing_window, 0) << mutation_name(m);
    }
}

TEST(LimitHomology, ShortTowersDoNotStabilize)
{
    EXPECT_FALSE(limit_homology(2).stable);
    EXPECT_THROW(limit_homology(0), std::invalid_argument);
}
