#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ginet/error.hpp"
#include "ginet/netanalysis.hpp"
#include "library_hubs.hpp"

using namespace ginet;
using ginet::testing::library_hub_counts;

namespace {

ScoredPair pair_in(const std::string& a, const std::string& b, Quadrant q, double sign = -1.0) {
    const double m = (q == Quadrant::MJ || q == Quadrant::MJbar) ? 0.3 : 0.01;
    const double j = (q == Quadrant::MJ || q == Quadrant::MbarJ) ? 0.3 : 0.01;
    return classify_pair(a, b, {sign * m, sign * j}, 0.001, 1, 1, 1, Thresholds{});
}

ScoredPair valued(const std::string& a, const std::string& b, double v) {
    return classify_pair(a, b, {v, v}, 0.001, 1, 1, 1, Thresholds{});
}

GeneQuadrantCounts counts(std::size_t mbarj, std::size_t mjbar, std::size_t mj, const std::string& g = "g") {
    GeneQuadrantCounts c;
    c.gene = g;
    c.nMbarJ = mbarj;
    c.nMJbar = mjbar;
    c.nMJ = mj;
    return c;
}

QuadrantCountMap single(const GeneQuadrantCounts& c) { return {{c.gene, c}}; }

std::vector<std::string> genes_of(const std::vector<HubCall>& calls) {
    std::vector<std::string> out;
    for (const auto& c : calls) out.push_back(c.counts.gene);
    return out;
}

double brute_pcc(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / n, my += y[i] / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST(QuadrantCounts, Examples) {
    const std::vector<ScoredPair> one{pair_in("g1", "g2", Quadrant::MJ)};
    const auto c = quadrant_counts(one);
    EXPECT_EQ(c.at("g1").nMJ, 1u);
    EXPECT_EQ(c.at("g2").nMJ, 1u);
    EXPECT_TRUE(quadrant_counts(std::vector<ScoredPair>{}).empty());

    const std::vector<ScoredPair> star{pair_in("g1", "x", Quadrant::MJ), pair_in("g1", "y", Quadrant::MbarJ),
                                       pair_in("z", "g1", Quadrant::MJbar)};
    EXPECT_EQ(quadrant_counts(star).at("g1"), counts(1, 1, 1, "g1"));
}

TEST(QuadrantCounts, SelfPairsIgnored) {
    const std::vector<ScoredPair> pairs{pair_in("g1", "g1", Quadrant::MJ)};
    EXPECT_TRUE(quadrant_counts(pairs).empty());
}

TEST(ExclusiveHubs, Examples) {
    const auto trm112 = exclusive_hubs(single(counts(169, 5, 2, "trm112")));
    ASSERT_EQ(trm112.size(), 1u);
    EXPECT_EQ(trm112[0].lhs, 7.0);
    EXPECT_NEAR(trm112[0].rhs, 16.9, 1e-12);
    EXPECT_EQ(exclusive_hubs(single(counts(117, 6, 2, "rpb4"))).size(), 1u);
    EXPECT_TRUE(exclusive_hubs(single(counts(50, 4, 2))).empty());
}

TEST(ExclusiveHubs, ExactDecimalBoundary) {
    // 3 < 0.1 * 30 is false even though 0.1 * 30 rounds to 3.0000000000000004.
    EXPECT_TRUE(exclusive_hubs(single(counts(30, 1, 2))).empty());
    EXPECT_EQ(exclusive_hubs(single(counts(31, 1, 2))).size(), 1u);
}

TEST(ExclusiveHubs, KnownLibraries) {
    EXPECT_EQ(genes_of(exclusive_hubs(library_hub_counts("ExE"))),
              (std::vector<std::string>{"trm112", "tif35", "noc4", "rrp7", "tim17"}));
    EXPECT_EQ(genes_of(exclusive_hubs(library_hub_counts("NxN"))),
              (std::vector<std::string>{"ZAP1", "vma7", "rpb4", "msm1"}));
    EXPECT_TRUE(symmetric_exclusive_hubs(library_hub_counts("ExE")).empty());
    EXPECT_TRUE(symmetric_exclusive_hubs(library_hub_counts("NxN")).empty());
}

TEST(SharedHubs, Examples) {
    EXPECT_EQ(shared_hubs(single(counts(0, 1, 129, "mcm3"))).size(), 1u);
    EXPECT_EQ(shared_hubs(single(counts(1, 0, 129, "mcm3"))).size(), 1u);
    EXPECT_TRUE(shared_hubs(single(counts(0, 0, 99))).empty());
    EXPECT_EQ(shared_hubs(single(counts(0, 0, 100))).size(), 1u);
    EXPECT_TRUE(shared_hubs(single(counts(10, 5, 200))).empty());
}

TEST(SymmetricExclusiveHubs, Examples) {
    EXPECT_EQ(symmetric_exclusive_hubs(single(counts(0, 20, 1))).size(), 1u);
    EXPECT_TRUE(symmetric_exclusive_hubs(single(counts(0, 10, 0))).empty());
}

TEST(IntermediaryConnectors, Examples) {
    const std::set<std::string> hubs{"h1", "h2"};
    const std::vector<ScoredPair> both{pair_in("h1", "c", Quadrant::MbarJ), pair_in("c", "h2", Quadrant::MJ)};
    EXPECT_EQ(intermediary_connectors(hubs, both, Measure::J), (std::set<std::string>{"c"}));
    EXPECT_TRUE(intermediary_connectors(hubs, both, Measure::M).empty());

    const std::vector<ScoredPair> lone{pair_in("h1", "c", Quadrant::MJ)};
    EXPECT_TRUE(intermediary_connectors(hubs, lone, Measure::J).empty());

    const std::set<std::string> three{"h1", "h2", "h3"};
    const std::vector<ScoredPair> chain{pair_in("h1", "c1", Quadrant::MJ), pair_in("c1", "h2", Quadrant::MJ),
                                        pair_in("h2", "c2", Quadrant::MJ), pair_in("c2", "h3", Quadrant::MJ),
                                        pair_in("h1", "h3", Quadrant::MJ)};
    EXPECT_EQ(intermediary_connectors(three, chain, Measure::J), (std::set<std::string>{"c1", "c2"}));
}

TEST(DegreeTable, CountsDistinctPartners) {
    const std::vector<ScoredPair> pairs{pair_in("a", "b", Quadrant::MJ), pair_in("b", "a", Quadrant::MJ),
                                        pair_in("a", "c", Quadrant::MbarJ), pair_in("a", "a", Quadrant::MJ),
                                        pair_in("d", "a", Quadrant::MbarJbar)};
    const auto d = degree_table(pairs);
    ASSERT_EQ(d.size(), 4u);
    EXPECT_EQ(d[0].gene, "a");
    EXPECT_EQ(d[0].degreeM, 1u);
    EXPECT_EQ(d[0].degreeJ, 2u);
    EXPECT_EQ(d[3].gene, "d");
    EXPECT_EQ(d[3].degreeJ, 0u);
}

TEST(InteractionProfile, Examples) {
    const std::vector<std::string> universe{"g", "u1", "u2", "u3", "u4"};
    const std::vector<ScoredPair> pairs{valued("g", "u1", 0.1), valued("u2", "g", -0.2), valued("g", "u4", 0.3)};
    const auto p = interaction_profile("g", pairs, Measure::M, universe);
    ASSERT_EQ(p.size(), 5u);
    EXPECT_FALSE(p[0].has_value());
    EXPECT_EQ(std::count_if(p.begin(), p.end(), [](const auto& v) { return v.has_value(); }), 3);
    EXPECT_EQ(*p[1], 0.1);
    EXPECT_EQ(*p[2], -0.2);
    EXPECT_EQ(*p[4], 0.3);
    EXPECT_THROW(interaction_profile("nobody", pairs, Measure::M, universe), Error);
}

TEST(ProfilePcc, Examples) {
    const Profile p1{1.0, 2.0, 3.0, 4.0};
    const Profile p2{2.0, 1.0, 4.0, 3.0};
    const Profile neg{-1.0, -2.0, -3.0, -4.0};
    EXPECT_NEAR(profile_pcc(p1, p1), 1.0, 1e-15);
    EXPECT_NEAR(profile_pcc(p1, neg), -1.0, 1e-15);
    EXPECT_NEAR(profile_pcc(p1, p2), 0.6, 1e-15);
}

TEST(ProfilePcc, Errors) {
    const Profile a{1.0, 2.0, std::nullopt, 4.0};
    const Profile b{1.0, std::nullopt, 3.0, 4.0};
    try {
        profile_pcc(a, b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientOverlap);
    }
    try {
        profile_pcc(Profile{1.0, 1.0, 1.0}, Profile{1.0, 2.0, 3.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UndefinedCorrelation);
    }
}

TEST(SimilarityPairs, IdenticalProfilesAndStrictThreshold) {
    std::vector<ScoredPair> pairs;
    for (int i = 0; i < 5; ++i) {
        const double v = 0.1 * i - 0.2;
        pairs.push_back(valued("x", "t" + std::to_string(i), v));
        pairs.push_back(valued("y", "t" + std::to_string(i), v));
    }
    const auto res = similarity_pairs(pairs, Measure::M);
    ASSERT_FALSE(res.pairs.empty());
    EXPECT_EQ(res.pairs[0].geneA, "x");
    EXPECT_EQ(res.pairs[0].geneB, "y");
    EXPECT_NEAR(res.pairs[0].pcc, 1.0, 1e-12);

    SimilarityOptions strict;
    strict.pccThreshold = 1.0;
    EXPECT_TRUE(similarity_pairs(pairs, Measure::M, strict).pairs.empty());
}

TEST(SimilarityPairs, MatchesBruteForceOnToySet) {
    // Four genes profiled over six shared targets.
    const std::vector<std::vector<double>> v{{0.1, -0.3, 0.2, 0.05, -0.1, 0.4},
                                             {0.2, -0.2, 0.1, 0.0, -0.2, 0.3},
                                             {-0.1, 0.3, -0.25, 0.1, 0.2, -0.3},
                                             {0.3, 0.1, -0.1, -0.2, 0.05, 0.0}};
    std::vector<ScoredPair> pairs;
    for (std::size_t g = 0; g < 4; ++g) {
        for (std::size_t t = 0; t < 6; ++t) {
            pairs.push_back(valued("g" + std::to_string(g), "t" + std::to_string(t), v[g][t]));
        }
    }
    SimilarityOptions all;
    all.pccThreshold = -1.0;
    const auto res = similarity_pairs(pairs, Measure::J, all);
    std::map<std::pair<std::string, std::string>, double> got;
    for (const auto& p : res.pairs) got[{p.geneA, p.geneB}] = p.pcc;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            const auto key = std::make_pair("g" + std::to_string(i), "g" + std::to_string(j));
            ASSERT_TRUE(got.count(key));
            EXPECT_NEAR(got[key], brute_pcc(v[i], v[j]), 1e-12);
        }
    }
}

TEST(SimilarityPairs, WorkerCountIndependent) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> s(-0.5, 0.5);
    std::uniform_int_distribution<int> g(0, 39);
    std::vector<ScoredPair> pairs;
    for (int i = 0; i < 1500; ++i) {
        pairs.push_back(valued("G" + std::to_string(g(rng)), "G" + std::to_string(g(rng)), s(rng)));
    }
    SimilarityOptions one, four;
    four.workers = 4;
    const auto a = similarity_pairs(pairs, Measure::M, one);
    const auto b = similarity_pairs(pairs, Measure::M, four);
    ASSERT_EQ(a.pairs.size(), b.pairs.size());
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        EXPECT_EQ(a.pairs[i].geneA, b.pairs[i].geneA);
        EXPECT_EQ(a.pairs[i].geneB, b.pairs[i].geneB);
        EXPECT_EQ(a.pairs[i].pcc, b.pairs[i].pcc);
    }
    EXPECT_EQ(a.skipped, b.skipped);
}

TEST(DualSimilarity, CountsAreConsistent) {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> s(-0.5, 0.5);
    std::uniform_int_distribution<int> g(0, 24);
    std::vector<ScoredPair> pairs;
    for (int i = 0; i < 600; ++i) {
        pairs.push_back(classify_pair("G" + std::to_string(g(rng)), "G" + std::to_string(g(rng)), {s(rng), s(rng)},
                                      0.01, 1, 1, 1, Thresholds{}));
    }
    const auto dual = dual_similarity(pairs);
    EXPECT_EQ(dual.aboveM, similarity_pairs(pairs, Measure::M).pairs.size());
    EXPECT_EQ(dual.aboveJ, similarity_pairs(pairs, Measure::J).pairs.size());
    EXPECT_EQ(dual.pairs.size(), dual.aboveM + dual.aboveJ - dual.aboveBoth);
}

// Properties.

TEST(NetAnalysisProperty, QuadrantConservation) {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> g(0, 29), q(0, 3);
    std::vector<ScoredPair> pairs;
    std::size_t per[4] = {0, 0, 0, 0};
    for (int i = 0; i < 500; ++i) {
        std::string a = "G" + std::to_string(g(rng)), b = "G" + std::to_string(g(rng));
        if (a == b) continue;
        const auto quad = static_cast<Quadrant>(q(rng));
        ++per[static_cast<int>(quad)];
        pairs.push_back(pair_in(a, b, quad));
    }
    std::size_t sum[4] = {0, 0, 0, 0};
    for (const auto& [gene, c] : quadrant_counts(pairs)) {
        sum[0] += c.nMJ;
        sum[1] += c.nMbarJ;
        sum[2] += c.nMJbar;
        sum[3] += c.nMbarJbar;
    }
    for (int i = 0; i < 4; ++i) EXPECT_EQ(sum[i], 2 * per[i]);
}

TEST(NetAnalysisProperty, HubsAreOrderIndependent) {
    auto pairs = ginet::testing::library_hub_pairs("ExE");
    const auto ref = genes_of(exclusive_hubs(quadrant_counts(pairs)));
    std::mt19937_64 rng(59);
    for (int i = 0; i < 5; ++i) {
        std::shuffle(pairs.begin(), pairs.end(), rng);
        ASSERT_EQ(genes_of(exclusive_hubs(quadrant_counts(pairs))), ref);
    }
}

TEST(NetAnalysisProperty, PccSymmetryAndAffineInvariance) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> s(-1.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        Profile p1, p2, scaled;
        const double a = (i % 2 ? 1 : -1) * (0.1 + std::abs(s(rng))), c = s(rng);
        for (int k = 0; k < 8; ++k) {
            p1.push_back(s(rng));
            p2.push_back(k == 3 ? std::nullopt : std::optional<double>(s(rng)));
            scaled.push_back(a * *p1.back() + c);
        }
        const double r = profile_pcc(p1, p2);
        ASSERT_NEAR(r, profile_pcc(p2, p1), 1e-12);
        ASSERT_NEAR(profile_pcc(scaled, p2), (a > 0 ? 1 : -1) * r, 1e-12);
    }
}

TEST(NetAnalysisProperty, ConnectorsNeverHubs) {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<int> g(0, 19), q(0, 3);
    std::vector<ScoredPair> pairs;
    for (int i = 0; i < 200; ++i) {
        pairs.push_back(pair_in("G" + std::to_string(g(rng)), "G" + std::to_string(g(rng)),
                                static_cast<Quadrant>(q(rng))));
    }
    const std::set<std::string> hubs{"G1", "G2", "G3", "G4"};
    for (Measure m : {Measure::M, Measure::J}) {
        for (const auto& c : intermediary_connectors(hubs, pairs, m)) EXPECT_FALSE(hubs.count(c));
    }
}
