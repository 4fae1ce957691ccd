#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "ginet/annotate.hpp"
#include "ginet/error.hpp"

using namespace ginet;

namespace {

ScoredPair pair_with(const std::string& a, const std::string& b, double m, double j) {
    return classify_pair(a, b, {m, j}, 0.001, 1, 1, 1, Thresholds{});
}

AnnotationCatalog catalog_of(std::initializer_list<std::pair<const char*, const char*>> entries) {
    AnnotationCatalog c(CatalogKind::Complex);
    for (auto [g, cat] : entries) c.add(g, cat);
    return c;
}

// P(X >= k) by enumerating every draw of `draws` items from `population`,
// with the category being items [0, successes).
double enumerate_tail(unsigned population, unsigned successes, unsigned draws, unsigned k) {
    std::uint64_t hit = 0, total = 0;
    const std::uint32_t category = (1u << successes) - 1u;
    for (std::uint32_t mask = 0; mask < (1u << population); ++mask) {
        if (static_cast<unsigned>(std::popcount(mask)) != draws) continue;
        ++total;
        if (static_cast<unsigned>(std::popcount(mask & category)) >= k) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(total);
}

}  // namespace

TEST(LoadAnnotations, Examples) {
    std::istringstream in("g1\tc1\ng2\tc1\ng1\tc2\n");
    const auto load = load_annotations(in, CatalogKind::GO_BP);
    EXPECT_EQ(load.catalog.categories().at("c1"), (std::set<std::string>{"G1", "G2"}));
    EXPECT_EQ(load.catalog.categories().at("c2"), (std::set<std::string>{"G1"}));
    EXPECT_EQ(load.malformedLines, 0u);

    std::istringstream dup("g1\tc1\ng1\tc1\n# comment\n\nbroken line\n");
    const auto d = load_annotations(dup, CatalogKind::KEGG);
    EXPECT_EQ(d.catalog.categories().at("c1").size(), 1u);
    EXPECT_EQ(d.malformedLines, 1u);
}

TEST(LoadAnnotations, RoundTrip) {
    const auto c = catalog_of({{"A", "x"}, {"B", "x"}, {"B", "y"}, {"C", "z z"}});
    std::stringstream ss;
    write_annotations(ss, c);
    EXPECT_EQ(load_annotations(ss, CatalogKind::Complex).catalog, c);
}

TEST(LoadAnnotations, MappingsAreInverse) {
    const auto c = catalog_of({{"A", "x"}, {"B", "x"}, {"B", "y"}});
    for (const auto& [cat, genes] : c.categories()) {
        for (const auto& g : genes) EXPECT_TRUE(c.categories_of(g).count(cat));
    }
    for (const auto& [g, cats] : c.genes()) {
        for (const auto& cat : cats) EXPECT_TRUE(c.categories().at(cat).count(g));
    }
}

TEST(CatalogKind, DefaultsAndParsing) {
    EXPECT_EQ(default_min_pairs(CatalogKind::GO_BP), 500u);
    EXPECT_EQ(default_min_pairs(CatalogKind::KEGG), 10u);
    EXPECT_EQ(default_min_pairs(CatalogKind::Complex), 10u);
    EXPECT_EQ(parse_catalog_kind("complex"), CatalogKind::Complex);
    EXPECT_THROW(parse_catalog_kind("reactome"), Error);
}

TEST(SegregationTable, SingleMJPositive) {
    const auto c = catalog_of({{"A", "cat"}, {"B", "cat"}});
    const std::vector<ScoredPair> pairs{pair_with("A", "B", 0.2, 0.2)};
    const auto rows = segregation_table(pairs, c, 1);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].sign, Sign::Positive);
    EXPECT_EQ(rows[0].nMJ, 1u);
    EXPECT_EQ(rows[1].nMJ, 0u);
    EXPECT_EQ(rows[0].miss_rate_m(), 0.0);
    EXPECT_TRUE(std::isnan(rows[1].miss_rate_j()));
}

TEST(SegregationTable, SizeFilterBoundary) {
    AnnotationCatalog c(CatalogKind::Complex);
    std::vector<ScoredPair> pairs;
    for (int i = 0; i < 10; ++i) c.add("G" + std::to_string(i), "cat");
    for (int i = 1; i < 10; ++i) pairs.push_back(pair_with("G0", "G" + std::to_string(i), -0.2, -0.2));
    EXPECT_TRUE(segregation_table(pairs, c, 10).empty());
    pairs.push_back(pair_with("G1", "G2", -0.2, -0.2));
    EXPECT_EQ(segregation_table(pairs, c, 10).size(), 2u);
}

TEST(SegregationTable, EitherMeasureFilter) {
    const auto c = catalog_of({{"A", "cat"}, {"B", "cat"}, {"C", "cat"}});
    const std::vector<ScoredPair> pairs{pair_with("A", "B", 0.01, 0.2), pair_with("A", "C", 0.2, 0.01)};
    EXPECT_TRUE(segregation_table(pairs, c, 2, SizeFilter::BothMeasures).empty());
    EXPECT_EQ(segregation_table(pairs, c, 2, SizeFilter::EitherMeasure).size(), 2u);
}

TEST(SegregationTable, SignConflictEntersBothTables) {
    const auto c = catalog_of({{"A", "cat"}, {"B", "cat"}});
    const std::vector<ScoredPair> pairs{pair_with("A", "B", 0.2, -0.2)};
    const auto rows = segregation_table(pairs, c, 1);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].nMJ, 1u);
    EXPECT_EQ(rows[1].nMJ, 1u);
    EXPECT_EQ(rows[0].nSignConflict, 1u);
    EXPECT_EQ(rows[1].nSignConflict, 1u);
}

TEST(SegregationTable, TwelvePairsMatchBruteForce) {
    // Genes G0..G5 in "cat"; G6 is outside every category.
    AnnotationCatalog c(CatalogKind::Complex);
    for (int i = 0; i < 6; ++i) c.add("G" + std::to_string(i), "cat");
    c.add("G0", "other");
    c.add("G1", "other");
    const double vals[][2] = {{0.2, 0.2},   {-0.2, -0.2}, {0.01, 0.2}, {0.01, -0.2}, {0.2, 0.01},  {-0.2, 0.01},
                              {0.01, 0.01}, {0.3, 0.3},   {-0.3, 0.3}, {0.02, 0.3},  {-0.3, -0.01}, {0.3, -0.3}};
    std::vector<ScoredPair> pairs;
    int k = 0;
    for (int i = 0; i < 6 && k < 12; ++i) {
        for (int j = i + 1; j < 6 && k < 12; ++j, ++k) {
            pairs.push_back(pair_with("G" + std::to_string(i), "G" + std::to_string(j), vals[k][0], vals[k][1]));
        }
    }
    pairs.push_back(pair_with("G0", "G6", 0.2, 0.2));

    // Brute force per sign.
    std::size_t exp[2][3] = {{0, 0, 0}, {0, 0, 0}};  // [pos/neg][MJ, MbarJ, MJbar]
    for (int i = 0; i < 12; ++i) {
        const auto& p = pairs[static_cast<std::size_t>(i)];
        const int sm = p.scores.m > 0 ? 0 : 1, sj = p.scores.logJ > 0 ? 0 : 1;
        switch (p.quadrant) {
            case Quadrant::MJ:
                ++exp[sj][0];
                if (sm != sj) ++exp[sm][0];
                break;
            case Quadrant::MbarJ: ++exp[sj][1]; break;
            case Quadrant::MJbar: ++exp[sm][2]; break;
            case Quadrant::MbarJbar: break;
        }
    }
    const auto rows = segregation_table(pairs, c, 1);
    const CategorySegregation* pos = nullptr;
    const CategorySegregation* neg = nullptr;
    for (const auto& r : rows) {
        if (r.category != "cat") continue;
        (r.sign == Sign::Positive ? pos : neg) = &r;
    }
    ASSERT_TRUE(pos && neg);
    EXPECT_EQ(pos->nMJ, exp[0][0]);
    EXPECT_EQ(pos->nMbarJ, exp[0][1]);
    EXPECT_EQ(pos->nMJbar, exp[0][2]);
    EXPECT_EQ(neg->nMJ, exp[1][0]);
    EXPECT_EQ(neg->nMbarJ, exp[1][1]);
    EXPECT_EQ(neg->nMJbar, exp[1][2]);
    EXPECT_EQ(pos->nSignConflict, 2u);
}

TEST(Hypergeometric, TwentyChooseFive) {
    EXPECT_EQ(hypergeometric_upper_tail(20, 5, 5, 5), 1.0 / 15504.0);
    EXPECT_NEAR(hypergeometric_upper_tail(20, 5, 5, 5), 6.45e-5, 1e-7);
}

TEST(Hypergeometric, TrivialTails) {
    EXPECT_EQ(hypergeometric_upper_tail(20, 20, 5, 5), 1.0);
    EXPECT_EQ(hypergeometric_upper_tail(20, 3, 5, 0), 1.0);
    EXPECT_EQ(hypergeometric_upper_tail(20, 3, 5, 4), 0.0);
    EXPECT_THROW(hypergeometric_upper_tail(5, 6, 1, 1), Error);
}

TEST(Hypergeometric, LargePopulationAgreesWithExactPath) {
    // Population 120 takes the exact path, 6000 the log-factorial one.
    const double exact = hypergeometric_upper_tail(120, 10, 30, 5);
    const double approx = hypergeometric_upper_tail(6000, 500, 1500, 150);
    EXPECT_GT(exact, 0.0);
    EXPECT_LE(exact, 1.0);
    EXPECT_GT(approx, 0.0);
    EXPECT_LE(approx, 1.0);
    // Symmetry of the hypergeometric in (successes, draws).
    EXPECT_NEAR(hypergeometric_upper_tail(6000, 500, 1500, 140), hypergeometric_upper_tail(6000, 1500, 500, 140),
                1e-12);
}

TEST(HolmBonferroni, KnownValues) {
    const std::vector<double> p{0.01, 0.04, 0.03, 0.005};
    const auto adj = holm_bonferroni(p);
    EXPECT_NEAR(adj[3], 0.02, 1e-15);
    EXPECT_NEAR(adj[0], 0.03, 1e-15);
    EXPECT_NEAR(adj[2], 0.06, 1e-15);
    EXPECT_NEAR(adj[1], 0.06, 1e-15);
    EXPECT_EQ(holm_bonferroni(std::vector<double>{0.9, 0.8})[0], 1.0);
}

TEST(Enrichment, Examples) {
    AnnotationCatalog c(CatalogKind::Complex);
    std::set<std::string> universe, selected;
    for (int i = 0; i < 20; ++i) universe.insert("G" + std::to_string(i));
    for (int i = 0; i < 5; ++i) {
        c.add("G" + std::to_string(i), "tight");
        selected.insert("G" + std::to_string(i));
    }
    for (const auto& g : universe) c.add(g, "everything");
    c.add("G10", "small");
    c.add("G11", "small");
    c.add("OUTSIDE", "absent");

    const auto rows = enrichment(selected, universe, c);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].category, "tight");
    EXPECT_EQ(rows[0].pRaw, 1.0 / 15504.0);
    EXPECT_TRUE(rows[0].significant);
    for (const auto& r : rows) {
        if (r.category == "everything") {
            EXPECT_EQ(r.pRaw, 1.0);
        }
        if (r.category == "small") {
            EXPECT_EQ(r.overlap, 0u);
            EXPECT_EQ(r.pRaw, 1.0);
            EXPECT_FALSE(r.significant);
        }
    }
}

TEST(Enrichment, Errors) {
    const auto c = catalog_of({{"A", "x"}});
    try {
        enrichment({"Z"}, {"A"}, c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Containment);
    }
    EXPECT_THROW(enrichment({}, {}, c), Error);
}

// Properties.

TEST(AnnotateProperty, HypergeometricMatchesEnumeration) {
    for (unsigned n = 1; n <= 15; ++n) {
        for (unsigned k = 0; k <= n; ++k) {
            for (unsigned d = 0; d <= n; ++d) {
                for (unsigned x = 0; x <= std::min(k, d) + 1; ++x) {
                    ASSERT_EQ(hypergeometric_upper_tail(n, k, d, x), enumerate_tail(n, k, d, x))
                        << n << " " << k << " " << d << " " << x;
                }
            }
        }
    }
}

TEST(AnnotateProperty, HolmMonotoneAndAboveRaw) {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, 0.2);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> p(1 + t % 17);
        for (double& v : p) v = u(rng);
        const auto adj = holm_bonferroni(p);
        std::vector<std::size_t> order(p.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return p[a] < p[b]; });
        for (std::size_t i = 0; i < p.size(); ++i) {
            ASSERT_GE(adj[i], p[i]);
            ASSERT_LE(adj[i], 1.0);
            if (i > 0) {
                ASSERT_LE(adj[order[i - 1]], adj[order[i]]);
            }
        }
    }
}

TEST(AnnotateProperty, SegregationConservation) {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> s(-0.3, 0.3);
    std::uniform_int_distribution<int> g(0, 14);
    AnnotationCatalog c(CatalogKind::Complex);
    for (int i = 0; i < 15; ++i) c.add("G" + std::to_string(i), i < 10 ? "big" : "rest");
    std::vector<ScoredPair> pairs;
    for (int i = 0; i < 200; ++i) {
        pairs.push_back(pair_with("G" + std::to_string(g(rng)), "G" + std::to_string(g(rng)), s(rng), s(rng)));
    }
    for (const auto& row : segregation_table(pairs, c, 1)) {
        const auto& members = c.categories().at(row.category);
        std::size_t expected = 0;
        for (const auto& p : pairs) {
            if (p.self_pair() || !members.count(p.geneA) || !members.count(p.geneB)) continue;
            if (p.signM == row.sign || p.signJ == row.sign) ++expected;
        }
        EXPECT_EQ(row.nMJ + row.nMbarJ + row.nMJbar, expected) << row.category;
    }
}
