#include "ginet/netanalysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "ginet/error.hpp"

namespace ginet {

namespace {

GeneQuadrantCounts& slot(QuadrantCountMap& m, const std::string& gene) {
    auto [it, inserted] = m.try_emplace(gene);
    if (inserted) it->second.gene = gene;
    return it->second;
}

void bump(GeneQuadrantCounts& c, Quadrant q) {
    switch (q) {
        case Quadrant::MJ: ++c.nMJ; break;
        case Quadrant::MbarJ: ++c.nMbarJ; break;
        case Quadrant::MJbar: ++c.nMJbar; break;
        case Quadrant::MbarJbar: ++c.nMbarJbar; break;
    }
}

// lhs < ratio * n, evaluated as lhs / n < ratio so that exact decimal
// boundaries (3 vs 0.1 * 30) are not decided by rounding of the product.
bool below_fraction(std::size_t lhs, double ratio, std::size_t n) {
    if (n == 0) return false;
    return static_cast<double>(lhs) / static_cast<double>(n) < ratio;
}

template <typename Key>
std::vector<HubCall> sorted_calls(std::vector<HubCall> calls, Key key) {
    std::sort(calls.begin(), calls.end(), [&](const HubCall& a, const HubCall& b) {
        const auto ka = key(a.counts), kb = key(b.counts);
        if (ka != kb) return ka > kb;
        return a.counts.gene < b.counts.gene;
    });
    return calls;
}

using SparseProfile = std::vector<std::pair<std::uint32_t, double>>;

struct ProfileSet {
    std::vector<std::string> genes;
    std::vector<SparseProfile> profiles;
};

ProfileSet build_profiles(std::span<const ScoredPair> pairs, Measure measure, bool significantOnly) {
    ProfileSet set;
    for (const auto& p : pairs) {
        set.genes.push_back(p.geneA);
        set.genes.push_back(p.geneB);
    }
    std::sort(set.genes.begin(), set.genes.end());
    set.genes.erase(std::unique(set.genes.begin(), set.genes.end()), set.genes.end());

    std::unordered_map<std::string, std::uint32_t> index;
    index.reserve(set.genes.size());
    for (std::uint32_t i = 0; i < set.genes.size(); ++i) index.emplace(set.genes[i], i);

    set.profiles.resize(set.genes.size());
    for (const auto& p : pairs) {
        if (p.self_pair()) continue;
        if (significantOnly && !interacting(p.quadrant, measure)) continue;
        const auto a = index.at(p.geneA), b = index.at(p.geneB);
        set.profiles[a].emplace_back(b, p.value(measure));
        set.profiles[b].emplace_back(a, p.value(measure));
    }
    for (auto& prof : set.profiles) {
        // Stable so the first occurrence of a duplicated partner wins.
        std::stable_sort(prof.begin(), prof.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        prof.erase(std::unique(prof.begin(), prof.end(),
                               [](const auto& x, const auto& y) { return x.first == y.first; }),
                   prof.end());
    }
    return set;
}

// Pearson over shared positions; NaN when undefined.
double sparse_pcc(const SparseProfile& p1, const SparseProfile& p2) {
    auto for_shared = [&](auto&& fn) {
        auto i = p1.begin(), j = p2.begin();
        while (i != p1.end() && j != p2.end()) {
            if (i->first < j->first) {
                ++i;
            } else if (j->first < i->first) {
                ++j;
            } else {
                fn(i->second, j->second);
                ++i;
                ++j;
            }
        }
    };
    std::size_t n = 0;
    double sx = 0.0, sy = 0.0;
    for_shared([&](double x, double y) {
        ++n;
        sx += x;
        sy += y;
    });
    if (n < kMinProfileOverlap) return std::numeric_limits<double>::quiet_NaN();
    const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for_shared([&](double x, double y) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    });
    if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Runs fn(i, j) over all i < j, sharding rows i across workers. Each worker
// writes into its own bucket; callers merge and sort, so the result does not
// depend on the worker count.
template <typename Out, typename Fn>
std::vector<Out> all_pairs(std::size_t n, unsigned workers, Fn fn) {
    workers = std::max(1u, workers);
    std::vector<std::vector<Out>> buckets(workers);
    std::atomic<std::size_t> next{0};
    auto run = [&](unsigned w) {
        for (std::size_t i = next++; i < n; i = next++) {
            for (std::size_t j = i + 1; j < n; ++j) fn(i, j, buckets[w]);
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    std::vector<Out> merged;
    for (auto& b : buckets) {
        merged.insert(merged.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    }
    return merged;
}

}  // namespace

QuadrantCountMap quadrant_counts(std::span<const ScoredPair> pairs) {
    QuadrantCountMap counts;
    for (const auto& p : pairs) {
        if (p.self_pair()) continue;
        bump(slot(counts, p.geneA), p.quadrant);
        bump(slot(counts, p.geneB), p.quadrant);
    }
    return counts;
}

std::vector<HubCall> exclusive_hubs(const QuadrantCountMap& counts, double ratio) {
    std::vector<HubCall> calls;
    for (const auto& [gene, c] : counts) {
        const std::size_t lhs = c.nMJ + c.nMJbar;
        if (below_fraction(lhs, ratio, c.nMbarJ)) {
            calls.push_back({c, static_cast<double>(lhs), ratio * static_cast<double>(c.nMbarJ)});
        }
    }
    return sorted_calls(std::move(calls), [](const GeneQuadrantCounts& c) { return c.nMbarJ; });
}

std::vector<HubCall> shared_hubs(const QuadrantCountMap& counts, std::size_t minCommon, double maxDiscord) {
    std::vector<HubCall> calls;
    for (const auto& [gene, c] : counts) {
        const std::size_t discord = c.nMbarJ + c.nMJbar;
        if (c.nMJ + 1 > minCommon && below_fraction(discord, maxDiscord, c.nMJ)) {
            calls.push_back({c, static_cast<double>(discord), maxDiscord * static_cast<double>(c.nMJ)});
        }
    }
    return sorted_calls(std::move(calls), [](const GeneQuadrantCounts& c) { return c.nMJ; });
}

std::vector<HubCall> symmetric_exclusive_hubs(const QuadrantCountMap& counts, std::size_t minExclusive,
                                              double ratio) {
    std::vector<HubCall> calls;
    for (const auto& [gene, c] : counts) {
        const std::size_t lhs = c.nMJ + c.nMbarJ;
        if (c.nMJbar > minExclusive && below_fraction(lhs, ratio, c.nMJbar)) {
            calls.push_back({c, static_cast<double>(lhs), ratio * static_cast<double>(c.nMJbar)});
        }
    }
    return sorted_calls(std::move(calls), [](const GeneQuadrantCounts& c) { return c.nMJbar; });
}

std::set<std::string> intermediary_connectors(const std::set<std::string>& hubGenes,
                                              std::span<const ScoredPair> pairs, Measure measure) {
    std::map<std::string, std::set<std::string>> hubsOf;
    for (const auto& p : pairs) {
        if (p.self_pair() || !interacting(p.quadrant, measure)) continue;
        const bool hubA = hubGenes.count(p.geneA) > 0;
        const bool hubB = hubGenes.count(p.geneB) > 0;
        if (hubA && !hubB) hubsOf[p.geneB].insert(p.geneA);
        if (hubB && !hubA) hubsOf[p.geneA].insert(p.geneB);
    }
    std::set<std::string> out;
    for (const auto& [gene, hubs] : hubsOf) {
        if (hubs.size() >= 2) out.insert(gene);
    }
    return out;
}

std::vector<GeneDegree> degree_table(std::span<const ScoredPair> pairs) {
    std::map<std::string, std::pair<std::set<std::string>, std::set<std::string>>> partners;
    for (const auto& p : pairs) {
        auto& a = partners[p.geneA];
        auto& b = partners[p.geneB];
        if (p.self_pair()) continue;
        if (m_interacting(p.quadrant)) {
            a.first.insert(p.geneB);
            b.first.insert(p.geneA);
        }
        if (j_interacting(p.quadrant)) {
            a.second.insert(p.geneB);
            b.second.insert(p.geneA);
        }
    }
    std::vector<GeneDegree> out;
    out.reserve(partners.size());
    for (const auto& [gene, sets] : partners) out.push_back({gene, sets.first.size(), sets.second.size()});
    return out;
}

Profile interaction_profile(const std::string& gene, std::span<const ScoredPair> pairs, Measure measure,
                            std::span<const std::string> universe, bool significantOnly) {
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < universe.size(); ++i) index.emplace(universe[i], i);

    Profile profile(universe.size());
    bool seen = false;
    for (const auto& p : pairs) {
        if (p.geneA != gene && p.geneB != gene) continue;
        seen = true;
        if (p.self_pair()) continue;
        if (significantOnly && !interacting(p.quadrant, measure)) continue;
        const std::string& partner = p.geneA == gene ? p.geneB : p.geneA;
        auto it = index.find(partner);
        if (it != index.end() && !profile[it->second]) profile[it->second] = p.value(measure);
    }
    if (!seen) throw Error(ErrorCode::EmptyProfile, "gene '" + gene + "' appears in no scored pair");
    return profile;
}

double profile_pcc(const Profile& p1, const Profile& p2) {
    if (p1.size() != p2.size()) {
        throw Error(ErrorCode::InvalidArgument, "profiles are over different universes");
    }
    SparseProfile s1, s2;
    for (std::uint32_t i = 0; i < p1.size(); ++i) {
        if (p1[i] && p2[i]) {
            s1.emplace_back(i, *p1[i]);
            s2.emplace_back(i, *p2[i]);
        }
    }
    if (s1.size() < kMinProfileOverlap) {
        throw Error(ErrorCode::InsufficientOverlap,
                    "profiles share " + std::to_string(s1.size()) + " positions; need at least 3");
    }
    const double r = sparse_pcc(s1, s2);
    if (std::isnan(r)) throw Error(ErrorCode::UndefinedCorrelation, "profile has zero variance");
    return r;
}

SimilarityResult similarity_pairs(std::span<const ScoredPair> pairs, Measure measure,
                                  const SimilarityOptions& options) {
    const auto set = build_profiles(pairs, measure, options.significantOnly);
    struct Hit {
        std::uint32_t a, b;
        double pcc;
    };
    const auto hits = all_pairs<Hit>(set.genes.size(), options.workers,
                                     [&](std::size_t i, std::size_t j, std::vector<Hit>& out) {
                                         const double r = sparse_pcc(set.profiles[i], set.profiles[j]);
                                         out.push_back({static_cast<std::uint32_t>(i),
                                                        static_cast<std::uint32_t>(j), r});
                                     });

    SimilarityResult result;
    result.tested = hits.size();
    for (const auto& h : hits) {
        if (std::isnan(h.pcc)) {
            ++result.skipped;
        } else if (h.pcc > options.pccThreshold) {
            result.pairs.push_back({set.genes[h.a], set.genes[h.b], h.pcc});
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end(), [](const SimilarityPair& x, const SimilarityPair& y) {
        if (x.pcc != y.pcc) return x.pcc > y.pcc;
        return std::tie(x.geneA, x.geneB) < std::tie(y.geneA, y.geneB);
    });
    return result;
}

DualSimilarityResult dual_similarity(std::span<const ScoredPair> pairs, const SimilarityOptions& options) {
    const auto setM = build_profiles(pairs, Measure::M, options.significantOnly);
    const auto setJ = build_profiles(pairs, Measure::J, options.significantOnly);
    const double th = options.pccThreshold;
    struct Hit {
        std::uint32_t a, b;
        double m, j;
    };
    const auto hits = all_pairs<Hit>(setM.genes.size(), options.workers,
                                     [&](std::size_t i, std::size_t j, std::vector<Hit>& out) {
                                         const double m = sparse_pcc(setM.profiles[i], setM.profiles[j]);
                                         const double jj = sparse_pcc(setJ.profiles[i], setJ.profiles[j]);
                                         if (m > th || jj > th) {
                                             out.push_back({static_cast<std::uint32_t>(i),
                                                            static_cast<std::uint32_t>(j), m, jj});
                                         }
                                     });

    DualSimilarityResult result;
    for (const auto& h : hits) {
        const bool overM = h.m > th, overJ = h.j > th;
        result.aboveM += overM;
        result.aboveJ += overJ;
        result.aboveBoth += overM && overJ;
        result.pairs.push_back({setM.genes[h.a], setM.genes[h.b], h.m, h.j});
    }
    auto top = [](const DualSimilarity& d) {
        return std::max(std::isnan(d.pccM) ? -2.0 : d.pccM, std::isnan(d.pccJ) ? -2.0 : d.pccJ);
    };
    std::sort(result.pairs.begin(), result.pairs.end(), [&](const DualSimilarity& x, const DualSimilarity& y) {
        const double tx = top(x), ty = top(y);
        if (tx != ty) return tx > ty;
        return std::tie(x.geneA, x.geneB) < std::tie(y.geneA, y.geneB);
    });
    return result;
}

}  // namespace ginet
