#pragma once
// Gene-level views over scored pairs: per-gene quadrant tallies, hub criteria,
// connector genes between hubs, interaction profiles and their correlation.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ginet/measures.hpp"

namespace ginet {

struct GeneQuadrantCounts {
    std::string gene;
    std::size_t nMJ = 0;
    std::size_t nMbarJ = 0;
    std::size_t nMJbar = 0;
    std::size_t nMbarJbar = 0;

    std::size_t m_total() const noexcept { return nMJ + nMJbar; }
    std::size_t j_total() const noexcept { return nMJ + nMbarJ; }
    bool operator==(const GeneQuadrantCounts&) const = default;
};

using QuadrantCountMap = std::map<std::string, GeneQuadrantCounts>;

// Each non-self pair increments both incident genes in its quadrant bucket.
QuadrantCountMap quadrant_counts(std::span<const ScoredPair> pairs);

// A hub with the two sides of the criterion that admitted it.
struct HubCall {
    GeneQuadrantCounts counts;
    double lhs = 0.0;
    double rhs = 0.0;
};

// nMJ + nMJbar < ratio * nMbarJ; sorted by nMbarJ descending, then gene.
std::vector<HubCall> exclusive_hubs(const QuadrantCountMap& counts, double ratio = 0.1);

// nMJ > minCommon - 1 and nMbarJ + nMJbar < maxDiscord * nMJ; sorted by nMJ
// descending, then gene.
std::vector<HubCall> shared_hubs(const QuadrantCountMap& counts, std::size_t minCommon = 100,
                                 double maxDiscord = 0.05);

// Mirror of exclusive_hubs: nMJbar > minExclusive and nMJ + nMbarJ < ratio * nMJbar.
std::vector<HubCall> symmetric_exclusive_hubs(const QuadrantCountMap& counts, std::size_t minExclusive = 10,
                                              double ratio = 0.1);

// Non-hub genes interacting (under `measure`) with at least two distinct hubs.
std::set<std::string> intermediary_connectors(const std::set<std::string>& hubGenes,
                                              std::span<const ScoredPair> pairs, Measure measure);

struct GeneDegree {
    std::string gene;
    std::size_t degreeM = 0;
    std::size_t degreeJ = 0;
};

// Distinct interacting partners per measure, self pairs excluded. Every gene
// seen in `pairs` appears, sorted by name.
std::vector<GeneDegree> degree_table(std::span<const ScoredPair> pairs);

using Profile = std::vector<std::optional<double>>;

// Scores of `gene` against each universe gene; absent where no pair exists.
// With significantOnly, only pairs interacting under `measure` contribute.
Profile interaction_profile(const std::string& gene, std::span<const ScoredPair> pairs, Measure measure,
                            std::span<const std::string> universe, bool significantOnly = false);

inline constexpr std::size_t kMinProfileOverlap = 3;

// Pearson correlation over positions present in both profiles.
double profile_pcc(const Profile& p1, const Profile& p2);

struct SimilarityPair {
    std::string geneA;
    std::string geneB;
    double pcc = 0.0;
};

struct SimilarityResult {
    std::vector<SimilarityPair> pairs;  // pcc desc, then (geneA, geneB)
    std::size_t skipped = 0;            // gene pairs without a defined PCC
    std::size_t tested = 0;
};

struct SimilarityOptions {
    double pccThreshold = 0.2;
    bool significantOnly = false;
    unsigned workers = 1;
};

// All unordered gene pairs whose profile PCC exceeds the threshold.
SimilarityResult similarity_pairs(std::span<const ScoredPair> pairs, Measure measure,
                                  const SimilarityOptions& options = {});

// PCC under both measures for every gene pair where at least one exceeds the
// threshold; NaN marks an undefined PCC. Sorted by max(pcc_m, pcc_j) desc.
struct DualSimilarity {
    std::string geneA;
    std::string geneB;
    double pccM = 0.0;
    double pccJ = 0.0;
};

struct DualSimilarityResult {
    std::vector<DualSimilarity> pairs;
    std::size_t aboveM = 0;
    std::size_t aboveJ = 0;
    std::size_t aboveBoth = 0;
};

DualSimilarityResult dual_similarity(std::span<const ScoredPair> pairs, const SimilarityOptions& options = {});

}  // namespace ginet
