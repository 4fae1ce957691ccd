#pragma once
// Functional-category bookkeeping over scored pairs.
//
// Annotation files are two-column TSV (gene<TAB>category), '#' comments.
// Gene names are uppercased on load so they match ids from extract_gene().

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ginet/measures.hpp"

namespace ginet {

enum class CatalogKind { GO_BP, KEGG, Complex };

std::string_view to_string(CatalogKind k) noexcept;
CatalogKind parse_catalog_kind(std::string_view s);

// Co-annotated pair threshold per kind (500 for GO_BP, 10 otherwise).
std::size_t default_min_pairs(CatalogKind kind) noexcept;

class AnnotationCatalog {
public:
    explicit AnnotationCatalog(CatalogKind kind = CatalogKind::GO_BP) : kind_(kind) {}

    void add(const std::string& gene, const std::string& category);

    CatalogKind kind() const noexcept { return kind_; }
    const std::map<std::string, std::set<std::string>>& categories() const noexcept { return byCategory_; }
    const std::map<std::string, std::set<std::string>>& genes() const noexcept { return byGene_; }
    const std::set<std::string>& categories_of(const std::string& gene) const;
    bool empty() const noexcept { return byCategory_.empty(); }

    bool operator==(const AnnotationCatalog&) const = default;

private:
    CatalogKind kind_;
    std::map<std::string, std::set<std::string>> byCategory_;
    std::map<std::string, std::set<std::string>> byGene_;
};

struct CatalogLoad {
    AnnotationCatalog catalog;
    std::size_t malformedLines = 0;
};

CatalogLoad load_annotations(std::istream& in, CatalogKind kind);
void write_annotations(std::ostream& out, const AnnotationCatalog& catalog);

// Which pairs count towards a category's size filter.
enum class SizeFilter {
    BothMeasures,  // interacting under both (quadrant MJ)
    EitherMeasure, // interacting under at least one
};

struct CategorySegregation {
    std::string category;
    Sign sign = Sign::Positive;
    std::size_t nMJ = 0;
    std::size_t nMbarJ = 0;
    std::size_t nMJbar = 0;
    std::size_t nSignConflict = 0;  // MJ pairs whose M and J signs disagree
    std::size_t sizeCount = 0;      // pairs counted by the size filter

    // NaN when the denominator is zero.
    double miss_rate_m() const noexcept;  // nMbarJ / (nMJ + nMbarJ)
    double miss_rate_j() const noexcept;  // nMJbar / (nMJ + nMJbar)
};

// One positive and one negative row per category that passes the size filter
// (sizeCount >= minPairs), sorted by category then sign (positive first).
std::vector<CategorySegregation> segregation_table(std::span<const ScoredPair> pairs,
                                                   const AnnotationCatalog& catalog, std::size_t minPairs,
                                                   SizeFilter filter = SizeFilter::BothMeasures);

struct EnrichmentRow {
    std::string category;
    std::size_t overlap = 0;
    std::size_t categorySize = 0;  // |category ∩ universe|
    double pRaw = 1.0;
    double pAdjusted = 1.0;
    bool significant = false;
};

// P(X >= overlap) for X ~ Hypergeometric(population, successes, draws).
double hypergeometric_upper_tail(std::size_t population, std::size_t successes, std::size_t draws,
                                 std::size_t overlap);

// Holm step-down adjustment; returned values align with the input order.
std::vector<double> holm_bonferroni(std::span<const double> pRaw);

// Tests every category with at least one member in the universe. Sorted by
// raw p ascending, then category.
std::vector<EnrichmentRow> enrichment(const std::set<std::string>& selected, const std::set<std::string>& universe,
                                      const AnnotationCatalog& catalog, double alpha = 0.05);

}  // namespace ginet
