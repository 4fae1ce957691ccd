#include "ginet/annotate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

#include "ginet/error.hpp"
#include "ginet/numfmt.hpp"

namespace ginet {

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

__extension__ typedef unsigned __int128 u128;

u128 binomial_exact(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    u128 c = 1;
    for (std::size_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

// Above this population the exact binomials may overflow 128 bits.
constexpr std::size_t kExactPopulation = 120;

double to_double_ratio(u128 num, u128 den) {
    constexpr u128 exact_limit = u128{1} << 53;
    if (num <= exact_limit && den <= exact_limit) {
        return static_cast<double>(static_cast<std::uint64_t>(num)) /
               static_cast<double>(static_cast<std::uint64_t>(den));
    }
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

}  // namespace

std::string_view to_string(CatalogKind k) noexcept {
    switch (k) {
        case CatalogKind::GO_BP: return "GO_BP";
        case CatalogKind::KEGG: return "KEGG";
        case CatalogKind::Complex: return "complex";
    }
    return "?";
}

CatalogKind parse_catalog_kind(std::string_view s) {
    const auto u = upper(s);
    if (u == "GO_BP" || u == "GO" || u == "BP") return CatalogKind::GO_BP;
    if (u == "KEGG") return CatalogKind::KEGG;
    if (u == "COMPLEX" || u == "COMPLEXES") return CatalogKind::Complex;
    throw Error(ErrorCode::InvalidArgument, "unknown annotation kind '" + std::string(s) + "'");
}

std::size_t default_min_pairs(CatalogKind kind) noexcept { return kind == CatalogKind::GO_BP ? 500 : 10; }

void AnnotationCatalog::add(const std::string& gene, const std::string& category) {
    byCategory_[category].insert(gene);
    byGene_[gene].insert(category);
}

const std::set<std::string>& AnnotationCatalog::categories_of(const std::string& gene) const {
    static const std::set<std::string> none;
    auto it = byGene_.find(gene);
    return it == byGene_.end() ? none : it->second;
}

CatalogLoad load_annotations(std::istream& in, CatalogKind kind) {
    CatalogLoad load{AnnotationCatalog(kind), 0};
    std::string line;
    while (std::getline(in, line)) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto tab = t.find('\t');
        if (tab == std::string_view::npos || t.find('\t', tab + 1) != std::string_view::npos) {
            ++load.malformedLines;
            continue;
        }
        const auto gene = trim(t.substr(0, tab));
        const auto category = trim(t.substr(tab + 1));
        if (gene.empty() || category.empty()) {
            ++load.malformedLines;
            continue;
        }
        load.catalog.add(upper(gene), std::string(category));
    }
    return load;
}

void write_annotations(std::ostream& out, const AnnotationCatalog& catalog) {
    out << "# kind: " << to_string(catalog.kind()) << '\n';
    for (const auto& [gene, cats] : catalog.genes()) {
        for (const auto& c : cats) out << gene << '\t' << c << '\n';
    }
}

double CategorySegregation::miss_rate_m() const noexcept {
    const std::size_t d = nMJ + nMbarJ;
    return d == 0 ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(nMbarJ) / static_cast<double>(d);
}

double CategorySegregation::miss_rate_j() const noexcept {
    const std::size_t d = nMJ + nMJbar;
    return d == 0 ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(nMJbar) / static_cast<double>(d);
}

std::vector<CategorySegregation> segregation_table(std::span<const ScoredPair> pairs,
                                                   const AnnotationCatalog& catalog, std::size_t minPairs,
                                                   SizeFilter filter) {
    struct Tally {
        CategorySegregation pos, neg;
        std::size_t size = 0;
    };
    std::map<std::string, Tally> tallies;
    std::vector<std::string> shared;

    for (const auto& p : pairs) {
        if (p.self_pair() || p.quadrant == Quadrant::MbarJbar) continue;
        const auto& ca = catalog.categories_of(p.geneA);
        const auto& cb = catalog.categories_of(p.geneB);
        if (ca.empty() || cb.empty()) continue;
        shared.clear();
        std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(shared));

        for (const auto& cat : shared) {
            Tally& t = tallies[cat];
            if (filter == SizeFilter::EitherMeasure || p.quadrant == Quadrant::MJ) ++t.size;
            auto bucket = [&](Sign s) -> CategorySegregation& { return s == Sign::Positive ? t.pos : t.neg; };
            switch (p.quadrant) {
                case Quadrant::MJ:
                    if (p.signM == p.signJ) {
                        ++bucket(p.signJ).nMJ;
                    } else {
                        ++bucket(p.signJ).nMJ;
                        ++bucket(p.signM).nMJ;
                        ++bucket(p.signJ).nSignConflict;
                        ++bucket(p.signM).nSignConflict;
                    }
                    break;
                case Quadrant::MbarJ: ++bucket(p.signJ).nMbarJ; break;
                case Quadrant::MJbar: ++bucket(p.signM).nMJbar; break;
                case Quadrant::MbarJbar: break;
            }
        }
    }

    std::vector<CategorySegregation> rows;
    for (auto& [cat, t] : tallies) {
        if (t.size < minPairs) continue;
        t.pos.category = t.neg.category = cat;
        t.pos.sign = Sign::Positive;
        t.neg.sign = Sign::Negative;
        t.pos.sizeCount = t.neg.sizeCount = t.size;
        rows.push_back(t.pos);
        rows.push_back(t.neg);
    }
    return rows;
}

double hypergeometric_upper_tail(std::size_t population, std::size_t successes, std::size_t draws,
                                 std::size_t overlap) {
    if (successes > population || draws > population) {
        throw Error(ErrorCode::InvalidArgument, "hypergeometric parameters exceed the population");
    }
    const std::size_t lo = draws + successes > population ? draws + successes - population : 0;
    const std::size_t hi = std::min(successes, draws);
    if (overlap <= lo) return 1.0;
    if (overlap > hi) return 0.0;

    if (population <= kExactPopulation) {
        u128 num = 0;
        for (std::size_t k = overlap; k <= hi; ++k) {
            num += binomial_exact(successes, k) * binomial_exact(population - successes, draws - k);
        }
        return to_double_ratio(num, binomial_exact(population, draws));
    }

    std::vector<long double> logfact(population + 1, 0.0L);
    for (std::size_t i = 2; i <= population; ++i) logfact[i] = logfact[i - 1] + std::log(static_cast<long double>(i));
    auto logC = [&](std::size_t n, std::size_t k) { return logfact[n] - logfact[k] - logfact[n - k]; };
    const long double logTotal = logC(population, draws);
    long double tail = 0.0L;
    for (std::size_t k = overlap; k <= hi; ++k) {
        tail += std::exp(logC(successes, k) + logC(population - successes, draws - k) - logTotal);
    }
    return std::min(1.0, static_cast<double>(tail));
}

std::vector<double> holm_bonferroni(std::span<const double> pRaw) {
    const std::size_t m = pRaw.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pRaw[a] < pRaw[b]; });

    std::vector<double> adjusted(m);
    double running = 0.0;
    for (std::size_t rank = 0; rank < m; ++rank) {
        const double scaled = std::min(1.0, static_cast<double>(m - rank) * pRaw[order[rank]]);
        running = std::max(running, scaled);
        adjusted[order[rank]] = running;
    }
    return adjusted;
}

std::vector<EnrichmentRow> enrichment(const std::set<std::string>& selected, const std::set<std::string>& universe,
                                      const AnnotationCatalog& catalog, double alpha) {
    if (universe.empty()) throw Error(ErrorCode::InvalidArgument, "enrichment universe is empty");
    for (const auto& g : selected) {
        if (!universe.count(g)) {
            throw Error(ErrorCode::Containment, "selected gene '" + g + "' is not in the universe");
        }
    }

    std::vector<EnrichmentRow> rows;
    for (const auto& [cat, members] : catalog.categories()) {
        EnrichmentRow row;
        row.category = cat;
        for (const auto& g : members) {
            if (universe.count(g)) {
                ++row.categorySize;
                if (selected.count(g)) ++row.overlap;
            }
        }
        if (row.categorySize == 0) continue;
        row.pRaw = hypergeometric_upper_tail(universe.size(), row.categorySize, selected.size(), row.overlap);
        rows.push_back(std::move(row));
    }

    std::vector<double> raw;
    raw.reserve(rows.size());
    for (const auto& r : rows) raw.push_back(r.pRaw);
    const auto adj = holm_bonferroni(raw);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].pAdjusted = adj[i];
        rows[i].significant = adj[i] < alpha;
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const EnrichmentRow& a, const EnrichmentRow& b) { return a.pRaw < b.pRaw; });
    return rows;
}

}  // namespace ginet
