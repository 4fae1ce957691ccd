#include "ginet/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <tuple>

#include "ginet/error.hpp"
#include "ginet/measures.hpp"
#include "ginet/numfmt.hpp"

namespace ginet {

namespace {

struct ColumnRole {
    const char* role;
    std::size_t SgaColumnMap::*slot;
    std::array<const char*, 2> exact;
    std::array<const char*, 3> needles;
};

// Exact labels are the published ones; needles catch the variants seen across
// releases ("Query Strain ID" vs "Query strain", "P-value" vs "pvalue").
const std::array<ColumnRole, 6> kRoles{{
    {"query strain id", &SgaColumnMap::queryStrain, {"Query Strain ID", "Query strain ID"},
     {"query strain", "query id", "query orf"}},
    {"array strain id", &SgaColumnMap::arrayStrain, {"Array Strain ID", "Array strain ID"},
     {"array strain", "array id", "array orf"}},
    {"query single mutant fitness", &SgaColumnMap::smfQuery,
     {"Query single mutant fitness (SMF)", "Query SMF"},
     {"query single mutant fitness", "query smf", "query fitness"}},
    {"array single mutant fitness", &SgaColumnMap::smfArray, {"Array SMF", "Array single mutant fitness (SMF)"},
     {"array smf", "array single mutant fitness", "array fitness"}},
    {"double mutant fitness", &SgaColumnMap::dmf, {"Double mutant fitness", "Double Mutant Fitness"},
     {"double mutant fitness", "dmf", "double mutant"}},
    {"p-value", &SgaColumnMap::pValue, {"P-value", "p-value"}, {"p-value", "pvalue", "p value"}},
}};

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

void split_tabs(std::string_view line, std::vector<std::string_view>& fields) {
    fields.clear();
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

bool read_line(std::istream& in, std::string& buf) {
    if (!std::getline(in, buf)) return false;
    if (!buf.empty() && buf.back() == '\r') buf.pop_back();
    return true;
}

bool blank(std::string_view s) { return trim(s).empty(); }

}  // namespace

void SgaColumnMap::validate() const {
    std::array<std::size_t, 6> idx{queryStrain, arrayStrain, smfQuery, smfArray, dmf, pValue};
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
        throw Error(ErrorCode::Schema, "column map assigns two roles to the same column");
    }
}

std::size_t SgaColumnMap::max_index() const noexcept {
    return std::max({queryStrain, arrayStrain, smfQuery, smfArray, dmf, pValue});
}

SgaColumnMap resolve_columns(std::span<const std::string_view> header) {
    SgaColumnMap map;
    std::vector<bool> taken(header.size(), false);
    std::string missing;

    std::vector<std::string> lowered;
    lowered.reserve(header.size());
    for (auto h : header) lowered.push_back(lower(trim(h)));

    // Exact pass for every role first, so a substring fallback never steals a
    // column that another role names exactly.
    std::array<std::optional<std::size_t>, kRoles.size()> found;
    for (std::size_t r = 0; r < kRoles.size(); ++r) {
        for (std::size_t i = 0; i < header.size() && !found[r]; ++i) {
            for (const char* name : kRoles[r].exact) {
                if (!taken[i] && trim(header[i]) == name) {
                    found[r] = i;
                    taken[i] = true;
                    break;
                }
            }
        }
    }
    for (std::size_t r = 0; r < kRoles.size(); ++r) {
        for (const char* needle : kRoles[r].needles) {
            if (found[r]) break;
            for (std::size_t i = 0; i < header.size(); ++i) {
                if (!taken[i] && lowered[i].find(needle) != std::string::npos &&
                    lowered[i].find("standard deviation") == std::string::npos) {
                    found[r] = i;
                    taken[i] = true;
                    break;
                }
            }
        }
        if (found[r]) {
            map.*(kRoles[r].slot) = *found[r];
        } else {
            if (!missing.empty()) missing += ", ";
            missing += kRoles[r].role;
        }
    }
    if (!missing.empty()) throw Error(ErrorCode::Schema, "missing required column(s): " + missing);
    return map;
}

SgaReader::SgaReader(std::istream& in, SgaReaderOptions options) : in_(in) {
    const bool header = options.header.value_or(!options.columns.has_value());
    if (header) {
        while (read_line(in_, line_buf_)) {
            ++line_;
            if (!blank(line_buf_)) break;
        }
        if (blank(line_buf_)) {
            if (!options.columns) throw Error(ErrorCode::Schema, "input has no header row");
        } else {
            split_tabs(line_buf_, fields_);
            if (!options.columns) columns_ = resolve_columns(fields_);
        }
    }
    if (options.columns) columns_ = *options.columns;
    columns_.validate();
}

bool SgaReader::next(StrainPairRecord& out) {
    const std::size_t needed = columns_.max_index() + 1;
    while (read_line(in_, line_buf_)) {
        ++line_;
        if (blank(line_buf_)) continue;
        ++report_.rowsRead;

        split_tabs(line_buf_, fields_);
        if (fields_.size() < needed) {
            ++report_.rowsDroppedMalformed;
            continue;
        }
        const auto query = trim(fields_[columns_.queryStrain]);
        const auto array = trim(fields_[columns_.arrayStrain]);
        if (query.empty() || array.empty() || query.front() == '_' || array.front() == '_') {
            ++report_.rowsDroppedMalformed;
            continue;
        }

        const auto f01 = parse_number(fields_[columns_.smfQuery]);
        const auto f10 = parse_number(fields_[columns_.smfArray]);
        const auto f11 = parse_number(fields_[columns_.dmf]);
        const auto p = parse_number(fields_[columns_.pValue]);
        auto finite = [](const std::optional<double>& v) { return v && std::isfinite(*v); };
        if (!finite(f01) || !finite(f10) || !finite(f11) || !finite(p)) {
            ++report_.rowsDroppedNaN;
            continue;
        }
        if (*f01 < 0.0 || *f10 < 0.0 || *f11 < 0.0) {
            ++report_.rowsDroppedNegative;
            continue;
        }
        if (*p < 0.0 || *p > 1.0) {
            ++report_.rowsDroppedMalformed;
            continue;
        }

        out.queryStrain.assign(query);
        out.arrayStrain.assign(array);
        out.queryGene = extract_gene(query);
        out.arrayGene = extract_gene(array);
        out.smfQuery = *f01;
        out.smfArray = *f10;
        out.dmf = *f11;
        out.pValue = *p;
        ++report_.rowsKept;
        return true;
    }
    return false;
}

ParsedSga parse_sga(std::istream& in, SgaReaderOptions options) {
    SgaReader reader(in, std::move(options));
    ParsedSga parsed;
    StrainPairRecord rec;
    while (reader.next(rec)) parsed.records.push_back(rec);
    parsed.report = reader.report();
    return parsed;
}

std::string extract_gene(std::string_view strainId) {
    strainId = trim(strainId);
    const auto gene = strainId.substr(0, strainId.find('_'));
    if (gene.empty()) {
        throw Error(ErrorCode::InvalidIdentifier, "empty gene name in strain id '" + std::string(strainId) + "'");
    }
    std::string out(gene);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::vector<StrainPairRecord> aggregate_gene_pairs(std::span<const StrainPairRecord> records) {
    using Key = std::pair<std::string, std::string>;
    auto better = [](const StrainPairRecord& a, const StrainPairRecord& b) {
        if (a.pValue != b.pValue) return a.pValue < b.pValue;
        const double ma = std::abs(m_score(a.smfQuery, a.smfArray, a.dmf));
        const double mb = std::abs(m_score(b.smfQuery, b.smfArray, b.dmf));
        if (ma != mb) return ma < mb;
        return std::tie(a.queryStrain, a.arrayStrain) < std::tie(b.queryStrain, b.arrayStrain);
    };

    std::map<Key, const StrainPairRecord*> best;
    for (const auto& r : records) {
        Key key = r.queryGene <= r.arrayGene ? Key{r.queryGene, r.arrayGene} : Key{r.arrayGene, r.queryGene};
        auto [it, inserted] = best.try_emplace(std::move(key), &r);
        if (!inserted && better(r, *it->second)) it->second = &r;
    }

    std::vector<StrainPairRecord> out;
    out.reserve(best.size());
    for (const auto& [key, rec] : best) out.push_back(*rec);
    return out;
}

void write_canonical_tsv(std::ostream& out, std::span<const StrainPairRecord> records) {
    out << "gene_a\tgene_b\tsmf_query\tsmf_array\tdmf\tp_value\n";
    for (const auto& r : records) {
        out << r.queryGene << '\t' << r.arrayGene << '\t' << format_number(r.smfQuery) << '\t'
            << format_number(r.smfArray) << '\t' << format_number(r.dmf) << '\t' << format_number(r.pValue)
            << '\n';
    }
}

}  // namespace ginet
