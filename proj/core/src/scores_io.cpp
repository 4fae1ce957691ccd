#include "ginet/scores_io.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "ginet/error.hpp"
#include "ginet/numfmt.hpp"

namespace ginet {

void write_scores_tsv(std::ostream& out, std::span<const ScoredPair> pairs) {
    out << "gene_a\tgene_b\tsmf_query\tsmf_array\tdmf\tp_value\tm\tlog_j\tquadrant\tsign_m\tsign_j\t"
           "pos_type_m\tpos_type_j\n";
    for (const auto& p : pairs) {
        out << p.geneA << '\t' << p.geneB << '\t' << format_number(p.f01) << '\t' << format_number(p.f10) << '\t'
            << format_number(p.f11) << '\t' << format_number(p.pValue) << '\t' << format_number(p.scores.m) << '\t'
            << format_number(p.scores.logJ) << '\t' << to_string(p.quadrant) << '\t' << to_string(p.signM) << '\t'
            << to_string(p.signJ) << '\t' << to_string(p.posTypeM) << '\t' << to_string(p.posTypeJ) << '\n';
    }
}

std::vector<ScoredPair> read_scored_pairs(std::istream& in, const Thresholds& th) {
    std::string line;
    std::size_t lineNo = 0;
    std::map<std::string, std::size_t> col;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!trim(line).empty()) break;
    }
    std::size_t idx = 0, start = 0;
    std::string_view header(line);
    while (true) {
        const auto tab = header.find('\t', start);
        col.emplace(std::string(trim(header.substr(start, tab == std::string_view::npos ? tab : tab - start))), idx++);
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    const char* required[] = {"gene_a", "gene_b", "smf_query", "smf_array", "dmf", "p_value"};
    std::size_t at[6];
    for (int i = 0; i < 6; ++i) {
        auto it = col.find(required[i]);
        if (it == col.end()) {
            throw Error(ErrorCode::Schema, std::string("scores input lacks column '") + required[i] + "'");
        }
        at[i] = it->second;
    }

    std::vector<ScoredPair> pairs;
    std::vector<std::string_view> fields;
    while (std::getline(in, line)) {
        ++lineNo;
        if (trim(line).empty()) continue;
        fields.clear();
        std::string_view sv(line);
        std::size_t s = 0;
        while (true) {
            const auto tab = sv.find('\t', s);
            fields.push_back(trim(sv.substr(s, tab == std::string_view::npos ? tab : tab - s)));
            if (tab == std::string_view::npos) break;
            s = tab + 1;
        }
        auto bad = [&](const std::string& why) {
            return Error(ErrorCode::Schema, "line " + std::to_string(lineNo) + ": " + why);
        };
        for (auto i : at) {
            if (i >= fields.size()) throw bad("too few fields");
        }
        double v[4];
        for (int k = 0; k < 4; ++k) {
            const auto parsed = parse_number(fields[at[2 + k]]);
            if (!parsed || !std::isfinite(*parsed)) throw bad("non-numeric value '" + std::string(fields[at[2 + k]]) + "'");
            v[k] = *parsed;
        }
        if (fields[at[0]].empty() || fields[at[1]].empty()) throw bad("empty gene name");
        pairs.push_back(score_pair(std::string(fields[at[0]]), std::string(fields[at[1]]), v[0], v[1], v[2], v[3], th));
    }
    return pairs;
}

std::vector<ScoredPair> score_records(std::span<const StrainPairRecord> records, const Thresholds& th) {
    std::vector<ScoredPair> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        out.push_back(score_pair(r.queryGene, r.arrayGene, r.smfQuery, r.smfArray, r.dmf, r.pValue, th));
    }
    return out;
}

}  // namespace ginet
