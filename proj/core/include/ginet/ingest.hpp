#pragma once
// Streaming reader for SGA-style tab-separated fitness files (the published
// SGA_ExE / SGA_NxN layout: header row, no quoting, one strain pair per row).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ginet {

struct StrainPairRecord {
    std::string queryStrain;
    std::string arrayStrain;
    std::string queryGene;
    std::string arrayGene;
    double smfQuery = 0.0;  // f01
    double smfArray = 0.0;  // f10
    double dmf = 0.0;       // f11
    double pValue = 1.0;

    bool self_pair() const noexcept { return queryGene == arrayGene; }
    bool operator==(const StrainPairRecord&) const = default;
};

struct SgaColumnMap {
    std::size_t queryStrain = 0;
    std::size_t arrayStrain = 1;
    std::size_t smfQuery = 2;
    std::size_t smfArray = 3;
    std::size_t dmf = 4;
    std::size_t pValue = 5;

    // Throws Error(Schema) if two roles share a column.
    void validate() const;
    std::size_t max_index() const noexcept;
};

// Resolves the column map from a header row: exact name match first, then a
// case-insensitive substring match. Throws Error(Schema) naming any missing
// column.
SgaColumnMap resolve_columns(std::span<const std::string_view> header);

struct IngestReport {
    std::uint64_t rowsRead = 0;
    std::uint64_t rowsKept = 0;
    std::uint64_t rowsDroppedNaN = 0;
    std::uint64_t rowsDroppedNegative = 0;
    std::uint64_t rowsDroppedMalformed = 0;

    std::uint64_t dropped() const noexcept {
        return rowsDroppedNaN + rowsDroppedNegative + rowsDroppedMalformed;
    }
};

struct SgaReaderOptions {
    std::optional<SgaColumnMap> columns;
    // Defaults to "a header is present unless a column map was supplied".
    std::optional<bool> header;
};

class SgaReader {
public:
    explicit SgaReader(std::istream& in, SgaReaderOptions options = {});

    // Next kept record in file order; false at end of input.
    bool next(StrainPairRecord& out);

    const IngestReport& report() const noexcept { return report_; }
    const SgaColumnMap& columns() const noexcept { return columns_; }
    std::uint64_t line_number() const noexcept { return line_; }

private:
    std::istream& in_;
    SgaColumnMap columns_;
    IngestReport report_;
    std::string line_buf_;
    std::vector<std::string_view> fields_;
    std::uint64_t line_ = 0;
};

struct ParsedSga {
    std::vector<StrainPairRecord> records;
    IngestReport report;
};

ParsedSga parse_sga(std::istream& in, SgaReaderOptions options = {});

// Systematic gene name from a strain id: text before the first underscore,
// uppercased. Throws Error(InvalidIdentifier) on an empty id.
std::string extract_gene(std::string_view strainId);

// Collapses allele pairs to one record per unordered gene pair: minimum
// p-value, then smaller |m|, then lexicographic (query, array) strain ids.
// Output is sorted by the (sorted) gene-pair key.
std::vector<StrainPairRecord> aggregate_gene_pairs(std::span<const StrainPairRecord> records);

// Canonical TSV: gene_a, gene_b, smf_query, smf_array, dmf, p_value.
void write_canonical_tsv(std::ostream& out, std::span<const StrainPairRecord> records);

}  // namespace ginet
