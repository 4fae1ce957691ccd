#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "ginet/ingest.hpp"
#include "ginet/measures.hpp"

namespace ginet {

// Scores TSV: gene_a, gene_b, smf_query, smf_array, dmf, p_value, m, log_j,
// quadrant, sign_m, sign_j, pos_type_m, pos_type_j.
void write_scores_tsv(std::ostream& out, std::span<const ScoredPair> pairs);

// Reads a scores TSV or a canonical pairs TSV (the first six columns are
// enough) and classifies every row under `th`. Scores are recomputed from the
// fitness columns so that reclassification never depends on rounded score
// text. Throws Error(Schema) for missing columns or unparsable rows, with the
// line number in the message.
std::vector<ScoredPair> read_scored_pairs(std::istream& in, const Thresholds& th);

std::vector<ScoredPair> score_records(std::span<const StrainPairRecord> records, const Thresholds& th);

}  // namespace ginet
