#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "ginet/annotate.hpp"
#include "ginet/error.hpp"
#include "ginet/ingest.hpp"
#include "ginet/model_io.hpp"
#include "ginet/netanalysis.hpp"
#include "ginet/numfmt.hpp"
#include "ginet/probmodel.hpp"
#include "ginet/scores_io.hpp"
#include "ginet/simgen.hpp"

namespace ginet::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

// Output tables

using Cell = std::variant<std::string, double, std::int64_t>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

ojson number(double v) {
    if (std::isnan(v)) return nullptr;
    return *parse_number(format_number(v));
}

template <typename T>
std::int64_t count(T v) {
    return static_cast<std::int64_t>(v);
}

void write_table(std::ostream& out, const Table& t, Format format) {
    if (format == Format::Tsv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "\t" : "") << t.columns[i];
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << '\t';
                std::visit(
                    [&](const auto& v) {
                        using V = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<V, double>) {
                            out << format_number(v);
                        } else {
                            out << v;
                        }
                    },
                    row[i]);
            }
            out << '\n';
        }
        return;
    }
    ojson arr = ojson::array();
    for (const auto& row : t.rows) {
        ojson obj = ojson::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, double>) {
                        obj[t.columns[i]] = number(v);
                    } else {
                        obj[t.columns[i]] = v;
                    }
                },
                row[i]);
        }
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
}

const char* extension(Format f) { return f == Format::Tsv ? ".tsv" : ".json"; }

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    return out;
}

fs::path emit(const RunConfig& c, const std::string& stem, const Table& t) {
    fs::create_directories(c.outDir);
    const fs::path path = c.outDir / (stem + extension(c.format));
    auto out = open_output(path);
    write_table(out, t, c.format);
    return path;
}

fs::path emit_json(const RunConfig& c, const std::string& name, const ojson& doc) {
    fs::create_directories(c.outDir);
    const fs::path path = c.outDir / name;
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
    return path;
}

// Inputs

std::ifstream open_input(const fs::path& path, const char* what) {
    if (path.empty()) throw ConfigError(std::string("missing --") + what);
    if (!fs::exists(path)) throw Error(ErrorCode::Io, std::string(what) + " not found: " + path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return in;
}

std::string slurp(const fs::path& path, const char* what) {
    auto in = open_input(path, what);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ojson report_json(const IngestReport& r) {
    ojson j;
    j["rowsRead"] = r.rowsRead;
    j["rowsKept"] = r.rowsKept;
    j["rowsDroppedNaN"] = r.rowsDroppedNaN;
    j["rowsDroppedNegative"] = r.rowsDroppedNegative;
    j["rowsDroppedMalformed"] = r.rowsDroppedMalformed;
    return j;
}

struct LoadedRecords {
    std::vector<StrainPairRecord> records;
    IngestReport report;
};

LoadedRecords load_records(const RunConfig& c) {
    auto in = open_input(c.input, "input");
    try {
        auto parsed = parse_sga(in);
        LoadedRecords out{std::move(parsed.records), parsed.report};
        if (c.aggregate) out.records = aggregate_gene_pairs(out.records);
        return out;
    } catch (const Error& e) {
        throw Error(e.code(), c.input.string() + ": " + e.what());
    }
}

bool is_pairs_file(const fs::path& path) {
    std::ifstream in(path);
    std::string header;
    while (std::getline(in, header) && trim(header).empty()) {}
    std::istringstream ss(header);
    std::string first;
    std::getline(ss, first, '\t');
    return trim(first) == "gene_a";
}

struct LoadedPairs {
    std::vector<ScoredPair> pairs;
    std::optional<IngestReport> report;
};

// Accepts a scores/canonical pairs TSV or a raw SGA file.
LoadedPairs load_pairs(const RunConfig& c) {
    open_input(c.input, "input");
    if (is_pairs_file(c.input)) {
        auto in = open_input(c.input, "input");
        try {
            return {read_scored_pairs(in, c.thresholds), std::nullopt};
        } catch (const Error& e) {
            throw Error(e.code(), c.input.string() + ": " + e.what());
        }
    }
    auto loaded = load_records(c);
    return {score_records(loaded.records, c.thresholds), loaded.report};
}

std::vector<std::string> read_gene_list(const fs::path& path, const char* what) {
    auto in = open_input(path, what);
    std::vector<std::string> genes;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        t = t.substr(0, t.find('\t'));
        std::string g(trim(t));
        for (char& ch : g) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        genes.push_back(std::move(g));
    }
    return genes;
}

ojson thresholds_json(const Thresholds& th) {
    ojson j;
    j["mThreshold"] = number(th.mThresh);
    j["jThreshold"] = number(th.jThresh);
    j["pMax"] = number(th.pMax);
    return j;
}

double fraction(std::size_t num, std::size_t den) {
    return den == 0 ? std::nan("") : static_cast<double>(num) / static_cast<double>(den);
}

ojson score_summary(std::span<const ScoredPair> pairs, const Thresholds& th) {
    std::size_t q[4] = {0, 0, 0, 0};
    std::size_t mPos = 0, mNeg = 0, jPos = 0, jNeg = 0, newPosJ = 0, newNegJ = 0;
    std::map<std::string, std::size_t> typeM, typeJ;
    for (const auto& p : pairs) {
        ++q[static_cast<int>(p.quadrant)];
        mPos += p.signM == Sign::Positive;
        mNeg += p.signM == Sign::Negative;
        jPos += p.signJ == Sign::Positive;
        jNeg += p.signJ == Sign::Negative;
        if (p.quadrant == Quadrant::MbarJ) {
            newPosJ += p.signJ == Sign::Positive;
            newNegJ += p.signJ == Sign::Negative;
        }
        if (p.posTypeM != PositiveType::NotApplicable) ++typeM[std::string(to_string(p.posTypeM))];
        if (p.posTypeJ != PositiveType::NotApplicable) ++typeJ[std::string(to_string(p.posTypeJ))];
    }
    const std::size_t mj = q[0], mbarj = q[1], mjbar = q[2];

    ojson j;
    j["pairs"] = pairs.size();
    j["thresholds"] = thresholds_json(th);
    j["quadrants"] = {{"MJ", mj}, {"MbarJ", mbarj}, {"MJbar", mjbar}, {"MbarJbar", q[3]}};
    j["signs"] = {{"M", {{"positive", mPos}, {"negative", mNeg}}}, {"J", {{"positive", jPos}, {"negative", jNeg}}}};
    j["newByJ"] = {{"positive", newPosJ}, {"negative", newNegJ}};
    j["positiveTypes"] = {
        {"M", {{"masking", typeM["masking"]}, {"suppressor", typeM["suppressor"]}}},
        {"J", {{"masking", typeJ["masking"]}, {"suppressor", typeJ["suppressor"]}}},
    };
    j["discordance"] = number(fraction(mbarj + mjbar, mbarj + mjbar + mj));
    j["missedByM"] = number(fraction(mbarj, mbarj + mj));
    j["missedByJ"] = number(fraction(mjbar, mjbar + mj));
    return j;
}

Table scores_table(std::span<const ScoredPair> pairs) {
    Table t;
    t.columns = {"gene_a", "gene_b", "smf_query", "smf_array", "dmf", "p_value", "m", "log_j",
                 "quadrant", "sign_m", "sign_j", "pos_type_m", "pos_type_j"};
    for (const auto& p : pairs) {
        t.rows.push_back({p.geneA, p.geneB, p.f01, p.f10, p.f11, p.pValue, p.scores.m, p.scores.logJ,
                          std::string(to_string(p.quadrant)), std::string(to_string(p.signM)),
                          std::string(to_string(p.signJ)), std::string(to_string(p.posTypeM)),
                          std::string(to_string(p.posTypeJ))});
    }
    return t;
}

Table hubs_table(const std::vector<HubCall>& calls, const char* lhsName, const char* rhsName) {
    Table t;
    t.columns = {"gene", "nMbarJ", "nMJbar", "nMJ", "m_total", "j_total", lhsName, rhsName};
    for (const auto& h : calls) {
        const auto& c = h.counts;
        t.rows.push_back({c.gene, count(c.nMbarJ), count(c.nMJbar), count(c.nMJ), count(c.m_total()),
                          count(c.j_total()), h.lhs, h.rhs});
    }
    return t;
}

void print(std::ostream& out, const ojson& j) { out << j.dump(2) << '\n'; }

}  // namespace

void RunConfig::validate() const {
    try {
        thresholds.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (workers == 0) throw ConfigError("--workers must be at least 1");
    if (!(exclusiveRatio > 0.0 && exclusiveRatio < 1.0)) throw ConfigError("--exclusive-ratio must lie in (0, 1)");
    if (!(sharedMaxDiscord > 0.0 && sharedMaxDiscord < 1.0)) throw ConfigError("--shared-max-discord must lie in (0, 1)");
    if (sharedMinCommon < 1) throw ConfigError("--shared-min-common must be at least 1");
    if (!(pccThreshold >= -1.0 && pccThreshold <= 1.0)) throw ConfigError("--pcc-threshold must lie in [-1, 1]");
    if (measure != "M" && measure != "J" && measure != "both") throw ConfigError("--measure must be M, J or both");
    if (sizeFilter != "both" && sizeFilter != "either") throw ConfigError("--size-filter must be both or either");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("--alpha must lie in (0, 1]");
    if (!(tolerance >= 0.0)) throw ConfigError("--tol must be non-negative");
    if (samples == 0) throw ConfigError("--n must be at least 1");
    try {
        parse_catalog_kind(kind);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

int cmd_ingest(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto loaded = load_records(c);
    Table t;
    t.columns = {"gene_a", "gene_b", "smf_query", "smf_array", "dmf", "p_value"};
    for (const auto& r : loaded.records) {
        t.rows.push_back({r.queryGene, r.arrayGene, r.smfQuery, r.smfArray, r.dmf, r.pValue});
    }
    emit(c, "pairs", t);
    ojson summary;
    summary["ingest"] = report_json(loaded.report);
    summary["aggregated"] = c.aggregate;
    summary["records"] = loaded.records.size();
    emit_json(c, "ingest_report.json", summary);
    print(out, summary);
    if (loaded.records.empty()) err << "warning: no records survived filtering\n";
    return kSuccess;
}

int cmd_score(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto loaded = load_pairs(c);
    emit(c, "scores", scores_table(loaded.pairs));
    ojson summary;
    if (loaded.report) summary["ingest"] = report_json(*loaded.report);
    summary["aggregated"] = c.aggregate;
    summary.update(score_summary(loaded.pairs, c.thresholds));
    emit_json(c, "score_summary.json", summary);
    print(out, summary);
    if (loaded.pairs.empty()) err << "warning: no records survived filtering\n";
    return kSuccess;
}

int cmd_calibrate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto loaded = load_pairs(c);
    const auto cal = calibrate_j_threshold(loaded.pairs, c.thresholds);
    ojson j;
    j["tau"] = number(cal.tau);
    j["mCount"] = cal.mCount;
    j["jCount"] = cal.jCount;
    j["exactMatch"] = cal.exactMatch;
    j["tieAtBoundary"] = cal.tieAtBoundary;
    j["thresholds"] = thresholds_json(c.thresholds);
    emit_json(c, "calibration.json", j);
    print(out, j);
    if (cal.tieAtBoundary) err << "warning: |log J| ties at the calibration boundary; J count below M count\n";
    return kSuccess;
}

int cmd_hubs(const RunConfig& c, std::ostream& out, std::ostream&) {
    const auto loaded = load_pairs(c);
    const auto counts = quadrant_counts(loaded.pairs);
    const auto exclusive = exclusive_hubs(counts, c.exclusiveRatio);
    const auto shared = shared_hubs(counts, c.sharedMinCommon, c.sharedMaxDiscord);
    const auto symmetric = symmetric_exclusive_hubs(counts, c.symmetricMinExclusive, c.exclusiveRatio);

    emit(c, "exclusive_hubs", hubs_table(exclusive, "mj_plus_mjbar", "ratio_times_mbarj"));
    emit(c, "shared_hubs", hubs_table(shared, "discordant", "ratio_times_mj"));
    emit(c, "symmetric_hubs", hubs_table(symmetric, "mj_plus_mbarj", "ratio_times_mjbar"));

    Table degree;
    degree.columns = {"gene", "degree_m", "degree_j"};
    for (const auto& d : degree_table(loaded.pairs)) {
        degree.rows.push_back({d.gene, count(d.degreeM), count(d.degreeJ)});
    }
    emit(c, "degree", degree);

    std::set<std::string> hubSet;
    if (!c.connectorHubs.empty()) {
        for (auto g : c.connectorHubs) {
            for (char& ch : g) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
            hubSet.insert(g);
        }
    } else {
        for (const auto& h : exclusive) hubSet.insert(h.counts.gene);
    }
    Table connectors;
    connectors.columns = {"gene", "measure"};
    std::size_t nConnM = 0, nConnJ = 0;
    if (!hubSet.empty()) {
        for (Measure m : {Measure::M, Measure::J}) {
            const auto conn = intermediary_connectors(hubSet, loaded.pairs, m);
            (m == Measure::M ? nConnM : nConnJ) = conn.size();
            for (const auto& g : conn) connectors.rows.push_back({g, std::string(to_string(m))});
        }
    }
    emit(c, "connectors", connectors);

    ojson j;
    j["genes"] = counts.size();
    j["exclusiveHubs"] = exclusive.size();
    j["sharedHubs"] = shared.size();
    j["symmetricHubs"] = symmetric.size();
    j["connectorHubs"] = hubSet;
    j["connectors"] = {{"M", nConnM}, {"J", nConnJ}};
    emit_json(c, "hubs_summary.json", j);
    print(out, j);
    return kSuccess;
}

int cmd_similarity(const RunConfig& c, std::ostream& out, std::ostream&) {
    const auto loaded = load_pairs(c);
    SimilarityOptions opt{c.pccThreshold, c.significantOnly, c.workers};
    ojson j;
    j["pccThreshold"] = number(c.pccThreshold);
    j["profiles"] = c.significantOnly ? "significant" : "raw";
    Table t;
    if (c.measure == "both") {
        const auto res = dual_similarity(loaded.pairs, opt);
        t.columns = {"gene_a", "gene_b", "pcc_m", "pcc_j"};
        for (const auto& p : res.pairs) t.rows.push_back({p.geneA, p.geneB, p.pccM, p.pccJ});
        j["aboveM"] = res.aboveM;
        j["aboveJ"] = res.aboveJ;
        j["aboveBoth"] = res.aboveBoth;
        j["missedByJ"] = number(fraction(res.aboveM - res.aboveBoth, res.aboveM));
        j["missedByM"] = number(fraction(res.aboveJ - res.aboveBoth, res.aboveJ));
    } else {
        const Measure m = parse_measure(c.measure);
        const auto res = similarity_pairs(loaded.pairs, m, opt);
        t.columns = {"gene_a", "gene_b", m == Measure::M ? "pcc_m" : "pcc_j"};
        for (const auto& p : res.pairs) t.rows.push_back({p.geneA, p.geneB, p.pcc});
        j["measure"] = c.measure;
        j["above"] = res.pairs.size();
        j["tested"] = res.tested;
        j["undefined"] = res.skipped;
    }
    emit(c, "similarity", t);
    emit_json(c, "similarity_summary.json", j);
    print(out, j);
    return kSuccess;
}

int cmd_annotate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto loaded = load_pairs(c);
    const CatalogKind kind = parse_catalog_kind(c.kind);
    auto in = open_input(c.annotations, "annotations");
    const auto cat = load_annotations(in, kind);
    if (cat.catalog.empty()) err << "warning: annotation catalog is empty\n";
    if (cat.malformedLines) err << "warning: skipped " << cat.malformedLines << " malformed annotation line(s)\n";

    const std::size_t minPairs = c.minPairs.value_or(default_min_pairs(kind));
    const auto filter = c.sizeFilter == "either" ? SizeFilter::EitherMeasure : SizeFilter::BothMeasures;
    const auto rows = segregation_table(loaded.pairs, cat.catalog, minPairs, filter);

    Table t;
    t.columns = {"category", "sign", "nMJ", "nMbarJ", "nMJbar", "miss_rate_m", "miss_rate_j", "sign_conflicts",
                 "size_count"};
    for (const auto& r : rows) {
        t.rows.push_back({r.category, std::string(to_string(r.sign)), count(r.nMJ), count(r.nMbarJ),
                          count(r.nMJbar), r.miss_rate_m(), r.miss_rate_j(), count(r.nSignConflict),
                          count(r.sizeCount)});
    }
    emit(c, "segregation", t);

    ojson j;
    j["kind"] = std::string(to_string(kind));
    j["minPairs"] = minPairs;
    j["sizeFilter"] = c.sizeFilter;
    j["categoriesInCatalog"] = cat.catalog.categories().size();
    j["categoriesReported"] = rows.size() / 2;
    j["malformedLines"] = cat.malformedLines;
    emit_json(c, "segregation_summary.json", j);
    print(out, j);
    return kSuccess;
}

int cmd_enrich(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const CatalogKind kind = parse_catalog_kind(c.kind);
    auto in = open_input(c.annotations, "annotations");
    const auto cat = load_annotations(in, kind);
    if (cat.catalog.empty()) err << "warning: annotation catalog is empty\n";

    const auto sel = read_gene_list(c.selected, "selected");
    std::set<std::string> selected(sel.begin(), sel.end());
    std::set<std::string> universe;
    if (!c.universe.empty()) {
        const auto u = read_gene_list(c.universe, "universe");
        universe.insert(u.begin(), u.end());
    } else {
        for (const auto& p : load_pairs(c).pairs) {
            universe.insert(p.geneA);
            universe.insert(p.geneB);
        }
    }
    const auto rows = enrichment(selected, universe, cat.catalog, c.alpha);

    Table t;
    t.columns = {"category", "overlap", "category_size", "p_raw", "p_adjusted", "significant"};
    std::size_t nsig = 0;
    for (const auto& r : rows) {
        nsig += r.significant;
        t.rows.push_back({r.category, count(r.overlap), count(r.categorySize), r.pRaw, r.pAdjusted,
                          std::string(r.significant ? "true" : "false")});
    }
    emit(c, "enrichment", t);

    ojson j;
    j["selected"] = selected.size();
    j["universe"] = universe.size();
    j["tested"] = rows.size();
    j["significant"] = nsig;
    j["alpha"] = number(c.alpha);
    j["correction"] = "holm-bonferroni";
    emit_json(c, "enrichment_summary.json", j);
    print(out, j);
    return kSuccess;
}

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream&) {
    const auto spec = parse_model_spec(slurp(c.model, "model"));
    const auto batch = sample_population(spec.model, spec.perturbation, c.samples, c.seed, c.workers);
    if (c.writeSamples) {
        fs::create_directories(c.outDir);
        auto f = open_output(c.outDir / "samples.tsv");
        write_samples_tsv(f, batch);
    }
    const auto report = oracle_report(spec.model, spec.perturbation, batch);

    ojson j;
    j["seed"] = report.seed;
    j["n"] = report.n;
    j["modelDigest"] = report.modelDigest;
    j["generator"] = "mt19937_64/splitmix64-blocks";
    ojson cells = ojson::array();
    for (const auto& cell : report.cells) {
        ojson o;
        o["levelA"] = report.levelsA.name(cell.a);
        o["levelB"] = report.levelsB.name(cell.b);
        o["empiricalLogJ"] = number(cell.empiricalLogJ);
        o["standardError"] = number(cell.standardError);
        o["analyticLogJ"] = number(cell.analyticLogJ);
        o["zScore"] = number(cell.zScore);
        cells.push_back(std::move(o));
    }
    j["logJ"] = std::move(cells);
    ojson table = ojson::array();
    const auto& e = report.empirical;
    for (std::size_t a = 0; a < report.levelsA.size(); ++a) {
        for (std::size_t b = 0; b < report.levelsB.size(); ++b) {
            ojson o;
            o["levelA"] = report.levelsA.name(a);
            o["levelB"] = report.levelsB.name(b);
            o["count"] = static_cast<std::int64_t>(e.pairCounts(a, b));
            o["effects"] = static_cast<std::int64_t>(e.effectCounts(a, b));
            o["survival"] = number(e.table.survival(a, b));
            o["standardError"] = number(e.standardError(a, b));
            table.push_back(std::move(o));
        }
    }
    j["empiricalTable"] = std::move(table);
    j["empiricalNeutralityDeviation"] = number(report.empiricalNeutralityDeviation);
    j["analyticNeutralityDeviation"] = number(report.analyticNeutralityDeviation);
    emit_json(c, "oracle_report.json", j);
    print(out, j);
    return kSuccess;
}

int cmd_neutrality(const RunConfig& c, std::ostream& out, std::ostream&) {
    const auto doc = parse_spec_document(slurp(c.model, "model"));
    ObservableTable table;
    if (const auto* spec = std::get_if<ModelSpec>(&doc)) {
        table = perturbed_observables(spec->model, spec->perturbation);
    } else {
        table = std::get<ObservableTable>(doc);
    }
    if (!table.jointFactorDist) throw Error(ErrorCode::MissingDistribution, "neutrality needs jointFactorDist");

    const auto check = is_neutral(table, c.tolerance);
    const auto dec = loglinear_decompose(table);

    Table t;
    t.columns = {"level_a", "level_b", "survival", "neutral_prediction", "deviation", "log_j"};
    for (std::size_t a = 0; a < table.levelsA.size(); ++a) {
        for (std::size_t b = 0; b < table.levelsB.size(); ++b) {
            const double n = neutrality(table, a, b);
            t.rows.push_back({table.levelsA.name(a), table.levelsB.name(b), table.survival(a, b), n,
                              std::abs(table.survival(a, b) - n), dec.delta(a, b)});
        }
    }
    emit(c, "neutrality", t);

    ojson j;
    j["neutral"] = check.neutral;
    // Deviations near 1e-16 are the quantity of interest; keep full precision.
    j["maxDeviation"] = check.maxDeviation;
    j["tolerance"] = c.tolerance;
    j["worst"] = {{"levelA", table.levelsA.name(check.worstA)}, {"levelB", table.levelsB.name(check.worstB)}};
    j["mu"] = number(dec.mu);
    emit_json(c, "neutrality.json", j);
    print(out, j);
    return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"ginet: genetic-interaction scoring with the M and J measures", "ginet"};
    app.require_subcommand(1);

    std::string format = "tsv";
    bool noAggregate = false;
    app.add_option("--input,-i", c.input, "Input file (SGA TSV, pairs TSV or scores TSV)");
    app.add_option("--out-dir,-o", c.outDir, "Output directory")->capture_default_str();
    app.add_option("--m-threshold", c.thresholds.mThresh, "|M| threshold")->capture_default_str();
    app.add_option("--j-threshold", c.thresholds.jThresh, "|log J| threshold")->capture_default_str();
    app.add_option("--p-max", c.thresholds.pMax, "p-value cutoff")->capture_default_str();
    app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
    app.add_option("--workers", c.workers, "Worker threads")->capture_default_str();
    app.add_flag("--no-aggregate", noAggregate, "Keep strain-pair granularity");
    app.add_option("--format", format, "Table output format")->check(CLI::IsMember({"tsv", "json"}));

    auto* ingest = app.add_subcommand("ingest", "Filter an SGA file into canonical pairs");
    auto* score = app.add_subcommand("score", "Score pairs with M and log J");
    auto* calibrate = app.add_subcommand("calibrate", "Equalize J and M interaction counts");
    auto* hubs = app.add_subcommand("hubs", "Exclusive, shared and symmetric hub detection");
    hubs->add_option("--exclusive-ratio", c.exclusiveRatio)->capture_default_str();
    hubs->add_option("--shared-min-common", c.sharedMinCommon)->capture_default_str();
    hubs->add_option("--shared-max-discord", c.sharedMaxDiscord)->capture_default_str();
    hubs->add_option("--symmetric-min", c.symmetricMinExclusive)->capture_default_str();
    hubs->add_option("--connectors-for", c.connectorHubs, "Hub genes for connector search")->delimiter(',');
    auto* similarity = app.add_subcommand("similarity", "Profile PCC similarity");
    similarity->add_option("--measure", c.measure, "M, J or both")->capture_default_str();
    similarity->add_option("--pcc-threshold", c.pccThreshold)->capture_default_str();
    similarity->add_flag("--significant-only", c.significantOnly, "Profiles from interacting pairs only");
    auto* annotate = app.add_subcommand("annotate", "Co-annotation segregation of quadrants");
    annotate->add_option("--annotations", c.annotations, "gene<TAB>category file")->required();
    annotate->add_option("--kind", c.kind, "GO_BP, KEGG or complex")->capture_default_str();
    annotate->add_option("--min-pairs", c.minPairs, "Category size filter (default per kind)");
    annotate->add_option("--size-filter", c.sizeFilter, "both or either")->capture_default_str();
    auto* enrich = app.add_subcommand("enrich", "Hypergeometric enrichment, Holm-Bonferroni");
    enrich->add_option("--annotations", c.annotations)->required();
    enrich->add_option("--kind", c.kind)->capture_default_str();
    enrich->add_option("--selected", c.selected, "Selected genes, one per line")->required();
    enrich->add_option("--universe", c.universe, "Universe genes (default: genes in --input)");
    enrich->add_option("--alpha", c.alpha)->capture_default_str();
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo oracle on a model specification");
    simulate->add_option("--model", c.model, "Model JSON")->required();
    simulate->add_option("--n", c.samples, "Population size")->capture_default_str();
    bool noSamples = false;
    simulate->add_flag("--no-samples", noSamples, "Skip samples.tsv");
    auto* neutral = app.add_subcommand("neutrality", "Neutrality check of a model or table");
    neutral->add_option("--model", c.model, "Model or observable-table JSON")->required();
    neutral->add_option("--tol", c.tolerance)->capture_default_str();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    c.aggregate = !noAggregate;
    c.writeSamples = !noSamples;
    c.format = format == "json" ? Format::Json : Format::Tsv;

    try {
        c.validate();
        if (ingest->parsed()) return cmd_ingest(c, out, err);
        if (score->parsed()) return cmd_score(c, out, err);
        if (calibrate->parsed()) return cmd_calibrate(c, out, err);
        if (hubs->parsed()) return cmd_hubs(c, out, err);
        if (similarity->parsed()) return cmd_similarity(c, out, err);
        if (annotate->parsed()) return cmd_annotate(c, out, err);
        if (enrich->parsed()) return cmd_enrich(c, out, err);
        if (simulate->parsed()) return cmd_simulate(c, out, err);
        if (neutral->parsed()) return cmd_neutrality(c, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return kInputError;
    } catch (const fs::filesystem_error& e) {
        err << "error [io]: " << e.what() << '\n';
        return kInputError;
    }
    return kConfigError;
}

}  // namespace ginet::cli
