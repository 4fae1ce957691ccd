#pragma once
// Command implementations behind the `ginet` executable. Kept in a library so
// tests can drive the CLI in-process.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ginet/measures.hpp"

namespace ginet::cli {

enum class Format { Tsv, Json };

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    kConfigError = 2,
};

// Invalid flags or flag combinations; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::filesystem::path input;
    std::filesystem::path outDir = ".";
    Thresholds thresholds;
    bool aggregate = true;
    Format format = Format::Tsv;
    std::uint64_t seed = 42;
    unsigned workers = 1;

    // hubs
    double exclusiveRatio = 0.1;
    std::size_t sharedMinCommon = 100;
    double sharedMaxDiscord = 0.05;
    std::size_t symmetricMinExclusive = 10;
    std::vector<std::string> connectorHubs;

    // similarity
    std::string measure = "both";
    double pccThreshold = 0.2;
    bool significantOnly = false;

    // annotate / enrich
    std::filesystem::path annotations;
    std::string kind = "GO_BP";
    std::optional<std::size_t> minPairs;
    std::string sizeFilter = "both";
    std::filesystem::path selected;
    std::filesystem::path universe;
    double alpha = 0.05;

    // simulate / neutrality
    std::filesystem::path model;
    std::size_t samples = 1000000;
    bool writeSamples = true;
    double tolerance = 1e-12;

    // Throws ConfigError.
    void validate() const;
};

int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_score(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_calibrate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_hubs(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_similarity(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_annotate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_enrich(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_neutrality(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command line (argv[0] excluded) → exit code. Errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ginet::cli
