#pragma once
// Synthetic populations drawn from a TwoFactorEffectModel, their empirical
// observable tables, and the oracle report comparing empirical against
// analytic log J.
//
// Random stream (pinned, platform independent):
//   * generator: std::mt19937_64 (its output sequence is fixed by the standard)
//   * uniform:   (next() >> 11) * 2^-53, in [0, 1)
//   * factor pair: inverse CDF over the row-major joint, first cell whose
//     cumulative mass exceeds the uniform
//   * effect: a second uniform u, effect occurs iff u >= survival(a, b)
//   * sharding: samples are produced in blocks of kSampleBlock; block k is
//     seeded with splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15). Blocks are
//     concatenated in order, so output does not depend on the worker count.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ginet/grid.hpp"
#include "ginet/probmodel.hpp"

namespace ginet {

inline constexpr std::size_t kSampleBlock = 1u << 16;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept;

// Multipliers applied to the null joint survival. Must be 1 on every cell
// that involves a reference level.
struct InteractionPerturbation {
    Grid multiplier;

    static InteractionPerturbation identity(std::size_t rows, std::size_t cols) {
        return {Grid(rows, cols, 1.0)};
    }
};

struct Observation {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    bool effect = false;

    bool operator==(const Observation&) const = default;
};

struct SampleBatch {
    std::vector<Observation> samples;
    std::uint64_t seed = 0;
    std::string modelDigest;
    Levels levelsA;
    Levels levelsB;
};

// Joint survival grid of the (optionally perturbed) model. Throws
// Error(Perturbation) if a perturbed cell leaves (0, 1] or a reference cell
// multiplier differs from 1.
Grid joint_survival(const TwoFactorEffectModel& model, const std::optional<InteractionPerturbation>& perturbation);

// Analytic observable table of the perturbed model (joint distribution kept).
ObservableTable perturbed_observables(const TwoFactorEffectModel& model,
                                      const std::optional<InteractionPerturbation>& perturbation);

// FNV-1a 64 over a canonical serialization of the model and perturbation.
std::string model_digest(const TwoFactorEffectModel& model, const std::optional<InteractionPerturbation>& perturbation);

SampleBatch sample_population(const TwoFactorEffectModel& model,
                              const std::optional<InteractionPerturbation>& perturbation, std::size_t n,
                              std::uint64_t seed, unsigned workers = 1);

struct EmpiricalTable {
    ObservableTable table;  // NaN survival marks an unobserved cell
    Grid pairCounts;
    Grid effectCounts;
    Grid standardError;     // binomial SE of each survival estimate; NaN if absent

    bool complete() const;
};

EmpiricalTable empirical_table(const SampleBatch& batch);

struct OracleCell {
    std::size_t a = 0;
    std::size_t b = 0;
    double empiricalLogJ = 0.0;
    double standardError = 0.0;  // delta method
    double analyticLogJ = 0.0;
    double zScore = 0.0;         // (empirical - analytic) / SE
};

struct OracleReport {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::string modelDigest;
    Levels levelsA;
    Levels levelsB;
    std::vector<OracleCell> cells;
    double empiricalNeutralityDeviation = 0.0;
    double analyticNeutralityDeviation = 0.0;
    EmpiricalTable empirical;
};

// Requires every cell observed with a positive empirical survival; otherwise
// Error(AbsentCell) or Error(ZeroSurvival).
OracleReport oracle_report(const TwoFactorEffectModel& model,
                           const std::optional<InteractionPerturbation>& perturbation, std::size_t n,
                           std::uint64_t seed, unsigned workers = 1);

// Same report over an existing batch, which must come from this model.
OracleReport oracle_report(const TwoFactorEffectModel& model,
                           const std::optional<InteractionPerturbation>& perturbation, const SampleBatch& batch);

// Samples as TSV: level_a, level_b, effect (0/1).
void write_samples_tsv(std::ostream& out, const SampleBatch& batch);

}  // namespace ginet
