#include "ginet/simgen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include "ginet/error.hpp"

namespace ginet {

namespace {

class Fnv1a {
public:
    void bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ULL;
        }
    }
    void u64(std::uint64_t v) {
        unsigned char buf[8];
        for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
        bytes(buf, 8);
    }
    void real(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void text(const std::string& s) {
        u64(s.size());
        bytes(s.data(), s.size());
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> cumulative(const Grid& joint) {
    std::vector<double> cum(joint.cells().size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cum.size(); ++i) {
        acc += joint.cells()[i];
        cum[i] = acc;
    }
    return cum;
}

std::size_t draw_cell(const std::vector<double>& cum, double u) {
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) {
        // u landed in the rounding gap above the final cumulative mass.
        std::size_t i = cum.size() - 1;
        while (i > 0 && cum[i] == cum[i - 1]) --i;
        return i;
    }
    return static_cast<std::size_t>(it - cum.begin());
}

void fill_block(std::vector<Observation>& out, std::size_t begin, std::size_t end, std::uint64_t seed,
                std::size_t block, const std::vector<double>& cum, const Grid& survival) {
    std::mt19937_64 rng(block_seed(seed, block));
    const std::size_t cols = survival.cols();
    for (std::size_t i = begin; i < end; ++i) {
        const std::size_t cell = draw_cell(cum, uniform01(rng));
        const std::size_t a = cell / cols, b = cell % cols;
        const bool effect = uniform01(rng) >= survival(a, b);
        out[i] = {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), effect};
    }
}

double log_j(const Grid& s, std::size_t a, std::size_t b) {
    return std::log(s(a, 0)) + std::log(s(0, b)) - std::log(s(0, 0)) - std::log(s(a, b));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept {
    return splitmix64(seed + (block + 1) * 0x9E3779B97F4A7C15ULL);
}

Grid joint_survival(const TwoFactorEffectModel& model, const std::optional<InteractionPerturbation>& perturbation) {
    model.validate();
    const std::size_t na = model.levelsA.size(), nb = model.levelsB.size();
    Grid s(na, nb);
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) s(a, b) = null_joint_survival(model, a, b);
    }
    if (!perturbation) return s;

    const Grid& m = perturbation->multiplier;
    if (m.rows() != na || m.cols() != nb) {
        throw Error(ErrorCode::Perturbation, "perturbation does not cover the level grid");
    }
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
            if ((a == 0 || b == 0) && m(a, b) != 1.0) {
                throw Error(ErrorCode::Perturbation, "perturbation multiplier must be 1 on reference cells");
            }
            const double v = s(a, b) * m(a, b);
            if (!(v > 0.0 && v <= 1.0)) {
                throw Error(ErrorCode::Perturbation, "perturbed survival at (" + model.levelsA.name(a) + ", " +
                                                         model.levelsB.name(b) + ") leaves (0, 1]");
            }
            s(a, b) = v;
        }
    }
    return s;
}

ObservableTable perturbed_observables(const TwoFactorEffectModel& model,
                                      const std::optional<InteractionPerturbation>& perturbation) {
    ObservableTable t;
    t.levelsA = model.levelsA;
    t.levelsB = model.levelsB;
    t.survival = joint_survival(model, perturbation);
    t.jointFactorDist = model.jointFactorDist;
    return t;
}

std::string model_digest(const TwoFactorEffectModel& model,
                         const std::optional<InteractionPerturbation>& perturbation) {
    Fnv1a h;
    for (const auto* levels : {&model.levelsA, &model.levelsB}) {
        h.u64(levels->size());
        for (const auto& name : levels->names()) h.text(name);
    }
    for (double v : model.survivalA) h.real(v);
    for (double v : model.survivalB) h.real(v);
    h.real(model.survivalZ);
    for (double v : model.jointFactorDist.cells()) h.real(v);
    h.u64(perturbation ? 1 : 0);
    if (perturbation) {
        for (double v : perturbation->multiplier.cells()) h.real(v);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.value()));
    return buf;
}

SampleBatch sample_population(const TwoFactorEffectModel& model,
                              const std::optional<InteractionPerturbation>& perturbation, std::size_t n,
                              std::uint64_t seed, unsigned workers) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
    const Grid survival = joint_survival(model, perturbation);
    const auto cum = cumulative(model.jointFactorDist);

    SampleBatch batch;
    batch.seed = seed;
    batch.modelDigest = model_digest(model, perturbation);
    batch.levelsA = model.levelsA;
    batch.levelsB = model.levelsB;
    batch.samples.resize(n);

    const std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
    auto run = [&](unsigned w) {
        for (std::size_t k = w; k < blocks; k += workers) {
            fill_block(batch.samples, k * kSampleBlock, std::min(n, (k + 1) * kSampleBlock), seed, k, cum, survival);
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    return batch;
}

bool EmpiricalTable::complete() const {
    return std::none_of(pairCounts.cells().begin(), pairCounts.cells().end(), [](double c) { return c == 0.0; });
}

EmpiricalTable empirical_table(const SampleBatch& batch) {
    const std::size_t na = batch.levelsA.size(), nb = batch.levelsB.size();
    EmpiricalTable e;
    e.pairCounts = Grid(na, nb);
    e.effectCounts = Grid(na, nb);
    for (const auto& o : batch.samples) {
        e.pairCounts(o.a, o.b) += 1.0;
        if (o.effect) e.effectCounts(o.a, o.b) += 1.0;
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double total = static_cast<double>(batch.samples.size());
    e.table.levelsA = batch.levelsA;
    e.table.levelsB = batch.levelsB;
    e.table.survival = Grid(na, nb, nan);
    e.standardError = Grid(na, nb, nan);
    Grid joint(na, nb);
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
            const double n = e.pairCounts(a, b);
            joint(a, b) = total > 0 ? n / total : 0.0;
            if (n == 0.0) continue;
            const double s = 1.0 - e.effectCounts(a, b) / n;
            e.table.survival(a, b) = s;
            e.standardError(a, b) = std::sqrt(s * (1.0 - s) / n);
        }
    }
    e.table.jointFactorDist = joint;
    return e;
}

OracleReport oracle_report(const TwoFactorEffectModel& model,
                           const std::optional<InteractionPerturbation>& perturbation, std::size_t n,
                           std::uint64_t seed, unsigned workers) {
    return oracle_report(model, perturbation, sample_population(model, perturbation, n, seed, workers));
}

OracleReport oracle_report(const TwoFactorEffectModel& model,
                           const std::optional<InteractionPerturbation>& perturbation, const SampleBatch& batch) {
    if (batch.modelDigest != model_digest(model, perturbation)) {
        throw Error(ErrorCode::InvalidArgument, "sample batch was drawn from a different model");
    }
    OracleReport r;
    r.seed = batch.seed;
    r.n = batch.samples.size();
    r.modelDigest = batch.modelDigest;
    r.levelsA = model.levelsA;
    r.levelsB = model.levelsB;
    r.empirical = empirical_table(batch);

    const Grid& s = r.empirical.table.survival;
    const Grid& counts = r.empirical.pairCounts;
    for (std::size_t a = 0; a < s.rows(); ++a) {
        for (std::size_t b = 0; b < s.cols(); ++b) {
            if (std::isnan(s(a, b))) {
                throw Error(ErrorCode::AbsentCell, "cell (" + model.levelsA.name(a) + ", " + model.levelsB.name(b) +
                                                       ") was never sampled; increase n");
            }
            if (!(s(a, b) > 0.0)) {
                throw Error(ErrorCode::ZeroSurvival, "cell (" + model.levelsA.name(a) + ", " +
                                                         model.levelsB.name(b) + ") has zero empirical survival");
            }
        }
    }

    const auto analytic = perturbed_observables(model, perturbation);
    // Delta method: Var(log p_hat) ~ (1 - p) / (n p) per independent cell.
    auto var_log = [&](std::size_t a, std::size_t b) { return (1.0 - s(a, b)) / (counts(a, b) * s(a, b)); };
    for (std::size_t a = 1; a < s.rows(); ++a) {
        for (std::size_t b = 1; b < s.cols(); ++b) {
            OracleCell c;
            c.a = a;
            c.b = b;
            c.empiricalLogJ = log_j(s, a, b);
            c.analyticLogJ = log_j(analytic.survival, a, b);
            c.standardError = std::sqrt(var_log(0, 0) + var_log(a, 0) + var_log(0, b) + var_log(a, b));
            c.zScore = c.standardError > 0.0 ? (c.empiricalLogJ - c.analyticLogJ) / c.standardError : 0.0;
            r.cells.push_back(c);
        }
    }
    r.empiricalNeutralityDeviation = is_neutral(r.empirical.table, 0.0).maxDeviation;
    r.analyticNeutralityDeviation = is_neutral(analytic, 0.0).maxDeviation;
    return r;
}

void write_samples_tsv(std::ostream& out, const SampleBatch& batch) {
    out << "level_a\tlevel_b\teffect\n";
    for (const auto& o : batch.samples) {
        out << batch.levelsA.name(o.a) << '\t' << batch.levelsB.name(o.b) << '\t' << (o.effect ? 1 : 0) << '\n';
    }
}

}  // namespace ginet
