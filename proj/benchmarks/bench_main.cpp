#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "ginet/ingest.hpp"
#include "ginet/measures.hpp"
#include "ginet/netanalysis.hpp"
#include "ginet/probmodel.hpp"
#include "ginet/simgen.hpp"
#include "models.hpp"

using namespace ginet;

namespace {

std::string synthetic_sga(std::size_t rows, std::size_t genes) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> gene(0, genes - 1);
    std::uniform_real_distribution<double> fit(0.05, 1.2), p(0.0, 1.0);
    std::ostringstream out;
    out << "Query Strain ID\tArray Strain ID\tQuery SMF\tArray SMF\tDouble mutant fitness\tP-value\n";
    for (std::size_t i = 0; i < rows; ++i) {
        out << 'Y' << gene(rng) << "_tsq" << i % 3 << "\tY" << gene(rng) << "_dma" << i % 2 << '\t' << fit(rng)
            << '\t' << fit(rng) << '\t' << fit(rng) << '\t' << p(rng) * p(rng) << '\n';
    }
    return out.str();
}

std::vector<ScoredPair> synthetic_pairs(std::size_t genes) {
    std::istringstream in(synthetic_sga(genes * genes / 4, genes));
    const auto records = aggregate_gene_pairs(parse_sga(in).records);
    std::vector<ScoredPair> pairs;
    for (const auto& r : records) {
        if (!r.self_pair()) {
            pairs.push_back(score_pair(r.queryGene, r.arrayGene, r.smfQuery, r.smfArray, r.dmf, r.pValue, {}));
        }
    }
    return pairs;
}

void BM_ParseSga(benchmark::State& state) {
    const auto text = synthetic_sga(static_cast<std::size_t>(state.range(0)), 2000);
    for (auto _ : state) {
        std::istringstream in(text);
        benchmark::DoNotOptimize(parse_sga(in));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseSga)->Arg(10'000)->Arg(100'000);

void BM_ScorePairs(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> fit(0.05, 1.2);
    std::vector<double> f(3 * 4096);
    for (auto& x : f) x = fit(rng);
    for (auto _ : state) {
        for (std::size_t i = 0; i < 4096; ++i) {
            benchmark::DoNotOptimize(score(f[3 * i], f[3 * i + 1], f[3 * i + 2]));
        }
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 4096));
}
BENCHMARK(BM_ScorePairs);

void BM_IsNeutral(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::vector<ObservableTable> tables;
    for (int i = 0; i < 256; ++i) tables.push_back(observables_from_model(testing::random_model(rng, true)));
    for (auto _ : state) {
        for (const auto& t : tables) benchmark::DoNotOptimize(is_neutral(t));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * tables.size()));
}
BENCHMARK(BM_IsNeutral);

void BM_Similarity(benchmark::State& state) {
    const auto pairs = synthetic_pairs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(similarity_pairs(pairs, Measure::J));
}
BENCHMARK(BM_Similarity)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_SamplePopulation(benchmark::State& state) {
    const auto model = testing::model2x2(0.8, 0.5, 0.9);
    for (auto _ : state) benchmark::DoNotOptimize(sample_population(model, std::nullopt, 1'000'000, 42));
}
BENCHMARK(BM_SamplePopulation)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
