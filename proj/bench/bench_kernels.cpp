// bench_kernels.cpp - OpenMP kernels against their serial references.

#include "senti/classifiers.hpp"
#include "senti/corpus.hpp"
#include "senti/synthetic.hpp"
#include "senti/vectorize.hpp"

#include <benchmark/benchmark.h>

using namespace senti;

namespace
{

const arff::dataset& corpus_text()
{
    static const auto data = [] {
        corpus::synthetic_spec spec;
        spec.per_class = 5000;
        return corpus::generate_synthetic(spec);
    }();
    return data;
}

const vectorize::vector_space& space()
{
    static const auto s = vectorize::fit(corpus_text(), {vectorize::weighting::tfidf, {}, corpus::default_stopwords(), 1});
    return s;
}

const vectorize::feature_matrix& matrix()
{
    static const auto m = vectorize::transform(space(), corpus_text());
    return m;
}

const ml::model& knn_model()
{
    static const auto m = ml::train_knn(matrix(), {5});
    return m;
}

void transform_parallel(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(vectorize::transform(space(), corpus_text()));
}

void transform_serial(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(vectorize::transform_serial(space(), corpus_text()));
}

void knn_distances_parallel(benchmark::State& state)
{
    const auto& s = std::get<ml::knn_state>(knn_model().state);
    const auto q = matrix().dense_row(0);
    std::vector<double> out(matrix().size());
    for (auto _ : state)
    {
        ml::knn_distances(s, q, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void knn_distances_serial(benchmark::State& state)
{
    const auto& s = std::get<ml::knn_state>(knn_model().state);
    const auto q = matrix().dense_row(0);
    std::vector<double> out(matrix().size());
    for (auto _ : state)
    {
        ml::knn_distances_serial(s, q, out);
        benchmark::DoNotOptimize(out.data());
    }
}

const ml::model& forest()
{
    static const auto m = ml::train_rforest(matrix(), {25, 0, {}}, 42);
    return m;
}

void predict_batch_parallel(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(ml::predict_batch(forest(), matrix()));
}

void predict_batch_serial(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(ml::predict_batch_serial(forest(), matrix()));
}

}  // namespace

BENCHMARK(transform_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(transform_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(knn_distances_parallel)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(knn_distances_serial)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(predict_batch_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(predict_batch_serial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
