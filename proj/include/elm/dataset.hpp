#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elm/dynamics.hpp"
#include "elm/kernels.hpp"
#include "elm/types.hpp"

namespace elm {

struct GridSpec {
    double lambda_min = 0.0, lambda_max = 1.0, lambda_step = 0.01;
    double alpha_min = 0.0, alpha_max = 1.0, alpha_step = 0.01;
    double time_min = 0.0, time_max = 4.0, time_step = 0.04;

    int lambda_count() const;
    int alpha_count() const;
    int time_count() const;
    double lambda_at(int i) const { return lambda_min + i * lambda_step; }
    double alpha_at(int j) const { return alpha_min + j * alpha_step; }
    double time_at(int k) const { return time_min + k * time_step; }
    std::vector<double> times() const;
};

enum class ObservableKind { SzTrace, CzPair, AllCorrelations };

enum class SplitTag : int { Train = 0, Validation = 1, Test = 2, PathTest = 3 };

std::string split_tag_name(SplitTag t);
std::string observable_name(ObservableKind k);

struct Sample {
    double lambda = 0.0;
    double alpha = 0.0;
    int label = 0;  // 0 symmetric, 1 broken
    SplitTag split = SplitTag::Train;
    std::vector<double> features;  // series-major: [series][time]
};

struct DatasetManifest {
    int n_particles = 6;
    GridSpec grid;
    ObservableKind observable = ObservableKind::CzPair;
    int cz_i = 1, cz_j = 2;
    PropagatorKind propagator = PropagatorKind::Exact;
    int trotter_steps = 1;
    std::optional<double> noise_sigma;
    std::uint64_t seed = 0;
    int n_series = 1;
    int series_length = 0;
};

struct Dataset {
    DatasetManifest manifest;
    std::vector<Sample> samples;

    std::vector<std::size_t> indices_with(SplitTag tag) const;
    std::size_t feature_length() const {
        return samples.empty() ? 0 : samples.front().features.size();
    }
};

/// Feature row of a single parameter point (no noise).
std::vector<double> feature_row(const ModelParams& p, const DatasetManifest& m);

/// One sample per grid point, labels from the mean-field classifier, optional
/// i.i.d. Gaussian noise on every feature value (seeded, per-sample streams,
/// independent of execution order).
Dataset generate_dataset(const DatasetManifest& manifest, Execution exec = Execution::Parallel);

/// Path 1/2/3 grid points become PathTest; 20% (rounded) of the remaining
/// points become Test; everything else Train. Deterministic in the seed.
void split_dataset(Dataset& data, std::uint64_t seed);

/// Extra evaluation-only samples exactly on path 1 (alpha = 0) or path 2
/// (alpha = 1/sqrt(2)), with a fine lambda step.
std::vector<Sample> fine_path_samples(const DatasetManifest& manifest, int path,
                                      double lambda_step = 0.01,
                                      Execution exec = Execution::Parallel);

/// Directory layout: manifest.json + features.csv; values survive the
/// round-trip bit-exactly.
void save_dataset(const Dataset& data, const std::string& dir);
Dataset load_dataset(const std::string& dir);

/// Grid alpha column used as path 2 (the column closest to 1/sqrt(2)).
int path2_alpha_index(const GridSpec& grid);

}  // namespace elm
