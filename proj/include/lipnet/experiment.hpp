#pragma once

#include "lipnet/bounds.hpp"
#include "lipnet/serialize.hpp"
#include "lipnet/targets.hpp"
#include "lipnet/training.hpp"

namespace lipnet {

// Full pipeline: sample -> SGD with restarts -> selection -> Monte Carlo
// error measurement, repeated R times and compared against a bound.
struct ExperimentConfig {
    HypercubeDomain domain;
    TargetConfig target;
    ClipBounds clip;
    TrainConfig train;       // master_seed inside is ignored; seeds derive per repetition
    int train_samples = 100; // M, also the validation-risk sample count
    int repetitions = 1;     // R
    int error_samples = 1000;
    double p = 1.0;
    double noise = 0.0;      // Y-noise half-width (0 = noiseless)
    BoundVariant bound_variant = BoundVariant::Intro;
    std::uint64_t master_seed = 0;

    void validate() const;
};

struct RepetitionResult {
    int repetition = 0;
    int k = 0;
    int n = 0;
    double risk = 0.0;
    L2ErrorEstimate error;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<RepetitionResult> repetitions;
    double mean_l1 = 0.0;
    double mean_l1_se = 0.0;
    double mean_l2 = 0.0;   // mean of the squared-gap integrals
    double measured = 0.0;  // the quantity the chosen bound controls
    double pth_moment_root = 0.0;     // empirical estimate over repetitions
    double pth_moment_root_se = 0.0;  // bootstrap standard error (estimate)
    BoundReport bound;
    double bound_over_measured = 0.0;
    bool measured_within_bound = false;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

ExperimentConfig experiment_config_from_json(const json& j);
json to_json(const ExperimentConfig& cfg);
json to_json(const ExperimentReport& report);
std::string experiment_csv(const ExperimentReport& report);

json to_json(const BoundReport& report);

}  // namespace lipnet
