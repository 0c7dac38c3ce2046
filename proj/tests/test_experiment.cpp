#include <doctest.h>

#include <cmath>

#include "lipnet/experiment.hpp"

using namespace lipnet;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.domain = HypercubeDomain(0.0, 1.0, 1);
    cfg.target.family = "abs-dist";
    cfg.clip = ClipBounds(0.0, 1.0);
    cfg.train.restarts = 10;
    cfg.train.max_steps = 0;
    cfg.train.eligible_steps = {0};
    cfg.train.init_radius = 2.0;
    cfg.train.selection_radius = 2.0;
    cfg.train.clip = cfg.clip;
    cfg.train.arch = Architecture({1, 4, 1});
    cfg.train_samples = 200;
    cfg.repetitions = 4;
    cfg.error_samples = 500;
    cfg.bound_variant = BoundVariant::Intro;
    cfg.master_seed = 11;
    return cfg;
}

}  // namespace

TEST_CASE("run_experiment basics") {
    const ExperimentReport report = run_experiment(small_config());
    REQUIRE(report.repetitions.size() == 4);
    CHECK(report.measured == doctest::Approx(report.mean_l1));
    CHECK(report.bound.total > 0.0);
    CHECK(report.measured_within_bound);
    for (const auto& rep : report.repetitions) {
        CHECK(rep.k >= 1);
        CHECK(rep.k <= 10);
        CHECK(rep.n == 0);
        CHECK(rep.error.l1 >= 0.0);
    }
}

TEST_CASE("experiment determinism: identical config gives identical JSON") {
    const std::string a = to_json(run_experiment(small_config())).dump();
    const std::string b = to_json(run_experiment(small_config())).dump();
    CHECK(a == b);

    ExperimentConfig other = small_config();
    other.master_seed = 12;
    CHECK(to_json(run_experiment(other)).dump() != a);
}

TEST_CASE("constant target: best initialization already fits well") {
    ExperimentConfig cfg = small_config();
    cfg.target.family = "constant";
    cfg.target.value = 0.5;
    cfg.train.restarts = 50;
    const ExperimentReport report = run_experiment(cfg);
    CHECK(report.mean_l1 < 0.2);
    for (const auto& rep : report.repetitions) CHECK(rep.risk < 0.05);
}

TEST_CASE("noise mode keeps labels in range and errors finite") {
    ExperimentConfig cfg = small_config();
    cfg.noise = 0.1;
    const ExperimentReport report = run_experiment(cfg);
    CHECK(std::isfinite(report.mean_l1));
    CHECK(report.mean_l1 < 1.0);
}

TEST_CASE("csv emission has a header and one row per repetition") {
    const ExperimentReport report = run_experiment(small_config());
    const std::string csv = experiment_csv(report);
    size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 1 + report.repetitions.size());
    CHECK(csv.rfind("repetition,k,n,risk,l1_error,l1_se,l2_error,l2_se\n", 0) == 0);
}

TEST_CASE("config JSON round trip") {
    const ExperimentConfig cfg = small_config();
    const ExperimentConfig back = experiment_config_from_json(to_json(cfg));
    CHECK(back.domain.d == cfg.domain.d);
    CHECK(back.train.restarts == cfg.train.restarts);
    CHECK(back.train.arch == cfg.train.arch);
    CHECK(back.master_seed == cfg.master_seed);
    CHECK(to_json(back).dump() == to_json(cfg).dump());
}

TEST_CASE("hypothesis violations carry the repetition context or clause") {
    ExperimentConfig cfg = small_config();
    cfg.train.init_radius = 1.0;  // intro bound needs c >= 2
    cfg.train.selection_radius = 1.0;
    CHECK_THROWS_AS(run_experiment(cfg), HypothesisError);
}
