#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "lipnet/approximation.hpp"
#include "lipnet/network.hpp"
#include "lipnet/rng.hpp"

namespace lipnet {

struct SampleSet {
    std::vector<std::vector<double>> xs;
    std::vector<double> ys;

    size_t size() const { return ys.size(); }
    void validate(const HypercubeDomain& dom, const ClipBounds& y_range) const;
};

// Configuration of SGD with random restarts and the (k, n) selection rule.
struct TrainConfig {
    int restarts = 1;                    // K
    int max_steps = 0;                   // N
    std::vector<int> eligible_steps{0};  // the step set containing 0
    std::vector<double> learning_rates;  // gamma_n, n = 1..N
    std::vector<int> batch_sizes;        // J_n, n = 1..N
    double init_radius = 1.0;            // c: Theta_{k,0} ~ U[-c, c]^dim
    double selection_radius = 1.0;       // beta >= c
    ClipBounds clip;
    Architecture arch;
    int param_dim = -1;  // dim of theta; -1 means the architecture's parameter count
    std::uint64_t master_seed = 0;

    long long dim() const {
        return param_dim >= 0 ? param_dim : arch.param_count();
    }
    void validate() const;
    static std::vector<double> constant_rates(double gamma, int n) {
        return std::vector<double>(static_cast<size_t>(n), gamma);
    }
    static std::vector<int> constant_batches(int j, int n) {
        return std::vector<int>(static_cast<size_t>(n), j);
    }
};

// Batches are deterministic in (master seed, restart k, step n).
class DataSource {
  public:
    virtual ~DataSource() = default;
    virtual SampleSet batch(std::uint64_t master_seed, int k, int n, int count) const = 0;
};

// X uniform on the cube, Y = E(X) plus optional symmetric truncated noise
// (so E[Y | X] stays E(X) and Y stays inside the y-range).
class SyntheticSource final : public DataSource {
  public:
    SyntheticSource(TargetOracle target, HypercubeDomain dom, ClipBounds y_range,
                    double noise_halfwidth = 0.0);
    SampleSet batch(std::uint64_t master_seed, int k, int n, int count) const override;

  private:
    TargetOracle target_;
    HypercubeDomain dom_;
    ClipBounds y_range_;
    double noise_;
};

// Finite data set, resampled with replacement.
class FiniteSource final : public DataSource {
  public:
    explicit FiniteSource(SampleSet data);
    SampleSet batch(std::uint64_t master_seed, int k, int n, int count) const override;

  private:
    SampleSet data_;
};

struct RestartTable {
    Architecture arch;
    std::vector<int> steps;  // sorted eligible steps
    std::vector<std::vector<std::vector<double>>> params;  // [restart][step index] -> theta
    std::vector<std::uint64_t> restart_seeds;

    int restarts() const { return static_cast<int>(params.size()); }
    const std::vector<double>& theta(int k, int step_index) const {  // k is 1-based
        return params[static_cast<size_t>(k) - 1][static_cast<size_t>(step_index)];
    }
};

struct SelectionResult {
    int k = 0;          // 1-based restart index
    int n = 0;          // step
    double risk = 0.0;  // empirical risk achieved
    int eligible_count = 0;
};

// Monte Carlo L^q distance between the network and the target, q in {1, 2}.
struct L2ErrorEstimate {
    double l1 = 0.0, l1_se = 0.0;
    double l2 = 0.0, l2_se = 0.0;  // estimate of the integral of the squared gap
    int samples = 0;
};

// Two-sided values for the enumerable sampling identities/inequalities:
// the L2 identity (equality), the Lp mean inequality, and the [0,1]
// variance bound 1/4.
struct McIdentityReport {
    double l2_lhs = 0.0, l2_rhs = 0.0;
    double lp_lhs = 0.0, lp_rhs = 0.0;
    double var_lhs = 0.0, var_rhs = 0.25;
};

struct FiniteDistribution {
    std::vector<double> values;
    std::vector<double> probs;
    void validate() const;
};

double empirical_risk(const std::vector<double>& theta, const Architecture& l,
                      const ClipBounds& bounds, const SampleSet& samples);

// Backpropagated gradient of the empirical risk, with rect'(0) = 0 and
// clip' = 0 outside the open interval (u, v). Surplus theta entries get 0.
std::vector<double> risk_gradient(const std::vector<double>& theta, const Architecture& l,
                                  const ClipBounds& bounds, const SampleSet& samples);

RestartTable sgd_restarts(const TrainConfig& config, const DataSource& source);

SelectionResult select_best(const RestartTable& table, const TrainConfig& config,
                            const SampleSet& validation);

L2ErrorEstimate l2_error_estimate(const std::vector<double>& theta, const Architecture& l,
                                  const ClipBounds& bounds,
                                  const std::function<double(const std::vector<double>&)>& target,
                                  const std::function<std::vector<double>(rng::Stream&)>& sampler,
                                  int n_samples, rng::Stream& stream);

McIdentityReport mc_identity_check(const FiniteDistribution& dist, int M, double p);

}  // namespace lipnet
