#include "lipnet/training.hpp"

#include <algorithm>
#include <cmath>

namespace lipnet {

void SampleSet::validate(const HypercubeDomain& dom, const ClipBounds& y_range) const {
    if (ys.empty() || xs.size() != ys.size())
        throw std::invalid_argument("SampleSet: empty or mismatched xs/ys");
    for (size_t j = 0; j < xs.size(); ++j) {
        if (static_cast<int>(xs[j].size()) != dom.d)
            throw std::invalid_argument("SampleSet: X dimension mismatch");
        for (double v : xs[j])
            if (v < dom.a || v > dom.b)
                throw std::invalid_argument("SampleSet: X outside the declared cube");
        if (ys[j] < y_range.lo || ys[j] > y_range.hi)
            throw std::invalid_argument("SampleSet: Y outside [u, v]");
    }
}

void TrainConfig::validate() const {
    if (restarts < 1) throw std::invalid_argument("TrainConfig: need K >= 1");
    if (max_steps < 0) throw std::invalid_argument("TrainConfig: need N >= 0");
    if (init_radius < 1.0) throw std::invalid_argument("TrainConfig: need c >= 1");
    if (selection_radius < init_radius) throw std::invalid_argument("TrainConfig: need beta >= c");
    if (arch.output_dim() != 1) throw std::invalid_argument("TrainConfig: output dimension must be 1");
    if (param_dim >= 0 && param_dim < arch.param_count())
        throw std::invalid_argument("TrainConfig: param_dim below the architecture's parameter count");
    if (eligible_steps.empty() ||
        std::find(eligible_steps.begin(), eligible_steps.end(), 0) == eligible_steps.end())
        throw std::invalid_argument("TrainConfig: eligible step set must contain 0");
    for (int n : eligible_steps)
        if (n < 0 || n > max_steps)
            throw std::invalid_argument("TrainConfig: eligible step outside {0, ..., N}");
    if (static_cast<int>(learning_rates.size()) < max_steps)
        throw std::invalid_argument("TrainConfig: need a learning rate for every step");
    if (static_cast<int>(batch_sizes.size()) < max_steps)
        throw std::invalid_argument("TrainConfig: need a batch size for every step");
    for (int j : batch_sizes)
        if (j < 1) throw std::invalid_argument("TrainConfig: batch sizes must be >= 1");
}

SyntheticSource::SyntheticSource(TargetOracle target, HypercubeDomain dom, ClipBounds y_range,
                                 double noise_halfwidth)
    : target_(std::move(target)), dom_(dom), y_range_(y_range), noise_(noise_halfwidth) {
    if (noise_ < 0.0) throw std::invalid_argument("SyntheticSource: noise halfwidth must be >= 0");
}

SampleSet SyntheticSource::batch(std::uint64_t master_seed, int k, int n, int count) const {
    rng::Stream stream(rng::derive(master_seed, 0xba7c4e5, static_cast<std::uint64_t>(k),
                                   static_cast<std::uint64_t>(n)));
    SampleSet out;
    out.xs.reserve(static_cast<size_t>(count));
    out.ys.reserve(static_cast<size_t>(count));
    for (int j = 0; j < count; ++j) {
        std::vector<double> x(static_cast<size_t>(dom_.d));
        for (double& v : x) v = stream.next_uniform(dom_.a, dom_.b);
        double y = target_.eval(x);
        if (noise_ > 0.0) {
            // symmetric window, shrunk so Y stays in range and E[Y|X] is preserved
            const double half = std::min({noise_, y - y_range_.lo, y_range_.hi - y});
            if (half > 0.0) y += stream.next_uniform(-half, half);
        }
        out.xs.push_back(std::move(x));
        out.ys.push_back(y);
    }
    return out;
}

FiniteSource::FiniteSource(SampleSet data) : data_(std::move(data)) {
    if (data_.size() == 0) throw std::invalid_argument("FiniteSource: data set exhausted (empty)");
}

SampleSet FiniteSource::batch(std::uint64_t master_seed, int k, int n, int count) const {
    rng::Stream stream(rng::derive(master_seed, 0xf1417e, static_cast<std::uint64_t>(k),
                                   static_cast<std::uint64_t>(n)));
    SampleSet out;
    out.xs.reserve(static_cast<size_t>(count));
    out.ys.reserve(static_cast<size_t>(count));
    for (int j = 0; j < count; ++j) {
        const size_t idx = static_cast<size_t>(stream.next_unit() * static_cast<double>(data_.size()));
        const size_t i = std::min(idx, data_.size() - 1);
        out.xs.push_back(data_.xs[i]);
        out.ys.push_back(data_.ys[i]);
    }
    return out;
}

double empirical_risk(const std::vector<double>& theta, const Architecture& l,
                      const ClipBounds& bounds, const SampleSet& samples) {
    if (samples.size() == 0) throw std::invalid_argument("empirical_risk: empty sample set");
    double acc = 0.0;
    for (size_t j = 0; j < samples.size(); ++j) {
        const double out = realize_clipped(theta, l, bounds, samples.xs[j])[0];
        const double res = out - samples.ys[j];
        acc += res * res;
    }
    return acc / static_cast<double>(samples.size());
}

std::vector<double> risk_gradient(const std::vector<double>& theta, const Architecture& l,
                                  const ClipBounds& bounds, const SampleSet& samples) {
    if (samples.size() == 0) throw std::invalid_argument("risk_gradient: empty sample set");
    if (l.output_dim() != 1) throw std::invalid_argument("risk_gradient: output dimension must be 1");
    if (static_cast<long long>(theta.size()) < l.param_count())
        throw std::invalid_argument("risk_gradient: theta shorter than the architecture requires");

    const int L = l.depth();
    std::vector<double> grad(theta.size(), 0.0);

    // layer offsets in the flat layout
    std::vector<long long> offsets(static_cast<size_t>(L) + 1, 0);
    for (int k = 1; k <= L; ++k)
        offsets[static_cast<size_t>(k)] =
            offsets[static_cast<size_t>(k) - 1] +
            static_cast<long long>(l.width(k)) * (l.width(k - 1) + 1);

    std::vector<std::vector<double>> post(static_cast<size_t>(L));  // post-activation per layer
    std::vector<std::vector<double>> pre(static_cast<size_t>(L));   // pre-activation per layer
    const double inv_m = 1.0 / static_cast<double>(samples.size());

    for (size_t j = 0; j < samples.size(); ++j) {
        const std::vector<double>* cur = &samples.xs[j];
        for (int k = 1; k <= L; ++k) {
            pre[static_cast<size_t>(k) - 1] =
                affine_eval(theta, offsets[static_cast<size_t>(k) - 1], l.width(k), l.width(k - 1), *cur);
            post[static_cast<size_t>(k) - 1] = pre[static_cast<size_t>(k) - 1];
            if (k < L)
                for (double& v : post[static_cast<size_t>(k) - 1]) v = v > 0.0 ? v : 0.0;
            cur = &post[static_cast<size_t>(k) - 1];
        }

        const double z_out = pre[static_cast<size_t>(L) - 1][0];
        const double y = bounds.apply(z_out);
        const double clip_grad = (z_out > bounds.lo && z_out < bounds.hi) ? 1.0 : 0.0;
        double seed = 2.0 * inv_m * (y - samples.ys[j]) * clip_grad;
        if (seed == 0.0) continue;

        std::vector<double> delta{seed};
        for (int k = L; k >= 1; --k) {
            const int m = l.width(k), n = l.width(k - 1);
            const long long off = offsets[static_cast<size_t>(k) - 1];
            const std::vector<double>& input =
                k == 1 ? samples.xs[j] : post[static_cast<size_t>(k) - 2];
            std::vector<double> prev_delta;
            if (k > 1) prev_delta.assign(static_cast<size_t>(n), 0.0);
            for (int i = 0; i < m; ++i) {
                const double di = delta[static_cast<size_t>(i)];
                grad[static_cast<size_t>(off + static_cast<long long>(m) * n + i)] += di;  // bias
                if (di == 0.0) continue;
                const long long row = off + static_cast<long long>(i) * n;
                for (int q = 0; q < n; ++q) {
                    grad[static_cast<size_t>(row + q)] += di * input[static_cast<size_t>(q)];
                    if (k > 1)
                        prev_delta[static_cast<size_t>(q)] +=
                            di * theta[static_cast<size_t>(row + q)];
                }
            }
            if (k > 1) {
                const std::vector<double>& z = pre[static_cast<size_t>(k) - 2];
                for (int q = 0; q < n; ++q)
                    if (!(z[static_cast<size_t>(q)] > 0.0)) prev_delta[static_cast<size_t>(q)] = 0.0;
                delta = std::move(prev_delta);
            }
        }
    }
    return grad;
}

RestartTable sgd_restarts(const TrainConfig& config, const DataSource& source) {
    config.validate();
    std::vector<int> steps = config.eligible_steps;
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

    RestartTable table;
    table.arch = config.arch;
    table.steps = steps;
    table.params.resize(static_cast<size_t>(config.restarts));
    table.restart_seeds.resize(static_cast<size_t>(config.restarts));

    const long long dim = config.dim();
    for (int k = 1; k <= config.restarts; ++k) {
        const std::uint64_t seed_k =
            rng::derive(config.master_seed, 0x1417ULL, static_cast<std::uint64_t>(k));
        table.restart_seeds[static_cast<size_t>(k) - 1] = seed_k;
        rng::Stream init(seed_k);
        std::vector<double> theta(static_cast<size_t>(dim));
        for (double& v : theta) v = init.next_uniform(-config.init_radius, config.init_radius);

        auto& row = table.params[static_cast<size_t>(k) - 1];
        row.reserve(steps.size());
        size_t next_record = 0;
        if (steps[next_record] == 0) {
            row.push_back(theta);
            ++next_record;
        }
        for (int n = 1; n <= config.max_steps && next_record < steps.size(); ++n) {
            const double gamma = config.learning_rates[static_cast<size_t>(n) - 1];
            const int batch_size = config.batch_sizes[static_cast<size_t>(n) - 1];
            const SampleSet batch = source.batch(config.master_seed, k, n, batch_size);
            const std::vector<double> g = risk_gradient(theta, config.arch, config.clip, batch);
            for (size_t i = 0; i < theta.size(); ++i) theta[i] -= gamma * g[i];
            if (steps[next_record] == n) {
                row.push_back(theta);
                ++next_record;
            }
        }
    }
    return table;
}

SelectionResult select_best(const RestartTable& table, const TrainConfig& config,
                            const SampleSet& validation) {
    if (table.params.empty()) throw std::invalid_argument("select_best: empty table");
    SelectionResult best;
    bool found = false;
    int eligible = 0;
    for (int k = 1; k <= table.restarts(); ++k) {
        for (size_t s = 0; s < table.steps.size(); ++s) {
            const std::vector<double>& theta = table.theta(k, static_cast<int>(s));
            if (norm(theta, std::numeric_limits<double>::infinity()) > config.selection_radius)
                continue;
            ++eligible;
            const double risk = empirical_risk(theta, table.arch, config.clip, validation);
            if (!found || risk < best.risk) {
                best.k = k;
                best.n = table.steps[s];
                best.risk = risk;
                found = true;
            }
        }
    }
    if (!found) throw std::logic_error("select_best: no eligible candidate (beta >= c should prevent this)");
    best.eligible_count = eligible;
    return best;
}

L2ErrorEstimate l2_error_estimate(const std::vector<double>& theta, const Architecture& l,
                                  const ClipBounds& bounds,
                                  const std::function<double(const std::vector<double>&)>& target,
                                  const std::function<std::vector<double>(rng::Stream&)>& sampler,
                                  int n_samples, rng::Stream& stream) {
    if (n_samples < 1) throw std::invalid_argument("l2_error_estimate: need n_samples >= 1");
    double sum1 = 0.0, sum1_sq = 0.0, sum2 = 0.0, sum2_sq = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const std::vector<double> x = sampler(stream);
        const double gap = std::abs(realize_clipped(theta, l, bounds, x)[0] - target(x));
        sum1 += gap;
        sum1_sq += gap * gap;
        sum2 += gap * gap;
        sum2_sq += gap * gap * gap * gap;
    }
    const double n = static_cast<double>(n_samples);
    L2ErrorEstimate est;
    est.samples = n_samples;
    est.l1 = sum1 / n;
    est.l2 = sum2 / n;
    if (n_samples > 1) {
        est.l1_se = std::sqrt(std::max(0.0, (sum1_sq / n - est.l1 * est.l1) / (n - 1.0)));
        est.l2_se = std::sqrt(std::max(0.0, (sum2_sq / n - est.l2 * est.l2) / (n - 1.0)));
    }
    return est;
}

void FiniteDistribution::validate() const {
    if (values.empty() || values.size() != probs.size())
        throw std::invalid_argument("FiniteDistribution: empty or mismatched values/probs");
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("FiniteDistribution: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("FiniteDistribution: probabilities must sum to 1");
}

McIdentityReport mc_identity_check(const FiniteDistribution& dist, int M, double p) {
    dist.validate();
    if (M < 1) throw std::invalid_argument("mc_identity_check: need M >= 1");
    if (p < 2.0) throw std::invalid_argument("mc_identity_check: need p >= 2");
    const size_t support = dist.values.size();
    if (std::pow(static_cast<double>(support), M) > 1e6)
        throw std::length_error("mc_identity_check: enumeration budget exceeded");

    double mean = 0.0;
    for (size_t i = 0; i < support; ++i) mean += dist.probs[i] * dist.values[i];
    double single_sq = 0.0, single_p = 0.0;
    for (size_t i = 0; i < support; ++i) {
        const double dev = std::abs(dist.values[i] - mean);
        single_sq += dist.probs[i] * dev * dev;
        single_p += dist.probs[i] * std::pow(dev, p);
    }

    // exact expectation over the M-fold product distribution
    std::vector<size_t> idx(static_cast<size_t>(M), 0);
    double e_sum_sq = 0.0, e_mean_p = 0.0;
    while (true) {
        double prob = 1.0, sum = 0.0;
        for (size_t j = 0; j < idx.size(); ++j) {
            prob *= dist.probs[idx[j]];
            sum += dist.values[idx[j]];
        }
        const double centered = sum - M * mean;
        e_sum_sq += prob * centered * centered;
        e_mean_p += prob * std::pow(std::abs(centered) / M, p);
        size_t axis = 0;
        while (axis < idx.size() && ++idx[axis] == support) {
            idx[axis] = 0;
            ++axis;
        }
        if (axis == idx.size()) break;
    }

    McIdentityReport report;
    report.l2_lhs = e_sum_sq;
    report.l2_rhs = M * single_sq;
    report.lp_lhs = std::pow(e_mean_p, 1.0 / p);
    report.lp_rhs = std::sqrt((p - 1.0) / M) * std::pow(single_p, 1.0 / p);
    report.var_lhs = single_p;
    report.var_rhs = 0.25;
    return report;
}

}  // namespace lipnet
