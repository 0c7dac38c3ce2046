#include "lipnet/experiment.hpp"

#include <cmath>
#include <sstream>

namespace lipnet {

void ExperimentConfig::validate() const {
    train.validate();
    if (train.arch.input_dim() != domain.d)
        throw std::invalid_argument("ExperimentConfig: architecture input dimension != d");
    if (train_samples < 1) throw std::invalid_argument("ExperimentConfig: need M >= 1");
    if (repetitions < 1) throw std::invalid_argument("ExperimentConfig: need R >= 1");
    if (error_samples < 1) throw std::invalid_argument("ExperimentConfig: need error samples >= 1");
    if (!(p > 0.0)) throw std::invalid_argument("ExperimentConfig: need p > 0");
    if (noise < 0.0) throw std::invalid_argument("ExperimentConfig: noise must be >= 0");
    if (!TargetConfig::known_family(target.family))
        throw std::invalid_argument("ExperimentConfig: unknown target family " + target.family);
}

namespace {

BoundInputs bound_inputs_for(const ExperimentConfig& cfg, const TargetOracle& oracle) {
    BoundInputs in;
    in.d = cfg.domain.d;
    in.arch = cfg.train.arch;
    in.M = cfg.train_samples;
    in.K = cfg.train.restarts;
    in.N = cfg.train.max_steps;
    in.p = cfg.p;
    in.c = cfg.train.init_radius;
    in.beta = cfg.train.selection_radius;
    in.u = cfg.clip.lo;
    in.v = cfg.clip.hi;
    in.lipschitz = oracle.lipschitz;
    in.a = cfg.domain.a;
    in.b = cfg.domain.b;
    // The architecture parameter each display is invoked with: l_1 - 2 in
    // one dimension, min{2^(L-1), hidden widths} in the general case.
    if (cfg.bound_variant == BoundVariant::Theo1d) {
        in.A = cfg.train.arch.width(1) - 2.0;
    } else {
        double min_hidden = std::ldexp(1.0, cfg.train.arch.depth() - 1);
        for (int i = 1; i <= cfg.train.arch.depth() - 1; ++i)
            min_hidden = std::min(min_hidden, static_cast<double>(cfg.train.arch.width(i)));
        in.A = min_hidden;
    }
    return in;
}

// the quantity on the left-hand side of the chosen bound, over repetitions
double measured_quantity(BoundVariant v, const std::vector<RepetitionResult>& reps, double p) {
    const double r = static_cast<double>(reps.size());
    switch (v) {
        case BoundVariant::Intro:
        case BoundVariant::CorSimple: {
            double acc = 0.0;  // E of the L1 error
            for (const auto& rep : reps) acc += rep.error.l1;
            return acc / r;
        }
        case BoundVariant::Theo1d:
        case BoundVariant::TheoMain: {
            double acc = 0.0;  // (E[(int |.|^2)^p])^{1/p}
            for (const auto& rep : reps) acc += std::pow(rep.error.l2, p);
            return std::pow(acc / r, 1.0 / p);
        }
        case BoundVariant::Cor1d:
        case BoundVariant::CorMain: {
            double acc = 0.0;  // (E[(int |.|^2)^{p/2}])^{1/p}
            for (const auto& rep : reps) acc += std::pow(rep.error.l2, p / 2.0);
            return std::pow(acc / r, 1.0 / p);
        }
    }
    return 0.0;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport report;
    report.config = cfg;

    const TargetOracle oracle = make_target(cfg.target, cfg.domain);
    if (oracle.range_lo < cfg.clip.lo || oracle.range_hi > cfg.clip.hi)
        throw HypothesisError("hypothesis violated: target range not inside [u, v]");
    const SyntheticSource source(oracle, cfg.domain, cfg.clip, cfg.noise);

    const HypercubeDomain dom = cfg.domain;
    auto sampler = [dom](rng::Stream& s) {
        std::vector<double> x(static_cast<size_t>(dom.d));
        for (double& v : x) v = s.next_uniform(dom.a, dom.b);
        return x;
    };

    for (int r = 1; r <= cfg.repetitions; ++r) {
        try {
            const std::uint64_t rep_seed =
                rng::derive(cfg.master_seed, 0x0e9e, static_cast<std::uint64_t>(r));
            TrainConfig train = cfg.train;
            train.master_seed = rep_seed;

            // validation risk uses the (k, n) = (0, 0) sample of size M
            const SampleSet validation = source.batch(rep_seed, 0, 0, cfg.train_samples);
            const RestartTable table = sgd_restarts(train, source);
            const SelectionResult sel = select_best(table, train, validation);

            int step_index = 0;
            while (table.steps[static_cast<size_t>(step_index)] != sel.n) ++step_index;
            const std::vector<double>& theta = table.theta(sel.k, step_index);

            rng::Stream error_stream(rng::derive(rep_seed, 0xe5717a7e));
            RepetitionResult rep;
            rep.repetition = r;
            rep.k = sel.k;
            rep.n = sel.n;
            rep.risk = sel.risk;
            rep.error = l2_error_estimate(theta, cfg.train.arch, cfg.clip, oracle.eval, sampler,
                                          cfg.error_samples, error_stream);
            report.repetitions.push_back(std::move(rep));
        } catch (const HypothesisError& e) {
            throw HypothesisError("repetition " + std::to_string(r) + ": " + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error("repetition " + std::to_string(r) + ": " + e.what());
        }
    }

    const double r = static_cast<double>(cfg.repetitions);
    double sum1 = 0.0, sum1_sq = 0.0, sum2 = 0.0;
    for (const auto& rep : report.repetitions) {
        sum1 += rep.error.l1;
        sum1_sq += rep.error.l1 * rep.error.l1;
        sum2 += rep.error.l2;
    }
    report.mean_l1 = sum1 / r;
    report.mean_l2 = sum2 / r;
    if (cfg.repetitions > 1)
        report.mean_l1_se =
            std::sqrt(std::max(0.0, (sum1_sq / r - report.mean_l1 * report.mean_l1) / (r - 1.0)));

    report.measured = measured_quantity(cfg.bound_variant, report.repetitions, cfg.p);

    // Empirical p-th moment of the L1 error over repetitions, with a
    // bootstrap standard error; both are estimates, not certified values.
    {
        double acc = 0.0;
        for (const auto& rep : report.repetitions) acc += std::pow(rep.error.l1, cfg.p);
        report.pth_moment_root = std::pow(acc / r, 1.0 / cfg.p);
        rng::Stream boot(rng::derive(cfg.master_seed, 0xb007));
        const int B = 200;
        double bsum = 0.0, bsq = 0.0;
        for (int bi = 0; bi < B; ++bi) {
            double a = 0.0;
            for (int i = 0; i < cfg.repetitions; ++i) {
                const size_t pick = std::min(
                    static_cast<size_t>(boot.next_unit() * r), report.repetitions.size() - 1);
                a += std::pow(report.repetitions[pick].error.l1, cfg.p);
            }
            const double stat = std::pow(a / r, 1.0 / cfg.p);
            bsum += stat;
            bsq += stat * stat;
        }
        const double bmean = bsum / B;
        report.pth_moment_root_se = std::sqrt(std::max(0.0, bsq / B - bmean * bmean));
    }

    report.bound = overall_bound(bound_inputs_for(cfg, oracle), cfg.bound_variant);
    report.bound.measured_error = report.measured;
    report.measured_within_bound = report.measured <= report.bound.total;
    report.bound_over_measured =
        report.measured > 0.0 ? report.bound.total / report.measured
                              : std::numeric_limits<double>::infinity();
    return report;
}

json to_json(const BoundReport& report) {
    json j{{"schema", "bound-report/1"},
           {"variant", report.variant},
           {"approximation_term", report.approximation_term},
           {"optimization_term", report.optimization_term},
           {"generalization_term", report.generalization_term},
           {"total", report.total}};
    j["measured_error"] = report.measured_error ? json(*report.measured_error) : json(nullptr);
    j["inputs"] = json{{"d", report.inputs.d},
                       {"l", report.inputs.arch.dims},
                       {"M", report.inputs.M},
                       {"K", report.inputs.K},
                       {"N", report.inputs.N},
                       {"p", report.inputs.p},
                       {"c", report.inputs.c},
                       {"beta", report.inputs.beta},
                       {"u", report.inputs.u},
                       {"v", report.inputs.v},
                       {"L", report.inputs.lipschitz},
                       {"a", report.inputs.a},
                       {"b", report.inputs.b},
                       {"A", report.inputs.A}};
    return j;
}

json to_json(const ExperimentConfig& cfg) {
    json train{{"K", cfg.train.restarts},
               {"N", cfg.train.max_steps},
               {"eligible_steps", cfg.train.eligible_steps},
               {"learning_rates", cfg.train.learning_rates},
               {"batch_sizes", cfg.train.batch_sizes},
               {"c", cfg.train.init_radius},
               {"beta", cfg.train.selection_radius},
               {"l", cfg.train.arch.dims}};
    json target{{"family", cfg.target.family},
                {"scale", cfg.target.scale},
                {"center", cfg.target.center},
                {"omega", cfg.target.omega},
                {"value", cfg.target.value}};
    return json{{"domain", {{"a", cfg.domain.a}, {"b", cfg.domain.b}, {"d", cfg.domain.d}}},
                {"target", std::move(target)},
                {"clip", {{"u", cfg.clip.lo}, {"v", cfg.clip.hi}}},
                {"train", std::move(train)},
                {"M", cfg.train_samples},
                {"R", cfg.repetitions},
                {"error_samples", cfg.error_samples},
                {"p", cfg.p},
                {"noise", cfg.noise},
                {"bound_variant", to_string(cfg.bound_variant)},
                {"master_seed", cfg.master_seed}};
}

ExperimentConfig experiment_config_from_json(const json& j) {
    ExperimentConfig cfg;
    const json& dom = j.at("domain");
    cfg.domain = HypercubeDomain(dom.at("a").get<double>(), dom.at("b").get<double>(),
                                 dom.at("d").get<int>());
    const json& t = j.at("target");
    cfg.target.family = t.at("family").get<std::string>();
    if (t.contains("scale")) cfg.target.scale = t.at("scale").get<double>();
    if (t.contains("center")) cfg.target.center = t.at("center").get<std::vector<double>>();
    if (t.contains("omega")) cfg.target.omega = t.at("omega").get<double>();
    if (t.contains("value")) cfg.target.value = t.at("value").get<double>();
    const json& clip = j.at("clip");
    cfg.clip = ClipBounds(clip.at("u").get<double>(), clip.at("v").get<double>());

    const json& tr = j.at("train");
    cfg.train.restarts = tr.at("K").get<int>();
    cfg.train.max_steps = tr.value("N", 0);
    cfg.train.eligible_steps = tr.value("eligible_steps", std::vector<int>{0});
    if (tr.contains("learning_rates"))
        cfg.train.learning_rates = tr.at("learning_rates").get<std::vector<double>>();
    else
        cfg.train.learning_rates =
            TrainConfig::constant_rates(tr.value("gamma", 0.0), cfg.train.max_steps);
    if (tr.contains("batch_sizes"))
        cfg.train.batch_sizes = tr.at("batch_sizes").get<std::vector<int>>();
    else
        cfg.train.batch_sizes =
            TrainConfig::constant_batches(tr.value("batch_size", 1), cfg.train.max_steps);
    cfg.train.init_radius = tr.at("c").get<double>();
    cfg.train.selection_radius = tr.value("beta", cfg.train.init_radius);
    cfg.train.arch = Architecture(tr.at("l").get<std::vector<int>>());
    cfg.train.clip = cfg.clip;

    cfg.train_samples = j.at("M").get<int>();
    cfg.repetitions = j.value("R", 1);
    cfg.error_samples = j.value("error_samples", 1000);
    cfg.p = j.value("p", 1.0);
    cfg.noise = j.value("noise", 0.0);
    cfg.bound_variant = bound_variant_from_string(j.value("bound_variant", std::string("intro")));
    cfg.master_seed = j.value("master_seed", static_cast<std::uint64_t>(0));
    return cfg;
}

json to_json(const ExperimentReport& report) {
    json reps = json::array();
    for (const auto& rep : report.repetitions)
        reps.push_back(json{{"repetition", rep.repetition},
                            {"k", rep.k},
                            {"n", rep.n},
                            {"risk", rep.risk},
                            {"l1_error", rep.error.l1},
                            {"l1_se", rep.error.l1_se},
                            {"l2_error", rep.error.l2},
                            {"l2_se", rep.error.l2_se}});
    json j{{"schema", "experiment-report/1"},
           {"config", to_json(report.config)},
           {"repetitions", std::move(reps)},
           {"mean_l1", report.mean_l1},
           {"mean_l1_se", report.mean_l1_se},
           {"mean_l2", report.mean_l2},
           {"measured", report.measured},
           {"pth_moment_root", report.pth_moment_root},
           {"pth_moment_root_se", report.pth_moment_root_se},
           {"pth_moment_is_estimate", true},
           {"bound", to_json(report.bound)},
           {"bound_over_measured", report.bound_over_measured},
           {"measured_within_bound", report.measured_within_bound}};
    if (report.config.p < 1.0)
        j["pth_moment_note"] = "p < 1: the reported moment root is not a norm";
    return j;
}

std::string experiment_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "repetition,k,n,risk,l1_error,l1_se,l2_error,l2_se\n";
    out.precision(17);
    for (const auto& rep : report.repetitions)
        out << rep.repetition << ',' << rep.k << ',' << rep.n << ',' << rep.risk << ','
            << rep.error.l1 << ',' << rep.error.l1_se << ',' << rep.error.l2 << ','
            << rep.error.l2_se << '\n';
    return out.str();
}

}  // namespace lipnet
