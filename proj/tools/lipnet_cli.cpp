// Command-line front end: construct and evaluate networks, build
// approximators, run SGD-with-restarts training, evaluate error bounds, and
// drive full experiments from JSON configs.
//
// Exit codes: 0 success, 1 hypothesis violation, 2 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lipnet/algebra.hpp"
#include "lipnet/constructions.hpp"
#include "lipnet/experiment.hpp"
#include "lipnet/serialize.hpp"

namespace {

using namespace lipnet;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    try {
        return load_json_file(path);
    } catch (const std::exception& e) {
        throw IoError(e.what());
    }
}

void write_json(const std::string& path, const json& j) {
    try {
        save_json_file(path, j);
    } catch (const std::exception& e) {
        throw IoError(e.what());
    }
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << '\n';
    else
        write_json(out_path, j);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

std::vector<double> parse_vector(const std::string& csv) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(csv);
    while (std::getline(in, token, ',')) out.push_back(std::stod(token));
    return out;
}

StructuredNetwork build_named_net(const std::string& type, int d, int m, int n,
                                  const std::string& spec_path) {
    if (type == "l1") return l1_norm_net(d);
    if (type == "max") return max_net(d);
    if (type == "identity") return identity_net();
    if (type == "sum") return sum_net(m, n);
    if (type == "concat") return concat_net(m, n);
    if (type == "maxconv") {
        const json j = read_json(spec_path);
        MaxConvSpec spec;
        spec.lipschitz = j.at("lipschitz").get<double>();
        spec.centers = j.at("centers").get<std::vector<std::vector<double>>>();
        spec.values = j.at("values").get<std::vector<double>>();
        return max_convolution_net(spec);
    }
    if (type == "interp") {
        const json j = read_json(spec_path);
        Interp1dSpec spec;
        spec.a = j.at("a").get<double>();
        spec.b = j.at("b").get<double>();
        spec.A = j.at("A").get<double>();
        spec.node_values = j.at("values").get<std::vector<double>>();
        return interp1d_net(spec);
    }
    throw CLI::ValidationError("--type", "unknown network type " + type);
}

int run(int argc, char** argv) {
    CLI::App app{"ReLU network calculus, Lipschitz approximators, and SGD-with-restarts experiments"};
    app.require_subcommand(1);

    // --- net ---
    auto* net = app.add_subcommand("net", "construct, evaluate, or inspect networks");
    net->require_subcommand(1);

    std::string net_type = "l1", net_out, net_spec;
    int net_d = 1, net_m = 1, net_n = 1;
    auto* net_build = net->add_subcommand("build", "construct a named network");
    net_build->add_option("--type", net_type, "l1|max|identity|sum|concat|maxconv|interp")->required();
    net_build->add_option("-d,--dim", net_d, "dimension for l1/max");
    net_build->add_option("-m", net_m, "m for sum/concat");
    net_build->add_option("-n", net_n, "n for sum/concat");
    net_build->add_option("--spec", net_spec, "JSON spec file for maxconv/interp");
    net_build->add_option("-o,--out", net_out, "output file (stdout if omitted)");
    net_build->callback([&] { emit(to_json(build_named_net(net_type, net_d, net_m, net_n, net_spec)), net_out); });

    std::string eval_net_path, eval_input, eval_activation = "rect";
    double eval_u = -std::numeric_limits<double>::infinity();
    double eval_v = std::numeric_limits<double>::infinity();
    auto* net_eval = net->add_subcommand("eval", "evaluate a network on an input");
    net_eval->add_option("--net", eval_net_path, "network JSON file")->required();
    net_eval->add_option("--input", eval_input, "comma-separated input vector")->required();
    net_eval->add_option("--activation", eval_activation, "rect|identity|clip");
    net_eval->add_option("--u", eval_u, "clip lower bound");
    net_eval->add_option("--v", eval_v, "clip upper bound");
    net_eval->callback([&] {
        const StructuredNetwork network = network_from_json(read_json(eval_net_path));
        Activation act = Activation::rectifier();
        if (eval_activation == "identity") act = Activation::identity();
        else if (eval_activation == "clip") act = Activation::clip(eval_u, eval_v);
        else if (eval_activation != "rect")
            throw CLI::ValidationError("--activation", "unknown activation " + eval_activation);
        const std::vector<double> out = realize(network, act, parse_vector(eval_input));
        std::cout << json(out).dump() << '\n';
    });

    std::string info_net_path;
    auto* net_info = net->add_subcommand("info", "architecture summary of a network");
    net_info->add_option("--net", info_net_path, "network JSON file")->required();
    net_info->callback([&] {
        const StructuredNetwork network = network_from_json(read_json(info_net_path));
        const Architecture a = arch_of(network);
        const ParamVector theta = flatten(network);
        std::cout << json{{"arch", a.dims},
                          {"depth", a.depth()},
                          {"hidden_layers", a.hidden_layers()},
                          {"input_dim", a.input_dim()},
                          {"output_dim", a.output_dim()},
                          {"param_count", a.param_count()},
                          {"param_inf_norm", norm(theta.values, std::numeric_limits<double>::infinity())}}
                         .dump(2)
                  << '\n';
    });

    // --- approx ---
    auto* approx = app.add_subcommand("approx", "build a Lipschitz-function approximator");
    int ap_d = 1, ap_grid = 0;
    double ap_a = 0.0, ap_b = 1.0, ap_L = -1.0, ap_A = 0.0, ap_eps = 0.0;
    std::string ap_target = "abs-dist", ap_report, ap_csv, ap_theta_out;
    bool ap_interp = false;
    approx->add_option("-d,--dim", ap_d, "input dimension");
    approx->add_option("--a", ap_a, "domain lower endpoint");
    approx->add_option("--b", ap_b, "domain upper endpoint");
    approx->add_option("--L", ap_L, "Lipschitz constant override (defaults to the family's)");
    approx->add_option("--A", ap_A, "architecture parameter A");
    approx->add_option("--eps", ap_eps, "target accuracy (chooses A and the architecture)");
    approx->add_option("--target", ap_target, "abs-dist|l1-norm|sin-ridge|constant");
    approx->add_option("--grid", ap_grid, "measurement points per axis (default by dimension)");
    approx->add_option("--report", ap_report, "write the report JSON here (stdout if omitted)");
    approx->add_option("--csv", ap_csv, "write (x, f(x), net(x)) samples here (d <= 2)");
    approx->add_option("--theta", ap_theta_out, "write the parameter vector JSON here");
    approx->add_flag("--interp", ap_interp, "use the 1-D interpolation construction (d = 1 only)");
    approx->callback([&] {
        const HypercubeDomain dom(ap_a, ap_b, ap_d);
        TargetConfig tc;
        tc.family = ap_target;
        TargetOracle oracle = make_target(tc, dom);
        if (ap_L >= 0.0) oracle.lipschitz = ap_L;

        Architecture arch({1, 1});
        double A = ap_A;
        double bound = 0.0;
        if (ap_eps > 0.0) {
            const EpsArchitecture ea = eps_architecture(ap_d, oracle.lipschitz, ap_a, ap_b, ap_eps);
            arch = ea.arch;
            A = std::max(ea.A, 1e-12);
            bound = ap_eps;
        } else if (A > 0.0) {
            if (ap_interp) {
                const int width = static_cast<int>(std::ceil(A)) + 2;
                arch = Architecture({1, width, 1});
                bound = oracle.lipschitz * (ap_b - ap_a) / A;
            } else {
                arch = minimal_architecture(ap_d, A);
                bound = approx_bound(ap_d, oracle.lipschitz, ap_a, ap_b, A);
            }
        } else {
            throw CLI::ValidationError("--A", "provide --A or --eps");
        }

        ClipBounds clip = oracle.range_lo < oracle.range_hi
                              ? ClipBounds(oracle.range_lo, oracle.range_hi)
                              : ClipBounds(oracle.range_lo - 0.5, oracle.range_hi + 0.5);
        const ParamVector theta = ap_interp
                                      ? build_interp1d_approximator(oracle, dom, A, arch, clip)
                                      : build_approximator(oracle, dom, A, arch, clip);

        int grid = ap_grid;
        if (grid <= 1) grid = ap_d == 1 ? 10001 : (ap_d == 2 ? 101 : 21);
        const double measured = sup_error_estimate(theta, clip, oracle, dom, grid);

        ApproxReport report;
        report.architecture = arch;
        report.param_inf_norm = norm(theta.values, std::numeric_limits<double>::infinity());
        report.theoretical_bound = bound;
        report.measured_sup_error = measured;
        report.grid_resolution = grid;
        emit(json{{"schema", "approx-report/1"},
                  {"architecture", report.architecture.dims},
                  {"param_inf_norm", report.param_inf_norm},
                  {"theoretical_bound", report.theoretical_bound},
                  {"measured_sup_error", report.measured_sup_error},
                  {"grid_resolution", report.grid_resolution}},
             ap_report);
        if (!ap_theta_out.empty()) write_json(ap_theta_out, to_json(theta));

        if (!ap_csv.empty()) {
            if (ap_d > 2) throw CLI::ValidationError("--csv", "CSV emission supports d <= 2 only");
            std::ostringstream csv;
            csv.precision(17);
            csv << (ap_d == 1 ? "x,f,net\n" : "x1,x2,f,net\n");
            const int pts = ap_d == 1 ? 257 : 33;
            const double step = (ap_b - ap_a) / (pts - 1);
            std::vector<int> idx(static_cast<size_t>(ap_d), 0);
            while (true) {
                std::vector<double> x(static_cast<size_t>(ap_d));
                for (int i = 0; i < ap_d; ++i) x[static_cast<size_t>(i)] = ap_a + idx[static_cast<size_t>(i)] * step;
                for (double xv : x) csv << xv << ',';
                csv << oracle.eval(x) << ',' << realize_clipped(theta, clip, x)[0] << '\n';
                int axis = 0;
                while (axis < ap_d && ++idx[static_cast<size_t>(axis)] == pts) {
                    idx[static_cast<size_t>(axis)] = 0;
                    ++axis;
                }
                if (axis == ap_d) break;
            }
            write_text(ap_csv, csv.str());
        }
    });

    // --- train ---
    auto* train_cmd = app.add_subcommand("train", "SGD with random restarts from a JSON config");
    std::string train_config_path, train_out;
    bool train_dump_table = false;
    train_cmd->add_option("--config", train_config_path, "experiment-style JSON config")->required();
    train_cmd->add_option("-o,--out", train_out, "output file (stdout if omitted)");
    train_cmd->add_flag("--dump-table", train_dump_table, "include every stored parameter vector");
    train_cmd->callback([&] {
        ExperimentConfig cfg = experiment_config_from_json(read_json(train_config_path));
        cfg.validate();
        const TargetOracle oracle = make_target(cfg.target, cfg.domain);
        const SyntheticSource source(oracle, cfg.domain, cfg.clip, cfg.noise);
        TrainConfig train = cfg.train;
        train.master_seed = cfg.master_seed;
        const SampleSet validation = source.batch(cfg.master_seed, 0, 0, cfg.train_samples);
        const RestartTable table = sgd_restarts(train, source);
        const SelectionResult sel = select_best(table, train, validation);

        json per_restart = json::array();
        for (int k = 1; k <= table.restarts(); ++k) {
            const auto& last = table.params[static_cast<size_t>(k) - 1].back();
            json row{{"k", k},
                     {"final_step", table.steps.back()},
                     {"final_risk", empirical_risk(last, table.arch, train.clip, validation)},
                     {"seed", table.restart_seeds[static_cast<size_t>(k) - 1]}};
            if (train_dump_table) {
                json thetas = json::array();
                for (size_t s = 0; s < table.steps.size(); ++s)
                    thetas.push_back(json{{"n", table.steps[s]}, {"theta", table.theta(k, static_cast<int>(s))}});
                row["table"] = std::move(thetas);
            }
            per_restart.push_back(std::move(row));
        }
        emit(json{{"schema", "train-report/1"},
                  {"config", to_json(cfg)},
                  {"restarts", std::move(per_restart)},
                  {"selection",
                   {{"k", sel.k}, {"n", sel.n}, {"risk", sel.risk}, {"eligible", sel.eligible_count}}}},
             train_out);
    });

    // --- bounds ---
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate an overall error bound");
    std::string b_variant = "intro", b_arch = "1,8,1", b_out;
    BoundInputs bi;
    bounds_cmd->add_option("--variant", b_variant, "intro|theo-1d|cor-1d|theo-main|cor-main|cor-simple");
    bounds_cmd->add_option("--l", b_arch, "architecture, comma separated")->required();
    bounds_cmd->add_option("-d,--dim", bi.d, "input dimension");
    bounds_cmd->add_option("--M", bi.M, "sample count");
    bounds_cmd->add_option("--K", bi.K, "restart count");
    bounds_cmd->add_option("--N", bi.N, "gradient steps");
    bounds_cmd->add_option("--p", bi.p, "moment order");
    bounds_cmd->add_option("--c", bi.c, "initialization radius");
    bounds_cmd->add_option("--beta", bi.beta, "selection radius (defaults to c)");
    bounds_cmd->add_option("--u", bi.u, "clip lower bound");
    bounds_cmd->add_option("--v", bi.v, "clip upper bound");
    bounds_cmd->add_option("--L", bi.lipschitz, "Lipschitz constant");
    bounds_cmd->add_option("--a", bi.a, "domain lower endpoint");
    bounds_cmd->add_option("--b", bi.b, "domain upper endpoint");
    bounds_cmd->add_option("--A", bi.A, "architecture parameter");
    bounds_cmd->add_option("-o,--out", b_out, "output file (stdout if omitted)");
    bounds_cmd->callback([&] {
        std::vector<int> dims;
        for (double v : parse_vector(b_arch)) dims.push_back(static_cast<int>(v));
        bi.arch = Architecture(dims);
        if (!bounds_cmd->count("--beta")) bi.beta = bi.c;
        emit(to_json(overall_bound(bi, bound_variant_from_string(b_variant))), b_out);
    });

    // --- experiment ---
    auto* exp_cmd = app.add_subcommand("experiment", "full pipeline from a JSON config");
    std::string exp_config_path, exp_out, exp_csv;
    exp_cmd->add_option("--config", exp_config_path, "JSON config file")->required();
    exp_cmd->add_option("-o,--out", exp_out, "report output file (stdout if omitted)");
    exp_cmd->add_option("--csv", exp_csv, "per-repetition CSV output file");
    exp_cmd->callback([&] {
        const ExperimentConfig cfg = experiment_config_from_json(read_json(exp_config_path));
        const ExperimentReport report = run_experiment(cfg);
        emit(to_json(report), exp_out);
        if (!exp_csv.empty()) write_text(exp_csv, experiment_csv(report));
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 2;
    } catch (const lipnet::HypothesisError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
