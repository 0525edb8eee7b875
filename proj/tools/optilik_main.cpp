#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "optilik/bench.hpp"
#include "optilik/io.hpp"

namespace {

using nlohmann::json;
using namespace optilik;

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsageError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Vector parse_vector(const std::string& text) {
    Vector out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw UsageError("--x expects comma-separated numbers, got '" + cell + "'");
        }
    }
    if (out.empty()) throw UsageError("--x must contain at least one coordinate");
    return out;
}

bool is_kernel_method(const std::string& method) {
    return method == "kernel-exp" || method == "kernel-uni" || method == "kernel-epa";
}

KernelKind kernel_kind_from_cli(const std::string& method) {
    if (method == "kernel-exp") return KernelKind::Exponential;
    if (method == "kernel-uni") return KernelKind::Uniform;
    return KernelKind::Epanechnikov;
}

// Builds the method spec from CLI flags, enforcing that exactly the right
// hyper-parameter flag is present.
MethodSpec method_from_flags(const std::string& method, std::optional<double> radius,
                             std::optional<double> width, GroundMetric metric) {
    if (is_kernel_method(method)) {
        if (radius) throw UsageError("--radius does not apply to kernel methods; use --width");
        if (!width) throw UsageError("--width is required for kernel methods");
        return KernelMethod{{kernel_kind_from_cli(method), *width}, metric};
    }
    AmbiguityFamily family;
    try {
        family = ambiguity_family_from_name(method);
    } catch (const std::invalid_argument& error) {
        throw UsageError(error.what());
    }
    if (width) throw UsageError("--width applies only to kernel methods; use --radius");
    if (family == AmbiguityFamily::Moment) {
        if (radius) throw UsageError("--radius does not apply to the moment method");
        return AmbiguitySpec{family, 0.0, metric};
    }
    if (!radius) throw UsageError("--radius is required for method '" + method + "'");
    return AmbiguitySpec{family, *radius, metric};
}

// --- strict JSON config helpers -------------------------------------------

void reject_unknown_fields(const json& object, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        if (!allowed.count(key)) throw UsageError("config error at " + where + key + ": unknown field");
    }
}

double get_number(const json& object, const std::string& key, double fallback,
                  const std::string& where) {
    if (!object.contains(key)) return fallback;
    if (!object.at(key).is_number()) throw UsageError("config error at " + where + key + ": expected a number");
    return object.at(key).get<double>();
}

int get_int(const json& object, const std::string& key, int fallback, const std::string& where) {
    if (!object.contains(key)) return fallback;
    if (!object.at(key).is_number_integer())
        throw UsageError("config error at " + where + key + ": expected an integer");
    return object.at(key).get<int>();
}

bool get_bool(const json& object, const std::string& key, bool fallback, const std::string& where) {
    if (!object.contains(key)) return fallback;
    if (!object.at(key).is_boolean()) throw UsageError("config error at " + where + key + ": expected a boolean");
    return object.at(key).get<bool>();
}

std::string get_string(const json& object, const std::string& key, const std::string& fallback,
                       const std::string& where) {
    if (!object.contains(key)) return fallback;
    if (!object.at(key).is_string()) throw UsageError("config error at " + where + key + ": expected a string");
    return object.at(key).get<std::string>();
}

std::vector<double> get_number_array(const json& object, const std::string& key,
                                     std::vector<double> fallback, const std::string& where) {
    if (!object.contains(key)) return fallback;
    if (!object.at(key).is_array()) throw UsageError("config error at " + where + key + ": expected an array");
    std::vector<double> out;
    std::size_t i = 0;
    for (const auto& item : object.at(key)) {
        if (!item.is_number())
            throw UsageError("config error at " + where + key + "[" + std::to_string(i) + "]: expected a number");
        out.push_back(item.get<double>());
        ++i;
    }
    return out;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    json config;
    try {
        in >> config;
    } catch (const json::parse_error& error) {
        throw UsageError(std::string("config is not valid JSON: ") + error.what());
    }
    if (!config.is_object()) throw UsageError("config error at <root>: expected an object");
    return config;
}

// --- subcommand state ------------------------------------------------------

struct LikelihoodArgs {
    std::string samples_path;
    std::string x_text;
    std::string method;
    std::string metric = "l2";
    std::optional<double> radius;
    std::optional<double> width;
    bool emit_transport = false;
};

struct PosteriorArgs {
    std::string data_path;
    std::string x_text;
    std::string method;
    std::string metric = "l2";
    std::optional<double> radius;
    std::optional<double> width;
    bool standardize = false;
};

struct ExperimentArgs {
    std::string kind;
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

int run_likelihood(const LikelihoodArgs& args) {
    const auto samples = read_points_csv(args.samples_path);
    const DiscreteMeasure center = empirical_measure(samples);
    const Observation x(parse_vector(args.x_text));
    const GroundMetric metric = metric_from_name(args.metric);
    const MethodSpec method = method_from_flags(args.method, args.radius, args.width, metric);

    if (args.emit_transport) {
        if (!std::holds_alternative<AmbiguitySpec>(method) ||
            std::get<AmbiguitySpec>(method).family != AmbiguityFamily::Wasserstein) {
            throw UsageError("--emit-transport applies only to --method wasserstein");
        }
        const auto& spec = std::get<AmbiguitySpec>(method);
        const auto [value, transport] = optimistic_likelihood_wasserstein({center, spec.radius, metric}, x);
        std::string out = "{\"value\": " + format_double(value) + ", \"transport\": [";
        for (std::size_t j = 0; j < transport.values.size(); ++j) {
            out += format_double(transport.values[j]);
            if (j + 1 < transport.values.size()) out += ", ";
        }
        out += "]}";
        std::cout << out << "\n";
        return kExitOk;
    }

    const LikelihoodEngine engine(method, center);
    std::cout << format_double(engine.likelihood(x)) << "\n";
    return kExitOk;
}

int run_posterior(const PosteriorArgs& args) {
    const LabeledDataset dataset = read_labeled_csv(args.data_path);
    const Observation x(parse_vector(args.x_text));
    const GroundMetric metric = metric_from_name(args.metric);
    const MethodSpec method = method_from_flags(args.method, args.radius, args.width, metric);

    FitOptions options;
    options.standardize = args.standardize;
    const ClassModel model = fit(dataset, method, options);
    const auto likelihoods = class_likelihoods(model, x);
    const auto [posterior, objective] = surrogate_posterior(model.prior, likelihoods);

    std::string out = "{\"labels\": [";
    for (std::size_t i = 0; i < model.labels.size(); ++i) {
        out += "\"" + model.labels[i] + "\"";
        if (i + 1 < model.labels.size()) out += ", ";
    }
    const auto append_array = [&](const std::string& name, const std::vector<double>& values) {
        out += "], \"" + name + "\": [";
        for (std::size_t i = 0; i < values.size(); ++i) {
            out += format_double(values[i]);
            if (i + 1 < values.size()) out += ", ";
        }
    };
    append_array("prior", model.prior.entries());
    append_array("likelihoods", likelihoods);
    append_array("posterior", posterior.entries());
    out += "], \"objective\": " + format_double(objective) + "}";
    std::cout << out << "\n";
    return kExitOk;
}

// hyper_optional: accept a missing radius/width as a to-be-tuned placeholder.
MethodSpec method_from_json(const json& entry, GroundMetric metric, const std::string& where,
                            bool hyper_optional) {
    std::string name;
    std::optional<double> radius;
    std::optional<double> width;
    if (entry.is_string()) {
        name = entry.get<std::string>();
        if (!hyper_optional && name != "moment")
            throw UsageError("config error at " + where + ": expected an object with a radius/width");
    } else if (entry.is_object()) {
        reject_unknown_fields(entry, {"method", "radius", "width"}, where + ".");
        name = get_string(entry, "method", "", where + ".");
        if (name.empty()) throw UsageError("config error at " + where + ".method: required");
        if (entry.contains("radius")) radius = get_number(entry, "radius", 0.0, where + ".");
        if (entry.contains("width")) width = get_number(entry, "width", 1.0, where + ".");
    } else {
        throw UsageError("config error at " + where + ": expected a string or object");
    }
    if (hyper_optional) {
        if (is_kernel_method(name) && !width) width = 1.0;
        if (!is_kernel_method(name) && name != "moment" && !radius) radius = 0.0;
    }
    try {
        return method_from_flags(name, radius, width, metric);
    } catch (const UsageError& error) {
        throw UsageError("config error at " + where + ": " + error.what());
    } catch (const std::invalid_argument& error) {
        throw UsageError("config error at " + where + ": " + error.what());
    }
}

int run_experiment(const ExperimentArgs& args) {
    const json config = load_config(args.config_path);
    ExperimentReport report;

    if (args.kind == "beta-binomial") {
        reject_unknown_fields(config,
                              {"alpha", "beta", "draws", "grid_size", "theta_true", "sample_counts",
                               "radius_grid", "repetitions", "seed", "methods"},
                              "");
        BetaBinomialConfig bb;
        bb.alpha = get_number(config, "alpha", bb.alpha, "");
        bb.beta = get_number(config, "beta", bb.beta, "");
        bb.draws = get_int(config, "draws", bb.draws, "");
        bb.grid_size = get_int(config, "grid_size", bb.grid_size, "");
        bb.theta_true = get_number(config, "theta_true", bb.theta_true, "");
        bb.repetitions = get_int(config, "repetitions", bb.repetitions, "");
        bb.seed = static_cast<std::uint64_t>(get_int(config, "seed", static_cast<int>(bb.seed), ""));
        if (config.contains("sample_counts")) {
            bb.sample_counts.clear();
            for (double v : get_number_array(config, "sample_counts", {}, "")) {
                bb.sample_counts.push_back(static_cast<int>(v));
            }
        }
        bb.radius_grid = get_number_array(config, "radius_grid", bb.radius_grid, "");
        if (args.seed) bb.seed = *args.seed;

        std::vector<std::string> methods = {"kl", "wasserstein", "kernel-exp"};
        if (config.contains("methods")) {
            if (!config.at("methods").is_array()) throw UsageError("config error at methods: expected an array");
            methods.clear();
            for (const auto& item : config.at("methods")) {
                if (!item.is_string()) throw UsageError("config error at methods: expected strings");
                methods.push_back(item.get<std::string>());
            }
        }
        bool first = true;
        for (const auto& name : methods) {
            const auto part = run_beta_binomial(bb, beta_binomial_method_from_name(name));
            if (first) {
                report = part;
                report.config["methods"] = methods;
                first = false;
            } else {
                report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
            }
        }
    } else if (args.kind == "classify") {
        reject_unknown_fields(config,
                              {"dataset", "methods", "folds", "trials", "train_fraction", "standardize",
                               "grid", "metric", "seed"},
                              "");
        const std::string dataset_path = get_string(config, "dataset", "", "");
        if (dataset_path.empty()) throw UsageError("config error at dataset: required");
        const GroundMetric metric = metric_from_name(get_string(config, "metric", "l2", ""));

        ClassificationConfig cc;
        cc.folds = get_int(config, "folds", cc.folds, "");
        cc.trials = get_int(config, "trials", cc.trials, "");
        cc.train_fraction = get_number(config, "train_fraction", cc.train_fraction, "");
        cc.standardize = get_bool(config, "standardize", cc.standardize, "");
        cc.seed = static_cast<std::uint64_t>(get_int(config, "seed", static_cast<int>(cc.seed), ""));
        if (config.contains("grid")) cc.grid = make_tuning_grid(get_number_array(config, "grid", {}, ""));
        if (args.seed) cc.seed = *args.seed;

        if (!config.contains("methods")) throw UsageError("config error at methods: required");
        if (!config.at("methods").is_array()) throw UsageError("config error at methods: expected an array");
        std::size_t index = 0;
        for (const auto& item : config.at("methods")) {
            cc.methods.push_back(method_from_json(item, metric, "methods[" + std::to_string(index) + "]", true));
            ++index;
        }

        const LabeledDataset dataset = read_labeled_csv(dataset_path);
        report = run_classification(dataset, cc);
        report.config["dataset"] = dataset_path;
    } else if (args.kind == "curve") {
        reject_unknown_fields(
            config, {"points", "weights", "samples", "methods", "metric", "grid_min", "grid_max", "grid_step"},
            "");
        const GroundMetric metric = metric_from_name(get_string(config, "metric", "l2", ""));

        std::optional<DiscreteMeasure> center;
        if (config.contains("samples")) {
            std::vector<Vector> samples;
            for (const auto& row : config.at("samples")) samples.push_back(row.get<Vector>());
            center = empirical_measure(samples);
        } else if (config.contains("points") && config.contains("weights")) {
            std::vector<Vector> points;
            for (const auto& row : config.at("points")) points.push_back(row.get<Vector>());
            center = DiscreteMeasure(points, get_number_array(config, "weights", {}, ""));
        } else {
            throw UsageError("config error at points/samples: provide either samples or points+weights");
        }

        CurveConfig curve;
        curve.grid_min = get_number(config, "grid_min", curve.grid_min, "");
        curve.grid_max = get_number(config, "grid_max", curve.grid_max, "");
        curve.grid_step = get_number(config, "grid_step", curve.grid_step, "");
        if (!config.contains("methods")) throw UsageError("config error at methods: required");
        std::size_t index = 0;
        for (const auto& item : config.at("methods")) {
            curve.methods.push_back(method_from_json(item, metric, "methods[" + std::to_string(index) + "]", false));
            ++index;
        }
        report = likelihood_curve(*center, curve);
    } else {
        throw UsageError("unknown experiment kind: " + args.kind);
    }

    write_text_file(args.out_path, report.to_csv());
    write_text_file(args.out_path + ".json", report.to_json().dump(2) + "\n");
    std::cout << args.kind << ": wrote " << report.rows.size() << " rows to " << args.out_path << " and "
              << args.out_path << ".json\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimistic likelihood estimation over ambiguity sets"};
    app.require_subcommand(1);

    LikelihoodArgs likelihood_args;
    auto* likelihood_cmd = app.add_subcommand("likelihood", "evaluate a likelihood approximation at a point");
    likelihood_cmd->add_option("--samples", likelihood_args.samples_path, "CSV of sample points")->required();
    likelihood_cmd->add_option("--x", likelihood_args.x_text, "observation, comma-separated")->required();
    likelihood_cmd
        ->add_option("--method", likelihood_args.method,
                     "kl|hellinger|chi2|tv|moment|wasserstein|kernel-exp|kernel-uni|kernel-epa")
        ->required();
    likelihood_cmd->add_option("--metric", likelihood_args.metric, "l1|l2|linf (default l2)");
    double radius_flag = 0.0, width_flag = 0.0;
    auto* radius_opt = likelihood_cmd->add_option("--radius", radius_flag, "ambiguity radius");
    auto* width_opt = likelihood_cmd->add_option("--width", width_flag, "kernel width");
    likelihood_cmd->add_flag("--emit-transport", likelihood_args.emit_transport,
                             "print the optimal transport allocation as JSON");

    PosteriorArgs posterior_args;
    auto* posterior_cmd = app.add_subcommand("posterior", "posterior over classes at a point");
    posterior_cmd->add_option("--data", posterior_args.data_path, "labeled CSV (last column = label)")->required();
    posterior_cmd->add_option("--x", posterior_args.x_text, "observation, comma-separated")->required();
    posterior_cmd->add_option("--method", posterior_args.method, "likelihood method")->required();
    posterior_cmd->add_option("--metric", posterior_args.metric, "l1|l2|linf (default l2)");
    double posterior_radius = 0.0, posterior_width = 0.0;
    auto* posterior_radius_opt = posterior_cmd->add_option("--radius", posterior_radius, "ambiguity radius");
    auto* posterior_width_opt = posterior_cmd->add_option("--width", posterior_width, "kernel width");
    posterior_cmd->add_flag("--standardize", posterior_args.standardize, "z-score features");

    ExperimentArgs experiment_args;
    auto* experiment_cmd = app.add_subcommand("experiment", "run a reproduction harness");
    experiment_cmd->add_option("kind", experiment_args.kind, "beta-binomial|classify|curve")->required();
    experiment_cmd->add_option("--config", experiment_args.config_path, "JSON config")->required();
    experiment_cmd->add_option("--out", experiment_args.out_path, "output path (CSV; JSON sibling)")->required();
    std::uint64_t seed_flag = 0;
    auto* seed_opt = experiment_cmd->add_option("--seed", seed_flag, "override the config seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return kExitUsageError;
    }

    try {
        if (likelihood_cmd->parsed()) {
            if (radius_opt->count() > 0) likelihood_args.radius = radius_flag;
            if (width_opt->count() > 0) likelihood_args.width = width_flag;
            return run_likelihood(likelihood_args);
        }
        if (posterior_cmd->parsed()) {
            if (posterior_radius_opt->count() > 0) posterior_args.radius = posterior_radius;
            if (posterior_width_opt->count() > 0) posterior_args.width = posterior_width;
            return run_posterior(posterior_args);
        }
        if (seed_opt->count() > 0) experiment_args.seed = seed_flag;
        return run_experiment(experiment_args);
    } catch (const UsageError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsageError;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitDomainError;
    }
}
