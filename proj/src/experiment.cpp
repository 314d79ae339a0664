#include "pwframes/experiment.hpp"

#include <chrono>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pwframes/fourier_line.hpp"
#include "pwframes/upper_half_plane.hpp"

namespace pwframes {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_fields(const json& object, const std::string& scope,
                           std::initializer_list<const char*> allowed) {
    for (const auto& item : object.items()) {
        bool known = false;
        for (const char* name : allowed)
            if (item.key() == name) known = true;
        if (!known)
            throw ConfigError("unknown field '" + item.key() + "' in '" + scope + "'");
    }
}

const json& require_field(const json& object, const std::string& scope,
                          const char* name) {
    auto it = object.find(name);
    if (it == object.end())
        throw ConfigError("missing field '" + scope + "." + name + "'");
    return *it;
}

double positive_number(const json& value, const std::string& field) {
    if (!value.is_number())
        throw ConfigError("field '" + field + "' must be a number");
    const double v = value.get<double>();
    if (!(v > 0.0)) throw ConfigError("field '" + field + "' must be positive");
    return v;
}

int integer_field(const json& value, const std::string& field, int min_value) {
    if (!value.is_number_integer())
        throw ConfigError("field '" + field + "' must be an integer");
    const int v = value.get<int>();
    if (v < min_value)
        throw ConfigError("field '" + field + "' must be >= " + std::to_string(min_value));
    return v;
}

ModelConfig parse_model(const json& object) {
    reject_unknown_fields(object, "model", {"kind", "omega", "K", "rule", "K_t", "K_phi"});
    ModelConfig config;
    const std::string kind = require_field(object, "model", "kind").get<std::string>();
    if (kind == "euclid1d") {
        config.kind = ModelKind::Euclid1d;
    } else if (kind == "hyperbolic") {
        config.kind = ModelKind::Hyperbolic;
    } else {
        throw ConfigError("field 'model.kind' must be 'euclid1d' or 'hyperbolic'");
    }
    config.omega = positive_number(require_field(object, "model", "omega"), "model.omega");
    if (config.kind == ModelKind::Euclid1d) {
        config.k = integer_field(require_field(object, "model", "K"), "model.K", 2);
        if (object.contains("K_t") || object.contains("K_phi"))
            throw ConfigError("fields 'model.K_t'/'model.K_phi' are not valid for euclid1d");
        if (object.contains("rule")) {
            const std::string rule = object.at("rule").get<std::string>();
            if (rule == "midpoint")
                config.rule = QuadRule::Midpoint;
            else if (rule == "trapezoid")
                config.rule = QuadRule::Trapezoid;
            else
                throw ConfigError("field 'model.rule' must be 'midpoint' or 'trapezoid'");
        }
    } else {
        config.k_t = integer_field(require_field(object, "model", "K_t"), "model.K_t", 2);
        if (config.k_t % 2 != 0)
            throw ConfigError("field 'model.K_t' must be even (t-grid must avoid t=0)");
        config.k_phi =
            integer_field(require_field(object, "model", "K_phi"), "model.K_phi", 1);
        if (object.contains("K") || object.contains("rule"))
            throw ConfigError("fields 'model.K'/'model.rule' are not valid for hyperbolic");
    }
    return config;
}

DomainBox parse_domain(const json& object, ModelKind kind) {
    reject_unknown_fields(object, "domain", {"x", "y"});
    DomainBox box;
    const json& x = require_field(object, "domain", "x");
    if (!x.is_array() || x.size() != 2)
        throw ConfigError("field 'domain.x' must be an interval [lo, hi]");
    box.x_lo = x[0].get<double>();
    box.x_hi = x[1].get<double>();
    if (!(box.x_hi > box.x_lo))
        throw ConfigError("field 'domain.x' must be a nonempty interval");
    if (kind == ModelKind::Euclid1d) {
        if (object.contains("y"))
            throw ConfigError("field 'domain.y' is not valid for euclid1d");
        return box;
    }
    const json& y = require_field(object, "domain", "y");
    if (!y.is_array() || y.size() != 2)
        throw ConfigError("field 'domain.y' must be an interval [lo, hi]");
    box.y_lo = y[0].get<double>();
    box.y_hi = y[1].get<double>();
    if (!(box.y_lo > 0.0))
        throw ConfigError("field 'domain.y' must have a positive lower bound");
    if (!(box.y_hi > box.y_lo))
        throw ConfigError("field 'domain.y' must be a nonempty interval");
    return box;
}

MultiplierKind parse_multiplier(const json& value, const std::string& field) {
    const std::string text = value.get<std::string>();
    if (text == "shifted") return MultiplierKind::Shifted;
    if (text == "pure") return MultiplierKind::Pure;
    throw ConfigError("field '" + field + "' must be 'shifted' or 'pure'");
}

FunctionalConfig parse_functional(const json& object) {
    reject_unknown_fields(object, "functional",
                          {"kind", "n", "multiplier", "masses", "c_phi", "C_phi",
                           "sub_count", "sub_radius"});
    FunctionalConfig config;
    if (object.contains("kind")) {
        const std::string kind = object.at("kind").get<std::string>();
        if (kind == "dirac")
            config.kind = FunctionalKind::Dirac;
        else if (kind == "weighted_diracs")
            config.kind = FunctionalKind::WeightedDiracs;
        else if (kind == "ball_average")
            config.kind = FunctionalKind::BallAverage;
        else
            throw ConfigError(
                "field 'functional.kind' must be 'dirac', 'weighted_diracs' or "
                "'ball_average'");
    }
    if (object.contains("n"))
        config.n = integer_field(object.at("n"), "functional.n", 0);
    if (object.contains("multiplier"))
        config.multiplier = parse_multiplier(object.at("multiplier"), "functional.multiplier");
    if (object.contains("masses")) {
        const json& masses = object.at("masses");
        if (!masses.is_array() || masses.empty())
            throw ConfigError("field 'functional.masses' must be a nonempty array");
        config.masses.clear();
        for (const auto& m : masses)
            config.masses.push_back(positive_number(m, "functional.masses"));
    }
    if (object.contains("c_phi"))
        config.c_phi = positive_number(object.at("c_phi"), "functional.c_phi");
    if (object.contains("C_phi"))
        config.big_c_phi = positive_number(object.at("C_phi"), "functional.C_phi");
    if (config.big_c_phi < config.c_phi)
        throw ConfigError("field 'functional.C_phi' must be >= 'functional.c_phi'");
    if (object.contains("sub_count"))
        config.sub_count = integer_field(object.at("sub_count"), "functional.sub_count", 1);
    if (object.contains("sub_radius"))
        config.sub_radius =
            positive_number(object.at("sub_radius"), "functional.sub_radius");
    return config;
}

SolverConfig parse_solver(const json& object) {
    reject_unknown_fields(object, "solver", {"tol", "max_iter", "accelerated"});
    SolverConfig config;
    if (object.contains("tol"))
        config.tol = positive_number(object.at("tol"), "solver.tol");
    if (object.contains("max_iter"))
        config.max_iter = integer_field(object.at("max_iter"), "solver.max_iter", 0);
    if (object.contains("accelerated")) {
        if (!object.at("accelerated").is_boolean())
            throw ConfigError("field 'solver.accelerated' must be a boolean");
        config.accelerated = object.at("accelerated").get<bool>();
    }
    return config;
}

SweepConfig parse_sweep(const json& object) {
    reject_unknown_fields(object, "sweep", {"rho", "n", "multiplier"});
    SweepConfig config;
    if (object.contains("rho"))
        for (const auto& r : object.at("rho"))
            config.rho.push_back(positive_number(r, "sweep.rho"));
    if (object.contains("n"))
        for (const auto& n : object.at("n"))
            config.n.push_back(integer_field(n, "sweep.n", 0));
    if (object.contains("multiplier"))
        for (const auto& m : object.at("multiplier"))
            config.multiplier.push_back(parse_multiplier(m, "sweep.multiplier"));
    return config;
}

std::string format_number(double v) { return json(v).dump(); }

}  // namespace

ExperimentConfig load_config_string(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    reject_unknown_fields(root, "config",
                          {"model", "domain", "rho", "candidate_count", "functional",
                           "solver", "trials", "seed", "sweep"});

    ExperimentConfig config;
    if (!root.contains("model")) throw ConfigError("missing field 'model'");
    config.model = parse_model(root.at("model"));
    if (!root.contains("domain")) throw ConfigError("missing field 'domain'");
    config.domain = parse_domain(root.at("domain"), config.model.kind);
    if (!root.contains("rho")) throw ConfigError("missing field 'rho'");
    config.rho = positive_number(root.at("rho"), "rho");
    if (root.contains("candidate_count"))
        config.candidate_count =
            integer_field(root.at("candidate_count"), "candidate_count", 0);
    if (root.contains("functional")) config.functional = parse_functional(root.at("functional"));
    if (root.contains("solver")) config.solver = parse_solver(root.at("solver"));
    if (root.contains("trials"))
        config.trials = integer_field(root.at("trials"), "trials", 1);
    if (root.contains("seed")) {
        if (!root.at("seed").is_number_integer())
            throw ConfigError("field 'seed' must be an integer");
        config.seed = root.at("seed").get<std::uint64_t>();
    }
    if (root.contains("sweep")) config.sweep = parse_sweep(root.at("sweep"));

    const bool any_pure =
        config.functional.multiplier == MultiplierKind::Pure ||
        (config.sweep && std::any_of(config.sweep->multiplier.begin(),
                                     config.sweep->multiplier.end(),
                                     [](MultiplierKind m) { return m == MultiplierKind::Pure; }));
    if (any_pure && config.model.kind == ModelKind::Euclid1d)
        throw ConfigError("field 'functional.multiplier' = 'pure' requires model.kind = 'hyperbolic'");
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_config_string(buffer.str());
}

ModelPtr build_model(const ModelConfig& config) {
    if (config.kind == ModelKind::Euclid1d)
        return build_fourier_model(config.omega, config.k, config.rule);
    return build_helgason_model(config.omega, config.k_t, config.k_phi);
}

namespace {

struct PipelineCell {
    ModelPtr model;
    Lattice lattice;
    FrameSystem frame;
};

PipelineCell run_pipeline(const ExperimentConfig& config, double rho, int n,
                          MultiplierKind multiplier) {
    ModelPtr model = build_model(config.model);
    Lattice lattice =
        build_lattice(*model, config.domain, rho, config.candidate_count, config.seed);
    FamilyParams params;
    params.masses = config.functional.masses;
    params.sub_count = config.functional.sub_count;
    params.sub_radius = config.functional.sub_radius;
    const FunctionalFamily family =
        make_functional_family(*model, lattice, config.functional.kind, params, n,
                               config.functional.c_phi, config.functional.big_c_phi,
                               config.seed + 101);
    FrameSystem frame = build_frame(family, model, multiplier);
    return PipelineCell{std::move(model), std::move(lattice), std::move(frame)};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path.string());
    out << text;
}

}  // namespace

CommandResult cmd_lattice(const ExperimentConfig& config, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const ModelPtr model = build_model(config.model);
    const Lattice lattice = build_lattice(*model, config.domain, config.rho,
                                          config.candidate_count, config.seed);
    fs::create_directories(out_dir);

    std::ostringstream csv;
    write_lattice_csv(lattice, model->point_kind(), csv);
    write_text_file(fs::path(out_dir) / "lattice.csv", csv.str());

    ordered_json cert;
    cert["rho"] = lattice.rho;
    cert["count"] = lattice.points.size();
    cert["min_pairwise_distance"] = lattice.certificate.min_pairwise_distance;
    cert["covering_radius"] = lattice.certificate.covering_radius;
    cert["multiplicity_bound"] = lattice.certificate.multiplicity_bound;
    write_text_file(fs::path(out_dir) / "lattice_certificate.json", cert.dump(2) + "\n");

    return {0, "lattice with " + std::to_string(lattice.points.size()) + " points"};
}

CommandResult cmd_reconstruct(const ExperimentConfig& config, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const auto t0 = std::chrono::steady_clock::now();
    const PipelineCell cell =
        run_pipeline(config, config.rho, config.functional.n, config.functional.multiplier);
    fs::create_directories(out_dir);

    ReconstructionReport report;
    report.lower = cell.frame.bounds().lower;
    report.upper = cell.frame.bounds().upper;
    report.contraction = cell.frame.contraction();

    int exit_code = 0;
    std::string message;
    if (!cell.frame.certified()) {
        report.flags.push_back("not_certified");
        exit_code = 2;
        message = "frame not certified (J=" + std::to_string(cell.frame.size()) +
                  ", K=" + std::to_string(cell.model->node_count()) + ")";
    } else {
        const PwFunction truth = random_pw(cell.model, config.seed + 202);
        const Eigen::VectorXcd samples = analysis(cell.frame, truth);
        const SolverMode mode = config.solver.accelerated ? SolverMode::ConjugateGradient
                                                          : SolverMode::Richardson;
        reconstruct(cell.frame, samples, config.solver.tol, config.solver.max_iter, mode,
                    &truth, &report);
        message = "rel_error=" + format_number(report.rel_error);
    }

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    write_text_file(fs::path(out_dir) / "report.json",
                    reconstruction_report_json(report, ms) + "\n");
    return {exit_code, message};
}

CommandResult cmd_sweep(const ExperimentConfig& config, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::vector<double> rhos = {config.rho};
    std::vector<int> orders = {config.functional.n};
    std::vector<MultiplierKind> multipliers = {config.functional.multiplier};
    if (config.sweep) {
        if (!config.sweep->rho.empty()) rhos = config.sweep->rho;
        if (!config.sweep->n.empty()) orders = config.sweep->n;
        if (!config.sweep->multiplier.empty()) multipliers = config.sweep->multiplier;
    }
    std::sort(rhos.begin(), rhos.end());
    std::sort(orders.begin(), orders.end());

    std::ostringstream csv;
    csv << "rho,n,multiplier,A,B,contraction,iterations,rel_error,certified\n";
    for (double rho : rhos) {
        for (int n : orders) {
            for (MultiplierKind multiplier : multipliers) {
                const PipelineCell cell = run_pipeline(config, rho, n, multiplier);
                ReconstructionReport report;
                report.lower = cell.frame.bounds().lower;
                report.upper = cell.frame.bounds().upper;
                report.contraction = cell.frame.contraction();
                if (cell.frame.certified()) {
                    const PwFunction truth = random_pw(cell.model, config.seed + 202);
                    const Eigen::VectorXcd samples = analysis(cell.frame, truth);
                    const SolverMode mode = config.solver.accelerated
                                                ? SolverMode::ConjugateGradient
                                                : SolverMode::Richardson;
                    reconstruct(cell.frame, samples, config.solver.tol,
                                config.solver.max_iter, mode, &truth, &report);
                }
                csv << format_number(rho) << ',' << n << ','
                    << (multiplier == MultiplierKind::Shifted ? "shifted" : "pure") << ','
                    << format_number(report.lower) << ',' << format_number(report.upper)
                    << ',' << format_number(report.contraction) << ',' << report.iterations
                    << ','
                    << (std::isfinite(report.rel_error) ? format_number(report.rel_error)
                                                        : "nan")
                    << ',' << (cell.frame.certified() ? "true" : "false") << '\n';
            }
        }
    }
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "sweep.csv", csv.str());
    return {0, "sweep with " +
                   std::to_string(rhos.size() * orders.size() * multipliers.size()) +
                   " cells"};
}

}  // namespace pwframes
