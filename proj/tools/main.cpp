// quantropy command line: reports, verification suites, parameter sweeps and
// regulator convergence studies. Machine output goes to --out or stdout;
// diagnostics go to stderr.
//
// Exit codes: 0 success, 1 verification/analogy failure, 2 config or parse
// error, 3 numerical failure.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "quantropy/ensemble.hpp"
#include "quantropy/errors.hpp"
#include "quantropy/free_particle.hpp"
#include "quantropy/io.hpp"
#include "quantropy/oscillatory.hpp"
#include "quantropy/parallel.hpp"
#include "quantropy/thermo.hpp"
#include "quantropy/verification.hpp"

namespace {

using quantropy::Classicality;
using quantropy::Complex;
using quantropy::EnsembleReport;
using quantropy::FreeParticleModel;
using quantropy::HistorySpace;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::size_t history_cap_from_env() {
    const char* raw = std::getenv("QUANTROPY_MAX_HISTORIES");
    if (raw == nullptr || *raw == '\0') return quantropy::kDefaultMaxHistories;
    char* end = nullptr;
    const double value = std::strtod(raw, &end);
    if (end == raw || !(value >= 1.0)) {
        throw ConfigError("QUANTROPY_MAX_HISTORIES must be a positive number");
    }
    return static_cast<std::size_t>(value);
}

// A model source is either a free-particle config or a history space,
// given inline or as a path; distinguished by the top-level JSON keys.
using Model = std::variant<FreeParticleModel, HistorySpace>;

Model parse_model(const std::string& source) {
    if (source.empty()) return FreeParticleModel{};
    std::string text = source;
    if (source.find('{') == std::string::npos) {
        std::ifstream in(source);
        if (!in) throw ConfigError("cannot open model file " + source);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("model is not valid JSON: ") + e.what());
    }
    try {
        if (doc.is_object() && doc.contains("histories")) {
            return quantropy::history_space_from_json(text);
        }
        if (doc.is_object() && doc.contains("n")) {
            return quantropy::model_from_json(text);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError(
        "model JSON must carry either \"histories\" or a free-particle \"n\"");
}

Complex parse_complex_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ConfigError("expected \"re,im\", got " + text);
    }
    try {
        return {std::stod(text.substr(0, comma)),
                std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ConfigError("expected \"re,im\", got " + text);
    }
}

struct LambdaFlags {
    std::optional<double> hbar;
    std::optional<std::string> lambda;
    std::optional<double> beta;

    std::optional<Classicality> resolve() const {
        const int given = (hbar ? 1 : 0) + (lambda ? 1 : 0) + (beta ? 1 : 0);
        if (given > 1) {
            throw ConfigError("give at most one of --hbar, --lambda, --beta");
        }
        try {
            if (hbar) return Classicality::from_hbar(*hbar);
            if (beta) return Classicality::from_beta(*beta);
            if (lambda) {
                return Classicality::from_lambda(parse_complex_pair(*lambda));
            }
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        return std::nullopt;
    }
};

void write_output(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + out_path);
    out << payload;
}

std::string csv_cell(double value) { return quantropy::format_double(value); }

std::string report_csv(const std::optional<int>& n,
                       const std::optional<double>& hbar,
                       const EnsembleReport& rep, const std::string& error) {
    std::ostringstream row;
    row << (n ? std::to_string(*n) : "") << ',';
    row << (hbar ? csv_cell(*hbar) : "") << ',';
    const Complex lam = rep.lambda.lambda();
    row << csv_cell(lam.real()) << ',' << csv_cell(lam.imag()) << ',';
    for (const Complex& value :
         {rep.log_Z, rep.expected_action, rep.quantropy, rep.free_action}) {
        row << csv_cell(value.real()) << ',' << csv_cell(value.imag()) << ',';
    }
    row << error << '\n';
    return row.str();
}

const char* kSweepHeader =
    "n,hbar,lambda_re,lambda_im,lnZ_re,lnZ_im,EA_re,EA_im,Q_re,Q_im,Phi_re,"
    "Phi_im,error\n";

// ---------------------------------------------------------------------------
// report

struct ReportArgs {
    std::string model;
    LambdaFlags lambda;
    std::string out;
    std::string format = "json";
    std::string method = "closed";
    int grid_points = 2048;
    double grid_epsilon = 0.036;
    int grid_levels = 3;
};

int run_report(const ReportArgs& args) {
    const Model model = parse_model(args.model);
    std::optional<Classicality> lambda = args.lambda.resolve();

    EnsembleReport rep = [&]() -> EnsembleReport {
        if (std::holds_alternative<FreeParticleModel>(model)) {
            const auto& fp = std::get<FreeParticleModel>(model);
            fp.validate();
            const Classicality lam = lambda ? *lambda : fp.classicality();
            if (args.method == "closed") {
                return quantropy::closed_form_report(fp, lam);
            }
            quantropy::QuadratureOptions quad;
            quad.grid_points = args.grid_points;
            quad.epsilon = lam.is_real() ? 0.0 : args.grid_epsilon;
            quad.levels = lam.is_real() ? 1 : args.grid_levels;
            quad.max_histories = history_cap_from_env();
            // Tensor grid while it fits under the cap, per-axis
            // factorization beyond that.
            quad.factorized =
                fp.n > 1 && fp.n * std::log(static_cast<double>(
                                       quad.grid_points)) >
                                std::log(static_cast<double>(
                                    quad.max_histories));
            return quantropy::quadrature_report(fp, lam, quad).report;
        }
        if (!lambda) {
            throw ConfigError(
                "history-space models need --hbar, --lambda or --beta");
        }
        return quantropy::report(std::get<HistorySpace>(model), *lambda);
    }();

    std::string payload;
    if (args.format == "json") {
        std::string body = quantropy::report_to_json(rep);
        if (std::holds_alternative<HistorySpace>(model) &&
            rep.lambda.is_real()) {
            const quantropy::ThermalReport thermal = quantropy::boltzmann_report(
                std::get<HistorySpace>(model), rep.lambda.lambda().real());
            nlohmann::ordered_json doc = nlohmann::ordered_json::parse(body);
            doc["thermal"] = nlohmann::ordered_json::parse(
                quantropy::thermal_report_to_json(thermal));
            body = doc.dump(2) + "\n";
        }
        payload = body;
    } else if (args.format == "csv") {
        std::optional<int> n;
        if (std::holds_alternative<FreeParticleModel>(model)) {
            n = std::get<FreeParticleModel>(model).n;
        }
        payload = std::string(kSweepHeader) +
                  report_csv(n, rep.lambda.hbar(), rep, "");
    } else {
        throw ConfigError("unknown format " + args.format);
    }
    write_output(payload, args.out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::uint64_t seed = 42;
    std::vector<std::string> tolerances;
    bool negative_control = false;
    std::string out;
};

int run_verify(const VerifyArgs& args) {
    quantropy::VerifyOptions options;
    options.seed = args.seed;
    options.negative_control = args.negative_control;
    for (const std::string& spec : args.tolerances) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected --tol name=value, got " + spec);
        }
        try {
            options.tolerances[spec.substr(0, eq)] =
                std::stod(spec.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("bad tolerance value in " + spec);
        }
    }

    const std::vector<quantropy::SuiteResult> suites =
        quantropy::run_all_suites(options);
    write_output(quantropy::suites_to_json(options.seed, suites), args.out);

    std::vector<std::string> failed;
    for (const auto& suite : suites) {
        if (!suite.passed) failed.push_back(suite.name);
    }
    if (!failed.empty()) {
        std::cerr << "verification failed:";
        for (const auto& name : failed) std::cerr << ' ' << name;
        std::cerr << '\n';
        return kExitVerifyFailed;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct GridSpec {
    std::string variable;
    std::vector<double> values;
};

GridSpec parse_grid(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("expected --grid var=v1,v2,... or var=lo:hi");
    }
    GridSpec grid;
    grid.variable = text.substr(0, eq);
    if (grid.variable != "hbar" && grid.variable != "n" &&
        grid.variable != "beta") {
        throw ConfigError("grid variable must be hbar, n or beta");
    }
    const std::string body = text.substr(eq + 1);
    if (body.empty()) throw ConfigError("empty grid");
    try {
        if (body.find(':') != std::string::npos) {
            // lo:hi inclusive integer range (step 1).
            const auto colon = body.find(':');
            const long lo = std::stol(body.substr(0, colon));
            const long hi = std::stol(body.substr(colon + 1));
            if (hi < lo) throw ConfigError("grid range must be increasing");
            for (long v = lo; v <= hi; ++v) {
                grid.values.push_back(static_cast<double>(v));
            }
        } else {
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) grid.values.push_back(std::stod(item));
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse grid values in " + text);
    }
    if (grid.values.empty()) throw ConfigError("empty grid");
    for (double v : grid.values) {
        if (!std::isfinite(v)) throw ConfigError("grid values must be finite");
    }
    const bool increasing = grid.values.size() < 2 ||
                            grid.values[1] > grid.values[0];
    for (std::size_t i = 1; i < grid.values.size(); ++i) {
        const bool step_up = grid.values[i] > grid.values[i - 1];
        if (step_up != increasing || grid.values[i] == grid.values[i - 1]) {
            throw ConfigError("grid values must be strictly monotone");
        }
    }
    return grid;
}

struct SweepArgs {
    std::string model;
    std::string grid;
    LambdaFlags lambda;
    std::string out;
};

int run_sweep(const SweepArgs& args) {
    const GridSpec grid = parse_grid(args.grid);
    const Model model = parse_model(args.model);
    const std::optional<Classicality> base_lambda = args.lambda.resolve();

    if (grid.variable == "n" &&
        !std::holds_alternative<FreeParticleModel>(model)) {
        throw ConfigError("an n grid needs a free-particle model");
    }

    struct Row {
        std::optional<int> n;
        std::optional<double> hbar;
        std::optional<EnsembleReport> report;
        Complex lambda;
        std::string error;
    };
    std::vector<Row> rows(grid.values.size());

    quantropy::parallel_for(grid.values.size(), [&](std::size_t i) {
        Row& row = rows[i];
        try {
            const double value = grid.values[i];
            Classicality lam = Classicality::from_beta(1.0);
            FreeParticleModel fp;
            bool is_fp = std::holds_alternative<FreeParticleModel>(model);
            if (is_fp) fp = std::get<FreeParticleModel>(model);

            if (grid.variable == "hbar") {
                lam = Classicality::from_hbar(value);
                row.hbar = value;
            } else if (grid.variable == "beta") {
                lam = Classicality::from_beta(value);
            } else {  // n
                if (value < 1.0 || value != std::floor(value)) {
                    throw ConfigError("n grid values must be integers >= 1");
                }
                fp.n = static_cast<int>(value);
                lam = base_lambda ? *base_lambda : fp.classicality();
                row.hbar = lam.hbar() ? std::optional<double>(*lam.hbar())
                                      : std::nullopt;
            }
            row.lambda = lam.lambda();
            if (is_fp) {
                row.n = fp.n;
                row.report = quantropy::closed_form_report(fp, lam);
            } else {
                row.report =
                    quantropy::report(std::get<HistorySpace>(model), lam);
            }
        } catch (const std::exception& e) {
            std::string what = e.what();
            for (char& c : what) {
                if (c == '\n' || c == ',') c = ' ';
            }
            row.error = what;
        }
    });

    std::ostringstream csv;
    csv << kSweepHeader;
    for (const Row& row : rows) {
        if (row.report) {
            csv << report_csv(row.n, row.hbar, *row.report, "");
        } else {
            csv << (row.n ? std::to_string(*row.n) : "") << ','
                << (row.hbar ? csv_cell(*row.hbar) : "") << ",,,,,,,,,,,"
                << row.error << '\n';
        }
    }
    write_output(csv.str(), args.out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// limit

struct LimitArgs {
    std::string alpha;
    std::string regulator = "damping";
    double epsilon = 1e-3;
    double cutoff_M = 50.0;
    int levels = 4;
    int points = 256;
    std::string out;
};

int run_limit(const LimitArgs& args) {
    const Complex alpha = parse_complex_pair(args.alpha);
    quantropy::RegulatorSpec spec;
    if (args.regulator == "damping") {
        spec.kind = quantropy::RegulatorKind::damping;
    } else if (args.regulator == "cutoff") {
        spec.kind = quantropy::RegulatorKind::cutoff;
    } else {
        throw ConfigError("regulator must be damping or cutoff");
    }
    spec.epsilon = args.epsilon;
    spec.cutoff_M = args.cutoff_M;
    spec.extrapolation_levels = args.levels;
    spec.quadrature_points = args.points;
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const auto rows = quantropy::convergence_study(alpha, spec);
    std::ostringstream csv;
    csv << "level,regulator_value,estimate_re,estimate_im,"
           "abs_error_vs_closed_form\n";
    for (const auto& row : rows) {
        csv << row.level << ',' << csv_cell(row.regulator_value) << ','
            << csv_cell(row.estimate.real()) << ','
            << csv_cell(row.estimate.imag()) << ','
            << csv_cell(row.abs_error_vs_closed_form) << '\n';
    }
    write_output(csv.str(), args.out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// analogy

struct AnalogyArgs {
    std::string model;
    double beta = 1.0;
    std::string out;
};

int run_analogy(const AnalogyArgs& args) {
    const Model model = parse_model(args.model);
    if (!std::holds_alternative<HistorySpace>(model)) {
        throw ConfigError("analogy needs a history-space model");
    }
    const HistorySpace& space = std::get<HistorySpace>(model);
    if (!(args.beta > 0.0)) throw ConfigError("beta must be positive");

    const EnsembleReport quantum =
        quantropy::report(space, quantropy::analogy_substitution(args.beta));
    const quantropy::ThermalReport thermal =
        quantropy::boltzmann_report(space, args.beta);
    const bool match = quantropy::check_analogy(space, args.beta);

    nlohmann::ordered_json doc;
    doc["beta"] = args.beta;
    doc["quantum"] =
        nlohmann::ordered_json::parse(quantropy::report_to_json(quantum));
    doc["thermal"] = nlohmann::ordered_json::parse(
        quantropy::thermal_report_to_json(thermal));
    doc["match"] = match;
    write_output(doc.dump(2) + "\n", args.out);
    return match ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "quantropy: complex-weighted history ensembles, free-particle path "
        "integrals and the statistical-quantum analogy"};
    app.require_subcommand(1);

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand(
        "report", "Compute (ln Z, <A>, Q, Phi) for a model");
    report->add_option("--model", report_args.model,
                       "Model file or inline JSON (default free particle)");
    report->add_option("--hbar", report_args.lambda.hbar, "Planck constant");
    report->add_option("--lambda", report_args.lambda.lambda,
                       "Classicality as re,im");
    report->add_option("--beta", report_args.lambda.beta, "Coolness");
    report->add_option("--out", report_args.out, "Output path");
    report->add_option("--format", report_args.format, "csv or json");
    report->add_option("--method", report_args.method,
                       "closed or quadrature (free-particle models)");
    report->add_option("--grid-points", report_args.grid_points,
                       "Velocity grid points for --method quadrature");
    report->add_option("--grid-epsilon", report_args.grid_epsilon,
                       "Damping for --method quadrature");
    report->add_option("--grid-levels", report_args.grid_levels,
                       "Extrapolation levels for --method quadrature");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "Run the stationarity/identity/factorization/cross-engine/"
                  "regulator suites");
    verify->add_option("--seed", verify_args.seed, "Suite seed");
    verify->add_option("--tol", verify_args.tolerances,
                       "Tolerance override name=value (repeatable)");
    verify->add_flag("--negative-control", verify_args.negative_control,
                     "Perturb the weights; stationarity must fail");
    verify->add_option("--out", verify_args.out, "Output path");

    SweepArgs sweep_args;
    CLI::App* sweep =
        app.add_subcommand("sweep", "Report along a grid of hbar, n or beta");
    sweep->add_option("--model", sweep_args.model, "Model file or inline JSON");
    sweep->add_option("--grid", sweep_args.grid,
                      "hbar=v1,v2,... | n=lo:hi | beta=v1,v2,...")
        ->required();
    sweep->add_option("--hbar", sweep_args.lambda.hbar,
                      "Base hbar for n sweeps");
    sweep->add_option("--lambda", sweep_args.lambda.lambda,
                      "Base classicality for n sweeps");
    sweep->add_option("--beta", sweep_args.lambda.beta,
                      "Base coolness for n sweeps");
    sweep->add_option("--out", sweep_args.out, "Output path");

    LimitArgs limit_args;
    CLI::App* limit = app.add_subcommand(
        "limit", "Regulator convergence study for the Gaussian integral");
    limit->add_option("--alpha", limit_args.alpha, "Gaussian alpha as re,im")
        ->required();
    limit->add_option("--reg", limit_args.regulator, "damping or cutoff");
    limit->add_option("--epsilon", limit_args.epsilon, "Starting damping");
    limit->add_option("--cutoff-M", limit_args.cutoff_M, "Starting cutoff");
    limit->add_option("--levels", limit_args.levels, "Extrapolation levels");
    limit->add_option("--points", limit_args.points,
                      "Minimum quadrature points");
    limit->add_option("--out", limit_args.out, "Output path");

    AnalogyArgs analogy_args;
    CLI::App* analogy = app.add_subcommand(
        "analogy", "Quantum engine at lambda = beta vs the thermal engine");
    analogy->add_option("--model", analogy_args.model, "History-space model")
        ->required();
    analogy->add_option("--beta", analogy_args.beta, "Coolness")->required();
    analogy->add_option("--out", analogy_args.out, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (report->parsed()) return run_report(report_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (limit->parsed()) return run_limit(limit_args);
        if (analogy->parsed()) return run_analogy(analogy_args);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const quantropy::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
