// qmlab: QUBO feature-selection and quantum-image-classification workbench.
//
// Subcommands: `qubo solve`, `credit run`, `mnist preprocess|encode|train`.
// Every run writes a run_record.json (seeds, config echo, input digests,
// metrics) next to its artifacts; outputs are written atomically.

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "credit/pipeline.hpp"
#include "qimage/dataset.hpp"
#include "qimage/frqi.hpp"
#include "qnn/mlp.hpp"
#include "qnn/train.hpp"
#include "qsim/circuit.hpp"
#include "qubo/solvers.hpp"
#include "util/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes: 0 success, 2 usage error, 3 missing input file, 4 malformed
// input data, 1 anything else.
constexpr int kExitUsage = 2;
constexpr int kExitMissingFile = 3;
constexpr int kExitBadData = 4;

struct missing_file_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_file(const std::string& path) {
    if (!fs::exists(path)) throw missing_file_error("file not found: " + path);
}

std::uint64_t fnv1a_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw missing_file_error("file not found: " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    return hash;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void atomic_write(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

// Global run context: collected while a subcommand executes, flushed as
// run_record.json on success.
struct RunContext {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0;
    std::string command;
    json config = json::object();
    json digests = json::object();
    json metrics = json::object();
    std::vector<std::string> artifacts;

    void add_input(const std::string& label, const std::string& path) {
        digests[label] = json{{"path", path}, {"fnv1a", hex64(fnv1a_digest(path))}};
    }

    void write_artifact(const std::string& name, const std::string& content) {
        const fs::path path = fs::path(out_dir) / name;
        atomic_write(path, content);
        artifacts.push_back(path.string());
    }

    void flush(double duration_ms) {
        json record{
            {"command", command},       {"seed", seed},       {"threads", threads},
            {"config", config},         {"inputs", digests},  {"metrics", metrics},
            {"duration_ms", duration_ms}, {"artifacts", artifacts},
        };
        atomic_write(fs::path(out_dir) / "run_record.json", record.dump(2) + "\n");
    }
};

json report_to_json(const credit::ClassReport& report) {
    json per_class = json::array();
    for (int c = 0; c < 2; ++c) {
        per_class.push_back(json{{"class", c},
                                 {"precision", report.precision[static_cast<std::size_t>(c)]},
                                 {"recall", report.recall[static_cast<std::size_t>(c)]},
                                 {"f1", report.f1[static_cast<std::size_t>(c)]},
                                 {"support", report.support[static_cast<std::size_t>(c)]}});
    }
    return json{{"accuracy", report.accuracy}, {"per_class", per_class}};
}

// ---- qubo solve ----------------------------------------------------------

struct QuboSolveArgs {
    std::string model_path;
    std::string solver = "sa";
    std::string strategy = "influence";
    int subset_size = 0;
    int iterations = 50;
    int sweeps = 2000;
    double initial_temp = 10.0;
    double final_temp = 0.05;
    std::string inner = "exact";
};

int run_qubo_solve(RunContext& ctx, const QuboSolveArgs& args) {
    require_file(args.model_path);
    ctx.add_input("model", args.model_path);
    const qubo::QuboModel model = qubo::read_qubo_file(args.model_path);

    qubo::Solution solution;
    if (args.solver == "brute") {
        solution = qubo::brute_force_solve(model);
    } else if (args.solver == "sa") {
        qubo::AnnealSchedule schedule{args.initial_temp, args.final_temp, args.sweeps, ctx.seed};
        solution = qubo::simulated_anneal(model, schedule);
    } else {
        qubo::ExtractionStrategy strategy;
        strategy.subset_size = args.subset_size > 0 ? args.subset_size : std::max(1, model.size() / 2);
        if (args.strategy == "random") {
            strategy.kind = qubo::StrategyKind::Random;
        } else if (args.strategy == "influence") {
            strategy.kind = qubo::StrategyKind::Influence;
        } else {
            strategy.kind = qubo::StrategyKind::KOpt;
        }
        qubo::InnerSolver inner = qubo::InnerSolver::exact();
        if (args.inner == "anneal") {
            inner = qubo::InnerSolver::anneal({args.initial_temp, args.final_temp, args.sweeps, 0});
        }
        solution = qubo::hybrid_solve(model, strategy, args.iterations, inner, ctx.seed);
    }

    json result{{"assignment", solution.assignment},
                {"value", solution.value},
                {"evaluations", solution.evaluations}};
    ctx.config = json{{"solver", args.solver},   {"strategy", args.strategy},
                      {"subset_size", args.subset_size}, {"iterations", args.iterations},
                      {"sweeps", args.sweeps},   {"initial_temp", args.initial_temp},
                      {"final_temp", args.final_temp},   {"inner", args.inner}};
    ctx.metrics = result;
    ctx.write_artifact("solution.json", result.dump(2) + "\n");
    std::cout << result.dump(2) << "\n";
    return 0;
}

// ---- credit run ----------------------------------------------------------

struct CreditRunArgs {
    std::string data_path;
    double alpha = 0.5;
    double beta = 2.0;
    double threshold = 0.01;
    int trees = 100;
    int max_depth = 8;
    std::string out = "report.json";
};

int run_credit(RunContext& ctx, const CreditRunArgs& args) {
    require_file(args.data_path);
    ctx.add_input("data", args.data_path);

    credit::PipelineConfig config;
    config.selection.alpha = args.alpha;
    config.selection.beta = args.beta;
    config.selection.importance_threshold = args.threshold;
    config.forest.trees = args.trees;
    config.forest.max_depth = args.max_depth;
    config.forest.seed = ctx.seed;
    config.solver.seed = ctx.seed;
    config.split.seed = ctx.seed;

    const auto records = credit::load_german_data(args.data_path);
    const auto result = credit::run_pipeline(records, config);

    json importance = json::object();
    for (std::size_t f = 0; f < result.importance.names.size(); ++f) {
        importance[result.importance.names[f]] = result.importance.values[f];
    }
    json report{
        {"records", records.size()},
        {"expanded_features", result.expanded_feature_count},
        {"candidates", result.selection.candidate_names},
        {"selected_features", result.selection.selected_names},
        {"selection_objective", result.selection.objective_value},
        {"classification", report_to_json(result.evaluation.report)},
        {"importance", importance},
        {"config",
         json{{"alpha", args.alpha},
              {"beta", args.beta},
              {"threshold", args.threshold},
              {"trees", args.trees},
              {"max_depth", args.max_depth},
              {"seed", ctx.seed},
              {"test_fraction", config.split.test_fraction},
              {"logistic",
               json{{"learning_rate", config.logistic.learning_rate},
                    {"epochs", config.logistic.epochs},
                    {"l2", config.logistic.l2}}}}},
    };

    ctx.config = report["config"];
    ctx.metrics = json{{"accuracy", result.evaluation.report.accuracy},
                       {"selected_features", result.selection.selected_names}};
    ctx.write_artifact(args.out, report.dump(2) + "\n");
    std::cout << "selected:";
    for (const auto& name : result.selection.selected_names) std::cout << " " << name;
    std::cout << "\naccuracy: " << result.evaluation.report.accuracy << "\n";
    return 0;
}

// ---- mnist preprocess ----------------------------------------------------

struct PreprocessArgs {
    std::string images_path;
    std::string labels_path;
    std::string digits = "3,6";
    int size = 8;
    std::string out_name = "dataset.bin";
};

std::vector<int> parse_digits(const std::string& spec) {
    std::vector<int> digits;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const int d = std::stoi(tok);
        if (d < 0 || d > 9) throw std::invalid_argument("digit out of range: " + tok);
        digits.push_back(d);
    }
    if (digits.empty()) throw std::invalid_argument("no digits requested");
    return digits;
}

int run_preprocess(RunContext& ctx, const PreprocessArgs& args) {
    require_file(args.images_path);
    require_file(args.labels_path);
    ctx.add_input("images", args.images_path);
    ctx.add_input("labels", args.labels_path);

    const auto digits = parse_digits(args.digits);
    const auto dataset = qimage::preprocess_idx(args.images_path, args.labels_path, digits, args.size);

    fs::create_directories(ctx.out_dir);
    const fs::path bin_path = fs::path(ctx.out_dir) / args.out_name;
    qimage::write_binary_dataset(bin_path.string(), dataset);
    ctx.artifacts.push_back(bin_path.string());

    json counts = json::object();
    for (int d : digits) {
        const std::size_t count = static_cast<std::size_t>(
            std::count(dataset.digits.begin(), dataset.digits.end(), static_cast<std::uint8_t>(d)));
        counts[std::to_string(d)] = count;
    }
    json manifest{{"total", dataset.size()},
                  {"counts", counts},
                  {"side", args.size},
                  {"digits", digits},
                  {"seed", ctx.seed},
                  {"threshold", 0.5},
                  {"output", bin_path.string()}};
    ctx.config = json{{"digits", args.digits}, {"size", args.size}};
    ctx.metrics = json{{"total", dataset.size()}, {"counts", counts}};
    ctx.write_artifact("manifest.json", manifest.dump(2) + "\n");
    std::cout << manifest.dump(2) << "\n";
    return 0;
}

// ---- mnist encode --------------------------------------------------------

struct EncodeArgs {
    std::string data_path;
    int index = 0;
    bool compressed = false;
    std::string dump_path;
    std::string load_path;
    std::string state_out;
    bool check = false;
};

json state_to_json(const qsim::StateVector& state) {
    json amps = json::array();
    for (std::size_t i = 0; i < state.dim(); ++i) {
        amps.push_back(json::array({state.amplitude(i).real(), state.amplitude(i).imag()}));
    }
    return json{{"qubits", state.num_qubits()}, {"amplitudes", amps}};
}

int run_encode(RunContext& ctx, const EncodeArgs& args) {
    qsim::CircuitProgram program;
    json info = json::object();

    if (!args.load_path.empty()) {
        require_file(args.load_path);
        ctx.add_input("circuit", args.load_path);
        std::ifstream in(args.load_path);
        program = qsim::parse_circuit(in);
        info["source"] = args.load_path;
    } else {
        require_file(args.data_path);
        ctx.add_input("data", args.data_path);
        const auto dataset = qimage::read_binary_dataset(args.data_path);
        if (args.index < 0 || static_cast<std::size_t>(args.index) >= dataset.size()) {
            throw std::invalid_argument("image index out of range (dataset has " +
                                        std::to_string(dataset.size()) + " entries)");
        }
        const auto& image = dataset.images[static_cast<std::size_t>(args.index)];
        program = qimage::encode_circuit(image, args.compressed);
        info["digit"] = dataset.digits[static_cast<std::size_t>(args.index)];

        if (args.check) {
            const auto direct = args.compressed ? qimage::compressed_state(image) : qimage::frqi_state(image);
            const auto synthesized = program.simulate();
            double worst = 0.0;
            for (std::size_t i = 0; i < direct.dim(); ++i) {
                worst = std::max(worst, std::abs(direct.amplitude(i) - synthesized.amplitude(i)));
            }
            info["max_deviation_vs_direct"] = worst;
        }
    }

    info["qubits"] = program.qubits;
    info["gates"] = program.ops.size();

    if (!args.dump_path.empty()) {
        ctx.write_artifact(args.dump_path, qsim::dump_circuit(program));
    }
    if (!args.state_out.empty()) {
        ctx.write_artifact(args.state_out, state_to_json(program.simulate()).dump(2) + "\n");
    }

    ctx.config = json{{"index", args.index}, {"compressed", args.compressed}};
    ctx.metrics = info;
    std::cout << info.dump(2) << "\n";
    return 0;
}

// ---- mnist train ---------------------------------------------------------

struct TrainArgs {
    std::string data_path;
    std::string config = "qnn2";
    std::string loss = "hinge";
    int epochs = 30;
    int folds = 10;
    int subset = 0;
    double learning_rate = 0.0;  // 0 = per-model default
    int batch_size = 32;
    std::string out = "history.csv";
};

std::string history_csv(const std::vector<qnn::TrainHistory>& folds) {
    std::ostringstream out;
    out << "fold,epoch,train_loss,val_accuracy\n";
    out.precision(10);
    for (const auto& h : folds) {
        for (std::size_t e = 0; e < h.train_loss.size(); ++e) {
            out << h.fold << "," << e << "," << h.train_loss[e] << "," << h.val_accuracy[e] << "\n";
        }
    }
    return out.str();
}

int run_train(RunContext& ctx, const TrainArgs& args) {
    require_file(args.data_path);
    ctx.add_input("data", args.data_path);
    const auto dataset = qimage::read_binary_dataset(args.data_path);
    if (dataset.size() < 2) throw std::invalid_argument("dataset too small to train on");

    // Labels: the lower digit value maps to +1, the other to -1.
    std::vector<int> observed;
    for (auto d : dataset.digits) {
        if (std::find(observed.begin(), observed.end(), static_cast<int>(d)) == observed.end()) {
            observed.push_back(static_cast<int>(d));
        }
    }
    std::sort(observed.begin(), observed.end());
    if (observed.size() != 2) throw std::invalid_argument("training needs exactly two digit classes");
    std::vector<int> labels(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        labels[i] = dataset.digits[i] == observed[0] ? 1 : -1;
    }

    // Seeded subset (shuffle then truncate) when requested.
    std::vector<qimage::BinaryImage> images = dataset.images;
    if (args.subset > 0 && static_cast<std::size_t>(args.subset) < dataset.size()) {
        std::vector<std::size_t> order(dataset.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        util::Rng rng(util::mix_seed(ctx.seed, 0x737562ULL));
        rng.shuffle(order);
        std::vector<qimage::BinaryImage> sub_images;
        std::vector<int> sub_labels;
        for (int i = 0; i < args.subset; ++i) {
            sub_images.push_back(images[order[static_cast<std::size_t>(i)]]);
            sub_labels.push_back(labels[order[static_cast<std::size_t>(i)]]);
        }
        images = std::move(sub_images);
        labels = std::move(sub_labels);
    }

    const qnn::Loss loss = args.loss == "mse" ? qnn::Loss::MSE : qnn::Loss::Hinge;
    qnn::OptConfig opt;
    opt.epochs = args.epochs;
    opt.folds = args.folds;
    opt.batch_size = args.batch_size;

    std::vector<qnn::TrainHistory> histories;
    if (args.config == "nn1" || args.config == "nn2") {
        opt.learning_rate = args.learning_rate > 0.0 ? args.learning_rate : 0.5;
        const auto data = qnn::flatten_dataset(images, labels);
        const int expected_dim = args.config == "nn1" ? 64 : 256;
        if (data.input_dim != expected_dim) {
            throw std::invalid_argument(args.config + " expects flattened dimension " +
                                        std::to_string(expected_dim) + ", dataset gives " +
                                        std::to_string(data.input_dim));
        }
        histories = qnn::mlp_train(data, loss, opt, ctx.seed);
    } else {
        qnn::QnnConfig config;
        config.seed = ctx.seed;
        config.loss = loss;
        if (args.config == "qnn1") {
            config.image_side = 8;
            config.compressed = false;
            config.layers = 12;
            config.arch = qnn::Arch::CRADL;
        } else if (args.config == "qnn2") {
            config.image_side = 8;
            config.compressed = true;
            config.layers = 16;
            config.arch = qnn::Arch::CRADL;
        } else if (args.config == "qnn3") {
            config.image_side = 16;
            config.compressed = true;
            config.layers = 42;
            config.arch = qnn::Arch::CRAML;
        } else {
            throw std::invalid_argument("unknown model config: " + args.config);
        }
        if (dataset.side != config.image_side) {
            throw std::invalid_argument(args.config + " expects side " + std::to_string(config.image_side) +
                                        ", dataset gives " + std::to_string(dataset.side));
        }
        opt.learning_rate = args.learning_rate > 0.0 ? args.learning_rate : 0.5;
        const auto data = qnn::encode_dataset(images, labels, config.compressed);
        histories = qnn::train(config, data, opt);
    }

    json fold_metrics = json::array();
    for (const auto& h : histories) {
        fold_metrics.push_back(json{{"fold", h.fold},
                                    {"initial_val_accuracy", h.initial_val_accuracy},
                                    {"final_val_accuracy", h.val_accuracy.empty() ? h.initial_val_accuracy
                                                                                  : h.val_accuracy.back()}});
    }
    ctx.config = json{{"model", args.config},   {"loss", args.loss},   {"epochs", args.epochs},
                      {"folds", args.folds},    {"subset", args.subset}, {"batch_size", args.batch_size},
                      {"learning_rate", opt.learning_rate}};
    ctx.metrics = json{{"folds", fold_metrics}};
    ctx.write_artifact(args.out, history_csv(histories));
    std::cout << ctx.metrics.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QUBO feature-selection and quantum-image-classification workbench"};
    app.require_subcommand(1);

    RunContext ctx;
    app.add_option("--seed", ctx.seed, "master seed for every stochastic stage")->capture_default_str();
    app.add_option("--out-dir", ctx.out_dir, "directory for artifacts and the run record")->capture_default_str();
    app.add_option("--threads", ctx.threads, "worker thread cap (0 = library default)")->capture_default_str();

    // qubo solve
    auto* qubo_cmd = app.add_subcommand("qubo", "QUBO model operations");
    auto* solve_cmd = qubo_cmd->add_subcommand("solve", "minimize a QUBO model file");
    QuboSolveArgs qubo_args;
    solve_cmd->add_option("--model", qubo_args.model_path, "model file (text format)")->required();
    solve_cmd->add_option("--solver", qubo_args.solver, "brute | sa | hybrid")
        ->check(CLI::IsMember({"brute", "sa", "hybrid"}))
        ->capture_default_str();
    solve_cmd->add_option("--strategy", qubo_args.strategy, "hybrid extraction: random | influence | kopt")
        ->check(CLI::IsMember({"random", "influence", "kopt"}))
        ->capture_default_str();
    solve_cmd->add_option("--subset-size", qubo_args.subset_size, "hybrid sub-problem size (0 = n/2)")
        ->capture_default_str();
    solve_cmd->add_option("--iterations", qubo_args.iterations, "hybrid iterations")->capture_default_str();
    solve_cmd->add_option("--sweeps", qubo_args.sweeps, "annealing sweeps")->capture_default_str();
    solve_cmd->add_option("--initial-temp", qubo_args.initial_temp)->capture_default_str();
    solve_cmd->add_option("--final-temp", qubo_args.final_temp)->capture_default_str();
    solve_cmd->add_option("--inner", qubo_args.inner, "hybrid inner solver: exact | anneal")
        ->check(CLI::IsMember({"exact", "anneal"}))
        ->capture_default_str();

    // credit run
    auto* credit_cmd = app.add_subcommand("credit", "German Credit feature selection");
    auto* credit_run_cmd = credit_cmd->add_subcommand("run", "full selection + evaluation pipeline");
    CreditRunArgs credit_args;
    credit_run_cmd->add_option("--data", credit_args.data_path, "german.data file")->required();
    credit_run_cmd->add_option("--alpha", credit_args.alpha, "feature-count penalty")->capture_default_str();
    credit_run_cmd->add_option("--beta", credit_args.beta, "importance reward")->capture_default_str();
    credit_run_cmd->add_option("--threshold", credit_args.threshold, "importance cutoff")->capture_default_str();
    credit_run_cmd->add_option("--trees", credit_args.trees, "forest size")->capture_default_str();
    credit_run_cmd->add_option("--max-depth", credit_args.max_depth, "tree depth cap")->capture_default_str();
    credit_run_cmd->add_option("--out", credit_args.out, "report file name")->capture_default_str();

    // mnist
    auto* mnist_cmd = app.add_subcommand("mnist", "MNIST preprocessing, encoding, training");

    auto* pre_cmd = mnist_cmd->add_subcommand("preprocess", "filter digits, downsample, binarize");
    PreprocessArgs pre_args;
    pre_cmd->add_option("--images", pre_args.images_path, "IDX image file (may be .gz)")->required();
    pre_cmd->add_option("--labels", pre_args.labels_path, "IDX label file (may be .gz)")->required();
    pre_cmd->add_option("--digits", pre_args.digits, "comma-separated digit filter")->capture_default_str();
    pre_cmd->add_option("--size", pre_args.size, "target side (power of two)")->capture_default_str();
    pre_cmd->add_option("--out", pre_args.out_name, "output dataset file name")->capture_default_str();

    auto* enc_cmd = mnist_cmd->add_subcommand("encode", "build or load an encoding circuit");
    EncodeArgs enc_args;
    enc_cmd->add_option("--data", enc_args.data_path, "preprocessed dataset file");
    enc_cmd->add_option("--index", enc_args.index, "image index")->capture_default_str();
    enc_cmd->add_flag("--compressed", enc_args.compressed, "fold the last two position qubits");
    enc_cmd->add_option("--dump", enc_args.dump_path, "write the circuit text here");
    enc_cmd->add_option("--load", enc_args.load_path, "read a circuit text instead of building one");
    enc_cmd->add_option("--state-out", enc_args.state_out, "write simulated amplitudes (JSON)");
    enc_cmd->add_flag("--check", enc_args.check, "compare circuit output against the direct state");

    auto* train_cmd = mnist_cmd->add_subcommand("train", "train a classifier with k-fold validation");
    TrainArgs train_args;
    train_cmd->add_option("--data", train_args.data_path, "preprocessed dataset file")->required();
    train_cmd->add_option("--config", train_args.config, "qnn1 | qnn2 | qnn3 | nn1 | nn2")
        ->check(CLI::IsMember({"qnn1", "qnn2", "qnn3", "nn1", "nn2"}))
        ->capture_default_str();
    train_cmd->add_option("--loss", train_args.loss, "hinge | mse")
        ->check(CLI::IsMember({"hinge", "mse"}))
        ->capture_default_str();
    train_cmd->add_option("--epochs", train_args.epochs)->capture_default_str();
    train_cmd->add_option("--folds", train_args.folds)->capture_default_str();
    train_cmd->add_option("--subset", train_args.subset, "train on a seeded subset of this size")
        ->capture_default_str();
    train_cmd->add_option("--batch-size", train_args.batch_size)->capture_default_str();
    train_cmd->add_option("--learning-rate", train_args.learning_rate, "0 = model default")
        ->capture_default_str();
    train_cmd->add_option("--out", train_args.out, "history CSV file name")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (ctx.threads > 0) omp_set_num_threads(ctx.threads);
#endif

    const auto started = std::chrono::steady_clock::now();
    try {
        int rc = 0;
        if (solve_cmd->parsed()) {
            ctx.command = "qubo solve";
            rc = run_qubo_solve(ctx, qubo_args);
        } else if (credit_run_cmd->parsed()) {
            ctx.command = "credit run";
            rc = run_credit(ctx, credit_args);
        } else if (pre_cmd->parsed()) {
            ctx.command = "mnist preprocess";
            rc = run_preprocess(ctx, pre_args);
        } else if (enc_cmd->parsed()) {
            ctx.command = "mnist encode";
            rc = run_encode(ctx, enc_args);
        } else if (train_cmd->parsed()) {
            ctx.command = "mnist train";
            rc = run_train(ctx, train_args);
        } else {
            std::cerr << "error: missing subcommand (try --help)\n";
            return kExitUsage;
        }
        if (rc == 0) {
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
            ctx.flush(ms);
        }
        return rc;
    } catch (const missing_file_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMissingFile;
    } catch (const std::runtime_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitBadData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
