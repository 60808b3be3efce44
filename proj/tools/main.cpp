#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "numenc/errors.hpp"

namespace {

using numenc::cli::AblationOptions;
using numenc::cli::BenchmarkOptions;
using numenc::cli::EncodeOptions;
using numenc::cli::IllustrateOptions;
using numenc::cli::StatsOptions;

void add_train_options(CLI::App* cmd, numenc::TrainConfig& train) {
    cmd->add_option("--lr", train.lr, "Backbone learning rate")
        ->envname("NUMENC_LR")
        ->capture_default_str();
    cmd->add_option("--weight-decay", train.weight_decay, "AdamW weight decay")
        ->capture_default_str();
    cmd->add_option("--batch-size", train.batch_size, "Mini-batch size")
        ->envname("NUMENC_BATCH_SIZE")
        ->capture_default_str();
    cmd->add_option("--max-epochs", train.max_epochs, "Epoch cap")
        ->envname("NUMENC_MAX_EPOCHS")
        ->capture_default_str();
    cmd->add_option("--patience", train.early_stop_patience, "Early stopping patience")
        ->capture_default_str();
    cmd->add_option("--plateau-patience", train.plateau_patience,
                    "ReduceLROnPlateau patience")
        ->capture_default_str();
    cmd->add_option("--knot-lr", train.knot_lr, "Knot-logit learning rate")
        ->capture_default_str();
    cmd->add_option("--warmup", train.warmup_epochs,
                    "Epochs before knot updates activate")
        ->capture_default_str();
    cmd->add_option("--knot-lambda", train.knot_reg.lambda,
                    "Knot spacing-regularizer weight")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spline, PLE and baseline numerical encodings for tabular learning"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file with key=value lines");
    app.footer("Option precedence: command line > environment (NUMENC_*) > config file "
               "> built-in defaults.");

    EncodeOptions enc;
    CLI::App* cmd_encode = app.add_subcommand("encode", "Fit an encoder and write the "
                                                        "expanded feature matrix");
    cmd_encode->add_option("--input", enc.input, "Input CSV with a header")->required();
    cmd_encode->add_option("--target", enc.target, "Target column name")->required();
    cmd_encode->add_option("--categorical", enc.categorical,
                           "Categorical column names")
        ->delimiter(',');
    cmd_encode->add_option("--method", enc.method, "Method tag (Std, MinMax, PLE, "
                                                   "PLE_adp, BS-U, ..., IS-Grad-U)")
        ->required();
    cmd_encode->add_option("--m", enc.m, "Per-feature output size")->capture_default_str();
    cmd_encode->add_option("--degree", enc.degree, "Spline degree")->capture_default_str();
    cmd_encode->add_option("--seed", enc.seed, "Random seed")
        ->envname("NUMENC_SEED")
        ->capture_default_str();
    cmd_encode->add_option("--output", enc.output, "Output CSV path")->required();

    BenchmarkOptions bench;
    CLI::App* cmd_bench = app.add_subcommand("benchmark",
                                             "Cross-validated method sweep on a CSV");
    cmd_bench->add_option("--input", bench.input, "Input CSV with a header")->required();
    cmd_bench->add_option("--target", bench.target, "Target column name")->required();
    cmd_bench->add_option("--categorical", bench.categorical, "Categorical column names")
        ->delimiter(',');
    cmd_bench->add_option("--task", bench.task, "auto | regression | classification")
        ->capture_default_str();
    cmd_bench->add_option("--methods", bench.methods,
                          "Method tags, or 'all' for the 14 benchmark methods")
        ->delimiter(',');
    cmd_bench->add_option("--sizes", bench.sizes, "Output sizes to sweep")
        ->delimiter(',');
    cmd_bench->add_option("--folds", bench.folds, "Cross-validation folds")
        ->capture_default_str();
    cmd_bench->add_option("--seed", bench.seed, "Base seed; folds use seed + fold_id")
        ->envname("NUMENC_SEED")
        ->capture_default_str();
    cmd_bench->add_option("--jobs", bench.jobs, "Parallel (method, m, fold) units")
        ->envname("NUMENC_JOBS")
        ->capture_default_str();
    cmd_bench->add_flag("--histories", bench.histories,
                        "Export per-unit training histories and knot trajectories");
    cmd_bench->add_option("--out", bench.out_dir, "Output directory")->required();
    add_train_options(cmd_bench, bench.train);

    AblationOptions abl;
    CLI::App* cmd_abl = app.add_subcommand("ablation",
                                           "Encoding-resolution sweep on the synthetic "
                                           "regression task");
    cmd_abl->add_option("--methods", abl.methods,
                        "Method tags, or 'all' for the 16 swept + 3 reference methods")
        ->delimiter(',');
    cmd_abl->add_option("--sizes", abl.sizes, "Output sizes to sweep")->delimiter(',');
    cmd_abl->add_option("--seeds", abl.seeds, "Number of random seeds")
        ->capture_default_str();
    cmd_abl->add_option("--seed-base", abl.seed_base, "First dataset seed")
        ->envname("NUMENC_SEED")
        ->capture_default_str();
    cmd_abl->add_option("--n", abl.n_samples, "Synthetic sample count")
        ->capture_default_str();
    cmd_abl->add_option("--jobs", abl.jobs, "Parallel (method, m, seed) units")
        ->envname("NUMENC_JOBS")
        ->capture_default_str();
    cmd_abl->add_flag("--histories", abl.histories,
                      "Export per-unit training histories and knot trajectories");
    cmd_abl->add_flag("--export-data", abl.export_data,
                      "Write the per-seed synthetic datasets as ingestible CSVs");
    cmd_abl->add_option("--out", abl.out_dir, "Output directory")->required();
    add_train_options(cmd_abl, abl.train);

    IllustrateOptions ill;
    CLI::App* cmd_ill = app.add_subcommand("illustrate",
                                           "PLE vs B-spline comparison with Ridge and "
                                           "logistic models");
    cmd_ill->add_option("--seed", ill.seed, "Random seed")
        ->envname("NUMENC_SEED")
        ->capture_default_str();
    cmd_ill->add_option("--m", ill.m, "Shared encoding budget")->capture_default_str();
    cmd_ill->add_option("--n", ill.n_samples, "Training sample count")
        ->capture_default_str();
    cmd_ill->add_option("--ridge-reg", ill.ridge_reg, "Ridge regularization strength")
        ->capture_default_str();
    cmd_ill->add_option("--out", ill.out_dir, "Output directory")->required();

    StatsOptions stats;
    CLI::App* cmd_stats = app.add_subcommand("stats",
                                             "Average ranks, Friedman test and Nemenyi "
                                             "critical difference");
    cmd_stats->add_option("--results", stats.results, "results.csv from benchmark runs")
        ->required();
    cmd_stats->add_option("--alpha", stats.alpha, "Significance level (0.05 or 0.10)")
        ->capture_default_str();
    cmd_stats->add_option("--out", stats.out, "Output JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(cmd_encode)) return numenc::cli::run_encode(enc);
        if (app.got_subcommand(cmd_bench)) return numenc::cli::run_benchmark(bench);
        if (app.got_subcommand(cmd_abl)) return numenc::cli::run_ablation(abl);
        if (app.got_subcommand(cmd_ill)) return numenc::cli::run_illustrate(ill);
        if (app.got_subcommand(cmd_stats)) return numenc::cli::run_stats(stats);
    } catch (const numenc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const numenc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
