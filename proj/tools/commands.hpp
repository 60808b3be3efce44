#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "numenc/mlp.hpp"

namespace numenc::cli {

struct EncodeOptions {
    std::string input;
    std::string target;
    std::vector<std::string> categorical;
    std::string method = "Std";
    int m = 7;
    int degree = 3;
    std::uint64_t seed = 0;
    std::string output;
};
int run_encode(const EncodeOptions& opt);

struct BenchmarkOptions {
    std::string input;
    std::string target;
    std::vector<std::string> categorical;
    std::string task = "auto"; // auto | regression | classification
    std::vector<std::string> methods{"all"};
    std::vector<int> sizes{7, 15, 30};
    int folds = 5;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool histories = false; // export per-unit training/knot CSVs
    std::string out_dir = ".";
    TrainConfig train;
};
int run_benchmark(const BenchmarkOptions& opt);

struct AblationOptions {
    std::vector<std::string> methods{"all"};
    std::vector<int> sizes{5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
    int seeds = 5;
    std::uint64_t seed_base = 0;
    int n_samples = 8000;
    int jobs = 1;
    bool histories = false;   // export per-unit training/knot CSVs
    bool export_data = false; // write the per-seed synthetic datasets
    std::string out_dir = ".";
    TrainConfig train;
};
int run_ablation(const AblationOptions& opt);

struct IllustrateOptions {
    std::uint64_t seed = 0;
    int m = 10;
    int n_samples = 2500;
    double ridge_reg = 1e-3;
    std::string out_dir = ".";
};
int run_illustrate(const IllustrateOptions& opt);

struct StatsOptions {
    std::string results;
    double alpha = 0.05;
    std::string out = "stats.json";
};
int run_stats(const StatsOptions& opt);

} // namespace numenc::cli
