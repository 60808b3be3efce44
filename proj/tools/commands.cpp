#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>

#include "common.hpp"
#include "numenc/csv.hpp"
#include "numenc/errors.hpp"
#include "numenc/metrics.hpp"
#include "numenc/pipeline.hpp"
#include "numenc/synthetic.hpp"

namespace numenc::cli {

namespace fs = std::filesystem;

void ManifestBuilder::write(const std::string& path) {
    doc["finished_at"] = iso_timestamp();
    std::ofstream out(path);
    out << doc.dump(2) << '\n';
}

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    if (!dir.empty()) fs::create_directories(dir);
}

std::optional<Task> parse_task(const std::string& name) {
    if (name == "auto") return std::nullopt;
    if (name == "regression") return Task::Regression;
    if (name == "classification") return Task::Binary; // refined by label count
    throw ConfigError("unknown task: " + name);
}

json train_config_json(const TrainConfig& cfg) {
    return json{{"lr", cfg.lr},
                {"weight_decay", cfg.weight_decay},
                {"batch_size", cfg.batch_size},
                {"max_epochs", cfg.max_epochs},
                {"early_stop_patience", cfg.early_stop_patience},
                {"plateau_patience", cfg.plateau_patience},
                {"plateau_factor", cfg.plateau_factor},
                {"knot_lr", cfg.knot_lr},
                {"warmup_epochs", cfg.warmup_epochs},
                {"knot_lambda", cfg.knot_reg.lambda},
                {"knot_epsilon", cfg.knot_reg.epsilon}};
}

} // namespace

int run_encode(const EncodeOptions& opt) {
    const Dataset data = ingest_csv(opt.input, opt.target, opt.categorical);
    const EncoderSpec spec = EncoderSpec::parse(opt.method, opt.m, opt.degree);
    std::vector<int> all_rows(data.rows());
    std::iota(all_rows.begin(), all_rows.end(), 0);
    const FittedEncoder enc = fit_encoder(data, all_rows, spec, opt.seed);
    const MatrixXd phi = enc.transform(data.numerical, data.categorical);

    CsvTable out;
    if (spec.kind == EncoderSpec::Kind::Std || spec.kind == EncoderSpec::Kind::MinMax) {
        out.header = data.num_names;
    } else {
        for (int j = 0; j < data.num_features(); ++j) {
            const int width = spec.kind == EncoderSpec::Kind::PleAdaptive
                                  ? enc.bounds[j].bins()
                                  : spec.m;
            for (int l = 1; l <= width; ++l)
                out.header.push_back("feature_" + std::to_string(j) + "_basis_" +
                                     std::to_string(l));
        }
    }
    out.header.insert(out.header.end(), data.cat_names.begin(), data.cat_names.end());
    out.rows.reserve(phi.rows());
    for (Eigen::Index i = 0; i < phi.rows(); ++i) {
        std::vector<std::string> row;
        row.reserve(phi.cols());
        for (Eigen::Index j = 0; j < phi.cols(); ++j)
            row.push_back(format_double(phi(i, j)));
        out.rows.push_back(std::move(row));
    }
    write_csv(opt.output, out);

    // knots/bins sidecar
    json side;
    side["method"] = spec.tag;
    side["m"] = spec.uses_output_size() ? spec.m : 0;
    side["degree"] = spec.degree;
    side["scaler"] = {
        {"min", std::vector<double>(enc.scaler.col_min.data(),
                                    enc.scaler.col_min.data() + enc.scaler.col_min.size())},
        {"max", std::vector<double>(enc.scaler.col_max.data(),
                                    enc.scaler.col_max.data() + enc.scaler.col_max.size())}};
    side["features"] = json::array();
    for (int j = 0; j < data.num_features(); ++j) {
        json feature;
        feature["name"] = data.num_names[j];
        if (!enc.knots.empty()) feature["knots"] = enc.knots[j].internal;
        if (!enc.bounds.empty()) feature["bounds"] = enc.bounds[j].bounds;
        side["features"].push_back(feature);
    }
    const std::string side_path = opt.output + ".meta.json";
    std::ofstream(side_path) << side.dump(2) << '\n';

    ManifestBuilder manifest("encode");
    manifest.set_config(json{{"input", opt.input},
                             {"target", opt.target},
                             {"method", opt.method},
                             {"m", opt.m},
                             {"degree", opt.degree},
                             {"seed", opt.seed}});
    manifest.doc["seed"] = opt.seed;
    manifest.add_artifact(opt.output);
    manifest.add_artifact(side_path);
    manifest.write(opt.output + ".manifest.json");
    return 0;
}

namespace {

struct ResultRow {
    std::string dataset;
    std::string method;
    int m = 0;
    int unit = 0; // fold index, or seed index for the ablation sweep
    std::string metric;
    double value = 0.0;
};

/// Append-as-you-go result store; the file doubles as the resume checkpoint
/// and is rewritten in canonical order on completion.
struct ResultSink {
    std::string path;
    std::vector<std::string> header;
    std::vector<ResultRow> rows;
    std::mutex mutex;

    std::set<std::string> load_existing(bool unit_is_seed) {
        std::set<std::string> done;
        if (!fs::exists(path)) return done;
        const CsvTable existing = read_csv(path);
        const int c_dataset = existing.column("dataset");
        const int c_method = existing.column("method");
        const int c_m = existing.column("m");
        const int c_unit = existing.column(unit_is_seed ? "seed" : "fold");
        const int c_metric = existing.column("metric");
        const int c_value = existing.column("value");
        if (c_method < 0 || c_m < 0 || c_unit < 0)
            throw DataError("unrecognized results file: " + path);
        for (const auto& row : existing.rows) {
            ResultRow r;
            r.dataset = c_dataset >= 0 ? row[c_dataset] : "";
            r.method = row[c_method];
            r.m = std::stoi(row[c_m]);
            r.unit = std::stoi(row[c_unit]);
            r.metric = c_metric >= 0 ? row[c_metric] : "";
            if (c_value >= 0) parse_double(row[c_value], r.value);
            rows.push_back(r);
            done.insert(r.method + "|" + std::to_string(r.m) + "|" +
                        std::to_string(r.unit));
        }
        return done;
    }

    void append(const ResultRow& r) {
        std::lock_guard<std::mutex> lock(mutex);
        const bool fresh = !fs::exists(path);
        std::ofstream out(path, std::ios::app);
        if (fresh) {
            for (std::size_t i = 0; i < header.size(); ++i)
                out << (i ? "," : "") << header[i];
            out << '\n';
        }
        out << r.dataset << ',' << r.method << ',' << r.m << ',' << r.unit << ','
            << r.metric << ',' << format_double(r.value) << '\n';
        rows.push_back(r);
    }

    // canonical order makes completed runs byte-for-byte reproducible
    void finalize() {
        std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
            if (a.dataset != b.dataset) return a.dataset < b.dataset;
            if (a.method != b.method) return a.method < b.method;
            if (a.m != b.m) return a.m < b.m;
            return a.unit < b.unit;
        });
        std::ofstream out(path);
        for (std::size_t i = 0; i < header.size(); ++i)
            out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto& r : rows)
            out << r.dataset << ',' << r.method << ',' << r.m << ',' << r.unit << ','
                << r.metric << ',' << format_double(r.value) << '\n';
    }
};

// out_dir/histories/<tag>_history.csv plus the knot trajectory for Grad runs
void export_histories(const std::string& out_dir, const std::string& tag,
                      const TrainResult& trained) {
    const std::string dir = join_path(out_dir, "histories");
    ensure_dir(dir);
    write_training_history(join_path(dir, tag + "_history.csv"), trained.history);
    if (!trained.knot_history.empty())
        write_knot_trajectory(join_path(dir, tag + "_knots.csv"), trained.knot_history);
}

std::vector<std::string> expand_methods(const std::vector<std::string>& methods,
                                        bool ablation) {
    std::vector<std::string> out;
    for (const auto& name : methods) {
        if (name == "all") {
            const auto block = ablation ? EncoderSpec::ablation_sweep_methods()
                                        : EncoderSpec::benchmark_methods();
            out.insert(out.end(), block.begin(), block.end());
            if (ablation) {
                const auto refs = EncoderSpec::ablation_reference_methods();
                out.insert(out.end(), refs.begin(), refs.end());
            }
        } else {
            out.push_back(name);
        }
    }
    std::vector<std::string> unique;
    for (const auto& name : out)
        if (std::find(unique.begin(), unique.end(), name) == unique.end())
            unique.push_back(name);
    return unique;
}

} // namespace

int run_benchmark(const BenchmarkOptions& opt) {
    ensure_dir(opt.out_dir);
    const Dataset data =
        ingest_csv(opt.input, opt.target, opt.categorical, parse_task(opt.task));
    const FoldPlan plan = make_folds(data, opt.folds, opt.seed);
    if (plan.class_smaller_than_k)
        std::cerr << "[benchmark] warning: a class has fewer members than folds; "
                     "stratification is best-effort\n";
    const std::vector<std::string> methods = expand_methods(opt.methods, false);

    ResultSink sink;
    sink.path = join_path(opt.out_dir, "results.csv");
    sink.header = {"dataset", "method", "m", "fold", "metric", "value"};
    const std::set<std::string> done = sink.load_existing(false);

    struct Unit {
        std::string method;
        int m;
        int fold;
    };
    std::vector<Unit> units;
    for (const auto& method : methods)
        for (int m : opt.sizes)
            for (int fold = 0; fold < plan.k; ++fold) {
                const std::string key =
                    method + "|" + std::to_string(m) + "|" + std::to_string(fold);
                if (!done.count(key)) units.push_back({method, m, fold});
            }

    // Std/MinMax repeat identically across sizes; memoize per fold.
    std::map<std::string, FoldMetric> sizeless_memo;
    std::mutex memo_mutex;

    run_units(opt.jobs, static_cast<int>(units.size()), [&](int i) {
        const Unit& unit = units[i];
        const EncoderSpec spec = EncoderSpec::parse(unit.method, unit.m);
        FoldMetric fm;
        if (!spec.uses_output_size()) {
            const std::string memo_key = unit.method + "|" + std::to_string(unit.fold);
            {
                std::lock_guard<std::mutex> lock(memo_mutex);
                const auto it = sizeless_memo.find(memo_key);
                if (it != sizeless_memo.end()) fm = it->second;
            }
            if (fm.metric_name.empty()) {
                fm = run_fold(data, spec, opt.train, plan, unit.fold);
                std::lock_guard<std::mutex> lock(memo_mutex);
                sizeless_memo[memo_key] = fm;
            }
        } else {
            TrainResult trained;
            fm = run_fold(data, spec, opt.train, plan, unit.fold,
                          opt.histories ? &trained : nullptr);
            if (opt.histories)
                export_histories(opt.out_dir,
                                 unit.method + "_m" + std::to_string(unit.m) + "_fold" +
                                     std::to_string(unit.fold),
                                 trained);
        }
        sink.append({data.name, unit.method, unit.m, unit.fold, fm.metric_name,
                     fm.value});
        std::cerr << "[benchmark] " << unit.method << " m=" << unit.m
                  << " fold=" << unit.fold << " " << fm.metric_name << "=" << fm.value
                  << "\n";
    });
    sink.finalize();

    ManifestBuilder manifest("benchmark");
    manifest.set_config(json{{"input", opt.input},
                             {"target", opt.target},
                             {"methods", methods},
                             {"sizes", opt.sizes},
                             {"folds", opt.folds},
                             {"seed", opt.seed},
                             {"train", train_config_json(opt.train)}});
    manifest.doc["seed"] = opt.seed;
    manifest.add_artifact(sink.path);
    manifest.write(join_path(opt.out_dir, "manifest.json"));
    return 0;
}

namespace {

Dataset ablation_dataset(int n, std::uint64_t seed) {
    const AblationData gen = gen_ablation(n, seed);
    Dataset data;
    data.name = "ablation";
    data.task = Task::Regression;
    data.numerical = gen.features;
    data.categorical.resize(gen.features.rows(), 0);
    data.target = gen.target;
    data.num_names = {"x0", "x1"};
    data.target_name = "y";
    return data;
}

} // namespace

int run_ablation(const AblationOptions& opt) {
    ensure_dir(opt.out_dir);
    const std::vector<std::string> methods = expand_methods(opt.methods, true);

    ResultSink sink;
    sink.path = join_path(opt.out_dir, "ablation_results.csv");
    sink.header = {"dataset", "method", "m", "seed", "metric", "value"};
    const std::set<std::string> done = sink.load_existing(true);

    struct Unit {
        std::string method;
        int m; // 0 for the sizeless reference methods
        int seed_idx;
    };
    std::vector<Unit> units;
    for (const auto& method : methods) {
        const bool sized = EncoderSpec::parse(method, 30).uses_output_size();
        const std::vector<int> sizes = sized ? opt.sizes : std::vector<int>{0};
        for (int m : sizes)
            for (int s = 0; s < opt.seeds; ++s) {
                const std::string key =
                    method + "|" + std::to_string(m) + "|" + std::to_string(s);
                if (!done.count(key)) units.push_back({method, m, s});
            }
    }

    // one dataset and fold plan per seed, shared across methods
    std::map<int, std::pair<Dataset, FoldPlan>> per_seed;
    std::mutex seed_mutex;
    auto seed_data = [&](int s) -> const std::pair<Dataset, FoldPlan>& {
        std::lock_guard<std::mutex> lock(seed_mutex);
        auto it = per_seed.find(s);
        if (it == per_seed.end()) {
            Dataset d = ablation_dataset(opt.n_samples, opt.seed_base + s);
            FoldPlan p = make_folds(d, 5, opt.seed_base + s);
            if (opt.export_data)
                write_dataset_csv(d, join_path(opt.out_dir, "ablation_data_seed" +
                                                                std::to_string(s) + ".csv"));
            it = per_seed.emplace(s, std::make_pair(std::move(d), std::move(p))).first;
        }
        return it->second;
    };

    run_units(opt.jobs, static_cast<int>(units.size()), [&](int i) {
        const Unit& unit = units[i];
        const auto& [data, plan] = seed_data(unit.seed_idx);
        const EncoderSpec spec = EncoderSpec::parse(unit.method, unit.m > 0 ? unit.m : 7);
        // single split per seed: test fold 0 of the 5-fold plan, 10% validation
        TrainResult trained;
        const FoldMetric fm =
            run_fold(data, spec, opt.train, plan, 0, opt.histories ? &trained : nullptr);
        if (opt.histories)
            export_histories(opt.out_dir,
                             unit.method + "_m" + std::to_string(unit.m) + "_seed" +
                                 std::to_string(unit.seed_idx),
                             trained);
        sink.append({data.name, unit.method, unit.m, unit.seed_idx, fm.metric_name,
                     fm.value});
        std::cerr << "[ablation] " << unit.method << " m=" << unit.m
                  << " seed=" << unit.seed_idx << " nrmse=" << fm.value << "\n";
    });
    sink.finalize();

    // mean +/- std summary over seeds
    std::map<std::pair<std::string, int>, std::vector<double>> grouped;
    for (const auto& row : sink.rows) grouped[{row.method, row.m}].push_back(row.value);
    CsvTable summary;
    summary.header = {"method", "m", "mean_nrmse", "std_nrmse", "seeds"};
    for (const auto& [key, values] : grouped) {
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        const double sd = values.size() > 1 ? std::sqrt(ss / (values.size() - 1.0)) : 0.0;
        summary.rows.push_back({key.first, std::to_string(key.second),
                                format_double(mean), format_double(sd),
                                std::to_string(values.size())});
    }
    const std::string summary_path = join_path(opt.out_dir, "ablation_summary.csv");
    write_csv(summary_path, summary);

    ManifestBuilder manifest("ablation");
    manifest.set_config(json{{"methods", methods},
                             {"sizes", opt.sizes},
                             {"seeds", opt.seeds},
                             {"seed_base", opt.seed_base},
                             {"n", opt.n_samples},
                             {"train", train_config_json(opt.train)}});
    manifest.doc["seed"] = opt.seed_base;
    manifest.add_artifact(sink.path);
    manifest.add_artifact(summary_path);
    manifest.write(join_path(opt.out_dir, "manifest.json"));
    return 0;
}

int run_illustrate(const IllustrateOptions& opt) {
    ensure_dir(opt.out_dir);
    const int m = opt.m;
    const int degree = 3;

    // matched budget: uniform PLE bins and a clamped uniform cubic basis
    PleBoundaries ple;
    ple.bounds.resize(m + 1);
    for (int t = 0; t <= m; ++t) ple.bounds[t] = static_cast<double>(t) / m;
    const KnotVector kv =
        build_clamped_knots(uniform_knots(0.0, 1.0, m - degree - 1), degree, 0.0, 1.0);

    auto encode_ple_matrix = [&](const VectorXd& x) {
        MatrixXd phi(x.size(), m);
        for (Eigen::Index i = 0; i < x.size(); ++i)
            phi.row(i) = encode_ple(x[i], ple).transpose();
        return phi;
    };
    auto encode_bs_matrix = [&](const VectorXd& x) {
        return eval_basis_batch(BasisFamily::BSpline, kv,
                                std::span<const double>(x.data(), x.size()));
    };

    const int grid_n = 1001;
    VectorXd grid(grid_n);
    for (int i = 0; i < grid_n; ++i) grid[i] = static_cast<double>(i) / (grid_n - 1);

    json metrics;

    // regression: Ridge on both encodings, scored against the noiseless
    // target on the dense grid
    {
        const auto data = gen_illustration_regression(opt.n_samples, opt.seed);
        const VectorXd w_ple = ridge_fit(encode_ple_matrix(data.x), data.y, opt.ridge_reg);
        const VectorXd w_bs = ridge_fit(encode_bs_matrix(data.x), data.y, opt.ridge_reg);
        const VectorXd ple_curve = ridge_predict(encode_ple_matrix(grid), w_ple);
        const VectorXd bs_curve = ridge_predict(encode_bs_matrix(grid), w_bs);
        VectorXd truth(grid_n);
        for (int i = 0; i < grid_n; ++i) truth[i] = illustration_truth(grid[i]);

        metrics["regression"]["ple"]["nrmse"] = nrmse(ple_curve, truth);
        metrics["regression"]["bspline"]["nrmse"] = nrmse(bs_curve, truth);

        CsvTable curve;
        curve.header = {"x", "ple_prediction", "bspline_prediction", "truth"};
        for (int i = 0; i < grid_n; ++i)
            curve.rows.push_back({format_double(grid[i]), format_double(ple_curve[i]),
                                  format_double(bs_curve[i]), format_double(truth[i])});
        write_csv(join_path(opt.out_dir, "illustration_regression.csv"), curve);
    }

    // classification: logistic regression, scored against the sampled labels
    {
        const auto data = gen_illustration_classification(opt.n_samples, opt.seed);
        const VectorXd w_ple = logistic_fit(encode_ple_matrix(data.x), data.labels);
        const VectorXd w_bs = logistic_fit(encode_bs_matrix(data.x), data.labels);
        const VectorXd p_ple = logistic_predict_proba(encode_ple_matrix(data.x), w_ple);
        const VectorXd p_bs = logistic_predict_proba(encode_bs_matrix(data.x), w_bs);
        metrics["classification"]["ple"]["auc"] = roc_auc(p_ple, data.labels);
        metrics["classification"]["ple"]["brier"] = brier(p_ple, data.labels);
        metrics["classification"]["bspline"]["auc"] = roc_auc(p_bs, data.labels);
        metrics["classification"]["bspline"]["brier"] = brier(p_bs, data.labels);

        const VectorXd g_ple = logistic_predict_proba(encode_ple_matrix(grid), w_ple);
        const VectorXd g_bs = logistic_predict_proba(encode_bs_matrix(grid), w_bs);
        CsvTable curve;
        curve.header = {"x", "ple_probability", "bspline_probability",
                        "true_probability"};
        for (int i = 0; i < grid_n; ++i)
            curve.rows.push_back({format_double(grid[i]), format_double(g_ple[i]),
                                  format_double(g_bs[i]),
                                  format_double(illustration_probability(grid[i]))});
        write_csv(join_path(opt.out_dir, "illustration_classification.csv"), curve);
    }

    const std::string metrics_path = join_path(opt.out_dir, "illustration_metrics.json");
    std::ofstream(metrics_path) << metrics.dump(2) << '\n';

    ManifestBuilder manifest("illustrate");
    manifest.set_config(json{{"seed", opt.seed},
                             {"m", opt.m},
                             {"n", opt.n_samples},
                             {"ridge_reg", opt.ridge_reg}});
    manifest.doc["seed"] = opt.seed;
    manifest.add_artifact(join_path(opt.out_dir, "illustration_regression.csv"));
    manifest.add_artifact(join_path(opt.out_dir, "illustration_classification.csv"));
    manifest.add_artifact(metrics_path);
    manifest.write(join_path(opt.out_dir, "manifest.json"));
    return 0;
}

int run_stats(const StatsOptions& opt) {
    const CsvTable table = read_csv(opt.results);
    const int c_dataset = table.column("dataset");
    const int c_method = table.column("method");
    const int c_m = table.column("m");
    const int c_metric = table.column("metric");
    const int c_value = table.column("value");
    if (c_dataset < 0 || c_method < 0 || c_m < 0 || c_metric < 0 || c_value < 0)
        throw DataError("results file must have dataset,method,m,fold,metric,value");

    // mean over folds per (dataset, m, method); m = 0 rows (Std/MinMax)
    // apply to every block of their dataset
    struct Cell {
        double sum = 0.0;
        int count = 0;
        std::string metric;
    };
    std::map<std::pair<std::string, int>, std::map<std::string, Cell>> blocks;
    std::map<std::string, std::map<std::string, Cell>> sizeless;
    std::set<std::string> methods_seen;
    for (const auto& row : table.rows) {
        double value = 0.0;
        if (!parse_double(row[c_value], value))
            throw DataError("non-numeric value in results file");
        const int m = std::stoi(row[c_m]);
        methods_seen.insert(row[c_method]);
        Cell& cell = m == 0 ? sizeless[row[c_dataset]][row[c_method]]
                            : blocks[{row[c_dataset], m}][row[c_method]];
        cell.sum += value;
        cell.count += 1;
        cell.metric = row[c_metric];
    }
    if (blocks.empty())
        for (const auto& [dataset, cells] : sizeless) blocks[{dataset, 0}];

    const std::vector<std::string> methods(methods_seen.begin(), methods_seen.end());
    const int k = static_cast<int>(methods.size());
    const int N = static_cast<int>(blocks.size());
    if (k < 2) throw DataError("need at least two methods to rank");
    if (N < 2) throw DataError("need at least two blocks to rank");

    MatrixXd ranks(N, k);
    int b = 0;
    for (const auto& [block_key, cells] : blocks) {
        VectorXd values(k);
        std::string metric;
        for (int j = 0; j < k; ++j) {
            const Cell* cell = nullptr;
            const auto cit = cells.find(methods[j]);
            if (cit != cells.end()) cell = &cit->second;
            if (!cell) {
                const auto sit = sizeless.find(block_key.first);
                if (sit != sizeless.end()) {
                    const auto scit = sit->second.find(methods[j]);
                    if (scit != sit->second.end()) cell = &scit->second;
                }
            }
            if (!cell || cell->count == 0)
                throw DataError("missing cell: dataset=" + block_key.first +
                                " m=" + std::to_string(block_key.second) +
                                " method=" + methods[j]);
            values[j] = cell->sum / cell->count;
            metric = cell->metric;
        }
        const bool higher_better = metric == "auc";
        ranks.row(b++) = rank_block(values, higher_better);
    }

    const FriedmanResult fr = friedman_nemenyi(ranks, opt.alpha);
    const auto cliques = nemenyi_cliques(fr.avg_ranks, fr.critical_difference);

    json out;
    out["alpha"] = opt.alpha;
    out["methods_count"] = k;
    out["blocks"] = N;
    out["friedman_chi_squared"] = fr.chi_squared;
    out["iman_davenport"] = fr.iman_davenport;
    out["critical_difference"] = fr.critical_difference;
    out["methods"] = json::array();
    for (int j = 0; j < k; ++j) {
        json entry;
        entry["method"] = methods[j];
        entry["avg_rank"] = fr.avg_ranks[j];
        entry["clique_memberships"] = json::array();
        for (std::size_t c = 0; c < cliques.size(); ++c)
            if (std::find(cliques[c].begin(), cliques[c].end(), j) != cliques[c].end())
                entry["clique_memberships"].push_back(c);
        out["methods"].push_back(entry);
    }
    out["cliques"] = json::array();
    for (const auto& clique : cliques) {
        json names = json::array();
        for (int j : clique) names.push_back(methods[j]);
        out["cliques"].push_back(names);
    }
    std::ofstream(opt.out) << out.dump(2) << '\n';

    ManifestBuilder manifest("stats");
    manifest.set_config(json{{"results", opt.results}, {"alpha", opt.alpha}});
    manifest.add_artifact(opt.out);
    manifest.write(opt.out + ".manifest.json");
    return 0;
}

} // namespace numenc::cli
