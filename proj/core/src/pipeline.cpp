#include "numenc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "numenc/csv.hpp"
#include "numenc/errors.hpp"
#include "numenc/metrics.hpp"

namespace numenc {

namespace {

std::string file_stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

bool numeric_aware_less(const std::string& a, const std::string& b) {
    double da, db;
    const bool na = parse_double(a, da);
    const bool nb = parse_double(b, db);
    if (na && nb) return da < db;
    if (na != nb) return na; // numbers sort before strings
    return a < b;
}

} // namespace

Dataset ingest_csv(const std::string& path, const std::string& target_column,
                   const std::vector<std::string>& categorical_columns,
                   std::optional<Task> task_override) {
    const CsvTable table = read_csv(path);
    const int target_idx = table.column(target_column);
    if (target_idx < 0) throw TargetMissing("target column not found: " + target_column);

    const int ncols = static_cast<int>(table.header.size());
    std::vector<bool> is_cat(ncols, false);
    for (const auto& name : categorical_columns) {
        const int idx = table.column(name);
        if (idx < 0) throw ConfigError("categorical column not found: " + name);
        if (idx == target_idx)
            throw ConfigError("target column cannot be categorical input: " + name);
        is_cat[idx] = true;
    }

    // Drop rows with any missing cell, then promote non-numeric feature
    // columns to categorical.
    std::vector<int> kept;
    for (int r = 0; r < static_cast<int>(table.rows.size()); ++r) {
        bool complete = true;
        for (const auto& cell : table.rows[r])
            if (is_missing_cell(cell)) {
                complete = false;
                break;
            }
        if (complete) kept.push_back(r);
    }
    if (kept.empty()) throw AllRowsDropped("no complete rows in " + path);

    for (int c = 0; c < ncols; ++c) {
        if (c == target_idx || is_cat[c]) continue;
        for (int r : kept) {
            double v;
            if (!parse_double(table.rows[r][c], v)) {
                is_cat[c] = true;
                break;
            }
        }
    }

    Dataset data;
    data.name = file_stem(path);
    data.target_name = target_column;

    std::vector<int> num_cols, cat_cols;
    for (int c = 0; c < ncols; ++c) {
        if (c == target_idx) continue;
        if (is_cat[c]) {
            cat_cols.push_back(c);
            data.cat_names.push_back(table.header[c]);
        } else {
            num_cols.push_back(c);
            data.num_names.push_back(table.header[c]);
        }
    }

    const auto n = static_cast<Eigen::Index>(kept.size());
    data.numerical.resize(n, static_cast<Eigen::Index>(num_cols.size()));
    for (Eigen::Index i = 0; i < n; ++i)
        for (std::size_t j = 0; j < num_cols.size(); ++j) {
            double v;
            parse_double(table.rows[kept[i]][num_cols[j]], v);
            data.numerical(i, static_cast<Eigen::Index>(j)) = v;
        }

    // Categorical vocabularies are sorted so the integer codes do not depend
    // on row order.
    data.categorical.resize(n, static_cast<Eigen::Index>(cat_cols.size()));
    for (std::size_t j = 0; j < cat_cols.size(); ++j) {
        std::set<std::string> values;
        for (int r : kept) values.insert(table.rows[r][cat_cols[j]]);
        std::vector<std::string> vocab(values.begin(), values.end());
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& cell = table.rows[kept[i]][cat_cols[j]];
            const auto it = std::lower_bound(vocab.begin(), vocab.end(), cell);
            data.categorical(i, static_cast<Eigen::Index>(j)) =
                static_cast<int>(it - vocab.begin());
        }
        data.cat_vocab.push_back(std::move(vocab));
    }

    // Task inference: a fully numeric target means regression.
    bool numeric_target = true;
    for (int r : kept) {
        double v;
        if (!parse_double(table.rows[r][target_idx], v)) {
            numeric_target = false;
            break;
        }
    }
    Task task = numeric_target ? Task::Regression : Task::Binary;
    if (task_override) task = *task_override;

    data.target.resize(n);
    if (task == Task::Regression) {
        if (!numeric_target)
            throw DataError("regression requested but target is not numeric");
        for (Eigen::Index i = 0; i < n; ++i) {
            double v;
            parse_double(table.rows[kept[i]][target_idx], v);
            data.target[i] = v;
        }
    } else {
        std::set<std::string> labels;
        for (int r : kept) labels.insert(table.rows[r][target_idx]);
        std::vector<std::string> classes(labels.begin(), labels.end());
        std::sort(classes.begin(), classes.end(), numeric_aware_less);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& cell = table.rows[kept[i]][target_idx];
            const auto it = std::find(classes.begin(), classes.end(), cell);
            data.target[i] = static_cast<double>(it - classes.begin());
        }
        data.class_names = classes;
        task = classes.size() > 2 ? Task::Multiclass : Task::Binary;
        if (task_override && *task_override == Task::Multiclass) task = Task::Multiclass;
    }
    data.task = task;
    return data;
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
    CsvTable table;
    table.header = data.num_names;
    table.header.insert(table.header.end(), data.cat_names.begin(), data.cat_names.end());
    table.header.push_back(data.target_name.empty() ? "target" : data.target_name);
    table.rows.reserve(data.rows());
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        std::vector<std::string> row;
        for (Eigen::Index j = 0; j < data.numerical.cols(); ++j)
            row.push_back(format_double(data.numerical(i, j)));
        for (Eigen::Index j = 0; j < data.categorical.cols(); ++j)
            row.push_back(data.cat_vocab[j][data.categorical(i, j)]);
        if (data.task == Task::Regression)
            row.push_back(format_double(data.target[i]));
        else
            row.push_back(data.class_names[static_cast<int>(data.target[i])]);
        table.rows.push_back(std::move(row));
    }
    write_csv(path, table);
}

namespace {

// Row order of the input file must not leak into fold assignment, so all
// shuffling happens over a canonical (lexicographically sorted) ordering.
std::vector<int> canonical_order(const Dataset& data) {
    std::vector<int> order(data.rows());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        for (Eigen::Index j = 0; j < data.numerical.cols(); ++j) {
            if (data.numerical(a, j) != data.numerical(b, j))
                return data.numerical(a, j) < data.numerical(b, j);
        }
        for (Eigen::Index j = 0; j < data.categorical.cols(); ++j) {
            if (data.categorical(a, j) != data.categorical(b, j))
                return data.categorical(a, j) < data.categorical(b, j);
        }
        return data.target[a] < data.target[b];
    });
    return order;
}

std::vector<int> canonical_rank(const Dataset& data) {
    const std::vector<int> order = canonical_order(data);
    std::vector<int> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    return rank;
}

void sort_by_rank(std::vector<int>& rows, const std::vector<int>& rank) {
    std::sort(rows.begin(), rows.end(), [&](int a, int b) { return rank[a] < rank[b]; });
}

} // namespace

FoldPlan make_folds(const Dataset& data, int k, std::uint64_t seed) {
    if (k < 2) throw ConfigError("make_folds: k must be >= 2");
    if (data.rows() < k) throw TooFewRows("make_folds: fewer rows than folds");
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.stratified = is_classification(data.task);
    plan.test_folds.assign(k, {});

    const std::vector<int> rank = canonical_rank(data);
    Rng rng(seed);
    if (!plan.stratified) {
        std::vector<int> order = canonical_order(data);
        rng.shuffle(order);
        for (std::size_t i = 0; i < order.size(); ++i)
            plan.test_folds[i % k].push_back(order[i]);
    } else {
        const int n_classes = static_cast<int>(data.class_names.size());
        long counter = 0;
        for (int c = 0; c < n_classes; ++c) {
            std::vector<int> members;
            for (int idx : canonical_order(data))
                if (static_cast<int>(data.target[idx]) == c) members.push_back(idx);
            if (static_cast<int>(members.size()) < k) plan.class_smaller_than_k = true;
            rng.shuffle(members);
            for (int idx : members) plan.test_folds[counter++ % k].push_back(idx);
        }
    }
    for (auto& fold : plan.test_folds) sort_by_rank(fold, rank);
    return plan;
}

FoldSplit fold_split(const Dataset& data, const FoldPlan& plan, int fold) {
    if (fold < 0 || fold >= plan.k) throw ConfigError("fold_split: fold out of range");
    FoldSplit split;
    split.test = plan.test_folds[fold];
    std::vector<bool> in_test(data.rows(), false);
    for (int idx : split.test) in_test[idx] = true;

    const std::vector<int> rank = canonical_rank(data);
    std::vector<int> rest;
    for (int idx : canonical_order(data))
        if (!in_test[idx]) rest.push_back(idx);

    Rng rng(plan.fold_seed(fold));
    if (!plan.stratified) {
        rng.shuffle(rest);
        const auto n_val = static_cast<std::size_t>(
            std::floor(plan.validation_fraction * static_cast<double>(rest.size()) + 0.5));
        split.val.assign(rest.begin(), rest.begin() + n_val);
        split.train.assign(rest.begin() + n_val, rest.end());
    } else {
        const int n_classes = static_cast<int>(data.class_names.size());
        for (int c = 0; c < n_classes; ++c) {
            std::vector<int> members;
            for (int idx : rest)
                if (static_cast<int>(data.target[idx]) == c) members.push_back(idx);
            rng.shuffle(members);
            auto n_val = static_cast<std::size_t>(std::floor(
                plan.validation_fraction * static_cast<double>(members.size()) + 0.5));
            if (n_val >= members.size() && !members.empty()) n_val = members.size() - 1;
            split.val.insert(split.val.end(), members.begin(), members.begin() + n_val);
            split.train.insert(split.train.end(), members.begin() + n_val, members.end());
        }
    }
    sort_by_rank(split.train, rank);
    sort_by_rank(split.val, rank);
    return split;
}

ScalerState fit_scalers(const std::vector<int>& train_rows, const Dataset& data) {
    if (train_rows.empty()) throw EmptyTrainingSet("fit_scalers: no training rows");
    const auto d = data.numerical.cols();
    ScalerState s;
    s.col_min.resize(d);
    s.col_max.resize(d);
    s.col_mean.resize(d);
    s.col_std.resize(d);
    s.constant_col.assign(static_cast<std::size_t>(d), false);
    const double n = static_cast<double>(train_rows.size());
    for (Eigen::Index j = 0; j < d; ++j) {
        double lo = data.numerical(train_rows[0], j);
        double hi = lo;
        double sum = 0.0;
        for (int r : train_rows) {
            const double v = data.numerical(r, j);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (int r : train_rows) {
            const double dv = data.numerical(r, j) - mean;
            ss += dv * dv;
        }
        s.col_min[j] = lo;
        s.col_max[j] = hi;
        s.col_mean[j] = mean;
        s.col_std[j] = n > 1.0 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        s.constant_col[static_cast<std::size_t>(j)] = !(hi > lo);
    }
    if (data.task == Task::Regression) {
        double sum = 0.0;
        for (int r : train_rows) sum += data.target[r];
        const double mean = sum / n;
        double ss = 0.0;
        for (int r : train_rows) {
            const double dv = data.target[r] - mean;
            ss += dv * dv;
        }
        s.target_mean = mean;
        const double sd = n > 1.0 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        s.target_std = sd > 0.0 ? sd : 1.0;
    }
    return s;
}

namespace {

MatrixXd gather_numerical(const Dataset& data, const std::vector<int>& rows) {
    MatrixXd out(static_cast<Eigen::Index>(rows.size()), data.numerical.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = data.numerical.row(rows[i]);
    return out;
}

MatrixXi gather_categorical(const Dataset& data, const std::vector<int>& rows) {
    MatrixXi out(static_cast<Eigen::Index>(rows.size()), data.categorical.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = data.categorical.row(rows[i]);
    return out;
}

VectorXd gather_target(const Dataset& data, const std::vector<int>& rows) {
    VectorXd out(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) out[static_cast<Eigen::Index>(i)] = data.target[rows[i]];
    return out;
}

PlacementStrategy strategy_for(const EncoderSpec& spec) {
    switch (spec.placement) {
        case PlacementStrategy::Kind::Uniform:
            return PlacementStrategy::uniform();
        case PlacementStrategy::Kind::Quantile:
            return PlacementStrategy::quantile();
        case PlacementStrategy::Kind::Cart:
            return PlacementStrategy::cart();
        case PlacementStrategy::Kind::Boosted:
            return PlacementStrategy::boosted_trees();
        case PlacementStrategy::Kind::Learnable:
            return PlacementStrategy::learnable();
    }
    return PlacementStrategy::uniform();
}

} // namespace

FittedEncoder fit_encoder(const Dataset& data, const std::vector<int>& train_rows,
                          const EncoderSpec& spec, std::uint64_t seed) {
    FittedEncoder enc;
    enc.spec = spec;
    enc.num_features = data.num_features();
    enc.scaler = fit_scalers(train_rows, data);

    for (Eigen::Index j = 0; j < data.categorical.cols(); ++j) {
        std::set<int> seen;
        for (int r : train_rows) seen.insert(data.categorical(r, j));
        enc.cat_vocab.emplace_back(seen.begin(), seen.end());
    }
    if (spec.kind == EncoderSpec::Kind::Std || spec.kind == EncoderSpec::Kind::MinMax)
        return enc;

    const MatrixXd scaled = enc.scale_numerical(gather_numerical(data, train_rows));
    const VectorXd y = gather_target(data, train_rows);

    if (spec.kind == EncoderSpec::Kind::Ple) {
        const TreeConstraints tc{1 << 20, 1, 2};
        for (Eigen::Index j = 0; j < scaled.cols(); ++j)
            enc.bounds.push_back(
                build_ple_boundaries(scaled.col(j), y, data.task, spec.m, PleMode::Cart, tc));
        return enc;
    }
    if (spec.kind == EncoderSpec::Kind::PleAdaptive) {
        for (Eigen::Index j = 0; j < scaled.cols(); ++j)
            enc.bounds.push_back(build_adaptive_ple(scaled.col(j), y, data.task));
        return enc;
    }
    enc.knots = place_all(scaled, y, data.task, strategy_for(spec),
                          KnotBudget{spec.m, spec.degree}, seed);
    return enc;
}

double score_predictions(Task task, const MatrixXd& pred_raw, const VectorXd& y_true,
                         const ScalerState& scaler, int n_classes) {
    if (task == Task::Regression) {
        const VectorXd pred_orig =
            (pred_raw.col(0).array() * scaler.target_std + scaler.target_mean).matrix();
        return nrmse(pred_orig, y_true);
    }
    const MatrixXd probs = softmax_rows(pred_raw);
    VectorXi labels(y_true.size());
    for (Eigen::Index i = 0; i < y_true.size(); ++i)
        labels[i] = static_cast<int>(y_true[i]);
    if (n_classes <= 2) return roc_auc(probs.col(1), labels);
    return weighted_ovr_auc(probs, labels);
}

FoldMetric run_fold(const Dataset& data, const EncoderSpec& spec,
                    const TrainConfig& cfg, const FoldPlan& plan, int fold,
                    TrainResult* trained_out) {
    const int n_classes =
        is_classification(data.task) ? static_cast<int>(data.class_names.size()) : 0;
    const int out_width = data.task == Task::Regression ? 1 : std::max(2, n_classes);

    const FoldSplit split = fold_split(data, plan, fold);
    const std::uint64_t fold_seed = plan.fold_seed(fold);
    const FittedEncoder enc = fit_encoder(data, split.train, spec, fold_seed);

    auto targets = [&](const std::vector<int>& rows) {
        VectorXd y = gather_target(data, rows);
        if (data.task == Task::Regression)
            y = ((y.array() - enc.scaler.target_mean) / enc.scaler.target_std).matrix();
        return y;
    };

    TrainData td;
    td.task = data.task;
    td.n_classes = out_width;
    td.y_train = targets(split.train);
    td.y_val = targets(split.val);

    std::optional<LearnableEncoder> state;
    if (spec.learnable()) {
        state = enc.make_learnable_state();
        td.num_train = enc.scale_numerical(gather_numerical(data, split.train));
        td.num_val = enc.scale_numerical(gather_numerical(data, split.val));
        td.extra_train = enc.encode_categorical(gather_categorical(data, split.train));
        td.extra_val = enc.encode_categorical(gather_categorical(data, split.val));
    } else {
        td.phi_train = enc.transform(gather_numerical(data, split.train),
                                     gather_categorical(data, split.train));
        td.phi_val = enc.transform(gather_numerical(data, split.val),
                                   gather_categorical(data, split.val));
    }

    const int input_width = enc.output_width();
    Rng init_rng(fold_seed);
    const MlpModel model = MlpModel::init(input_width, out_width, MlpConfig{}, init_rng);
    TrainConfig fold_cfg = cfg;
    fold_cfg.seed = fold_seed;
    TrainResult trained = train(model, state, td, fold_cfg);

    MatrixXd pred;
    if (spec.learnable()) {
        const MatrixXd num_test = enc.scale_numerical(gather_numerical(data, split.test));
        const MatrixXd extra_test =
            enc.encode_categorical(gather_categorical(data, split.test));
        pred = predict(trained.model, trained.encoder, num_test, extra_test);
    } else {
        const MatrixXd phi_test = enc.transform(gather_numerical(data, split.test),
                                                gather_categorical(data, split.test));
        pred = trained.model.forward(phi_test, false, nullptr);
    }
    const VectorXd y_test = gather_target(data, split.test);
    const double value = score_predictions(data.task, pred, y_test, enc.scaler, n_classes);
    if (trained_out) *trained_out = std::move(trained);
    return {fold, data.task == Task::Regression ? "nrmse" : "auc", value};
}

RunResult run_config(const Dataset& data, const EncoderSpec& spec,
                     const TrainConfig& cfg, const FoldPlan& plan) {
    RunResult result;
    result.spec = spec;
    for (int fold = 0; fold < plan.k; ++fold)
        result.fold_metrics.push_back(run_fold(data, spec, cfg, plan, fold));
    return result;
}

} // namespace numenc
