#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "numenc/encoder.hpp"
#include "numenc/mlp.hpp"
#include "numenc/types.hpp"

namespace numenc {

/// Ingested table: numerical matrix, label-encoded categoricals with their
/// sorted vocabularies, and the target. Rows with missing cells are dropped
/// at ingestion.
struct Dataset {
    std::string name;
    MatrixXd numerical;   // n x d
    MatrixXi categorical; // n x c global codes (sorted-vocabulary order)
    VectorXd target;      // regression values or 0-based class codes
    Task task = Task::Regression;
    std::vector<std::string> num_names;
    std::vector<std::string> cat_names;
    std::vector<std::vector<std::string>> cat_vocab; // per column, sorted
    std::vector<std::string> class_names;            // classification targets
    std::string target_name;

    Eigen::Index rows() const { return numerical.rows(); }
    int num_features() const { return static_cast<int>(numerical.cols()); }
    int cat_features() const { return static_cast<int>(categorical.cols()); }
};

/// Reads a CSV with a header, drops rows with missing cells, label-encodes
/// the named categorical columns and infers the task from the target values
/// unless overridden.
Dataset ingest_csv(const std::string& path, const std::string& target_column,
                   const std::vector<std::string>& categorical_columns = {},
                   std::optional<Task> task_override = std::nullopt);

/// Writes a dataset back to the ingestible CSV format (numerical columns,
/// categorical vocabulary strings, target last).
void write_dataset_csv(const Dataset& data, const std::string& path);

/// k-fold test partitions with stratification for classification. Fold
/// bookkeeping is derived from a canonical row ordering so results do not
/// depend on the row order of the input file.
struct FoldPlan {
    int k = 5;
    std::uint64_t seed = 0;
    bool stratified = false;
    bool class_smaller_than_k = false; // warning: class spread is best-effort
    double validation_fraction = 0.10;
    std::vector<std::vector<int>> test_folds;

    std::uint64_t fold_seed(int fold) const { return seed + static_cast<std::uint64_t>(fold); }
};

FoldPlan make_folds(const Dataset& data, int k = 5, std::uint64_t seed = 0);

/// Train/validation/test row indices of one fold; validation is carved from
/// the training portion only (stratified for classification).
struct FoldSplit {
    std::vector<int> train;
    std::vector<int> val;
    std::vector<int> test;
};
FoldSplit fold_split(const Dataset& data, const FoldPlan& plan, int fold);

/// Scalers (min-max, z-score, target normalization) fitted on train rows.
ScalerState fit_scalers(const std::vector<int>& train_rows, const Dataset& data);

/// Complete per-fold preprocessing state fitted on the given training rows.
FittedEncoder fit_encoder(const Dataset& data, const std::vector<int>& train_rows,
                          const EncoderSpec& spec, std::uint64_t seed);

struct FoldMetric {
    int fold = 0;
    std::string metric_name;
    double value = 0.0;
};

struct RunResult {
    EncoderSpec spec;
    std::vector<FoldMetric> fold_metrics;
};

/// One fold of run_config: fit scalers and encoder on the training split,
/// train the MLP (with the learnable-knot path for Grad-U tags), and score
/// the test fold with NRMSE or (weighted one-vs-rest) AUC. trained_out, when
/// non-null, receives the training history and best-epoch state.
FoldMetric run_fold(const Dataset& data, const EncoderSpec& spec,
                    const TrainConfig& cfg, const FoldPlan& plan, int fold,
                    TrainResult* trained_out = nullptr);

/// Cross-validated train/evaluate loop for one encoder spec over all folds.
RunResult run_config(const Dataset& data, const EncoderSpec& spec,
                     const TrainConfig& cfg, const FoldPlan& plan);

/// Metric evaluation shared by run_config and the CLI: predictions on the
/// original target scale for regression, probability scores otherwise.
double score_predictions(Task task, const MatrixXd& pred_raw, const VectorXd& y_true,
                         const ScalerState& scaler, int n_classes);

} // namespace numenc
