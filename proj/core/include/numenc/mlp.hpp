#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "numenc/learnable.hpp"
#include "numenc/rng.hpp"
#include "numenc/types.hpp"

namespace numenc {

struct MlpConfig {
    std::vector<int> hidden = {256, 128, 64};
    double dropout = 0.3;
};

struct ForwardCache {
    const void* model_tag = nullptr;
    bool train_mode = false;
    MatrixXd input;
    std::vector<MatrixXd> pre_activations;
    std::vector<MatrixXd> activations;   // post ReLU + dropout, per hidden layer
    std::vector<MatrixXd> dropout_masks; // inverted-scaling masks, train mode only
};

struct MlpGradients {
    std::vector<MatrixXd> weight_grads;
    std::vector<VectorXd> bias_grads;
    MatrixXd input_grad;
};

/// Plain MLP with ReLU activations and inverted dropout after each hidden
/// layer. Forward caches everything backward needs; backward produces exact
/// reverse-mode gradients for the parameters and the input matrix.
class MlpModel {
public:
    static MlpModel init(int input_width, int output_width, const MlpConfig& cfg,
                         Rng& rng);

    int input_width() const { return input_width_; }
    int output_width() const { return output_width_; }
    double dropout_rate() const { return dropout_; }
    int num_layers() const { return static_cast<int>(weights_.size()); }

    std::vector<MatrixXd>& weights() { return weights_; }
    std::vector<VectorXd>& biases() { return biases_; }
    const std::vector<MatrixXd>& weights() const { return weights_; }
    const std::vector<VectorXd>& biases() const { return biases_; }

    MatrixXd forward(const MatrixXd& batch, bool train_mode, Rng* rng,
                     ForwardCache* cache = nullptr) const;
    MlpGradients backward(const ForwardCache& cache, const MatrixXd& loss_grad) const;

private:
    int input_width_ = 0;
    int output_width_ = 0;
    double dropout_ = 0.0;
    std::vector<MatrixXd> weights_; // layer l: (out x in)
    std::vector<VectorXd> biases_;
};

/// Mean squared loss over the batch; grad receives dL/dpred when non-null.
double squared_loss(const MatrixXd& pred, const VectorXd& target, MatrixXd* grad);

/// Mean softmax cross-entropy over integer labels; grad receives dL/dlogits.
double softmax_cross_entropy(const MatrixXd& logits, const VectorXi& labels,
                             MatrixXd* grad);

MatrixXd softmax_rows(const MatrixXd& logits);

/// Per-sample LayerNorm over one feature block with learnable scale/shift.
struct LayerNormBlock {
    VectorXd gamma;
    VectorXd beta;
    double eps = 1e-5;

    static LayerNormBlock identity(int width);
};

struct LayerNormCache {
    MatrixXd xhat;
    VectorXd inv_std;
};

MatrixXd layernorm_forward(const LayerNormBlock& block, const MatrixXd& x,
                           LayerNormCache* cache = nullptr);
/// Returns dX; fills dGamma / dBeta.
MatrixXd layernorm_backward(const LayerNormBlock& block, const LayerNormCache& cache,
                            const MatrixXd& upstream, VectorXd& dgamma,
                            VectorXd& dbeta);

/// Decoupled-weight-decay Adam with bias correction,
/// beta = (0.9, 0.999), eps = 1e-8.
struct AdamState {
    VectorXd m;
    VectorXd v;
    long t = 0;
};

void adamw_step(VectorXd& params, const VectorXd& grads, AdamState& state, double lr,
                double weight_decay);
void adamw_step_flat(double* params, const double* grads, Eigen::Index n,
                     AdamState& state, double lr, double weight_decay);

/// Knot logits (and the M-spline LayerNorm stabilizers) trained jointly with
/// the backbone.
struct LearnableEncoder {
    LearnableKnots knots;
    bool layer_norm = false;          // learnable M-spline stabilization
    std::vector<LayerNormBlock> ln;   // one block per feature when layer_norm

    int num_features() const { return knots.num_features(); }
    int basis_count() const {
        return knots.logits.empty()
                   ? 0
                   : knots.logits.front().num_internal() + knots.degree + 1;
    }
    /// Encoding with the current knots; extra columns pass through untouched.
    MatrixXd encode(const MatrixXd& numerical, const MatrixXd& extra) const;
};

LearnableEncoder make_learnable_encoder(BasisFamily family, int n_features, int m,
                                        int degree, double delta = 1e-3);

struct TrainConfig {
    double lr = 1e-4;
    double weight_decay = 1e-5;
    int batch_size = 512;
    int max_epochs = 200;
    int early_stop_patience = 15;
    int plateau_patience = 10;
    double plateau_factor = 0.1;
    double knot_lr = 2e-4;
    int warmup_epochs = 50;
    std::uint64_t seed = 0;
    double improvement_rtol = 1e-8;
    KnotRegularizerConfig knot_reg{};
    bool log_knots_every_epoch = true;
};

/// Either precomputed features (fixed encoders) or scaled numerical columns
/// plus passthrough columns to be encoded on the fly (learnable encoders).
struct TrainData {
    Task task = Task::Regression;
    int n_classes = 2;
    // fixed path
    MatrixXd phi_train, phi_val;
    // learnable path
    MatrixXd num_train, num_val;
    MatrixXd extra_train, extra_val;
    VectorXd y_train, y_val; // z-scored targets or class labels
};

struct EpochRecord {
    int epoch = 0;
    double train_loss = 0.0;
    double val_metric = 0.0;
    double lr = 0.0;
    double knot_lr = 0.0;
};

struct TrainResult {
    MlpModel model; // parameters from the best validation epoch
    std::optional<LearnableEncoder> encoder;
    std::vector<EpochRecord> history;
    std::vector<KnotHistoryRow> knot_history;
    int best_epoch = 0;
    double best_val = 0.0;
};

/// Mini-batch AdamW loop with seeded shuffling, plateau decay of both
/// learning rates, early stopping on the validation loss, best-epoch
/// restoration, and the knot warm-up contract for learnable encoders.
TrainResult train(const MlpModel& model, const std::optional<LearnableEncoder>& encoder,
                  const TrainData& data, const TrainConfig& cfg);

/// CSV with columns epoch,train_loss,val_metric,lr,knot_lr.
void write_training_history(const std::string& path,
                            const std::vector<EpochRecord>& history);

/// CSV with columns epoch,feature,knot_index,value.
void write_knot_trajectory(const std::string& path,
                           const std::vector<KnotHistoryRow>& history);

/// Eval-mode predictions with the (possibly learnable) encoder applied.
MatrixXd predict(const MlpModel& model, const std::optional<LearnableEncoder>& encoder,
                 const MatrixXd& phi_or_num, const MatrixXd& extra);

} // namespace numenc
