#include "numenc/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "numenc/csv.hpp"
#include "numenc/errors.hpp"

namespace numenc {

MlpModel MlpModel::init(int input_width, int output_width, const MlpConfig& cfg,
                        Rng& rng) {
    if (input_width < 1 || output_width < 1)
        throw ConfigError("MlpModel::init: widths must be positive");
    MlpModel model;
    model.input_width_ = input_width;
    model.output_width_ = output_width;
    model.dropout_ = cfg.dropout;
    std::vector<int> widths;
    widths.push_back(input_width);
    widths.insert(widths.end(), cfg.hidden.begin(), cfg.hidden.end());
    widths.push_back(output_width);
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const int fan_in = widths[l];
        const int fan_out = widths[l + 1];
        // standard linear-layer default; hotter inits stall badly on the
        // large-magnitude M-spline features
        const double limit = 1.0 / std::sqrt(static_cast<double>(fan_in));
        MatrixXd w(fan_out, fan_in);
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c)
                w(r, c) = rng.uniform(-limit, limit);
        model.weights_.push_back(std::move(w));
        model.biases_.push_back(VectorXd::Zero(fan_out));
    }
    return model;
}

namespace {

// Inexpensive generator for dropout masks; one seed is drawn from the main
// rng per mask so training streams stay reproducible.
struct MaskRng {
    std::uint64_t state;
    double next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};

} // namespace

MatrixXd MlpModel::forward(const MatrixXd& batch, bool train_mode, Rng* rng,
                           ForwardCache* cache) const {
    if (batch.cols() != input_width_)
        throw ShapeMismatch("forward: batch width does not match the model input");
    if (cache) {
        cache->model_tag = this;
        cache->train_mode = train_mode;
        cache->input = batch;
        cache->pre_activations.clear();
        cache->activations.clear();
        cache->dropout_masks.clear();
    }
    MatrixXd x = batch;
    const int L = num_layers();
    for (int l = 0; l < L; ++l) {
        MatrixXd z(x.rows(), weights_[l].rows());
        z.noalias() = x * weights_[l].transpose();
        z.rowwise() += biases_[l].transpose();
        if (l + 1 == L) {
            if (cache) cache->pre_activations.push_back(std::move(z));
            return cache ? cache->pre_activations.back() : z;
        }
        if (cache) cache->pre_activations.push_back(z);
        MatrixXd a = z.cwiseMax(0.0);
        if (train_mode && dropout_ > 0.0) {
            if (!rng) throw ConfigError("forward: train mode dropout needs an rng");
            MaskRng mask_rng{rng->next_u64()};
            MatrixXd mask(a.rows(), a.cols());
            const double inv_keep = 1.0 / (1.0 - dropout_);
            double* it = mask.data();
            for (Eigen::Index count = mask.size(); count > 0; --count)
                *it++ = mask_rng.next() < dropout_ ? 0.0 : inv_keep;
            a = a.cwiseProduct(mask);
            if (cache) cache->dropout_masks.push_back(std::move(mask));
        }
        if (cache) cache->activations.push_back(a);
        x = std::move(a);
    }
    return x; // unreachable for L >= 1
}

MlpGradients MlpModel::backward(const ForwardCache& cache,
                                const MatrixXd& loss_grad) const {
    if (cache.model_tag != this)
        throw StaleCache("backward: cache does not belong to this model");
    const int L = num_layers();
    if (static_cast<int>(cache.pre_activations.size()) != L)
        throw StaleCache("backward: incomplete cache");
    MlpGradients grads;
    grads.weight_grads.resize(L);
    grads.bias_grads.resize(L);
    MatrixXd delta = loss_grad; // dL/dz of the output layer
    for (int l = L - 1; l >= 0; --l) {
        const MatrixXd& layer_in = l == 0 ? cache.input : cache.activations[l - 1];
        grads.weight_grads[l].noalias() = delta.transpose() * layer_in;
        grads.bias_grads[l] = delta.colwise().sum();
        MatrixXd upstream(delta.rows(), weights_[l].cols());
        upstream.noalias() = delta * weights_[l]; // dL/d(layer input)
        if (l == 0) {
            grads.input_grad = std::move(upstream);
            break;
        }
        // through dropout then ReLU of layer l-1
        if (cache.train_mode && dropout_ > 0.0)
            upstream = upstream.cwiseProduct(cache.dropout_masks[l - 1]);
        const MatrixXd& z = cache.pre_activations[l - 1];
        delta = upstream.cwiseProduct((z.array() > 0.0).cast<double>().matrix());
    }
    return grads;
}

double squared_loss(const MatrixXd& pred, const VectorXd& target, MatrixXd* grad) {
    if (pred.cols() != 1) throw ShapeMismatch("squared_loss: predictions must be n x 1");
    if (pred.rows() != target.size())
        throw ShapeMismatch("squared_loss: length mismatch");
    const double n = static_cast<double>(pred.rows());
    const VectorXd diff = pred.col(0) - target;
    if (grad) *grad = (2.0 / n) * diff;
    return diff.squaredNorm() / n;
}

MatrixXd softmax_rows(const MatrixXd& logits) {
    MatrixXd p(logits.rows(), logits.cols());
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const double zmax = logits.row(i).maxCoeff();
        Eigen::RowVectorXd e = (logits.row(i).array() - zmax).exp();
        p.row(i) = e / e.sum();
    }
    return p;
}

double softmax_cross_entropy(const MatrixXd& logits, const VectorXi& labels,
                             MatrixXd* grad) {
    if (logits.rows() != labels.size())
        throw ShapeMismatch("softmax_cross_entropy: length mismatch");
    const double n = static_cast<double>(logits.rows());
    const MatrixXd p = softmax_rows(logits);
    double loss = 0.0;
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const int y = labels[i];
        if (y < 0 || y >= logits.cols())
            throw ShapeMismatch("softmax_cross_entropy: label out of range");
        loss -= std::log(std::max(p(i, y), 1e-300));
    }
    if (grad) {
        *grad = p / n;
        for (Eigen::Index i = 0; i < logits.rows(); ++i) (*grad)(i, labels[i]) -= 1.0 / n;
    }
    return loss / n;
}

LayerNormBlock LayerNormBlock::identity(int width) {
    LayerNormBlock b;
    b.gamma = VectorXd::Ones(width);
    b.beta = VectorXd::Zero(width);
    return b;
}

MatrixXd layernorm_forward(const LayerNormBlock& block, const MatrixXd& x,
                           LayerNormCache* cache) {
    const auto m = x.cols();
    if (block.gamma.size() != m) throw ShapeMismatch("layernorm_forward: width mismatch");
    MatrixXd out(x.rows(), m);
    MatrixXd xhat(x.rows(), m);
    VectorXd inv_std(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double mu = x.row(i).mean();
        const double var = (x.row(i).array() - mu).square().mean();
        const double is = 1.0 / std::sqrt(var + block.eps);
        inv_std[i] = is;
        xhat.row(i) = (x.row(i).array() - mu) * is;
        out.row(i) = xhat.row(i).cwiseProduct(block.gamma.transpose()) +
                     block.beta.transpose();
    }
    if (cache) {
        cache->xhat = std::move(xhat);
        cache->inv_std = std::move(inv_std);
    }
    return out;
}

MatrixXd layernorm_backward(const LayerNormBlock& block, const LayerNormCache& cache,
                            const MatrixXd& upstream, VectorXd& dgamma,
                            VectorXd& dbeta) {
    const auto m = upstream.cols();
    dgamma = (upstream.cwiseProduct(cache.xhat)).colwise().sum();
    dbeta = upstream.colwise().sum();
    MatrixXd dx(upstream.rows(), m);
    const double md = static_cast<double>(m);
    for (Eigen::Index i = 0; i < upstream.rows(); ++i) {
        const Eigen::RowVectorXd dxhat =
            upstream.row(i).cwiseProduct(block.gamma.transpose());
        const double s1 = dxhat.sum();
        const double s2 = dxhat.cwiseProduct(cache.xhat.row(i)).sum();
        dx.row(i) = cache.inv_std[i] / md *
                    (md * dxhat.array() - s1 - cache.xhat.row(i).array() * s2);
    }
    return dx;
}

void adamw_step_flat(double* params, const double* grads, Eigen::Index n,
                     AdamState& state, double lr, double weight_decay) {
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    if (state.m.size() != n) {
        state.m = VectorXd::Zero(n);
        state.v = VectorXd::Zero(n);
        state.t = 0;
    }
    state.t += 1;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double g = grads[i];
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * g;
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * g * g;
        const double mhat = state.m[i] / bc1;
        const double vhat = state.v[i] / bc2;
        // decay decoupled from the adaptive step
        params[i] -= lr * weight_decay * params[i];
        params[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

void adamw_step(VectorXd& params, const VectorXd& grads, AdamState& state, double lr,
                double weight_decay) {
    if (params.size() != grads.size()) throw ShapeMismatch("adamw_step: size mismatch");
    adamw_step_flat(params.data(), grads.data(), params.size(), state, lr,
                    weight_decay);
}

namespace {

void adamw_step_matrix(MatrixXd& params, const MatrixXd& grads, AdamState& state,
                       double lr, double weight_decay) {
    if (params.rows() != grads.rows() || params.cols() != grads.cols())
        throw ShapeMismatch("adamw_step: shape mismatch");
    adamw_step_flat(params.data(), grads.data(), params.size(), state, lr,
                    weight_decay);
}

} // namespace

MatrixXd LearnableEncoder::encode(const MatrixXd& numerical,
                                  const MatrixXd& extra) const {
    const int d = num_features();
    if (numerical.cols() != d)
        throw ShapeMismatch("LearnableEncoder::encode: feature count mismatch");
    const int m = basis_count();
    MatrixXd out(numerical.rows(), d * m + extra.cols());
    VectorXd row;
    for (int j = 0; j < d; ++j) {
        const BasisEvaluator ev(knots.family, knots.knot_vector(j), false);
        MatrixXd block(numerical.rows(), m);
        for (Eigen::Index i = 0; i < numerical.rows(); ++i) {
            ev.value(numerical(i, j), row);
            block.row(i) = row;
        }
        if (layer_norm) block = layernorm_forward(ln[j], block);
        out.middleCols(static_cast<Eigen::Index>(j) * m, m) = block;
    }
    if (extra.cols() > 0) out.rightCols(extra.cols()) = extra;
    return out;
}

LearnableEncoder make_learnable_encoder(BasisFamily family, int n_features, int m,
                                        int degree, double delta) {
    LearnableEncoder enc;
    enc.knots = init_learnable_knots(family, n_features, m, degree, delta);
    enc.layer_norm = family == BasisFamily::MSpline;
    if (enc.layer_norm)
        enc.ln.assign(n_features, LayerNormBlock::identity(m));
    return enc;
}

namespace {

MatrixXd gather_rows(const MatrixXd& src, const std::vector<int>& idx,
                     std::size_t begin, std::size_t end) {
    MatrixXd out(static_cast<Eigen::Index>(end - begin), src.cols());
    for (std::size_t i = begin; i < end; ++i)
        out.row(static_cast<Eigen::Index>(i - begin)) = src.row(idx[i]);
    return out;
}

VectorXd gather(const VectorXd& src, const std::vector<int>& idx, std::size_t begin,
                std::size_t end) {
    VectorXd out(static_cast<Eigen::Index>(end - begin));
    for (std::size_t i = begin; i < end; ++i)
        out[static_cast<Eigen::Index>(i - begin)] = src[idx[i]];
    return out;
}

VectorXi to_labels(const VectorXd& y) {
    VectorXi out(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) out[i] = static_cast<int>(y[i]);
    return out;
}

double data_loss(Task task, const MatrixXd& pred, const VectorXd& y, MatrixXd* grad) {
    if (task == Task::Regression) {
        MatrixXd g;
        const double loss = squared_loss(pred, y, grad ? &g : nullptr);
        if (grad) *grad = g;
        return loss;
    }
    return softmax_cross_entropy(pred, to_labels(y), grad);
}

// Everything the learnable path needs per batch: raw basis blocks, LayerNorm
// caches, and per-sample knot Jacobians when knots are being trained.
struct LearnableBatch {
    MatrixXd phi;                      // LN applied when enabled
    std::vector<MatrixXd> raw_blocks;  // pre-LN basis values per feature
    std::vector<LayerNormCache> ln_caches;
    std::vector<MatrixXd> jacobians;   // [sample * d + j] -> m x K
};

void encode_learnable_batch(const LearnableEncoder& enc, const MatrixXd& numerical,
                            const MatrixXd& extra, bool with_jacobian,
                            LearnableBatch& out) {
    const int d = enc.num_features();
    const int m = enc.basis_count();
    const auto n = numerical.rows();
    out.phi.resize(n, static_cast<Eigen::Index>(d) * m + extra.cols());
    out.raw_blocks.assign(d, MatrixXd());
    out.ln_caches.assign(enc.layer_norm ? d : 0, LayerNormCache());
    if (with_jacobian) out.jacobians.assign(static_cast<std::size_t>(n) * d, MatrixXd());
    VectorXd row;
    MatrixXd jac;
    for (int j = 0; j < d; ++j) {
        const BasisEvaluator ev(enc.knots.family, enc.knots.knot_vector(j),
                                with_jacobian);
        MatrixXd block(n, m);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (with_jacobian) {
                ev.value_and_jacobian(numerical(i, j), row, jac);
                out.jacobians[static_cast<std::size_t>(i) * d + j] = jac;
            } else {
                ev.value(numerical(i, j), row);
            }
            block.row(i) = row;
        }
        out.raw_blocks[j] = block;
        if (enc.layer_norm)
            block = layernorm_forward(enc.ln[j], block, &out.ln_caches[j]);
        out.phi.middleCols(static_cast<Eigen::Index>(j) * m, m) = block;
    }
    if (extra.cols() > 0) out.phi.rightCols(extra.cols()) = extra;
}

void log_knots(const LearnableEncoder& enc, int epoch,
               std::vector<KnotHistoryRow>& sink) {
    for (int j = 0; j < enc.num_features(); ++j) {
        const KnotWidths kw = knots_from_logits(enc.knots.logits[j]);
        for (Eigen::Index l = 0; l < kw.knots.size(); ++l)
            sink.push_back({epoch, j, static_cast<int>(l), kw.knots[l]});
    }
}

} // namespace

TrainResult train(const MlpModel& model0, const std::optional<LearnableEncoder>& encoder0,
                  const TrainData& data, const TrainConfig& cfg) {
    const bool learnable = encoder0.has_value();
    const Eigen::Index n_train =
        learnable ? data.num_train.rows() : data.phi_train.rows();
    if (n_train == 0) throw EmptyTrainingSet("train: empty training set");

    MlpModel model = model0;
    std::optional<LearnableEncoder> enc = encoder0;
    Rng rng(cfg.seed);

    const int L = model.num_layers();
    std::vector<AdamState> w_states(L), b_states(L);
    std::vector<AdamState> ln_gamma_states, ln_beta_states, knot_states;
    const int d = learnable ? enc->num_features() : 0;
    const int m = learnable ? enc->basis_count() : 0;
    if (learnable) {
        knot_states.resize(d);
        if (enc->layer_norm) {
            ln_gamma_states.resize(d);
            ln_beta_states.resize(d);
        }
    }

    double lr = cfg.lr;
    double knot_lr = cfg.knot_lr;

    TrainResult result;
    result.model = model;
    result.encoder = enc;
    result.best_val = std::numeric_limits<double>::infinity();

    if (learnable && cfg.log_knots_every_epoch) log_knots(*enc, 0, result.knot_history);

    // While knots are frozen (warm-up) the raw expansion is constant, so it
    // is computed once and sliced per batch.
    MatrixXd frozen_train, frozen_val;
    bool frozen_cache_valid = false;
    auto build_frozen_cache = [&]() {
        LearnableBatch b;
        encode_learnable_batch(*enc, data.num_train, data.extra_train, false, b);
        frozen_train.resize(data.num_train.rows(),
                            static_cast<Eigen::Index>(d) * m + data.extra_train.cols());
        for (int j = 0; j < d; ++j)
            frozen_train.middleCols(static_cast<Eigen::Index>(j) * m, m) =
                b.raw_blocks[j];
        if (data.extra_train.cols() > 0)
            frozen_train.rightCols(data.extra_train.cols()) = data.extra_train;
        LearnableBatch bv;
        encode_learnable_batch(*enc, data.num_val, data.extra_val, false, bv);
        frozen_val.resize(data.num_val.rows(),
                          static_cast<Eigen::Index>(d) * m + data.extra_val.cols());
        for (int j = 0; j < d; ++j)
            frozen_val.middleCols(static_cast<Eigen::Index>(j) * m, m) = bv.raw_blocks[j];
        if (data.extra_val.cols() > 0)
            frozen_val.rightCols(data.extra_val.cols()) = data.extra_val;
        frozen_cache_valid = true;
    };

    auto apply_ln_blocks = [&](const MatrixXd& raw) {
        MatrixXd out = raw;
        if (learnable && enc->layer_norm) {
            for (int j = 0; j < d; ++j)
                out.middleCols(static_cast<Eigen::Index>(j) * m, m) = layernorm_forward(
                    enc->ln[j], raw.middleCols(static_cast<Eigen::Index>(j) * m, m));
        }
        return out;
    };

    std::vector<int> order(n_train);
    std::iota(order.begin(), order.end(), 0);

    int es_counter = 0;
    int plateau_counter = 0;
    int epoch = 0;
    for (epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        const bool knots_active = learnable && epoch > cfg.warmup_epochs && d > 0;
        if (learnable && !knots_active && !frozen_cache_valid) build_frozen_cache();

        rng.shuffle(order);
        double loss_sum = 0.0;
        LearnableBatch lb;
        for (std::size_t start = 0; start < order.size();
             start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t stop =
                std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
            const auto nb = static_cast<double>(stop - start);

            MatrixXd x;
            if (!learnable) {
                x = gather_rows(data.phi_train, order, start, stop);
            } else if (!knots_active) {
                MatrixXd raw = gather_rows(frozen_train, order, start, stop);
                if (enc->layer_norm) {
                    // LayerNorm parameters keep training during warm-up, so
                    // caches are rebuilt per batch over the frozen expansion.
                    lb.raw_blocks.assign(d, MatrixXd());
                    lb.ln_caches.assign(d, LayerNormCache());
                    for (int j = 0; j < d; ++j) {
                        lb.raw_blocks[j] =
                            raw.middleCols(static_cast<Eigen::Index>(j) * m, m);
                        raw.middleCols(static_cast<Eigen::Index>(j) * m, m) =
                            layernorm_forward(enc->ln[j], lb.raw_blocks[j],
                                              &lb.ln_caches[j]);
                    }
                }
                x = std::move(raw);
            } else {
                const MatrixXd num = gather_rows(data.num_train, order, start, stop);
                const MatrixXd extra = gather_rows(data.extra_train, order, start, stop);
                encode_learnable_batch(*enc, num, extra, true, lb);
                x = lb.phi;
            }

            ForwardCache cache;
            const MatrixXd pred = model.forward(x, true, &rng, &cache);
            MatrixXd loss_grad;
            double batch_loss = data_loss(data.task, pred, gather(data.y_train, order, start, stop),
                                          &loss_grad);
            if (learnable && d > 0)
                batch_loss += cfg.knot_reg.lambda *
                              spacing_regularizer(enc->knots.logits, cfg.knot_reg.epsilon);
            loss_sum += batch_loss * nb;

            MlpGradients grads = model.backward(cache, loss_grad);

            if (learnable && d > 0 && (knots_active || enc->layer_norm)) {
                for (int j = 0; j < d; ++j) {
                    MatrixXd dblock =
                        grads.input_grad.middleCols(static_cast<Eigen::Index>(j) * m, m);
                    if (enc->layer_norm) {
                        VectorXd dgamma, dbeta;
                        dblock = layernorm_backward(enc->ln[j], lb.ln_caches[j], dblock,
                                                    dgamma, dbeta);
                        adamw_step(enc->ln[j].gamma, dgamma, ln_gamma_states[j], lr, 0.0);
                        adamw_step(enc->ln[j].beta, dbeta, ln_beta_states[j], lr, 0.0);
                    }
                    if (knots_active) {
                        const int K = enc->knots.logits[j].num_internal();
                        VectorXd dkappa = VectorXd::Zero(K);
                        for (Eigen::Index i = 0; i < dblock.rows(); ++i)
                            dkappa +=
                                lb.jacobians[static_cast<std::size_t>(i) * d + j]
                                    .transpose() *
                                dblock.row(i).transpose();
                        const VectorXd da = knot_logit_gradient(
                            enc->knots.logits[j], dkappa, cfg.knot_reg, d);
                        adamw_step(enc->knots.logits[j].a, da, knot_states[j], knot_lr,
                                   0.0);
                    }
                }
            }

            for (int l = 0; l < L; ++l) {
                adamw_step_matrix(model.weights()[l], grads.weight_grads[l],
                                  w_states[l], lr, cfg.weight_decay);
                adamw_step(model.biases()[l], grads.bias_grads[l], b_states[l], lr, 0.0);
            }
        }
        const double train_loss = loss_sum / static_cast<double>(n_train);

        // validation loss in eval mode
        MatrixXd val_x;
        if (!learnable) {
            val_x = data.phi_val;
        } else if (!knots_active) {
            val_x = apply_ln_blocks(frozen_val);
        } else {
            LearnableBatch vb;
            encode_learnable_batch(*enc, data.num_val, data.extra_val, false, vb);
            val_x = vb.phi;
        }
        double val_metric = std::numeric_limits<double>::quiet_NaN();
        if (val_x.rows() > 0) {
            const MatrixXd val_pred = model.forward(val_x, false, nullptr);
            val_metric = data_loss(data.task, val_pred, data.y_val, nullptr);
        }
        result.history.push_back({epoch, train_loss, val_metric, lr, knot_lr});
        if (learnable && (cfg.log_knots_every_epoch || knots_active))
            log_knots(*enc, epoch, result.knot_history);

        const double improvement_bar =
            std::isfinite(result.best_val)
                ? result.best_val - cfg.improvement_rtol * std::abs(result.best_val)
                : std::numeric_limits<double>::infinity();
        const bool improved = val_x.rows() == 0 || val_metric < improvement_bar;
        if (improved) {
            result.best_val = val_metric;
            result.best_epoch = epoch;
            result.model = model;
            result.encoder = enc;
            es_counter = 0;
            plateau_counter = 0;
        } else {
            ++es_counter;
            ++plateau_counter;
        }
        if (plateau_counter >= cfg.plateau_patience) {
            lr *= cfg.plateau_factor;
            knot_lr *= cfg.plateau_factor;
            plateau_counter = 0;
        }
        if (es_counter >= cfg.early_stop_patience) break;
    }
    if (result.history.empty()) {
        result.model = model;
        result.encoder = enc;
    }
    return result;
}

MatrixXd predict(const MlpModel& model, const std::optional<LearnableEncoder>& encoder,
                 const MatrixXd& phi_or_num, const MatrixXd& extra) {
    const MatrixXd x = encoder ? encoder->encode(phi_or_num, extra) : phi_or_num;
    return model.forward(x, false, nullptr);
}

void write_training_history(const std::string& path,
                            const std::vector<EpochRecord>& history) {
    CsvTable table;
    table.header = {"epoch", "train_loss", "val_metric", "lr", "knot_lr"};
    for (const auto& row : history)
        table.rows.push_back({std::to_string(row.epoch), format_double(row.train_loss),
                              format_double(row.val_metric), format_double(row.lr),
                              format_double(row.knot_lr)});
    write_csv(path, table);
}

void write_knot_trajectory(const std::string& path,
                           const std::vector<KnotHistoryRow>& history) {
    CsvTable table;
    table.header = {"epoch", "feature", "knot_index", "value"};
    for (const auto& row : history)
        table.rows.push_back({std::to_string(row.epoch), std::to_string(row.feature),
                              std::to_string(row.knot_index), format_double(row.value)});
    write_csv(path, table);
}

} // namespace numenc
