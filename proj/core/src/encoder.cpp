#include "numenc/encoder.hpp"

#include <algorithm>
#include <cmath>

#include "numenc/errors.hpp"

namespace numenc {

EncoderSpec EncoderSpec::parse(const std::string& tag, int m, int degree) {
    EncoderSpec spec;
    spec.tag = tag;
    spec.m = m;
    spec.degree = degree;
    if (tag == "Std") {
        spec.kind = Kind::Std;
        return spec;
    }
    if (tag == "MinMax") {
        spec.kind = Kind::MinMax;
        return spec;
    }
    if (tag == "PLE") {
        spec.kind = Kind::Ple;
        return spec;
    }
    if (tag == "PLE_adp") {
        spec.kind = Kind::PleAdaptive;
        return spec;
    }
    std::string family, placement;
    const auto dash = tag.find('-');
    if (dash != std::string::npos) {
        family = tag.substr(0, dash);
        placement = tag.substr(dash + 1);
    }
    spec.kind = Kind::Spline;
    if (family == "BS")
        spec.family = BasisFamily::BSpline;
    else if (family == "MS")
        spec.family = BasisFamily::MSpline;
    else if (family == "IS")
        spec.family = BasisFamily::ISpline;
    else
        throw ConfigError("unknown method tag: " + tag);
    if (placement == "U")
        spec.placement = PlacementStrategy::Kind::Uniform;
    else if (placement == "Q")
        spec.placement = PlacementStrategy::Kind::Quantile;
    else if (placement == "CART")
        spec.placement = PlacementStrategy::Kind::Cart;
    else if (placement == "LGBM")
        spec.placement = PlacementStrategy::Kind::Boosted;
    else if (placement == "Grad-U")
        spec.placement = PlacementStrategy::Kind::Learnable;
    else
        throw ConfigError("unknown method tag: " + tag);
    if (m <= degree)
        throw ConfigError("spline output size must exceed the degree (m > p)");
    return spec;
}

std::vector<std::string> EncoderSpec::benchmark_methods() {
    return {"Std",     "MinMax",  "PLE",     "BS-U",    "BS-Q",
            "BS-CART", "BS-LGBM", "BS-Grad-U", "IS-U",  "IS-Q",
            "IS-CART", "IS-LGBM", "IS-Grad-U", "MS-Grad-U"};
}

std::vector<std::string> EncoderSpec::ablation_sweep_methods() {
    return {"PLE",     "BS-U",      "BS-Q",    "BS-CART", "BS-LGBM", "BS-Grad-U",
            "IS-U",    "IS-Q",      "IS-CART", "IS-LGBM", "IS-Grad-U",
            "MS-U",    "MS-Q",      "MS-CART", "MS-LGBM", "MS-Grad-U"};
}

std::vector<std::string> EncoderSpec::ablation_reference_methods() {
    return {"Std", "MinMax", "PLE_adp"};
}

int FittedEncoder::output_width() const {
    const int c = static_cast<int>(cat_vocab.size());
    switch (spec.kind) {
        case EncoderSpec::Kind::Std:
        case EncoderSpec::Kind::MinMax:
            return num_features + c;
        case EncoderSpec::Kind::Ple:
            return num_features * spec.m + c;
        case EncoderSpec::Kind::PleAdaptive: {
            int total = 0;
            for (const auto& b : bounds) total += b.bins();
            return total + c;
        }
        case EncoderSpec::Kind::Spline:
            return num_features * spec.m + c;
    }
    return 0;
}

MatrixXd FittedEncoder::scale_numerical(const MatrixXd& raw) const {
    MatrixXd out(raw.rows(), raw.cols());
    for (Eigen::Index j = 0; j < raw.cols(); ++j) {
        if (constant_col_at(j)) {
            out.col(j).setConstant(0.5);
            continue;
        }
        const double lo = scaler.col_min[j];
        const double span = scaler.col_max[j] - lo;
        out.col(j) = ((raw.col(j).array() - lo) / span).cwiseMax(0.0).cwiseMin(1.0);
    }
    return out;
}

bool FittedEncoder::constant_col_at(Eigen::Index j) const {
    return j < static_cast<Eigen::Index>(scaler.constant_col.size()) &&
           scaler.constant_col[j];
}

MatrixXd FittedEncoder::encode_categorical(const MatrixXi& codes) const {
    MatrixXd out(codes.rows(), codes.cols());
    for (Eigen::Index j = 0; j < codes.cols(); ++j) {
        const auto& vocab = cat_vocab[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < codes.rows(); ++i) {
            const auto it = std::lower_bound(vocab.begin(), vocab.end(), codes(i, j));
            // unseen category -> -1
            out(i, j) = (it != vocab.end() && *it == codes(i, j))
                            ? static_cast<double>(it - vocab.begin())
                            : -1.0;
        }
    }
    return out;
}

MatrixXd FittedEncoder::transform(const MatrixXd& numerical_raw,
                                  const MatrixXi& cat_codes) const {
    const auto n = numerical_raw.rows();
    const MatrixXd cats = encode_categorical(cat_codes);
    MatrixXd out(n, output_width());
    Eigen::Index col = 0;

    if (spec.kind == EncoderSpec::Kind::Std) {
        for (Eigen::Index j = 0; j < numerical_raw.cols(); ++j) {
            const double sd = scaler.col_std[j] > 0.0 ? scaler.col_std[j] : 1.0;
            out.col(col++) = (numerical_raw.col(j).array() - scaler.col_mean[j]) / sd;
        }
    } else {
        const MatrixXd scaled = scale_numerical(numerical_raw);
        if (spec.kind == EncoderSpec::Kind::MinMax) {
            out.leftCols(scaled.cols()) = scaled;
            col = scaled.cols();
        } else if (spec.kind == EncoderSpec::Kind::Ple ||
                   spec.kind == EncoderSpec::Kind::PleAdaptive) {
            for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
                const auto& pb = bounds[static_cast<std::size_t>(j)];
                for (Eigen::Index i = 0; i < n; ++i)
                    out.block(i, col, 1, pb.bins()) =
                        encode_ple(scaled(i, j), pb).transpose();
                col += pb.bins();
            }
        } else { // splines, fixed or learnable initialization
            for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
                const BasisEvaluator ev(spec.family, knots[static_cast<std::size_t>(j)]);
                VectorXd row;
                for (Eigen::Index i = 0; i < n; ++i) {
                    ev.value(scaled(i, j), row);
                    out.block(i, col, 1, row.size()) = row.transpose();
                }
                col += spec.m;
            }
        }
    }
    if (cats.cols() > 0) out.rightCols(cats.cols()) = cats;
    return out;
}

LearnableEncoder FittedEncoder::make_learnable_state() const {
    if (!spec.learnable())
        throw ConfigError("make_learnable_state: spec is not a Grad-U method");
    return make_learnable_encoder(spec.family, num_features, spec.m, spec.degree,
                                  spec.knot_delta);
}

} // namespace numenc
