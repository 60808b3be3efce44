#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "numenc/basis.hpp"
#include "numenc/knots.hpp"
#include "numenc/mlp.hpp"
#include "numenc/ple.hpp"
#include "numenc/types.hpp"

namespace numenc {

/// Numerical-encoding method tag. Spline tags combine a family prefix
/// (BS / MS / IS) with a placement suffix (U, Q, CART, LGBM, Grad-U).
struct EncoderSpec {
    enum class Kind { Std, MinMax, Ple, PleAdaptive, Spline };

    std::string tag;
    Kind kind = Kind::Std;
    BasisFamily family = BasisFamily::BSpline;
    PlacementStrategy::Kind placement = PlacementStrategy::Kind::Uniform;
    int m = 7;
    int degree = 3;
    double knot_delta = 1e-3;

    bool learnable() const {
        return kind == Kind::Spline && placement == PlacementStrategy::Kind::Learnable;
    }
    bool uses_output_size() const { return kind != Kind::Std && kind != Kind::MinMax; }

    /// Parses a method tag such as "Std", "PLE", "PLE_adp", "BS-CART" or
    /// "IS-Grad-U". Throws ConfigError on unknown tags.
    static EncoderSpec parse(const std::string& tag, int m = 7, int degree = 3);

    /// The 14 main-benchmark methods.
    static std::vector<std::string> benchmark_methods();
    /// The 16 swept ablation methods (PLE plus all 15 spline variants).
    static std::vector<std::string> ablation_sweep_methods();
    /// The 3 ablation reference methods without an output-size grid.
    static std::vector<std::string> ablation_reference_methods();
};

/// Per-column scaling state fitted on the training rows only.
struct ScalerState {
    VectorXd col_min, col_max;    // min-max scaling to [0, 1]
    VectorXd col_mean, col_std;   // z-scoring for the Std baseline
    std::vector<bool> constant_col;
    double target_mean = 0.0;     // regression target z-normalization
    double target_std = 1.0;
};

/// Fitted numerical encoder: scaling plus per-feature knots, bins or
/// learnable-knot state, with the training-fold categorical vocabulary.
struct FittedEncoder {
    EncoderSpec spec;
    ScalerState scaler;
    std::vector<KnotVector> knots;       // fixed spline placements
    std::vector<PleBoundaries> bounds;   // PLE variants
    // per categorical column: sorted global codes present in the train fold
    std::vector<std::vector<int>> cat_vocab;

    int num_features = 0;
    int output_width() const;
    bool constant_col_at(Eigen::Index j) const;

    /// Min-max scaled numerical block, clipped to [0, 1]; constant columns
    /// map to 0.5.
    MatrixXd scale_numerical(const MatrixXd& raw) const;
    /// Train-fold label codes; categories absent from the fold become -1.
    MatrixXd encode_categorical(const MatrixXi& codes) const;
    /// Full feature matrix (numerical encoding plus categorical scalars).
    MatrixXd transform(const MatrixXd& numerical_raw, const MatrixXi& cat_codes) const;

    /// Training-time state for Grad-U methods (uniform initialization).
    LearnableEncoder make_learnable_state() const;
};

} // namespace numenc
