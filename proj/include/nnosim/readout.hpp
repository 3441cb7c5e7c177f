#pragma once

// Linear output layer: closed-form least-squares training on bias-augmented
// features, stratified k-fold evaluation, and quantization onto differential
// pairs of non-volatile cells for analog matrix-vector readout.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "nnosim/device.hpp"

namespace nnosim {

struct LinearModel {
    Eigen::MatrixXd w;     // features × classes
    Eigen::RowVectorXd b;  // 1 × classes
};

struct CVReport {
    std::vector<double> fold_accuracy;
    std::vector<int> fold_size;
    double mean_accuracy = 0.0;
    std::uint64_t seed = 0;
};

// Differential-pair crossbar realizing w ≈ scale·(G⁺ − G⁻); the inactive cell
// of each pair is parked at g_min.  The bias is applied digitally after the
// analog multiply.
struct Crossbar {
    int rows = 0;  // feature count
    int cols = 0;  // class count
    std::vector<NonVolatileCell> plus;   // row-major rows × cols
    std::vector<NonVolatileCell> minus;
    double scale = 1.0;  // weight units per µS
    int levels = 0;      // 0 marks continuous (unquantized) conductances
    Eigen::RowVectorXd bias;

    Eigen::MatrixXd realized_weights() const;
};

Eigen::MatrixXd one_hot(const std::vector<int>& labels, int n_classes);

// Minimizes ‖[X 1]·B − Y‖² (+ ridge on the non-bias rows for lambda > 0).
// lambda = 0 uses the minimum-norm pseudo-inverse solution; lambda > 0 solves
// the normal equations with lambda scaled by the mean feature energy
// trace(XᵀX)/p, leaving the bias unregularized.
LinearModel train_linear(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                         double lambda);

// Row-wise argmax of X·W + b; ties resolve to the lowest class index.
std::vector<int> predict(const LinearModel& m, const Eigen::MatrixXd& x);

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

// Seed-deterministic stratified folds (round-robin within each shuffled
// class).  Throws StratificationError when any present class has fewer than
// two members, which would leave it absent from some training fold.
std::vector<int> stratified_folds(const std::vector<int>& labels, int k,
                                  std::uint64_t seed);

CVReport kfold_cv(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                  int k, std::uint64_t seed, double lambda);

Crossbar quantize_to_crossbar(const LinearModel& m, int levels,
                              const NonVolatileCell& cell_template);

// Same mapping without level rounding; reproduces W exactly through the MVM.
Crossbar continuous_crossbar(const LinearModel& m,
                             const NonVolatileCell& cell_template);

// y_j = Σ_i v_i·(G⁺_ij − G⁻_ij), µA, through linear cell reads.
Eigen::VectorXd crossbar_mvm(const Crossbar& cb, const Eigen::VectorXd& v);

// Digital post-processing: scale·mvm + bias, comparable to X·W + b scores.
Eigen::RowVectorXd crossbar_scores(const Crossbar& cb, const Eigen::VectorXd& v);

}  // namespace nnosim
