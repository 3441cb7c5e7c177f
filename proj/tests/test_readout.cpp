#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "nnosim/errors.hpp"
#include "nnosim/readout.hpp"
#include "nnosim/rng.hpp"

using namespace nnosim;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, Rng& rng, double lo, double hi) {
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = rng.uniform(lo, hi);
    return m;
}

}  // namespace

TEST_CASE("one-hot targets") {
    Eigen::MatrixXd y = one_hot({2, 0, 1}, 3);
    CHECK(y.rows() == 3);
    CHECK(y.cols() == 3);
    CHECK(y(0, 2) == 1.0);
    CHECK(y(1, 0) == 1.0);
    CHECK(y(2, 1) == 1.0);
    CHECK(y.sum() == 3.0);
    CHECK_THROWS_AS(one_hot({3}, 3), ArgumentError);
    CHECK_THROWS_AS(one_hot({-1}, 3), ArgumentError);
}

TEST_CASE("least squares recovers an exact linear map") {
    Rng rng(11);
    Eigen::MatrixXd x = random_matrix(40, 3, rng, -1.0, 1.0);
    Eigen::MatrixXd w_true(3, 2);
    w_true << 1.5, -0.25, 0.0, 2.0, -1.0, 0.5;
    Eigen::RowVectorXd b_true(2);
    b_true << 0.3, -0.7;
    Eigen::MatrixXd y = (x * w_true).rowwise() + b_true;

    LinearModel m = train_linear(x, y, 0.0);
    CHECK((m.w - w_true).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((m.b - b_true).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("square invertible system is reproduced exactly") {
    Rng rng(19);
    const int p = 5;
    // p+1 samples against p features + bias: square augmented system.
    Eigen::MatrixXd x = random_matrix(p + 1, p, rng, -1.0, 1.0);
    Eigen::MatrixXd y = random_matrix(p + 1, 2, rng, -1.0, 1.0);
    LinearModel m = train_linear(x, y, 0.0);
    Eigen::MatrixXd yhat = (x * m.w).rowwise() + m.b;
    CHECK((yhat - y).norm() < 1e-8);
}

TEST_CASE("least-squares residual is orthogonal to the feature space") {
    Rng rng(20);
    Eigen::MatrixXd x = random_matrix(50, 4, rng, -1.0, 1.0);
    Eigen::MatrixXd y = random_matrix(50, 3, rng, 0.0, 1.0);
    LinearModel m = train_linear(x, y, 0.0);
    Eigen::MatrixXd xa(50, 5);
    xa.leftCols(4) = x;
    xa.col(4).setOnes();
    Eigen::MatrixXd resid = y - ((x * m.w).rowwise() + m.b);
    CHECK((xa.transpose() * resid).norm() < 1e-6);
}

TEST_CASE("ridge solution satisfies its normal equations") {
    Rng rng(12);
    const int n = 60, p = 8, c = 3;
    Eigen::MatrixXd x = random_matrix(n, p, rng, -2.0, 2.0);
    Eigen::MatrixXd y = random_matrix(n, c, rng, 0.0, 1.0);
    const double lambda = 1e-3;

    LinearModel m = train_linear(x, y, lambda);
    Eigen::MatrixXd xa(n, p + 1);
    xa.leftCols(p) = x;
    xa.col(p).setOnes();
    Eigen::MatrixXd beta(p + 1, c);
    beta.topRows(p) = m.w;
    beta.row(p) = m.b;

    const double reg = lambda * x.squaredNorm() / p;
    Eigen::MatrixXd a = xa.transpose() * xa;
    for (int i = 0; i < p; ++i) a(i, i) += reg;
    const Eigen::MatrixXd rhs = xa.transpose() * y;
    const double rel = (a * beta - rhs).norm() / rhs.norm();
    CHECK(rel < 1e-6);

    // Regularization shrinks weights but not the fit structure.
    LinearModel strong = train_linear(x, y, 1e3);
    CHECK(strong.w.norm() < m.w.norm());
}

TEST_CASE("training input validation") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(4, 2);
    Eigen::MatrixXd y = Eigen::MatrixXd::Ones(3, 2);
    CHECK_THROWS_AS(train_linear(x, y, 0.0), ArgumentError);
    y = Eigen::MatrixXd::Ones(4, 2);
    CHECK_THROWS_AS(train_linear(x, y, -1.0), ArgumentError);
    x(1, 1) = std::nan("");
    CHECK_THROWS_AS(train_linear(x, y, 0.0), ArgumentError);
}

TEST_CASE("prediction breaks ties toward the lowest class") {
    LinearModel m;
    m.w = Eigen::MatrixXd::Zero(2, 3);
    m.b = Eigen::RowVectorXd(3);
    m.b << 0.5, 0.5, 0.2;
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(2, 2);
    auto labels = predict(m, x);
    CHECK(labels == std::vector<int>({0, 0}));
    m.b << 0.1, 0.4, 0.4;
    CHECK(predict(m, x) == std::vector<int>({1, 1}));
    CHECK_THROWS_AS(predict(m, Eigen::MatrixXd::Ones(1, 3)), ArgumentError);
}

TEST_CASE("accuracy") {
    CHECK(accuracy({0, 1, 2, 1}, {0, 1, 1, 1}) == doctest::Approx(0.75));
    CHECK_THROWS_AS(accuracy({}, {}), ArgumentError);
    CHECK_THROWS_AS(accuracy({1}, {1, 2}), ArgumentError);
}

TEST_CASE("stratified folds balance every class") {
    std::vector<int> labels(200);
    for (int i = 0; i < 200; ++i) labels[i] = i % 4;
    auto fold = stratified_folds(labels, 5, 42);
    std::vector<std::vector<int>> per_fold_class(5, std::vector<int>(4, 0));
    for (int i = 0; i < 200; ++i) {
        REQUIRE(fold[i] >= 0);
        REQUIRE(fold[i] < 5);
        ++per_fold_class[fold[i]][labels[i]];
    }
    for (int f = 0; f < 5; ++f)
        for (int c = 0; c < 4; ++c) CHECK(per_fold_class[f][c] == 10);

    CHECK(stratified_folds(labels, 5, 42) == fold);       // same seed
    CHECK(stratified_folds(labels, 5, 43) != fold);       // fresh shuffle

    std::vector<int> lonely = {0, 0, 0, 1};
    CHECK_THROWS_AS(stratified_folds(lonely, 2, 1), StratificationError);
    CHECK_THROWS_AS(stratified_folds(labels, 1, 1), ArgumentError);
}

TEST_CASE("cross-validation is perfect on well-separated clusters") {
    Rng rng(3);
    const int per_class = 30;
    Eigen::MatrixXd x(3 * per_class, 2);
    std::vector<int> labels(3 * per_class);
    const double centers[3][2] = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
    for (int k = 0; k < 3 * per_class; ++k) {
        int c = k % 3;
        labels[k] = c;
        x(k, 0) = centers[c][0] + 0.1 * rng.normal();
        x(k, 1) = centers[c][1] + 0.1 * rng.normal();
    }
    CVReport rep = kfold_cv(x, labels, 5, 42, 1e-6);
    REQUIRE(rep.fold_accuracy.size() == 5);
    for (int f = 0; f < 5; ++f) {
        CHECK(rep.fold_accuracy[f] == 1.0);
        CHECK(rep.fold_size[f] == 18);
    }
    CHECK(rep.mean_accuracy == 1.0);
    CHECK(rep.seed == 42);
}

TEST_CASE("continuous crossbar reproduces the weights through the array") {
    Rng rng(7);
    LinearModel m;
    m.w = random_matrix(6, 4, rng, -3.0, 3.0);
    m.b = random_matrix(1, 4, rng, -1.0, 1.0).row(0);
    NonVolatileCell cell;
    Crossbar cb = continuous_crossbar(m, cell);
    CHECK(cb.levels == 0);
    CHECK((cb.realized_weights() - m.w).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::VectorXd v = random_matrix(6, 1, rng, -0.1, 0.1).col(0);
    Eigen::RowVectorXd scores = crossbar_scores(cb, v);
    Eigen::RowVectorXd want = (v.transpose() * m.w) + m.b;
    CHECK((scores - want).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("quantized crossbar: half-step bound and exact endpoints") {
    Rng rng(8);
    NonVolatileCell cell;
    const double range = cell.g_max - cell.g_min;
    for (int levels : {4, 16, 64}) {
        LinearModel m;
        m.w = random_matrix(20, 5, rng, -4.0, 4.0);
        m.b = Eigen::RowVectorXd::Zero(5);
        Crossbar cb = quantize_to_crossbar(m, levels, cell);
        const double wmax = m.w.cwiseAbs().maxCoeff();
        CHECK(cb.scale == doctest::Approx(wmax / range).epsilon(1e-15));
        const double half_step = cb.scale * range / (2.0 * (levels - 1));
        Eigen::MatrixXd err = (cb.realized_weights() - m.w).cwiseAbs();
        CHECK(err.maxCoeff() <= half_step * (1.0 + 1e-12));
    }

    // The largest-magnitude weight must land on g_max exactly.
    LinearModel m;
    m.w = Eigen::MatrixXd(2, 2);
    m.w << 2.0, -5.0, 0.0, 1.0;
    m.b = Eigen::RowVectorXd::Zero(2);
    Crossbar cb = quantize_to_crossbar(m, 16, cell);
    CHECK(cb.minus[1].g == cell.g_max);        // w(0,1) = -5 is the extreme
    CHECK(cb.plus[1].g == cell.g_min);
    CHECK(cb.plus[2].g == cell.g_min);         // zero weight parks both cells
    CHECK(cb.minus[2].g == cell.g_min);

    CHECK_THROWS_AS(quantize_to_crossbar(m, 1, cell), ArgumentError);
}

TEST_CASE("crossbar reads respect the linear window") {
    LinearModel m;
    m.w = Eigen::MatrixXd::Ones(2, 2);
    m.b = Eigen::RowVectorXd::Zero(2);
    Crossbar cb = continuous_crossbar(m, NonVolatileCell{});
    Eigen::VectorXd v(2);
    v << 0.05, 0.2;  // second entry outside ±v_lin
    CHECK_THROWS_AS(crossbar_mvm(cb, v), ReadRangeError);
    v << 0.05, 0.05;
    CHECK_NOTHROW(crossbar_mvm(cb, v));
    CHECK_THROWS_AS(crossbar_mvm(cb, Eigen::VectorXd::Zero(3)), ArgumentError);
}

TEST_CASE("all-zero weights map to a parked crossbar") {
    LinearModel m;
    m.w = Eigen::MatrixXd::Zero(3, 2);
    m.b = Eigen::RowVectorXd::Ones(2);
    Crossbar cb = quantize_to_crossbar(m, 16, NonVolatileCell{});
    CHECK(cb.scale == 1.0);
    CHECK(cb.realized_weights().cwiseAbs().maxCoeff() == 0.0);
    Eigen::VectorXd v = Eigen::VectorXd::Constant(3, 0.1);
    CHECK(crossbar_mvm(cb, v).cwiseAbs().maxCoeff() == 0.0);
    Eigen::RowVectorXd scores = crossbar_scores(cb, v);
    CHECK(scores(0) == 1.0);
    CHECK(scores(1) == 1.0);
}
