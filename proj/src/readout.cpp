#include "nnosim/readout.hpp"

#include <algorithm>
#include <cmath>

#include "nnosim/errors.hpp"
#include "nnosim/rng.hpp"

namespace nnosim {

Eigen::MatrixXd one_hot(const std::vector<int>& labels, int n_classes) {
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(labels.size(), n_classes);
    for (std::size_t r = 0; r < labels.size(); ++r) {
        if (labels[r] < 0 || labels[r] >= n_classes) {
            throw ArgumentError("label outside [0, n_classes)");
        }
        y(static_cast<Eigen::Index>(r), labels[r]) = 1.0;
    }
    return y;
}

LinearModel train_linear(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                         double lambda) {
    if (x.rows() < 1 || x.rows() != y.rows()) {
        throw ArgumentError("feature and target row counts must match and be >= 1");
    }
    if (x.hasNaN() || y.hasNaN()) {
        throw ArgumentError("training data must not contain NaN");
    }
    if (lambda < 0.0) {
        throw ArgumentError("ridge strength must be >= 0");
    }
    const Eigen::Index n = x.rows(), p = x.cols();
    Eigen::MatrixXd xa(n, p + 1);
    xa.leftCols(p) = x;
    xa.col(p).setOnes();

    Eigen::MatrixXd beta;
    if (lambda == 0.0) {
        beta = xa.completeOrthogonalDecomposition().solve(y);
    } else {
        const double energy = p > 0 ? x.squaredNorm() / static_cast<double>(p) : 1.0;
        const double reg = lambda * (energy > 0.0 ? energy : 1.0);
        Eigen::MatrixXd a = xa.transpose() * xa;
        for (Eigen::Index i = 0; i < p; ++i) a(i, i) += reg;  // bias row untouched
        beta = a.ldlt().solve(xa.transpose() * y);
    }
    LinearModel m;
    m.w = beta.topRows(p);
    m.b = beta.row(p);
    return m;
}

std::vector<int> predict(const LinearModel& m, const Eigen::MatrixXd& x) {
    if (x.cols() != m.w.rows()) {
        throw ArgumentError("feature length does not match the model");
    }
    Eigen::MatrixXd scores = (x * m.w).rowwise() + m.b;
    std::vector<int> labels(scores.rows());
    for (Eigen::Index r = 0; r < scores.rows(); ++r) {
        int best = 0;
        for (Eigen::Index c = 1; c < scores.cols(); ++c) {
            if (scores(r, c) > scores(r, best)) best = static_cast<int>(c);
        }
        labels[r] = best;
    }
    return labels;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size() || truth.empty()) {
        throw ArgumentError("prediction and truth lists must match and be non-empty");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (predicted[i] == truth[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int k,
                                  std::uint64_t seed) {
    if (k < 2) {
        throw ArgumentError("fold count must be >= 2");
    }
    if (static_cast<int>(labels.size()) < k) {
        throw ArgumentError("dataset smaller than the fold count");
    }
    int n_classes = 0;
    for (int l : labels) {
        if (l < 0) throw ArgumentError("labels must be non-negative");
        n_classes = std::max(n_classes, l + 1);
    }
    std::vector<std::vector<int>> members(n_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        members[labels[i]].push_back(static_cast<int>(i));
    }
    Rng rng(seed);
    std::vector<int> fold(labels.size(), -1);
    for (int c = 0; c < n_classes; ++c) {
        if (members[c].empty()) continue;
        if (members[c].size() < 2) {
            throw StratificationError(
                "class " + std::to_string(c) +
                " has a single member and would be absent from training folds");
        }
        rng.shuffle(members[c]);
        for (std::size_t pos = 0; pos < members[c].size(); ++pos) {
            fold[members[c][pos]] = static_cast<int>(pos % k);
        }
    }
    return fold;
}

CVReport kfold_cv(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                  int k, std::uint64_t seed, double lambda) {
    if (x.rows() != static_cast<Eigen::Index>(labels.size())) {
        throw ArgumentError("feature rows must match the label count");
    }
    const std::vector<int> fold = stratified_folds(labels, k, seed);
    int n_classes = 0;
    for (int l : labels) n_classes = std::max(n_classes, l + 1);

    CVReport report;
    report.seed = seed;
    for (int f = 0; f < k; ++f) {
        std::vector<int> tr, te;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            (fold[i] == f ? te : tr).push_back(static_cast<int>(i));
        }
        Eigen::MatrixXd xtr(tr.size(), x.cols()), xte(te.size(), x.cols());
        std::vector<int> ytr(tr.size()), yte(te.size());
        for (std::size_t i = 0; i < tr.size(); ++i) {
            xtr.row(i) = x.row(tr[i]);
            ytr[i] = labels[tr[i]];
        }
        for (std::size_t i = 0; i < te.size(); ++i) {
            xte.row(i) = x.row(te[i]);
            yte[i] = labels[te[i]];
        }
        LinearModel m = train_linear(xtr, one_hot(ytr, n_classes), lambda);
        report.fold_accuracy.push_back(accuracy(predict(m, xte), yte));
        report.fold_size.push_back(static_cast<int>(te.size()));
    }
    double sum = 0.0;
    for (double a : report.fold_accuracy) sum += a;
    report.mean_accuracy = sum / report.fold_accuracy.size();
    return report;
}

namespace {

Crossbar map_to_crossbar(const LinearModel& m, int levels,
                         const NonVolatileCell& cell_template) {
    cell_template.validate();
    Crossbar cb;
    cb.rows = static_cast<int>(m.w.rows());
    cb.cols = static_cast<int>(m.w.cols());
    cb.levels = levels;
    cb.bias = m.b;

    const double wmax = m.w.size() > 0 ? m.w.cwiseAbs().maxCoeff() : 0.0;
    const double range = cell_template.g_max - cell_template.g_min;
    NonVolatileCell off = cell_template;
    off.g = off.g_min;
    cb.plus.assign(static_cast<std::size_t>(cb.rows) * cb.cols, off);
    cb.minus = cb.plus;
    if (wmax == 0.0) {
        cb.scale = 1.0;
        return cb;
    }
    cb.scale = wmax / range;
    const double g_step = levels > 0 ? range / (levels - 1) : 0.0;
    for (int i = 0; i < cb.rows; ++i) {
        for (int j = 0; j < cb.cols; ++j) {
            const double w = m.w(i, j);
            double mag = std::min(std::abs(w) / cb.scale, range);  // ∈ [0, range]
            NonVolatileCell on = cell_template;
            if (levels > 0) {
                const int level = static_cast<int>(std::lround(mag / g_step));
                on.g = level == levels - 1 ? on.g_max : on.g_min + level * g_step;
            } else {
                on.g = mag == range ? on.g_max : on.g_min + mag;
            }
            auto& cell = w >= 0.0 ? cb.plus[static_cast<std::size_t>(i) * cb.cols + j]
                                  : cb.minus[static_cast<std::size_t>(i) * cb.cols + j];
            cell = on;
        }
    }
    return cb;
}

}  // namespace

Crossbar quantize_to_crossbar(const LinearModel& m, int levels,
                              const NonVolatileCell& cell_template) {
    if (levels < 2) {
        throw ArgumentError("quantization needs at least two levels");
    }
    return map_to_crossbar(m, levels, cell_template);
}

Crossbar continuous_crossbar(const LinearModel& m,
                             const NonVolatileCell& cell_template) {
    return map_to_crossbar(m, 0, cell_template);
}

Eigen::MatrixXd Crossbar::realized_weights() const {
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * cols + j;
            w(i, j) = scale * (plus[k].g - minus[k].g);
        }
    }
    return w;
}

Eigen::VectorXd crossbar_mvm(const Crossbar& cb, const Eigen::VectorXd& v) {
    if (v.size() != cb.rows) {
        throw ArgumentError("input length does not match the crossbar rows");
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(cb.cols);
    for (int i = 0; i < cb.rows; ++i) {
        for (int j = 0; j < cb.cols; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * cb.cols + j;
            y(j) += read_cell(cb.plus[k], v(i)) - read_cell(cb.minus[k], v(i));
        }
    }
    return y;
}

Eigen::RowVectorXd crossbar_scores(const Crossbar& cb, const Eigen::VectorXd& v) {
    return cb.scale * crossbar_mvm(cb, v).transpose() + cb.bias;
}

}  // namespace nnosim
