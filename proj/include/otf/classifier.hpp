#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

#include "otf/rng.hpp"

namespace otf::ml {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

template <typename Derived>
auto sigmoid(const Eigen::ArrayBase<Derived>& z) {
    using Scalar = typename Derived::Scalar;
    return (Scalar(1) + (-z).exp()).inverse();
}

// Parameters of a one-hidden-layer network, also used as its gradient.
template <typename Scalar>
struct Parameters {
    MatrixX<Scalar> w_hidden;  // hidden x inputs
    VectorX<Scalar> b_hidden;
    VectorX<Scalar> w_out;  // hidden
    Scalar b_out = 0;

    static Parameters zeros(Eigen::Index inputs, Eigen::Index hidden) {
        return {MatrixX<Scalar>::Zero(hidden, inputs), VectorX<Scalar>::Zero(hidden), VectorX<Scalar>::Zero(hidden),
                Scalar(0)};
    }

    Parameters& operator+=(const Parameters& other) {
        w_hidden += other.w_hidden;
        b_hidden += other.b_hidden;
        w_out += other.w_out;
        b_out += other.b_out;
        return *this;
    }

    bool all_finite() const {
        return w_hidden.allFinite() && b_hidden.allFinite() && w_out.allFinite() && std::isfinite(b_out);
    }

    friend bool operator==(const Parameters& a, const Parameters& b) {
        return a.w_hidden == b.w_hidden && a.b_hidden == b.b_hidden && a.w_out == b.w_out && a.b_out == b.b_out;
    }
};

// Sigmoid hidden layer, sigmoid output, squared-error loss. Inputs are the
// columns of a feature matrix.
template <typename Scalar>
class FeedForward {
public:
    using Params = Parameters<Scalar>;

    FeedForward() = default;

    // Weights uniform on [-1/sqrt(fan_in), 1/sqrt(fan_in)), biases zero.
    FeedForward(Eigen::Index inputs, Eigen::Index hidden, std::uint64_t init_seed)
        : params_(Params::zeros(inputs, hidden)) {
        SplitMix64 rng(init_seed);
        auto fill = [&rng](auto& m, Scalar limit) {
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                for (Eigen::Index i = 0; i < m.rows(); ++i)
                    m(i, j) = limit * (Scalar(2) * static_cast<Scalar>(rng.next_unit()) - Scalar(1));
        };
        fill(params_.w_hidden, Scalar(1) / std::sqrt(static_cast<Scalar>(inputs)));
        fill(params_.w_out, Scalar(1) / std::sqrt(static_cast<Scalar>(hidden)));
    }

    explicit FeedForward(Params params) : params_(std::move(params)) {}

    Eigen::Index inputs() const { return params_.w_hidden.cols(); }
    Eigen::Index hidden() const { return params_.w_hidden.rows(); }
    const Params& params() const { return params_; }
    Params& params() { return params_; }

    // One output in (0, 1) per column of `x`.
    RowVectorX<Scalar> predict(const MatrixX<Scalar>& x) const {
        const MatrixX<Scalar> h = hidden_activations(x);
        return output(h);
    }

    // Sum over columns of (output - target)^2.
    Scalar loss(const MatrixX<Scalar>& x, const RowVectorX<Scalar>& target) const {
        return (predict(x) - target).squaredNorm();
    }

    // Adds d(loss)/d(params) into `grad` and returns the loss.
    Scalar accumulate_gradient(const MatrixX<Scalar>& x, const RowVectorX<Scalar>& target, Params& grad) const {
        const MatrixX<Scalar> h = hidden_activations(x);
        const RowVectorX<Scalar> y = output(h);
        const RowVectorX<Scalar> diff = y - target;
        // Back through the output sigmoid.
        const RowVectorX<Scalar> delta_out = (Scalar(2) * diff.array() * y.array() * (Scalar(1) - y.array())).matrix();
        // Back through the hidden sigmoid.
        const MatrixX<Scalar> delta_hidden =
            ((params_.w_out * delta_out).array() * h.array() * (Scalar(1) - h.array())).matrix();

        grad.w_out.noalias() += h * delta_out.transpose();
        grad.b_out += delta_out.sum();
        grad.w_hidden.noalias() += delta_hidden * x.transpose();
        grad.b_hidden += delta_hidden.rowwise().sum();
        return diff.squaredNorm();
    }

    void step(const Params& grad, Scalar learning_rate) {
        params_.w_hidden -= learning_rate * grad.w_hidden;
        params_.b_hidden -= learning_rate * grad.b_hidden;
        params_.w_out -= learning_rate * grad.w_out;
        params_.b_out -= learning_rate * grad.b_out;
    }

private:
    MatrixX<Scalar> hidden_activations(const MatrixX<Scalar>& x) const {
        return sigmoid(((params_.w_hidden * x).colwise() + params_.b_hidden).array()).matrix();
    }

    RowVectorX<Scalar> output(const MatrixX<Scalar>& h) const {
        return sigmoid(((params_.w_out.transpose() * h).array() + params_.b_out)).matrix();
    }

    Params params_;
};

using Classifier = FeedForward<double>;

}  // namespace otf::ml
