/*
 Copyright 2026 The pogo-codesign Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef POGO_MLP_HPP
#define POGO_MLP_HPP

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "pogo/rng.hpp"

namespace pogo {

enum class Activation { Identity, Tanh };

struct DenseLayer {
    Eigen::MatrixXd weight;  // fan_out x fan_in
    Eigen::VectorXd bias;
};

struct MlpGradients {
    std::vector<Eigen::MatrixXd> weight;
    std::vector<Eigen::VectorXd> bias;

    Eigen::VectorXd flatten() const;
};

/// Fully connected network with ReLU hidden layers. Batches are column-major:
/// each column of the input is one sample.
class Mlp {
public:
    struct Cache {
        std::vector<Eigen::MatrixXd> inputs;  // input to each layer
        std::vector<Eigen::MatrixXd> pre;     // pre-activation of each layer
        Eigen::MatrixXd output;
    };

    Mlp() = default;
    /// Weights and biases uniform in +/-1/sqrt(fan_in); the last layer is
    /// additionally multiplied by final_scale.
    Mlp(std::vector<int> sizes, Activation output, Rng& rng, double final_scale = 1.0);

    static Mlp zeros(std::vector<int> sizes, Activation output);

    Eigen::MatrixXd forward(const Eigen::MatrixXd& input) const;
    Eigen::MatrixXd forward(const Eigen::MatrixXd& input, Cache& cache) const;
    Eigen::VectorXd predict(const Eigen::VectorXd& input) const { return forward(input).col(0); }

    /// Backpropagates dLoss/dOutput, overwriting grads; returns dLoss/dInput.
    Eigen::MatrixXd backward(const Cache& cache, const Eigen::MatrixXd& grad_output,
                             MlpGradients& grads) const;

    std::size_t parameter_count() const;
    Eigen::VectorXd flatten() const;
    void unflatten(const Eigen::VectorXd& params);

    const std::vector<int>& sizes() const { return sizes_; }
    Activation output_activation() const { return output_; }
    std::vector<DenseLayer>& layers() { return layers_; }
    const std::vector<DenseLayer>& layers() const { return layers_; }

    /// Plain-text snapshot: "pogo-mlp 1" header, activation, layer sizes, then
    /// each layer's row-major weights followed by its bias.
    void save(std::ostream& out) const;
    static Mlp load(std::istream& in);

private:
    std::vector<int> sizes_;
    Activation output_ = Activation::Identity;
    std::vector<DenseLayer> layers_;
};

/// target <- tau * online + (1 - tau) * target, layer by layer.
void soft_update(Mlp& target, const Mlp& online, double tau);

/// Adaptive moment estimation with bias correction.
class Adam {
public:
    Adam() = default;
    Adam(const Mlp& net, double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
         double epsilon = 1e-8);

    void step(Mlp& net, const MlpGradients& grads);
    long steps() const { return t_; }

private:
    double lr_ = 1e-3;
    double beta1_ = 0.9;
    double beta2_ = 0.999;
    double eps_ = 1e-8;
    long t_ = 0;
    MlpGradients m_;
    MlpGradients v_;
};

/// Scalar loss of a network output; fills dLoss/dOutput when the pointer is set.
using LossFn = std::function<double(const Eigen::MatrixXd& output, Eigen::MatrixXd* grad_output)>;

/// 0.5 * mean squared error against target.
LossFn squared_error_loss(Eigen::MatrixXd target);

/// Largest relative disagreement between backprop and central differences,
/// over every parameter and every input entry. Relative error is
/// |a - n| / max(|a|, |n|, floor); exact zeros on both sides count as 0.
/// Step and floor keep central-difference round-off (~eps |loss| / step) well
/// under 1e-5 relative; a ReLU pre-activation within ~step of zero breaks it,
/// so test inputs should keep clear of kinks.
double gradient_check(const Mlp& net, const Eigen::MatrixXd& input, const LossFn& loss,
                      double step = 1e-5, double floor = 1e-6);

}  // namespace pogo

#endif  // POGO_MLP_HPP
