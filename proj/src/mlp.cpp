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

#include "pogo/mlp.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <sstream>
#include <algorithm>
#include <ostream>
#include <string>

#include "pogo/errors.hpp"

namespace pogo {

namespace {

Eigen::MatrixXd affine(const DenseLayer& layer, const Eigen::MatrixXd& x) {
    Eigen::MatrixXd z = layer.weight * x;
    z.colwise() += layer.bias;
    return z;
}

Eigen::MatrixXd apply_output(Activation act, const Eigen::MatrixXd& z) {
    return act == Activation::Tanh ? Eigen::MatrixXd(z.array().tanh()) : z;
}

void check_sizes(const std::vector<int>& sizes) {
    if (sizes.size() < 2) throw InvalidParameter("network needs at least an input and an output size");
    for (int s : sizes)
        if (s <= 0) throw InvalidParameter("network layer sizes must be positive");
}

}  // namespace

Eigen::VectorXd MlpGradients::flatten() const {
    Eigen::Index n = 0;
    for (std::size_t l = 0; l < weight.size(); ++l) n += weight[l].size() + bias[l].size();
    Eigen::VectorXd flat(n);
    Eigen::Index at = 0;
    for (std::size_t l = 0; l < weight.size(); ++l) {
        for (Eigen::Index r = 0; r < weight[l].rows(); ++r)
            for (Eigen::Index c = 0; c < weight[l].cols(); ++c) flat[at++] = weight[l](r, c);
        for (Eigen::Index r = 0; r < bias[l].size(); ++r) flat[at++] = bias[l][r];
    }
    return flat;
}

Mlp::Mlp(std::vector<int> sizes, Activation output, Rng& rng, double final_scale)
    : sizes_(std::move(sizes)), output_(output) {
    check_sizes(sizes_);
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
        const int fan_in = sizes_[l];
        const int fan_out = sizes_[l + 1];
        double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        if (l + 2 == sizes_.size()) bound *= final_scale;
        DenseLayer layer{Eigen::MatrixXd(fan_out, fan_in), Eigen::VectorXd(fan_out)};
        for (int r = 0; r < fan_out; ++r)
            for (int c = 0; c < fan_in; ++c) layer.weight(r, c) = rng.uniform(-bound, bound);
        for (int r = 0; r < fan_out; ++r) layer.bias[r] = rng.uniform(-bound, bound);
        layers_.push_back(std::move(layer));
    }
}

Mlp Mlp::zeros(std::vector<int> sizes, Activation output) {
    check_sizes(sizes);
    Mlp net;
    net.sizes_ = std::move(sizes);
    net.output_ = output;
    for (std::size_t l = 0; l + 1 < net.sizes_.size(); ++l)
        net.layers_.push_back({Eigen::MatrixXd::Zero(net.sizes_[l + 1], net.sizes_[l]),
                               Eigen::VectorXd::Zero(net.sizes_[l + 1])});
    return net;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input) const {
    Eigen::MatrixXd x = input;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        Eigen::MatrixXd z = affine(layers_[l], x);
        x = (l + 1 == layers_.size()) ? apply_output(output_, z) : Eigen::MatrixXd(z.cwiseMax(0.0));
    }
    return x;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input, Cache& cache) const {
    cache.inputs.clear();
    cache.pre.clear();
    Eigen::MatrixXd x = input;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        cache.inputs.push_back(x);
        cache.pre.push_back(affine(layers_[l], x));
        const Eigen::MatrixXd& z = cache.pre.back();
        x = (l + 1 == layers_.size()) ? apply_output(output_, z) : Eigen::MatrixXd(z.cwiseMax(0.0));
    }
    cache.output = x;
    return x;
}

Eigen::MatrixXd Mlp::backward(const Cache& cache, const Eigen::MatrixXd& grad_output,
                              MlpGradients& grads) const {
    const std::size_t n = layers_.size();
    grads.weight.resize(n);
    grads.bias.resize(n);
    Eigen::MatrixXd grad = grad_output;
    for (std::size_t i = n; i-- > 0;) {
        Eigen::MatrixXd delta;
        if (i + 1 == n) {
            delta = output_ == Activation::Tanh
                        ? Eigen::MatrixXd(grad.array() * (1.0 - cache.output.array().square()))
                        : grad;
        } else {
            delta = (cache.pre[i].array() > 0.0).select(grad, 0.0);
        }
        grads.weight[i] = delta * cache.inputs[i].transpose();
        grads.bias[i] = delta.rowwise().sum();
        grad = layers_[i].weight.transpose() * delta;
    }
    return grad;
}

std::size_t Mlp::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l)
        n += static_cast<std::size_t>(sizes_[l] + 1) * static_cast<std::size_t>(sizes_[l + 1]);
    return n;
}

Eigen::VectorXd Mlp::flatten() const {
    MlpGradients view;
    for (const DenseLayer& layer : layers_) {
        view.weight.push_back(layer.weight);
        view.bias.push_back(layer.bias);
    }
    return view.flatten();
}

void Mlp::unflatten(const Eigen::VectorXd& params) {
    if (static_cast<std::size_t>(params.size()) != parameter_count())
        throw InvalidParameter("parameter vector has the wrong length");
    Eigen::Index at = 0;
    for (DenseLayer& layer : layers_) {
        for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
            for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = params[at++];
        for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias[r] = params[at++];
    }
}

void Mlp::save(std::ostream& out) const {
    out << "pogo-mlp 1\n";
    out << "activation " << (output_ == Activation::Tanh ? "tanh" : "identity") << '\n';
    out << "sizes";
    for (int s : sizes_) out << ' ' << s;
    out << '\n' << std::setprecision(17);
    for (const DenseLayer& layer : layers_) {
        for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
            for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) out << (c ? " " : "") << layer.weight(r, c);
            out << '\n';
        }
        for (Eigen::Index r = 0; r < layer.bias.size(); ++r) out << (r ? " " : "") << layer.bias[r];
        out << '\n';
    }
}

Mlp Mlp::load(std::istream& in) {
    std::string tag;
    int version = 0;
    if (!(in >> tag >> version) || tag != "pogo-mlp" || version != 1)
        throw ConfigError("not a pogo-mlp v1 snapshot");
    std::string key;
    std::string act;
    if (!(in >> key >> act) || key != "activation" || (act != "tanh" && act != "identity"))
        throw ConfigError("snapshot: bad activation line");
    if (!(in >> key) || key != "sizes") throw ConfigError("snapshot: missing sizes line");
    std::vector<int> sizes;
    std::string rest;
    std::getline(in, rest);
    {
        std::istringstream line(rest);
        int s = 0;
        while (line >> s) sizes.push_back(s);
    }
    Mlp net = zeros(sizes, act == "tanh" ? Activation::Tanh : Activation::Identity);
    Eigen::VectorXd params(static_cast<Eigen::Index>(net.parameter_count()));
    for (Eigen::Index i = 0; i < params.size(); ++i)
        if (!(in >> params[i])) throw ConfigError("snapshot: truncated weights");
    net.unflatten(params);
    return net;
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
    auto& dst = target.layers();
    const auto& src = online.layers();
    for (std::size_t l = 0; l < dst.size(); ++l) {
        dst[l].weight = tau * src[l].weight + (1.0 - tau) * dst[l].weight;
        dst[l].bias = tau * src[l].bias + (1.0 - tau) * dst[l].bias;
    }
}

Adam::Adam(const Mlp& net, double learning_rate, double beta1, double beta2, double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon) {
    for (const DenseLayer& layer : net.layers()) {
        m_.weight.push_back(Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols()));
        m_.bias.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
    }
    v_ = m_;
}

void Adam::step(Mlp& net, const MlpGradients& grads) {
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
        m = beta1_ * m + (1.0 - beta1_) * g;
        v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
        param.array() -= lr_ * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
    };
    auto& layers = net.layers();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        update(layers[l].weight, m_.weight[l], v_.weight[l], grads.weight[l]);
        update(layers[l].bias, m_.bias[l], v_.bias[l], grads.bias[l]);
    }
}

LossFn squared_error_loss(Eigen::MatrixXd target) {
    return [target = std::move(target)](const Eigen::MatrixXd& out, Eigen::MatrixXd* grad) {
        const Eigen::MatrixXd diff = out - target;
        const double n = static_cast<double>(diff.cols());
        if (grad) *grad = diff / n;
        return 0.5 * diff.squaredNorm() / n;
    };
}

double gradient_check(const Mlp& net, const Eigen::MatrixXd& input, const LossFn& loss,
                      double step, double floor) {
    Mlp::Cache cache;
    Eigen::MatrixXd grad_out;
    loss(net.forward(input, cache), &grad_out);
    MlpGradients grads;
    const Eigen::MatrixXd input_grad = net.backward(cache, grad_out, grads);
    const Eigen::VectorXd analytic = grads.flatten();

    auto rel = [floor](double a, double n) {
        if (a == 0.0 && n == 0.0) return 0.0;
        return std::abs(a - n) / std::max({std::abs(a), std::abs(n), floor});
    };

    double worst = 0.0;
    Mlp probe = net;
    const Eigen::VectorXd base = net.flatten();
    for (Eigen::Index i = 0; i < base.size(); ++i) {
        Eigen::VectorXd p = base;
        p[i] = base[i] + step;
        probe.unflatten(p);
        const double up = loss(probe.forward(input), nullptr);
        p[i] = base[i] - step;
        probe.unflatten(p);
        const double down = loss(probe.forward(input), nullptr);
        worst = std::max(worst, rel(analytic[i], (up - down) / (2.0 * step)));
    }
    for (Eigen::Index r = 0; r < input.rows(); ++r) {
        for (Eigen::Index c = 0; c < input.cols(); ++c) {
            Eigen::MatrixXd x = input;
            x(r, c) = input(r, c) + step;
            const double up = loss(net.forward(x), nullptr);
            x(r, c) = input(r, c) - step;
            const double down = loss(net.forward(x), nullptr);
            worst = std::max(worst, rel(input_grad(r, c), (up - down) / (2.0 * step)));
        }
    }
    return worst;
}

}  // namespace pogo
