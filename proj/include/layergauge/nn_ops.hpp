#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "layergauge/errors.hpp"
#include "layergauge/tensor.hpp"

// Forward-pass kernels for every layer type of the 25-layer feature network:
// convolution (grouped, zero-padded), Relu, cross-channel response
// normalization, max-pooling, fully-connected and inference-mode dropout.
// All ops are pure functions over immutable inputs.

namespace layergauge {

struct ConvParams {
    Index stride = 1;
    Index padding = 0;  // symmetric zero padding
    Index groups = 1;
};

struct LrnParams {
    Index depthRadius = 2;  // half-window over channels (window = 2*r + 1)
    float k = 2.0f;
    float alpha = 1e-4f;
    float beta = 0.75f;
};

namespace detail {

inline void checkRank(Index got, Index want, const char* what) {
    if (got != want) {
        throw DimensionError(std::string(what) + ": expected rank " + std::to_string(want) +
                             ", got rank " + std::to_string(got));
    }
}

}  // namespace detail

// Spatial convolution over an H x W x C activation with an F x kH x kW x Cg
// filter bank (Cg = C / groups). Output is Ho x Wo x F with
// Ho = (H + 2*pad - kH) / stride + 1, which must divide exactly.
// Evaluated as im2col + one matrix product per group.
template <typename Scalar>
Tensor<Scalar> conv2d(const Tensor<Scalar>& input, const Tensor<Scalar>& weights,
                      const Tensor<Scalar>& bias, const ConvParams& params) {
    detail::checkRank(input.rank(), 3, "conv2d input");
    detail::checkRank(weights.rank(), 4, "conv2d weights");
    detail::checkRank(bias.rank(), 1, "conv2d bias");
    if (params.stride < 1 || params.padding < 0 || params.groups < 1) {
        throw ConfigError("conv2d: stride must be >= 1, padding >= 0, groups >= 1");
    }

    const Index inH = input.dim(0), inW = input.dim(1), inC = input.dim(2);
    const Index filters = weights.dim(0), kH = weights.dim(1), kW = weights.dim(2);
    const Index groupC = weights.dim(3);

    if (inC % params.groups != 0) {
        throw ConfigError("conv2d: input channels " + std::to_string(inC) +
                          " not divisible by groups " + std::to_string(params.groups));
    }
    if (filters % params.groups != 0) {
        throw ConfigError("conv2d: filter count " + std::to_string(filters) +
                          " not divisible by groups " + std::to_string(params.groups));
    }
    if (groupC * params.groups != inC) {
        throw DimensionError("conv2d: weights channel axis is " + std::to_string(groupC) +
                             " per group but input has " + std::to_string(inC) + " channels over " +
                             std::to_string(params.groups) + " group(s)");
    }
    if (bias.size() != filters) {
        throw DimensionError("conv2d: bias axis has " + std::to_string(bias.size()) +
                             " entries, expected one per filter (" + std::to_string(filters) + ")");
    }

    const Index spanH = inH + 2 * params.padding - kH;
    const Index spanW = inW + 2 * params.padding - kW;
    if (spanH < 0 || spanW < 0 || spanH % params.stride != 0 || spanW % params.stride != 0) {
        throw ConfigError("conv2d: output size (" + std::to_string(inH) + "+2*" +
                          std::to_string(params.padding) + "-" + std::to_string(kH) + ")/" +
                          std::to_string(params.stride) + "+1 is not a positive integer");
    }
    const Index outH = spanH / params.stride + 1;
    const Index outW = spanW / params.stride + 1;

    using MatrixRM = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Index patch = kH * kW * groupC;
    const Index groupF = filters / params.groups;

    Tensor<Scalar> output({outH, outW, filters});
    Eigen::Map<MatrixRM> outMat(output.data(), outH * outW, filters);

    MatrixRM columns(outH * outW, patch);
    for (Index g = 0; g < params.groups; ++g) {
        const Index firstChannel = g * groupC;
        for (Index oy = 0; oy < outH; ++oy) {
            for (Index ox = 0; ox < outW; ++ox) {
                Scalar* row = columns.data() + (oy * outW + ox) * patch;
                for (Index i = 0; i < kH; ++i) {
                    const Index y = oy * params.stride + i - params.padding;
                    Scalar* cell = row + i * kW * groupC;
                    if (y < 0 || y >= inH) {
                        std::fill(cell, cell + kW * groupC, Scalar(0));
                        continue;
                    }
                    for (Index j = 0; j < kW; ++j, cell += groupC) {
                        const Index x = ox * params.stride + j - params.padding;
                        if (x < 0 || x >= inW) {
                            std::fill(cell, cell + groupC, Scalar(0));
                        } else {
                            const Scalar* src = input.data() + (y * inW + x) * inC + firstChannel;
                            std::copy(src, src + groupC, cell);
                        }
                    }
                }
            }
        }
        Eigen::Map<const MatrixRM> groupWeights(weights.data() + g * groupF * patch, groupF, patch);
        outMat.middleCols(g * groupF, groupF).noalias() = columns * groupWeights.transpose();
    }

    Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> biasVec(bias.data(), filters);
    outMat.rowwise() += biasVec.transpose();
    return output;
}

// Elementwise max(0, x); shape preserved.
template <typename Scalar>
Tensor<Scalar> relu(const Tensor<Scalar>& input) {
    return {input.shape(), input.array().max(Scalar(0))};
}

// Cross-channel response normalization:
//   out[y][x][c] = in[y][x][c] / (k + alpha * sum_{|j-c| <= r} in[y][x][j]^2)^beta
// with no division of alpha by the window size. Shape and sign preserved.
template <typename Scalar>
Tensor<Scalar> lrn(const Tensor<Scalar>& input, const LrnParams& params) {
    detail::checkRank(input.rank(), 3, "lrn input");
    if (params.depthRadius < 1 || params.k <= 0.0f || params.alpha < 0.0f || params.beta <= 0.0f) {
        throw ConfigError("lrn: requires depthRadius >= 1, k > 0, alpha >= 0, beta > 0");
    }

    const Index channels = input.dim(2);
    const Index pixels = input.dim(0) * input.dim(1);
    Tensor<Scalar> output(input.shape());
    const Scalar* in = input.data();
    Scalar* out = output.data();
    for (Index p = 0; p < pixels; ++p, in += channels, out += channels) {
        for (Index c = 0; c < channels; ++c) {
            const Index lo = std::max<Index>(0, c - params.depthRadius);
            const Index hi = std::min<Index>(channels - 1, c + params.depthRadius);
            Scalar sumSq = 0;
            for (Index j = lo; j <= hi; ++j) sumSq += in[j] * in[j];
            out[c] = in[c] / std::pow(params.k + params.alpha * sumSq, params.beta);
        }
    }
    return output;
}

// Max over window x window patches stepped by stride; floor semantics on the
// output size, channel count preserved. Every output value is an input value.
template <typename Scalar>
Tensor<Scalar> maxpool(const Tensor<Scalar>& input, Index window, Index stride) {
    detail::checkRank(input.rank(), 3, "maxpool input");
    if (window < 1 || stride < 1) {
        throw ConfigError("maxpool: window and stride must be >= 1");
    }
    const Index inH = input.dim(0), inW = input.dim(1), channels = input.dim(2);
    if (window > inH || window > inW) {
        throw ConfigError("maxpool: window " + std::to_string(window) + " larger than input " +
                          std::to_string(inH) + "x" + std::to_string(inW));
    }
    const Index outH = (inH - window) / stride + 1;
    const Index outW = (inW - window) / stride + 1;

    using ArrayMap = Eigen::Map<Eigen::Array<Scalar, Eigen::Dynamic, 1>>;
    using ConstArrayMap = Eigen::Map<const Eigen::Array<Scalar, Eigen::Dynamic, 1>>;
    Tensor<Scalar> output({outH, outW, channels});
    for (Index oy = 0; oy < outH; ++oy) {
        for (Index ox = 0; ox < outW; ++ox) {
            ArrayMap acc(output.data() + (oy * outW + ox) * channels, channels);
            bool first = true;
            for (Index i = 0; i < window; ++i) {
                const Index y = oy * stride + i;
                for (Index j = 0; j < window; ++j) {
                    const Index x = ox * stride + j;
                    ConstArrayMap cell(input.data() + (y * inW + x) * channels, channels);
                    if (first) {
                        acc = cell;
                        first = false;
                    } else {
                        acc = acc.max(cell);
                    }
                }
            }
        }
    }
    return output;
}

// out = weights * flatten(input) + bias. Flattening follows the tensor's
// row-major, channels-innermost storage order.
template <typename Scalar>
Tensor<Scalar> fullyConnected(const Tensor<Scalar>& input, const Tensor<Scalar>& weights,
                              const Tensor<Scalar>& bias) {
    detail::checkRank(weights.rank(), 2, "fully_connected weights");
    detail::checkRank(bias.rank(), 1, "fully_connected bias");
    const Index rows = weights.dim(0), cols = weights.dim(1);
    if (cols != input.size()) {
        throw DimensionError("fully_connected: weights column axis is " + std::to_string(cols) +
                             " but flattened input length is " + std::to_string(input.size()));
    }
    if (bias.size() != rows) {
        throw DimensionError("fully_connected: bias axis has " + std::to_string(bias.size()) +
                             " entries, expected " + std::to_string(rows));
    }

    using MatrixRM = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    Eigen::Map<const MatrixRM> weightMat(weights.data(), rows, cols);
    Eigen::Map<const Vector> in(input.data(), cols);
    Eigen::Map<const Vector> biasVec(bias.data(), rows);

    Tensor<Scalar> output({rows});
    Eigen::Map<Vector> out(output.data(), rows);
    out.noalias() = weightMat * in + biasVec;
    return output;
}

// Inference-mode dropout is the identity: features are extracted with the
// pretrained weights already scaled for inference.
template <typename Scalar>
Tensor<Scalar> dropoutInference(const Tensor<Scalar>& input) {
    return input;
}

// Flattens any tensor into a rank-1 feature vector (storage order is already
// row-major, channels innermost).
template <typename Scalar>
Tensor<Scalar> flatten(const Tensor<Scalar>& input) {
    return {Shape{input.size()}, input.array()};
}

}  // namespace layergauge
