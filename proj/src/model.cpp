#include "layergauge/model.hpp"

#include <algorithm>

#include "layergauge/errors.hpp"

namespace layergauge {

const LayerWeights& ModelWeights::layer(int ordinal) const {
    if (ordinal < 1 || ordinal > maxOrdinal() || !layers[static_cast<std::size_t>(ordinal - 1)]) {
        throw WeightError("model covers learned layers 1.." + std::to_string(maxOrdinal()) +
                          "; layer " + std::to_string(ordinal) + " requested");
    }
    return *layers[static_cast<std::size_t>(ordinal - 1)];
}

ModelWeights assembleVariant(const ArchitectureSpec& arch, const WeightBundle& pretrained,
                             const WeightBundle& random, ModelVariant variant) {
    if (variant.n < 1 || variant.n > arch.representationCount()) {
        throw ConfigError("variant n=" + std::to_string(variant.n) + " out of range for " +
                          arch.name + " (N=" + std::to_string(arch.representationCount()) + ")");
    }
    validateBundle(pretrained, arch);
    validateBundle(random, arch);

    ModelWeights model{.variant = variant, .layers = {}};
    model.layers.resize(static_cast<std::size_t>(variant.n));
    for (int ordinal = 1; ordinal <= variant.n; ++ordinal) {
        const bool fromRandom = variant.tag == VariantTag::RandomBaseline ||
                                (variant.tag == VariantTag::Hybrid && ordinal == variant.n);
        const WeightBundle& source = fromRandom ? random : pretrained;
        model.layers[static_cast<std::size_t>(ordinal - 1)] = source.layerPtr(ordinal);
    }
    return model;
}

Tensorf applyLayerRange(const ArchitectureSpec& arch, const ModelWeights& weights,
                        const Tensorf& activation, int firstLayer, int lastLayer) {
    if (firstLayer < 1 || lastLayer >= static_cast<int>(arch.layers.size()) ||
        firstLayer > lastLayer + 1) {
        throw ConfigError("layer range " + std::to_string(firstLayer) + ".." +
                          std::to_string(lastLayer) + " out of bounds for " + arch.name);
    }
    Tensorf current = activation;
    for (int i = firstLayer; i <= lastLayer; ++i) {
        const LayerSpec& layer = arch.layers[static_cast<std::size_t>(i)];
        switch (layer.kind) {
            case LayerKind::Convolution: {
                const LayerWeights& lw = weights.layer(layer.learnedOrdinal);
                current = conv2d(current, lw.weights, lw.bias,
                                 ConvParams{layer.stride, layer.padding, layer.groups});
                break;
            }
            case LayerKind::Relu:
                current = relu(current);
                break;
            case LayerKind::Normalization:
                current = lrn(current, layer.lrn);
                break;
            case LayerKind::MaxPooling:
                current = maxpool(current, layer.kernel, layer.stride);
                break;
            case LayerKind::FullyConnected: {
                const LayerWeights& lw = weights.layer(layer.learnedOrdinal);
                current = fullyConnected(current, lw.weights, lw.bias);
                break;
            }
            case LayerKind::Dropout:
                current = dropoutInference(current);
                break;
            case LayerKind::Input:
            case LayerKind::Softmax:
            case LayerKind::Output:
                throw ConfigError(std::string("layer kind ") + std::string(toString(layer.kind)) +
                                  " cannot appear in a representation forward pass");
        }
    }
    return current;
}

std::map<int, Tensorf> forwardCollect(const ArchitectureSpec& arch, const ModelWeights& weights,
                                      const Tensorf& image, const std::vector<int>& cuts) {
    const ShapeHWC in = arch.inputShape;
    if (image.rank() != 3 || image.dim(0) != in.h || image.dim(1) != in.w || image.dim(2) != in.c) {
        throw DimensionError("forward: image shape " + shapeToString(image.shape()) +
                             " does not match " + arch.name + " input " +
                             std::to_string(in.h) + "x" + std::to_string(in.w) + "x" +
                             std::to_string(in.c));
    }

    std::map<int, Tensorf> captured;
    std::vector<int> wanted = cuts;
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    if (wanted.empty()) return captured;
    for (int n : wanted) {
        if (n < 0 || n > arch.representationCount()) {
            throw ConfigError("representation cut n=" + std::to_string(n) + " out of range for " +
                              arch.name);
        }
    }

    Tensorf current = image;
    int layerDone = 0;
    for (int n : wanted) {
        if (n == 0) {
            captured.emplace(0, current);
            continue;
        }
        const int target = arch.cutLayer(n);
        current = applyLayerRange(arch, weights, current, layerDone + 1, target);
        layerDone = target;
        captured.emplace(n, current);
    }
    return captured;
}

Tensorf forwardToRepresentation(const ArchitectureSpec& arch, const ModelWeights& weights,
                                const Tensorf& image, int n) {
    if (n < 1 || n > arch.representationCount()) {
        throw ConfigError("representation layer n=" + std::to_string(n) + " out of range for " +
                          arch.name);
    }
    std::map<int, Tensorf> acts = forwardCollect(arch, weights, image, {n});
    return flatten(acts.at(n));
}

}  // namespace layergauge
