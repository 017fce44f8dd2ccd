#include "layergauge/weights.hpp"

#include <algorithm>

#include "layergauge/container.hpp"
#include "layergauge/errors.hpp"
#include "layergauge/rng.hpp"

namespace layergauge {

WeightBundle::WeightBundle(Provenance provenance, LayerMap layers)
    : provenance_(std::move(provenance)), layers_(std::move(layers)) {
    int expected = 1;
    for (const auto& [ordinal, tensors] : layers_) {
        if (ordinal != expected++) {
            throw WeightError("weight bundle must cover a contiguous ordinal range starting at 1; "
                              "found ordinal " + std::to_string(ordinal) + " where " +
                              std::to_string(expected - 1) + " was expected");
        }
        if (!tensors) {
            throw WeightError("weight bundle holds a null layer at ordinal " +
                              std::to_string(ordinal));
        }
    }
}

const LayerWeights& WeightBundle::layer(int ordinal) const {
    const auto it = layers_.find(ordinal);
    if (it == layers_.end()) {
        throw WeightError("weight bundle has no learned layer " + std::to_string(ordinal) +
                          " (covers 1.." + std::to_string(maxOrdinal()) + ")");
    }
    return *it->second;
}

std::shared_ptr<const LayerWeights> WeightBundle::layerPtr(int ordinal) const {
    const auto it = layers_.find(ordinal);
    if (it == layers_.end()) {
        throw WeightError("weight bundle has no learned layer " + std::to_string(ordinal) +
                          " (covers 1.." + std::to_string(maxOrdinal()) + ")");
    }
    return it->second;
}

WeightBundle randomBundle(const ArchitectureSpec& arch, std::uint64_t seed, int maxOrdinal) {
    const std::vector<LearnedLayerInfo> infos = learnedLayers(arch);
    const int last = maxOrdinal < 0 ? static_cast<int>(infos.size()) : maxOrdinal;
    if (last < 1 || last > static_cast<int>(infos.size())) {
        throw ConfigError("randomBundle: maxOrdinal " + std::to_string(maxOrdinal) +
                          " out of range for " + arch.name);
    }

    WeightBundle::LayerMap layers;
    for (const LearnedLayerInfo& info : infos) {
        if (info.ordinal > last) break;
        // Independent substream per layer: the draw for layer k is a function
        // of (seed, k) alone, so truncated bundles share a prefix bit-exactly.
        GaussianStream gauss(deriveSeed(seed, "layer", info.ordinal), kRandomWeightStddev);
        Tensorf weights(info.weightShape);
        float* data = weights.data();
        for (Index i = 0; i < weights.size(); ++i) data[i] = static_cast<float>(gauss.next());
        Tensorf bias({info.biasLength});  // zero biases
        layers[info.ordinal] = std::make_shared<const LayerWeights>(
            LayerWeights{std::move(weights), std::move(bias)});
    }
    return WeightBundle({.kind = Provenance::Kind::Random, .seed = seed}, std::move(layers));
}

std::string weightTensorName(const LearnedLayerInfo& info, bool bias) {
    const char* prefix = info.kind == LayerKind::Convolution ? "conv" : "fc";
    return prefix + std::to_string(info.ordinal) + (bias ? ".bias" : ".weight");
}

void validateBundle(const WeightBundle& bundle, const ArchitectureSpec& arch) {
    const std::vector<LearnedLayerInfo> infos = learnedLayers(arch);
    for (const auto& [ordinal, tensors] : bundle.layers()) {
        if (ordinal > static_cast<int>(infos.size())) {
            throw WeightError(arch.name + " has only " + std::to_string(infos.size()) +
                              " learned layers but the bundle provides ordinal " +
                              std::to_string(ordinal));
        }
        const LearnedLayerInfo& info = infos[static_cast<std::size_t>(ordinal - 1)];
        if (tensors->weights.shape() != info.weightShape) {
            throw WeightError(weightTensorName(info, false) + ": expected shape " +
                              shapeToString(info.weightShape) + ", got " +
                              shapeToString(tensors->weights.shape()));
        }
        if (tensors->bias.rank() != 1 || tensors->bias.size() != info.biasLength) {
            throw WeightError(weightTensorName(info, true) + ": expected length " +
                              std::to_string(info.biasLength) + ", got " +
                              std::to_string(tensors->bias.size()));
        }
    }
}

WeightBundle loadWeights(const std::filesystem::path& path, const ArchitectureSpec& arch) {
    const TensorContainer container = readContainer(path);
    const std::vector<LearnedLayerInfo> infos = learnedLayers(arch);

    std::map<int, Tensorf> weightByOrdinal;
    std::map<int, Tensorf> biasByOrdinal;
    for (const NamedTensor& named : container.tensors) {
        bool matched = false;
        for (const LearnedLayerInfo& info : infos) {
            if (named.name == weightTensorName(info, false)) {
                weightByOrdinal.emplace(info.ordinal, named.tensor);
                matched = true;
            } else if (named.name == weightTensorName(info, true)) {
                biasByOrdinal.emplace(info.ordinal, named.tensor);
                matched = true;
            }
        }
        if (!matched) {
            throw WeightError(path.string() + ": tensor '" + named.name + "' does not name a " +
                              arch.name + " learned layer");
        }
    }

    WeightBundle::LayerMap layers;
    for (const auto& [ordinal, weights] : weightByOrdinal) {
        const auto biasIt = biasByOrdinal.find(ordinal);
        if (biasIt == biasByOrdinal.end()) {
            throw WeightError(path.string() + ": learned layer " + std::to_string(ordinal) +
                              " has weights but no bias tensor");
        }
        layers[ordinal] =
            std::make_shared<const LayerWeights>(LayerWeights{weights, biasIt->second});
    }
    if (biasByOrdinal.size() != weightByOrdinal.size()) {
        throw WeightError(path.string() + ": bias tensors without matching weight tensors");
    }

    Provenance provenance;
    if (container.trailer.provenanceTag == 0) {
        provenance = {.kind = Provenance::Kind::Pretrained,
                      .seed = 0,
                      .sourceTaskLabel = container.trailer.label};
    } else {
        provenance = {.kind = Provenance::Kind::Random, .seed = container.trailer.seed};
    }

    WeightBundle bundle(std::move(provenance), std::move(layers));
    validateBundle(bundle, arch);
    return bundle;
}

void saveWeights(const WeightBundle& bundle, const std::filesystem::path& path) {
    TensorContainer container;
    // Names are resolved against a synthetic ordinal->kind mapping derived
    // from the stored tensors themselves: conv weights are rank-4.
    for (const auto& [ordinal, tensors] : bundle.layers()) {
        LearnedLayerInfo info;
        info.ordinal = ordinal;
        info.kind = tensors->weights.rank() == 4 ? LayerKind::Convolution : LayerKind::FullyConnected;
        container.tensors.push_back({weightTensorName(info, false), tensors->weights});
        container.tensors.push_back({weightTensorName(info, true), tensors->bias});
    }
    if (bundle.provenance().kind == Provenance::Kind::Pretrained) {
        container.trailer = {0, 0, bundle.provenance().sourceTaskLabel};
    } else {
        container.trailer = {1, bundle.provenance().seed, ""};
    }
    writeContainer(container, path);
}

}  // namespace layergauge
