#pragma once

#include <map>
#include <memory>
#include <vector>

#include "layergauge/architecture.hpp"
#include "layergauge/weights.hpp"

// Assembly of the three evaluation models and the forward pass to a
// representation cut.

namespace layergauge {

// Weights for learned layers 1..variant.n, spliced per the variant rule:
//   PretrainedPrefix: layers 1..n from the pretrained bundle
//   RandomBaseline:   layers 1..n from the random bundle
//   Hybrid:           layers 1..n-1 pretrained, layer n random
// Layers are shared with the source bundles (no copies).
struct ModelWeights {
    ModelVariant variant;
    std::vector<std::shared_ptr<const LayerWeights>> layers;  // [ordinal - 1]

    const LayerWeights& layer(int ordinal) const;
    int maxOrdinal() const { return static_cast<int>(layers.size()); }
};

ModelWeights assembleVariant(const ArchitectureSpec& arch, const WeightBundle& pretrained,
                             const WeightBundle& random, ModelVariant variant);

// Applies layers firstLayer..lastLayer (inclusive, 1-based table indices) to
// an activation. Parameter-free layers are structural; learned layers take
// their tensors from `weights` by ordinal.
Tensorf applyLayerRange(const ArchitectureSpec& arch, const ModelWeights& weights,
                        const Tensorf& activation, int firstLayer, int lastLayer);

// Runs the net once and captures the activation at each requested cut; keys
// are representation-layer ordinals, with 0 standing for the input itself.
std::map<int, Tensorf> forwardCollect(const ArchitectureSpec& arch, const ModelWeights& weights,
                                      const Tensorf& image, const std::vector<int>& cuts);

// Applies layers 1..cut(n) and flattens the activation into a rank-1 feature
// vector of featureDimension(arch, n).
Tensorf forwardToRepresentation(const ArchitectureSpec& arch, const ModelWeights& weights,
                                const Tensorf& image, int n);

}  // namespace layergauge
