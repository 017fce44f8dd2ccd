#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "layergauge/nn_ops.hpp"
#include "layergauge/tensor.hpp"

// The 25-layer feature-extraction network: an ordered layer table with one
// representation cut per learned (convolution / fully-connected) block, and
// the three evaluation variants assembled from a pretrained and a random
// weight bundle.

namespace layergauge {

enum class LayerKind {
    Input,
    Convolution,
    Relu,
    Normalization,
    MaxPooling,
    FullyConnected,
    Dropout,
    Softmax,
    Output,
};

std::string_view toString(LayerKind kind);

struct LayerSpec {
    int index = 0;
    LayerKind kind = LayerKind::Input;
    // Convolution: filters/kernel/stride/padding/groups. MaxPooling reuses
    // kernel (window) and stride. FullyConnected uses width.
    Index filters = 0;
    Index kernel = 0;
    Index stride = 1;
    Index padding = 0;
    Index groups = 1;
    Index width = 0;
    LrnParams lrn;  // Normalization layers only; constants are per-layer
    // 1-based ordinal over the learned (weighted) layers, 0 for the rest.
    int learnedOrdinal = 0;
};

struct ShapeHWC {
    Index h = 0;
    Index w = 0;
    Index c = 0;
    Index flat() const { return h * w * c; }
    bool operator==(const ShapeHWC&) const = default;
};

struct ArchitectureSpec {
    std::string name;
    ShapeHWC inputShape;
    std::vector<LayerSpec> layers;
    // n in [1, N] -> index of the last layer of representation block n.
    std::map<int, int> representationCuts;

    int representationCount() const { return static_cast<int>(representationCuts.size()); }
    int cutLayer(int n) const;  // throws ConfigError when n is out of range
};

// The Table-1 AlexNet: 25 layers, 227x227x3 input, 8 representation layers.
ArchitectureSpec buildAlexNet();

// Two-block reduced network on 32x32x3 inputs for desk-scale experiments;
// same layer grammar (conv/relu/norm/pool then grouped conv/relu/pool).
ArchitectureSpec buildTiny();

// Lookup by CLI/config name ("alexnet", "tiny"); unknown name -> ConfigError.
ArchitectureSpec architectureByName(std::string_view name);
std::vector<std::string> architectureNames();

// Checks the structural invariants: learned ordinals contiguous from 1 with
// one cut each, cuts strictly increasing, shapes propagate cleanly.
void validateArchitecture(const ArchitectureSpec& arch);

// Activation shape after each layer; entry [i] is the output of layer i
// (entry [0] is the input layer's shape). Fully-connected outputs are 1x1xW.
std::vector<ShapeHWC> activationShapes(const ArchitectureSpec& arch);

// Flattened feature length at representation cut n (depends only on the
// architecture, never on weights or image content).
Index featureDimension(const ArchitectureSpec& arch, int n);
std::vector<Index> featureDimensions(const ArchitectureSpec& arch);

struct LearnedLayerInfo {
    int ordinal = 0;
    int layerIndex = 0;
    LayerKind kind = LayerKind::Convolution;
    Shape weightShape;
    Index biasLength = 0;
};

// Learned layers in ordinal order with the weight shapes the architecture
// expects; used to validate bundles and to size random generation.
std::vector<LearnedLayerInfo> learnedLayers(const ArchitectureSpec& arch);

enum class VariantTag {
    PretrainedPrefix,  // A_{1,n}
    RandomBaseline,    // R_{1,n}
    Hybrid,            // A_{1,n-1} R_n
};

std::string_view toString(VariantTag tag);
VariantTag variantTagFromString(std::string_view name);

struct ModelVariant {
    VariantTag tag = VariantTag::PretrainedPrefix;
    int n = 1;
    bool operator==(const ModelVariant&) const = default;
};

}  // namespace layergauge
