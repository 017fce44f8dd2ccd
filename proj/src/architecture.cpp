#include "layergauge/architecture.hpp"

#include <algorithm>

#include "layergauge/errors.hpp"

namespace layergauge {

std::string_view toString(LayerKind kind) {
    switch (kind) {
        case LayerKind::Input: return "input";
        case LayerKind::Convolution: return "convolution";
        case LayerKind::Relu: return "relu";
        case LayerKind::Normalization: return "normalization";
        case LayerKind::MaxPooling: return "maxPooling";
        case LayerKind::FullyConnected: return "fullyConnected";
        case LayerKind::Dropout: return "dropout";
        case LayerKind::Softmax: return "softmax";
        case LayerKind::Output: return "output";
    }
    return "?";
}

std::string_view toString(VariantTag tag) {
    switch (tag) {
        case VariantTag::PretrainedPrefix: return "pretrained";
        case VariantTag::RandomBaseline: return "random";
        case VariantTag::Hybrid: return "hybrid";
    }
    return "?";
}

VariantTag variantTagFromString(std::string_view name) {
    if (name == "pretrained") return VariantTag::PretrainedPrefix;
    if (name == "random") return VariantTag::RandomBaseline;
    if (name == "hybrid") return VariantTag::Hybrid;
    throw ConfigError("unknown model variant '" + std::string(name) +
                      "' (expected pretrained, random or hybrid)");
}

int ArchitectureSpec::cutLayer(int n) const {
    const auto it = representationCuts.find(n);
    if (it == representationCuts.end()) {
        throw ConfigError("representation layer n=" + std::to_string(n) + " is out of range for " +
                          name + " (N=" + std::to_string(representationCount()) + ")");
    }
    return it->second;
}

namespace {

struct Builder {
    std::vector<LayerSpec> layers;
    std::map<int, int> cuts;
    int nextOrdinal = 1;

    void add(LayerSpec spec) {
        spec.index = static_cast<int>(layers.size());
        layers.push_back(spec);
    }
    void input() { add({.kind = LayerKind::Input}); }
    void conv(Index filters, Index kernel, Index stride, Index padding, Index groups) {
        add({.kind = LayerKind::Convolution,
             .filters = filters,
             .kernel = kernel,
             .stride = stride,
             .padding = padding,
             .groups = groups,
             .learnedOrdinal = nextOrdinal++});
    }
    void relu() { add({.kind = LayerKind::Relu}); }
    void norm() { add({.kind = LayerKind::Normalization}); }
    void pool(Index window, Index stride) {
        add({.kind = LayerKind::MaxPooling, .kernel = window, .stride = stride});
    }
    void fc(Index width) {
        add({.kind = LayerKind::FullyConnected, .width = width, .learnedOrdinal = nextOrdinal++});
    }
    void dropout() { add({.kind = LayerKind::Dropout}); }
    void softmax() { add({.kind = LayerKind::Softmax}); }
    void output() { add({.kind = LayerKind::Output}); }
    // Marks the previous layer as the end of the current representation block.
    void cut() { cuts[static_cast<int>(cuts.size()) + 1] = static_cast<int>(layers.size()) - 1; }
};

}  // namespace

ArchitectureSpec buildAlexNet() {
    Builder b;
    b.input();                      //  0
    b.conv(96, 11, 4, 0, 1);        //  1
    b.relu();                       //  2
    b.norm();                       //  3
    b.pool(3, 2);                   //  4
    b.cut();                        //  representation layer 1
    b.conv(256, 5, 1, 2, 2);        //  5
    b.relu();                       //  6
    b.norm();                       //  7
    b.pool(3, 2);                   //  8
    b.cut();                        //  representation layer 2
    b.conv(384, 3, 1, 1, 1);        //  9
    b.relu();                       // 10
    b.cut();                        //  representation layer 3
    b.conv(384, 3, 1, 1, 2);        // 11
    b.relu();                       // 12
    b.cut();                        //  representation layer 4
    b.conv(256, 3, 1, 1, 2);        // 13
    b.relu();                       // 14
    b.pool(3, 2);                   // 15
    b.cut();                        //  representation layer 5
    b.fc(4096);                     // 16
    b.relu();                       // 17
    b.cut();                        //  representation layer 6
    b.dropout();                    // 18
    b.fc(4096);                     // 19
    b.relu();                       // 20
    b.cut();                        //  representation layer 7
    b.dropout();                    // 21
    b.fc(1000);                     // 22
    b.cut();                        //  representation layer 8
    b.softmax();                    // 23
    b.output();                     // 24

    ArchitectureSpec arch{.name = "alexnet",
                          .inputShape = {227, 227, 3},
                          .layers = std::move(b.layers),
                          .representationCuts = std::move(b.cuts)};
    validateArchitecture(arch);
    return arch;
}

ArchitectureSpec buildTiny() {
    Builder b;
    b.input();                 // 0
    b.conv(8, 5, 1, 2, 1);     // 1
    b.relu();                  // 2
    b.norm();                  // 3
    b.pool(3, 2);              // 4
    b.cut();                   // representation layer 1: 15x15x8
    b.conv(16, 3, 1, 1, 2);    // 5
    b.relu();                  // 6
    b.pool(3, 2);              // 7
    b.cut();                   // representation layer 2: 7x7x16

    ArchitectureSpec arch{.name = "tiny",
                          .inputShape = {32, 32, 3},
                          .layers = std::move(b.layers),
                          .representationCuts = std::move(b.cuts)};
    validateArchitecture(arch);
    return arch;
}

ArchitectureSpec architectureByName(std::string_view name) {
    if (name == "alexnet") return buildAlexNet();
    if (name == "tiny") return buildTiny();
    throw ConfigError("unknown architecture '" + std::string(name) + "' (expected alexnet or tiny)");
}

std::vector<std::string> architectureNames() { return {"alexnet", "tiny"}; }

std::vector<ShapeHWC> activationShapes(const ArchitectureSpec& arch) {
    std::vector<ShapeHWC> shapes;
    shapes.reserve(arch.layers.size());
    ShapeHWC current = arch.inputShape;
    for (const LayerSpec& layer : arch.layers) {
        switch (layer.kind) {
            case LayerKind::Input:
                current = arch.inputShape;
                break;
            case LayerKind::Convolution: {
                const Index spanH = current.h + 2 * layer.padding - layer.kernel;
                const Index spanW = current.w + 2 * layer.padding - layer.kernel;
                if (spanH < 0 || spanW < 0 || spanH % layer.stride != 0 ||
                    spanW % layer.stride != 0) {
                    throw ConfigError(arch.name + " layer " + std::to_string(layer.index) +
                                      ": convolution output size is not a positive integer");
                }
                if (current.c % layer.groups != 0 || layer.filters % layer.groups != 0) {
                    throw ConfigError(arch.name + " layer " + std::to_string(layer.index) +
                                      ": channels/filters not divisible by groups");
                }
                current = {spanH / layer.stride + 1, spanW / layer.stride + 1, layer.filters};
                break;
            }
            case LayerKind::MaxPooling: {
                if (layer.kernel > current.h || layer.kernel > current.w) {
                    throw ConfigError(arch.name + " layer " + std::to_string(layer.index) +
                                      ": pooling window larger than input");
                }
                current = {(current.h - layer.kernel) / layer.stride + 1,
                           (current.w - layer.kernel) / layer.stride + 1, current.c};
                break;
            }
            case LayerKind::FullyConnected:
                current = {1, 1, layer.width};
                break;
            case LayerKind::Relu:
            case LayerKind::Normalization:
            case LayerKind::Dropout:
            case LayerKind::Softmax:
            case LayerKind::Output:
                break;  // shape preserved
        }
        shapes.push_back(current);
    }
    return shapes;
}

Index featureDimension(const ArchitectureSpec& arch, int n) {
    const int cut = arch.cutLayer(n);
    return activationShapes(arch)[static_cast<std::size_t>(cut)].flat();
}

std::vector<Index> featureDimensions(const ArchitectureSpec& arch) {
    const std::vector<ShapeHWC> shapes = activationShapes(arch);
    std::vector<Index> dims;
    dims.reserve(arch.representationCuts.size());
    for (const auto& [n, cut] : arch.representationCuts) {
        dims.push_back(shapes[static_cast<std::size_t>(cut)].flat());
    }
    return dims;
}

std::vector<LearnedLayerInfo> learnedLayers(const ArchitectureSpec& arch) {
    const std::vector<ShapeHWC> shapes = activationShapes(arch);
    std::vector<LearnedLayerInfo> result;
    for (const LayerSpec& layer : arch.layers) {
        if (layer.learnedOrdinal == 0) continue;
        LearnedLayerInfo info;
        info.ordinal = layer.learnedOrdinal;
        info.layerIndex = layer.index;
        info.kind = layer.kind;
        const ShapeHWC& in = layer.index == 0 ? arch.inputShape
                                              : shapes[static_cast<std::size_t>(layer.index - 1)];
        if (layer.kind == LayerKind::Convolution) {
            info.weightShape = {layer.filters, layer.kernel, layer.kernel, in.c / layer.groups};
            info.biasLength = layer.filters;
        } else {
            info.weightShape = {layer.width, in.flat()};
            info.biasLength = layer.width;
        }
        result.push_back(std::move(info));
    }
    std::sort(result.begin(), result.end(),
              [](const LearnedLayerInfo& a, const LearnedLayerInfo& b) { return a.ordinal < b.ordinal; });
    return result;
}

void validateArchitecture(const ArchitectureSpec& arch) {
    if (arch.layers.empty() || arch.layers.front().kind != LayerKind::Input) {
        throw ConfigError(arch.name + ": layer table must start with the input layer");
    }
    if (arch.inputShape.h < 1 || arch.inputShape.w < 1 || arch.inputShape.c < 1) {
        throw ConfigError(arch.name + ": input shape must be positive");
    }
    int ordinal = 0;
    for (std::size_t i = 0; i < arch.layers.size(); ++i) {
        const LayerSpec& layer = arch.layers[i];
        if (layer.index != static_cast<int>(i)) {
            throw ConfigError(arch.name + ": layer indices must be contiguous from 0");
        }
        const bool learned =
            layer.kind == LayerKind::Convolution || layer.kind == LayerKind::FullyConnected;
        if (learned) {
            if (layer.learnedOrdinal != ++ordinal) {
                throw ConfigError(arch.name + ": learned layers must be numbered 1.. in order");
            }
        } else if (layer.learnedOrdinal != 0) {
            throw ConfigError(arch.name + ": only convolution/fullyConnected layers carry ordinals");
        }
    }
    if (arch.representationCuts.empty()) {
        throw ConfigError(arch.name + ": at least one representation cut is required");
    }
    int expectedN = 1;
    int previousCut = 0;
    for (const auto& [n, cut] : arch.representationCuts) {
        if (n != expectedN++) {
            throw ConfigError(arch.name + ": representation cuts must cover 1..N contiguously");
        }
        if (cut <= previousCut || cut >= static_cast<int>(arch.layers.size())) {
            throw ConfigError(arch.name + ": representation cuts must strictly increase");
        }
        previousCut = cut;
    }
    if (arch.representationCount() != ordinal) {
        throw ConfigError(arch.name + ": one representation cut per learned layer is required");
    }
    // Every cut must land at or after its block's learned layer.
    for (const auto& [n, cut] : arch.representationCuts) {
        int learnedIndex = -1;
        for (const LayerSpec& layer : arch.layers) {
            if (layer.learnedOrdinal == n) learnedIndex = layer.index;
        }
        if (cut < learnedIndex) {
            throw ConfigError(arch.name + ": cut for representation layer " + std::to_string(n) +
                              " precedes its learned layer");
        }
    }
    activationShapes(arch);  // throws when shapes do not propagate
}

}  // namespace layergauge
