#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "layergauge/architecture.hpp"
#include "layergauge/tensor.hpp"

// Weight bundles: the pretrained net A (loaded from the binary container) and
// the random-weight net R (seeded N(0, 0.01) filters, zero biases).

namespace layergauge {

struct LayerWeights {
    Tensorf weights;
    Tensorf bias;
};

struct Provenance {
    enum class Kind { Pretrained, Random };
    Kind kind = Kind::Pretrained;
    std::uint64_t seed = 0;          // Random only
    std::string sourceTaskLabel;     // Pretrained only (the original task)

    bool operator==(const Provenance&) const = default;
};

// Named tensors for a contiguous range of learned layers 1..maxOrdinal.
// Immutable after construction; layers are shared, never copied, when a
// bundle is spliced into a model.
class WeightBundle {
public:
    using LayerMap = std::map<int, std::shared_ptr<const LayerWeights>>;

    WeightBundle(Provenance provenance, LayerMap layers);

    const Provenance& provenance() const { return provenance_; }
    int maxOrdinal() const { return layers_.empty() ? 0 : layers_.rbegin()->first; }
    bool has(int ordinal) const { return layers_.count(ordinal) != 0; }
    const LayerWeights& layer(int ordinal) const;  // throws WeightError when absent
    std::shared_ptr<const LayerWeights> layerPtr(int ordinal) const;
    const LayerMap& layers() const { return layers_; }

private:
    Provenance provenance_;
    LayerMap layers_;
};

// Seeded random bundle: every filter weight is an i.i.d. N(0, 0.01) draw
// (sigma = 0.01), biases zero. Each learned layer draws from its own
// substream, so a layer's values depend only on (seed, ordinal, shape).
// maxOrdinal < 0 generates every learned layer.
WeightBundle randomBundle(const ArchitectureSpec& arch, std::uint64_t seed, int maxOrdinal = -1);

inline constexpr double kRandomWeightStddev = 0.01;

// Container I/O. load validates every tensor shape against the architecture
// and rejects bundles with gaps or unknown tensor names.
WeightBundle loadWeights(const std::filesystem::path& path, const ArchitectureSpec& arch);
void saveWeights(const WeightBundle& bundle, const std::filesystem::path& path);

void validateBundle(const WeightBundle& bundle, const ArchitectureSpec& arch);

// Container tensor name for a learned layer ("conv3.weight", "fc6.bias", ...).
std::string weightTensorName(const LearnedLayerInfo& info, bool bias);

}  // namespace layergauge
