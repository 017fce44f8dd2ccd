#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "layergauge/tensor.hpp"

// The artifact's binary tensor container, shared by weight bundles, SVM
// models and feature matrices. Little-endian throughout:
//   magic "OTSW" | u32 version=1 | u32 tensorCount
//   per tensor: u16 nameLength | name bytes | u8 rank | rank x u64 dims |
//               product(dims) x f32 values
//   trailer: u8 provenance (0 pretrained, 1 random) | u64 seed |
//            u16 labelLength | label bytes

namespace layergauge {

inline constexpr char kContainerMagic[4] = {'O', 'T', 'S', 'W'};
inline constexpr std::uint32_t kContainerVersion = 1;

struct NamedTensor {
    std::string name;
    Tensorf tensor;
};

struct ContainerTrailer {
    std::uint8_t provenanceTag = 0;  // 0 = pretrained, 1 = random
    std::uint64_t seed = 0;          // 0 when pretrained
    std::string label;               // source-task label or free-form tag
};

struct TensorContainer {
    std::vector<NamedTensor> tensors;
    ContainerTrailer trailer;

    const Tensorf* find(std::string_view name) const;
    const Tensorf& at(std::string_view name) const;  // throws FormatError when absent
};

// Bad magic / version / rank and an outright empty file raise FormatError;
// data that ends mid-record raises IoError.
TensorContainer readContainer(const std::filesystem::path& path);
TensorContainer parseContainer(const std::string& bytes, const std::string& sourceName);

std::string serializeContainer(const TensorContainer& container);
// Atomic: serialized to a temp file in the target directory, then renamed.
void writeContainer(const TensorContainer& container, const std::filesystem::path& path);

}  // namespace layergauge
