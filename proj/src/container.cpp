#include "layergauge/container.hpp"

#include <cstring>

#include "layergauge/errors.hpp"
#include "layergauge/fs_util.hpp"

namespace layergauge {

namespace {

// Explicit little-endian encoding keeps the container byte-identical across
// platforms regardless of host endianness.

void putU16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void putU32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void putU64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void putF32(std::string& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    putU32(out, bits);
}

class Reader {
public:
    Reader(const std::string& bytes, std::string source)
        : bytes_(bytes), source_(std::move(source)) {}

    std::size_t remaining() const { return bytes_.size() - pos_; }

    const char* take(std::size_t n, const char* what) {
        if (remaining() < n) {
            throw IoError(source_ + ": truncated container (" + what + " needs " +
                          std::to_string(n) + " bytes, " + std::to_string(remaining()) + " left)");
        }
        const char* p = bytes_.data() + pos_;
        pos_ += n;
        return p;
    }

    std::uint16_t u16(const char* what) {
        const unsigned char* p = reinterpret_cast<const unsigned char*>(take(2, what));
        return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
    }

    std::uint32_t u32(const char* what) {
        const unsigned char* p = reinterpret_cast<const unsigned char*>(take(4, what));
        return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
               (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    }

    std::uint64_t u64(const char* what) {
        const unsigned char* p = reinterpret_cast<const unsigned char*>(take(8, what));
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
        return v;
    }

    std::uint8_t u8(const char* what) {
        return static_cast<std::uint8_t>(*take(1, what));
    }

    float f32(const char* what) {
        const std::uint32_t bits = u32(what);
        float v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }

    std::string str(std::size_t n, const char* what) { return std::string(take(n, what), n); }

private:
    const std::string& bytes_;
    std::string source_;
    std::size_t pos_ = 0;
};

}  // namespace

const Tensorf* TensorContainer::find(std::string_view name) const {
    for (const NamedTensor& t : tensors) {
        if (t.name == name) return &t.tensor;
    }
    return nullptr;
}

const Tensorf& TensorContainer::at(std::string_view name) const {
    const Tensorf* t = find(name);
    if (!t) throw FormatError("container is missing tensor '" + std::string(name) + "'");
    return *t;
}

TensorContainer parseContainer(const std::string& bytes, const std::string& sourceName) {
    if (bytes.size() < sizeof kContainerMagic + 4) {
        throw FormatError(sourceName + ": not a tensor container (file too short)");
    }
    if (std::memcmp(bytes.data(), kContainerMagic, sizeof kContainerMagic) != 0) {
        throw FormatError(sourceName + ": bad magic, expected OTSW");
    }
    Reader r(bytes, sourceName);
    r.take(sizeof kContainerMagic, "magic");
    const std::uint32_t version = r.u32("version");
    if (version != kContainerVersion) {
        throw FormatError(sourceName + ": unsupported container version " +
                          std::to_string(version));
    }
    const std::uint32_t count = r.u32("tensorCount");

    TensorContainer container;
    container.tensors.reserve(count);
    for (std::uint32_t t = 0; t < count; ++t) {
        const std::uint16_t nameLen = r.u16("tensor name length");
        NamedTensor named;
        named.name = r.str(nameLen, "tensor name");
        const std::uint8_t rank = r.u8("tensor rank");
        if (rank < 1 || rank > 4) {
            throw FormatError(sourceName + ": tensor '" + named.name + "' has rank " +
                              std::to_string(rank) + ", expected 1..4");
        }
        Shape shape(rank);
        Index total = 1;
        for (std::uint8_t d = 0; d < rank; ++d) {
            const std::uint64_t dim = r.u64("tensor dimension");
            if (dim == 0 || dim > (1ULL << 31)) {
                throw FormatError(sourceName + ": tensor '" + named.name +
                                  "' has invalid dimension " + std::to_string(dim));
            }
            shape[d] = static_cast<Index>(dim);
            total *= shape[d];
        }
        typename Tensorf::Array values(total);
        for (Index i = 0; i < total; ++i) values[i] = r.f32("tensor values");
        named.tensor = Tensorf(std::move(shape), std::move(values));
        container.tensors.push_back(std::move(named));
    }

    container.trailer.provenanceTag = r.u8("provenance tag");
    if (container.trailer.provenanceTag > 1) {
        throw FormatError(sourceName + ": provenance tag must be 0 or 1, got " +
                          std::to_string(container.trailer.provenanceTag));
    }
    container.trailer.seed = r.u64("seed");
    const std::uint16_t labelLen = r.u16("label length");
    container.trailer.label = r.str(labelLen, "label");
    if (r.remaining() != 0) {
        throw FormatError(sourceName + ": " + std::to_string(r.remaining()) +
                          " unexpected trailing bytes");
    }
    return container;
}

TensorContainer readContainer(const std::filesystem::path& path) {
    return parseContainer(readFileBytes(path), path.string());
}

std::string serializeContainer(const TensorContainer& container) {
    std::string out;
    out.append(kContainerMagic, sizeof kContainerMagic);
    putU32(out, kContainerVersion);
    putU32(out, static_cast<std::uint32_t>(container.tensors.size()));
    for (const NamedTensor& named : container.tensors) {
        if (named.name.size() > 0xFFFF) {
            throw FormatError("tensor name too long: " + named.name.substr(0, 32) + "...");
        }
        putU16(out, static_cast<std::uint16_t>(named.name.size()));
        out.append(named.name);
        out.push_back(static_cast<char>(named.tensor.rank()));
        for (Index d : named.tensor.shape()) putU64(out, static_cast<std::uint64_t>(d));
        const float* data = named.tensor.data();
        for (Index i = 0; i < named.tensor.size(); ++i) putF32(out, data[i]);
    }
    out.push_back(static_cast<char>(container.trailer.provenanceTag));
    putU64(out, container.trailer.seed);
    if (container.trailer.label.size() > 0xFFFF) {
        throw FormatError("container label too long");
    }
    putU16(out, static_cast<std::uint16_t>(container.trailer.label.size()));
    out.append(container.trailer.label);
    return out;
}

void writeContainer(const TensorContainer& container, const std::filesystem::path& path) {
    atomicWriteFile(path, serializeContainer(container));
}

}  // namespace layergauge
