#pragma once

#include <Eigen/Dense>

#include <cassert>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "layergauge/errors.hpp"

namespace layergauge {

using Index = Eigen::Index;
using Shape = std::vector<Index>;

inline Index shapeProduct(const Shape& shape) {
    Index n = 1;
    for (Index d : shape) n *= d;
    return n;
}

inline std::string shapeToString(const Shape& shape) {
    std::ostringstream os;
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) os << 'x';
        os << shape[i];
    }
    return os.str();
}

// Dense rank-1..4 array, row-major with channels innermost. Rank-3 activations
// are H x W x C; rank-4 convolution weights are filters x kH x kW x
// inChannelsPerGroup. The flat storage is an Eigen array so elementwise math
// stays expression-friendly.
template <typename Scalar_>
class Tensor {
public:
    using Scalar = Scalar_;
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    Tensor() = default;

    explicit Tensor(Shape shape) : shape_(std::move(shape)) {
        validateShape();
        data_ = Array::Zero(shapeProduct(shape_));
    }

    Tensor(Shape shape, Array values) : shape_(std::move(shape)), data_(std::move(values)) {
        validateShape();
        if (shapeProduct(shape_) != data_.size()) {
            throw DimensionError("tensor shape " + shapeToString(shape_) + " holds " +
                                 std::to_string(shapeProduct(shape_)) + " elements but " +
                                 std::to_string(data_.size()) + " values were provided");
        }
    }

    Tensor(Shape shape, std::initializer_list<Scalar> values)
        : Tensor(std::move(shape), [&] {
              Array a(static_cast<Index>(values.size()));
              Index i = 0;
              for (Scalar v : values) a[i++] = v;
              return a;
          }()) {}

    Index rank() const { return static_cast<Index>(shape_.size()); }
    const Shape& shape() const { return shape_; }
    Index dim(Index axis) const {
        assert(axis >= 0 && axis < rank());
        return shape_[static_cast<std::size_t>(axis)];
    }
    Index size() const { return data_.size(); }

    Scalar* data() { return data_.data(); }
    const Scalar* data() const { return data_.data(); }
    Array& array() { return data_; }
    const Array& array() const { return data_; }

    // Rank-specific element access; asserts the rank in debug builds.
    Scalar& operator()(Index i) {
        assert(rank() == 1);
        return data_[i];
    }
    Scalar operator()(Index i) const {
        assert(rank() == 1);
        return data_[i];
    }
    Scalar& operator()(Index r, Index c) {
        assert(rank() == 2);
        return data_[r * shape_[1] + c];
    }
    Scalar operator()(Index r, Index c) const {
        assert(rank() == 2);
        return data_[r * shape_[1] + c];
    }
    Scalar& operator()(Index y, Index x, Index c) {
        assert(rank() == 3);
        return data_[(y * shape_[1] + x) * shape_[2] + c];
    }
    Scalar operator()(Index y, Index x, Index c) const {
        assert(rank() == 3);
        return data_[(y * shape_[1] + x) * shape_[2] + c];
    }
    Scalar& operator()(Index f, Index i, Index j, Index c) {
        assert(rank() == 4);
        return data_[((f * shape_[1] + i) * shape_[2] + j) * shape_[3] + c];
    }
    Scalar operator()(Index f, Index i, Index j, Index c) const {
        assert(rank() == 4);
        return data_[((f * shape_[1] + i) * shape_[2] + j) * shape_[3] + c];
    }

    bool sameShape(const Tensor& other) const { return shape_ == other.shape_; }

private:
    void validateShape() const {
        if (shape_.empty() || shape_.size() > 4) {
            throw DimensionError("tensor rank must be 1..4, got " + std::to_string(shape_.size()));
        }
        for (Index d : shape_) {
            if (d < 1) {
                throw DimensionError("tensor shape " + shapeToString(shape_) +
                                     " has a non-positive dimension");
            }
        }
    }

    Shape shape_;
    Array data_;
};

using Tensorf = Tensor<float>;

template <typename Scalar>
bool bitIdentical(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
    return a.sameShape(b) && (a.array() == b.array()).all();
}

}  // namespace layergauge
