#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <variant>

namespace vgp {

/// Trailing window length used for vector terminals (about four trading weeks).
inline constexpr std::size_t kWindowLength = 21;

/// Inline fixed-capacity vector. Evaluation never allocates; capacity equals
/// the window length, shorter lengths are allowed for hand-built values.
template <class T>
class FixedVector {
public:
    static constexpr std::size_t kCapacity = kWindowLength;

    FixedVector() = default;

    FixedVector(std::initializer_list<T> init) {
        if (init.size() > kCapacity) throw std::length_error("FixedVector: too many elements");
        std::copy(init.begin(), init.end(), data_.begin());
        size_ = static_cast<std::uint8_t>(init.size());
    }

    explicit FixedVector(std::span<const T> values) {
        if (values.size() > kCapacity) throw std::length_error("FixedVector: too many elements");
        std::copy(values.begin(), values.end(), data_.begin());
        size_ = static_cast<std::uint8_t>(values.size());
    }

    static FixedVector filled(std::size_t n, T value) {
        if (n > kCapacity) throw std::length_error("FixedVector: too many elements");
        FixedVector v;
        std::fill_n(v.data_.begin(), n, value);
        v.size_ = static_cast<std::uint8_t>(n);
        return v;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    void resize(std::size_t n) {
        if (n > kCapacity) throw std::length_error("FixedVector: too many elements");
        size_ = static_cast<std::uint8_t>(n);
    }

    T& operator[](std::size_t i) noexcept { assert(i < size_); return data_[i]; }
    const T& operator[](std::size_t i) const noexcept { assert(i < size_); return data_[i]; }

    T* begin() noexcept { return data_.data(); }
    T* end() noexcept { return data_.data() + size_; }
    const T* begin() const noexcept { return data_.data(); }
    const T* end() const noexcept { return data_.data() + size_; }
    T* data() noexcept { return data_.data(); }
    const T* data() const noexcept { return data_.data(); }

    std::span<const T> span() const noexcept { return {data_.data(), size_}; }

    friend bool operator==(const FixedVector& a, const FixedVector& b) {
        return std::equal(a.begin(), a.end(), b.begin(), b.end());
    }

private:
    std::array<T, kCapacity> data_{};
    std::uint8_t size_ = 0;
};

using Complex = std::complex<double>;
using RealVector = FixedVector<double>;
using ComplexVector = FixedVector<Complex>;

/// Runtime value of an evaluated node. Scalars stand in for length-1 vectors.
using Value = std::variant<double, RealVector, Complex, ComplexVector, bool>;

enum class Shape : std::uint8_t { RealScalar, RealVector, ComplexScalar, ComplexVector, Boolean };

inline Shape shape_of(const Value& v) noexcept { return static_cast<Shape>(v.index()); }

inline bool is_scalar(const Value& v) noexcept {
    return std::holds_alternative<double>(v) || std::holds_alternative<Complex>(v);
}

} // namespace vgp
