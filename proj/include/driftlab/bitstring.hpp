#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace driftlab {

/// A bit string x = x_n ... x_1.
///
/// Positions are 1-based in the public API: position 1 is the least
/// significant ("rightmost") bit and position n the most significant. The
/// textual form prints x_n first, so "101" with n = 3 has x_3 = 1, x_1 = 1.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}

    /// Parse display order text ("x_n ... x_1").
    static BitString from_string(std::string_view text) {
        BitString x(text.size());
        for (std::size_t k = 0; k < text.size(); ++k) {
            const char ch = text[text.size() - 1 - k];
            if (ch != '0' && ch != '1') throw std::invalid_argument("bit string must contain only '0' and '1'");
            x.bits_[k] = static_cast<std::uint8_t>(ch - '0');
        }
        return x;
    }

    /// Bits of `packed` as positions 1..n (bit 0 of `packed` is position 1).
    static BitString from_packed(std::uint64_t packed, std::size_t n) {
        BitString x(n);
        for (std::size_t k = 0; k < n; ++k) x.bits_[k] = static_cast<std::uint8_t>((packed >> k) & 1U);
        return x;
    }

    [[nodiscard]] std::uint64_t packed() const {
        if (bits_.size() > 64) throw std::length_error("bit string longer than 64 cannot be packed");
        std::uint64_t out = 0;
        for (std::size_t k = 0; k < bits_.size(); ++k) out |= static_cast<std::uint64_t>(bits_[k]) << k;
        return out;
    }

    [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }

    /// 1-based access.
    [[nodiscard]] bool operator()(std::size_t position) const { return bits_[position - 1] != 0; }
    void set(std::size_t position, bool value) { bits_[position - 1] = value ? 1 : 0; }
    void flip(std::size_t position) { bits_[position - 1] ^= 1U; }

    /// 0-based raw storage, index k holds position k + 1.
    [[nodiscard]] const std::vector<std::uint8_t>& raw() const noexcept { return bits_; }
    [[nodiscard]] std::vector<std::uint8_t>& raw() noexcept { return bits_; }

    [[nodiscard]] std::size_t count_ones() const noexcept {
        std::size_t ones = 0;
        for (auto b : bits_) ones += b;
        return ones;
    }
    [[nodiscard]] bool is_zero() const noexcept { return count_ones() == 0; }

    /// Position of the most significant 1, or 0 for the all-zero string.
    [[nodiscard]] std::size_t leftmost_one() const noexcept {
        for (std::size_t k = bits_.size(); k > 0; --k)
            if (bits_[k - 1]) return k;
        return 0;
    }

    [[nodiscard]] std::string to_string() const {
        std::string out(bits_.size(), '0');
        for (std::size_t k = 0; k < bits_.size(); ++k) out[bits_.size() - 1 - k] = bits_[k] ? '1' : '0';
        return out;
    }

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

[[nodiscard]] inline std::size_t hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t k = 0; k < a.size(); ++k) d += a.raw()[k] != b.raw()[k];
    return d;
}

}  // namespace driftlab
