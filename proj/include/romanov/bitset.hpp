#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace romanov {

// Fixed-size bit array over [0, size). Word-aligned ranges may be written
// concurrently by different threads.
class BitArray {
public:
    BitArray() = default;
    explicit BitArray(std::uint64_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::uint64_t size() const { return size_; }
    std::uint64_t word_count() const { return words_.size(); }

    void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    std::uint64_t count() const
    {
        std::uint64_t n = 0;
        for (auto w : words_)
            n += static_cast<std::uint64_t>(std::popcount(w));
        return n;
    }

    // Number of set bits in [0, upto].
    std::uint64_t count_through(std::uint64_t upto) const
    {
        if (size_ == 0)
            return 0;
        if (upto >= size_)
            upto = size_ - 1;
        const std::uint64_t full = upto >> 6;
        std::uint64_t n = 0;
        for (std::uint64_t w = 0; w < full; ++w)
            n += static_cast<std::uint64_t>(std::popcount(words_[w]));
        const unsigned rem = static_cast<unsigned>(upto & 63);
        const std::uint64_t mask = rem == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (rem + 1)) - 1;
        return n + static_cast<std::uint64_t>(std::popcount(words_[full] & mask));
    }

    std::uint64_t& word(std::uint64_t w) { return words_[w]; }
    std::uint64_t word(std::uint64_t w) const { return words_[w]; }

    template <typename F>
    void for_each_set(F&& f) const
    {
        for (std::uint64_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                f((w << 6) + static_cast<std::uint64_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const BitArray&, const BitArray&) = default;

private:
    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace romanov
