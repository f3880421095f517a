#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

namespace sgrid {

/// Cost accounting for bit-set intersections. Each block iteration of a
/// k-way intersection charges k word operations (k-1 ANDs plus the final
/// popcount), so one estimation over k sets of n bits costs k * ceil(n/w).
struct IntersectCost {
    std::uint64_t word_ops = 0;
    std::uint64_t intersections = 0;
};

/// Fixed-length bit set over records, stored as blocks of Word. Bits past
/// position n-1 in the last block stay zero through every operation.
template <class Word>
class BitSetVec {
    static_assert(std::is_unsigned_v<Word>);

public:
    static constexpr std::size_t word_bits = sizeof(Word) * 8;

    BitSetVec() = default;
    explicit BitSetVec(std::size_t nbits)
        : blocks_((nbits + word_bits - 1) / word_bits, Word(0)), nbits_(nbits) {}

    void set(std::size_t i) {
        blocks_[i / word_bits] |= Word(Word(1) << (i % word_bits));
    }

    bool test(std::size_t i) const {
        return (blocks_[i / word_bits] >> (i % word_bits)) & Word(1);
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (Word b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
        return c;
    }

    void or_with(const BitSetVec& other) {
        for (std::size_t j = 0; j < blocks_.size(); ++j) blocks_[j] |= other.blocks_[j];
    }

    std::size_t bits() const { return nbits_; }
    std::size_t block_count() const { return blocks_.size(); }
    const Word* data() const { return blocks_.data(); }

private:
    std::vector<Word> blocks_;
    std::size_t nbits_ = 0;
};

/// Popcount of the AND of k bit sets, fused over blocks. All sets must have
/// the same length. k == 0 is not allowed.
template <class Word>
std::size_t intersect_count(std::span<const BitSetVec<Word>* const> sets,
                            IntersectCost* cost = nullptr) {
    const std::size_t k = sets.size();
    const std::size_t nblocks = sets[0]->block_count();
    std::size_t total = 0;
    for (std::size_t j = 0; j < nblocks; ++j) {
        Word acc = sets[0]->data()[j];
        for (std::size_t z = 1; z < k; ++z) acc &= sets[z]->data()[j];
        total += static_cast<std::size_t>(std::popcount(acc));
    }
    if (cost) {
        cost->word_ops += static_cast<std::uint64_t>(nblocks) * k;
        cost->intersections += 1;
    }
    return total;
}

}  // namespace sgrid
