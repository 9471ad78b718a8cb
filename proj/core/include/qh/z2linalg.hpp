#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace qh {

// Dense Z2 vector backed by 64-bit words.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    bool any() const;
    std::size_t popcount() const;
    std::optional<std::size_t> highest_bit() const;
    BitVector& operator^=(const BitVector& other);
    bool operator==(const BitVector& other) const {
        return size_ == other.size_ && words_ == other.words_;
    }
    bool operator<(const BitVector& other) const { return words_ < other.words_; }

    std::vector<std::size_t> bits() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Row-echelon accumulator with pivot = highest set bit. Supports rank,
// span membership and incremental insertion.
class GaussianBasis {
public:
    // Residue of v after elimination against the stored rows.
    BitVector reduce(BitVector v) const;
    // Inserts v; returns false when v was already in the span.
    bool insert(BitVector v);
    bool contains(const BitVector& v) const { return !reduce(v).any(); }
    std::size_t rank() const { return rows_.size(); }
    const std::map<std::size_t, BitVector>& rows() const { return rows_; }

private:
    std::map<std::size_t, BitVector> rows_;  // pivot -> row
};

// Sparse columns over Z2, sorted ascending by row index; the pivot of a
// column is its largest row. Standard left-to-right reduction: stored
// columns end up with pairwise distinct pivots.
std::vector<int> sparse_xor(const std::vector<int>& a, const std::vector<int>& b);

class SparseReducer {
public:
    // Reduces the column against stored ones, then stores it unless it
    // vanished. Returns the surviving pivot, if any.
    std::optional<int> add_column(std::vector<int> column);

    // Greedily cancels the top of v while a stored column matches it. The
    // result's top row is the minimum achievable over v + span(columns);
    // an empty result means v lies in the span.
    std::vector<int> minimize_top(std::vector<int> v) const;

    bool has_pivot(int row) const { return by_pivot_.count(row) != 0; }
    std::size_t rank() const { return by_pivot_.size(); }
    const std::map<int, std::vector<int>>& columns() const { return by_pivot_; }

private:
    std::map<int, std::vector<int>> by_pivot_;
};

} // namespace qh
