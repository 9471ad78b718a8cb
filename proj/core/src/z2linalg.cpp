#include "qh/z2linalg.hpp"

#include <algorithm>
#include <bit>

namespace qh {

bool BitVector::any() const {
    for (auto w : words_)
        if (w) return true;
    return false;
}

std::size_t BitVector::popcount() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::optional<std::size_t> BitVector::highest_bit() const {
    for (std::size_t w = words_.size(); w-- > 0;)
        if (words_[w]) return w * 64 + (63 - static_cast<std::size_t>(std::countl_zero(words_[w])));
    return std::nullopt;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

std::vector<std::size_t> BitVector::bits() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word) {
            const int b = std::countr_zero(word);
            out.push_back(w * 64 + static_cast<std::size_t>(b));
            word &= word - 1;
        }
    }
    return out;
}

BitVector GaussianBasis::reduce(BitVector v) const {
    while (true) {
        const auto top = v.highest_bit();
        if (!top) return v;
        const auto hit = rows_.find(*top);
        if (hit == rows_.end()) return v;
        v ^= hit->second;
    }
}

bool GaussianBasis::insert(BitVector v) {
    v = reduce(std::move(v));
    const auto top = v.highest_bit();
    if (!top) return false;
    rows_.emplace(*top, std::move(v));
    return true;
}

std::vector<int> sparse_xor(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (a[i] > b[j])
            out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

std::optional<int> SparseReducer::add_column(std::vector<int> column) {
    while (!column.empty()) {
        const auto hit = by_pivot_.find(column.back());
        if (hit == by_pivot_.end()) break;
        column = sparse_xor(column, hit->second);
    }
    if (column.empty()) return std::nullopt;
    const int pivot = column.back();
    by_pivot_.emplace(pivot, std::move(column));
    return pivot;
}

std::vector<int> SparseReducer::minimize_top(std::vector<int> v) const {
    while (!v.empty()) {
        const auto hit = by_pivot_.find(v.back());
        if (hit == by_pivot_.end()) break;
        v = sparse_xor(v, hit->second);
    }
    return v;
}

} // namespace qh
