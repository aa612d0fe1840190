#include "plurality/vertex_set.hpp"

#include <stdexcept>

namespace plurality {

VertexSet::VertexSet(int universe)
    : n_(universe), size_(0), words_((static_cast<std::size_t>(universe) + 63) / 64, 0) {
    if (universe < 0) throw std::invalid_argument("negative universe");
}

VertexSet VertexSet::full(int universe) {
    VertexSet s(universe);
    for (int v = 0; v < universe; ++v) s.insert(v);
    return s;
}

void VertexSet::insert(int v) {
    if (v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
    std::uint64_t& w = words_[static_cast<std::size_t>(v) >> 6];
    std::uint64_t bit = 1ULL << (v & 63);
    if (!(w & bit)) {
        w |= bit;
        ++size_;
    }
}

void VertexSet::erase(int v) {
    if (v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
    std::uint64_t& w = words_[static_cast<std::size_t>(v) >> 6];
    std::uint64_t bit = 1ULL << (v & 63);
    if (w & bit) {
        w &= ~bit;
        --size_;
    }
}

VertexSet VertexSet::complement() const {
    VertexSet c(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
    if (n_ & 63) c.words_.back() &= (1ULL << (n_ & 63)) - 1;
    c.size_ = n_ - size_;
    return c;
}

std::vector<int> VertexSet::members() const {
    std::vector<int> out;
    out.reserve(size_);
    for (int v = 0; v < n_; ++v) {
        if (contains(v)) out.push_back(v);
    }
    return out;
}

Partition Partition::from_labels(std::vector<int> labels) {
    Partition p;
    int k = 0;
    for (int l : labels) {
        if (l < 0) throw std::invalid_argument("negative class label");
        k = std::max(k, l + 1);
    }
    p.sizes_.assign(k, 0);
    for (int l : labels) ++p.sizes_[l];
    for (int i = 0; i < k; ++i) {
        if (p.sizes_[i] == 0) {
            throw std::invalid_argument("empty class " + std::to_string(i));
        }
    }
    p.labels_ = std::move(labels);
    p.k_ = k;
    return p;
}

VertexSet Partition::class_set(int i) const {
    VertexSet s(universe());
    for (int v = 0; v < universe(); ++v) {
        if (labels_[v] == i) s.insert(v);
    }
    return s;
}

}  // namespace plurality
