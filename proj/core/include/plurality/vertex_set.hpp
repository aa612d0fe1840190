#pragma once

#include <cstdint>
#include <vector>

namespace plurality {

// Subset of {0, ..., n-1} as a bitset with a maintained popcount.
class VertexSet {
public:
    explicit VertexSet(int universe);
    static VertexSet full(int universe);

    int universe() const { return n_; }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(int v) const {
        return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1ULL;
    }
    void insert(int v);
    void erase(int v);

    VertexSet complement() const;
    std::vector<int> members() const;

private:
    int n_;
    int size_;
    std::vector<std::uint64_t> words_;
};

// Ordered partition of the vertex set into non-empty classes, stored as
// per-vertex labels in [0, k).
class Partition {
public:
    // Labels must use every value in [0, max label]; empty classes rejected.
    static Partition from_labels(std::vector<int> labels);

    int k() const { return k_; }
    int universe() const { return static_cast<int>(labels_.size()); }
    int label(int v) const { return labels_[v]; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<int>& sizes() const { return sizes_; }
    VertexSet class_set(int i) const;

private:
    std::vector<int> labels_;
    std::vector<int> sizes_;
    int k_ = 0;
};

}  // namespace plurality
