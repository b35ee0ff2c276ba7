#pragma once

#include <vector>

#include "rxm/syntax.hpp"

namespace rxm {

// Longest-common-extension index: suffix order by prefix doubling, LCP array,
// sparse-table range minimum. Queries are O(1) after an O(n log n) build.
class LceIndex {
public:
    static LceIndex build(const Word& w);

    // Length of the longest common prefix of w[i..] and w[j..]; positions are
    // 0-based and may equal |w| (empty suffix).
    int lce(int i, int j) const;

    // True iff w[lo..hi) is a prefix of w[at..]. Empty spans always are.
    bool is_prefix(int lo, int hi, int at) const;

    int size() const { return n_; }

private:
    int n_ = 0;
    std::vector<int> rank_;            // position -> suffix rank
    std::vector<int> sa_;              // rank -> position
    std::vector<int> lcp_;             // lcp_[i] = lcp(sa_[i-1], sa_[i])
    std::vector<std::vector<int>> st_; // sparse table of range minima
    std::vector<int> log2_;

    int range_min(int lo, int hi) const;  // min of lcp_[lo..hi]
};

}  // namespace rxm
