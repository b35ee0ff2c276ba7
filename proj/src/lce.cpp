#include "rxm/lce.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rxm {

LceIndex LceIndex::build(const Word& w) {
    LceIndex idx;
    const int n = static_cast<int>(w.size());
    idx.n_ = n;
    if (n == 0) return idx;

    // initial ranks from sorted symbols
    std::vector<int> rank(static_cast<size_t>(n));
    {
        std::map<Symbol, int> order;
        for (const auto& s : w) order[s] = 0;
        int next = 0;
        for (auto& [sym, r] : order) r = next++;
        for (int i = 0; i < n; ++i)
            rank[static_cast<size_t>(i)] = order[w[static_cast<size_t>(i)]];
    }
    // prefix-doubling with counting sorts, O(n log n)
    auto su = [](int i) { return static_cast<size_t>(i); };
    std::vector<int> sa(su(n)), tmp(su(n)), sa2(su(n)), cnt;
    int classes = 1 + *std::max_element(rank.begin(), rank.end());
    cnt.assign(su(classes + 1), 0);
    for (int r : rank) ++cnt[su(r + 1)];
    std::partial_sum(cnt.begin(), cnt.end(), cnt.begin());
    for (int i = 0; i < n; ++i) sa[su(cnt[su(rank[su(i)])]++)] = i;
    for (int len = 1; classes < n; len *= 2) {
        // order by second key: suffixes whose second half is empty first,
        // then the previous order shifted left by len
        int p = 0;
        for (int i = n - len; i < n; ++i) sa2[su(p++)] = i;
        for (int i = 0; i < n; ++i)
            if (sa[su(i)] >= len) sa2[su(p++)] = sa[su(i)] - len;
        // stable counting sort by first key
        cnt.assign(su(classes + 1), 0);
        for (int r : rank) ++cnt[su(r + 1)];
        std::partial_sum(cnt.begin(), cnt.end(), cnt.begin());
        for (int i = 0; i < n; ++i)
            sa[su(cnt[su(rank[su(sa2[su(i)])])]++)] = sa2[su(i)];
        auto key = [&](int i) {
            int second = (i + len < n) ? rank[su(i + len)] : -1;
            return std::make_pair(rank[su(i)], second);
        };
        tmp[su(sa[0])] = 0;
        for (int i = 1; i < n; ++i)
            tmp[su(sa[su(i)])] =
                tmp[su(sa[su(i - 1)])] +
                (key(sa[su(i - 1)]) < key(sa[su(i)]) ? 1 : 0);
        rank = tmp;
        classes = rank[su(sa[su(n - 1)])] + 1;
    }
    idx.sa_ = sa;
    idx.rank_ = rank;

    // Kasai LCP
    idx.lcp_.assign(static_cast<size_t>(n), 0);
    int h = 0;
    for (int i = 0; i < n; ++i) {
        int r = rank[static_cast<size_t>(i)];
        if (r == 0) {
            h = 0;
            continue;
        }
        int j = sa[static_cast<size_t>(r - 1)];
        if (h > 0) --h;
        while (i + h < n && j + h < n &&
               w[static_cast<size_t>(i + h)] == w[static_cast<size_t>(j + h)])
            ++h;
        idx.lcp_[static_cast<size_t>(r)] = h;
    }

    // sparse table over lcp_
    idx.log2_.assign(static_cast<size_t>(n) + 1, 0);
    for (int i = 2; i <= n; ++i)
        idx.log2_[static_cast<size_t>(i)] = idx.log2_[static_cast<size_t>(i / 2)] + 1;
    int levels = idx.log2_[static_cast<size_t>(n)] + 1;
    idx.st_.assign(static_cast<size_t>(levels), {});
    idx.st_[0] = idx.lcp_;
    for (int j = 1; j < levels; ++j) {
        int span = 1 << j;
        auto& row = idx.st_[static_cast<size_t>(j)];
        const auto& prev = idx.st_[static_cast<size_t>(j - 1)];
        row.assign(static_cast<size_t>(n - span + 1), 0);
        for (int i = 0; i + span <= n; ++i)
            row[static_cast<size_t>(i)] =
                std::min(prev[static_cast<size_t>(i)],
                         prev[static_cast<size_t>(i + span / 2)]);
    }
    return idx;
}

int LceIndex::range_min(int lo, int hi) const {
    int len = hi - lo + 1;
    int j = log2_[static_cast<size_t>(len)];
    return std::min(st_[static_cast<size_t>(j)][static_cast<size_t>(lo)],
                    st_[static_cast<size_t>(j)]
                       [static_cast<size_t>(hi - (1 << j) + 1)]);
}

int LceIndex::lce(int i, int j) const {
    if (i < 0 || j < 0 || i > n_ || j > n_)
        throw std::out_of_range("lce position out of range");
    if (i == j) return n_ - i;
    if (i == n_ || j == n_) return 0;
    int ri = rank_[static_cast<size_t>(i)];
    int rj = rank_[static_cast<size_t>(j)];
    if (ri > rj) std::swap(ri, rj);
    return range_min(ri + 1, rj);
}

bool LceIndex::is_prefix(int lo, int hi, int at) const {
    if (lo < 0 || hi < lo || hi > n_ || at < 0 || at > n_)
        throw std::out_of_range("is_prefix span out of range");
    int len = hi - lo;
    if (len == 0) return true;
    if (at + len > n_) return false;
    return lce(lo, at) >= len;
}

}  // namespace rxm
