#include "qaforge/suffix_array.h"

#include <algorithm>
#include <numeric>

namespace qaforge {

std::vector<int> build_suffix_array(const std::vector<int>& seq) {
    const int n = static_cast<int>(seq.size());
    if (n == 0) return {};
    std::vector<int> sa(n), rank(n), tmp(n);
    std::iota(sa.begin(), sa.end(), 0);

    // Initial ranks from the raw codes (compressed to dense ints).
    {
        std::vector<int> sorted(seq);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int i = 0; i < n; ++i)
            rank[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), seq[i]) - sorted.begin());
    }

    for (int k = 1;; k *= 2) {
        auto cmp = [&](int a, int b) {
            if (rank[a] != rank[b]) return rank[a] < rank[b];
            int ra = a + k < n ? rank[a + k] : -1;
            int rb = b + k < n ? rank[b + k] : -1;
            return ra < rb;
        };
        std::sort(sa.begin(), sa.end(), cmp);
        tmp[sa[0]] = 0;
        for (int i = 1; i < n; ++i) tmp[sa[i]] = tmp[sa[i - 1]] + (cmp(sa[i - 1], sa[i]) ? 1 : 0);
        rank = tmp;
        if (rank[sa[n - 1]] == n - 1) break;
    }
    return sa;
}

std::vector<int> build_lcp(const std::vector<int>& seq, const std::vector<int>& sa) {
    const int n = static_cast<int>(seq.size());
    std::vector<int> rank(n), lcp(n, 0);
    for (int i = 0; i < n; ++i) rank[sa[i]] = i;
    int h = 0;
    for (int i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        int j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && seq[i + h] == seq[j + h]) ++h;
        lcp[rank[i]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

namespace {

// Left-maximal: not every occurrence is preceded by the same code.
bool left_maximal(const std::vector<int>& seq, const std::vector<int>& sa, int lb, int rb) {
    int prev = 0;
    bool have_prev = false;
    for (int k = lb; k <= rb; ++k) {
        int p = sa[k];
        if (p == 0) return true;
        if (!have_prev) {
            prev = seq[p - 1];
            have_prev = true;
        } else if (seq[p - 1] != prev) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<Repeat> maximal_repeats(const std::vector<int>& seq, int min_length) {
    std::vector<Repeat> out;
    const int n = static_cast<int>(seq.size());
    if (n < 2 || min_length < 1) return out;

    std::vector<int> sa = build_suffix_array(seq);
    std::vector<int> lcp = build_lcp(seq, sa);

    // Bottom-up lcp-interval enumeration. Every interval is a right-maximal
    // repeat; keep the left-maximal ones.
    struct Entry {
        int lcp;
        int lb;
    };
    std::vector<Entry> stack;
    stack.push_back({0, 0});
    auto report = [&](int length, int lb, int rb) {
        if (length < min_length || lb >= rb) return;
        if (!left_maximal(seq, sa, lb, rb)) return;
        Repeat r;
        r.length = length;
        r.positions.assign(sa.begin() + lb, sa.begin() + rb + 1);
        std::sort(r.positions.begin(), r.positions.end());
        out.push_back(std::move(r));
    };
    for (int i = 1; i <= n; ++i) {
        int cur = i < n ? lcp[i] : 0;
        int lb = i - 1;
        while (stack.back().lcp > cur) {
            Entry e = stack.back();
            stack.pop_back();
            report(e.lcp, e.lb, i - 1);
            lb = e.lb;
        }
        if (stack.back().lcp < cur) stack.push_back({cur, lb});
    }

    std::sort(out.begin(), out.end(), [](const Repeat& a, const Repeat& b) {
        if (a.length != b.length) return a.length > b.length;
        return a.positions < b.positions;
    });
    return out;
}

}  // namespace qaforge
