#pragma once

#include <vector>

namespace qaforge {

// Suffix array over an integer sequence (codes may be negative; sentinels
// between files are distinct negative values).
std::vector<int> build_suffix_array(const std::vector<int>& seq);

// Kasai. lcp[i] = longest common prefix of suffixes sa[i-1] and sa[i]; lcp[0] = 0.
std::vector<int> build_lcp(const std::vector<int>& seq, const std::vector<int>& sa);

// A repeated subsequence together with every start position where it occurs.
struct Repeat {
    int length = 0;
    std::vector<int> positions;  // sorted ascending
};

// Enumerates the subsequences of length >= min_length that occur at least
// twice and are maximal: the occurrence set cannot be extended left or right
// by one element with all occurrences staying equal. Output is sorted by
// (length desc, first position) for determinism.
std::vector<Repeat> maximal_repeats(const std::vector<int>& seq, int min_length);

}  // namespace qaforge
