#pragma once

#include <cstdint>
#include <vector>

namespace reeb::growth {

struct CountSample {
    double scale = 0;               // the a in C^a
    unsigned long long count = 0;   // #C^a
};

// Nested counting sets: scales strictly increasing, counts nondecreasing.
struct CountSequence {
    std::vector<CountSample> samples;
    void validate() const;
};

// Trailing-window least-squares estimators for the liminf growth rates. The
// window is the trailing ceil(half) of the samples with positive count, which
// keeps outputs reproducible. These are finite-scale estimates, not limits.
double exp_growth_rate(const CountSequence& seq);    // slope of log(count) vs a
double poly_growth_rate(const CountSequence& seq);   // slope of log(count) vs log a
double linear_growth_rate(const CountSequence& seq); // slope of count vs a

// Free-group word as a sequence of nonzero letters: +k / -k for the k-th
// generator and its inverse, k = 1..r.
using Word = std::vector<int>;

Word reduce(Word w);
Word cyclically_reduce(Word w);
// Cyclic reduction followed by the lexicographically minimal rotation; two
// words are conjugate in F_r exactly when their keys agree.
Word conjugacy_class_key(Word w);

// Cumulative counts of conjugacy classes of F_r representable by cyclically
// reduced words of length <= l (plus the identity class), for l = 1..max_len.
// The enumeration is brute force and guarded by a candidate cap.
CountSequence count_conjugacy_classes_free_group(int rank, int max_len,
                                                 std::uint64_t candidate_cap = 20000000ull);

// e^{h_top L} / (2L), the counting lower bound in negative curvature.
double margulis_bound(double h_top, double L);

}  // namespace reeb::growth
