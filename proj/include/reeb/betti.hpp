#pragma once

#include <string>
#include <vector>

#include "reeb/qdga.hpp"

namespace reeb::betti {

struct BettiTable {
    std::vector<long> values;  // index = degree, 0..reliable_up_to
    int reliable_up_to = 0;

    long at(int degree) const { return values.at(static_cast<std::size_t>(degree)); }
};

// Exact rank over Q by Gaussian elimination; rows of zero length allowed.
int rank_rational(std::vector<std::vector<Rational>> rows);

// Cohomology ranks b_k = dim ker(d_k) - rank(d_{k-1}) for k = 0..K, computed
// with exact rational elimination. Requires dga.max_degree >= K+2 so that
// truncation cannot touch any degree that enters the ranks.
BettiTable betti_numbers(const qdga::DGA& dga, int max_reported_degree);

// Degrees (1+2s)(n-1), s = 0..s_max, of the closed classes xbar ybar^s in the
// loop model of an even sphere.
std::vector<int> sullivan_class_degrees(int n, int s_max);

// Closed-form table for loop(S^n), n odd: b_i = 1 exactly for i = 0 and for
// i in {k(n-1), k(n-1)+1 : k >= 1}.
BettiTable odd_sphere_degree_pattern(int n, int max_degree);

// Degreewise convolution, the Kuenneth rule for product models.
BettiTable convolve(const BettiTable& a, const BettiTable& b);

std::vector<long> partial_sums_from_degree_one(const BettiTable& t);

std::string to_tsv(const BettiTable& t);
std::string to_json(const BettiTable& t, const std::string& space);

}  // namespace reeb::betti
