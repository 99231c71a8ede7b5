#include "reeb/betti.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "reeb/parallel.hpp"

namespace reeb::betti {

using qdga::DGA;
using qdga::Element;
using qdga::Monomial;

int rank_rational(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    std::size_t ncols = rows[0].size();
    int rank = 0;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[pivot_row]);
        const Rational pivot = rows[pivot_row][col];
        for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            const Rational factor = rows[r][col] / pivot;
            for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= factor * rows[pivot_row][c];
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

namespace {

// Matrix of d: C^k -> C^{k+1} in the fixed monomial bases; one row per target
// monomial, one column per source monomial.
std::vector<std::vector<Rational>> differential_matrix(const DGA& dga,
                                                       const std::vector<Monomial>& source,
                                                       const std::vector<Monomial>& target) {
    std::map<Monomial, std::size_t> target_index;
    for (std::size_t i = 0; i < target.size(); ++i) target_index.emplace(target[i], i);
    std::vector<std::vector<Rational>> m(target.size(), std::vector<Rational>(source.size(), Rational(0)));
    for (std::size_t j = 0; j < source.size(); ++j) {
        Element d = dga.differentiate_monomial(source[j]);
        for (const auto& [mon, coeff] : d.terms()) {
            auto it = target_index.find(mon);
            if (it == target_index.end())
                throw std::logic_error("differential left the expected degree");
            m[it->second][j] = coeff;
        }
    }
    return m;
}

}  // namespace

BettiTable betti_numbers(const DGA& dga, int max_reported_degree) {
    const int K = max_reported_degree;
    if (K < 0) throw std::invalid_argument("max reported degree must be >= 0");
    if (dga.max_degree() < K + 2)
        throw std::invalid_argument("insufficient truncation: need max_degree >= K+2");

    std::vector<std::vector<Monomial>> bases(static_cast<std::size_t>(K) + 2);
    for (int k = 0; k <= K + 1; ++k) bases[static_cast<std::size_t>(k)] = dga.basis(k);

    // ranks[k] = rank of d: C^k -> C^{k+1}; independent per degree.
    std::vector<int> ranks(static_cast<std::size_t>(K) + 1, 0);
    parallel_for(static_cast<std::size_t>(K) + 1, [&](std::size_t k) {
        ranks[k] = rank_rational(differential_matrix(dga, bases[k], bases[k + 1]));
    });

    BettiTable table;
    table.reliable_up_to = K;
    table.values.resize(static_cast<std::size_t>(K) + 1, 0);
    for (int k = 0; k <= K; ++k) {
        long dim = static_cast<long>(bases[static_cast<std::size_t>(k)].size());
        long rank_out = ranks[static_cast<std::size_t>(k)];
        long rank_in = (k == 0) ? 0 : ranks[static_cast<std::size_t>(k) - 1];
        table.values[static_cast<std::size_t>(k)] = dim - rank_out - rank_in;
    }
    return table;
}

std::vector<int> sullivan_class_degrees(int n, int s_max) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("sullivan classes need even n >= 2");
    if (s_max < 0) throw std::invalid_argument("s_max must be >= 0");
    std::vector<int> degs;
    degs.reserve(static_cast<std::size_t>(s_max) + 1);
    for (int s = 0; s <= s_max; ++s) degs.push_back((1 + 2 * s) * (n - 1));
    return degs;
}

BettiTable odd_sphere_degree_pattern(int n, int max_degree) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("odd sphere pattern needs odd n >= 3");
    BettiTable t;
    t.reliable_up_to = max_degree;
    t.values.assign(static_cast<std::size_t>(max_degree) + 1, 0);
    t.values[0] = 1;
    for (int k = 1;; ++k) {
        int base = k * (n - 1);
        if (base > max_degree) break;
        t.values[static_cast<std::size_t>(base)] = 1;
        if (base + 1 <= max_degree) t.values[static_cast<std::size_t>(base) + 1] = 1;
    }
    return t;
}

BettiTable convolve(const BettiTable& a, const BettiTable& b) {
    BettiTable t;
    t.reliable_up_to = std::min(a.reliable_up_to, b.reliable_up_to);
    t.values.assign(static_cast<std::size_t>(t.reliable_up_to) + 1, 0);
    for (int i = 0; i <= t.reliable_up_to; ++i)
        for (int j = 0; j <= i; ++j) {
            if (j > a.reliable_up_to || i - j > b.reliable_up_to) continue;
            t.values[static_cast<std::size_t>(i)] +=
                a.values[static_cast<std::size_t>(j)] * b.values[static_cast<std::size_t>(i - j)];
        }
    return t;
}

std::vector<long> partial_sums_from_degree_one(const BettiTable& t) {
    std::vector<long> sums(t.values.size(), 0);
    long acc = 0;
    for (std::size_t i = 1; i < t.values.size(); ++i) {
        acc += t.values[i];
        sums[i] = acc;
    }
    return sums;
}

std::string to_tsv(const BettiTable& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.values.size(); ++i) os << i << '\t' << t.values[i] << '\n';
    return os.str();
}

std::string to_json(const BettiTable& t, const std::string& space) {
    std::ostringstream os;
    os << "{\"space\": \"" << space << "\", \"betti\": [";
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        if (i) os << ", ";
        os << t.values[i];
    }
    os << "], \"reliable_up_to\": " << t.reliable_up_to << "}";
    return os.str();
}

}  // namespace reeb::betti
