#include "reeb/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace reeb::growth {

void CountSequence::validate() const {
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].scale > samples[i - 1].scale))
            throw std::invalid_argument("count sequence: scales must be strictly increasing");
        if (samples[i].count < samples[i - 1].count)
            throw std::invalid_argument("count sequence: counts must be nondecreasing");
    }
}

namespace {

double regression_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0) throw std::invalid_argument("growth estimate: degenerate abscissae");
    return sxy / sxx;
}

enum class Abscissa { Scale, LogScale };
enum class Ordinate { LogCount, Count };

double windowed_slope(const CountSequence& seq, Abscissa ax, Ordinate oy) {
    seq.validate();
    std::vector<double> xs, ys;
    for (const auto& s : seq.samples) {
        if (oy == Ordinate::LogCount && s.count == 0) continue;  // log undefined
        if (ax == Abscissa::LogScale && !(s.scale > 0))
            throw std::invalid_argument("growth estimate: log scale needs positive scales");
        xs.push_back(ax == Abscissa::Scale ? s.scale : std::log(s.scale));
        ys.push_back(oy == Ordinate::Count ? double(s.count) : std::log(double(s.count)));
    }
    if (xs.size() < 3)
        throw std::invalid_argument("growth estimate: need at least 3 samples with positive counts");
    // Trailing half window, fixed for reproducibility.
    std::size_t window = (xs.size() + 1) / 2;
    std::vector<double> wx(xs.end() - long(window), xs.end());
    std::vector<double> wy(ys.end() - long(window), ys.end());
    return regression_slope(wx, wy);
}

}  // namespace

double exp_growth_rate(const CountSequence& seq) {
    return windowed_slope(seq, Abscissa::Scale, Ordinate::LogCount);
}

double poly_growth_rate(const CountSequence& seq) {
    return windowed_slope(seq, Abscissa::LogScale, Ordinate::LogCount);
}

double linear_growth_rate(const CountSequence& seq) {
    return windowed_slope(seq, Abscissa::Scale, Ordinate::Count);
}

Word reduce(Word w) {
    Word out;
    out.reserve(w.size());
    for (int letter : w) {
        if (letter == 0) throw std::invalid_argument("word letter 0 is not allowed");
        if (!out.empty() && out.back() == -letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

Word cyclically_reduce(Word w) {
    w = reduce(std::move(w));
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
    }
    return w;
}

Word conjugacy_class_key(Word w) {
    w = cyclically_reduce(std::move(w));
    if (w.size() <= 1) return w;
    Word best = w;
    Word rot = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (std::lexicographical_compare(rot.begin(), rot.end(), best.begin(), best.end()))
            best = rot;
    }
    return best;
}

CountSequence count_conjugacy_classes_free_group(int rank, int max_len, std::uint64_t candidate_cap) {
    if (rank < 1) throw std::invalid_argument("free group rank must be >= 1");
    if (max_len < 1) throw std::invalid_argument("max length must be >= 1");

    // Candidate volume ~ 2r * (2r-1)^{L-1}; refuse hopeless enumerations.
    {
        long double vol = 0, level = 2.0L * rank;
        for (int l = 1; l <= max_len; ++l) {
            vol += level;
            level *= std::max(1, 2 * rank - 1);
            if (vol > (long double)candidate_cap)
                throw std::invalid_argument("free group enumeration exceeds the candidate cap");
        }
    }

    if (rank > 120) throw std::invalid_argument("free group rank too large for byte packing");
    std::vector<unsigned long long> classes_of_len(static_cast<std::size_t>(max_len) + 1, 0);
    std::unordered_set<std::string> seen;

    auto pack = [](const Word& w) {
        std::string s;
        s.reserve(w.size());
        for (int letter : w) s.push_back(static_cast<char>(letter));
        return s;
    };

    // DFS over reduced words; every prefix is itself a reduced word, and a
    // prefix with no wrap-around inverse pair is cyclically reduced. Two
    // cyclically reduced words of different lengths are never conjugate, so
    // counting a class at the length where it first appears is unambiguous.
    Word cur;
    auto dfs = [&](auto&& self, int remaining) -> void {
        if (!cur.empty() && (cur.size() == 1 || cur.front() != -cur.back())) {
            Word key = conjugacy_class_key(cur);
            if (seen.insert(pack(key)).second) ++classes_of_len[cur.size()];
        }
        if (remaining == 0) return;
        for (int g = 1; g <= rank; ++g) {
            for (int sign : {+1, -1}) {
                int letter = sign * g;
                if (!cur.empty() && cur.back() == -letter) continue;
                cur.push_back(letter);
                self(self, remaining - 1);
                cur.pop_back();
            }
        }
    };
    dfs(dfs, max_len);

    CountSequence seq;
    unsigned long long cumulative = 1;  // identity class
    for (int l = 1; l <= max_len; ++l) {
        cumulative += classes_of_len[static_cast<std::size_t>(l)];
        seq.samples.push_back(CountSample{double(l), cumulative});
    }
    seq.validate();
    return seq;
}

double margulis_bound(double h_top, double L) {
    if (!(L > 0)) throw std::invalid_argument("margulis bound needs L > 0");
    if (h_top < 0) throw std::invalid_argument("margulis bound needs h_top >= 0");
    return std::exp(h_top * L) / (2.0 * L);
}

}  // namespace reeb::growth
