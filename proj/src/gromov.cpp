#include "reeb/gromov.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "reeb/parallel.hpp"

namespace reeb::gromov {

int Triangulation::face_index(const std::vector<int>& vertices) const {
    std::vector<int> key = vertices;
    std::sort(key.begin(), key.end());
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i] == key) return int(i);
    return -1;
}

bool Triangulation::face_contains(int big, int small) const {
    const auto& b = faces[std::size_t(big)];
    const auto& s = faces[std::size_t(small)];
    return std::includes(b.begin(), b.end(), s.begin(), s.end());
}

Triangulation build_triangulation(std::vector<std::vector<double>> vertex_coords,
                                  std::vector<std::vector<int>> maximal_simplices) {
    Triangulation tri;
    tri.vertex_coords = std::move(vertex_coords);
    const int nv = int(tri.vertex_coords.size());
    if (nv == 0) throw std::invalid_argument("triangulation needs vertices");

    std::set<std::vector<int>> face_set;
    for (auto& s : maximal_simplices) {
        std::sort(s.begin(), s.end());
        if (std::unique(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("simplex with repeated vertex");
        for (int v : s)
            if (v < 0 || v >= nv) throw std::invalid_argument("simplex vertex out of range");
        // all nonempty subsets
        const std::size_t k = s.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
            std::vector<int> face;
            for (std::size_t b = 0; b < k; ++b)
                if (mask & (std::size_t(1) << b)) face.push_back(s[b]);
            face_set.insert(face);
        }
    }
    tri.maximal = std::move(maximal_simplices);
    tri.faces.assign(face_set.begin(), face_set.end());

    tri.face_maximals.assign(tri.faces.size(), {});
    for (std::size_t f = 0; f < tri.faces.size(); ++f)
        for (std::size_t m = 0; m < tri.maximal.size(); ++m)
            if (std::includes(tri.maximal[m].begin(), tri.maximal[m].end(), tri.faces[f].begin(),
                              tri.faces[f].end()))
                tri.face_maximals[f].push_back(int(m));
    return tri;
}

Triangulation parse_mesh(const std::string& text) {
    std::istringstream in(text);
    std::size_t nv = 0, ns = 0;
    if (!(in >> nv >> ns)) throw std::invalid_argument("mesh: bad header");
    if (nv == 0 || ns == 0) throw std::invalid_argument("mesh: empty");

    // Peek the first vertex line to learn the coordinate dimension.
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> coords;
    for (std::size_t i = 0; i < nv; ++i) {
        if (!std::getline(in, line)) throw std::invalid_argument("mesh: missing vertex line");
        std::istringstream ls(line);
        std::vector<double> c;
        double v;
        while (ls >> v) c.push_back(v);
        if (c.empty()) {
            --i;
            continue;  // blank line
        }
        coords.push_back(c);
    }
    std::vector<std::vector<int>> simplices;
    for (std::size_t i = 0; i < ns; ++i) {
        if (!std::getline(in, line)) throw std::invalid_argument("mesh: missing simplex line");
        std::istringstream ls(line);
        int k = 0;
        if (!(ls >> k)) {
            --i;
            continue;
        }
        std::vector<int> s(static_cast<std::size_t>(k), 0);
        for (int j = 0; j < k; ++j)
            if (!(ls >> s[std::size_t(j)])) throw std::invalid_argument("mesh: truncated simplex");
        simplices.push_back(s);
    }
    return build_triangulation(std::move(coords), std::move(simplices));
}

std::vector<CoverSet> star_cover(const Triangulation& tri) {
    std::vector<CoverSet> cover;
    const int nv = int(tri.vertex_coords.size());
    for (int v = 0; v < nv; ++v) {
        CoverSet cs;
        cs.vertex = v;
        for (std::size_t m = 0; m < tri.maximal.size(); ++m)
            if (std::binary_search(tri.maximal[m].begin(), tri.maximal[m].end(), v))
                cs.members.push_back(int(m));
        if (!cs.members.empty()) cover.push_back(cs);
    }
    // Coverage: every maximal simplex must lie in at least one star.
    for (std::size_t m = 0; m < tri.maximal.size(); ++m) {
        bool covered = false;
        for (const auto& cs : cover)
            if (std::find(cs.members.begin(), cs.members.end(), int(m)) != cs.members.end()) {
                covered = true;
                break;
            }
        if (!covered)
            throw std::runtime_error("star_cover: a maximal simplex is not covered; refine the mesh");
    }
    return cover;
}

Admissibility::Admissibility(const Triangulation& tri, const std::vector<CoverSet>& cover) {
    if (tri.maximal.size() > 64)
        throw std::invalid_argument("admissibility tables support at most 64 maximal simplices");
    using Mask = std::uint64_t;
    std::vector<Mask> o_mask(tri.faces.size(), 0);
    for (std::size_t f = 0; f < tri.faces.size(); ++f)
        for (int m : tri.face_maximals[f]) o_mask[f] |= Mask(1) << m;
    std::vector<Mask> star_mask(cover.size(), 0);
    for (std::size_t c = 0; c < cover.size(); ++c)
        for (int m : cover[c].members) star_mask[c] |= Mask(1) << m;

    const std::size_t nf = tri.faces.size();
    pair_ok_.assign(nf, std::vector<char>(nf, 0));
    for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t b = 0; b < nf; ++b) {
            Mask need = o_mask[a] | o_mask[b];
            for (std::size_t c = 0; c < cover.size(); ++c)
                if ((need & ~star_mask[c]) == 0) {
                    pair_ok_[a][b] = 1;
                    break;
                }
        }

    superfaces_.assign(nf, {});
    for (std::size_t small = 0; small < nf; ++small)
        for (std::size_t big = 0; big < nf; ++big)
            if (tri.face_contains(int(big), int(small))) superfaces_[small].push_back(int(big));
}

bool Admissibility::sequence(const std::vector<int>& face_seq) const {
    if (face_seq.empty()) return false;
    const std::size_t L = face_seq.size();
    for (std::size_t j = 0; j < L; ++j) {
        int prev = face_seq[(j + L - 1) % L];  // p_0 = p_{2^k}
        if (!pair(prev, face_seq[j])) return false;
    }
    return true;
}

bool is_admissible(const Triangulation& tri, const std::vector<CoverSet>& cover,
                   const std::vector<int>& face_seq) {
    return Admissibility(tri, cover).sequence(face_seq);
}

EnumerationResult enumerate_Bk(const Triangulation& tri, const std::vector<CoverSet>& cover, int k,
                               bool maximal_only, std::size_t candidate_cap, int max_subdivision) {
    if (k < 1) throw std::invalid_argument("enumerate_Bk: k must be >= 1");
    if (k > max_subdivision)
        throw std::invalid_argument("enumerate_Bk: subdivision level exceeds the cap");
    const std::size_t L = std::size_t(1) << k;
    const std::size_t nf = tri.faces.size();
    if (nf == 0) throw std::invalid_argument("enumerate_Bk: empty triangulation");

    Admissibility adm(tri, cover);

    auto dims = [&](const std::vector<int>& s) {
        int d = 0;
        for (int f : s) d += tri.face_dim(f);
        return d;
    };

    // Parallel over the first face choice; buckets are merged in face order,
    // so the output is deterministic regardless of scheduling. Each bucket
    // gets an equal share of the candidate budget; a bucket that exhausts its
    // share stops and flags the sweep as partial.
    const std::size_t budget_per_bucket = std::max<std::size_t>(1, candidate_cap / nf);
    std::vector<std::vector<BrokenLoopCell>> buckets(nf);
    std::vector<char> truncated(nf, 0);
    parallel_for(nf, [&](std::size_t first) {
        std::size_t visited = 0;
        std::vector<int> seq(L, 0);
        seq[0] = int(first);
        auto dfs = [&](auto&& self, std::size_t pos) -> bool {
            if (pos == L) {
                if (++visited > budget_per_bucket) return false;
                if (adm.pair(seq[L - 1], seq[0])) {
                    BrokenLoopCell cell;
                    cell.face_seq = seq;
                    cell.dimension = dims(seq);
                    buckets[first].push_back(cell);
                }
                return true;
            }
            for (std::size_t f = 0; f < nf; ++f) {
                if (!adm.pair(seq[pos - 1], int(f))) continue;
                seq[pos] = int(f);
                if (!self(self, pos + 1)) return false;
            }
            return true;
        };
        if (!dfs(dfs, 1)) truncated[first] = 1;
    });

    EnumerationResult result;
    for (auto& bucket : buckets)
        result.cells.insert(result.cells.end(), bucket.begin(), bucket.end());
    for (char t : truncated)
        if (t) result.complete = false;

    if (maximal_only) {
        // A cell is kept unless some componentwise-larger admissible sequence
        // exists. The search walks supersequences with pair pruning and quits
        // at the first strict dominator.
        std::vector<BrokenLoopCell> keep;
        std::vector<int> super(L, 0);
        for (const auto& cell : result.cells) {
            bool dominated = false;
            auto walk = [&](auto&& self, std::size_t pos, bool strict) -> bool {
                if (pos == L) return strict && adm.pair(super[L - 1], super[0]);
                for (int g : adm.superfaces()[std::size_t(cell.face_seq[pos])]) {
                    if (pos > 0 && !adm.pair(super[pos - 1], g)) continue;
                    super[pos] = g;
                    if (self(self, pos + 1, strict || g != cell.face_seq[pos])) return true;
                }
                return false;
            };
            dominated = walk(walk, 0, false);
            if (!dominated) keep.push_back(cell);
        }
        result.cells = std::move(keep);
    }
    return result;
}

std::vector<LegReportRow> leg_bound_report(const Triangulation& tri,
                                           const std::vector<BrokenLoopCell>& cells) {
    std::vector<LegReportRow> rows;
    rows.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& seq = cells[c].face_seq;
        const std::size_t L = seq.size();
        int legs = 0;
        for (std::size_t j = 0; j < L; ++j) {
            int from = seq[(j + L - 1) % L];
            int to = seq[j];
            if (tri.face_dim(from) > 0 || tri.face_dim(to) > 0) ++legs;
        }
        LegReportRow row;
        row.cell_index = c;
        row.dimension = cells[c].dimension;
        row.legs_outside_skeleton = legs;
        row.bound = 2 * cells[c].dimension;
        row.pass = legs <= row.bound;
        rows.push_back(row);
    }
    return rows;
}

std::vector<int> duplicate_sequence(const std::vector<int>& face_seq) {
    std::vector<int> out;
    out.reserve(face_seq.size() * 2);
    for (int f : face_seq) {
        out.push_back(f);
        out.push_back(f);
    }
    return out;
}

double kappa_estimate(const Triangulation& tri, const std::vector<CoverSet>& cover,
                      double lipschitz_k) {
    if (cover.empty()) throw std::invalid_argument("kappa_estimate: empty cover");
    if (lipschitz_k < 0) throw std::invalid_argument("kappa_estimate: negative Lipschitz constant");
    double max_diam = 0;
    for (const auto& cs : cover) {
        std::set<int> verts;
        for (int m : cs.members)
            for (int v : tri.maximal[std::size_t(m)]) verts.insert(v);
        for (int a : verts)
            for (int b : verts) {
                if (a >= b) continue;
                const auto& pa = tri.vertex_coords[std::size_t(a)];
                const auto& pb = tri.vertex_coords[std::size_t(b)];
                double d2 = 0;
                for (std::size_t i = 0; i < pa.size(); ++i) d2 += (pa[i] - pb[i]) * (pa[i] - pb[i]);
                max_diam = std::max(max_diam, std::sqrt(d2));
            }
    }
    return 2.0 * lipschitz_k * max_diam;
}

}  // namespace reeb::gromov
