#pragma once

#include <string>
#include <vector>

namespace reeb::gromov {

// Simplicial complex with embedded vertices. Faces are stored as sorted
// vertex tuples; every face of a maximal simplex is present in the lattice.
struct Triangulation {
    std::vector<std::vector<double>> vertex_coords;
    std::vector<std::vector<int>> maximal;       // maximal simplices, vertex ids
    std::vector<std::vector<int>> faces;         // full face lattice, sorted tuples
    std::vector<std::vector<int>> face_maximals; // face -> maximal simplices containing it

    int face_dim(int face_id) const { return int(faces[std::size_t(face_id)].size()) - 1; }
    int face_index(const std::vector<int>& vertices) const;  // -1 if absent
    bool face_contains(int big, int small) const;            // small subset of big
};

Triangulation build_triangulation(std::vector<std::vector<double>> vertex_coords,
                                  std::vector<std::vector<int>> maximal_simplices);

// OFF-like mesh text: first line "nv ns", then nv coordinate lines, then ns
// lines "k v_1 ... v_k".
Triangulation parse_mesh(const std::string& text);

// Closed vertex star: all faces of the maximal simplices containing a vertex.
struct CoverSet {
    int vertex = -1;
    std::vector<int> members;  // maximal simplex ids
};
std::vector<CoverSet> star_cover(const Triangulation& tri);

// Cell T(p_1) x ... x T(p_{2^k}) of the broken-geodesic complex, recorded by
// its face sequence.
struct BrokenLoopCell {
    std::vector<int> face_seq;
    int dimension = 0;
};

// Pairwise admissibility oracle: pair(a, b) holds when O(a) cup O(b) lies in
// a single cover star. Build once, query many times.
class Admissibility {
  public:
    Admissibility(const Triangulation& tri, const std::vector<CoverSet>& cover);
    bool pair(int face_a, int face_b) const { return pair_ok_[std::size_t(face_a)][std::size_t(face_b)] != 0; }
    // cyclic check with p_0 = p_{2^k}
    bool sequence(const std::vector<int>& face_seq) const;
    const std::vector<std::vector<int>>& superfaces() const { return superfaces_; }

  private:
    std::vector<std::vector<char>> pair_ok_;
    std::vector<std::vector<int>> superfaces_;  // face -> faces containing it (incl. itself)
};

// O(p_{j-1}) cup O(p_j) inside a single cover star, checked cyclically.
bool is_admissible(const Triangulation& tri, const std::vector<CoverSet>& cover,
                   const std::vector<int>& face_seq);

struct EnumerationResult {
    std::vector<BrokenLoopCell> cells;
    bool complete = true;  // false when a cap truncated the sweep
};

// All admissible sequences of length 2^k; maximal_only keeps only cells not
// contained in a strictly larger admissible cell. Guarded by caps.
EnumerationResult enumerate_Bk(const Triangulation& tri, const std::vector<CoverSet>& cover, int k,
                               bool maximal_only = true, std::size_t candidate_cap = 1000000,
                               int max_subdivision = 3);

struct LegReportRow {
    std::size_t cell_index = 0;
    int dimension = 0;
    int legs_outside_skeleton = 0;
    int bound = 0;
    bool pass = false;
};
std::vector<LegReportRow> leg_bound_report(const Triangulation& tri,
                                           const std::vector<BrokenLoopCell>& cells);

// p_j -> p_j, p_j doubling that realizes the inclusion of level k into k+1.
std::vector<int> duplicate_sequence(const std::vector<int>& face_seq);

// kappa = 2 K d with d the largest Euclidean diameter of a cover star.
double kappa_estimate(const Triangulation& tri, const std::vector<CoverSet>& cover,
                      double lipschitz_k);

}  // namespace reeb::gromov
