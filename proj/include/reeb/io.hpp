#pragma once

#include <string>

#include "reeb/hamflow.hpp"
#include "reeb/loops.hpp"
#include "reeb/maslov.hpp"
#include "reeb/qdga.hpp"

namespace reeb::io {

// DGA JSON: {generators:[{name,degree}], diff:{name:[[num,den,expvec],...]},
// max_degree}. Coefficients travel as decimal strings so that arbitrary
// precision round-trips bit for bit.
std::string dga_to_json(const qdga::DGA& dga);
qdga::DGA dga_from_json(const std::string& text);

// Symplectic path JSON: {dim, samples:[{t, matrix: row-major floats}]}.
maslov::SymplecticPath symplectic_path_from_json(const std::string& text);
std::string symplectic_path_to_json(const maslov::SymplecticPath& path);

// Lagrangian path JSON: {dim, samples:[{t, frame: row-major dim x dim/2}]};
// the ambient structure is the standard one.
maslov::LagrangianPath lagrangian_path_from_json(const std::string& text);

// Frame JSON: {dim, frame: row-major dim x dim/2}.
maslov::LagrangianFrame frame_from_json(const std::string& text);

// Orbit JSON: {period, samples:[{t, q:[...], p:[...]}]}.
std::string orbit_to_json(const hamflow::Orbit& orbit);
hamflow::Orbit orbit_from_json(const std::string& text);

// Loop JSON: {space: "euclidean"|"torus"|"euclidean_circle", points:[[...]]}.
std::string loop_to_json(const loops::DiscreteLoop& loop);
loops::DiscreteLoop loop_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a, for the reproducibility header.
std::uint64_t fnv1a(const std::string& bytes);
std::string hash_hex(const std::string& bytes);

}  // namespace reeb::io
