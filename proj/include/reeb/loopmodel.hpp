#pragma once

#include <memory>
#include <string>
#include <vector>

#include "reeb/qdga.hpp"

namespace reeb::loopmodel {

// Model descriptions accepted by the builders and the CLI parser:
//   "s5"                   sphere model
//   "loop(s5)"             free-loop-space model of a sphere
//   "loop(s5)*loop(s7)"    tensor product
//   "loop(s3*s3)"          loop of a product (built as the product of loops)
struct ModelSpec {
    enum class Kind { Sphere, Loop, Product };
    Kind kind = Kind::Sphere;
    int sphere_dim = 0;                        // Sphere
    std::vector<ModelSpec> children;           // Loop: 1 child, Product: 2 children

    static ModelSpec parse(const std::string& text);
    std::string to_string() const;
};

// Minimal model of S^n truncated at max_degree: one closed generator x in
// degree n for odd n; for even n also y in degree 2n-1 with dy = x^2.
qdga::DGA sphere_model(int n, int max_degree);

// The degree -1 derivation sending each plain generator x to its barred
// partner, extended by bar(ab) = bar(a) b + (-1)^{|a|} a bar(b). Defined on
// the subalgebra of un-barred generators of a loop-space model.
qdga::Element bar(const qdga::DGA& loop_dga, const qdga::Element& e);

// Loop-space model: adds a generator <name>bar of one degree less per base
// generator, keeps d on the base, and sets d(xbar) = -bar(dx).
qdga::DGA loop_space_model(const qdga::DGA& base);

// Tensor product; generators are renamed with factor suffixes _1 / _2.
qdga::DGA tensor(const qdga::DGA& a, const qdga::DGA& b);

// Builds the model for a parsed spec, truncated at max_degree.
qdga::DGA build_model(const ModelSpec& spec, int max_degree);

// True when the generator was produced by loop_space_model.
bool is_barred_name(const std::string& name);
std::string barred_name(const std::string& name);

}  // namespace reeb::loopmodel
