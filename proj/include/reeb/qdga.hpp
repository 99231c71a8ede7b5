#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "reeb/rational.hpp"

namespace reeb::qdga {

struct Generator {
    std::string name;
    int degree = 0;  // >= 1
    bool odd() const { return degree % 2 != 0; }
};

// Canonical monomial: one exponent per generator, in generator order.
// Odd generators carry exponent 0 or 1.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::size_t n_gens) : exps_(n_gens, 0) {}
    explicit Monomial(std::vector<std::uint16_t> exps) : exps_(std::move(exps)) {}

    std::size_t size() const { return exps_.size(); }
    std::uint16_t exp(std::size_t i) const { return exps_[i]; }
    std::uint16_t& exp(std::size_t i) { return exps_[i]; }
    const std::vector<std::uint16_t>& exponents() const { return exps_; }
    bool is_unit() const {
        for (auto e : exps_)
            if (e) return false;
        return true;
    }

    // Basis order: descending lexicographic on the exponent vector, so that
    // e.g. x precedes ybar in the degree-2 basis of the loop model of S^2.
    bool operator<(const Monomial& o) const { return exps_ > o.exps_; }
    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

  private:
    std::vector<std::uint16_t> exps_;
};

class DGA;

// Finite Q-linear combination of monomials. Zero coefficients are never stored.
class Element {
  public:
    Element() = default;
    explicit Element(std::uint64_t dga_id) : dga_id_(dga_id) {}

    std::uint64_t dga_id() const { return dga_id_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Rational& c);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, const Rational& c) { return a *= c; }
    bool operator==(const Element& o) const { return terms_ == o.terms_; }

  private:
    std::uint64_t dga_id_ = 0;
    std::map<Monomial, Rational> terms_;
};

// Free graded-commutative DGA over Q on finitely many generators, truncated
// above max_degree: products and differentials silently drop any term of
// degree > max_degree, so ranks at degree k are exact only for k <= N-2.
class DGA {
  public:
    DGA(std::vector<Generator> generators, int max_degree);

    std::uint64_t id() const { return id_; }
    int max_degree() const { return max_degree_; }
    const std::vector<Generator>& generators() const { return generators_; }
    std::size_t generator_index(const std::string& name) const;
    const Element& differential_of(std::size_t gen_index) const { return diff_[gen_index]; }

    // Differential assignment; value must raise degree by one and involve only
    // generators of strictly lower degree.
    void set_differential(const std::string& gen_name, const Element& value);
    // Runs the d(d(g)) == 0 check on every generator (where the truncation
    // window allows it to be evaluated).
    void validate() const;

    int degree(const Monomial& m) const;
    bool is_homogeneous(const Element& e, int* degree_out = nullptr) const;
    Element homogeneous_part(const Element& e, int degree) const;

    Element zero() const { return Element(id_); }
    Element one() const;
    Element from_monomial(const Monomial& m, const Rational& c = 1) const;
    Element generator_element(std::size_t gen_index) const;

    // Sorts a word of generators into canonical order. The sign is the Koszul
    // sign of the permutation; it is 0 exactly when an odd generator repeats.
    std::pair<Monomial, int> normalize_monomial(const std::vector<std::string>& word) const;
    std::pair<Monomial, int> normalize_monomial_indices(const std::vector<std::size_t>& word) const;

    // Graded-commutative product of canonical monomials; bool is false when
    // the product vanishes (odd square) or exceeds the truncation degree.
    struct MonProduct {
        Monomial mon;
        int sign = 0;
        bool alive = false;
    };
    MonProduct multiply_monomials(const Monomial& a, const Monomial& b) const;

    Element multiply(const Element& a, const Element& b) const;
    Element differentiate(const Element& e) const;
    Element differentiate_monomial(const Monomial& m) const;

    // All monomials of total degree k, in the canonical basis order.
    std::vector<Monomial> basis(int k) const;

    std::string to_string(const Element& e) const;
    std::string to_string(const Monomial& m) const;

  private:
    void check_element(const Element& e) const;

    std::uint64_t id_;
    std::vector<Generator> generators_;
    std::map<std::string, std::size_t> index_;
    std::vector<Element> diff_;
    int max_degree_;
};

}  // namespace reeb::qdga
