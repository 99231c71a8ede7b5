#include "reeb/qdga.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>

namespace reeb::qdga {

namespace {
std::atomic<std::uint64_t> next_dga_id{1};
}

Element& Element::operator+=(const Element& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Element& Element::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

DGA::DGA(std::vector<Generator> generators, int max_degree)
    : id_(next_dga_id++), generators_(std::move(generators)), max_degree_(max_degree) {
    if (max_degree_ < 0) throw std::invalid_argument("max_degree must be nonnegative");
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const auto& g = generators_[i];
        if (g.degree < 1) throw std::invalid_argument("generator degree must be >= 1: " + g.name);
        if (g.name.empty()) throw std::invalid_argument("generator with empty name");
        if (!index_.emplace(g.name, i).second)
            throw std::invalid_argument("duplicate generator name: " + g.name);
    }
    diff_.assign(generators_.size(), Element(id_));
}

std::size_t DGA::generator_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown generator name: " + name);
    return it->second;
}

void DGA::check_element(const Element& e) const {
    if (e.dga_id() != id_) throw std::invalid_argument("element belongs to a different DGA");
}

int DGA::degree(const Monomial& m) const {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += int(m.exp(i)) * generators_[i].degree;
    return d;
}

bool DGA::is_homogeneous(const Element& e, int* degree_out) const {
    check_element(e);
    if (e.is_zero()) {
        if (degree_out) *degree_out = 0;
        return true;
    }
    int d = degree(e.terms().begin()->first);
    for (const auto& [m, c] : e.terms())
        if (degree(m) != d) return false;
    if (degree_out) *degree_out = d;
    return true;
}

Element DGA::homogeneous_part(const Element& e, int deg) const {
    check_element(e);
    Element out(id_);
    for (const auto& [m, c] : e.terms())
        if (degree(m) == deg) out.add_term(m, c);
    return out;
}

Element DGA::one() const {
    Element e(id_);
    e.add_term(Monomial(generators_.size()), 1);
    return e;
}

Element DGA::from_monomial(const Monomial& m, const Rational& c) const {
    if (m.size() != generators_.size()) throw std::invalid_argument("monomial arity mismatch");
    Element e(id_);
    e.add_term(m, c);
    return e;
}

Element DGA::generator_element(std::size_t gen_index) const {
    Monomial m(generators_.size());
    m.exp(gen_index) = 1;
    return from_monomial(m);
}

std::pair<Monomial, int> DGA::normalize_monomial(const std::vector<std::string>& word) const {
    std::vector<std::size_t> idx;
    idx.reserve(word.size());
    for (const auto& n : word) idx.push_back(generator_index(n));
    return normalize_monomial_indices(idx);
}

std::pair<Monomial, int> DGA::normalize_monomial_indices(const std::vector<std::size_t>& word) const {
    // Insertion sort, multiplying in a factor (-1)^{|a||b|} per transposition.
    // Only odd-odd swaps flip the sign.
    std::vector<std::size_t> w = word;
    int sign = 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && w[j] < w[j - 1]) {
            if (generators_[w[j]].odd() && generators_[w[j - 1]].odd()) sign = -sign;
            std::swap(w[j], w[j - 1]);
            --j;
        }
    }
    Monomial m(generators_.size());
    for (std::size_t gi : w) {
        if (gi >= generators_.size()) throw std::invalid_argument("generator index out of range");
        if (generators_[gi].odd() && m.exp(gi) >= 1) return {Monomial(generators_.size()), 0};
        m.exp(gi)++;
    }
    return {m, sign};
}

DGA::MonProduct DGA::multiply_monomials(const Monomial& a, const Monomial& b) const {
    MonProduct out;
    // Koszul sign of interleaving b's odd letters past a's higher-index odd
    // letters, plus the vanishing rule for odd squares.
    int sign = 1;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (!generators_[i].odd() || b.exp(i) == 0) continue;
        if (a.exp(i) != 0) return out;  // odd square
        int crossings = 0;
        for (std::size_t j = i + 1; j < generators_.size(); ++j)
            if (generators_[j].odd()) crossings += a.exp(j);
        if (crossings % 2 != 0) sign = -sign;
    }
    Monomial m(generators_.size());
    int deg = 0;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        m.exp(i) = std::uint16_t(a.exp(i) + b.exp(i));
        deg += int(m.exp(i)) * generators_[i].degree;
    }
    if (deg > max_degree_) return out;  // truncated away
    out.mon = m;
    out.sign = sign;
    out.alive = true;
    return out;
}

Element DGA::multiply(const Element& a, const Element& b) const {
    check_element(a);
    check_element(b);
    Element out(id_);
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            MonProduct p = multiply_monomials(ma, mb);
            if (!p.alive) continue;
            out.add_term(p.mon, ca * cb * p.sign);
        }
    }
    return out;
}

Element DGA::differentiate_monomial(const Monomial& m) const {
    // Graded Leibniz, d(ab) = (da) b + (-1)^{|a|} a (db), applied to the
    // canonical factorization m = g_0^{e_0} g_1^{e_1} ...
    //
    // Each factor contributes (-1)^{|prefix|} prefix * d(g^e) * suffix.
    // Computing it as multiply(dg, m/g) re-sorts dg to the front, which costs
    // another (-1)^{|dg|*|prefix * g^{e-1}|}; for even g (|dg| odd) the two
    // signs cancel identically, for odd g (|dg| even) only the prefix parity
    // survives.
    Element out(id_);
    int odd_prefix = 0;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        int e = m.exp(i);
        if (e == 0) continue;
        const Element& dg = diff_[i];
        if (!dg.is_zero()) {
            Monomial rest = m;
            rest.exp(i) = std::uint16_t(e - 1);
            Element factor = from_monomial(rest, e);  // e g^{e-1} * (other factors)
            Element term = multiply(dg, factor);
            if (generators_[i].odd() && odd_prefix % 2 != 0) term *= Rational(-1);
            out += term;
        }
        if (generators_[i].odd()) odd_prefix += e;
    }
    return out;
}

Element DGA::differentiate(const Element& e) const {
    check_element(e);
    Element out(id_);
    for (const auto& [m, c] : e.terms()) {
        Element dm = differentiate_monomial(m);
        dm *= c;
        out += dm;
    }
    return out;
}

void DGA::set_differential(const std::string& gen_name, const Element& value) {
    check_element(value);
    std::size_t gi = generator_index(gen_name);
    int gdeg = generators_[gi].degree;
    int vdeg = 0;
    if (!value.is_zero()) {
        if (!is_homogeneous(value, &vdeg))
            throw std::invalid_argument("differential of " + gen_name + " is not homogeneous");
        if (vdeg != gdeg + 1)
            throw std::invalid_argument("differential of " + gen_name + " must raise degree by one");
        // Triangularity: no factor of degree above the generator itself may
        // appear (each factor of a decomposable degree-(g+1) product has
        // degree <= g). This is what keeps d o d well-founded.
        for (const auto& [m, c] : value.terms())
            for (std::size_t i = 0; i < generators_.size(); ++i)
                if (m.exp(i) != 0 && generators_[i].degree > gdeg)
                    throw std::invalid_argument(
                        "differential of " + gen_name +
                        " must be a polynomial in generators of lower degree");
    }
    diff_[gi] = value;
}

void DGA::validate() const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        // d(d(g)) has degree |g|+2; the check is meaningful only inside the
        // truncation window.
        if (generators_[i].degree + 2 > max_degree_) continue;
        Element dd = differentiate(diff_[i]);
        if (!dd.is_zero())
            throw std::logic_error("d o d != 0 on generator " + generators_[i].name);
    }
}

std::vector<Monomial> DGA::basis(int k) const {
    if (k < 0 || k > max_degree_) throw std::invalid_argument("basis degree out of range");
    std::vector<Monomial> out;
    Monomial cur(generators_.size());
    // Descending-lexicographic enumeration of exponent vectors of degree k.
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i == generators_.size()) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        const Generator& g = generators_[i];
        int emax = remaining / g.degree;
        if (g.odd()) emax = std::min(emax, 1);
        for (int e = emax; e >= 0; --e) {
            cur.exp(i) = std::uint16_t(e);
            self(self, i + 1, remaining - e * g.degree);
        }
        cur.exp(i) = 0;
    };
    rec(rec, 0, k);
    return out;
}

std::string DGA::to_string(const Monomial& m) const {
    if (m.is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.exp(i) == 0) continue;
        if (!first) os << "*";
        os << generators_[i].name;
        if (m.exp(i) > 1) os << "^" << m.exp(i);
        first = false;
    }
    return os.str();
}

std::string DGA::to_string(const Element& e) const {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : e.terms()) {
        if (!first) os << " + ";
        os << c.get_str() << "*" << to_string(m);
        first = false;
    }
    return os.str();
}

}  // namespace reeb::qdga
