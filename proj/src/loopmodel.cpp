#include "reeb/loopmodel.hpp"

#include <cctype>
#include <stdexcept>

namespace reeb::loopmodel {

using qdga::DGA;
using qdga::Element;
using qdga::Generator;
using qdga::Monomial;

bool is_barred_name(const std::string& name) {
    return name.size() > 3 && name.compare(name.size() - 3, 3, "bar") == 0;
}

std::string barred_name(const std::string& name) { return name + "bar"; }

DGA sphere_model(int n, int max_degree) {
    if (n < 2) throw std::invalid_argument("sphere model needs n >= 2 (simply connected)");
    if (n % 2 != 0) {
        DGA dga({Generator{"x", n}}, max_degree);
        dga.validate();
        return dga;
    }
    DGA dga({Generator{"x", n}, Generator{"y", 2 * n - 1}}, max_degree);
    Element x = dga.generator_element(0);
    dga.set_differential("y", dga.multiply(x, x));
    dga.validate();
    return dga;
}

Element bar(const DGA& dga, const Element& e) {
    // bar is a derivation of degree -1: on a canonical word g_1...g_k it acts
    // factor by factor with the prefix sign (-1)^{|g_1...g_{j-1}|}. The same
    // sign cancellation as for d applies when re-sorting bar(g) to the front:
    // |bar(g)| = |g|-1, so for even g nothing survives and for odd g the odd
    // prefix parity does.
    const auto& gens = dga.generators();
    Element out = dga.zero();
    for (const auto& [m, c] : e.terms()) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (m.exp(i) == 0) continue;
            if (is_barred_name(gens[i].name))
                throw std::invalid_argument("bar applied to an element containing barred generators");
        }
        int odd_prefix = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            int exp = m.exp(i);
            if (exp == 0) continue;
            std::size_t bar_index = dga.generator_index(barred_name(gens[i].name));
            Monomial rest = m;
            rest.exp(i) = std::uint16_t(exp - 1);
            Element factor = dga.from_monomial(rest, exp);
            Element term = dga.multiply(dga.generator_element(bar_index), factor);
            if (gens[i].odd() && odd_prefix % 2 != 0) term *= Rational(-1);
            out += term;
            if (gens[i].odd()) odd_prefix += exp;
        }
    }
    return out;
}

DGA loop_space_model(const DGA& base) {
    const auto& gens = base.generators();
    std::vector<Generator> new_gens;
    new_gens.reserve(gens.size() * 2);
    for (const auto& g : gens) {
        if (is_barred_name(g.name))
            throw std::invalid_argument("loop_space_model applied to a model that already has barred generators");
        if (g.degree < 2)
            throw std::invalid_argument("loop_space_model needs all generators in degree >= 2");
        new_gens.push_back(g);
    }
    for (const auto& g : gens) new_gens.push_back(Generator{barred_name(g.name), g.degree - 1});

    DGA out(new_gens, base.max_degree());

    // Transport an element of the base into the enlarged algebra.
    auto lift = [&](const Element& e) {
        Element r = out.zero();
        for (const auto& [m, c] : e.terms()) {
            Monomial big(new_gens.size());
            for (std::size_t i = 0; i < gens.size(); ++i) big.exp(i) = m.exp(i);
            r.add_term(big, c);
        }
        return r;
    };

    for (std::size_t i = 0; i < gens.size(); ++i)
        out.set_differential(gens[i].name, lift(base.differential_of(i)));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Element dx = lift(base.differential_of(i));
        Element dbar = bar(out, dx);
        dbar *= Rational(-1);
        out.set_differential(barred_name(gens[i].name), dbar);
    }
    out.validate();
    return out;
}

DGA tensor(const DGA& a, const DGA& b) {
    int n = std::min(a.max_degree(), b.max_degree());
    std::vector<Generator> gens;
    for (const auto& g : a.generators()) gens.push_back(Generator{g.name + "_1", g.degree});
    for (const auto& g : b.generators()) gens.push_back(Generator{g.name + "_2", g.degree});
    DGA out(gens, n);

    std::size_t na = a.generators().size();
    auto lift = [&](const Element& e, std::size_t offset, std::size_t arity) {
        Element r = out.zero();
        for (const auto& [m, c] : e.terms()) {
            Monomial big(gens.size());
            for (std::size_t i = 0; i < arity; ++i) big.exp(offset + i) = m.exp(i);
            r.add_term(big, c);
        }
        return r;
    };

    for (std::size_t i = 0; i < na; ++i)
        out.set_differential(a.generators()[i].name + "_1", lift(a.differential_of(i), 0, na));
    for (std::size_t i = 0; i < b.generators().size(); ++i)
        out.set_differential(b.generators()[i].name + "_2",
                             lift(b.differential_of(i), na, b.generators().size()));
    out.validate();
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    ModelSpec parse_product() {
        ModelSpec left = parse_atom();
        while (true) {
            skip_ws();
            if (!eat('*')) break;
            ModelSpec right = parse_atom();
            ModelSpec prod;
            prod.kind = ModelSpec::Kind::Product;
            prod.children = {left, right};
            left = prod;
        }
        return left;
    }

    ModelSpec parse_atom() {
        skip_ws();
        if (pos >= s.size()) throw std::invalid_argument("model spec: unexpected end of input");
        if (s.compare(pos, 5, "loop(") == 0) {
            pos += 5;
            ModelSpec inner = parse_product();
            if (!eat(')')) throw std::invalid_argument("model spec: missing ')' after loop(");
            ModelSpec loop;
            loop.kind = ModelSpec::Kind::Loop;
            loop.children = {inner};
            return loop;
        }
        if (s[pos] == '(') {
            ++pos;
            ModelSpec inner = parse_product();
            if (!eat(')')) throw std::invalid_argument("model spec: missing ')'");
            return inner;
        }
        if (s[pos] == 's' || s[pos] == 'S') {
            ++pos;
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) throw std::invalid_argument("model spec: expected sphere dimension after 's'");
            ModelSpec sph;
            sph.kind = ModelSpec::Kind::Sphere;
            sph.sphere_dim = std::stoi(s.substr(start, pos - start));
            return sph;
        }
        throw std::invalid_argument("model spec: unexpected character '" + std::string(1, s[pos]) + "'");
    }
};

}  // namespace

ModelSpec ModelSpec::parse(const std::string& text) {
    Parser p(text);
    ModelSpec spec = p.parse_product();
    p.skip_ws();
    if (p.pos != text.size())
        throw std::invalid_argument("model spec: trailing input after '" + text.substr(0, p.pos) + "'");
    return spec;
}

std::string ModelSpec::to_string() const {
    switch (kind) {
        case Kind::Sphere: return "s" + std::to_string(sphere_dim);
        case Kind::Loop: return "loop(" + children[0].to_string() + ")";
        case Kind::Product: return children[0].to_string() + "*" + children[1].to_string();
    }
    return "?";
}

DGA build_model(const ModelSpec& spec, int max_degree) {
    switch (spec.kind) {
        case ModelSpec::Kind::Sphere:
            return sphere_model(spec.sphere_dim, max_degree);
        case ModelSpec::Kind::Product:
            return tensor(build_model(spec.children[0], max_degree),
                          build_model(spec.children[1], max_degree));
        case ModelSpec::Kind::Loop: {
            const ModelSpec& inner = spec.children[0];
            if (inner.kind == ModelSpec::Kind::Loop)
                throw std::invalid_argument("loop() of a loop model is not defined here");
            if (inner.kind == ModelSpec::Kind::Product) {
                // Loop of a product is the product of the loops.
                ModelSpec left;
                left.kind = ModelSpec::Kind::Loop;
                left.children = {inner.children[0]};
                ModelSpec right;
                right.kind = ModelSpec::Kind::Loop;
                right.children = {inner.children[1]};
                return tensor(build_model(left, max_degree), build_model(right, max_degree));
            }
            return loop_space_model(build_model(inner, max_degree));
        }
    }
    throw std::logic_error("unreachable model kind");
}

}  // namespace reeb::loopmodel
