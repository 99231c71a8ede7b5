#include "reeb/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace reeb::io {

using nlohmann::json;

std::string dga_to_json(const qdga::DGA& dga) {
    json j;
    j["generators"] = json::array();
    for (const auto& g : dga.generators()) j["generators"].push_back({{"name", g.name}, {"degree", g.degree}});
    json diff = json::object();
    for (std::size_t i = 0; i < dga.generators().size(); ++i) {
        const auto& d = dga.differential_of(i);
        if (d.is_zero()) continue;
        json terms = json::array();
        for (const auto& [mon, coeff] : d.terms()) {
            json term = json::array();
            term.push_back(coeff.get_num().get_str());
            term.push_back(coeff.get_den().get_str());
            json exps = json::array();
            for (std::size_t k = 0; k < mon.size(); ++k) exps.push_back(mon.exp(k));
            term.push_back(exps);
            terms.push_back(term);
        }
        diff[dga.generators()[i].name] = terms;
    }
    j["diff"] = diff;
    j["max_degree"] = dga.max_degree();
    return j.dump();
}

qdga::DGA dga_from_json(const std::string& text) {
    json j = json::parse(text);
    std::vector<qdga::Generator> gens;
    for (const auto& g : j.at("generators"))
        gens.push_back(qdga::Generator{g.at("name").get<std::string>(), g.at("degree").get<int>()});
    qdga::DGA dga(gens, j.at("max_degree").get<int>());
    if (j.contains("diff")) {
        for (auto it = j["diff"].begin(); it != j["diff"].end(); ++it) {
            qdga::Element e = dga.zero();
            for (const auto& term : it.value()) {
                Rational coeff = rational_from_strings(term.at(0).get<std::string>(),
                                                       term.at(1).get<std::string>());
                std::vector<std::uint16_t> exps;
                for (const auto& v : term.at(2)) exps.push_back(v.get<std::uint16_t>());
                e.add_term(qdga::Monomial(exps), coeff);
            }
            dga.set_differential(it.key(), e);
        }
    }
    dga.validate();
    return dga;
}

namespace {

maslov::Mat matrix_from_flat(const json& flat, int rows, int cols) {
    if (int(flat.size()) != rows * cols)
        throw std::invalid_argument("matrix has wrong number of entries");
    maslov::Mat m(rows, cols);
    int idx = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = flat.at(idx++).get<double>();
    return m;
}

json matrix_to_flat(const maslov::Mat& m) {
    json flat = json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
    return flat;
}

}  // namespace

maslov::SymplecticPath symplectic_path_from_json(const std::string& text) {
    json j = json::parse(text);
    int dim = j.at("dim").get<int>();
    maslov::SymplecticPath p;
    p.dim = dim;
    if (j.contains("tolerance")) p.tolerance = j["tolerance"].get<double>();
    for (const auto& s : j.at("samples")) {
        p.times.push_back(s.at("t").get<double>());
        p.samples.push_back(matrix_from_flat(s.at("matrix"), dim, dim));
    }
    p.validate();
    return p;
}

std::string symplectic_path_to_json(const maslov::SymplecticPath& path) {
    json j;
    j["dim"] = path.dim;
    j["tolerance"] = path.tolerance;
    json samples = json::array();
    for (std::size_t i = 0; i < path.times.size(); ++i)
        samples.push_back({{"t", path.times[i]}, {"matrix", matrix_to_flat(path.samples[i])}});
    j["samples"] = samples;
    return j.dump();
}

maslov::LagrangianPath lagrangian_path_from_json(const std::string& text) {
    json j = json::parse(text);
    int dim = j.at("dim").get<int>();
    maslov::LagrangianPath p;
    p.dim = dim;
    p.structure = maslov::standard_J(dim);
    if (j.contains("tolerance")) p.tolerance = j["tolerance"].get<double>();
    for (const auto& s : j.at("samples")) {
        p.times.push_back(s.at("t").get<double>());
        p.frames.push_back(matrix_from_flat(s.at("frame"), dim, dim / 2));
    }
    p.validate();
    return p;
}

maslov::LagrangianFrame frame_from_json(const std::string& text) {
    json j = json::parse(text);
    int dim = j.at("dim").get<int>();
    maslov::Mat f = matrix_from_flat(j.at("frame"), dim, dim / 2);
    return maslov::make_frame(maslov::standard_J(dim), f);
}

std::string orbit_to_json(const hamflow::Orbit& orbit) {
    json j;
    j["period"] = orbit.period;
    j["dt"] = orbit.dt;
    j["method"] = orbit.method;
    j["space"] = orbit.space.kind == hamflow::PhaseSpace::Kind::TorusCotangent ? "torus" : "euclidean";
    j["dof"] = orbit.space.dof;
    j["energy_drift"] = orbit.energy_drift;
    json samples = json::array();
    for (std::size_t i = 0; i < orbit.t.size(); ++i)
        samples.push_back({{"t", orbit.t[i]}, {"q", orbit.x[i].q}, {"p", orbit.x[i].p}});
    j["samples"] = samples;
    return j.dump();
}

hamflow::Orbit orbit_from_json(const std::string& text) {
    json j = json::parse(text);
    hamflow::Orbit orbit;
    orbit.period = j.at("period").get<double>();
    if (j.contains("dt")) orbit.dt = j["dt"].get<double>();
    if (j.contains("method")) orbit.method = j["method"].get<std::string>();
    orbit.space.kind = (j.value("space", "euclidean") == std::string("torus"))
                           ? hamflow::PhaseSpace::Kind::TorusCotangent
                           : hamflow::PhaseSpace::Kind::Euclidean;
    for (const auto& s : j.at("samples")) {
        orbit.t.push_back(s.at("t").get<double>());
        hamflow::State x;
        x.q = s.at("q").get<std::vector<double>>();
        x.p = s.at("p").get<std::vector<double>>();
        orbit.x.push_back(x);
    }
    orbit.space.dof = j.value("dof", orbit.x.empty() ? 1 : int(orbit.x[0].q.size()));
    return orbit;
}

std::string loop_to_json(const loops::DiscreteLoop& loop) {
    json j;
    switch (loop.metric) {
        case loops::DiscreteLoop::Metric::Euclidean: j["space"] = "euclidean"; break;
        case loops::DiscreteLoop::Metric::Torus: j["space"] = "torus"; break;
        case loops::DiscreteLoop::Metric::EuclideanCircle: j["space"] = "euclidean_circle"; break;
    }
    j["points"] = loop.points;
    return j.dump();
}

loops::DiscreteLoop loop_from_json(const std::string& text) {
    json j = json::parse(text);
    loops::DiscreteLoop loop;
    std::string space = j.at("space").get<std::string>();
    if (space == "euclidean")
        loop.metric = loops::DiscreteLoop::Metric::Euclidean;
    else if (space == "torus")
        loop.metric = loops::DiscreteLoop::Metric::Torus;
    else if (space == "euclidean_circle")
        loop.metric = loops::DiscreteLoop::Metric::EuclideanCircle;
    else
        throw std::invalid_argument("loop: unknown space '" + space + "'");
    loop.points = j.at("points").get<std::vector<std::vector<double>>>();
    loop.validate();
    return loop;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(const std::string& bytes) {
    std::ostringstream os;
    os << std::hex << std::setfill('0') << std::setw(16) << fnv1a(bytes);
    return os.str();
}

}  // namespace reeb::io
