#include "reeb/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "reeb/betti.hpp"
#include "reeb/expr.hpp"
#include "reeb/gromov.hpp"
#include "reeb/growth.hpp"
#include "reeb/hamflow.hpp"
#include "reeb/io.hpp"
#include "reeb/loopmodel.hpp"
#include "reeb/loops.hpp"
#include "reeb/maslov.hpp"

namespace reeb::cli {

namespace {

std::string header_line(const std::string& cmd, const std::string& params,
                        const std::string& input_bytes) {
    std::ostringstream os;
    os << "# " << kToolName << " " << kVersion << " schema=" << kSchema << " cmd=" << cmd
       << " input_hash=" << io::hash_hex(input_bytes) << " params=" << params;
    return os.str();
}

std::string json_header_fields(const std::string& cmd, const std::string& params,
                               const std::string& input_bytes) {
    std::ostringstream os;
    os << "\"schema\": " << kSchema << ", \"tool\": \"" << kToolName << "\", \"version\": \""
       << kVersion << "\", \"cmd\": \"" << cmd << "\", \"input_hash\": \""
       << io::hash_hex(input_bytes) << "\", \"params\": \"" << params << "\"";
    return os.str();
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

growth::CountSequence counts_from_tsv(const std::string& text) {
    growth::CountSequence seq;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double scale = 0;
        double count = 0;
        if (!(ls >> scale >> count)) throw std::invalid_argument("counts file: bad line: " + line);
        seq.samples.push_back(growth::CountSample{scale, (unsigned long long)(count)});
    }
    seq.validate();
    return seq;
}

int run_betti(const std::string& space, int max_degree, const std::string& format,
              std::ostream& out) {
    loopmodel::ModelSpec spec = loopmodel::ModelSpec::parse(space);
    qdga::DGA model = loopmodel::build_model(spec, max_degree + 2);
    betti::BettiTable table = betti::betti_numbers(model, max_degree);
    std::ostringstream params;
    params << "space=" << space << ",max=" << max_degree;
    if (format == "tsv") {
        out << header_line("betti", params.str(), space) << "\n";
        out << "# degree\tbetti\n";
        out << betti::to_tsv(table);
    } else {
        out << "{" << json_header_fields("betti", params.str(), space) << ", \"space\": \"" << space
            << "\", \"betti\": [";
        for (std::size_t i = 0; i < table.values.size(); ++i) {
            if (i) out << ", ";
            out << table.values[i];
        }
        out << "], \"reliable_up_to\": " << table.reliable_up_to << "}\n";
    }
    return 0;
}

int run_growth_estimate(const std::string& mode, const std::string& input_path, std::ostream& out) {
    std::string bytes = io::read_file(input_path);
    growth::CountSequence seq = counts_from_tsv(bytes);
    double rate = 0;
    if (mode == "exp")
        rate = growth::exp_growth_rate(seq);
    else if (mode == "poly")
        rate = growth::poly_growth_rate(seq);
    else if (mode == "linear")
        rate = growth::linear_growth_rate(seq);
    else
        throw CLI::ValidationError("--mode must be exp, poly or linear");
    std::ostringstream params;
    params << "mode=" << mode << ",input=" << input_path;
    out << header_line("growth", params.str(), bytes) << "\n";
    out << "# estimator\trate\n";
    out << mode << "\t" << std::setprecision(12) << rate << "\n";
    return 0;
}

int run_growth_free_group(int rank, int max_len, std::ostream& out) {
    growth::CountSequence seq = growth::count_conjugacy_classes_free_group(rank, max_len);
    std::ostringstream params;
    params << "rank=" << rank << ",max-len=" << max_len;
    out << header_line("growth free-group", params.str(), params.str()) << "\n";
    out << "# length\tclasses\n";
    for (const auto& s : seq.samples)
        out << (long long)(s.scale) << "\t" << s.count << "\n";
    return 0;
}

int run_cz_index(const std::string& path_file, const std::string& format, std::ostream& out) {
    std::string bytes = io::read_file(path_file);
    maslov::SymplecticPath path = io::symplectic_path_from_json(bytes);
    maslov::IndexResult res = maslov::cz_index(path);
    std::ostringstream params;
    params << "path=" << path_file;
    if (format == "json") {
        out << "{" << json_header_fields("cz-index", params.str(), bytes) << ", \"index\": \""
            << res.index.str() << "\", \"twice_index\": " << res.index.twice
            << ", \"crossings\": " << res.crossings.size() << "}\n";
    } else {
        out << res.index.str() << "\n";
    }
    return 0;
}

int run_rs_index(const std::string& path_file, const std::string& v_file, const std::string& format,
                 std::ostream& out) {
    std::string bytes = io::read_file(path_file);
    std::string v_bytes = io::read_file(v_file);
    maslov::LagrangianPath path = io::lagrangian_path_from_json(bytes);
    maslov::LagrangianFrame v = io::frame_from_json(v_bytes);
    maslov::IndexResult res = maslov::rs_index(path, v);
    std::ostringstream params;
    params << "path=" << path_file << ",V=" << v_file;
    if (format == "json") {
        out << "{" << json_header_fields("rs-index", params.str(), bytes + v_bytes)
            << ", \"index\": \"" << res.index.str() << "\", \"twice_index\": " << res.index.twice
            << ", \"crossings\": " << res.crossings.size() << "}\n";
    } else {
        out << res.index.str() << "\n";
    }
    return 0;
}

int run_flow(const std::string& space, const std::string& h_text, const std::string& x0_text,
             double T, double dt, const std::string& out_file, std::ostream& out) {
    auto semi = x0_text.find(';');
    if (semi == std::string::npos)
        throw CLI::ValidationError("--x0 must look like \"q1,..,qn;p1,..,pn\"");
    std::vector<double> q0 = parse_csv_doubles(x0_text.substr(0, semi));
    std::vector<double> p0 = parse_csv_doubles(x0_text.substr(semi + 1));
    if (q0.size() != p0.size() || q0.empty())
        throw CLI::ValidationError("--x0 needs matching q and p blocks");

    hamflow::PhaseSpace ps;
    ps.dof = int(q0.size());
    if (space == "torus")
        ps.kind = hamflow::PhaseSpace::Kind::TorusCotangent;
    else if (space == "euclidean")
        ps.kind = hamflow::PhaseSpace::Kind::Euclidean;
    else
        throw CLI::ValidationError("--space must be torus or euclidean");

    expr::Expression h = expr::Expression::parse(h_text);
    hamflow::HamiltonianField field(ps, [h](double t, const hamflow::VecD& q,
                                            const hamflow::VecD& p) { return h.eval(t, q, p); });
    hamflow::Orbit orbit = hamflow::integrate_flow(field, hamflow::State{q0, p0}, T, dt);
    std::string orbit_json = io::orbit_to_json(orbit);
    if (!out_file.empty()) io::write_file(out_file, orbit_json);

    std::ostringstream params;
    params << "space=" << space << ",H=" << h_text << ",x0=" << x0_text << ",T=" << T
           << ",dt=" << dt;
    out << header_line("flow", params.str(), h_text + "|" + x0_text) << "\n";
    out << "# quantity\tvalue\n";
    out << std::setprecision(12);
    out << "energy_drift\t" << orbit.energy_drift << "\n";
    out << "closure_defect\t" << orbit.closure_defect() << "\n";
    if (out_file.empty()) out << orbit_json << "\n";
    return 0;
}

int run_loop(const std::string& op, const std::string& input, const std::string& input2, double eps,
             const std::string& out_file, std::ostream& out) {
    std::string bytes = io::read_file(input);
    loops::DiscreteLoop loop = io::loop_from_json(bytes);
    std::ostringstream params;
    params << "op=" << op << ",input=" << input;

    auto emit = [&](const loops::DiscreteLoop& result) {
        std::string js = io::loop_to_json(result);
        if (!out_file.empty())
            io::write_file(out_file, js);
        else
            out << js << "\n";
    };

    if (op == "measure") {
        loops::Measure m = loops::measure(loop);
        out << header_line("loop measure", params.str(), bytes) << "\n";
        out << "# quantity\tvalue\n";
        out << std::setprecision(12);
        out << "energy\t" << m.energy << "\n";
        out << "length\t" << m.length << "\n";
        return 0;
    }
    if (op == "reparam") {
        out << header_line("loop reparam", params.str(), bytes) << "\n";
        emit(loops::arclength_reparametrize(loop));
        return 0;
    }
    if (op == "lift") {
        out << header_line("loop lift", params.str(), bytes) << "\n";
        emit(loops::lift_to_product_circle(loop));
        return 0;
    }
    if (op == "concat") {
        if (input2.empty()) throw CLI::ValidationError("loop concat needs --input2");
        std::string bytes2 = io::read_file(input2);
        loops::DiscreteLoop loop2 = io::loop_from_json(bytes2);
        params << ",input2=" << input2 << ",eps=" << eps;
        out << header_line("loop concat", params.str(), bytes + bytes2) << "\n";
        emit(loops::concat_eps(loop, loop2, eps));
        return 0;
    }
    throw CLI::ValidationError("loop op must be measure, reparam, lift or concat");
}

int run_gromov(const std::string& mesh_file, int k, const std::string& report_file,
               double lipschitz, std::ostream& out) {
    std::string bytes = io::read_file(mesh_file);
    gromov::Triangulation tri = gromov::parse_mesh(bytes);
    std::vector<gromov::CoverSet> cover = gromov::star_cover(tri);
    gromov::EnumerationResult cells = gromov::enumerate_Bk(tri, cover, k);
    std::vector<gromov::LegReportRow> report = gromov::leg_bound_report(tri, cells.cells);

    std::ostringstream params;
    params << "mesh=" << mesh_file << ",k=" << k;
    std::ostringstream table;
    table << header_line("gromov", params.str(), bytes) << "\n";
    table << "# cell\tdim\tlegs_outside_skeleton\tbound\tpass\n";
    for (const auto& row : report)
        table << row.cell_index << "\t" << row.dimension << "\t" << row.legs_outside_skeleton
              << "\t" << row.bound << "\t" << (row.pass ? "pass" : "FAIL") << "\n";
    if (!report_file.empty())
        io::write_file(report_file, table.str());
    else
        out << table.str();

    out << header_line("gromov summary", params.str(), bytes) << "\n";
    out << "# quantity\tvalue\n";
    out << "cover_sets\t" << cover.size() << "\n";
    out << "cells\t" << cells.cells.size() << "\n";
    out << "complete\t" << (cells.complete ? 1 : 0) << "\n";
    out << "kappa(K=" << lipschitz << ")\t" << std::setprecision(12)
        << gromov::kappa_estimate(tri, cover, lipschitz) << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"loop-space growth and index computations"};
    app.require_subcommand(1);

    // betti
    std::string betti_space, betti_format = "tsv";
    int betti_max = 15;
    auto* betti_cmd = app.add_subcommand("betti", "cohomology ranks of a loop-space model");
    betti_cmd->add_option("--space", betti_space, "model spec, e.g. loop(s5)*loop(s7)")->required();
    betti_cmd->add_option("--max", betti_max, "largest reported degree");
    betti_cmd->add_option("--format", betti_format, "tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}));

    // growth + growth free-group
    std::string growth_mode = "exp", growth_input;
    auto* growth_cmd = app.add_subcommand("growth", "growth-rate estimators");
    growth_cmd->add_option("--mode", growth_mode, "exp, poly or linear");
    growth_cmd->add_option("--input", growth_input, "TSV of scale<TAB>count");
    int fg_rank = 2, fg_len = 10;
    auto* fg_cmd = growth_cmd->add_subcommand("free-group", "conjugacy classes of a free group");
    fg_cmd->add_option("--rank", fg_rank, "free group rank");
    fg_cmd->add_option("--max-len", fg_len, "largest word length");

    // cz-index
    std::string cz_path, cz_format = "tsv";
    auto* cz_cmd = app.add_subcommand("cz-index", "Conley-Zehnder index of a symplectic path");
    cz_cmd->add_option("--path", cz_path, "path JSON file")->required();
    cz_cmd->add_option("--format", cz_format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

    // rs-index
    std::string rs_path, rs_v, rs_format = "tsv";
    auto* rs_cmd = app.add_subcommand("rs-index", "Robbin-Salamon index of a Lagrangian path");
    rs_cmd->add_option("--path", rs_path, "Lagrangian path JSON file")->required();
    rs_cmd->add_option("--V", rs_v, "reference frame JSON file")->required();
    rs_cmd->add_option("--format", rs_format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

    // flow
    std::string flow_space = "torus", flow_h, flow_x0, flow_out;
    double flow_T = 1.0, flow_dt = 1e-3;
    auto* flow_cmd = app.add_subcommand("flow", "integrate a Hamiltonian flow");
    flow_cmd->add_option("--space", flow_space, "torus or euclidean");
    flow_cmd->add_option("--H", flow_h, "Hamiltonian expression, e.g. 0.5*|p|^2")->required();
    flow_cmd->add_option("--x0", flow_x0, "initial state q1,..;p1,..")->required();
    flow_cmd->add_option("--T", flow_T, "integration time");
    flow_cmd->add_option("--dt", flow_dt, "step size");
    flow_cmd->add_option("--out", flow_out, "orbit JSON output file");

    // loop
    std::string loop_op, loop_input, loop_input2, loop_out;
    double loop_eps = 0.5;
    auto* loop_cmd = app.add_subcommand("loop", "discrete loop functionals");
    loop_cmd->add_option("op", loop_op, "measure, reparam, lift or concat")->required();
    loop_cmd->add_option("--input", loop_input, "loop JSON file")->required();
    loop_cmd->add_option("--input2", loop_input2, "second loop for concat");
    loop_cmd->add_option("--eps", loop_eps, "concatenation split point");
    loop_cmd->add_option("--out", loop_out, "output JSON file");

    // gromov
    std::string gromov_mesh, gromov_report;
    int gromov_k = 1;
    double gromov_lipschitz = 1.0;
    auto* gromov_cmd = app.add_subcommand("gromov", "broken-geodesic cell complex");
    gromov_cmd->add_option("--mesh", gromov_mesh, "mesh file")->required();
    gromov_cmd->add_option("--k", gromov_k, "subdivision level");
    gromov_cmd->add_option("--report", gromov_report, "TSV report file");
    gromov_cmd->add_option("--kappa-lipschitz", gromov_lipschitz, "Lipschitz constant K");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (betti_cmd->parsed()) return run_betti(betti_space, betti_max, betti_format, out);
        if (growth_cmd->parsed()) {
            if (fg_cmd->parsed()) return run_growth_free_group(fg_rank, fg_len, out);
            if (growth_input.empty()) throw CLI::ValidationError("growth needs --input or free-group");
            return run_growth_estimate(growth_mode, growth_input, out);
        }
        if (cz_cmd->parsed()) return run_cz_index(cz_path, cz_format, out);
        if (rs_cmd->parsed()) return run_rs_index(rs_path, rs_v, rs_format, out);
        if (flow_cmd->parsed())
            return run_flow(flow_space, flow_h, flow_x0, flow_T, flow_dt, flow_out, out);
        if (loop_cmd->parsed())
            return run_loop(loop_op, loop_input, loop_input2, loop_eps, loop_out, out);
        if (gromov_cmd->parsed())
            return run_gromov(gromov_mesh, gromov_k, gromov_report, gromov_lipschitz, out);
        err << "usage error: no subcommand\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace reeb::cli
