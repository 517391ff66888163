// Command-line front end: cost validation, batch averaged-Hessian
// evaluation, monotonicity checks, test-data generation, angle reports,
// chart extraction, and push-forward measure reports.
//
// Exit status: 0 when every asserted check passes, 1 when a check fails
// (with a machine-readable violation list on stdout), 2 on input errors.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>

#include "hmt/angles.hpp"
#include "hmt/bilinear_form.hpp"
#include "hmt/config.hpp"
#include "hmt/io.hpp"
#include "hmt/linalg.hpp"
#include "hmt/measure.hpp"
#include "hmt/multimap.hpp"
#include "hmt/rectifier.hpp"
#include "hmt/sampling.hpp"
#include "hmt/transport.hpp"

using namespace hmt;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

struct GlobalOpts {
    std::string config_path;
    long seed = -1;     // overrides config key `seed`
    double tol = -1.0;  // overrides config key `tol.check`
    int quad_order = 0; // overrides config key `quad.order`
};

RunConfig load_config(const GlobalOpts& g, bool required = true) {
    RunConfig cfg;
    if (!g.config_path.empty())
        cfg = RunConfig::parse_file(g.config_path);
    else if (required)
        throw std::runtime_error("a --config file is required for this command");
    if (g.seed >= 0) cfg.set("seed", std::to_string(g.seed));
    if (g.tol >= 0.0) cfg.set("tol.check", format_double(g.tol));
    if (g.quad_order > 0) cfg.set("quad.order", std::to_string(g.quad_order));
    return cfg;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

int run_validate_cost(const GlobalOpts& g, int trials, int samples, double margin) {
    const RunConfig cfg = load_config(g);
    const CostSpec cost = cost_from_config(cfg);
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    const double tol = cfg.get_double("tol.check", 1e-9);

    const HomogeneityReport rep = check_homogeneity(cost, trials, tol, seed);
    const EllipticityBounds b = ellipticity_bounds(cost, samples, margin);

    // sampled sandwich against the certified constants
    Rng rng(seed + 1);
    double worst_low = 0.0, worst_high = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec x = rng.unit_vector(cost.dim());
        const Vec v = rng.unit_vector(cost.dim());
        const double q = v.dot(cost.hessian(x) * v);
        worst_low = std::max(worst_low, b.lambda - q);
        worst_high = std::max(worst_high, q - b.Lambda);
    }
    const bool sandwich_ok = worst_low <= tol && worst_high <= tol;

    std::cout << "check,result,detail\n";
    std::cout << "homogeneity," << (rep.ok ? "pass" : "fail") << ",worst_value_defect="
              << format_double(rep.worst_value_defect)
              << ";worst_hessian_defect=" << format_double(rep.worst_hessian_defect) << "\n";
    std::cout << "ellipticity," << (sandwich_ok ? "pass" : "fail")
              << ",lambda=" << format_double(b.lambda) << ";Lambda=" << format_double(b.Lambda)
              << ";method=" << (b.method == BoundsMethod::closed_form ? "closed_form" : "sphere_sampling")
              << "\n";
    for (const auto& v : rep.violations)
        std::cout << "violation,homogeneity,t=" << format_double(v.t)
                  << ";value_defect=" << format_double(v.value_defect)
                  << ";hessian_defect=" << format_double(v.hessian_defect) << "\n";
    return (rep.ok && sandwich_ok) ? 0 : kExitViolation;
}

int run_form(const GlobalOpts& g, const std::string& input, const std::string& output) {
    const RunConfig cfg = load_config(g);
    const CostSpec cost = cost_from_config(cfg);
    const int order = static_cast<int>(cfg.get_int("quad.order", 16));
    const auto rows = read_quadruples(input);

    std::ofstream out = open_output(output);
    out << "row,phi,est_error,converged,form_gap,pair_gap,A\n";
    int failures = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Quadruple& q = rows[r];
        if (q.dim() != cost.dim()) throw std::runtime_error("quadruple dimension != cost.dim");
        FormResult fr;
        const double fg = form_gap(cost, q, order, &fr);
        const double pg = monotone_pair_gap(cost, q);
        const double budget = fr.est_error * (q.x - q.y).norm() * (q.xi - q.zeta).norm();
        const bool ok = fr.converged && std::abs(pg - fg) <= budget;
        if (!ok) ++failures;
        out << r << ',' << format_double(fr.Phi) << ',' << format_double(fr.est_error) << ','
            << (fr.converged ? 1 : 0) << ',' << format_double(fg) << ',' << format_double(pg);
        for (Eigen::Index i = 0; i < fr.A.rows(); ++i)
            for (Eigen::Index j = 0; j < fr.A.cols(); ++j) out << ',' << format_double(fr.A(i, j));
        out << '\n';
    }
    std::cout << "rows=" << rows.size() << " failures=" << failures << " order=" << order << "\n";
    return failures == 0 ? 0 : kExitViolation;
}

void print_witnesses(const ViolationReport& rep, const char* kind) {
    for (const auto& w : rep.witnesses) {
        std::cout << "violation," << kind << ",indices=";
        for (std::size_t i = 0; i < w.graph_indices.size(); ++i)
            std::cout << (i ? "|" : "") << w.graph_indices[i];
        if (!w.permutation.empty()) {
            std::cout << ",sigma=";
            for (std::size_t i = 0; i < w.permutation.size(); ++i)
                std::cout << (i ? "|" : "") << w.permutation[i];
        }
        std::cout << ",gap=" << format_double(w.gap) << "\n";
    }
}

int run_check(const GlobalOpts& g, const std::string& input, int cyclic, long max_graph) {
    const RunConfig cfg = load_config(g);
    const CostSpec cost = cost_from_config(cfg);
    const MultiMap t = read_map(input);
    if (t.dim() != cost.dim()) throw std::runtime_error("map dimension != cost.dim");
    const double tol = cfg.has("tol.check") ? cfg.get_double("tol.check") : default_check_tol(cost, t);
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));

    const ViolationReport pw = check_h_monotone(cost, t, tol, static_cast<std::size_t>(max_graph));
    std::cout << "check,result,detail\n";
    std::cout << "pairwise," << (pw.ok() ? "pass" : "fail") << ",checked=" << pw.checked_count
              << ";worst_gap=" << format_double(pw.worst_gap) << "\n";
    bool ok = pw.ok();
    print_witnesses(pw, "pairwise");
    if (cyclic >= 2) {
        const ViolationReport cy = check_cyclic(cost, t, cyclic, tol, 1000000, seed);
        std::cout << "cyclic," << (cy.ok() ? "pass" : "fail") << ",checked=" << cy.checked_count
                  << ";coverage=" << format_double(cy.coverage)
                  << ";worst_gap=" << format_double(cy.worst_gap) << "\n";
        print_witnesses(cy, "cyclic");
        ok = ok && cy.ok();
    }
    return ok ? 0 : kExitViolation;
}

int run_generate(const GlobalOpts& g, int m, int dim, double p, int grid,
                 const std::string& output) {
    RunConfig cfg = load_config(g, /*required=*/false);
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    const CostSpec cost = make_power_cost(dim, p);
    Rng rng(seed);
    std::vector<Vec> src, tgt;
    for (int i = 0; i < m; ++i) {
        src.push_back(rng.box_vector(dim, 0.0, 1.0));
        tgt.push_back(rng.box_vector(dim, 0.0, 1.0));
    }
    const Assignment a = solve_assignment(cost, src, tgt);
    MultiMap t;
    if (grid > 0) {
        CellGrid cells;
        cells.lo = Vec::Zero(dim);
        cells.hi = Vec::Ones(dim);
        cells.resolution = grid;
        t = c_potential_multimap(cost, a, cells.cell_centers());
    } else {
        t = as_multimap(a);
    }
    write_map(output, t);
    std::cout << "m=" << m << " dim=" << dim << " p=" << format_double(p)
              << " graph=" << t.graph_size() << " total_cost=" << format_double(a.total_cost)
              << "\n";
    return 0;
}

int run_angles(const GlobalOpts& g, const std::string& input, const std::string& output) {
    const RunConfig cfg = load_config(g);
    const CostSpec cost = cost_from_config(cfg);
    const int order = static_cast<int>(cfg.get_int("quad.order", 16));
    const auto rows = read_quadruples(input);
    const EllipticityBounds& b = cost.bounds();
    const double delta0 = delta0_threshold(b.lambda, b.Lambda);
    const double slope = 4.0 * std::sqrt(b.Lambda / b.lambda);

    std::ofstream out = open_output(output);
    out << "row,delta,F,bound,status\n";
    int failures = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        // row roles: x = x, x0 = y, y2 = zeta, axis e = zeta - xi
        const Quadruple& q = rows[r];
        const Vec e = q.zeta - q.xi;
        std::string status = "skipped";
        double delta = 0.0, f = 0.0, bound = 0.0;
        if ((q.x - q.y).norm() > 0.0 && e.norm() > 0.0) {
            try {
                const FAngleResult res = F_angle(cost, q.y, q.x, e, q, order);
                delta = res.delta;
                f = res.F;
                if (delta <= delta0) {
                    bound = slope * delta;
                    status = (f <= bound + 1e-9) ? "pass" : "fail";
                    if (status == "fail") ++failures;
                }
            } catch (const std::domain_error&) {
                status = "degenerate";
            }
        }
        out << r << ',' << format_double(delta) << ',' << format_double(f) << ','
            << format_double(bound) << ',' << status << '\n';
    }
    std::cout << "rows=" << rows.size() << " failures=" << failures
              << " delta0=" << format_double(delta0) << "\n";
    return failures == 0 ? 0 : kExitViolation;
}

int run_rectify(const GlobalOpts& g, const std::string& input, long base_index, double radius,
                bool auto_shrink, const std::string& output) {
    const RunConfig cfg = load_config(g);
    const CostSpec cost = cost_from_config(cfg);
    auto pairs = read_pairs(input);
    if (pairs.empty()) throw std::runtime_error("empty pair file");
    if (pairs.front().first.size() != cost.dim())
        throw std::runtime_error("pair dimension != cost.dim");
    const double tol = cfg.get_double("tol.check", default_check_tol(cost, MultiMap(cost.dim())));
    const MonotoneSet s(cost.dim(), std::move(pairs), cost, tol);

    Chart chart;
    try {
        chart = auto_shrink ? build_chart_auto(cost, s, static_cast<std::size_t>(base_index), radius)
                            : build_chart(cost, s, static_cast<std::size_t>(base_index), radius);
    } catch (const ChartError& e) {
        std::cout << "violation,chart," << e.what() << "\n";
        return kExitViolation;
    }

    std::ofstream out = open_output(output);
    out << cost.dim() << '\n';
    for (const auto& [u, v] : chart.graph) {
        for (Eigen::Index i = 0; i < u.size(); ++i) out << format_double(u[i]) << ',';
        for (Eigen::Index i = 0; i < v.size(); ++i)
            out << format_double(v[i]) << (i + 1 < v.size() ? "," : "");
        out << '\n';
    }
    std::cout << "pairs=" << chart.graph.size() << " radius=" << format_double(chart.radius)
              << " epsilon=" << format_double(chart.epsilon)
              << " anorm_inv=" << format_double(chart.anorm_inv)
              << " lip=" << format_double(chart.lip) << "\n";
    return 0;
}

int run_measure(const GlobalOpts& g, const std::string& input, const std::string& density,
                const std::string& output) {
    const RunConfig cfg = load_config(g);
    const CostSpec cost = cost_from_config(cfg);
    const MultiMap t = read_map(input);
    if (t.dim() != cost.dim()) throw std::runtime_error("map dimension != cost.dim");
    const GridMeasure f = read_density(density);
    if (f.grid.dim() != cost.dim()) throw std::runtime_error("density dimension != cost.dim");
    const CellMap cm = rasterize(t, f.grid, f.grid);

    // canonical partition: the 2^n boxes obtained by splitting at the midpoints
    const int n = f.grid.dim();
    std::vector<std::vector<std::int64_t>> parts;
    const Vec mid = 0.5 * (f.grid.lo + f.grid.hi);
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec lo = f.grid.lo, hi = f.grid.hi;
        for (int d = 0; d < n; ++d)
            ((mask >> d) & 1) ? lo[d] = mid[d] : hi[d] = mid[d];
        parts.push_back(cells_in_box(f.grid, lo, hi));
    }
    std::ofstream out = open_output(output);
    out << "part,mass\n";
    std::vector<std::int64_t> all;
    double part_sum = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const double mass = pushforward(cm, f, parts[i]);
        part_sum += mass;
        for (std::int64_t c : parts[i]) all.push_back(c);
        out << i << ',' << format_double(mass) << '\n';
    }
    const double total = pushforward(cm, f, all);
    const double defect = additivity_defect(cm, f, parts);
    out << "total," << format_double(total) << '\n';
    out << "defect," << format_double(defect) << '\n';
    std::cout << "cells=" << f.grid.cell_count() << " dropped=" << cm.dropped_points
              << " total_mass=" << format_double(total) << " defect=" << format_double(defect)
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale toolbox for multivalued monotone maps under costs h(x-y)"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "key = value configuration file");
    app.add_option("--seed", g.seed, "seed override");
    app.add_option("--tol", g.tol, "check tolerance override");
    app.add_option("--quad-order", g.quad_order, "Gauss points per axis override");

    auto* validate = app.add_subcommand("validate-cost", "homogeneity and ellipticity report");
    int trials = 200, samples = 512;
    double margin = 1e-3;
    validate->add_option("--trials", trials, "homogeneity trials");
    validate->add_option("--samples", samples, "sphere sample count");
    validate->add_option("--margin", margin, "bounds margin");

    std::string input, output = "report.csv", density;
    auto* form = app.add_subcommand("form", "averaged matrix and weight over a quadruple batch");
    form->add_option("--input", input)->required();
    form->add_option("--output", output);

    auto* check = app.add_subcommand("check", "pairwise / cyclic monotonicity of a map file");
    int cyclic = 0;
    long max_graph = 10000;
    check->add_option("--input", input)->required();
    check->add_option("--cyclic", cyclic, "also check cycles up to this length");
    check->add_option("--max-graph", max_graph, "pairwise guard");

    auto* generate = app.add_subcommand("generate", "emit exact-assignment test data");
    int m = 16, dim = 1, grid = 0;
    double p = 2.0;
    generate->add_option("--m", m)->required();
    generate->add_option("--dim", dim)->required();
    generate->add_option("--p", p)->required();
    generate->add_option("--grid", grid, "contact-map grid resolution (0 = plain assignment)");
    generate->add_option("--output", output);

    auto* angles = app.add_subcommand("angles", "distorted-angle report for a quadruple batch");
    angles->add_option("--input", input)->required();
    angles->add_option("--output", output);

    auto* rectify = app.add_subcommand("rectify", "local Lipschitz chart of a monotone pair set");
    long base_index = 0;
    double radius = 1.0;
    bool auto_shrink = false;
    rectify->add_option("--input", input)->required();
    rectify->add_option("--base-index", base_index);
    rectify->add_option("--radius", radius);
    rectify->add_flag("--auto-shrink", auto_shrink);
    rectify->add_option("--output", output);

    auto* measure = app.add_subcommand("measure", "push-forward masses and additivity defect");
    measure->add_option("--input", input)->required();
    measure->add_option("--density", density)->required();
    measure->add_option("--output", output);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return run_validate_cost(g, trials, samples, margin);
        if (form->parsed()) return run_form(g, input, output);
        if (check->parsed()) return run_check(g, input, cyclic, max_graph);
        if (generate->parsed()) return run_generate(g, m, dim, p, grid, output);
        if (angles->parsed()) return run_angles(g, input, output);
        if (rectify->parsed()) return run_rectify(g, input, base_index, radius, auto_shrink, output);
        if (measure->parsed()) return run_measure(g, input, density, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
