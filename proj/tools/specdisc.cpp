// Experiment runner for the rearrangement/covering toolkit: wires the
// library modules to subcommands, emits JSON/CSV reports and plot data, and
// compares reports against goldens.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "specdisc/conditions.hpp"
#include "specdisc/densesys.hpp"
#include "specdisc/measure.hpp"
#include "specdisc/optcover.hpp"
#include "specdisc/polyhedron.hpp"
#include "specdisc/potentials.hpp"
#include "specdisc/rearrange.hpp"
#include "specdisc/report.hpp"
#include "specdisc/spectral.hpp"
#include "specdisc/util.hpp"

using json = nlohmann::json;
using namespace specdisc;

namespace {

struct CommonOpts {
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_dir = ".";
    std::string format = "json";
    std::string config_path;
    ExperimentConfig config;
};

std::filesystem::path resolve(const CommonOpts& common, const std::string& name) {
    std::filesystem::path p(name);
    if (p.is_absolute()) return p;
    return std::filesystem::path(common.out_dir) / p;
}

void write_text(const CommonOpts& common, const std::string& name, const std::string& text) {
    if (name.empty() || name == "-") {
        std::cout << text;
        return;
    }
    const auto path = resolve(common, name);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    out << text;
}

json base_report(const CommonOpts& common) {
    json j;
    j["tool"] = version();
    j["seed"] = common.seed;
    return j;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

struct LoadedSpace {
    WeightedSpace space;
    ScalarField field;
};

LoadedSpace load_space(const std::string& path, const std::string& field_path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open space file " + path);
    json doc = json::parse(in);
    std::vector<Atom> atoms;
    std::vector<double> values;
    for (const auto& a : doc.at("atoms")) {
        atoms.push_back(Atom{a.at("id").get<std::int64_t>(), a.at("mass").get<double>(),
                             a.value("value", 0.0)});
        values.push_back(atoms.back().value);
    }
    WeightedSpace space(std::move(atoms));
    if (doc.contains("total_mass")) {
        const double declared = doc["total_mass"].get<double>();
        if (std::abs(declared - space.total_mass()) > 1e-9 * std::max(1.0, declared))
            throw std::runtime_error("space file total_mass does not match the atom masses");
    }
    if (!field_path.empty()) {
        std::ifstream fin(field_path);
        if (!fin) throw std::runtime_error("cannot open field file " + field_path);
        json fdoc = json::parse(fin);
        values = fdoc.at("values").get<std::vector<double>>();
    }
    ScalarField field = ScalarField::from_values(space, std::move(values));
    return {std::move(space), std::move(field)};
}

json trace_to_json(const ConditionTrace& trace) {
    json j;
    j["condition"] = trace.condition;
    j["diverges"] = trace.diverges;
    j["strong"] = trace.strong;
    j["window"] = trace.window;
    j["points"] = json::array();
    for (const auto& p : trace.points) j["points"].push_back({{"index", p.index}, {"value", p.value}});
    return j;
}

std::string trace_to_csv(const ConditionTrace& trace) {
    std::ostringstream os;
    os.precision(17);
    os << "index,value,verdict\n";
    const char* verdict = trace.diverges ? "diverges" : "inconclusive";
    for (const auto& p : trace.points) os << p.index << "," << p.value << "," << verdict << "\n";
    return os.str();
}

FieldFn make_field(const std::string& name, double alpha, const std::string& rule_name, int dim) {
    if (name == "zero") return [](const std::vector<double>&) { return 0.0; };
    if (name == "quadratic")
        return [](const std::vector<double>& x) {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s;
        };
    if (name.rfind("constant:", 0) == 0) {
        const double c = std::stod(name.substr(9));
        return [c](const std::vector<double>&) { return c; };
    }
    if (name == "valpha") {
        auto pot = std::make_shared<ValphaPotential>(dim, alpha, AmplitudeRule::by_name(rule_name));
        return [pot](const std::vector<double>& x) { return (*pot)(x); };
    }
    throw std::invalid_argument("unknown potential '" + name + "'");
}

GammaFn make_gamma(const std::string& name, double a, int d) {
    if (name == "power") return [a](double r) { return std::pow(r, a); };
    if (name == "power-log") return [a](double r) { return std::pow(r, a) * std::log(1.0 / r); };
    if (name == "critical-log") {
        const double e = 2.0 * (static_cast<double>(d) - 2.0) / static_cast<double>(d);
        return [e](double r) { return std::pow(r, e) * std::log(1.0 / r); };
    }
    throw std::invalid_argument("unknown gamma rule '" + name + "'");
}

int cmd_rearrange(const CommonOpts& common, const std::string& space_path,
                  const std::string& field_path, const std::string& t_list,
                  const std::string& out) {
    auto loaded = load_space(space_path, field_path);
    DistributionProfile profile(loaded.field, loaded.space);
    std::ostringstream os;
    os.precision(17);
    os << "t,W_star,Wbar_star,kappa_minus\n";
    for (double t : parse_double_list(t_list)) {
        const auto strict = strict_sublevel(loaded.field, loaded.space, t);
        os << t << "," << profile.nondecreasing_value(t) << "," << profile.nonincreasing_value(t)
           << "," << strict.mass << "\n";
    }
    write_text(common, out, os.str());
    return 0;
}

int cmd_optcover(const CommonOpts& common, const std::string& space_path,
                 const std::string& field_path, double t, double theta, const std::string& out) {
    auto loaded = load_space(space_path, field_path);
    json report = base_report(common);
    const auto cover = optimal_cover(loaded.field, loaded.space, t);
    report["t"] = t;
    report["theta"] = theta;
    report["J"] = cover.value;
    report["level"] = cover.level;
    report["achieved_mass"] = cover.achieved_mass;
    if (loaded.space.size() <= 20)
        report["I_bruteforce"] = brute_force_cover_value(loaded.field, loaded.space, t);
    report["I_greedy"] = greedy_cover_value(loaded.field, loaded.space, t);
    const auto sandwich = cover_sandwich_check(loaded.field, loaded.space, t, theta);
    report["prop34"] = {{"lhs", sandwich.lower_bound},
                        {"j_left", sandwich.j_left},
                        {"j_right", sandwich.j_right},
                        {"rhs", sandwich.upper_bound},
                        {"ok", sandwich.ok}};
    write_text(common, out, report.dump(2) + "\n");
    return sandwich.ok ? 0 : 1;
}

int cmd_dense_verify(const CommonOpts& common, const std::string& system_name, int levels,
                     std::int64_t samples, const std::string& out) {
    DenseSystem system = cantor_system(levels);
    if (system_name == "cylinder") {
        system = cylinder_extend(system, 1);
    } else if (system_name == "product") {
        system = product_combine({cantor_system(std::min(levels, 5)),
                                  cantor_system(std::min(levels, 5))});
    } else if (system_name != "cantor") {
        throw std::invalid_argument("unknown system '" + system_name + "'");
    }

    SamplerConfig sampler;
    sampler.seed = common.seed;
    sampler.random_samples = samples;
    const auto report = verify_dense_system(system, sampler);

    json j = base_report(common);
    j["system"] = system_name;
    j["levels"] = levels;
    j["theta"] = system.theta.str();
    j["m"] = system.m;
    j["tested"] = report.tested;
    j["failed"] = report.failed;
    j["worst_halfwidth"] = report.worst_halfwidth.str();
    j["failures"] = json::array();
    for (const auto& f : report.failures) {
        json cube;
        cube["halfwidth"] = f.halfwidth.str();
        cube["center"] = json::array();
        for (const auto& c : f.center) cube["center"].push_back(c.str());
        j["failures"].push_back(cube);
    }
    write_text(common, out, j.dump() + "\n");
    return report.failed == 0 ? 0 : 1;
}

int cmd_potential(const CommonOpts& common, double alpha, const std::string& rule,
                  const std::string& eval_point, const std::string& cell, int j_level, int n_level,
                  bool fraction, const std::string& out) {
    json report = base_report(common);
    report["alpha"] = alpha;
    report["rule"] = rule;
    if (!eval_point.empty()) {
        const auto x = parse_double_list(eval_point);
        ValphaPotential pot(static_cast<int>(x.size()), alpha, AmplitudeRule::by_name(rule));
        const auto info = pot.locate(x);
        report["point"] = x;
        report["value"] = pot(x);
        report["cell"] = info.l;
        report["amplitude"] = info.amplitude;
    }
    if (!cell.empty()) {
        const auto l = parse_int_list(cell);
        ValphaPotential pot(static_cast<int>(l.size()), alpha, AmplitudeRule::by_name(rule));
        if (!fraction) throw std::invalid_argument("--cell requires --fraction");
        const auto f = cell_positive_fraction(pot, l, j_level, n_level);
        report["cell"] = l;
        report["j"] = j_level;
        report["n"] = n_level;
        report["analytic"] = f.analytic;
        report["measured"] = f.measured;
        report["exact_path"] = f.exact_path;
        if (f.exact_path) {
            report["analytic_exact"] = f.analytic_exact.str();
            report["measured_exact"] = f.measured_exact.str();
        }
    }
    write_text(common, out, report.dump(2) + "\n");
    return 0;
}

int cmd_polyhedron(const CommonOpts& common, const std::string& check, int d, double r,
                   std::int64_t res, int intervals, int boxes, int fields, double t, double delta,
                   const std::string& out) {
    json report = base_report(common);
    report["check"] = check;
    report["d"] = d;
    report["r"] = r;
    Ball ball{std::vector<double>(static_cast<std::size_t>(d), 0.0), r};
    std::mt19937_64 rng(common.seed);
    int exit_code = 0;

    if (check == "pushforward") {
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::vector<std::pair<double, double>> list;
        for (int i = 0; i < intervals; ++i) {
            double a = uni(rng), b = uni(rng);
            if (a > b) std::swap(a, b);
            if (b - a < 1e-3) b = std::min(1.0, a + 1e-3);
            list.push_back({a, b});
        }
        std::vector<std::int64_t> base(static_cast<std::size_t>(d), res / 2);
        base[0] = res;
        auto fine = base;
        for (auto& v : fine) v *= 2;
        const auto coarse_report = pushforward_check(d, ball, base, list);
        const auto fine_report = pushforward_check(d, ball, fine, list);
        report["resolution"] = base;
        report["max_discrepancy"] = coarse_report.max_discrepancy;
        report["refined_max_discrepancy"] = fine_report.max_discrepancy;
        report["halving_ratio"] = fine_report.max_discrepancy / coarse_report.max_discrepancy;
    } else if (check == "dominance") {
        DistortedMeasure mu(d, ball);
        DistortedGrid grid(mu, std::vector<std::int64_t>(static_cast<std::size_t>(d), res));
        std::uniform_real_distribution<double> uni(-r, r);
        std::vector<Box> regions;
        for (int i = 0; i < boxes; ++i) {
            Box b;
            for (int k = 0; k < d; ++k) {
                double lo = uni(rng), hi = uni(rng);
                if (lo > hi) std::swap(lo, hi);
                b.lo.push_back(lo);
                b.hi.push_back(hi == lo ? lo + 0.05 * r : hi);
            }
            regions.push_back(std::move(b));
        }
        const auto dom = capacity_dominance_check(grid, regions);
        report["resolution"] = res;
        report["boxes"] = boxes;
        report["min_margin"] = dom.min_margin;
        report["tolerance"] = 1e-6;
        report["ok"] = dom.min_margin >= -1e-6;
        if (dom.min_margin < -1e-6) exit_code = 1;
    } else if (check == "lemma42") {
        DistortedMeasure mu(d, ball);
        std::uniform_real_distribution<double> uni(0.0, 5.0);
        std::uniform_real_distribution<double> tpick(0.05, 0.95);
        int violations = 0;
        double worst = 1e300;
        for (int i = 0; i < fields; ++i) {
            std::vector<double> slabs(8);
            for (double& v : slabs) v = uni(rng);
            const double tt = t > 0.0 ? t : tpick(rng);
            const auto res42 = rearrangement_transfer_check(mu, slabs, tt, delta);
            worst = std::min(worst, res42.lhs - res42.rhs);
            if (!res42.ok) ++violations;
        }
        const auto ratio = subcube_mass_ratio(mu, transfer_subcube(ball), delta);
        report["fields"] = fields;
        report["delta"] = delta;
        report["kappa"] = ratio.kappa;
        report["q"] = ratio.q;
        report["violations"] = violations;
        report["worst_margin"] = worst;
        report["tolerance"] = 1e-9;
        if (violations > 0) exit_code = 1;
    } else {
        throw std::invalid_argument("unknown polyhedron check '" + check + "'");
    }
    write_text(common, out, report.dump(2) + "\n");
    return exit_code;
}

int cmd_conditions(const CommonOpts& common, const std::string& which, const std::string& out,
                   const std::string& csv_out, double alpha, const std::string& rule,
                   const std::string& n_range, const std::string& l_range, double r,
                   std::int64_t res, const std::string& gamma_name, double gamma_alpha,
                   double delta, double c_level, int d, const std::string& potential_name,
                   const std::string& centers_range) {
    json report = base_report(common);
    report["which"] = which;
    std::string csv;
    int exit_code = 0;

    const auto centers = [&]() {
        const auto [lo, hi] = parse_range(centers_range);
        std::vector<std::vector<double>> ys;
        for (std::int64_t k = lo; k <= hi; ++k)
            ys.push_back({static_cast<double>(k) + 0.5, 0.5, 0.5});
        return ys;
    };

    if (which == "thm35" || which == "thm36") {
        const auto V = make_field(potential_name, alpha, rule, 3);
        const auto gamma = make_gamma(gamma_name, gamma_alpha, d);
        const ConditionTrace trace =
            which == "thm35" ? cover_condition_trace(V, gamma, centers(), r, res)
                             : rearrangement_condition_trace(V, gamma, centers(), r, res);
        report["trace"] = trace_to_json(trace);
        csv = trace_to_csv(trace);
    } else if (which == "thm313") {
        ValphaPotential pot(d, alpha, AmplitudeRule::by_name(rule));
        const auto [n_lo, n_hi] = parse_range(n_range);
        const auto [l_lo, l_hi] = parse_range(l_range);
        std::vector<std::vector<std::int64_t>> ls;
        for (std::int64_t l = l_lo; l <= l_hi; ++l) {
            std::vector<std::int64_t> vec(static_cast<std::size_t>(d), 0);
            vec[0] = l;
            ls.push_back(std::move(vec));
        }
        const auto gamma = make_gamma("power", alpha, d);
        const auto trace = madic_condition_trace(pot, gamma, alpha, static_cast<int>(n_hi), ls);
        (void)n_lo;
        report["trace"] = trace_to_json(trace);
        csv = trace_to_csv(trace);
    } else if (which == "gmd") {
        const auto V = make_field(potential_name, alpha, rule, 3);
        const auto points = averaged_superlevel_check(V, delta, c_level, r, centers(), res);
        report["points"] = json::array();
        std::ostringstream os;
        os.precision(17);
        os << "index,value,verdict\n";
        for (const auto& p : points) {
            report["points"].push_back(
                {{"center", p.center}, {"ratio", p.ratio}, {"ok", p.ok}});
            double idx = 0.0;
            for (double v : p.center) idx = std::max(idx, std::abs(v));
            os << idx << "," << p.ratio << "," << (p.ok ? "holds" : "fails") << "\n";
        }
        csv = os.str();
    } else if (which == "ex54") {
        const auto [n_lo, n_hi] = parse_range(n_range);
        const auto [l_lo, l_hi] = parse_range(l_range);
        const auto rep = counterexample_madic_vs_average(
            alpha, AmplitudeRule::by_name(rule), static_cast<int>(n_lo), static_cast<int>(n_hi), 2,
            l_lo, l_hi, d);
        report["trace_matches"] = rep.trace_matches;
        report["ratios_decreasing"] = rep.ratios_decreasing;
        report["trace"] = json::array();
        for (std::size_t i = 0; i < rep.trace_values.size(); ++i)
            report["trace"].push_back({{"l", rep.l_sup_norms[i]},
                                       {"value", rep.trace_values[i]},
                                       {"expected", rep.expected_amplitudes[i]}});
        report["ratios"] = json::array();
        std::ostringstream os;
        os.precision(17);
        os << "index,value,verdict\n";
        for (std::size_t i = 0; i < rep.n_values.size(); ++i) {
            json row = {{"n", rep.n_values[i]}, {"ratio", rep.ratios[i]}};
            if (rep.ratios_exact_valid) row["ratio_exact"] = rep.ratios_exact[i].str();
            report["ratios"].push_back(row);
            os << rep.n_values[i] << "," << rep.ratios[i] << ","
               << (rep.ratios_decreasing ? "decreasing" : "violated") << "\n";
        }
        csv = os.str();
        if (!rep.trace_matches || !rep.ratios_decreasing) exit_code = 1;
    } else if (which == "ex55") {
        const auto [j_lo, j_hi] = parse_range(n_range.empty() ? "1..12" : n_range);
        const auto gamma_hat = make_gamma(gamma_name == "power" ? "critical-log" : gamma_name,
                                          gamma_alpha, d);
        const auto rep = counterexample_small_support(d, alpha, gamma_hat,
                                                      static_cast<int>(j_lo),
                                                      static_cast<int>(j_hi));
        report["first_all_zero"] = rep.first_all_zero;
        report["divergence_increasing"] = rep.divergence_increasing;
        report["madic_value"] = rep.madic_value;
        report["madic_expected"] = rep.madic_expected;
        report["rows"] = json::array();
        std::ostringstream os;
        os.precision(17);
        os << "index,value,verdict\n";
        for (const auto& row : rep.rows) {
            report["rows"].push_back({{"j", row.j},
                                      {"r", row.r},
                                      {"threshold", row.threshold},
                                      {"positive_mass", row.positive_mass},
                                      {"rearrangement_zero", row.rearrangement_zero},
                                      {"divergence_ratio", row.divergence_ratio}});
            os << row.j << "," << row.divergence_ratio << ","
               << (row.rearrangement_zero ? "zero" : "positive") << "\n";
        }
        csv = os.str();
        if (rep.first_all_zero < 0 || !rep.divergence_increasing) exit_code = 1;
    } else {
        throw std::invalid_argument("unknown condition '" + which + "'");
    }

    write_text(common, out, report.dump(2) + "\n");
    if (!csv_out.empty()) write_text(common, csv_out, csv);
    return exit_code;
}

int cmd_spectral(const CommonOpts& common, const std::string& potential_name, double alpha,
                 const std::string& rule, const std::string& windows_range, std::int64_t res,
                 double edge, int k, const std::string& out) {
    const auto V = make_field(potential_name, alpha, rule, 3);
    const auto [lo, hi] = parse_range(windows_range);
    std::ostringstream os;
    os.precision(17);
    os << "window";
    for (int i = 0; i < k; ++i) os << ",lambda" << i;
    os << "\n";
    for (std::int64_t w = lo; w <= hi; ++w) {
        Cube window{{static_cast<double>(w) + 0.5, 0.5, 0.5}, edge / 2.0};
        const Box box = window.to_box();
        const double h = edge / static_cast<double>(res);
        DiscreteHamiltonian op(V, box, h);
        const auto eig = lowest_eigenvalues(op, k);
        os << w;
        for (double v : eig.values) os << "," << v;
        os << "\n";
    }
    write_text(common, out, os.str());
    return 0;
}

int cmd_golden(const CommonOpts& common, const std::string& report_path,
               const std::string& golden_path, double atol, double rtol) {
    const auto read = [&](const std::string& name) {
        std::ifstream in(resolve(common, name));
        if (!in) throw std::runtime_error("cannot open " + name);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    const auto diffs = golden_compare(read(report_path), read(golden_path), atol, rtol);
    for (const auto& d : diffs)
        std::cout << d.path << ": " << d.actual << " != " << d.expected << "\n";
    if (diffs.empty()) std::cout << "golden: no differences\n";
    return diffs.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rearrangement and covering toolkit for Schrodinger spectrum conditions"};
    app.require_subcommand(1);

    CommonOpts common;
    if (const char* env = std::getenv("SPECDISC_THREADS")) common.threads = std::atoi(env);
    app.add_option("--seed", common.seed, "seed fixing all sampling");
    app.add_option("--threads", common.threads, "worker threads (results identical for any value)");
    app.add_option("--out-dir", common.out_dir, "directory for output files");
    app.add_option("--format", common.format, "default report format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", common.config_path, "key=value config file with defaults");

    // rearrange
    std::string space_path, field_path, t_list, out;
    auto* rearr = app.add_subcommand("rearrange", "rearrangements of a serialized space");
    rearr->add_option("--space", space_path, "space JSON file")->required();
    rearr->add_option("--field", field_path, "field JSON file (defaults to atom values)");
    rearr->add_option("--t-list", t_list, "comma separated mass thresholds")->required();
    rearr->add_option("--out", out, "output CSV path");

    // optcover
    double t = 0.5, theta = 2.0;
    auto* cover = app.add_subcommand("optcover", "covering value, oracles and two-sided bounds");
    cover->add_option("--space", space_path, "space JSON file")->required();
    cover->add_option("--field", field_path, "field JSON file");
    cover->add_option("--t", t, "mass constraint")->required();
    cover->add_option("--theta", theta, "pinch parameter > 1");
    cover->add_option("--out", out, "output JSON path");

    // polyhedron
    std::string check = "dominance";
    int dim = 3, intervals = 100, boxes = 1000, fields = 100;
    double radius = 1.0, delta = 0.5;
    std::int64_t res = 128;
    auto* poly = app.add_subcommand("polyhedron", "distorted-measure checks");
    poly->add_option("--check", check, "pushforward | dominance | lemma42")->required();
    poly->add_option("--d", dim, "dimension (3..5)");
    poly->add_option("--r", radius, "ball radius");
    poly->add_option("--res", res, "grid resolution");
    poly->add_option("--intervals", intervals, "intervals for the pushforward check");
    poly->add_option("--boxes", boxes, "sampled boxes for the dominance check");
    poly->add_option("--fields", fields, "random fields for the transfer check");
    poly->add_option("--t", t, "mass fraction for the transfer check (random if unset)");
    poly->add_option("--delta", delta, "weight level for the transfer check");
    poly->add_option("--out", out, "output JSON path");

    // dense-verify
    std::string system_name = "cantor";
    int levels = 8;
    std::int64_t samples = 10000;
    auto* dense = app.add_subcommand("dense-verify", "sampled dense-system verification");
    dense->add_option("--system", system_name, "cantor | cylinder | product");
    dense->add_option("--levels", levels, "construction depth");
    dense->add_option("--samples", samples, "random samples");
    dense->add_option("--out", out, "output JSON path");

    // potential
    double alpha = 1.0;
    std::string rule = "one-plus-linf", eval_point, cell;
    int j_level = 1, n_level = 1;
    bool fraction = false;
    auto* pot = app.add_subcommand("potential", "oscillating potential evaluation");
    pot->add_option("--alpha", alpha, "duty exponent in (0,2)");
    pot->add_option("--N-rule", rule, "amplitude rule: linf|one-plus-linf|log|sqrt");
    pot->add_option("--eval", eval_point, "point x1,..,xd");
    pot->add_option("--cell", cell, "lattice cube l1,..,ld");
    pot->add_option("--j", j_level, "band level");
    pot->add_option("--n", n_level, "partition level");
    pot->add_flag("--fraction", fraction, "report the cell positive fraction");
    pot->add_option("--out", out, "output JSON path");

    // conditions
    std::string which, n_range = "1..6", l_range = "3..8", gamma_name = "power",
                potential_name = "valpha", centers_range = "1..8", csv_out;
    double gamma_alpha = 1.0, c_level = 0.1;
    double cond_r = 0.3;
    std::int64_t cond_res = 5;
    auto* cond = app.add_subcommand("conditions", "discreteness condition traces");
    cond->add_option("--which", which, "thm35|thm36|thm313|gmd|ex54|ex55")->required();
    cond->add_option("--alpha", alpha, "potential duty exponent");
    cond->add_option("--N-rule", rule, "amplitude rule");
    cond->add_option("--n", n_range, "level range a..b");
    cond->add_option("--l", l_range, "lattice range a..b");
    cond->add_option("--r", cond_r, "domain radius");
    cond->add_option("--res", cond_res, "grid resolution per axis");
    cond->add_option("--gamma", gamma_name, "gamma rule: power|power-log|critical-log");
    cond->add_option("--gamma-alpha", gamma_alpha, "gamma rule exponent");
    cond->add_option("--delta", delta, "averaged-superlevel delta");
    cond->add_option("--c", c_level, "averaged-superlevel threshold c");
    cond->add_option("--d", dim, "ambient dimension");
    cond->add_option("--V", potential_name, "potential: valpha|quadratic|zero|constant:c");
    cond->add_option("--centers", centers_range, "center sup-norm range a..b");
    cond->add_option("--out", out, "output JSON path");
    cond->add_option("--csv", csv_out, "output CSV path");

    // spectral
    std::string windows_range = "2..8";
    std::int64_t sres = 24;
    double edge = 8.0;
    int klow = 1;
    auto* spec = app.add_subcommand("spectral", "window ground-energy traces");
    spec->add_option("--potential", potential_name, "valpha|quadratic|zero|constant:c");
    spec->add_option("--alpha", alpha, "potential duty exponent");
    spec->add_option("--N-rule", rule, "amplitude rule");
    spec->add_option("--windows", windows_range, "window index range a..b");
    spec->add_option("--res", sres, "grid points per axis");
    spec->add_option("--edge", edge, "window edge length");
    spec->add_option("--k", klow, "number of eigenvalues");
    spec->add_option("--out", out, "output CSV path");

    // golden
    std::string report_path, golden_path;
    double atol = 1e-12, rtol = 1e-12;
    auto* golden = app.add_subcommand("golden", "tolerance-aware report comparison");
    golden->add_option("--report", report_path, "report JSON")->required();
    golden->add_option("--golden", golden_path, "golden JSON")->required();
    golden->add_option("--atol", atol, "absolute tolerance");
    golden->add_option("--rtol", rtol, "relative tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!common.config_path.empty()) {
            common.config = ExperimentConfig::parse_file(common.config_path);
            // Config supplies defaults for the frequently swept knobs.
            alpha = common.config.get_double("alpha", alpha);
            rule = common.config.get_string("rule", rule);
            n_range = common.config.get_string("n", n_range);
            l_range = common.config.get_string("l", l_range);
            cond_r = common.config.get_double("r", cond_r);
            cond_res = common.config.get_int("res", cond_res);
            gamma_name = common.config.get_string("gamma", gamma_name);
            gamma_alpha = common.config.get_double("gamma-alpha", gamma_alpha);
            common.seed = static_cast<std::uint64_t>(
                common.config.get_int("seed", static_cast<std::int64_t>(common.seed)));
        }
        set_worker_threads(common.threads);

        if (*rearr) return cmd_rearrange(common, space_path, field_path, t_list, out);
        if (*cover) return cmd_optcover(common, space_path, field_path, t, theta, out);
        if (*poly)
            return cmd_polyhedron(common, check, dim, radius, res, intervals, boxes, fields,
                                  poly->count("--t") ? t : -1.0, delta, out);
        if (*dense) return cmd_dense_verify(common, system_name, levels, samples, out);
        if (*pot)
            return cmd_potential(common, alpha, rule, eval_point, cell, j_level, n_level, fraction,
                                 out);
        if (*cond)
            return cmd_conditions(common, which, out, csv_out, alpha, rule, n_range, l_range,
                                  cond_r, cond_res, gamma_name, gamma_alpha, delta, c_level, dim,
                                  potential_name, centers_range);
        if (*spec)
            return cmd_spectral(common, potential_name, alpha, rule, windows_range, sres, edge,
                                klow, out);
        if (*golden) return cmd_golden(common, report_path, golden_path, atol, rtol);
    } catch (const ConfigParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
