#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <sstream>

#include "secrecy/errors.hpp"
#include "secrecy/sim.hpp"
#include "secrecy/specfile.hpp"
#include "secrecy/theorems.hpp"

namespace secrecy::cli {

namespace {

namespace fs = std::filesystem;

struct RegionOptions {
    std::string spec_path;
    std::string mode;
    std::string cascade_path;
    std::string out_dir = ".";
    std::size_t grid = 2000;
    std::size_t budget = 5000;
    std::string sizes = "2,2,2,2";
    std::uint64_t seed = 0;
    bool convexify = false;
};

std::array<std::size_t, 4> parse_sizes(const std::string& s) {
    std::array<std::size_t, 4> out{};
    std::istringstream is(s);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(is, tok, ',')) {
        if (i >= 4) throw input_error("--sizes: expected four comma-separated integers");
        const long v = std::atol(tok.c_str());
        if (v < 1) throw input_error("--sizes: entries must be >= 1");
        out[i++] = static_cast<std::size_t>(v);
    }
    if (i != 4) throw input_error("--sizes: expected four comma-separated integers");
    return out;
}

void write_region_files(const fs::path& dir, const std::string& stem, const RateRegion2D& r) {
    write_text_file((dir / (stem + ".csv")).string(), region_to_csv(r));
    write_text_file((dir / (stem + ".halfplanes.txt")).string(), halfplanes_to_text(r));
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw input_error("cannot create output directory '" + dir + "'");
}

int cmd_channel_check(const std::string& spec_path, std::ostream& out) {
    const BroadcastChannel ch = parse_channel_file(read_text_file(spec_path));
    out << "parse = ok\n";
    out << "alphabet = x:" << ch.card_x << " y1:" << ch.card_y1 << " y2:" << ch.card_y2
        << " z:" << ch.card_z << "\n";
    out << "deterministic.y1 = " << (is_deterministic(ch, Output::Y1) ? "yes" : "no") << "\n";
    out << "deterministic.y2 = " << (is_deterministic(ch, Output::Y2) ? "yes" : "no") << "\n";
    out << "deterministic.z = " << (is_deterministic(ch, Output::Z) ? "yes" : "no") << "\n";
    for (const auto order : kAllOrders)
        out << "degraded." << order_name(order) << " = "
            << (check_degradedness(ch, order) ? "yes" : "no") << "\n";
    return 0;
}

int cmd_region(const RegionOptions& opt, std::ostream& out) {
    const BroadcastChannel ch = parse_channel_file(read_text_file(opt.spec_path));
    ensure_dir(opt.out_dir);
    const fs::path dir(opt.out_dir);

    if (opt.mode == "thm1-single-cascade") {
        if (opt.cascade_path.empty())
            throw input_error("mode thm1-single-cascade requires --cascade");
        const AuxiliaryCascade cas = parse_cascade_file(read_text_file(opt.cascade_path));
        RateRegion2D region = eval_theorem1(ch, cas);
        if (opt.convexify) region = region_union({region}, true);
        write_region_files(dir, "region", region);
        out << "vertices = " << region.vertices.size() << "\n";
        return 0;
    }
    if (opt.mode == "thm1-search") {
        const auto sizes = parse_sizes(opt.sizes);
        SearchParams sp;
        sp.budget = opt.budget;
        sp.size_u = sizes[0];
        sp.size_v = sizes[1];
        sp.size_v1 = sizes[2];
        sp.size_v2 = sizes[3];
        sp.seed = opt.seed;
        sp.convexify = opt.convexify;
        const RateRegion2D region = inner_bound_search(ch, sp);
        write_region_files(dir, "region", region);
        out << "vertices = " << region.vertices.size() << "\n";
        return 0;
    }
    if (opt.mode == "thm2" || opt.mode == "thm3") {
        const auto grid = default_px_grid(ch.card_x, opt.grid, opt.seed);
        RateRegion2D region = opt.mode == "thm2" ? capacity_region_thm2(ch, grid)
                                                 : capacity_region_thm3(ch, grid);
        if (opt.convexify) region = region_union({region}, true);
        write_region_files(dir, "region", region);
        out << "vertices = " << region.vertices.size() << "\n";
        return 0;
    }
    if (opt.mode == "subregions") {
        const auto grid = default_px_grid(ch.card_x, opt.grid, opt.seed);
        const bool thm2_family =
            check_degradedness(ch, DegradednessOrder::Y2_Y1_Z) ||
            check_degradedness(ch, DegradednessOrder::Y2_Z_Y1) ||
            check_degradedness(ch, DegradednessOrder::Z_Y2_Y1);
        const std::array<Subregion, 4> which =
            thm2_family ? std::array<Subregion, 4>{Subregion::R1a, Subregion::R1b, Subregion::R1c,
                                                   Subregion::R1d}
                        : std::array<Subregion, 4>{Subregion::R2a, Subregion::R2b, Subregion::R2c,
                                                   Subregion::R2d};
        const RateRegion2D capacity =
            thm2_family ? capacity_region_thm2(ch, grid) : capacity_region_thm3(ch, grid);

        std::vector<RateRegion2D> all;
        for (const Subregion s : which) {
            std::vector<RateRegion2D> members(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) members[i] = subregion(ch, grid[i], s);
            const RateRegion2D u = region_union(members);
            all.push_back(u);
            write_region_files(dir, std::string("sub_") + subregion_name(s), u);
            out << "identification." << subregion_name(s) << " = "
                << subregion_identification(s) << "\n";
        }
        const RateRegion2D u = region_union(all, opt.convexify);
        write_region_files(dir, "union", u);
        write_region_files(dir, "capacity", capacity);
        const bool fwd = region_subset(u, capacity, 1e-9);
        const bool bwd = region_subset(capacity, u, 0.02);
        out << "union subset of capacity: " << (fwd ? "PASS" : "FAIL") << "\n";
        out << "capacity subset of union (within 0.02): " << (bwd ? "PASS" : "FAIL") << "\n";
        return 0;
    }
    throw input_error("unknown --mode '" + opt.mode +
                      "' (expected thm1-single-cascade, thm1-search, thm2, thm3, subregions)");
}

int cmd_fm_derive(const std::string& spec_path, const std::string& cascade_path,
                  bool include_redundant, const std::string& out_dir, std::ostream& out) {
    const BroadcastChannel ch = parse_channel_file(read_text_file(spec_path));
    const AuxiliaryCascade cas = parse_cascade_file(read_text_file(cascade_path));
    ensure_dir(out_dir);
    const fs::path dir(out_dir);

    const Theorem1Terms terms = compute_theorem1_terms(ch, cas);
    std::ostringstream trace;

    auto run_elimination = [&](bool with_flag, bool log) {
        LinSystem sys = build_appendixA_system(terms, with_flag);
        if (log) trace << "# initial system\n" << sys.to_text() << "\n";
        std::vector<std::string> to_remove = appendixA_aux_vars();
        while (!to_remove.empty()) {
            // mirror eliminate_all's greedy order so the trace matches it
            std::size_t best = 0;
            long best_cost = -1;
            for (std::size_t k = 0; k < to_remove.size(); ++k) {
                bool in_eq = false;
                long nl = 0, nu = 0;
                for (const auto& r : sys.ineqs) {
                    if (!r.mentions(to_remove[k])) continue;
                    if (r.rel == Rel::EQ) in_eq = true;
                    else if (r.coeff(to_remove[k]) > 0) ++nu;
                    else ++nl;
                }
                const long cost = in_eq ? 0 : nl * nu + nl + nu + 1;
                if (best_cost < 0 || cost < best_cost) {
                    best_cost = cost;
                    best = k;
                }
            }
            const std::string var = to_remove[best];
            to_remove.erase(to_remove.begin() + static_cast<std::ptrdiff_t>(best));
            sys = remove_redundant(eliminate(sys, var));
            if (log) {
                trace << "# after eliminating " << var << " (" << sys.ineqs.size()
                      << " rows)\n";
                trace << sys.to_text() << "\n";
            }
        }
        if (log) {
            trace << "# final variables:";
            for (const auto& v : sys.vars) trace << " " << v;
            trace << "\n";
        }
        return project_to_region(sys);
    };

    const RateRegion2D region = run_elimination(false, true);
    write_text_file((dir / "derived.csv").string(), region_to_csv(region));
    write_text_file((dir / "derived.halfplanes.txt").string(), halfplanes_to_text(region));
    write_text_file((dir / "trace.txt").string(), trace.str());
    out << "vertices = " << region.vertices.size() << "\n";

    if (include_redundant) {
        const RateRegion2D with_extra = run_elimination(true, false);
        const bool unchanged = vertex_hausdorff(region, with_extra) <= 1e-9;
        write_text_file((dir / "derived_with_redundant.csv").string(),
                        region_to_csv(with_extra));
        out << "region unchanged: " << (unchanged ? "true" : "false") << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string& spec_path, const std::string& cascade_path,
                 const std::string& config_path, const SimConfig& overrides,
                 const std::vector<bool>& overridden, const std::string& out_dir,
                 std::ostream& out) {
    SimConfig cfg;
    if (!config_path.empty()) cfg = parse_sim_config(read_text_file(config_path));
    // flag overrides: n, trials, eps, eps_prime, seed
    if (overridden[0]) cfg.params.n = overrides.params.n;
    if (overridden[1]) cfg.trials = overrides.trials;
    if (overridden[2]) cfg.params.eps = overrides.params.eps;
    if (overridden[3]) cfg.params.eps_prime = overrides.params.eps_prime;
    if (overridden[4]) cfg.seed = overrides.seed;

    cfg.params.channel = parse_channel_file(read_text_file(spec_path));
    cfg.params.cascade = parse_cascade_file(read_text_file(cascade_path));
    ensure_dir(out_dir);

    const SimulationReport rep = run_trials(cfg.params, cfg.trials, cfg.seed, cfg.threads);
    const fs::path dir(out_dir);
    write_text_file((dir / "report.txt").string(), rep.serialize());
    write_text_file((dir / "events.csv").string(), rep.events_csv());
    out << rep.serialize();
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"individual-secrecy rate region toolkit for two-receiver broadcast "
                 "channels with one-sided receiver side information"};
    app.require_subcommand(1);

    std::string check_spec;
    CLI::App* check = app.add_subcommand("channel-check",
                                         "parse a channel spec and report determinism and "
                                         "degradedness orderings");
    check->add_option("spec", check_spec, "channel spec file")->required();

    RegionOptions ropt;
    CLI::App* region = app.add_subcommand("region", "compute rate regions and export CSV");
    region->add_option("spec", ropt.spec_path, "channel spec file")->required();
    region->add_option("--mode", ropt.mode,
                       "thm1-single-cascade | thm1-search | thm2 | thm3 | subregions")
        ->required();
    region->add_option("--cascade", ropt.cascade_path, "auxiliary cascade file");
    region->add_option("--grid", ropt.grid, "p(x) grid size");
    region->add_option("--budget", ropt.budget, "cascade sample budget");
    region->add_option("--sizes", ropt.sizes, "auxiliary alphabet bounds u,v,v1,v2");
    region->add_option("--seed", ropt.seed, "random seed");
    region->add_flag("--convexify", ropt.convexify, "convex hull of the union");
    region->add_option("--out", ropt.out_dir, "output directory");

    std::string fm_spec, fm_cascade, fm_out = ".";
    bool fm_redundant = false;
    CLI::App* fm = app.add_subcommand("fm-derive",
                                      "derive the rate region from the raw constraint system "
                                      "by variable elimination");
    fm->add_option("spec", fm_spec, "channel spec file")->required();
    fm->add_option("--cascade", fm_cascade, "auxiliary cascade file")->required();
    fm->add_flag("--include-redundant", fm_redundant,
                 "also add the two redundant secrecy rows and report whether the region changes");
    fm->add_option("--out", fm_out, "output directory");

    std::string sim_spec, sim_cascade, sim_config, sim_out = ".";
    SimConfig overrides;
    CLI::App* sim = app.add_subcommand("simulate", "run the coding-scheme simulator");
    sim->add_option("spec", sim_spec, "channel spec file")->required();
    sim->add_option("--cascade", sim_cascade, "auxiliary cascade file")->required();
    sim->add_option("--config", sim_config, "simulation config file");
    auto* o_n = sim->add_option("--n", overrides.params.n, "blocklength");
    auto* o_trials = sim->add_option("--trials", overrides.trials, "trial count");
    auto* o_eps = sim->add_option("--eps", overrides.params.eps, "decoder typicality slack");
    auto* o_epsp =
        sim->add_option("--eps-prime", overrides.params.eps_prime, "encoder typicality slack");
    auto* o_seed = sim->add_option("--seed", overrides.seed, "random seed");
    sim->add_option("--out", sim_out, "output directory");

    std::vector<const char*> argv_store;
    argv_store.push_back("secrecy-toolkit");
    for (const auto& a : args) argv_store.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv_store.size()), argv_store.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (check->parsed()) return cmd_channel_check(check_spec, out);
        if (region->parsed()) return cmd_region(ropt, out);
        if (fm->parsed()) return cmd_fm_derive(fm_spec, fm_cascade, fm_redundant, fm_out, out);
        if (sim->parsed()) {
            const std::vector<bool> overridden = {o_n->count() > 0, o_trials->count() > 0,
                                                  o_eps->count() > 0, o_epsp->count() > 0,
                                                  o_seed->count() > 0};
            return cmd_simulate(sim_spec, sim_cascade, sim_config, overrides, overridden, sim_out,
                                out);
        }
        err << "no subcommand given\n";
        return 2;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const infeasible_error& e) {
        err << "infeasible: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace secrecy::cli
