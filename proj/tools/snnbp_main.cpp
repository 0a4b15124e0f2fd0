// snnbp command-line tool: code construction, BER simulation, threshold
// sweeps, and SCNU characterization. Batch-oriented: every run writes its
// outputs next to a manifest recording the resolved configuration.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "snnbp/snnbp.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace snnbp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitAborted = 4;

// "a:b:c" (start:step:stop, inclusive), "x,y,z", or a single value.
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    auto parse_one = [](const std::string& s) {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw config_error("bad number in grid: '" + s + "'");
        return v;
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (std::size_t p = text.find(':'); p != std::string::npos; p = text.find(':', start)) {
            parts.push_back(text.substr(start, p - start));
            start = p + 1;
        }
        parts.push_back(text.substr(start));
        if (parts.size() != 3) throw config_error("range grid must be start:step:stop");
        const double lo = parse_one(parts[0]), step = parse_one(parts[1]), hi = parse_one(parts[2]);
        if (!(step > 0.0)) throw config_error("grid step must be positive");
        for (double v = lo; v <= hi + step * 1e-9; v += step) out.push_back(v);
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t comma = text.find(',', start);
            std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
            if (!tok.empty()) out.push_back(parse_one(tok));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (out.empty()) throw config_error("empty grid");
    return out;
}

// Relative outputs land in $SNNBP_OUTDIR when set.
fs::path resolve_output(const std::string& name) {
    fs::path p(name);
    if (p.is_absolute()) return p;
    if (const char* dir = std::getenv("SNNBP_OUTDIR")) return fs::path(dir) / p;
    return p;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

struct Manifest {
    std::string command;
    json config;
    std::uint64_t master_seed = 0;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void write(const fs::path& path) const {
        json m;
        m["tool"] = "snnbp";
        m["version"] = kVersion;
        m["command"] = command;
        m["config"] = config;
        m["master_seed"] = master_seed;
        m["outputs"] = outputs;
        m["timings"]["wall_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                  t0)
                .count();
        write_file(path, m.dump(2) + "\n");
    }
};

// ---- code source -----------------------------------------------------------

struct CodeSourceOpts {
    std::string alist_path;
    int n = 0, dv = 0, dc = 0;
    std::uint64_t code_seed = 1;
    int max_restarts = 1000;
    int retry_budget = 100;
    double rate_override = -1.0;  // <0: use declared (n - m)/n

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--code", alist_path, "Parity-check matrix in alist format");
        cmd->add_option("--n", n, "Block length for on-the-fly construction");
        cmd->add_option("--dv", dv, "VN degree");
        cmd->add_option("--dc", dc, "CN degree");
        cmd->add_option("--code-seed", code_seed, "Construction seed");
        cmd->add_option("--max-restarts", max_restarts, "Construction restart budget");
        cmd->add_option("--retry-budget", retry_budget, "Column retry budget");
        cmd->add_option("--rate", rate_override,
                        "Channel rate override (default: declared (n-m)/n)");
    }

    TannerGraph resolve(std::string& descriptor, double& rate) const {
        TannerGraph g;
        if (!alist_path.empty()) {
            g = load_alist_file(alist_path);
            descriptor = fs::path(alist_path).filename().string();
        } else {
            if (n <= 0 || dv <= 0 || dc <= 0)
                throw config_error("give either --code or --n/--dv/--dc");
            ConstructParams p;
            p.n = n;
            p.dv = dv;
            p.dc = dc;
            p.seed = code_seed;
            p.max_restarts = max_restarts;
            p.column_retry_budget = retry_budget;
            g = construct_regular_code(p);
            descriptor = "(" + std::to_string(n) + "-" + std::to_string(dv) + "-" +
                         std::to_string(dc) + ")s" + std::to_string(code_seed);
        }
        rate = rate_override > 0.0
                   ? rate_override
                   : static_cast<double>(g.n_vns() - g.n_cns()) / g.n_vns();
        return g;
    }

    json to_json() const {
        json j;
        if (!alist_path.empty()) {
            j["alist"] = alist_path;
        } else {
            j["n"] = n;
            j["dv"] = dv;
            j["dc"] = dc;
            j["seed"] = code_seed;
            j["max_restarts"] = max_restarts;
            j["retry_budget"] = retry_budget;
        }
        if (rate_override > 0.0) j["rate_override"] = rate_override;
        return j;
    }
};

// ---- decoder flags ----------------------------------------------------------

struct DecoderOpts {
    std::string algorithm = "nms";
    int iterations = 20;
    double nms_lambda = 0.75;
    double oms_offset = 0.0;
    int levels = 1;
    double theta1 = 1.0;
    double theta2 = -1.0;  // <0: gamma * theta1
    double gamma = 1.0;
    double tau_m = 1.0, tau_s = 1.0;
    std::string backend = "functional";
    int substeps = 3;
    double input_gain = 10.0;
    bool persistent_snn_state = false;
    bool early_stop = false;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--decoder", algorithm, "spa|ms|oms|nms|elena|ml-elena")
            ->check(CLI::IsMember({"spa", "ms", "oms", "nms", "elena", "ml-elena"}));
        cmd->add_option("--iterations", iterations, "Decoding iterations");
        cmd->add_option("--nms-lambda", nms_lambda, "NMS scaling factor");
        cmd->add_option("--oms-offset", oms_offset, "OMS offset");
        cmd->add_option("--levels", levels, "Parallel threshold levels L");
        cmd->add_option("--theta1", theta1, "Threshold spacing");
        cmd->add_option("--theta2", theta2, "Output amplitude (default gamma*theta1)");
        cmd->add_option("--gamma", gamma, "Coupling theta2 = gamma*theta1");
        cmd->add_option("--tau-m", tau_m, "Membrane time constant (ms)");
        cmd->add_option("--tau-s", tau_s, "Synaptic time constant (ms)");
        cmd->add_option("--backend", backend, "functional|snn-emulation")
            ->check(CLI::IsMember({"functional", "snn-emulation"}));
        cmd->add_option("--substeps", substeps, "Neuron steps per decoding iteration");
        cmd->add_option("--input-gain", input_gain, "LIF drive gain (emulation)");
        cmd->add_flag("--persistent-snn-state", persistent_snn_state,
                      "Keep subthreshold charge across iterations (emulation)");
        cmd->add_flag("--early-stop", early_stop, "Stop on zero syndrome");
    }

    DecoderConfig resolve() const {
        DecoderConfig c;
        c.algorithm = algorithm_from_name(algorithm);
        c.iterations = iterations;
        c.nms_lambda = nms_lambda;
        c.oms_offset = oms_offset;
        c.early_stop = early_stop;
        if (c.uses_scnu()) {
            c.scnu = ScnuConfig::coupled(levels, theta1, gamma);
            if (theta2 > 0.0) c.scnu.theta2 = theta2;
            c.scnu.li_params.tau_m = tau_m;
            c.scnu.li_params.tau_s = tau_s;
            c.scnu.lif_params.tau_m = tau_m;
            c.scnu.lif_params.tau_s = tau_s;
            c.scnu.backend = backend == "snn-emulation" ? ScnuBackend::snn_emulation
                                                        : ScnuBackend::functional;
            c.scnu.substeps = substeps;
            c.scnu.input_gain = input_gain;
            c.scnu.persistent_inner_state = persistent_snn_state;
        }
        c.validate();
        return c;
    }

    json to_json(const DecoderConfig& c) const {
        json j;
        j["algorithm"] = algorithm_name(c.algorithm);
        j["iterations"] = c.iterations;
        j["early_stop"] = c.early_stop;
        if (c.algorithm == Algorithm::nms) j["nms_lambda"] = c.nms_lambda;
        if (c.algorithm == Algorithm::oms) j["oms_offset"] = c.oms_offset;
        if (c.uses_scnu()) {
            json s;
            s["levels"] = c.scnu.levels;
            s["theta1"] = c.scnu.theta1;
            s["theta2"] = c.scnu.theta2;
            s["gamma"] = c.scnu.gamma;
            s["backend"] =
                c.scnu.backend == ScnuBackend::snn_emulation ? "snn-emulation" : "functional";
            s["tau_m"] = c.scnu.li_params.tau_m;
            s["tau_s"] = c.scnu.li_params.tau_s;
            s["dt"] = c.scnu.li_params.dt;
            if (c.scnu.backend == ScnuBackend::snn_emulation) {
                s["substeps"] = c.scnu.substeps;
                s["input_gain"] = c.scnu.input_gain;
                s["combine_weight"] = c.scnu.combine_weight;
                s["persistent_inner_state"] = c.scnu.persistent_inner_state;
            }
            j["scnu"] = s;
        }
        return j;
    }
};

json stop_json(const StopRule& s) {
    return json{{"min_bit_errors", s.min_bit_errors}, {"max_codewords", s.max_codewords}};
}

json point_json(const BerPoint& p) {
    return json{{"ebn0_db", p.ebn0_db},       {"bits", p.bits_sent},
                {"bit_errors", p.bit_errors}, {"ber", p.ber},
                {"wilson_low", p.wilson_low}, {"wilson_high", p.wilson_high},
                {"frames", p.codewords_sent}, {"frame_errors", p.frame_errors},
                {"fer", p.fer}};
}

// ---- subcommands ------------------------------------------------------------

int cmd_construct(const CodeSourceOpts& src, const std::string& out) {
    Manifest manifest;
    manifest.command = "construct";
    manifest.master_seed = src.code_seed;
    manifest.config["code"] = src.to_json();

    ConstructParams p;
    p.n = src.n;
    p.dv = src.dv;
    p.dc = src.dc;
    p.seed = src.code_seed;
    p.max_restarts = src.max_restarts;
    p.column_retry_budget = src.retry_budget;
    TannerGraph g = construct_regular_code(p);

    bool regular = true;
    for (int j = 0; j < g.n_cns() && regular; ++j) regular = g.cn_degree(j) == p.dc;
    for (int i = 0; i < g.n_vns() && regular; ++i) regular = g.vn_degree(i) == p.dv;
    const bool girth_ok = !has_four_cycle(g);

    const fs::path path = resolve_output(out);
    write_file(path, save_alist(g));
    manifest.outputs.push_back(path.string());

    std::cout << "constructed (" << p.n << ", " << p.dv << ", " << p.dc << "): M=" << g.n_cns()
              << ", edges=" << g.n_edges() << "\n";
    std::cout << "regular: " << (regular ? "yes" : "NO") << "\n";
    std::cout << "girth >= 6: " << (girth_ok ? "yes" : "NO") << "\n";
    std::cout << "wrote " << path.string() << "\n";

    manifest.config["report"] = {{"m", g.n_cns()},
                                 {"edges", g.n_edges()},
                                 {"regular", regular},
                                 {"girth_ge_6", girth_ok}};
    const fs::path mpath = path.string() + ".manifest.json";
    manifest.write(mpath);
    std::cout << "wrote " << mpath.string() << "\n";
    return kExitOk;
}

struct SimOpts {
    std::string ebn0 = "3.0";
    std::string reliability = "matched";
    double design_ebn0 = 0.0;
    long long min_errors = 100;
    long long max_codewords = 1000000;
    std::uint64_t seed = 1;
    int workers = 0;  // 0: hardware concurrency

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--ebn0", ebn0, "Eb/N0 grid in dB: list 'a,b' or range 'start:step:stop'");
        cmd->add_option("--reliability", reliability, "matched|fixed")
            ->check(CLI::IsMember({"matched", "fixed"}));
        cmd->add_option("--design-ebn0", design_ebn0, "Design Eb/N0 for fixed reliability (dB)");
        cmd->add_option("--min-errors", min_errors, "Bit errors to collect per point");
        cmd->add_option("--max-codewords", max_codewords, "Codeword cap per point");
        cmd->add_option("--seed", seed, "Master seed");
        cmd->add_option("--workers", workers, "Worker threads (0 = auto)");
    }

    int resolved_workers() const {
        if (workers > 0) return workers;
        unsigned hc = std::thread::hardware_concurrency();
        return hc ? static_cast<int>(hc) : 1;
    }
};

int cmd_simulate(const CodeSourceOpts& src, const DecoderOpts& dec, const SimOpts& sim,
                 const std::string& out) {
    Manifest manifest;
    manifest.command = "simulate";
    manifest.master_seed = sim.seed;

    std::string code_desc;
    double rate = 0.0;
    TannerGraph g = src.resolve(code_desc, rate);

    SimParams params;
    params.decoder = dec.resolve();
    params.ebn0_grid = parse_grid(sim.ebn0);
    params.reliability =
        sim.reliability == "fixed" ? ReliabilityMode::fixed : ReliabilityMode::matched;
    params.design_ebn0_db = sim.design_ebn0;
    params.stop.min_bit_errors = sim.min_errors;
    params.stop.max_codewords = sim.max_codewords;
    params.master_seed = sim.seed;
    params.workers = sim.resolved_workers();
    params.code_rate = rate;

    manifest.config["code"] = src.to_json();
    manifest.config["code_descriptor"] = code_desc;
    manifest.config["rate"] = rate;
    manifest.config["decoder"] = dec.to_json(params.decoder);
    manifest.config["ebn0_grid"] = params.ebn0_grid;
    manifest.config["reliability"] = sim.reliability;
    if (params.reliability == ReliabilityMode::fixed)
        manifest.config["design_ebn0_db"] = sim.design_ebn0;
    manifest.config["stop"] = stop_json(params.stop);
    manifest.config["workers"] = params.workers;

    Simulator simulator(g, params);
    const std::string decoder_desc = decoder_descriptor(params.decoder);
    auto points = simulator.run_curve([&](const BerPoint& p) {
        std::cout << "ebn0=" << p.ebn0_db << " dB  ber=" << p.ber << "  (" << p.bit_errors << "/"
                  << p.bits_sent << " bits, " << p.frame_errors << "/" << p.codewords_sent
                  << " frames)\n";
    });

    const fs::path csv_path = resolve_output(out + ".csv");
    write_file(csv_path, ber_points_csv(points, decoder_desc, code_desc, sim.seed));
    manifest.outputs.push_back(csv_path.string());

    json mirror;
    mirror["config"] = manifest.config;
    mirror["config"]["master_seed"] = sim.seed;
    mirror["points"] = json::array();
    for (const auto& p : points) mirror["points"].push_back(point_json(p));
    const fs::path json_path = resolve_output(out + ".json");
    write_file(json_path, mirror.dump(2) + "\n");
    manifest.outputs.push_back(json_path.string());

    manifest.write(resolve_output(out + ".manifest.json"));
    std::cout << "wrote " << csv_path.string() << "\n";
    return kExitOk;
}

int cmd_sweep(const CodeSourceOpts& src, const DecoderOpts& dec, const SimOpts& sim,
              const std::string& grid_text, const std::string& out) {
    Manifest manifest;
    manifest.command = "sweep";
    manifest.master_seed = sim.seed;

    std::string code_desc;
    double rate = 0.0;
    TannerGraph g = src.resolve(code_desc, rate);

    SweepConfig cfg;
    cfg.theta1_grid = parse_grid(grid_text);
    cfg.gamma = dec.gamma;
    cfg.levels = dec.levels;
    cfg.design_ebn0_db = sim.design_ebn0;
    cfg.base.decoder = dec.resolve();
    cfg.base.stop.min_bit_errors = sim.min_errors;
    cfg.base.stop.max_codewords = sim.max_codewords;
    cfg.base.master_seed = sim.seed;
    cfg.base.workers = sim.resolved_workers();
    cfg.base.code_rate = rate;
    cfg.base.ebn0_grid = {cfg.design_ebn0_db};

    manifest.config["code"] = src.to_json();
    manifest.config["code_descriptor"] = code_desc;
    manifest.config["rate"] = rate;
    manifest.config["decoder"] = dec.to_json(cfg.base.decoder);
    manifest.config["theta1_grid"] = cfg.theta1_grid;
    manifest.config["gamma"] = cfg.gamma;
    manifest.config["levels"] = cfg.levels;
    manifest.config["design_ebn0_db"] = cfg.design_ebn0_db;
    manifest.config["stop"] = stop_json(cfg.base.stop);
    manifest.config["workers"] = cfg.base.workers;

    auto result = sweep_theta1(g, cfg, [](const SweepPoint& p) {
        std::cout << "theta1=" << p.theta1 << "  ber=" << p.ber.ber << "  (" << p.ber.bit_errors
                  << " errors)\n";
    });
    std::cout << "argmin: theta1=" << result.theta1_star << " theta2=" << result.theta2_star
              << " ber=" << result.points[result.argmin_index].ber.ber << "\n";

    const fs::path csv_path = resolve_output(out + ".csv");
    write_file(csv_path, sweep_csv(result));
    manifest.outputs.push_back(csv_path.string());
    manifest.config["argmin"] = {{"theta1", result.theta1_star}, {"theta2", result.theta2_star}};
    manifest.write(resolve_output(out + ".manifest.json"));
    std::cout << "wrote " << csv_path.string() << "\n";
    return kExitOk;
}

int cmd_characterize(const DecoderOpts& dec, const std::string& grid_text, const std::string& out) {
    Manifest manifest;
    manifest.command = "characterize";

    ScnuConfig cfg = ScnuConfig::coupled(dec.levels, dec.theta1, dec.gamma);
    if (dec.theta2 > 0.0) cfg.theta2 = dec.theta2;
    auto grid = parse_grid(grid_text);
    auto table = characterize_scnu(cfg, grid);

    manifest.config["levels"] = cfg.levels;
    manifest.config["theta1"] = cfg.theta1;
    manifest.config["theta2"] = cfg.theta2;
    manifest.config["grid_points"] = grid.size();

    const fs::path path = resolve_output(out);
    write_file(path, transfer_csv(table));
    manifest.outputs.push_back(path.string());
    manifest.write(resolve_output(out + ".manifest.json"));
    std::cout << "wrote " << path.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LDPC belief-propagation decoding with spiking check-node updates"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from a config file (flags win)");
    app.get_config_formatter_base()->comment('#');

    CodeSourceOpts src;
    DecoderOpts dec;
    SimOpts sim;
    std::string out;
    std::string grid_text = "0.1:0.1:4.0";

    auto* construct = app.add_subcommand("construct", "Construct a regular code, write alist");
    src.add_flags(construct);
    construct->add_option("-o,--output", out, "Output alist path")->required();

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo BER/FER over an Eb/N0 grid");
    src.add_flags(simulate);
    dec.add_flags(simulate);
    sim.add_flags(simulate);
    simulate->add_option("-o,--output", out, "Output prefix (.csv/.json/.manifest.json)")
        ->required();

    auto* sweep = app.add_subcommand("sweep", "Line search over theta1 with theta2=gamma*theta1");
    src.add_flags(sweep);
    dec.add_flags(sweep);
    sim.add_flags(sweep);
    sweep->add_option("--theta1-grid", grid_text, "theta1 grid (list or start:step:stop)");
    sweep->add_option("-o,--output", out, "Output prefix")->required();

    auto* characterize = app.add_subcommand("characterize", "SCNU staircase transfer table");
    dec.add_flags(characterize);
    characterize->add_option("--grid", grid_text, "min-magnitude grid");
    characterize->add_option("-o,--output", out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(construct)) return cmd_construct(src, out);
        if (app.got_subcommand(simulate)) return cmd_simulate(src, dec, sim, out);
        if (app.got_subcommand(sweep)) return cmd_sweep(src, dec, sim, grid_text, out);
        if (app.got_subcommand(characterize)) return cmd_characterize(dec, grid_text, out);
        return kExitUsage;
    } catch (const construction_error& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return kExitConstruction;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "alist parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const inconsistency_error& e) {
        std::cerr << "alist inconsistency: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "aborted: " << e.what() << "\n";
        return kExitAborted;
    }
}
