#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/core.hpp"
#include "qwalk/engine.hpp"
#include "qwalk/limit.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/text.hpp"

namespace qwalk::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr const char* kRecordSuffix = ".run.json";

// ---------------------------------------------------------------------------
// Shared flags
// ---------------------------------------------------------------------------

struct WalkFlags {
    std::string theta;
    std::string theta_pi;
    std::string alpha = "0.70710678118654752";
    std::string beta = "0.70710678118654752i";
    unsigned threads = 0;
};

struct ResolvedWalk {
    WalkParameters params;
    InitialCoin coin;
    json record;
};

void add_walk_flags(CLI::App* app, WalkFlags& flags) {
    auto* theta = app->add_option("--theta", flags.theta, "coin angle in radians, 0 < theta < pi, theta != pi/2");
    auto* theta_pi = app->add_option("--theta-pi", flags.theta_pi, "coin angle as p/q, meaning theta = (p/q) pi");
    theta->excludes(theta_pi);
    app->add_option("--alpha", flags.alpha, "amplitude of coin state |0>, written a+bi")->capture_default_str();
    app->add_option("--beta", flags.beta, "amplitude of coin state |1>, written a+bi")->capture_default_str();
    app->add_option("--threads", flags.threads, "worker cap; 0 means QWALK_THREADS or all cores");
}

InitialCoin coin_from_text(const std::string& alpha_text, const std::string& beta_text) {
    complex alpha = parse_complex(alpha_text);
    complex beta = parse_complex(beta_text);
    const double norm = std::norm(alpha) + std::norm(beta);
    if (!(std::abs(norm - 1.0) <= kCoinInputTolerance))
        throw InvalidParameter("|alpha|^2 + |beta|^2 = " + format_real(norm) + " is not 1");
    if (std::abs(norm - 1.0) > kCoinNormTolerance) {
        const double scale = 1.0 / std::sqrt(norm);
        alpha *= scale;
        beta *= scale;
    }
    return make_initial_coin(alpha, beta);
}

ResolvedWalk resolve(const WalkFlags& flags) {
    if (flags.theta.empty() == flags.theta_pi.empty())
        throw InvalidParameter("exactly one of --theta and --theta-pi is required");
    const bool as_fraction = !flags.theta_pi.empty();
    const double theta = as_fraction ? parse_pi_fraction(flags.theta_pi) : parse_real(flags.theta);
    ResolvedWalk out{make_parameters(theta), coin_from_text(flags.alpha, flags.beta), json::object()};
    out.record["theta_input"] = as_fraction ? "pi*" + flags.theta_pi : flags.theta;
    out.record["theta"] = format_real(out.params.theta());
    out.record["alpha_input"] = flags.alpha;
    out.record["beta_input"] = flags.beta;
    out.record["alpha"] = format_complex(out.coin.alpha());
    out.record["beta"] = format_complex(out.coin.beta());
    out.record["regime"] = regime_of(out.params) == Regime::Hadamard ? "hadamard" : "gapped";
    return out;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

struct Output {
    fs::path path;
    std::string content;
};

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidParameter("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InvalidParameter("failed writing " + path.string());
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buffer;
}

std::string dump_json(const json& value) { return value.dump(2) + "\n"; }

// Writes every output, then a RunRecord next to the first one.
void publish(const std::string& subcommand, const std::vector<std::string>& tokens, json params,
             const std::vector<Output>& outputs) {
    json files = json::array();
    for (const auto& o : outputs) {
        write_file(o.path, o.content);
        files.push_back({{"file", o.path.filename().string()}, {"fnv1a64", fnv1a_hex(o.content)}});
    }
    json record{{"tool", "qwalk"},
                {"version", QWALK_VERSION},
                {"subcommand", subcommand},
                {"argv", tokens},
                {"params", std::move(params)},
                {"timestamp", utc_timestamp()},
                {"checksum", fnv1a_hex(outputs.front().content)},
                {"outputs", std::move(files)}};
    write_file(outputs.front().path.string() + kRecordSuffix, dump_json(record));
}

const char* regime_name(Regime r) { return r == Regime::Hadamard ? "hadamard" : "gapped"; }

json tolerance_json(const quad::Tolerance& tol) {
    return {{"absolute", tol.absolute}, {"relative", tol.relative}, {"max_intervals", tol.max_intervals}};
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateFlags {
    WalkFlags walk;
    std::optional<int> steps;
    std::vector<int> snapshots;
    std::string out;
};

void cmd_simulate(const SimulateFlags& flags, const std::vector<std::string>& tokens) {
    auto walk = resolve(flags.walk);
    std::vector<int> times = flags.snapshots;
    if (flags.steps) times.push_back(*flags.steps);
    if (times.empty()) throw InvalidParameter("simulate needs --steps or --snapshots");
    for (int t : times)
        if (t < 0) throw InvalidParameter("times must be nonnegative");

    const auto dists = evolve_snapshots(walk.params, walk.coin, times);
    std::string csv = "t,x,prob\n";
    for (const auto& d : dists) {
        const std::string t = std::to_string(d.t);
        for (std::size_t i = 0; i < d.probs.size(); ++i) {
            csv += t;
            csv += ',';
            csv += std::to_string(d.offset + static_cast<int>(i));
            csv += ',';
            csv += format_real(d.probs[i]);
            csv += '\n';
        }
    }
    walk.record["times"] = times;
    publish("simulate", tokens, std::move(walk.record), {{flags.out, std::move(csv)}});
}

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

struct DensityFlags {
    WalkFlags walk;
    int points = 2001;
    std::string coefficient;
    std::string out;
};

void cmd_density(const DensityFlags& flags, const std::vector<std::string>& tokens) {
    auto walk = resolve(flags.walk);
    if (flags.points < 2) throw InvalidParameter("--points must be at least 2");
    HadamardCoefficient coef = HadamardCoefficient::Single;
    if (!flags.coefficient.empty()) {
        if (regime_of(walk.params) != Regime::Hadamard)
            throw UnsupportedRegime("--coefficient only applies at theta = pi/4 or 3pi/4");
        coef = flags.coefficient == "doubled" ? HadamardCoefficient::Doubled : HadamardCoefficient::Single;
    }
    const LimitDensity limit(walk.params, walk.coin, coef);
    const double hi = limit.geometry().outer + 0.1;
    const double lo = -hi;
    const auto n = static_cast<std::size_t>(flags.points);
    std::vector<std::string> rows(n);
    parallel_for(n, resolve_threads(flags.walk.threads), [&](std::size_t i) {
        const double x = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        rows[i] = format_real(x) + ',' + format_real(limit.density(x)) + '\n';
    });
    std::string csv = "x,chi\n";
    for (const auto& r : rows) csv += r;
    walk.record["points"] = flags.points;
    walk.record["range"] = {format_real(lo), format_real(hi)};
    if (limit.regime() == Regime::Hadamard)
        walk.record["coefficient"] = coef == HadamardCoefficient::Single ? "single" : "doubled";
    publish("density", tokens, std::move(walk.record), {{flags.out, std::move(csv)}});
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareFlags {
    WalkFlags walk;
    int steps = 500;
    int max_moment = 4;
    double gap_margin = kDefaultGapMargin;
    double window_fraction = 0.1;
    int momentum_nodes = kDefaultMomentumNodes;
    std::string out;
    std::string report;
};

json report_json(const ComparisonReport& r, const CompareOptions& opts) {
    json moments = json::array();
    for (const auto& m : r.moments)
        moments.push_back({{"r", m.r},
                           {"empirical", m.empirical},
                           {"limit", m.limit},
                           {"limit_real_space", m.limit_real_space},
                           {"abs_err", m.abs_err}});
    json out{{"t", r.t},
             {"theta", r.theta},
             {"alpha", format_complex(r.alpha)},
             {"beta", format_complex(r.beta)},
             {"regime", regime_name(r.regime)},
             {"support",
              {{"inner", r.geometry.inner},
               {"outer", r.geometry.outer},
               {"has_gap", r.geometry.has_gap()},
               {"gap_width", r.geometry.gap_width(r.t)}}},
             {"kolmogorov_distance", r.kolmogorov_distance},
             {"gap",
              {{"mass", r.gap.mass},
               {"half_width", r.gap.half_width},
               {"window", r.gap.gap_regime ? "gap" : "fallback"},
               {"margin", opts.gap_margin}}},
             {"moments", std::move(moments)},
             {"coefficient", nullptr}};
    if (r.coefficient)
        out["coefficient"] = {{"distance_single", r.coefficient->distance_single},
                              {"distance_doubled", r.coefficient->distance_doubled},
                              {"winner", r.coefficient->winner() == HadamardCoefficient::Single ? "single" : "doubled"}};
    return out;
}

void cmd_compare(const CompareFlags& flags, const std::vector<std::string>& tokens) {
    auto walk = resolve(flags.walk);
    if (flags.steps < 1) throw InvalidParameter("compare needs --steps >= 1");
    CompareOptions opts;
    opts.max_moment = flags.max_moment;
    opts.gap_margin = flags.gap_margin;
    opts.no_gap_window_fraction = flags.window_fraction;
    opts.momentum_nodes = flags.momentum_nodes;
    opts.threads = resolve_threads(flags.walk.threads);
    const auto report = compare(walk.params, walk.coin, flags.steps, opts);

    std::string csv = "x,simulated,approximate\n";
    for (const auto& row : report.overlay)
        csv += std::to_string(row.x) + ',' + format_real(row.simulated) + ',' + format_real(row.approximate) + '\n';

    fs::path report_path = flags.report;
    if (report_path.empty()) {
        const fs::path out = flags.out;
        report_path = out.parent_path() / (out.stem().string() + ".report.json");
    }
    walk.record["steps"] = flags.steps;
    walk.record["max_moment"] = flags.max_moment;
    walk.record["gap_margin"] = flags.gap_margin;
    walk.record["no_gap_window_fraction"] = flags.window_fraction;
    walk.record["momentum_nodes"] = flags.momentum_nodes;
    walk.record["quadrature"] = tolerance_json(LimitDensity::default_tolerance());
    publish("compare", tokens, std::move(walk.record),
            {{flags.out, std::move(csv)}, {report_path, dump_json(report_json(report, opts))}});
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumFlags {
    WalkFlags walk;
    int points = 512;
    std::string out;
};

void cmd_spectrum(const SpectrumFlags& flags, const std::vector<std::string>& tokens) {
    auto walk = resolve(flags.walk);
    if (flags.points < 2) throw InvalidParameter("--points must be at least 2");
    const bool hadamard = walk.params.is_hadamard_angle();
    const auto n = static_cast<std::size_t>(flags.points);
    std::vector<std::string> rows(n);
    parallel_for(n, resolve_threads(flags.walk.threads), [&](std::size_t i) {
        // Interior grid on (0, pi); both endpoints are degenerate.
        const double k = kPi * static_cast<double>(i + 1) / static_cast<double>(n + 1);
        const auto es = eigensystem(k, walk.params);
        std::string row = format_real(k);
        for (double v : {es.lambda1.real(), es.lambda1.imag(), es.lambda2.real(), es.lambda2.imag(),
                         group_velocity(k, walk.params, 1), group_velocity(k, walk.params, 2),
                         h_of_k(k, walk.params)}) {
            row += ',';
            row += format_real(v);
        }
        if (hadamard) {
            row += ',' + format_real(hadamard_factorization_residual(k, walk.params));
            row += ',' + format_real(hadamard_factorization_residual_shifted(k, walk.params));
        }
        rows[i] = row + '\n';
    });
    std::string csv = "k,re_lambda1,im_lambda1,re_lambda2,im_lambda2,v_group_1,v_group_2,h";
    if (hadamard) csv += ",factorization_residual,factorization_residual_shifted";
    csv += '\n';
    for (const auto& r : rows) csv += r;
    walk.record["points"] = flags.points;
    publish("spectrum", tokens, std::move(walk.record), {{flags.out, std::move(csv)}});
}

// ---------------------------------------------------------------------------
// figures
// ---------------------------------------------------------------------------

struct FiguresFlags {
    std::string out_dir;
    unsigned threads = 0;
};

int cmd_figures(const FiguresFlags& flags) {
    const fs::path dir = flags.out_dir;
    fs::create_directories(dir);
    const std::string threads = std::to_string(flags.threads);
    auto path = [&](const char* name) { return (dir / name).string(); };
    const std::vector<std::vector<std::string>> jobs{
        {"simulate", "--theta-pi", "1/4", "--steps", "50", "--out", path("fig2a_theta_pi_4.csv")},
        {"simulate", "--theta-pi", "1/6", "--steps", "50", "--out", path("fig2b_theta_pi_6.csv")},
        {"simulate", "--theta-pi", "1/6", "--steps", "50", "--out", path("fig3a_symmetric_coin.csv")},
        {"simulate", "--theta-pi", "1/6", "--alpha", "1", "--beta", "0", "--steps", "50", "--out",
         path("fig3b_coin_up.csv")},
        {"simulate", "--theta-pi", "1/6", "--alpha", "0", "--beta", "1", "--steps", "50", "--out",
         path("fig3c_coin_down.csv")},
        {"compare", "--theta-pi", "1/4", "--steps", "500", "--out", path("fig4a_theta_pi_4.csv")},
        {"compare", "--theta-pi", "3/4", "--steps", "500", "--out", path("fig4b_theta_3pi_4.csv")},
        {"compare", "--theta-pi", "1/6", "--steps", "500", "--out", path("fig5a_theta_pi_6.csv")},
        {"compare", "--theta-pi", "1/8", "--steps", "500", "--out", path("fig5b_theta_pi_8.csv")},
    };
    for (auto job : jobs) {
        job.insert(job.end(), {"--threads", threads});
        const int code = dispatch(job);
        if (code != kExitOk) return code;
        std::cout << job.back() << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// replay
// ---------------------------------------------------------------------------

struct ReplayFlags {
    std::string record;
    std::string out_dir;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cmd_replay(const ReplayFlags& flags) {
    json record;
    try {
        record = json::parse(read_file(flags.record));
    } catch (const json::exception& e) {
        throw InvalidParameter("malformed run record: " + std::string(e.what()));
    }
    auto tokens = record.at("argv").get<std::vector<std::string>>();
    fs::path dir = flags.out_dir;
    if (dir.empty()) dir = fs::temp_directory_path() / ("qwalk-replay-" + fnv1a_hex(utc_timestamp() + flags.record));
    fs::create_directories(dir);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i)
        if (tokens[i] == "--out" || tokens[i] == "--report")
            tokens[i + 1] = (dir / fs::path(tokens[i + 1]).filename()).string();

    const int code = dispatch(tokens);
    if (code != kExitOk) return code;

    bool identical = true;
    for (const auto& file : record.at("outputs")) {
        const auto name = file.at("file").get<std::string>();
        const auto expected = file.at("fnv1a64").get<std::string>();
        const auto actual = fnv1a_hex(read_file(dir / name));
        const bool same = actual == expected;
        identical = identical && same;
        std::cout << (same ? "identical " : "differs   ") << name << ' ' << actual << '\n';
    }
    return identical ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

int report_error(const std::string& message, int code) {
    std::cerr << "qwalk: error: " << message << '\n';
    return code;
}

}  // namespace

int dispatch(const std::vector<std::string>& tokens) {
    CLI::App app{"Two-operator quantum walk on the line: simulation, limit laws and their comparison", "qwalk"};
    app.set_version_flag("--version", QWALK_VERSION);
    app.require_subcommand(1);

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "exact probability distribution P(X_t = x) as CSV (t,x,prob)");
    add_walk_flags(simulate, sim.walk);
    simulate->add_option("--steps", sim.steps, "number of steps t >= 0");
    simulate->add_option("--snapshots", sim.snapshots, "comma-separated extra times to record")->delimiter(',');
    simulate->add_option("--out", sim.out, "CSV output path")->required();

    DensityFlags den;
    auto* density = app.add_subcommand("density", "limit density of X_t / t on a uniform grid as CSV (x,chi)");
    add_walk_flags(density, den.walk);
    density->add_option("--points", den.points, "grid size, at least 2")->capture_default_str();
    density->add_option("--coefficient", den.coefficient, "coherence weight at theta = pi/4, 3pi/4")
        ->check(CLI::IsMember({"single", "doubled"}));
    density->add_option("--out", den.out, "CSV output path")->required();

    CompareFlags cmp;
    auto* comparison = app.add_subcommand("compare", "simulation against the limit law: JSON report and CSV overlay");
    add_walk_flags(comparison, cmp.walk);
    comparison->add_option("--steps", cmp.steps, "time t >= 1")->capture_default_str();
    comparison->add_option("--max-moment", cmp.max_moment, "highest moment order reported")->capture_default_str();
    comparison->add_option("--gap-margin", cmp.gap_margin, "gap window is |x| <= margin * inner * t")
        ->capture_default_str();
    comparison->add_option("--window-fraction", cmp.window_fraction, "window |x| <= fraction * t when there is no gap")
        ->capture_default_str();
    comparison->add_option("--momentum-nodes", cmp.momentum_nodes, "Gauss-Legendre nodes per half of the circle")
        ->capture_default_str();
    comparison->add_option("--out", cmp.out, "overlay CSV path (x,simulated,approximate)")->required();
    comparison->add_option("--report", cmp.report, "JSON report path; default <out stem>.report.json");

    SpectrumFlags spec;
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and group velocities on an interior k grid");
    add_walk_flags(spectrum, spec.walk);
    spectrum->add_option("--points", spec.points, "grid size on (0, pi), at least 2")->capture_default_str();
    spectrum->add_option("--out", spec.out, "CSV output path")->required();

    FiguresFlags fig;
    auto* figures = app.add_subcommand("figures", "regenerate the reference figure data sets");
    figures->add_option("--out-dir", fig.out_dir, "directory for the CSV and JSON files")->required();
    figures->add_option("--threads", fig.threads, "worker cap; 0 means QWALK_THREADS or all cores");

    ReplayFlags rep;
    auto* replay = app.add_subcommand("replay", "re-run a RunRecord and verify its output checksums");
    replay->add_option("record", rep.record, "path to a .run.json file")->required();
    replay->add_option("--out-dir", rep.out_dir, "where to write the regenerated files; default a temp directory");

    std::vector<const char*> argv{"qwalk"};
    for (const auto& t : tokens) argv.push_back(t.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) cmd_simulate(sim, tokens);
        else if (density->parsed()) cmd_density(den, tokens);
        else if (comparison->parsed()) cmd_compare(cmp, tokens);
        else if (spectrum->parsed()) cmd_spectrum(spec, tokens);
        else if (figures->parsed()) return cmd_figures(fig);
        else if (replay->parsed()) return cmd_replay(rep);
    } catch (const NonConvergence& e) {
        return report_error(e.what(), kExitNonConvergence);
    } catch (const Error& e) {
        return report_error(e.what(), kExitUsage);
    } catch (const std::exception& e) {
        return report_error(e.what(), kExitFailure);
    }
    return kExitOk;
}

int run(int argc, char** argv) {
    std::vector<std::string> tokens(argv + 1, argv + argc);
    return dispatch(tokens);
}

}  // namespace qwalk::cli
