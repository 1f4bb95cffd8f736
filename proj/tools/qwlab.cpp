#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qwlab/estimates.hpp"
#include "qwlab/kernel.hpp"
#include "qwlab/manifest.hpp"
#include "qwlab/multipliers.hpp"
#include "qwlab/selftest.hpp"
#include "qwlab/spectral.hpp"
#include "qwlab/sweep.hpp"
#include "qwlab/version.hpp"
#include "qwlab/walk.hpp"

namespace {

using namespace qwlab;

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Initial-state flags shared by every subcommand that evolves something.
struct StateArgs {
    double delta = 1.0;
    double mass = 1.0;
    std::size_t n = 16384;
    std::string state = "gaussian";
    long long site = 0;
    double width = 4.0;
    double carrier = 0.0;
    double truncate = 0.0;
    std::uint64_t seed = 0;
};

void add_state_flags(CLI::App* cmd, StateArgs& a) {
    cmd->add_option("--delta", a.delta, "lattice spacing, in (0, 1]")->capture_default_str();
    cmd->add_option("--mass", a.mass, "mass parameter")->capture_default_str();
    cmd->add_option("--n", a.n, "ring size, a power of two")->capture_default_str();
    cmd->add_option("--state", a.state, "initial state: impulse | gaussian | random")
        ->check(CLI::IsMember({"impulse", "gaussian", "random"}))
        ->capture_default_str();
    cmd->add_option("--site", a.site, "impulse location, in sites")->capture_default_str();
    cmd->add_option("--width", a.width, "gaussian width")->capture_default_str();
    cmd->add_option("--carrier", a.carrier, "gaussian carrier frequency")->capture_default_str();
    cmd->add_option("--truncate", a.truncate, "gaussian support radius (0 = 16*width)")
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "seed for the random state")->capture_default_str();
}

StateKind kind_of(const std::string& s) {
    if (s == "impulse") return StateKind::impulse;
    if (s == "random") return StateKind::random;
    return StateKind::gaussian;
}

SpinorField build_state(const StateArgs& a) {
    WalkParams p(a.delta, a.mass);
    StateOptions opt;
    opt.site = a.site;
    opt.width = a.width;
    opt.carrier = a.carrier;
    opt.truncate = a.truncate;
    opt.seed = a.seed;
    return make_state(kind_of(a.state), p, a.n, opt);
}

void echo_state(std::vector<std::string>& lines, const StateArgs& a) {
    lines.push_back("delta = " + fmt17(a.delta));
    lines.push_back("mass = " + fmt17(a.mass));
    lines.push_back("n = " + std::to_string(a.n));
    lines.push_back("state = " + a.state);
    if (a.state == "impulse") lines.push_back("site = " + std::to_string(a.site));
    if (a.state == "gaussian") {
        lines.push_back("width = " + fmt17(a.width));
        lines.push_back("carrier = " + fmt17(a.carrier));
        lines.push_back("truncate = " + fmt17(a.truncate));
    }
    if (a.state == "random") lines.push_back("seed = " + std::to_string(a.seed));
}

// --out selects a file; default is stdout.
struct OutStream {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit OutStream(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw Error("cannot open for writing: " + path);
        os = &file;
    }
    std::ostream& get() { return *os; }
};

void emit_manifest(std::ostream& os, const std::vector<std::string>& config,
                   const std::vector<std::uint64_t>& seeds) {
    RunManifest::make(config, seeds).write(os);
}

void emit_records(std::ostream& os, const std::vector<RatioRecord>& records, bool json) {
    if (!json) os << ratio_csv_header << '\n';
    for (const auto& r : records)
        json ? write_ratio_json_line(os, r) : write_ratio_csv_row(os, r);
}

// Geometric T-ladder in steps: round(n_min * 2^{k/per_octave}), deduplicated.
std::vector<long long> time_ladder(long long n_min, long long n_max, int per_octave) {
    std::set<long long> s;
    for (int k = 0;; ++k) {
        double v = double(n_min) * std::exp2(double(k) / double(per_octave));
        long long n = (long long)std::llround(v);
        if (n > n_max) break;
        s.insert(n);
    }
    s.insert(n_max);
    return {s.begin(), s.end()};
}

int run_evolve(const StateArgs& a, double t, const std::string& out) {
    SpinorField u = build_state(a);
    Evolved ev = evolve(u, t);
    std::vector<std::string> cfg{"subcommand = evolve"};
    echo_state(cfg, a);
    cfg.push_back("t = " + fmt17(t));
    OutStream os(out);
    emit_manifest(os.get(), cfg, {a.seed});
    os.get() << "# wrap_ok=" << (ev.wrap_ok ? 1 : 0) << '\n';
    write_field(os.get(), ev.field);
    return 0;
}

int run_spectrum(double delta, double mass, std::size_t n, const std::string& out) {
    WalkParams p(delta, mass);
    std::vector<std::string> cfg{"subcommand = spectrum", "delta = " + fmt17(delta),
                                 "mass = " + fmt17(mass), "n = " + std::to_string(n)};
    OutStream os(out);
    emit_manifest(os.get(), cfg, {});
    write_symbol_table(os.get(), p, n);
    return 0;
}

int run_lp(const StateArgs& a, double lambda, bool have_lambda, double wa, double wb,
           bool have_weight, const std::string& out) {
    SpinorField u = build_state(a);
    std::vector<std::string> cfg{"subcommand = lp"};
    echo_state(cfg, a);
    if (have_lambda) {
        u = littlewood_paley(u, lambda);
        cfg.push_back("lambda = " + fmt17(lambda));
    }
    if (have_weight) {
        u = fractional_weight(u, wa, wb);
        cfg.push_back("wa = " + fmt17(wa));
        cfg.push_back("wb = " + fmt17(wb));
    }
    OutStream os(out);
    emit_manifest(os.get(), cfg, {a.seed});
    write_field(os.get(), u);
    return 0;
}

int run_decay(const StateArgs& a, double lambda, double tmin, double tmax, int per_octave,
              bool json, const std::string& out) {
    SpinorField u = build_state(a);
    if (tmin <= 0.0) tmin = a.delta;
    std::vector<RatioRecord> records = decay_ladder(u, lambda, tmin, tmax, per_octave);
    if (a.state == "random")
        for (auto& r : records) r.seed = a.seed;
    SlopeFit fit = decay_slope_fit(records);
    std::vector<std::string> cfg{"subcommand = decay"};
    echo_state(cfg, a);
    cfg.push_back("lambda = " + fmt17(lambda));
    cfg.push_back("tmin = " + fmt17(tmin));
    cfg.push_back("tmax = " + fmt17(tmax));
    cfg.push_back("per_octave = " + std::to_string(per_octave));
    OutStream os(out);
    emit_manifest(os.get(), cfg, {a.seed});
    emit_records(os.get(), records, json);
    os.get() << "# slope=" << fmt17(fit.slope) << '\n';
    return 0;
}

int run_strichartz(const StateArgs& a, const std::string& pstr, const std::string& qstr,
                   const std::string& ptstr, const std::string& qtstr, double tmin,
                   double tmax, int per_octave, bool weighted, bool json,
                   const std::string& out) {
    AdmissiblePair pair{Exponent::parse(pstr), Exponent::parse(qstr), PairKind::discrete};
    require_admissible(pair);
    const bool inhom = !ptstr.empty() || !qtstr.empty();
    AdmissiblePair pair_tilde;
    if (inhom) {
        if (ptstr.empty() || qtstr.empty())
            throw PairError("--ptilde and --qtilde must be given together");
        pair_tilde = {Exponent::parse(ptstr), Exponent::parse(qtstr), PairKind::discrete};
        require_admissible(pair_tilde);
    }

    SpinorField u = build_state(a);
    if (tmin <= 0.0) tmin = std::max(a.delta, tmax / 8.0);
    const long long n_min = steps_of(tmin, a.delta);
    const long long n_max = steps_of(tmax, a.delta);
    if (n_min < 1 || n_max < n_min)
        throw DomainError("strichartz window needs delta <= tmin <= tmax");

    SpaceTimeField f;
    if (inhom) {
        f.params = u.params;
        StateOptions opt;
        opt.site = a.site;
        opt.width = a.width;
        opt.carrier = a.carrier;
        opt.truncate = a.truncate;
        for (long long k = 0; k <= n_max; ++k) {
            opt.seed = a.seed + (std::uint64_t)k;
            f.times.push_back(double(k) * a.delta);
            f.slices.push_back(make_state(kind_of(a.state), u.params, a.n, opt));
        }
    }

    std::vector<RatioRecord> records;
    for (long long nT : time_ladder(n_min, n_max, per_octave)) {
        double T = double(nT) * a.delta;
        records.push_back(inhom ? inhomogeneous_ratio(f, pair, pair_tilde, T, weighted)
                                : homogeneous_ratio(u, pair, T));
        if (a.state == "random") records.back().seed = a.seed;
    }

    std::vector<std::string> cfg{"subcommand = strichartz"};
    echo_state(cfg, a);
    cfg.push_back("p = " + pair.p.str());
    cfg.push_back("q = " + pair.q.str());
    if (inhom) {
        cfg.push_back("ptilde = " + pair_tilde.p.str());
        cfg.push_back("qtilde = " + pair_tilde.q.str());
        cfg.push_back("weighted = " + std::string(weighted ? "true" : "false"));
    }
    cfg.push_back("tmin = " + fmt17(tmin));
    cfg.push_back("tmax = " + fmt17(tmax));
    cfg.push_back("per_octave = " + std::to_string(per_octave));
    OutStream os(out);
    emit_manifest(os.get(), cfg, {a.seed});
    emit_records(os.get(), records, json);
    return 0;
}

int run_sweep(const std::string& config_path, int jobs, bool json, const std::string& out) {
    SweepConfig cfg = parse_config(config_path);
    cfg.validate();
    std::vector<RatioRecord> records = uniformity_sweep(cfg, jobs);
    std::vector<std::string> echo{"subcommand = sweep"};
    echo.insert(echo.end(), cfg.echo_lines.begin(), cfg.echo_lines.end());
    OutStream os(out);
    emit_manifest(os.get(), echo, cfg.seeds);
    emit_records(os.get(), records, json);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for 1d discrete-time quantum walks on delta*Z"};
    app.set_version_flag("--version", qwlab::version_string);
    app.require_subcommand(1);

    // evolve
    StateArgs ev_args;
    double ev_t = 0.0;
    std::string ev_out;
    CLI::App* ev = app.add_subcommand("evolve", "step an initial state and write the field");
    add_state_flags(ev, ev_args);
    ev->add_option("--t", ev_t, "evolution time, a multiple of delta")->required();
    ev->add_option("--out", ev_out, "output file (default stdout)");

    // spectrum
    double sp_delta = 1.0, sp_mass = 1.0;
    std::size_t sp_n = 16384;
    std::string sp_out;
    CLI::App* sp = app.add_subcommand(
        "spectrum", "export the symbol table: dispersion, derivatives, projectors");
    sp->add_option("--delta", sp_delta, "lattice spacing")->capture_default_str();
    sp->add_option("--mass", sp_mass, "mass parameter")->capture_default_str();
    sp->add_option("--n", sp_n, "ring size, a power of two")->capture_default_str();
    sp->add_option("--out", sp_out, "output file (default stdout)");

    // lp
    StateArgs lp_args;
    double lp_lambda = 0.0, lp_wa = 0.0, lp_wb = 0.0;
    std::string lp_out;
    CLI::App* lp = app.add_subcommand(
        "lp", "apply a frequency projection or fractional weight and write the field");
    add_state_flags(lp, lp_args);
    CLI::Option* lp_lambda_opt = lp->add_option("--lambda", lp_lambda, "dyadic band center");
    CLI::Option* lp_wa_opt = lp->add_option("--wa", lp_wa, "homogeneous weight exponent a");
    CLI::Option* lp_wb_opt = lp->add_option("--wb", lp_wb, "inhomogeneous weight exponent b");
    lp->add_option("--out", lp_out, "output file (default stdout)");

    // decay
    StateArgs dc_args;
    double dc_lambda = 1.0, dc_tmin = 0.0, dc_tmax = 0.0;
    int dc_per_octave = 4;
    bool dc_json = false;
    std::string dc_out;
    CLI::App* dc = app.add_subcommand(
        "decay", "dispersive ratios over a geometric time ladder, plus a slope fit");
    add_state_flags(dc, dc_args);
    dc->add_option("--lambda", dc_lambda, "dyadic band center")->required();
    dc->add_option("--tmin", dc_tmin, "ladder start (default delta)");
    dc->add_option("--tmax", dc_tmax, "ladder end")->required();
    dc->add_option("--per-octave", dc_per_octave, "ladder rungs per octave")
        ->capture_default_str();
    dc->add_flag("--json", dc_json, "emit JSON lines instead of CSV");
    dc->add_option("--out", dc_out, "output file (default stdout)");

    // strichartz
    StateArgs st_args;
    std::string st_p, st_q, st_pt, st_qt, st_out;
    double st_tmin = 0.0, st_tmax = 64.0;
    int st_per_octave = 4;
    bool st_weighted = false, st_json = false;
    CLI::App* st = app.add_subcommand(
        "strichartz", "space-time norm ratios for an admissible pair over a T ladder");
    st_args.n = 4096;
    add_state_flags(st, st_args);
    st->add_option("--p", st_p, "outer exponent (integer, a/b, or inf)")->required();
    st->add_option("--q", st_q, "inner exponent (integer, a/b, or inf)")->required();
    st->add_option("--ptilde", st_pt, "dual-side outer exponent (turns on the source form)");
    st->add_option("--qtilde", st_qt, "dual-side inner exponent");
    st->add_option("--tmin", st_tmin, "ladder start (default max(delta, tmax/8))");
    st->add_option("--tmax", st_tmax, "ladder end")->capture_default_str();
    st->add_option("--per-octave", st_per_octave, "ladder rungs per octave")
        ->capture_default_str();
    st->add_flag("--weighted", st_weighted, "weight the source sum by delta");
    st->add_flag("--json", st_json, "emit JSON lines instead of CSV");
    st->add_option("--out", st_out, "output file (default stdout)");

    // sweep
    std::string sw_config, sw_out;
    int sw_jobs = 1;
    bool sw_json = false;
    CLI::App* sw = app.add_subcommand(
        "sweep", "delta-uniformity sweep over a ladder of spacings, from a config file");
    sw->add_option("--config", sw_config, "config file path")->required();
    sw->add_option("--jobs", sw_jobs, "worker threads")->capture_default_str();
    sw->add_flag("--json", sw_json, "emit JSON lines instead of CSV");
    sw->add_option("--out", sw_out, "output file (default stdout)");

    // selftest
    CLI::App* self = app.add_subcommand("selftest", "run the oracle suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(ev)) return run_evolve(ev_args, ev_t, ev_out);
        if (app.got_subcommand(sp)) return run_spectrum(sp_delta, sp_mass, sp_n, sp_out);
        if (app.got_subcommand(lp)) {
            bool have_lambda = lp_lambda_opt->count() > 0;
            bool have_weight = lp_wa_opt->count() > 0 || lp_wb_opt->count() > 0;
            if (!have_lambda && !have_weight) {
                std::cerr << "lp needs --lambda and/or --wa/--wb\n";
                return 2;
            }
            return run_lp(lp_args, lp_lambda, have_lambda, lp_wa, lp_wb, have_weight, lp_out);
        }
        if (app.got_subcommand(dc))
            return run_decay(dc_args, dc_lambda, dc_tmin, dc_tmax, dc_per_octave, dc_json,
                             dc_out);
        if (app.got_subcommand(st))
            return run_strichartz(st_args, st_p, st_q, st_pt, st_qt, st_tmin, st_tmax,
                                  st_per_octave, st_weighted, st_json, st_out);
        if (app.got_subcommand(sw)) return run_sweep(sw_config, sw_jobs, sw_json, sw_out);
        if (app.got_subcommand(self)) {
            std::vector<qwlab::SelfTestResult> results = qwlab::run_selftest();
            return qwlab::report_selftest(std::cout, results) ? 0 : 1;
        }
    } catch (const qwlab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
