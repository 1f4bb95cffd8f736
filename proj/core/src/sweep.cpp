#include "qwlab/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "qwlab/spectral.hpp"

namespace qwlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t c = s.find(',', pos);
        if (c == std::string::npos) c = s.size();
        std::string tok = trim(s.substr(pos, c - pos));
        if (!tok.empty()) out.push_back(tok);
        pos = c + 1;
    }
    return out;
}

double parse_double(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw ConfigError("trailing junk in number '" + tok + "'", line);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad number '" + tok + "'", line);
    }
}

std::uint64_t parse_u64(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(tok, &used);
        if (used != tok.size()) throw ConfigError("trailing junk in integer '" + tok + "'", line);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad integer '" + tok + "'", line);
    }
}

AdmissiblePair parse_pair_token(const std::string& tok, int line) {
    std::size_t c = tok.find(':');
    if (c == std::string::npos || tok.find(':', c + 1) != std::string::npos)
        throw ConfigError("pair '" + tok + "' must look like p:q", line);
    AdmissiblePair pr;
    try {
        pr.p = Exponent::parse(trim(tok.substr(0, c)));
        pr.q = Exponent::parse(trim(tok.substr(c + 1)));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("pair '") + tok + "': " + e.what(), line);
    }
    pr.kind = PairKind::discrete;
    return pr;
}

bool parse_bool(const std::string& tok, int line) {
    if (tok == "true" || tok == "1") return true;
    if (tok == "false" || tok == "0") return false;
    throw ConfigError("bad boolean '" + tok + "' (use true/false)", line);
}

} // namespace

SweepConfig parse_config_text(const std::string& text) {
    SweepConfig cfg;
    std::set<std::string> seen;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    bool any = false;
    while (std::getline(is, raw)) {
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + line + "'", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno);
        if (!seen.insert(key).second)
            throw ConfigError("duplicate key '" + key + "'", lineno);
        any = true;

        if (key == "delta_ladder") {
            cfg.delta_ladder.clear();
            for (const auto& t : split_list(val)) cfg.delta_ladder.push_back(parse_double(t, lineno));
        } else if (key == "mass") {
            cfg.mass = parse_double(val, lineno);
        } else if (key == "lambda_ladder") {
            cfg.lambda_ladder.clear();
            for (const auto& t : split_list(val)) cfg.lambda_ladder.push_back(parse_double(t, lineno));
        } else if (key == "t_max") {
            cfg.t_max = parse_double(val, lineno);
        } else if (key == "pairs") {
            cfg.pairs.clear();
            for (const auto& t : split_list(val)) cfg.pairs.push_back(parse_pair_token(t, lineno));
        } else if (key == "ring_size") {
            cfg.ring_size = (std::size_t)parse_u64(val, lineno);
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (const auto& t : split_list(val)) cfg.seeds.push_back(parse_u64(t, lineno));
        } else if (key == "state") {
            if (val == "impulse") cfg.state = StateKind::impulse;
            else if (val == "gaussian") cfg.state = StateKind::gaussian;
            else if (val == "random") cfg.state = StateKind::random;
            else throw ConfigError("unknown state '" + val + "'", lineno);
        } else if (key == "width") {
            cfg.width = parse_double(val, lineno);
        } else if (key == "carrier") {
            cfg.carrier = parse_double(val, lineno);
        } else if (key == "duhamel_weighted") {
            cfg.duhamel_weighted = parse_bool(val, lineno);
        } else {
            throw ConfigError("unknown key '" + key + "'", lineno);
        }
        cfg.echo_lines.push_back(key + " = " + val);
    }
    (void)any;
    return cfg;
}

SweepConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void SweepConfig::validate() const {
    std::vector<std::string> bad;
    if (delta_ladder.empty()) bad.push_back("delta_ladder is empty");
    for (double d : delta_ladder) {
        if (!(d > 0.0) || d > 1.0 || !std::isfinite(d))
            bad.push_back("delta " + std::to_string(d) + " outside (0, 1]");
        else if (!WalkParams(d, mass).mass_window_ok())
            bad.push_back("delta " + std::to_string(d) + ", mass " + std::to_string(mass) +
                          " leaves the mass window delta*|m| in (0, pi/2)");
    }
    double delta_min = delta_ladder.empty() ? 1.0 : delta_ladder[0];
    for (double d : delta_ladder) delta_min = std::min(delta_min, d);
    for (double l : lambda_ladder) {
        if (!(l > 0.0) || !std::isfinite(l))
            bad.push_back("lambda " + std::to_string(l) + " must be positive");
        else if (l >= 2.0 * FrequencyGrid::pi() / delta_min)
            bad.push_back("lambda " + std::to_string(l) +
                          " is >= 2pi/delta for every delta in the ladder");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        bad.push_back("t_max must be positive");
    } else {
        for (double d : delta_ladder) {
            if (!(d > 0.0) || d > 1.0 || !std::isfinite(d)) continue;
            try {
                if (steps_of(t_max, d) < 1)
                    bad.push_back("t_max " + std::to_string(t_max) + " is below delta " +
                                  std::to_string(d));
            } catch (const TimeGridError&) {
                bad.push_back("t_max " + std::to_string(t_max) +
                              " is not on the time grid of delta " + std::to_string(d));
            }
        }
    }
    if (ring_size < 2 || (ring_size & (ring_size - 1)) != 0)
        bad.push_back("ring_size must be a power of two, at least 2");
    if (seeds.empty()) bad.push_back("seeds is empty");
    if (!(width > 0.0)) bad.push_back("width must be positive");
    for (const auto& pr : pairs) {
        try {
            require_admissible(pr);
        } catch (const std::exception& e) {
            bad.push_back(e.what());
        }
    }
    if (!bad.empty()) {
        std::string msg = "invalid sweep config: ";
        for (std::size_t i = 0; i < bad.size(); ++i) {
            if (i) msg += "; ";
            msg += bad[i];
        }
        throw ConfigError(msg);
    }
}

std::vector<RatioRecord> uniformity_sweep(const SweepConfig& cfg, int jobs) {
    cfg.validate();
    const std::size_t nseeds = cfg.seeds.size();
    const std::size_t npairs = cfg.pairs.size();

    // lambdas usable at each delta (config order preserved)
    std::vector<std::vector<double>> lambdas_at(cfg.delta_ladder.size());
    for (std::size_t di = 0; di < cfg.delta_ladder.size(); ++di)
        for (double l : cfg.lambda_ladder)
            if (l < 2.0 * FrequencyGrid::pi() / cfg.delta_ladder[di])
                lambdas_at[di].push_back(l);

    // flat output layout ordered by (delta, pair, lambda, seed)
    std::vector<std::size_t> delta_offset(cfg.delta_ladder.size() + 1, 0);
    for (std::size_t di = 0; di < cfg.delta_ladder.size(); ++di)
        delta_offset[di + 1] =
            delta_offset[di] + (npairs + lambdas_at[di].size()) * nseeds;
    std::vector<RatioRecord> out(delta_offset.back());

    struct Task {
        std::size_t di, si;
    };
    std::vector<Task> tasks;
    tasks.reserve(cfg.delta_ladder.size() * nseeds);
    for (std::size_t di = 0; di < cfg.delta_ladder.size(); ++di)
        for (std::size_t si = 0; si < nseeds; ++si) tasks.push_back({di, si});

    auto run_task = [&](const Task& tk) {
        const double delta = cfg.delta_ladder[tk.di];
        WalkParams p(delta, cfg.mass);
        StateOptions opt;
        opt.width = cfg.width;
        opt.carrier = cfg.carrier;
        opt.seed = cfg.seeds[tk.si];
        SpinorField u = make_state(cfg.state, p, cfg.ring_size, opt);
        const std::size_t base = delta_offset[tk.di];
        for (std::size_t pi = 0; pi < npairs; ++pi) {
            RatioRecord r = homogeneous_ratio(u, cfg.pairs[pi], cfg.t_max);
            r.seed = cfg.seeds[tk.si];
            out[base + pi * nseeds + tk.si] = r;
        }
        for (std::size_t li = 0; li < lambdas_at[tk.di].size(); ++li) {
            RatioRecord r = dispersive_ratio(u, lambdas_at[tk.di][li], cfg.t_max);
            r.seed = cfg.seeds[tk.si];
            out[base + (npairs + li) * nseeds + tk.si] = r;
        }
    };

    if (jobs <= 1 || tasks.size() <= 1) {
        for (const auto& tk : tasks) run_task(tk);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                run_task(tasks[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::size_t nthreads = std::min<std::size_t>((std::size_t)jobs, tasks.size());
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}
