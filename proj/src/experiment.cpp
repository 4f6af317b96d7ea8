#include "relaysim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "relaysim/analytic.hpp"

namespace relaysim {
namespace {

constexpr std::uint64_t kDeepTailGate = 10000000;  // runs above this need the flag

std::string trim(const std::string& s) {
    const auto lo = s.find_first_not_of(" \t\r\n");
    if (lo == std::string::npos) return "";
    const auto hi = s.find_last_not_of(" \t\r\n");
    return s.substr(lo, hi - lo + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v < 0 || v != std::floor(v))
        throw ConfigError("config key '" + key + "': expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key '" + key + "': expected true/false");
}

StrategyKind parse_strategy(const std::string& key, const std::string& value) {
    if (value == "random") return StrategyKind::RandomRelay;
    if (value == "closest") return StrategyKind::ClosestRelay;
    if (value == "beamforming") return StrategyKind::DistributedBeamforming;
    if (value == "direct") return StrategyKind::DirectOnly;
    throw ConfigError("config key '" + key + "': unknown strategy '" + value + "'");
}

PayoffKind parse_payoff(const std::string& key, const std::string& value) {
    if (value == "absolute") return PayoffKind::Absolute;
    if (value == "relative") return PayoffKind::Relative;
    throw ConfigError("config key '" + key + "': unknown payoff kind '" + value + "'");
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "scenario") {
        if (value == "single")
            cfg.scenario = ScenarioKind::SingleSource;
        else if (value == "multi")
            cfg.scenario = ScenarioKind::MultiSource;
        else if (value == "multi_trace")
            cfg.scenario = ScenarioKind::MultiSourceTrace;
        else
            throw ConfigError("config key 'scenario': unknown value '" + value + "'");
    } else if (key == "snr_start_db") {
        cfg.snr_start_db = parse_double(key, value);
    } else if (key == "snr_stop_db") {
        cfg.snr_stop_db = parse_double(key, value);
    } else if (key == "snr_step_db") {
        cfg.snr_step_db = parse_double(key, value);
    } else if (key == "rate") {
        cfg.rate = parse_double(key, value);
    } else if (key == "eta") {
        cfg.eta = parse_double(key, value);
    } else if (key == "alpha") {
        cfg.alpha = parse_double(key, value);
    } else if (key == "disc_radius") {
        cfg.disc_radius = parse_double(key, value);
    } else if (key == "dest_distance") {
        cfg.dest_distance = parse_double(key, value);
    } else if (key == "intensity") {
        cfg.intensity = parse_double(key, value);
    } else if (key == "strategies") {
        cfg.strategies.clear();
        for (const auto& item : split_list(value))
            cfg.strategies.push_back(parse_strategy(key, item));
        if (cfg.strategies.empty())
            throw ConfigError("config key 'strategies': list is empty");
    } else if (key == "conditioning") {
        if (value == "unconditional")
            cfg.conditioning = Conditioning::unconditional();
        else if (value == "given_n_at_least_1")
            cfg.conditioning = Conditioning::given_at_least_one();
        else if (value.rfind("fixed_n:", 0) == 0)
            cfg.conditioning = Conditioning::fixed(parse_u64(key, value.substr(8)));
        else
            throw ConfigError("config key 'conditioning': unknown value '" + value + "'");
    } else if (key == "common_random_numbers") {
        cfg.common_random_numbers = parse_bool(key, value);
    } else if (key == "relay_count") {
        cfg.relay_count = parse_u64(key, value);
    } else if (key == "kappa") {
        cfg.kappa = parse_double(key, value);
    } else if (key == "payoff_kinds") {
        cfg.payoff_kinds.clear();
        for (const auto& item : split_list(value))
            cfg.payoff_kinds.push_back(parse_payoff(key, item));
        if (cfg.payoff_kinds.empty())
            throw ConfigError("config key 'payoff_kinds': list is empty");
    } else if (key == "runs") {
        cfg.runs = parse_u64(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_u64(key, value);
    } else if (key == "allow_deep_tail") {
        cfg.allow_deep_tail = parse_bool(key, value);
    } else if (key == "out") {
        cfg.out_path = value;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.snr_step_db > 0.0)) throw ConfigError("config key 'snr_step_db': must be > 0");
    if (cfg.snr_stop_db < cfg.snr_start_db)
        throw ConfigError("config key 'snr_stop_db': must be >= snr_start_db");
    if (cfg.runs < 1) throw ConfigError("config key 'runs': must be >= 1");
    if (cfg.runs > kDeepTailGate && !cfg.allow_deep_tail)
        throw ConfigError("config key 'runs': deep-tail run counts (> 1e7) need "
                          "allow_deep_tail = true");
    if (!(cfg.rate >= 0.0)) throw ConfigError("config key 'rate': must be >= 0");
    if (!(cfg.eta > 0.0 && cfg.eta <= 1.0))
        throw ConfigError("config key 'eta': must be in (0, 1]");
    if (!(cfg.alpha >= 2.0)) throw ConfigError("config key 'alpha': must be >= 2");
    if (!(cfg.disc_radius > 0.0)) throw ConfigError("config key 'disc_radius': must be > 0");
    if (!(cfg.dest_distance > 0.0))
        throw ConfigError("config key 'dest_distance': must be > 0");
    if (!(cfg.intensity >= 0.0)) throw ConfigError("config key 'intensity': must be >= 0");
    if (!(cfg.kappa >= 0.0)) throw ConfigError("config key 'kappa': must be >= 0");
}

std::vector<double> snr_grid(const ExperimentConfig& cfg) {
    std::vector<double> grid;
    for (double db = cfg.snr_start_db; db <= cfg.snr_stop_db + 1e-9; db += cfg.snr_step_db)
        grid.push_back(db);
    return grid;
}

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void run_single_source(const ExperimentConfig& cfg, std::ostream& out) {
    const Disc disc(cfg.disc_radius, cfg.dest_distance);
    const PppConfig ppp(cfg.intensity);
    const ScenarioParams base(1.0, cfg.rate, cfg.alpha, cfg.eta);

    out << "snr_db,strategy,runs,seed,outage_mc,outage_stderr,outage_exact,outage_approx\n";
    for (double db : snr_grid(cfg)) {
        const ScenarioParams params = base.with_power(ScenarioParams::db_to_linear(db));

        std::vector<OutageEstimate> estimates;
        if (cfg.common_random_numbers) {
            estimates = estimate_outage_multi(params, disc, ppp, cfg.strategies,
                                              cfg.conditioning, cfg.runs, cfg.seed);
        } else {
            for (StrategyKind s : cfg.strategies)
                estimates.push_back(estimate_outage(params, disc, ppp, s, cfg.conditioning,
                                                    cfg.runs, cfg.seed));
        }

        for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
            std::string exact_col, approx_col;
            const bool analytic_applies =
                cfg.strategies[s] == StrategyKind::RandomRelay && cfg.alpha == 2.0 &&
                cfg.conditioning.kind != Conditioning::Kind::FixedCount;
            if (analytic_applies) {
                const bool conditioned =
                    cfg.conditioning.kind == Conditioning::Kind::GivenAtLeastOne;
                exact_col =
                    format_double(exact_outage_random(params, disc, ppp, conditioned).value);
                approx_col =
                    format_double(approx_outage_random(params, disc, ppp, conditioned).value);
            }
            out << format_double(db) << ',' << strategy_name(cfg.strategies[s]) << ','
                << cfg.runs << ',' << cfg.seed << ',' << format_double(estimates[s].p_hat)
                << ',' << format_double(estimates[s].std_error) << ',' << exact_col << ','
                << approx_col << '\n';
        }
    }
}

void run_multi_source(const ExperimentConfig& cfg, std::ostream& out) {
    const MultiDeployment deployment{cfg.disc_radius, cfg.dest_distance};
    const ScenarioParams base(1.0, cfg.rate, cfg.alpha, cfg.eta);

    out << "snr_db,payoff_kind,runs,seed,outage_mc,outage_stderr,mean_sweeps\n";
    for (double db : snr_grid(cfg)) {
        const ScenarioParams params = base.with_power(ScenarioParams::db_to_linear(db));
        for (PayoffKind kind : cfg.payoff_kinds) {
            const MultiSourcePoint pt = multi_source_outage(
                deployment, params, cfg.kappa, cfg.relay_count, kind, cfg.runs, cfg.seed);
            out << format_double(db) << ',' << payoff_kind_name(kind) << ',' << cfg.runs
                << ',' << cfg.seed << ',' << format_double(pt.outage) << ','
                << format_double(pt.std_error) << ',' << format_double(pt.mean_sweeps)
                << '\n';
        }
    }
}

void run_multi_trace(const ExperimentConfig& cfg, std::ostream& out) {
    const MultiDeployment deployment{cfg.disc_radius, cfg.dest_distance};
    const ScenarioParams params = ScenarioParams(1.0, cfg.rate, cfg.alpha, cfg.eta)
                                      .with_power(ScenarioParams::db_to_linear(cfg.snr_start_db));

    out << "iteration,payoff_kind,mean_total_value,draws,seed\n";
    for (PayoffKind kind : cfg.payoff_kinds) {
        std::vector<double> sums;  // mean total value after sweep k, carried forward
        for (std::uint64_t t = 0; t < cfg.runs; ++t) {
            TrialRng rng(cfg.seed, t);
            const MultiSourceScenario scenario = sample_multi_scenario(
                deployment, params, cfg.kappa, cfg.relay_count, rng);
            Partition initial =
                Partition::random_assignment(scenario.source_count(), cfg.relay_count, rng);
            const FormationResult result =
                form_coalitions(scenario, kind, std::move(initial));
            if (result.total_value_per_sweep.size() > sums.size())
                sums.resize(result.total_value_per_sweep.size(), 0.0);
            for (std::size_t k = 0; k < sums.size(); ++k) {
                const std::size_t idx =
                    std::min(k, result.total_value_per_sweep.size() - 1);
                sums[k] += result.total_value_per_sweep[idx];
            }
        }
        for (std::size_t k = 0; k < sums.size(); ++k)
            out << (k + 1) << ',' << payoff_kind_name(kind) << ','
                << format_double(sums[k] / static_cast<double>(cfg.runs)) << ',' << cfg.runs
                << ',' << cfg.seed << '\n';
    }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    if (name == "fig2") {
        cfg.scenario = ScenarioKind::SingleSource;
        cfg.rate = 0.1;
        cfg.eta = 0.5;
        cfg.alpha = 2.0;
        cfg.disc_radius = 1.5;
        cfg.dest_distance = 10.0;
        cfg.intensity = 1.0;
        cfg.strategies = {StrategyKind::RandomRelay, StrategyKind::DirectOnly};
        cfg.snr_start_db = 0.0;
        cfg.snr_stop_db = 50.0;
        cfg.snr_step_db = 5.0;
    } else if (name == "fig3a" || name == "fig3b" || name == "fig4") {
        cfg.scenario = ScenarioKind::SingleSource;
        cfg.rate = 1.0;
        cfg.eta = name == "fig3b" ? 1.0 : 0.5;
        cfg.alpha = name == "fig4" ? 3.0 : 2.0;
        cfg.disc_radius = 2.5;
        cfg.dest_distance = 5.0;
        cfg.intensity = 1.0;
        cfg.conditioning = Conditioning::fixed(2);
        cfg.strategies = {StrategyKind::RandomRelay, StrategyKind::ClosestRelay,
                          StrategyKind::DistributedBeamforming, StrategyKind::DirectOnly};
        cfg.snr_start_db = 0.0;
        cfg.snr_stop_db = 40.0;
        cfg.snr_step_db = 5.0;
    } else if (name == "fig5" || name == "fig6" || name == "fig8") {
        cfg.scenario = ScenarioKind::MultiSource;
        cfg.rate = 1.0;
        cfg.eta = 1.0;
        cfg.alpha = 2.0;
        cfg.disc_radius = 5.0;
        cfg.dest_distance = 10.0;
        cfg.relay_count = name == "fig6" ? 4 : 8;
        cfg.kappa = name == "fig8" ? 0.1 : 0.001;
        cfg.snr_start_db = 10.0;
        cfg.snr_stop_db = 40.0;
        cfg.snr_step_db = 5.0;
        cfg.runs = 10000;
    } else if (name == "fig7") {
        cfg.scenario = ScenarioKind::MultiSourceTrace;
        cfg.rate = 1.0;
        cfg.eta = 1.0;
        cfg.alpha = 2.0;
        cfg.disc_radius = 5.0;
        cfg.dest_distance = 10.0;
        cfg.relay_count = 8;
        cfg.kappa = 0.001;
        cfg.snr_start_db = 30.0;
        cfg.snr_stop_db = 30.0;
        cfg.runs = 1000;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    cfg.out_path = name + ".csv";
    return cfg;
}

std::vector<std::string> preset_names() {
    return {"fig2", "fig3a", "fig3b", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

std::vector<Point> MultiDeployment::source_positions() const {
    const double r = disc_radius;
    return {{0.5 * r, r}, {r, 0.5 * r}, {1.5 * r, r}, {r, 1.5 * r}};
}

Point MultiDeployment::destination() const {
    return {disc_radius + dest_distance, disc_radius};
}

Point MultiDeployment::disc_center() const { return {disc_radius, disc_radius}; }

MultiSourceScenario sample_multi_scenario(const MultiDeployment& deployment,
                                          const ScenarioParams& params, double kappa,
                                          std::uint64_t relay_count, TrialRng& rng) {
    const std::vector<Point> sources = deployment.source_positions();
    const Point center = deployment.disc_center();
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::vector<Point> relays(relay_count);
    for (auto& p : relays) {
        const double r = deployment.disc_radius * std::sqrt(rng.next_uniform());
        const double phi = two_pi * rng.next_uniform();
        p = {center.x + r * std::cos(phi), center.y + r * std::sin(phi)};
    }

    std::vector<double> source_dest(sources.size());
    for (auto& v : source_dest) v = rng.next_exponential();
    std::vector<std::vector<double>> source_relay(sources.size(),
                                                  std::vector<double>(relay_count));
    for (auto& row : source_relay)
        for (auto& v : row) v = rng.next_exponential();
    std::vector<double> relay_dest(relay_count);
    for (auto& v : relay_dest) v = rng.next_exponential();

    return MultiSourceScenario(sources, deployment.destination(), std::move(relays),
                               std::move(source_relay), std::move(relay_dest),
                               std::move(source_dest), params, kappa);
}

MultiSourcePoint multi_source_outage(const MultiDeployment& deployment,
                                     const ScenarioParams& params, double kappa,
                                     std::uint64_t relay_count, PayoffKind kind,
                                     std::uint64_t draws, std::uint64_t seed,
                                     unsigned workers) {
    if (draws < 1) throw std::invalid_argument("multi_source_outage: draws must be >= 1");

    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> outage_draws{0};  // draws with a failing source
    std::atomic<std::uint64_t> sweep_sum{0};

    auto worker_fn = [&] {
        for (;;) {
            const std::uint64_t t = next.fetch_add(1);
            if (t >= draws) break;
            TrialRng rng(seed, t);
            const MultiSourceScenario scenario =
                sample_multi_scenario(deployment, params, kappa, relay_count, rng);
            Partition initial = Partition::random_assignment(scenario.source_count(),
                                                             relay_count, rng);
            const FormationResult result = form_coalitions(scenario, kind, std::move(initial));

            bool any_fail = false;
            for (std::size_t m = 0; m < scenario.source_count(); ++m) {
                const double snr = coalition_snr(scenario, result.partition.coalition(m));
                if (snr < params.snr_threshold()) any_fail = true;
            }
            if (any_fail) outage_draws.fetch_add(1);
            sweep_sum.fetch_add(result.sweeps);
        }
    };

    unsigned thread_count = workers;
    if (thread_count == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        thread_count = hw > 0 ? hw : 1;
    }
    if (thread_count <= 1 || draws < 256) {
        worker_fn();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker_fn);
    }

    const double n = static_cast<double>(draws);
    MultiSourcePoint pt;
    pt.outage = static_cast<double>(outage_draws.load()) / n;
    pt.std_error = std::sqrt(pt.outage * (1.0 - pt.outage) / n);
    pt.mean_sweeps = static_cast<double>(sweep_sum.load()) / n;
    return pt;
}

void run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    std::ostringstream buffer;
    try {
        switch (cfg.scenario) {
            case ScenarioKind::SingleSource: run_single_source(cfg, buffer); break;
            case ScenarioKind::MultiSource: run_multi_source(cfg, buffer); break;
            case ScenarioKind::MultiSourceTrace: run_multi_trace(cfg, buffer); break;
        }
    } catch (const QuadratureError& e) {
        throw NumericalError(std::string("quadrature failed: ") + e.what());
    } catch (const FormationError& e) {
        throw NumericalError(std::string("coalition formation failed: ") + e.what());
    }

    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw ConfigError("config key 'out': cannot write '" + cfg.out_path + "'");
    out << buffer.str();
}

}  // namespace relaysim
