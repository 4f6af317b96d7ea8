#ifndef RELAYSIM_EXPERIMENT_HPP
#define RELAYSIM_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaysim/coalition.hpp"
#include "relaysim/montecarlo.hpp"

namespace relaysim {

/// Bad or missing configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A numerical stage (quadrature, game convergence) failed.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind { SingleSource, MultiSource, MultiSourceTrace };

struct ExperimentConfig {
    ScenarioKind scenario = ScenarioKind::SingleSource;

    double snr_start_db = 0.0;
    double snr_stop_db = 0.0;
    double snr_step_db = 5.0;

    double rate = 0.1;
    double eta = 0.5;
    double alpha = 2.0;
    double disc_radius = 1.5;
    double dest_distance = 10.0;

    // single-source
    std::vector<StrategyKind> strategies{StrategyKind::RandomRelay};
    double intensity = 1.0;
    Conditioning conditioning = Conditioning::unconditional();
    bool common_random_numbers = false;

    // multi-source (four sources on the paper's cross layout)
    std::uint64_t relay_count = 8;
    double kappa = 0.001;
    std::vector<PayoffKind> payoff_kinds{PayoffKind::Absolute, PayoffKind::Relative};

    std::uint64_t runs = 100000;
    std::uint64_t seed = 1;
    bool allow_deep_tail = false;  // permits runs above the deep-tail gate
    std::string out_path = "sweep.csv";
};

/// Parses the flat key-value config format (`key = value`, `#` comments).
/// Throws ConfigError naming the first offending key.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/// Bundled figure configurations; throws ConfigError for an unknown name.
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// The four-source deployment used by the multi-source experiments: disc of
/// radius R_D centred at (R_D, R_D), sources on the half-radius cross,
/// destination at (R_D + d, R_D).
struct MultiDeployment {
    double disc_radius;
    double dest_distance;

    std::vector<Point> source_positions() const;
    Point destination() const;
    Point disc_center() const;
};

/// Draws one multi-source scenario: uniform relay positions, unit-mean
/// exponential fadings for every link.
MultiSourceScenario sample_multi_scenario(const MultiDeployment& deployment,
                                          const ScenarioParams& params, double kappa,
                                          std::uint64_t relay_count, TrialRng& rng);

struct MultiSourcePoint {
    double outage = 0.0;
    double std_error = 0.0;
    double mean_sweeps = 0.0;
};

/// Runs `draws` coalition games at one SNR point. `outage` is the fraction
/// of draws in which at least one source's coalition SNR falls below the
/// rate threshold after formation; `mean_sweeps` averages the sweeps to
/// convergence. Draw t of every payoff kind sees the same scenario and
/// initial partition (matched seeds).
MultiSourcePoint multi_source_outage(const MultiDeployment& deployment,
                                     const ScenarioParams& params, double kappa,
                                     std::uint64_t relay_count, PayoffKind kind,
                                     std::uint64_t draws, std::uint64_t seed,
                                     unsigned workers = 0);

/// Executes the configured sweep and writes the CSV. Throws ConfigError or
/// NumericalError; any other exception is a bug.
void run_experiment(const ExperimentConfig& config);

}  // namespace relaysim

#endif
