#ifndef RELAYSIM_COALITION_HPP
#define RELAYSIM_COALITION_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/rng.hpp"

namespace relaysim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point& a, const Point& b) noexcept;

/// Multi-source network: M sources share N harvesting relays and one
/// destination. Fadings are per source-relay pair for the first hop
/// (a relay harvests from the source it serves), per relay for the second
/// hop, and per source for the direct link.
class MultiSourceScenario {
  public:
    MultiSourceScenario(std::vector<Point> sources, Point destination,
                        std::vector<Point> relays,
                        std::vector<std::vector<double>> source_relay_fading,
                        std::vector<double> relay_dest_fading,
                        std::vector<double> source_dest_fading, ScenarioParams params,
                        double cost_coefficient);

    std::size_t source_count() const noexcept { return sources_.size(); }
    std::size_t relay_count() const noexcept { return relays_.size(); }
    const ScenarioParams& params() const noexcept { return params_; }
    double cost_coefficient() const noexcept { return cost_coefficient_; }

    /// Harvested power the i-th relay has for forwarding source m's message.
    double relay_power_for_source(std::size_t m, std::size_t i) const;

    /// SNR increment the i-th relay adds to coalition m's sum:
    /// P_mi |g_i|^2 / (1 + c_i^alpha).
    double contribution(std::size_t m, std::size_t i) const noexcept {
        return contribution_[m][i];
    }

    /// Direct-link SNR of source m.
    double direct_snr(std::size_t m) const noexcept { return direct_snr_[m]; }

    /// Whether relay i decodes source m's message.
    bool qualified(std::size_t m, std::size_t i) const noexcept {
        return qualified_[m][i];
    }

  private:
    std::vector<Point> sources_;
    Point destination_;
    std::vector<Point> relays_;
    std::vector<std::vector<double>> source_relay_fading_;
    std::vector<double> relay_dest_fading_;
    std::vector<double> source_dest_fading_;
    ScenarioParams params_;
    double cost_coefficient_;

    std::vector<std::vector<double>> contribution_;
    std::vector<std::vector<bool>> qualified_;
    std::vector<double> direct_snr_;
};

/// One source plus the relays currently helping it.
struct Coalition {
    std::size_t source = 0;
    std::vector<std::size_t> relays;

    bool contains(std::size_t relay) const noexcept;
};

enum class PayoffKind {
    Absolute,  // a relay's raw SNR increment, minus the coordination cost
    Relative,  // the increment as a fraction of the coalition SNR, minus cost
};

const char* payoff_kind_name(PayoffKind kind) noexcept;

/// Coalition SNR: the direct link plus every member relay's contribution.
double coalition_snr(const MultiSourceScenario& scenario, const Coalition& coalition);

/// Coordination cost kappa * |qualified members|.
double coalition_cost(const MultiSourceScenario& scenario, const Coalition& coalition);

/// Payoff of member relay i. Relative payoff is defined as 0 when the
/// coalition SNR is 0. Throws std::invalid_argument when i is not a member.
double payoff(const MultiSourceScenario& scenario, std::size_t relay,
              const Coalition& coalition, PayoffKind kind);

/// Sum of the member relays' payoffs; 0 for a relay-less coalition.
double coalition_value(const MultiSourceScenario& scenario, const Coalition& coalition,
                       PayoffKind kind);

/// Preference of relay i for leaving `from` and joining `to` (i not yet a
/// member of `to`): both the selfish test (its payoff strictly improves)
/// and the network test (the two coalitions' combined value strictly
/// improves) must hold.
bool prefers(const MultiSourceScenario& scenario, std::size_t relay, const Coalition& from,
             const Coalition& to, PayoffKind kind);

/// Assignment of every relay to exactly one source coalition.
class Partition {
  public:
    Partition(std::size_t source_count, std::vector<std::size_t> source_of_relay);

    static Partition random_assignment(std::size_t source_count, std::size_t relay_count,
                                       TrialRng& rng);

    std::size_t source_count() const noexcept { return coalitions_.size(); }
    std::size_t relay_count() const noexcept { return source_of_relay_.size(); }
    std::size_t source_of(std::size_t relay) const { return source_of_relay_.at(relay); }
    const Coalition& coalition(std::size_t m) const { return coalitions_.at(m); }

    void move_relay(std::size_t relay, std::size_t new_source);

  private:
    std::vector<Coalition> coalitions_;
    std::vector<std::size_t> source_of_relay_;
};

double total_value(const MultiSourceScenario& scenario, const Partition& partition,
                   PayoffKind kind);

enum class SweepOrder { IndexAscending };

struct FormationResult {
    Partition partition;
    std::vector<double> total_value_per_sweep;  // after each completed sweep
    std::vector<double> total_value_per_move;   // after each accepted move
    std::size_t sweeps = 0;
    std::size_t moves = 0;
};

/// Thrown when the sweep budget runs out before a stable partition forms.
class FormationError : public std::runtime_error {
  public:
    FormationError(const char* what, Partition partial)
        : std::runtime_error(what), partition(std::move(partial)) {}
    Partition partition;
};

/// Round-robin hedonic iteration: each relay in turn moves to the
/// best strictly-preferred coalition (ties to the lowest source index),
/// until a full sweep makes no move.
FormationResult form_coalitions(const MultiSourceScenario& scenario, PayoffKind kind,
                                Partition initial,
                                SweepOrder order = SweepOrder::IndexAscending,
                                std::size_t max_sweeps = 1000);

/// No relay strictly prefers any other coalition.
bool is_nash_stable(const MultiSourceScenario& scenario, const Partition& partition,
                    PayoffKind kind);

}  // namespace relaysim

#endif
