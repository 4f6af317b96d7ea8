#include "relaysim/coalition.hpp"

#include <algorithm>
#include <cmath>

namespace relaysim {

double distance(const Point& a, const Point& b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

MultiSourceScenario::MultiSourceScenario(std::vector<Point> sources, Point destination,
                                         std::vector<Point> relays,
                                         std::vector<std::vector<double>> source_relay_fading,
                                         std::vector<double> relay_dest_fading,
                                         std::vector<double> source_dest_fading,
                                         ScenarioParams params, double cost_coefficient)
    : sources_(std::move(sources)),
      destination_(destination),
      relays_(std::move(relays)),
      source_relay_fading_(std::move(source_relay_fading)),
      relay_dest_fading_(std::move(relay_dest_fading)),
      source_dest_fading_(std::move(source_dest_fading)),
      params_(params),
      cost_coefficient_(cost_coefficient) {
    const std::size_t m_count = sources_.size();
    const std::size_t n_count = relays_.size();
    if (m_count < 1) throw std::invalid_argument("MultiSourceScenario: need at least one source");
    if (!(cost_coefficient_ >= 0.0))
        throw std::invalid_argument("MultiSourceScenario: cost coefficient must be >= 0");
    if (source_relay_fading_.size() != m_count || source_dest_fading_.size() != m_count ||
        relay_dest_fading_.size() != n_count)
        throw std::invalid_argument("MultiSourceScenario: fading dimensions mismatch");
    for (const auto& row : source_relay_fading_)
        if (row.size() != n_count)
            throw std::invalid_argument("MultiSourceScenario: fading dimensions mismatch");

    const double alpha = params_.path_loss_exponent;
    contribution_.assign(m_count, std::vector<double>(n_count, 0.0));
    qualified_.assign(m_count, std::vector<bool>(n_count, false));
    direct_snr_.resize(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        const double d0m = distance(sources_[m], destination_);
        if (!(d0m > 0.0))
            throw std::invalid_argument("MultiSourceScenario: distances must be > 0");
        direct_snr_[m] = params_.power * source_dest_fading_[m] * path_gain(d0m, alpha);
        for (std::size_t i = 0; i < n_count; ++i) {
            const double dmi = distance(sources_[m], relays_[i]);
            const double ci = distance(relays_[i], destination_);
            if (!(dmi > 0.0) || !(ci > 0.0))
                throw std::invalid_argument("MultiSourceScenario: distances must be > 0");
            const double x_mi = source_relay_fading_[m][i] * path_gain(dmi, alpha);
            const double p_mi = harvested_relay_power(params_, x_mi);
            qualified_[m][i] = x_mi * params_.power > params_.snr_threshold();
            contribution_[m][i] = p_mi * relay_dest_fading_[i] * path_gain(ci, alpha);
        }
    }
}

double MultiSourceScenario::relay_power_for_source(std::size_t m, std::size_t i) const {
    const double dmi = distance(sources_.at(m), relays_.at(i));
    const double x_mi =
        source_relay_fading_[m][i] * path_gain(dmi, params_.path_loss_exponent);
    return harvested_relay_power(params_, x_mi);
}

bool Coalition::contains(std::size_t relay) const noexcept {
    return std::find(relays.begin(), relays.end(), relay) != relays.end();
}

const char* payoff_kind_name(PayoffKind kind) noexcept {
    return kind == PayoffKind::Absolute ? "absolute" : "relative";
}

double coalition_snr(const MultiSourceScenario& scenario, const Coalition& coalition) {
    double snr = scenario.direct_snr(coalition.source);
    for (std::size_t i : coalition.relays) snr += scenario.contribution(coalition.source, i);
    return snr;
}

double coalition_cost(const MultiSourceScenario& scenario, const Coalition& coalition) {
    std::size_t qualified = 0;
    for (std::size_t i : coalition.relays)
        if (scenario.qualified(coalition.source, i)) ++qualified;
    return scenario.cost_coefficient() * static_cast<double>(qualified);
}

double payoff(const MultiSourceScenario& scenario, std::size_t relay,
              const Coalition& coalition, PayoffKind kind) {
    if (!coalition.contains(relay))
        throw std::invalid_argument("payoff: relay is not a member of the coalition");
    const double increment = scenario.contribution(coalition.source, relay);
    const double cost = coalition_cost(scenario, coalition);
    if (kind == PayoffKind::Absolute) return increment - cost;
    const double snr = coalition_snr(scenario, coalition);
    if (snr == 0.0) return 0.0;
    return increment / snr - cost;
}

double coalition_value(const MultiSourceScenario& scenario, const Coalition& coalition,
                       PayoffKind kind) {
    double value = 0.0;
    for (std::size_t i : coalition.relays) value += payoff(scenario, i, coalition, kind);
    return value;
}

bool prefers(const MultiSourceScenario& scenario, std::size_t relay, const Coalition& from,
             const Coalition& to, PayoffKind kind) {
    if (!from.contains(relay))
        throw std::invalid_argument("prefers: relay is not a member of `from`");
    if (from.source == to.source)
        throw std::invalid_argument("prefers: coalitions must differ");

    Coalition to_with = to;
    to_with.relays.push_back(relay);

    // Selfish criterion.
    if (!(payoff(scenario, relay, from, kind) < payoff(scenario, relay, to_with, kind)))
        return false;

    // Network criterion: total value of the two touched coalitions must
    // strictly increase under the move.
    Coalition from_without = from;
    std::erase(from_without.relays, relay);
    const double before = coalition_value(scenario, from, kind) +
                          coalition_value(scenario, to, kind);
    const double after = coalition_value(scenario, from_without, kind) +
                         coalition_value(scenario, to_with, kind);
    return before < after;
}

Partition::Partition(std::size_t source_count, std::vector<std::size_t> source_of_relay)
    : source_of_relay_(std::move(source_of_relay)) {
    if (source_count < 1) throw std::invalid_argument("Partition: need at least one source");
    coalitions_.resize(source_count);
    for (std::size_t m = 0; m < source_count; ++m) coalitions_[m].source = m;
    for (std::size_t i = 0; i < source_of_relay_.size(); ++i) {
        const std::size_t m = source_of_relay_[i];
        if (m >= source_count)
            throw std::invalid_argument("Partition: relay assigned to unknown source");
        coalitions_[m].relays.push_back(i);
    }
}

Partition Partition::random_assignment(std::size_t source_count, std::size_t relay_count,
                                       TrialRng& rng) {
    std::vector<std::size_t> assignment(relay_count);
    for (auto& a : assignment) a = static_cast<std::size_t>(rng.next_index(source_count));
    return Partition(source_count, std::move(assignment));
}

void Partition::move_relay(std::size_t relay, std::size_t new_source) {
    const std::size_t old_source = source_of_relay_.at(relay);
    if (old_source == new_source) return;
    std::erase(coalitions_[old_source].relays, relay);
    coalitions_[new_source].relays.push_back(relay);
    source_of_relay_[relay] = new_source;
}

double total_value(const MultiSourceScenario& scenario, const Partition& partition,
                   PayoffKind kind) {
    double total = 0.0;
    for (std::size_t m = 0; m < partition.source_count(); ++m)
        total += coalition_value(scenario, partition.coalition(m), kind);
    return total;
}

FormationResult form_coalitions(const MultiSourceScenario& scenario, PayoffKind kind,
                                Partition initial, SweepOrder /*order*/,
                                std::size_t max_sweeps) {
    if (initial.source_count() != scenario.source_count() ||
        initial.relay_count() != scenario.relay_count())
        throw std::invalid_argument("form_coalitions: partition does not match scenario");

    FormationResult result{std::move(initial), {}, {}, 0, 0};
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        bool moved_this_sweep = false;
        for (std::size_t relay = 0; relay < scenario.relay_count(); ++relay) {
            const std::size_t current = result.partition.source_of(relay);
            const Coalition& from = result.partition.coalition(current);

            bool found = false;
            std::size_t best_target = 0;
            double best_payoff = 0.0;
            for (std::size_t m = 0; m < scenario.source_count(); ++m) {
                if (m == current) continue;
                const Coalition& to = result.partition.coalition(m);
                if (!prefers(scenario, relay, from, to, kind)) continue;
                Coalition to_with = to;
                to_with.relays.push_back(relay);
                const double gain = payoff(scenario, relay, to_with, kind);
                if (!found || gain > best_payoff) {
                    found = true;
                    best_target = m;
                    best_payoff = gain;
                }
            }
            if (found) {
                result.partition.move_relay(relay, best_target);
                result.moves += 1;
                result.total_value_per_move.push_back(total_value(scenario, result.partition, kind));
                moved_this_sweep = true;
            }
        }
        result.sweeps += 1;
        result.total_value_per_sweep.push_back(total_value(scenario, result.partition, kind));
        if (!moved_this_sweep) return result;
    }
    throw FormationError("form_coalitions: sweep budget exhausted before stability",
                         result.partition);
}

bool is_nash_stable(const MultiSourceScenario& scenario, const Partition& partition,
                    PayoffKind kind) {
    for (std::size_t relay = 0; relay < partition.relay_count(); ++relay) {
        const std::size_t current = partition.source_of(relay);
        for (std::size_t m = 0; m < partition.source_count(); ++m) {
            if (m == current) continue;
            if (prefers(scenario, relay, partition.coalition(current), partition.coalition(m),
                        kind))
                return false;
        }
    }
    return true;
}

}  // namespace relaysim
