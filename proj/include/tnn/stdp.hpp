#pragma once

#include <cstdint>
#include <optional>

#include "tnn/neuron.hpp"
#include "tnn/spike_time.hpp"

namespace tnn {

// Update magnitudes in half units. u = 2 half units; the no-input/no-output
// rule adds half of that.
struct StdpParams {
    std::uint16_t u_capture = 2;
    std::uint16_t u_backoff = 2;
    std::uint16_t u_search = 2;
    std::uint16_t u_quiet = 1;
    std::uint16_t w_max = kDefaultWeightMax;
};

// x = input line spike time, z = column output (winner) spike time.
//   capture       x <= z, both finite        +u_capture
//   backoff_late  x >  z, both finite        -u_backoff
//   search        x finite, z INF            +u_search
//   backoff_noin  x INF, z finite            -u_backoff
//   quiet         x INF, z INF               +u_quiet
enum class RuleCase : std::uint8_t { capture, backoff_late, search, backoff_noin, quiet };

const char* to_string(RuleCase c);

constexpr RuleCase classify_case(SpikeTime x, SpikeTime z) {
    if (x.is_finite() && z.is_finite()) return x <= z ? RuleCase::capture : RuleCase::backoff_late;
    if (x.is_finite()) return RuleCase::search;
    if (z.is_finite()) return RuleCase::backoff_noin;
    return RuleCase::quiet;
}

constexpr SynapseWeight apply_update(SynapseWeight w, RuleCase c, const StdpParams& p) {
    switch (c) {
    case RuleCase::capture: return w.saturating_add(p.u_capture, p.w_max);
    case RuleCase::backoff_late:
    case RuleCase::backoff_noin: return w.saturating_add(-int{p.u_backoff}, p.w_max);
    case RuleCase::search: return w.saturating_add(p.u_search, p.w_max);
    case RuleCase::quiet: return w.saturating_add(p.u_quiet, p.w_max);
    }
    return w;
}

// End-of-cycle update for one column. With a winner only the winner's
// synapses move; with no winner every neuron takes the search/quiet rows.
// Throws ContractError if the column was already updated this cycle.
void update_column(Column& col, const SpikeVolley& volley, std::optional<std::size_t> winner,
                   SpikeTime winner_time, const StdpParams& p);

}  // namespace tnn
