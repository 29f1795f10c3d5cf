#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tnn/spike_time.hpp"

namespace tnn {

inline constexpr std::uint16_t kDefaultWeightMax = 7;

// Saturating fixed-point weight stored in half units, so a +0.5u step is exact.
class SynapseWeight {
public:
    constexpr SynapseWeight() = default;
    static constexpr SynapseWeight from_half_units(std::uint16_t h) { return SynapseWeight(h); }
    static constexpr SynapseWeight from_units(std::uint16_t w) { return SynapseWeight(static_cast<std::uint16_t>(2 * w)); }

    constexpr std::uint16_t half_units() const { return half_; }
    // Ramp height: fractional half units do not contribute.
    constexpr std::uint16_t whole_units() const { return half_ / 2; }
    constexpr double value() const { return half_ / 2.0; }

    // Adds delta half units and clamps into [0, 2*w_max].
    constexpr SynapseWeight saturating_add(int delta, std::uint16_t w_max) const {
        const int hi = 2 * int{w_max};
        int v = int{half_} + delta;
        v = v < 0 ? 0 : (v > hi ? hi : v);
        return SynapseWeight(static_cast<std::uint16_t>(v));
    }

    constexpr auto operator<=>(const SynapseWeight&) const = default;

private:
    constexpr explicit SynapseWeight(std::uint16_t h) : half_(h) {}
    std::uint16_t half_ = 0;
};

// Ramp-no-leak response in whole weight units: zero before the input spike,
// then rising by one per cycle from the arrival cycle, capped at floor(w).
constexpr std::uint32_t rnl_response(SynapseWeight w, SpikeTime s, std::uint32_t t) {
    if (s.is_inf() || t < s.cycle()) return 0;
    const std::uint32_t ramp = t - s.cycle() + 1;
    const std::uint32_t height = w.whole_units();
    return ramp < height ? ramp : height;
}

struct RnlNeuron {
    std::vector<SynapseWeight> weights;
    std::uint32_t threshold = 1;
};

class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Earliest t in [0, period) where the summed response reaches the threshold,
// else INF. Throws ContractError on a volley/weight length mismatch.
SpikeTime neuron_spike_time(const RnlNeuron& n, const SpikeVolley& volley, std::uint32_t period);

// Same result, but volley is pre-reduced to its finite lines. Used on the hot
// path where one volley feeds many neurons.
struct FiniteLine {
    std::uint32_t line;
    std::uint32_t time;
};
std::vector<FiniteLine> finite_lines(const SpikeVolley& volley);
SpikeTime neuron_spike_time(const RnlNeuron& n, const std::vector<FiniteLine>& lines, std::uint32_t period);

struct WtaResult {
    std::optional<std::size_t> winner;
    SpikeTime time;              // INF when no winner
    std::int64_t potential = 0;  // winner's summed response at `time`
};

// A column of RNL neurons under 1-winner-take-all lateral inhibition. Once a
// neuron fires the column stays inhibited until reset() at the next grst.
class Column {
public:
    Column() = default;
    Column(std::vector<RnlNeuron> neurons);

    const std::vector<RnlNeuron>& neurons() const { return neurons_; }
    std::vector<RnlNeuron>& neurons() { return neurons_; }
    std::size_t size() const { return neurons_.size(); }
    std::size_t input_lines() const { return neurons_.empty() ? 0 : neurons_.front().weights.size(); }

    bool inhibited() const { return inhibited_; }

    // Winner is the earliest spike, ties to the lowest index. Marks the
    // column inhibited when there is a winner. Throws ContractError if called
    // while inhibited.
    WtaResult wta(const SpikeVolley& volley, std::uint32_t period);
    WtaResult wta(const std::vector<FiniteLine>& lines, std::uint32_t period);

    // grst: lifts inhibition and re-arms the once-per-cycle STDP guard.
    void reset() {
        inhibited_ = false;
        stdp_applied_ = false;
    }

    // Used by STDP to enforce one update per gamma cycle.
    bool stdp_applied() const { return stdp_applied_; }
    void mark_stdp_applied() { stdp_applied_ = true; }

private:
    struct Crossing {
        SpikeTime time;
        std::int64_t potential;
    };
    WtaResult select(const std::vector<Crossing>& crossings);

    std::vector<RnlNeuron> neurons_;
    bool inhibited_ = false;
    bool stdp_applied_ = false;
};

// Free-function form used by tests and the network.
inline WtaResult column_wta(Column& c, const SpikeVolley& volley, std::uint32_t period) {
    return c.wta(volley, period);
}

}  // namespace tnn
