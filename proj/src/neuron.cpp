#include "tnn/neuron.hpp"

#include <algorithm>
#include <string>

namespace tnn {

namespace {

// potential(t) - potential(t-1) is the number of ramps still rising at t, so
// a difference array over [0, period] gives every potential in one pass.
struct Crossing {
    SpikeTime time;
    std::int64_t potential;
};

Crossing first_crossing(const RnlNeuron& n, const std::vector<FiniteLine>& lines, std::uint32_t period,
                        std::vector<std::int64_t>& slope) {
    slope.assign(period + 1, 0);
    for (const auto& l : lines) {
        if (l.time >= period) continue;
        const std::uint32_t h = n.weights[l.line].whole_units();
        if (h == 0) continue;
        slope[l.time] += 1;
        slope[std::min<std::uint64_t>(std::uint64_t{l.time} + h, period)] -= 1;
    }
    std::int64_t rising = 0;
    std::int64_t potential = 0;
    for (std::uint32_t t = 0; t < period; ++t) {
        rising += slope[t];
        potential += rising;
        if (potential >= n.threshold) return {SpikeTime::at(t), potential};
    }
    return {SpikeTime::inf(), potential};
}

}  // namespace

std::vector<FiniteLine> finite_lines(const SpikeVolley& volley) {
    std::vector<FiniteLine> out;
    for (std::size_t i = 0; i < volley.size(); ++i) {
        if (volley[i].is_finite()) out.push_back({static_cast<std::uint32_t>(i), volley[i].cycle()});
    }
    return out;
}

SpikeTime neuron_spike_time(const RnlNeuron& n, const SpikeVolley& volley, std::uint32_t period) {
    if (volley.size() != n.weights.size())
        throw ContractError("volley has " + std::to_string(volley.size()) + " lines, neuron has " +
                            std::to_string(n.weights.size()) + " synapses");
    std::vector<std::int64_t> slope;
    return first_crossing(n, finite_lines(volley), period, slope).time;
}

SpikeTime neuron_spike_time(const RnlNeuron& n, const std::vector<FiniteLine>& lines, std::uint32_t period) {
    std::vector<std::int64_t> slope;
    return first_crossing(n, lines, period, slope).time;
}

Column::Column(std::vector<RnlNeuron> neurons) : neurons_(std::move(neurons)) {
    for (const auto& n : neurons_) {
        if (n.weights.size() != input_lines())
            throw ContractError("all neurons in a column must share the input line count");
        if (n.threshold == 0) throw ContractError("neuron threshold must be >= 1");
    }
}

WtaResult Column::select(const std::vector<Crossing>& crossings) {
    WtaResult r{std::nullopt, SpikeTime::inf(), 0};
    for (std::size_t i = 0; i < crossings.size(); ++i) {
        if (crossings[i].time < r.time) {
            r.time = crossings[i].time;
            r.winner = i;
            r.potential = crossings[i].potential;
        }
    }
    if (r.winner) inhibited_ = true;
    return r;
}

WtaResult Column::wta(const SpikeVolley& volley, std::uint32_t period) {
    if (inhibited_) throw ContractError("column_wta on an inhibited column");
    if (volley.size() != input_lines())
        throw ContractError("volley has " + std::to_string(volley.size()) + " lines, column expects " +
                            std::to_string(input_lines()));
    return wta(finite_lines(volley), period);
}

WtaResult Column::wta(const std::vector<FiniteLine>& lines, std::uint32_t period) {
    if (inhibited_) throw ContractError("column_wta on an inhibited column");
    std::vector<Crossing> crossings(neurons_.size());
    std::vector<std::int64_t> slope;
    for (std::size_t i = 0; i < neurons_.size(); ++i) {
        const auto c = first_crossing(neurons_[i], lines, period, slope);
        crossings[i] = {c.time, c.potential};
    }
    return select(crossings);
}

}  // namespace tnn
