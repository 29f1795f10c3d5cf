#include "tnn/stdp.hpp"

namespace tnn {

const char* to_string(RuleCase c) {
    switch (c) {
    case RuleCase::capture: return "capture";
    case RuleCase::backoff_late: return "backoff_late";
    case RuleCase::search: return "search";
    case RuleCase::backoff_noin: return "backoff_noin";
    case RuleCase::quiet: return "quiet";
    }
    return "?";
}

namespace {

void update_neuron(RnlNeuron& n, const SpikeVolley& volley, SpikeTime z, const StdpParams& p) {
    for (std::size_t i = 0; i < n.weights.size(); ++i)
        n.weights[i] = apply_update(n.weights[i], classify_case(volley[i], z), p);
}

}  // namespace

void update_column(Column& col, const SpikeVolley& volley, std::optional<std::size_t> winner,
                   SpikeTime winner_time, const StdpParams& p) {
    if (col.stdp_applied()) throw ContractError("STDP already applied to this column in the current gamma cycle");
    if (volley.size() != col.input_lines()) throw ContractError("STDP volley width does not match column fan-in");
    if (winner && (*winner >= col.size() || winner_time.is_inf()))
        throw ContractError("STDP winner must be a valid neuron with a finite spike time");

    if (winner) {
        update_neuron(col.neurons()[*winner], volley, winner_time, p);
    } else {
        for (auto& n : col.neurons()) update_neuron(n, volley, SpikeTime::inf(), p);
    }
    col.mark_stdp_applied();
}

}  // namespace tnn
