#include "tnn/network.hpp"

#include <array>
#include <istream>
#include <ostream>

namespace tnn {

const char* to_string(GammaMode m) { return m == GammaMode::relaxed ? "relaxed" : "fixed"; }

void NetworkConfig::validate() const {
    if (layers.empty()) throw NetworkError("network needs at least one layer");
    for (const auto& l : layers) {
        if (l.columns == 0 || l.neurons_per_column == 0)
            throw NetworkError("layer column and neuron counts must be >= 1");
    }
    if (gamma_period == 0) throw NetworkError("gamma period must be >= 1");
    if (gamma_period > 0xFFFE) throw NetworkError("gamma period too large");
    if (thresholds.empty() || (thresholds.size() != 1 && thresholds.size() != layers.size()))
        throw NetworkError("give one threshold, or one per layer");
    for (auto t : thresholds) {
        if (t == 0) throw NetworkError("thresholds must be >= 1");
    }
    if (encoder.family != EncoderKind::Family::posneg && encoder.period != gamma_period)
        throw NetworkError("linear/log encoder period must equal the gamma period");
    encoder.validate();
}

void write_winners_csv(const RunSummary& s, std::ostream& out) {
    out << "image,column,neuron,time\n";
    for (const auto& w : s.winners) {
        out << w.image << ',';
        if (w.column) out << *w.column;
        out << ',';
        if (w.neuron) out << *w.neuron;
        out << ',' << w.time << '\n';
    }
}

Network::Network(NetworkConfig cfg, std::size_t input_lines) : cfg_(std::move(cfg)), input_lines_(input_lines) {
    cfg_.validate();
    if (input_lines_ == 0) throw NetworkError("network needs at least one input line");

    std::mt19937_64 rng(cfg_.seed);
    std::uniform_int_distribution<int> half_units(0, 2 * cfg_.stdp.w_max);

    std::size_t fan_in = input_lines_;
    for (std::size_t li = 0; li < cfg_.layers.size(); ++li) {
        const auto& shape = cfg_.layers[li];
        std::vector<Column> columns;
        columns.reserve(shape.columns);
        for (std::uint32_t c = 0; c < shape.columns; ++c) {
            std::vector<RnlNeuron> neurons(shape.neurons_per_column);
            for (auto& n : neurons) {
                n.threshold = cfg_.threshold_for(li);
                n.weights.resize(fan_in);
                for (auto& w : n.weights) w = SynapseWeight::from_half_units(static_cast<std::uint16_t>(half_units(rng)));
            }
            columns.emplace_back(std::move(neurons));
        }
        layers_.push_back(std::move(columns));
        fan_in = shape.columns;  // next layer sees one line per column
    }
}

CycleResult Network::run_gamma_cycle(const SpikeVolley& volley, bool learn) {
    if (volley.size() != input_lines_)
        throw NetworkError("volley has " + std::to_string(volley.size()) + " lines, layer 0 expects " +
                           std::to_string(input_lines_));
    const std::uint32_t T = cfg_.gamma_period;

    CycleResult out;
    std::vector<SpikeVolley> layer_inputs;
    layer_inputs.push_back(volley);
    for (auto& layer : layers_) {
        const auto lines = finite_lines(layer_inputs.back());
        std::vector<WtaResult> winners;
        winners.reserve(layer.size());
        for (auto& col : layer) winners.push_back(col.wta(lines, T));
        SpikeVolley next(layer.size());
        for (std::size_t c = 0; c < winners.size(); ++c) next[c] = winners[c].time;
        out.layer_winners.push_back(std::move(winners));
        layer_inputs.push_back(std::move(next));
    }

    // Clock the grst pair; only the final layer is monitored.
    const auto& final_winners = out.layer_winners.back();
    GammaClock clock(T, final_winners.size(), cfg_.mode == GammaMode::relaxed);
    std::vector<bool> spiked(final_winners.size());
    for (std::uint32_t slot = 0;; ++slot) {
        for (std::size_t c = 0; c < final_winners.size(); ++c)
            spiked[c] = final_winners[c].time == SpikeTime::at(slot);
        const auto tick = clock.step(spiked);
        if (tick.grst) {
            out.length = slot + 1;
            out.record.cause = tick.cause;
            break;
        }
    }
    out.record.length = out.length;

    // Spikes that would have landed after grst never happen.
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        auto& winners = out.layer_winners[li];
        for (auto& w : winners) {
            if (w.time.is_finite() && w.time.cycle() >= out.length) w = WtaResult{std::nullopt, SpikeTime::inf(), 0};
        }
        if (li + 1 < layers_.size()) {
            for (std::size_t c = 0; c < winners.size(); ++c) layer_inputs[li + 1][c] = winners[c].time;
        }
    }

    // Image-level readout: earliest column winner; equal times go to the
    // larger potential at that time, then to the lower column index.
    const auto& fw = out.layer_winners.back();
    out.winner.time = SpikeTime::inf();
    std::int64_t best_potential = 0;
    for (std::size_t c = 0; c < fw.size(); ++c) {
        out.record.winners.push_back({static_cast<std::uint32_t>(c), fw[c].time});
        if (!fw[c].winner) continue;
        if (fw[c].time < out.winner.time || (fw[c].time == out.winner.time && fw[c].potential > best_potential)) {
            best_potential = fw[c].potential;
            out.winner.column = static_cast<std::uint32_t>(c);
            out.winner.neuron = static_cast<std::uint32_t>(*fw[c].winner);
            out.winner.time = fw[c].time;
        }
    }

    for (std::size_t li = 0; li < layers_.size(); ++li) {
        for (std::size_t c = 0; c < layers_[li].size(); ++c) {
            auto& col = layers_[li][c];
            if (learn) {
                const auto& w = out.layer_winners[li][c];
                update_column(col, layer_inputs[li], w.winner, w.time, cfg_.stdp);
            }
            col.reset();
        }
    }
    return out;
}

RunSummary Network::run(const LabeledDataset& data, std::uint32_t epochs, bool learn) {
    RunSummary s;
    s.trace.period = cfg_.gamma_period;
    std::vector<SpikeVolley> volleys;
    volleys.reserve(data.images.size());
    for (const auto& img : data.images) volleys.push_back(encode_image(img, cfg_.encoder));

    for (std::uint32_t e = 0; e < epochs; ++e) {
        for (std::size_t i = 0; i < volleys.size(); ++i) {
            auto r = run_gamma_cycle(volleys[i], learn);
            r.winner.image = i;
            s.gamma_cycles += 1;
            s.total_clock_cycles += r.length;
            s.trace.records.push_back(std::move(r.record));
            s.winners.push_back(r.winner);
        }
    }
    return s;
}

RunSummary Network::train(const LabeledDataset& data, std::uint32_t epochs) {
    if (data.images.empty()) throw NetworkError("training needs a non-empty dataset");
    return run(data, epochs, true);
}

RunSummary Network::infer(const LabeledDataset& data) { return run(data, 1, false); }

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
    const std::array<char, 4> b{static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                                static_cast<char>(v >> 24)};
    out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
    std::array<unsigned char, 4> b{};
    if (!in.read(reinterpret_cast<char*>(b.data()), 4)) throw NetworkError("truncated weight file");
    return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
}

}  // namespace

void Network::save_weights(std::ostream& out) const {
    out.write("TNNW", 4);
    put_u32(out, 1);
    put_u32(out, static_cast<std::uint32_t>(layers_.size()));
    for (const auto& layer : layers_) {
        put_u32(out, static_cast<std::uint32_t>(layer.size()));
        put_u32(out, static_cast<std::uint32_t>(layer.front().size()));
        put_u32(out, static_cast<std::uint32_t>(layer.front().input_lines()));
        for (const auto& col : layer) {
            for (const auto& n : col.neurons()) {
                for (auto w : n.weights) {
                    const char b[2] = {static_cast<char>(w.half_units() & 0xFF), static_cast<char>(w.half_units() >> 8)};
                    out.write(b, 2);
                }
            }
        }
    }
    if (!out) throw NetworkError("weight write failed");
}

void Network::load_weights(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::string(magic, 4) != "TNNW") throw NetworkError("not a weight file");
    if (get_u32(in) != 1) throw NetworkError("unsupported weight file version");
    if (get_u32(in) != layers_.size()) throw NetworkError("weight file layer count differs from config");
    for (auto& layer : layers_) {
        const auto cols = get_u32(in);
        const auto neurons = get_u32(in);
        const auto fan_in = get_u32(in);
        if (cols != layer.size() || neurons != layer.front().size() || fan_in != layer.front().input_lines())
            throw NetworkError("weight file layer shape differs from config");
        for (auto& col : layer) {
            for (auto& n : col.neurons()) {
                for (auto& w : n.weights) {
                    std::array<unsigned char, 2> b{};
                    if (!in.read(reinterpret_cast<char*>(b.data()), 2)) throw NetworkError("truncated weight file");
                    const auto h = static_cast<std::uint16_t>(b[0] | b[1] << 8);
                    if (h > 2 * cfg_.stdp.w_max) throw NetworkError("weight outside [0, w_max]");
                    w = SynapseWeight::from_half_units(h);
                }
            }
        }
    }
}

}  // namespace tnn
