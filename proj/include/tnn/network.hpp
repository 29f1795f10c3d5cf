#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tnn/dataio.hpp"
#include "tnn/encode.hpp"
#include "tnn/gamma.hpp"
#include "tnn/neuron.hpp"
#include "tnn/stdp.hpp"

namespace tnn {

enum class GammaMode { fixed, relaxed };

const char* to_string(GammaMode m);

struct LayerShape {
    std::uint32_t columns = 1;
    std::uint32_t neurons_per_column = 1;

    bool operator==(const LayerShape&) const = default;
};

struct NetworkConfig {
    std::vector<LayerShape> layers{{64, 10}};
    std::uint32_t gamma_period = 16;
    std::vector<std::uint32_t> thresholds{2744};  // one per layer, or one shared by all
    EncoderKind encoder = EncoderKind::posneg(127);
    StdpParams stdp;
    GammaMode mode = GammaMode::relaxed;
    std::uint64_t seed = 1;

    std::uint32_t threshold_for(std::size_t layer) const {
        return thresholds.size() == 1 ? thresholds.front() : thresholds.at(layer);
    }

    // Throws std::invalid_argument.
    void validate() const;
};

class NetworkError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Image-level winner: the earliest final-layer column winner.
struct ImageWinner {
    std::uint64_t image = 0;  // index into the presented dataset
    std::optional<std::uint32_t> column;
    std::optional<std::uint32_t> neuron;
    SpikeTime time;

    bool operator==(const ImageWinner&) const = default;
};

struct RunSummary {
    std::uint64_t gamma_cycles = 0;
    std::uint64_t total_clock_cycles = 0;
    GammaTrace trace;
    std::vector<ImageWinner> winners;

    bool operator==(const RunSummary&) const = default;
};

// winners CSV: image,column,neuron,time
void write_winners_csv(const RunSummary& s, std::ostream& out);

struct CycleResult {
    std::vector<std::vector<WtaResult>> layer_winners;  // [layer][column], truncated to the cycle
    std::uint32_t length = 0;
    GammaRecord record;
    ImageWinner winner;
};

class Network {
public:
    // input_lines is the encoded volley width (2 x pixels).
    Network(NetworkConfig cfg, std::size_t input_lines);

    const NetworkConfig& config() const { return cfg_; }
    std::size_t input_lines() const { return input_lines_; }

    std::vector<std::vector<Column>>& layers() { return layers_; }
    const std::vector<std::vector<Column>>& layers() const { return layers_; }

    // Presents one volley for one gamma cycle. Columns resolve their WTA,
    // the generator/controller pair is clocked slot by slot until grst, and
    // when learn is set every column takes its STDP update at grst.
    CycleResult run_gamma_cycle(const SpikeVolley& volley, bool learn);

    RunSummary train(const LabeledDataset& data, std::uint32_t epochs);
    RunSummary infer(const LabeledDataset& data);

    // Binary weight snapshot: "TNNW" u32 version=1 u32 layers, then per
    // layer u32 columns, u32 neurons, u32 fan-in and the half-unit weights as
    // little-endian u16, column-major over neurons. load_weights requires the
    // same shape.
    void save_weights(std::ostream& out) const;
    void load_weights(std::istream& in);

private:
    RunSummary run(const LabeledDataset& data, std::uint32_t epochs, bool learn);

    NetworkConfig cfg_;
    std::size_t input_lines_;
    std::vector<std::vector<Column>> layers_;
};

}  // namespace tnn
