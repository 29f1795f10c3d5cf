#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tnn/spike_time.hpp"

namespace tnn {

// grst generator: an up counter over the gamma period. generator_step models
// the clock edge that closes slot `counter`; grst is the counter overflow
// ORed with the controller's control line.
struct GeneratorState {
    std::uint32_t counter = 0;
    std::uint32_t period = 16;

    bool operator==(const GeneratorState&) const = default;
};

struct GeneratorStep {
    bool grst;
    GeneratorState next;
};

GeneratorStep generator_step(const GeneratorState& g, bool control);

class GammaConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// grst controller: one sticky latch per monitored column fed by an OR over
// that column's neuron outputs; control is the AND of all latches.
struct ControllerState {
    std::vector<bool> column_latches;

    // Throws GammaConfigError for zero columns.
    static ControllerState with_columns(std::size_t columns);
    bool operator==(const ControllerState&) const = default;
};

// column_spiked[i] is the OR of column i's neuron outputs this slot.
// Throws GammaConfigError on a length mismatch.
ControllerState controller_observe(const ControllerState& c, const std::vector<bool>& column_spiked);
bool controller_control(const ControllerState& c);
ControllerState grst_clear(const ControllerState& c);

enum class GrstCause : std::uint8_t { period = 0, control = 1 };

const char* to_string(GrstCause cause);

struct ColumnWinner {
    std::uint32_t column;
    SpikeTime time;

    bool operator==(const ColumnWinner&) const = default;
};

struct GammaRecord {
    std::uint32_t length = 0;  // slots in the cycle, <= period
    GrstCause cause = GrstCause::period;
    std::vector<ColumnWinner> winners;  // monitored columns, in column order

    bool operator==(const GammaRecord&) const = default;
};

struct GammaTrace {
    std::uint32_t period = 16;
    std::vector<GammaRecord> records;

    bool operator==(const GammaTrace&) const = default;
};

// CSV: cycle,length,cause,winners  with winners as "col:time" joined by ';'.
void write_trace_csv(const GammaTrace& trace, std::ostream& out);

// Compact little-endian binary trace:
//   "GTRC" u32 version=1 u32 period u64 records
//   per record: u16 length, u8 cause, u32 winner count,
//               per winner: u32 column, u16 time (0xFFFF = INF)
void write_trace_binary(const GammaTrace& trace, std::ostream& out);
GammaTrace read_trace_binary(std::istream& in);

// Lock-stepped generator + controller pair, one step per clock slot.
class GammaClock {
public:
    GammaClock(std::uint32_t period, std::size_t monitored_columns, bool relaxed);

    struct Tick {
        std::uint32_t slot;  // gamma-time index of the slot just closed
        bool grst;
        GrstCause cause;
    };

    // Closes the current slot given which monitored columns spiked in it.
    Tick step(const std::vector<bool>& column_spiked);

    const GeneratorState& generator() const { return gen_; }
    const ControllerState& controller() const { return ctl_; }
    bool relaxed() const { return relaxed_; }

    // Test hook: keeps latches across grst, as if the clear line were stuck.
    void set_clear_on_grst(bool enabled) { clear_on_grst_ = enabled; }

private:
    GeneratorState gen_;
    ControllerState ctl_;
    bool relaxed_;
    bool clear_on_grst_ = true;
};

struct ScenarioResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct GammaVerifyOptions {
    std::uint32_t period = 16;
    std::size_t columns = 3;
    bool stuck_latches = false;  // fault injection: latches never clear
};

// The three system-level grst checks, run back to back on one
// generator/controller pair: simultaneous spikes, staggered spikes, no spikes.
std::vector<ScenarioResult> verify_gamma(const GammaVerifyOptions& opts);

}  // namespace tnn
