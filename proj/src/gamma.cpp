#include "tnn/gamma.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

namespace tnn {

GeneratorStep generator_step(const GeneratorState& g, bool control) {
    const bool overflow = g.counter + 1 >= g.period;
    const bool grst = overflow || control;
    GeneratorState next = g;
    next.counter = grst ? 0 : g.counter + 1;
    return {grst, next};
}

ControllerState ControllerState::with_columns(std::size_t columns) {
    if (columns == 0) throw GammaConfigError("grst controller must monitor at least one column");
    return ControllerState{std::vector<bool>(columns, false)};
}

ControllerState controller_observe(const ControllerState& c, const std::vector<bool>& column_spiked) {
    if (column_spiked.size() != c.column_latches.size())
        throw GammaConfigError("controller monitors " + std::to_string(c.column_latches.size()) +
                               " columns, got " + std::to_string(column_spiked.size()) + " spike flags");
    ControllerState out = c;
    for (std::size_t i = 0; i < column_spiked.size(); ++i)
        out.column_latches[i] = out.column_latches[i] || column_spiked[i];
    return out;
}

bool controller_control(const ControllerState& c) {
    return std::all_of(c.column_latches.begin(), c.column_latches.end(), [](bool b) { return b; });
}

ControllerState grst_clear(const ControllerState& c) {
    return ControllerState{std::vector<bool>(c.column_latches.size(), false)};
}

const char* to_string(GrstCause cause) { return cause == GrstCause::control ? "control" : "period"; }

void write_trace_csv(const GammaTrace& trace, std::ostream& out) {
    out << "cycle,length,cause,winners\n";
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const auto& r = trace.records[i];
        out << i << ',' << r.length << ',' << to_string(r.cause) << ',';
        for (std::size_t k = 0; k < r.winners.size(); ++k) {
            if (k) out << ';';
            out << r.winners[k].column << ':' << r.winners[k].time;
        }
        out << '\n';
    }
}

namespace {

template <typename T>
void put_le(std::ostream& out, T v) {
    std::array<char, sizeof(T)> buf{};
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF);
    out.write(buf.data(), buf.size());
}

template <typename T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> buf{};
    if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size()))
        throw std::runtime_error("truncated gamma trace");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{buf[i]} << (8 * i);
    return static_cast<T>(v);
}

constexpr std::uint16_t kInfTime = 0xFFFF;

}  // namespace

void write_trace_binary(const GammaTrace& trace, std::ostream& out) {
    out.write("GTRC", 4);
    put_le<std::uint32_t>(out, 1);
    put_le<std::uint32_t>(out, trace.period);
    put_le<std::uint64_t>(out, trace.records.size());
    for (const auto& r : trace.records) {
        put_le<std::uint16_t>(out, static_cast<std::uint16_t>(r.length));
        put_le<std::uint8_t>(out, static_cast<std::uint8_t>(r.cause));
        put_le<std::uint32_t>(out, static_cast<std::uint32_t>(r.winners.size()));
        for (const auto& w : r.winners) {
            put_le<std::uint32_t>(out, w.column);
            put_le<std::uint16_t>(out, w.time.is_inf() ? kInfTime : static_cast<std::uint16_t>(w.time.cycle()));
        }
    }
}

GammaTrace read_trace_binary(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "GTRC", 4) != 0) throw std::runtime_error("not a gamma trace");
    if (get_le<std::uint32_t>(in) != 1) throw std::runtime_error("unsupported gamma trace version");
    GammaTrace t;
    t.period = get_le<std::uint32_t>(in);
    const auto n = get_le<std::uint64_t>(in);
    for (std::uint64_t i = 0; i < n; ++i) {
        GammaRecord r;
        r.length = get_le<std::uint16_t>(in);
        r.cause = get_le<std::uint8_t>(in) ? GrstCause::control : GrstCause::period;
        const auto w = get_le<std::uint32_t>(in);
        for (std::uint32_t k = 0; k < w; ++k) {
            ColumnWinner cw;
            cw.column = get_le<std::uint32_t>(in);
            const auto time = get_le<std::uint16_t>(in);
            cw.time = time == kInfTime ? SpikeTime::inf() : SpikeTime::at(time);
            r.winners.push_back(cw);
        }
        t.records.push_back(std::move(r));
    }
    return t;
}

GammaClock::GammaClock(std::uint32_t period, std::size_t monitored_columns, bool relaxed)
    : gen_{0, period}, ctl_(ControllerState::with_columns(monitored_columns)), relaxed_(relaxed) {
    if (period == 0) throw GammaConfigError("gamma period must be >= 1");
}

GammaClock::Tick GammaClock::step(const std::vector<bool>& column_spiked) {
    ctl_ = controller_observe(ctl_, column_spiked);
    const bool control = relaxed_ && controller_control(ctl_);
    const std::uint32_t slot = gen_.counter;
    const auto s = generator_step(gen_, control);
    gen_ = s.next;
    if (s.grst && clear_on_grst_) ctl_ = grst_clear(ctl_);
    return {slot, s.grst, control ? GrstCause::control : GrstCause::period};
}

namespace {

struct Pulse {
    std::uint64_t step;
    GrstCause cause;
};

// Runs `steps` clock slots with spikes[column] listing the steps at which
// that column fires, returning every grst pulse.
std::vector<Pulse> drive(GammaClock& clk, std::uint64_t start, std::uint64_t steps,
                         const std::vector<std::vector<std::uint64_t>>& spikes) {
    std::vector<Pulse> pulses;
    for (std::uint64_t k = start; k < start + steps; ++k) {
        std::vector<bool> flags(spikes.size(), false);
        for (std::size_t c = 0; c < spikes.size(); ++c)
            flags[c] = std::find(spikes[c].begin(), spikes[c].end(), k) != spikes[c].end();
        const auto tick = clk.step(flags);
        if (tick.grst) pulses.push_back({k, tick.cause});
    }
    return pulses;
}

std::string describe(const std::vector<Pulse>& pulses) {
    std::ostringstream os;
    os << "grst at steps [";
    for (std::size_t i = 0; i < pulses.size(); ++i) os << (i ? " " : "") << pulses[i].step;
    os << "]";
    return os.str();
}

}  // namespace

std::vector<ScenarioResult> verify_gamma(const GammaVerifyOptions& opts) {
    const std::uint32_t P = opts.period;
    if (P < 4) throw GammaConfigError("verify-gamma needs a period of at least 4");
    const std::size_t C = opts.columns;
    GammaClock clk(P, C, true);
    clk.set_clear_on_grst(!opts.stuck_latches);

    std::vector<ScenarioResult> results;
    std::uint64_t now = 0;

    // Idles the pair until the generator sits at the start of a cycle.
    auto realign = [&] {
        for (std::uint32_t i = 0; i < P && clk.generator().counter != 0; ++i, ++now)
            drive(clk, now, 1, std::vector<std::vector<std::uint64_t>>(C));
    };

    // 1: every column fires in the same slot; grst closes that slot.
    {
        const std::uint64_t fire = now + P / 4;
        std::vector<std::vector<std::uint64_t>> spikes(C, {fire});
        const auto pulses = drive(clk, now, fire - now + 1, spikes);
        const bool ok = pulses.size() == 1 && pulses.front().step == fire && pulses.front().cause == GrstCause::control;
        results.push_back({"simultaneous spikes", ok, describe(pulses)});
        now = fire + 1;
        realign();
    }

    // 2: columns fire one by one; control must wait for the last column.
    {
        std::vector<std::vector<std::uint64_t>> spikes(C);
        std::uint64_t last = 0;
        for (std::size_t c = 0; c < C; ++c) {
            const std::uint64_t offset = 1 + (c * (P - 3)) / std::max<std::size_t>(C - 1, 1);
            spikes[c] = {now + offset};
            last = std::max(last, now + offset);
        }
        const auto pulses = drive(clk, now, last - now + 1, spikes);
        const bool ok = pulses.size() == 1 && pulses.front().step == last && pulses.front().cause == GrstCause::control;
        results.push_back({"staggered spikes", ok, describe(pulses)});
        now = last + 1;
        realign();
    }

    // 3: no spikes for three periods; grst on the normal interval only.
    {
        const auto pulses = drive(clk, now, 3 * std::uint64_t{P}, std::vector<std::vector<std::uint64_t>>(C));
        bool ok = pulses.size() == 3;
        for (std::size_t i = 0; ok && i < pulses.size(); ++i)
            ok = pulses[i].step == now + (i + 1) * P - 1 && pulses[i].cause == GrstCause::period;
        results.push_back({"no spikes", ok, describe(pulses)});
    }
    return results;
}

}  // namespace tnn
