#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tnn {

// A discrete event time inside a gamma cycle: a finite cycle index, or INF
// when the line carries no spike. INF orders after every finite time.
class SpikeTime {
public:
    using rep = std::uint32_t;

    constexpr SpikeTime() = default;  // INF
    constexpr explicit SpikeTime(rep cycle) : value_(cycle) {}

    static constexpr SpikeTime inf() { return SpikeTime{}; }
    static constexpr SpikeTime at(rep cycle) { return SpikeTime{cycle}; }

    constexpr bool is_inf() const { return value_ == kInf; }
    constexpr bool is_finite() const { return value_ != kInf; }

    // Precondition: is_finite().
    constexpr rep cycle() const { return value_; }

    constexpr std::optional<rep> value() const {
        if (is_inf()) return std::nullopt;
        return value_;
    }

    constexpr auto operator<=>(const SpikeTime&) const = default;

    std::string to_string() const { return is_inf() ? "inf" : std::to_string(value_); }

    // Accepts a decimal cycle index or "inf". Throws std::invalid_argument.
    static SpikeTime parse(const std::string& token);

private:
    static constexpr rep kInf = std::numeric_limits<rep>::max();
    rep value_ = kInf;
};

inline std::ostream& operator<<(std::ostream& os, SpikeTime t) { return os << t.to_string(); }

// Spike times presented to a layer in one gamma cycle, one entry per line.
using SpikeVolley = std::vector<SpikeTime>;

}  // namespace tnn
