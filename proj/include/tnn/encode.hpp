#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tnn/dataio.hpp"
#include "tnn/spike_time.hpp"

namespace tnn {

// Encoder families. Every family produces a positive and a negative channel.
//
//  posneg  pos = pixel > threshold, neg = pixel <= threshold; a set bit is a
//          spike at time 0, a clear bit is INF.
//  linear  level q = ceil(v*T/256), clamped to [1,T] for v > 0; time = T - q.
//          v = 0 is INF. Quantization level k lands at time T-k, so levels
//          [0 1 2 3 4 5] with T = 16 become [inf 15 14 13 12 11].
//  log     time = min(T-1, floor(log2(255/v) * (T-1)/8)); v = 0 is INF.
//
// The negative channel of linear/log encodes |v - 255|.
struct EncoderKind {
    enum class Family { posneg, linear, log };

    Family family = Family::posneg;
    std::uint8_t threshold = 127;  // posneg only
    std::uint32_t period = 16;     // T, linear/log only

    static EncoderKind posneg(std::uint8_t threshold = 127) { return {Family::posneg, threshold, 16}; }
    static EncoderKind linear(std::uint32_t period) { return {Family::linear, 127, period}; }
    static EncoderKind log(std::uint32_t period) { return {Family::log, 127, period}; }

    // Throws std::invalid_argument when T < 2 for linear/log.
    void validate() const;
};

const char* to_string(EncoderKind::Family f);
// Accepts "posneg", "linear", "log". Throws std::invalid_argument.
EncoderKind::Family parse_encoder_family(const std::string& name);

struct PosNegBits {
    bool pos;
    bool neg;
};

constexpr PosNegBits posneg_bits(std::uint8_t pixel, std::uint8_t threshold) {
    const bool above = pixel > threshold;
    return {above, !above};
}

constexpr SpikeTime bit_to_spiketime(bool bit) { return bit ? SpikeTime::at(0) : SpikeTime::inf(); }

std::uint32_t linear_level(std::uint8_t v, std::uint32_t period);

// kind must be linear or log.
SpikeTime scalar_encode(std::uint8_t v, const EncoderKind& kind);
SpikeTime negate_then_encode(std::uint8_t v, const EncoderKind& kind);

// Layout: positive lines [0, n), negative lines [n, 2n).
SpikeVolley encode_image(const PixelImage& img, const EncoderKind& kind);

// One volley per line, decimal times with "inf" for INF.
void write_spike_linetext(const std::vector<SpikeVolley>& volleys, std::ostream& sink);
std::vector<SpikeVolley> read_spike_linetext(std::istream& source);

}  // namespace tnn
