#include "tnn/encode.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tnn {

void EncoderKind::validate() const {
    if (family != Family::posneg && period < 2)
        throw std::invalid_argument("encoder period must be at least 2");
}

const char* to_string(EncoderKind::Family f) {
    switch (f) {
    case EncoderKind::Family::posneg: return "posneg";
    case EncoderKind::Family::linear: return "linear";
    case EncoderKind::Family::log: return "log";
    }
    return "?";
}

EncoderKind::Family parse_encoder_family(const std::string& name) {
    if (name == "posneg") return EncoderKind::Family::posneg;
    if (name == "linear") return EncoderKind::Family::linear;
    if (name == "log") return EncoderKind::Family::log;
    throw std::invalid_argument("unknown encoder '" + name + "' (expected posneg, linear or log)");
}

std::uint32_t linear_level(std::uint8_t v, std::uint32_t period) {
    if (v == 0) return 0;
    const std::uint64_t scaled = std::uint64_t{v} * period;
    const auto q = static_cast<std::uint32_t>((scaled + 255) / 256);
    return std::clamp<std::uint32_t>(q, 1, period);
}

SpikeTime scalar_encode(std::uint8_t v, const EncoderKind& kind) {
    if (v == 0) return SpikeTime::inf();
    const std::uint32_t T = kind.period;
    switch (kind.family) {
    case EncoderKind::Family::linear:
        return SpikeTime::at(T - linear_level(v, T));
    case EncoderKind::Family::log: {
        const double t = std::floor(std::log2(255.0 / v) * (T - 1) / 8.0);
        return SpikeTime::at(std::min<std::uint32_t>(T - 1, static_cast<std::uint32_t>(t)));
    }
    case EncoderKind::Family::posneg:
        break;
    }
    throw std::invalid_argument("scalar_encode needs a linear or log encoder");
}

SpikeTime negate_then_encode(std::uint8_t v, const EncoderKind& kind) {
    return scalar_encode(static_cast<std::uint8_t>(255 - v), kind);
}

SpikeVolley encode_image(const PixelImage& img, const EncoderKind& kind) {
    const std::size_t n = img.pixels.size();
    SpikeVolley volley(2 * n);
    if (kind.family == EncoderKind::Family::posneg) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto bits = posneg_bits(img.pixels[i], kind.threshold);
            volley[i] = bit_to_spiketime(bits.pos);
            volley[n + i] = bit_to_spiketime(bits.neg);
        }
        return volley;
    }
    for (std::size_t i = 0; i < n; ++i) {
        volley[i] = scalar_encode(img.pixels[i], kind);
        volley[n + i] = negate_then_encode(img.pixels[i], kind);
    }
    return volley;
}

void write_spike_linetext(const std::vector<SpikeVolley>& volleys, std::ostream& sink) {
    for (const auto& v : volleys) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) sink << ' ';
            sink << v[i];
        }
        sink << '\n';
    }
    if (!sink) throw std::runtime_error("spike line-text write failed");
}

std::vector<SpikeVolley> read_spike_linetext(std::istream& source) {
    std::vector<SpikeVolley> out;
    std::string line;
    while (std::getline(source, line)) {
        std::istringstream tokens(line);
        SpikeVolley v;
        std::string tok;
        while (tokens >> tok) v.push_back(SpikeTime::parse(tok));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace tnn
