#include "tnn/spike_time.hpp"

#include <charconv>
#include <stdexcept>

namespace tnn {

SpikeTime SpikeTime::parse(const std::string& token) {
    if (token == "inf" || token == "INF") return inf();
    rep v = 0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || v == kInf)
        throw std::invalid_argument("bad spike time token '" + token + "'");
    return at(v);
}

}  // namespace tnn
