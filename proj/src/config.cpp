#include "tnn/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tnn {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) out.push_back(trim(part));
    return out;
}

template <typename T>
T to_uint(const std::string& v, std::size_t line, const std::string& key) {
    std::uint64_t x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty() ||
        x > static_cast<std::uint64_t>(std::numeric_limits<T>::max()))
        throw ConfigError(line, key + ": expected a non-negative integer, got '" + v + "'");
    return static_cast<T>(x);
}

}  // namespace

RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    auto path_of = [&](const std::string& v) {
        std::filesystem::path p(v);
        return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    };

    using Setter = std::function<void(const std::string&, std::size_t, const std::string&)>;
    auto& net = cfg.network;
    const std::map<std::string, Setter> setters = {
        {"layers",
         [&](const std::string& v, std::size_t ln, const std::string& k) {
             net.layers.clear();
             for (const auto& part : split(v, ',')) {
                 const auto x = part.find('x');
                 if (x == std::string::npos) throw ConfigError(ln, k + ": expected CxN, got '" + part + "'");
                 net.layers.push_back({to_uint<std::uint32_t>(trim(part.substr(0, x)), ln, k),
                                       to_uint<std::uint32_t>(trim(part.substr(x + 1)), ln, k)});
             }
         }},
        {"gamma_period", [&](auto& v, auto ln, auto& k) { net.gamma_period = to_uint<std::uint32_t>(v, ln, k); }},
        {"threshold",
         [&](const std::string& v, std::size_t ln, const std::string& k) {
             net.thresholds.clear();
             for (const auto& part : split(v, ',')) net.thresholds.push_back(to_uint<std::uint32_t>(part, ln, k));
         }},
        {"encoder",
         [&](const std::string& v, std::size_t ln, const std::string&) {
             try {
                 net.encoder.family = parse_encoder_family(v);
             } catch (const std::invalid_argument& e) {
                 throw ConfigError(ln, e.what());
             }
         }},
        {"encoder_threshold", [&](auto& v, auto ln, auto& k) { net.encoder.threshold = to_uint<std::uint8_t>(v, ln, k); }},
        {"mode",
         [&](const std::string& v, std::size_t ln, const std::string&) {
             if (v == "relaxed") net.mode = GammaMode::relaxed;
             else if (v == "fixed") net.mode = GammaMode::fixed;
             else throw ConfigError(ln, "mode: expected relaxed or fixed, got '" + v + "'");
         }},
        {"seed", [&](auto& v, auto ln, auto& k) { net.seed = to_uint<std::uint64_t>(v, ln, k); }},
        {"w_max", [&](auto& v, auto ln, auto& k) { net.stdp.w_max = to_uint<std::uint16_t>(v, ln, k); }},
        {"u_capture", [&](auto& v, auto ln, auto& k) { net.stdp.u_capture = to_uint<std::uint16_t>(v, ln, k); }},
        {"u_backoff", [&](auto& v, auto ln, auto& k) { net.stdp.u_backoff = to_uint<std::uint16_t>(v, ln, k); }},
        {"u_search", [&](auto& v, auto ln, auto& k) { net.stdp.u_search = to_uint<std::uint16_t>(v, ln, k); }},
        {"u_quiet", [&](auto& v, auto ln, auto& k) { net.stdp.u_quiet = to_uint<std::uint16_t>(v, ln, k); }},
        {"train_images", [&](auto& v, auto, auto&) { cfg.train_images = path_of(v); }},
        {"train_labels", [&](auto& v, auto, auto&) { cfg.train_labels = path_of(v); }},
        {"test_images", [&](auto& v, auto, auto&) { cfg.test_images = path_of(v); }},
        {"test_labels", [&](auto& v, auto, auto&) { cfg.test_labels = path_of(v); }},
        {"train_count", [&](auto& v, auto ln, auto& k) { cfg.train_count = to_uint<std::size_t>(v, ln, k); }},
        {"test_count", [&](auto& v, auto ln, auto& k) { cfg.test_count = to_uint<std::size_t>(v, ln, k); }},
        {"epochs", [&](auto& v, auto ln, auto& k) { cfg.epochs = to_uint<std::uint32_t>(v, ln, k); }},
        {"out_dir", [&](auto& v, auto, auto&) { cfg.out_dir = path_of(v); }},
    };

    std::set<std::string> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(line_no, "unknown key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError(line_no, "duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError(line_no, key + ": empty value");
        it->second(value, line_no, key);
    }

    if (net.encoder.family != EncoderKind::Family::posneg) net.encoder.period = net.gamma_period;
    try {
        net.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config '" + path.string() + "'");
    return parse_run_config(in, path.parent_path());
}

}  // namespace tnn
