#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tnn/network.hpp"

namespace tnn {

// Everything a train/infer/report run needs, read from a flat key = value
// file. '#' starts a comment. Relative paths resolve against the config
// file's directory.
//
//   layers            = 64x10            (columns x neurons, comma-separated per layer)
//   gamma_period      = 16
//   threshold         = 2744             (one value, or one per layer)
//   encoder           = posneg | linear | log
//   encoder_threshold = 127
//   mode              = relaxed | fixed
//   seed              = 1
//   w_max, u_capture, u_backoff, u_search, u_quiet   (half units, except w_max)
//   train_images, train_labels, test_images, test_labels
//   train_count, test_count, epochs
//   out_dir
struct RunConfig {
    NetworkConfig network;
    std::filesystem::path train_images;
    std::filesystem::path train_labels;
    std::filesystem::path test_images;
    std::filesystem::path test_labels;
    std::size_t train_count = 0;  // 0 = all
    std::size_t test_count = 0;
    std::uint32_t epochs = 1;
    std::filesystem::path out_dir = "out";
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace tnn
