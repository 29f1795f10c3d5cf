#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tnn {

struct PixelImage {
    std::vector<std::uint8_t> pixels;  // row-major
    std::size_t width = 0;
    std::size_t height = 0;
    std::optional<std::uint8_t> label;

    std::size_t size() const { return pixels.size(); }
    bool operator==(const PixelImage&) const = default;
};

struct LabeledDataset {
    std::vector<PixelImage> images;
    std::string name;
};

enum class DataErrc {
    bad_magic,
    truncated,
    dimension_overflow,
    label_out_of_range,
    token_count,
    bad_token,
    value_out_of_range,
    io_failure,
    shape_mismatch,
};

const char* to_string(DataErrc code);

class DataError : public std::runtime_error {
public:
    DataError(DataErrc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    DataErrc code() const { return code_; }

private:
    DataErrc code_;
};

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

// IDX (MNIST) readers. Pixels are returned as stored; no normalization.
std::vector<PixelImage> read_idx_images(std::span<const std::uint8_t> bytes);

// max_label bounds the accepted class ids (9 for MNIST); std::nullopt disables
// the range check.
std::vector<std::uint8_t> read_idx_labels(std::span<const std::uint8_t> bytes,
                                          std::optional<std::uint8_t> max_label = 9);

std::vector<std::uint8_t> write_idx_images(const std::vector<PixelImage>& images);
std::vector<std::uint8_t> write_idx_labels(std::span<const std::uint8_t> labels);

// Line-text format: one image per line, pixels as space-separated decimal in
// row-major order, each line newline-terminated.
void write_linetext(const std::vector<PixelImage>& images, std::ostream& sink);
std::vector<PixelImage> read_linetext(std::istream& source, std::size_t width, std::size_t height);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);

// Loads an IDX image file and, when labels_path is non-empty, joins the
// parallel label file by index.
LabeledDataset load_idx_dataset(const std::string& images_path, const std::string& labels_path,
                                std::size_t limit = 0);

}  // namespace tnn
