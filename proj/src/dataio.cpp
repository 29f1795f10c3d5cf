#include "tnn/dataio.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace tnn {

const char* to_string(DataErrc code) {
    switch (code) {
    case DataErrc::bad_magic: return "bad magic";
    case DataErrc::truncated: return "truncated stream";
    case DataErrc::dimension_overflow: return "dimension overflow";
    case DataErrc::label_out_of_range: return "label out of range";
    case DataErrc::token_count: return "token count mismatch";
    case DataErrc::bad_token: return "non-integer token";
    case DataErrc::value_out_of_range: return "value out of range";
    case DataErrc::io_failure: return "i/o failure";
    case DataErrc::shape_mismatch: return "shape mismatch";
    }
    return "unknown";
}

namespace {

[[noreturn]] void fail(DataErrc code, const std::string& detail) {
    throw DataError(code, std::string(to_string(code)) + ": " + detail);
}

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint32_t u32be(const char* field) {
        need(4, field);
        std::uint32_t v = (std::uint32_t{bytes_[pos_]} << 24) | (std::uint32_t{bytes_[pos_ + 1]} << 16) |
                          (std::uint32_t{bytes_[pos_ + 2]} << 8) | std::uint32_t{bytes_[pos_ + 3]};
        pos_ += 4;
        return v;
    }

    std::span<const std::uint8_t> take(std::size_t n, const char* field) {
        need(n, field);
        auto out = bytes_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

private:
    void need(std::size_t n, const char* field) const {
        if (bytes_.size() - pos_ < n)
            fail(DataErrc::truncated, std::string("while reading ") + field);
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void put_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

std::vector<PixelImage> read_idx_images(std::span<const std::uint8_t> bytes) {
    ByteReader in(bytes);
    const std::uint32_t magic = in.u32be("magic");
    if (magic != kIdxImageMagic) {
        std::ostringstream os;
        os << "expected 0x00000803, got 0x" << std::hex << magic;
        fail(DataErrc::bad_magic, os.str());
    }
    const std::uint64_t count = in.u32be("image count");
    const std::uint64_t rows = in.u32be("row count");
    const std::uint64_t cols = in.u32be("column count");

    const std::uint64_t per_image = rows * cols;
    if (per_image != 0 && count > std::numeric_limits<std::size_t>::max() / per_image)
        fail(DataErrc::dimension_overflow, "count*rows*cols does not fit in memory size");

    std::vector<PixelImage> images;
    images.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, bytes.size())));
    for (std::uint64_t i = 0; i < count; ++i) {
        auto raw = in.take(static_cast<std::size_t>(per_image), "pixel payload");
        PixelImage img;
        img.width = static_cast<std::size_t>(cols);
        img.height = static_cast<std::size_t>(rows);
        img.pixels.assign(raw.begin(), raw.end());
        images.push_back(std::move(img));
    }
    return images;
}

std::vector<std::uint8_t> read_idx_labels(std::span<const std::uint8_t> bytes,
                                          std::optional<std::uint8_t> max_label) {
    ByteReader in(bytes);
    const std::uint32_t magic = in.u32be("magic");
    if (magic != kIdxLabelMagic) {
        std::ostringstream os;
        os << "expected 0x00000801, got 0x" << std::hex << magic;
        fail(DataErrc::bad_magic, os.str());
    }
    const std::uint32_t count = in.u32be("label count");
    auto raw = in.take(count, "label payload");
    std::vector<std::uint8_t> labels(raw.begin(), raw.end());
    if (max_label) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] > *max_label)
                fail(DataErrc::label_out_of_range,
                     "label " + std::to_string(labels[i]) + " at record " + std::to_string(i));
        }
    }
    return labels;
}

std::vector<std::uint8_t> write_idx_images(const std::vector<PixelImage>& images) {
    std::vector<std::uint8_t> out;
    const std::size_t rows = images.empty() ? 0 : images.front().height;
    const std::size_t cols = images.empty() ? 0 : images.front().width;
    put_u32be(out, kIdxImageMagic);
    put_u32be(out, static_cast<std::uint32_t>(images.size()));
    put_u32be(out, static_cast<std::uint32_t>(rows));
    put_u32be(out, static_cast<std::uint32_t>(cols));
    for (const auto& img : images) {
        if (img.width != cols || img.height != rows || img.pixels.size() != rows * cols)
            fail(DataErrc::shape_mismatch, "IDX images must share one shape");
        out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    }
    return out;
}

std::vector<std::uint8_t> write_idx_labels(std::span<const std::uint8_t> labels) {
    std::vector<std::uint8_t> out;
    put_u32be(out, kIdxLabelMagic);
    put_u32be(out, static_cast<std::uint32_t>(labels.size()));
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

void write_linetext(const std::vector<PixelImage>& images, std::ostream& sink) {
    std::string line;
    for (const auto& img : images) {
        line.clear();
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            if (i) line.push_back(' ');
            line += std::to_string(img.pixels[i]);
        }
        line.push_back('\n');
        sink.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
    sink.flush();
    if (!sink) fail(DataErrc::io_failure, "line-text sink write failed");
}

std::vector<PixelImage> read_linetext(std::istream& source, std::size_t width, std::size_t height) {
    const std::size_t expected = width * height;
    std::vector<PixelImage> images;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        PixelImage img;
        img.width = width;
        img.height = height;
        img.pixels.reserve(expected);

        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            unsigned v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec == std::errc::result_out_of_range)
                fail(DataErrc::value_out_of_range, "line " + std::to_string(line_no) + ": '" + tok + "'");
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                fail(DataErrc::bad_token, "line " + std::to_string(line_no) + ": '" + tok + "'");
            if (v > 255)
                fail(DataErrc::value_out_of_range, "line " + std::to_string(line_no) + ": " + tok);
            img.pixels.push_back(static_cast<std::uint8_t>(v));
        }
        if (img.pixels.size() != expected)
            fail(DataErrc::token_count, "line " + std::to_string(line_no) + " has " +
                                            std::to_string(img.pixels.size()) + " tokens, expected " +
                                            std::to_string(expected));
        images.push_back(std::move(img));
    }
    if (source.bad()) fail(DataErrc::io_failure, "line-text source read failed");
    return images;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(DataErrc::io_failure, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

LabeledDataset load_idx_dataset(const std::string& images_path, const std::string& labels_path,
                                std::size_t limit) {
    LabeledDataset ds;
    ds.name = images_path;
    const auto image_bytes = read_file_bytes(images_path);
    // A zero-length file is an empty dataset rather than a bad header.
    if (!image_bytes.empty()) ds.images = read_idx_images(image_bytes);
    if (!labels_path.empty()) {
        const auto label_bytes = read_file_bytes(labels_path);
        std::vector<std::uint8_t> labels;
        if (!label_bytes.empty()) labels = read_idx_labels(label_bytes);
        if (labels.size() != ds.images.size())
            fail(DataErrc::shape_mismatch, std::to_string(labels.size()) + " labels for " +
                                               std::to_string(ds.images.size()) + " images");
        for (std::size_t i = 0; i < labels.size(); ++i) ds.images[i].label = labels[i];
    }
    if (limit != 0 && ds.images.size() > limit) ds.images.resize(limit);
    return ds;
}

}  // namespace tnn
