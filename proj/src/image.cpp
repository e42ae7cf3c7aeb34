#include "onnham/image.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

#include "onnham/error.hpp"

namespace onnham {

int max_value(Depth depth) {
  switch (depth) {
    case Depth::Gray256: return 255;
    case Depth::Levels9: return 8;
    case Depth::Binary: return 1;
  }
  return 0;
}

GrayImage::GrayImage(int width, int height, Depth depth, std::uint8_t fill)
    : depth_(depth), pixels_(width, height, fill) {
  if (fill > onnham::max_value(depth)) throw std::invalid_argument("fill value exceeds image depth");
}

GrayImage::GrayImage(int width, int height, Depth depth, std::vector<std::uint8_t> pixels)
    : depth_(depth), pixels_(width, height) {
  if (pixels.size() != pixels_.size()) throw std::invalid_argument("pixel count does not match image dimensions");
  const int bound = onnham::max_value(depth);
  if (std::any_of(pixels.begin(), pixels.end(), [bound](std::uint8_t p) { return p > bound; })) {
    throw std::invalid_argument("pixel value exceeds image depth");
  }
  pixels_.data() = std::move(pixels);
}

void GrayImage::set(int row, int col, int value) {
  if (value < 0 || value > max_value()) throw std::invalid_argument("pixel value exceeds image depth");
  pixels_.at(row, col) = static_cast<std::uint8_t>(value);
}

// ---------------------------------------------------------------------------
// PGM

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Cursor over the PGM header: whitespace and '#' comments separate tokens.
class HeaderReader {
 public:
  HeaderReader(const std::string& bytes, std::size_t start) : bytes_(bytes), pos_(start) {}

  long next_int(const char* what) {
    skip_space_and_comments();
    std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    if (start == pos_) throw FormatError(std::string("PGM header: expected ") + what);
    if (pos_ - start > 9) throw FormatError(std::string("PGM header: ") + what + " too large");
    return std::stol(bytes_.substr(start, pos_ - start));
  }

  /// Consumes the single whitespace byte that ends a P5 header.
  void end_binary_header() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw FormatError("PGM header: missing whitespace before raster");
    }
    ++pos_;
  }

  [[nodiscard]] std::size_t pos() const { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

constexpr long kMaxSide = 1 << 15;

Depth depth_for_maxval(long maxval) {
  switch (maxval) {
    case 1: return Depth::Binary;
    case 8: return Depth::Levels9;
    default: return Depth::Gray256;
  }
}

}  // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw FormatError(path.string() + ": not a P2/P5 PGM file");
  }
  const bool ascii = bytes[1] == '2';
  HeaderReader header(bytes, 2);
  const long width = header.next_int("width");
  const long height = header.next_int("height");
  const long maxval = header.next_int("maxval");
  if (width <= 0 || height <= 0) throw FormatError(path.string() + ": image dimensions must be positive");
  if (maxval <= 0) throw FormatError(path.string() + ": maxval must be positive");
  if (maxval > 255) throw FormatError(path.string() + ": unsupported depth (maxval " + std::to_string(maxval) + " > 255)");
  if (width > kMaxSide || height > kMaxSide) throw FormatError(path.string() + ": image dimensions too large");

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> raw(count);
  if (ascii) {
    std::istringstream body(bytes.substr(header.pos()));
    for (std::size_t i = 0; i < count; ++i) {
      long v = 0;
      if (!(body >> v)) throw FormatError(path.string() + ": truncated P2 raster");
      if (v < 0 || v > maxval) throw FormatError(path.string() + ": pixel value exceeds maxval");
      raw[i] = static_cast<std::uint8_t>(v);
    }
  } else {
    header.end_binary_header();
    const std::size_t offset = header.pos();
    if (bytes.size() < offset + count) throw FormatError(path.string() + ": truncated P5 raster");
    for (std::size_t i = 0; i < count; ++i) {
      raw[i] = static_cast<std::uint8_t>(bytes[offset + i]);
      if (raw[i] > maxval) throw FormatError(path.string() + ": pixel value exceeds maxval");
    }
  }

  const Depth depth = depth_for_maxval(maxval);
  if (maxval != 1 && maxval != 8 && maxval != 255) {
    for (auto& p : raw) p = static_cast<std::uint8_t>((p * 255 * 2 + maxval) / (2 * maxval));
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), depth, std::move(raw));
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << image.width() << ' ' << image.height() << '\n' << image.max_value() << '\n';
  out.write(reinterpret_cast<const char*>(image.pixels().data()), static_cast<std::streamsize>(image.pixels().size()));
  if (!out) throw IoError("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// IDX3

namespace {

constexpr std::uint32_t kIdxImageMagic = 0x00000803;

std::uint32_t read_be32(const std::string& bytes, std::size_t offset) {
  return (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset])) << 24) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + 1])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + 2])) << 8) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + 3]));
}

void write_be32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v >> 24), static_cast<char>(v >> 16), static_cast<char>(v >> 8),
                              static_cast<char>(v)};
  out.write(b.data(), 4);
}

}  // namespace

std::vector<GrayImage> load_idx_images(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < 16) throw FormatError(path.string() + ": truncated IDX header");
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kIdxImageMagic) {
    std::ostringstream msg;
    msg << path.string() << ": wrong IDX magic 0x" << std::hex << magic << " (expected 0x803)";
    throw FormatError(msg.str());
  }
  const std::uint64_t count = read_be32(bytes, 4);
  const std::uint64_t rows = read_be32(bytes, 8);
  const std::uint64_t cols = read_be32(bytes, 12);
  const std::uint64_t plane = rows * cols;
  if (count > 0 && (rows == 0 || cols == 0 || rows > 1u << 15 || cols > 1u << 15)) {
    throw FormatError(path.string() + ": invalid IDX image dimensions");
  }
  if (bytes.size() - 16 != count * plane) {
    throw FormatError(path.string() + ": IDX payload size mismatch (expected " + std::to_string(count * plane) +
                      " bytes, found " + std::to_string(bytes.size() - 16) + ")");
  }

  std::vector<GrayImage> images;
  images.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto* begin = reinterpret_cast<const std::uint8_t*>(bytes.data()) + 16 + k * plane;
    images.emplace_back(static_cast<int>(cols), static_cast<int>(rows), Depth::Gray256,
                        std::vector<std::uint8_t>(begin, begin + plane));
  }
  return images;
}

void save_idx_images(const std::vector<GrayImage>& images, const std::filesystem::path& path) {
  int rows = images.empty() ? 28 : images.front().height();
  int cols = images.empty() ? 28 : images.front().width();
  for (const auto& img : images) {
    if (img.width() != cols || img.height() != rows) throw std::invalid_argument("IDX images must share dimensions");
    if (img.depth() != Depth::Gray256) throw std::invalid_argument("IDX images must be 256-level");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_be32(out, kIdxImageMagic);
  write_be32(out, static_cast<std::uint32_t>(images.size()));
  write_be32(out, static_cast<std::uint32_t>(rows));
  write_be32(out, static_cast<std::uint32_t>(cols));
  for (const auto& img : images) {
    out.write(reinterpret_cast<const char*>(img.pixels().data()), static_cast<std::streamsize>(img.pixels().size()));
  }
  if (!out) throw IoError("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Depth conversions

namespace {

template <typename F>
GrayImage map_pixels(const GrayImage& image, Depth depth, F f) {
  std::vector<std::uint8_t> out(image.pixels().size());
  std::transform(image.pixels().begin(), image.pixels().end(), out.begin(),
                 [&](std::uint8_t p) { return static_cast<std::uint8_t>(f(p)); });
  return GrayImage(image.width(), image.height(), depth, std::move(out));
}

void require_depth(const GrayImage& image, Depth depth, const char* op) {
  if (image.depth() != depth) throw std::invalid_argument(std::string(op) + ": unexpected input depth");
}

}  // namespace

GrayImage binarize(const GrayImage& image, int threshold) {
  require_depth(image, Depth::Gray256, "binarize");
  return map_pixels(image, Depth::Binary, [threshold](int p) { return p >= threshold ? 1 : 0; });
}

GrayImage quantize9(const GrayImage& image) {
  require_depth(image, Depth::Gray256, "quantize9");
  return map_pixels(image, Depth::Levels9, [](int p) { return (16 * p + 255) / 510; });
}

GrayImage expand9(const GrayImage& image) {
  require_depth(image, Depth::Levels9, "expand9");
  return map_pixels(image, Depth::Gray256, [](int l) { return (510 * l + 8) / 16; });
}

GrayImage to_levels9(const GrayImage& image) {
  switch (image.depth()) {
    case Depth::Levels9: return image;
    case Depth::Gray256: return quantize9(image);
    case Depth::Binary: return map_pixels(image, Depth::Levels9, [](int p) { return p * 8; });
  }
  return image;
}

GrayImage invert(const GrayImage& image) {
  const int bound = image.max_value();
  return map_pixels(image, image.depth(), [bound](int p) { return bound - p; });
}

GrayImage to_gray256(const GrayImage& image) {
  switch (image.depth()) {
    case Depth::Gray256: return image;
    case Depth::Levels9: return expand9(image);
    case Depth::Binary: return map_pixels(image, Depth::Gray256, [](int p) { return p * 255; });
  }
  return image;
}

// ---------------------------------------------------------------------------
// Evaluation maps

SquareRect square_rect(const EvalMapSpec& spec, int k) {
  const int r = k / spec.cols;
  const int c = k % spec.cols;
  return {spec.gap + r * (spec.square_size + spec.gap), spec.gap + c * (spec.square_size + spec.gap),
          spec.square_size};
}

GrayImage gen_eval_map(const EvalMapSpec& spec) {
  if (spec.square_size <= 0 || spec.gap < 0 || spec.rows <= 0 || spec.cols <= 0) {
    throw std::invalid_argument("evaluation map geometry must be positive");
  }
  if (spec.square_levels.size() > static_cast<std::size_t>(spec.rows) * static_cast<std::size_t>(spec.cols)) {
    throw std::invalid_argument("evaluation map has more square levels than grid cells");
  }
  auto check_level = [](int level) {
    if (level < 0 || level > 8) throw std::invalid_argument("evaluation map levels must lie in [0, 8]");
  };
  check_level(spec.background_level);
  for (int level : spec.square_levels) check_level(level);
  if (spec.width() > 1 << 15 || spec.height() > 1 << 15) throw std::invalid_argument("evaluation map too large");

  GrayImage image(spec.width(), spec.height(), Depth::Levels9, static_cast<std::uint8_t>(spec.background_level));
  for (std::size_t k = 0; k < spec.square_levels.size(); ++k) {
    const SquareRect sq = square_rect(spec, static_cast<int>(k));
    for (int r = sq.top; r < sq.top + sq.size; ++r) {
      for (int c = sq.left; c < sq.left + sq.size; ++c) image.set(r, c, spec.square_levels[k]);
    }
  }
  return image;
}

}  // namespace onnham
