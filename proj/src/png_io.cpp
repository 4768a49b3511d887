#include "lineseg/png_io.hpp"

#include <zlib.h>

#include <array>
#include <cstring>
#include <fstream>

#include "lineseg/error.hpp"

namespace lineseg {

namespace {

constexpr std::array<std::uint8_t, 8> kSignature = {137, 80, 78, 71, 13, 10, 26, 10};

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_be32(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::uint8_t* data, std::size_t len) {
  put_be32(out, static_cast<std::uint32_t>(len));
  const std::size_t type_pos = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data, data + len);
  const std::uint32_t crc = static_cast<std::uint32_t>(
      crc32(0, out.data() + type_pos, static_cast<uInt>(4 + len)));
  put_be32(out, crc);
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const PngImage& img) {
  if (img.width < 1 || img.height < 1 || (img.channels != 1 && img.channels != 3))
    throw DataError("encode_png: unsupported image shape");
  if (img.data.size() !=
      static_cast<std::size_t>(img.width) * img.height * img.channels)
    throw DataError("encode_png: data size mismatch");

  std::vector<std::uint8_t> out(kSignature.begin(), kSignature.end());

  std::uint8_t ihdr[13];
  ihdr[0] = static_cast<std::uint8_t>(img.width >> 24);
  ihdr[1] = static_cast<std::uint8_t>(img.width >> 16);
  ihdr[2] = static_cast<std::uint8_t>(img.width >> 8);
  ihdr[3] = static_cast<std::uint8_t>(img.width);
  ihdr[4] = static_cast<std::uint8_t>(img.height >> 24);
  ihdr[5] = static_cast<std::uint8_t>(img.height >> 16);
  ihdr[6] = static_cast<std::uint8_t>(img.height >> 8);
  ihdr[7] = static_cast<std::uint8_t>(img.height);
  ihdr[8] = 8;                                        // bit depth
  ihdr[9] = img.channels == 1 ? 0 : 2;                // gray / truecolor
  ihdr[10] = ihdr[11] = ihdr[12] = 0;                 // deflate, adaptive, no interlace
  append_chunk(out, "IHDR", ihdr, sizeof(ihdr));

  const std::size_t stride = static_cast<std::size_t>(img.width) * img.channels;
  std::vector<std::uint8_t> raw;
  raw.reserve((stride + 1) * img.height);
  for (int y = 0; y < img.height; ++y) {
    raw.push_back(0);  // filter: none
    raw.insert(raw.end(), img.data.begin() + y * stride, img.data.begin() + (y + 1) * stride);
  }

  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> compressed(bound);
  if (compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw DataError("encode_png: deflate failed");
  append_chunk(out, "IDAT", compressed.data(), bound);
  append_chunk(out, "IEND", nullptr, 0);
  return out;
}

namespace {

struct ChunkView {
  std::uint32_t length;
  const std::uint8_t* type;
  const std::uint8_t* data;
};

class ChunkReader {
 public:
  ChunkReader(const std::uint8_t* bytes, std::size_t size) : bytes_(bytes), size_(size) {
    if (size_ < kSignature.size() ||
        std::memcmp(bytes_, kSignature.data(), kSignature.size()) != 0)
      throw DataError("not a PNG file");
    pos_ = kSignature.size();
  }

  bool next(ChunkView& chunk) {
    if (pos_ >= size_) return false;
    if (pos_ + 12 > size_) throw DataError("truncated PNG chunk header");
    chunk.length = get_be32(bytes_ + pos_);
    chunk.type = bytes_ + pos_ + 4;
    chunk.data = bytes_ + pos_ + 8;
    if (pos_ + 12 + static_cast<std::size_t>(chunk.length) > size_)
      throw DataError("truncated PNG chunk");
    const std::uint32_t expect = get_be32(chunk.data + chunk.length);
    const std::uint32_t actual = static_cast<std::uint32_t>(
        crc32(0, chunk.type, static_cast<uInt>(4 + chunk.length)));
    if (expect != actual) throw DataError("PNG chunk CRC mismatch");
    pos_ += 12 + chunk.length;
    return true;
  }

 private:
  const std::uint8_t* bytes_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

bool is_type(const ChunkView& c, const char* t) { return std::memcmp(c.type, t, 4) == 0; }

}  // namespace

void png_dimensions(const std::vector<std::uint8_t>& bytes, int& width, int& height) {
  ChunkReader reader(bytes.data(), bytes.size());
  ChunkView chunk;
  if (!reader.next(chunk) || !is_type(chunk, "IHDR") || chunk.length != 13)
    throw DataError("PNG missing IHDR");
  width = static_cast<int>(get_be32(chunk.data));
  height = static_cast<int>(get_be32(chunk.data + 4));
}

PngImage decode_png(const std::uint8_t* bytes, std::size_t size) {
  ChunkReader reader(bytes, size);
  ChunkView chunk;
  if (!reader.next(chunk) || !is_type(chunk, "IHDR") || chunk.length != 13)
    throw DataError("PNG missing IHDR");

  const std::uint32_t w = get_be32(chunk.data), h = get_be32(chunk.data + 4);
  const int depth = chunk.data[8], color = chunk.data[9], interlace = chunk.data[12];
  if (w == 0 || h == 0 || w > (1u << 24) || h > (1u << 24))
    throw DataError("PNG dimensions out of range");
  if (depth != 8) throw DataError("unsupported PNG bit depth (only 8 supported)");
  if (interlace != 0) throw DataError("interlaced PNG not supported");
  int src_channels;
  switch (color) {
    case 0: src_channels = 1; break;  // gray
    case 2: src_channels = 3; break;  // rgb
    case 3: src_channels = 1; break;  // palette
    case 4: src_channels = 2; break;  // gray+alpha
    case 6: src_channels = 4; break;  // rgba
    default: throw DataError("unsupported PNG color type");
  }

  std::vector<std::uint8_t> palette;
  std::vector<std::uint8_t> idat;
  bool saw_iend = false;
  while (reader.next(chunk)) {
    if (is_type(chunk, "PLTE")) {
      palette.assign(chunk.data, chunk.data + chunk.length);
    } else if (is_type(chunk, "IDAT")) {
      idat.insert(idat.end(), chunk.data, chunk.data + chunk.length);
    } else if (is_type(chunk, "IEND")) {
      saw_iend = true;
      break;
    }
  }
  if (!saw_iend) throw DataError("truncated PNG (missing IEND)");
  if (idat.empty()) throw DataError("PNG missing IDAT");
  if (color == 3 && (palette.empty() || palette.size() % 3 != 0))
    throw DataError("palette PNG missing PLTE");

  const std::size_t stride = static_cast<std::size_t>(w) * src_channels;
  const std::size_t raw_size = (stride + 1) * h;
  std::vector<std::uint8_t> raw(raw_size);
  uLongf out_len = static_cast<uLongf>(raw_size);
  const int rc = uncompress(raw.data(), &out_len, idat.data(), static_cast<uLong>(idat.size()));
  if (rc != Z_OK || out_len != raw_size) throw DataError("PNG inflate failed");

  // Undo scanline filters in place.
  const int bpp = src_channels;
  std::vector<std::uint8_t> prev(stride, 0);
  for (std::uint32_t y = 0; y < h; ++y) {
    std::uint8_t* row = raw.data() + y * (stride + 1);
    const int filter = row[0];
    std::uint8_t* cur = row + 1;
    switch (filter) {
      case 0:
        break;
      case 1:
        for (std::size_t i = bpp; i < stride; ++i) cur[i] += cur[i - bpp];
        break;
      case 2:
        for (std::size_t i = 0; i < stride; ++i) cur[i] += prev[i];
        break;
      case 3:
        for (std::size_t i = 0; i < stride; ++i) {
          const int left = i >= static_cast<std::size_t>(bpp) ? cur[i - bpp] : 0;
          cur[i] += static_cast<std::uint8_t>((left + prev[i]) / 2);
        }
        break;
      case 4:
        for (std::size_t i = 0; i < stride; ++i) {
          const int left = i >= static_cast<std::size_t>(bpp) ? cur[i - bpp] : 0;
          const int upleft = i >= static_cast<std::size_t>(bpp) ? prev[i - bpp] : 0;
          cur[i] += static_cast<std::uint8_t>(paeth(left, prev[i], upleft));
        }
        break;
      default:
        throw DataError("invalid PNG scanline filter");
    }
    std::memcpy(prev.data(), cur, stride);
  }

  PngImage img;
  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  img.channels = (color == 0 || color == 4) ? 1 : 3;
  img.data.resize(static_cast<std::size_t>(w) * h * img.channels);
  for (std::uint32_t y = 0; y < h; ++y) {
    const std::uint8_t* cur = raw.data() + y * (stride + 1) + 1;
    std::uint8_t* dst = img.data.data() + static_cast<std::size_t>(y) * w * img.channels;
    for (std::uint32_t x = 0; x < w; ++x) {
      switch (color) {
        case 0: dst[x] = cur[x]; break;
        case 4: dst[x] = cur[2 * x]; break;
        case 2: std::memcpy(dst + 3 * x, cur + 3 * x, 3); break;
        case 6: std::memcpy(dst + 3 * x, cur + 4 * x, 3); break;
        case 3: {
          const std::size_t idx = static_cast<std::size_t>(cur[x]) * 3;
          if (idx + 2 >= palette.size()) throw DataError("palette index out of range");
          std::memcpy(dst + 3 * x, palette.data() + idx, 3);
          break;
        }
      }
    }
  }
  return img;
}

PngImage decode_png(const std::vector<std::uint8_t>& bytes) {
  return decode_png(bytes.data(), bytes.size());
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace lineseg
