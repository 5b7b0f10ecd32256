#include "nfpr/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace nfpr {
namespace {

constexpr char kSidecarMagic[] = "NFPRF1";

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoError::Kind::OpenFailed, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Header tokenizer shared by P2/P5: whitespace separated, '#' starts a
// comment running to end of line.
class HeaderReader {
public:
    HeaderReader(const std::vector<unsigned char>& buf, std::string name)
        : buf_(buf), name_(std::move(name)) {}

    long next_int() {
        skip_space_and_comments();
        if (pos_ >= buf_.size())
            throw IoError(IoError::Kind::MalformedHeader, name_ + ": unexpected end of header");
        if (!std::isdigit(buf_[pos_]))
            throw IoError(IoError::Kind::MalformedHeader,
                          name_ + ": expected an unsigned integer in header");
        long v = 0;
        while (pos_ < buf_.size() && std::isdigit(buf_[pos_])) {
            v = v * 10 + (buf_[pos_++] - '0');
            if (v > 1'000'000'000)
                throw IoError(IoError::Kind::MalformedHeader, name_ + ": header value too large");
        }
        return v;
    }

    // Exactly one whitespace byte separates maxval from binary data.
    void consume_single_whitespace() {
        if (pos_ >= buf_.size() || !std::isspace(buf_[pos_]))
            throw IoError(IoError::Kind::MalformedHeader, name_ + ": missing whitespace after maxval");
        ++pos_;
    }

    [[nodiscard]] std::size_t pos() const noexcept { return pos_; }
    void seek(std::size_t p) noexcept { pos_ = p; }

private:
    void skip_space_and_comments() {
        while (pos_ < buf_.size()) {
            if (std::isspace(buf_[pos_])) {
                ++pos_;
            } else if (buf_[pos_] == '#') {
                while (pos_ < buf_.size() && buf_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& buf_;
    std::string name_;
    std::size_t pos_ = 0;
};

}  // namespace

Image load_pgm(const std::filesystem::path& path) {
    const auto buf = read_all(path);
    const std::string name = path.string();
    if (buf.size() < 2 || buf[0] != 'P')
        throw IoError(IoError::Kind::UnsupportedFormat, name + ": not a PNM file");
    const char kind = static_cast<char>(buf[1]);
    if (kind != '2' && kind != '5')
        throw IoError(IoError::Kind::UnsupportedFormat,
                      name + ": unsupported magic P" + std::string(1, kind) + " (only P2/P5)");

    HeaderReader hdr(buf, name);
    hdr.seek(2);
    const long width = hdr.next_int();
    const long height = hdr.next_int();
    const long maxval = hdr.next_int();
    if (width < 1 || height < 1)
        throw IoError(IoError::Kind::MalformedHeader, name + ": zero image dimension");
    if (maxval < 1 || maxval > 65535)
        throw IoError(IoError::Kind::MalformedHeader, name + ": maxval out of range");
    if (width * height > (1L << 30))
        throw IoError(IoError::Kind::MalformedHeader, name + ": image too large");

    const auto count = static_cast<std::size_t>(width * height);
    std::vector<double> data(count);

    if (kind == '5') {
        hdr.consume_single_whitespace();
        const std::size_t bytes_per = maxval < 256 ? 1 : 2;
        const std::size_t start = hdr.pos();
        if (buf.size() - start < count * bytes_per)
            throw IoError(IoError::Kind::TruncatedPayload,
                          name + ": payload has " + std::to_string(buf.size() - start) +
                              " bytes, expected " + std::to_string(count * bytes_per));
        for (std::size_t i = 0; i < count; ++i) {
            if (bytes_per == 1) {
                data[i] = buf[start + i];
            } else {
                // 16-bit samples are big-endian.
                data[i] = (buf[start + 2 * i] << 8) | buf[start + 2 * i + 1];
            }
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            long v = 0;
            try {
                v = hdr.next_int();
            } catch (const IoError&) {
                throw IoError(IoError::Kind::TruncatedPayload,
                              name + ": ASCII payload ended after " + std::to_string(i) + " of " +
                                  std::to_string(count) + " samples");
            }
            if (v > maxval)
                throw IoError(IoError::Kind::MalformedHeader, name + ": sample exceeds maxval");
            data[i] = static_cast<double>(v);
        }
    }
    return Image(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

unsigned char to_byte(double v) noexcept {
    const double c = std::clamp(v, 0.0, 255.0);
    return static_cast<unsigned char>(std::round(c));  // std::round: half away from zero
}

void save_pgm(const Image& img, const std::filesystem::path& path) {
    if (img.empty()) throw ShapeError("cannot save an empty image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(IoError::Kind::WriteFailed, "cannot open " + path.string() + " for writing");
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    std::vector<char> bytes(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) bytes[i] = static_cast<char>(to_byte(img[i]));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(IoError::Kind::WriteFailed, "write failed: " + path.string());
}

void save_sidecar(const Image& img, const std::filesystem::path& path) {
    if (img.empty()) throw ShapeError("cannot save an empty image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(IoError::Kind::WriteFailed, "cannot open " + path.string() + " for writing");
    out << kSidecarMagic << ' ' << img.width() << ' ' << img.height() << '\n';
    std::vector<unsigned char> bytes(img.size() * 8);
    for (std::size_t i = 0; i < img.size(); ++i) {
        const auto bits = std::bit_cast<std::uint64_t>(img[i]);
        for (int b = 0; b < 8; ++b) bytes[8 * i + b] = static_cast<unsigned char>(bits >> (8 * b));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(IoError::Kind::WriteFailed, "write failed: " + path.string());
}

Image load_sidecar(const std::filesystem::path& path) {
    const auto buf = read_all(path);
    const std::string name = path.string();
    const std::size_t magic_len = std::strlen(kSidecarMagic);
    if (buf.size() < magic_len || std::memcmp(buf.data(), kSidecarMagic, magic_len) != 0)
        throw IoError(IoError::Kind::UnsupportedFormat, name + ": missing NFPRF1 magic");
    HeaderReader hdr(buf, name);
    hdr.seek(magic_len);
    const long width = hdr.next_int();
    const long height = hdr.next_int();
    if (width < 1 || height < 1 || width * height > (1L << 30))
        throw IoError(IoError::Kind::MalformedHeader, name + ": bad dimensions");
    if (hdr.pos() >= buf.size() || buf[hdr.pos()] != '\n')
        throw IoError(IoError::Kind::MalformedHeader, name + ": header must end with newline");
    const std::size_t start = hdr.pos() + 1;
    const auto count = static_cast<std::size_t>(width * height);
    if (buf.size() - start != count * 8)
        throw IoError(IoError::Kind::TruncatedPayload,
                      name + ": payload has " + std::to_string(buf.size() - start) + " bytes, expected " +
                          std::to_string(count * 8));
    std::vector<double> data(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= std::uint64_t{buf[start + 8 * i + b]} << (8 * b);
        data[i] = std::bit_cast<double>(bits);
    }
    return Image(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

bool is_sidecar(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    char magic[sizeof(kSidecarMagic) - 1] = {};
    in.read(magic, sizeof(magic));
    return in && std::memcmp(magic, kSidecarMagic, sizeof(magic)) == 0;
}

Image load_image(const std::filesystem::path& path) {
    return is_sidecar(path) ? load_sidecar(path) : load_pgm(path);
}

}  // namespace nfpr
