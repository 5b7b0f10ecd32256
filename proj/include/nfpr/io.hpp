#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "nfpr/image.hpp"

namespace nfpr {

/// Failure while reading or writing an image file. `kind()` separates the
/// distinct failure modes so callers (and tests) can tell them apart.
class IoError : public std::runtime_error {
public:
    enum class Kind {
        OpenFailed,
        UnsupportedFormat,
        MalformedHeader,
        TruncatedPayload,
        WriteFailed,
    };

    IoError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Binary (P5) and ASCII (P2) PGM, maxval up to 65535. Samples are copied
// as-is, no rescaling to [0,255].
[[nodiscard]] Image load_pgm(const std::filesystem::path& path);

// Writes binary P5, maxval 255. Values are clamped to [0,255] and rounded
// half away from zero.
void save_pgm(const Image& img, const std::filesystem::path& path);

[[nodiscard]] unsigned char to_byte(double v) noexcept;

// Lossless float sidecar: ASCII line "NFPRF1 <width> <height>\n" followed by
// width*height little-endian IEEE-754 binary64 values in row-major order.
[[nodiscard]] Image load_sidecar(const std::filesystem::path& path);
void save_sidecar(const Image& img, const std::filesystem::path& path);

/// True if the file starts with the sidecar magic.
[[nodiscard]] bool is_sidecar(const std::filesystem::path& path);

/// Loads either format, sniffing the magic bytes.
[[nodiscard]] Image load_image(const std::filesystem::path& path);

}  // namespace nfpr
