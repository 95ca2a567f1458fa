#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

namespace ets {

/// Locale-independent decimal formatting of a double with `precision`
/// significant digits (general format). Used for all CSV/DOT output so
/// that serialized artifacts are byte-stable.
inline std::string format_double(double v, int precision = 12) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v,
                             std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

/// Fixed-point formatting with `decimals` digits after the point.
inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v,
                             std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

/// FNV-1a 64-bit hash, hex-encoded. Used for config hashes and input
/// checksums in run manifests (integrity bookkeeping, not cryptography).
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view data) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace ets
