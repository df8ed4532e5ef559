#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <string>

namespace sbridge {

// Shortest decimal form that round-trips to the same double; pure function
// of the value, so repeated runs emit byte-identical files.
inline std::string format_double(double v) {
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline std::string format_u64(std::uint64_t v) {
    std::array<char, 24> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

}  // namespace sbridge
