#include "moledrill/format.hpp"

#include <array>
#include <charconv>
#include <stdexcept>
#include <system_error>

namespace moledrill {

std::string format_fixed(double value, int precision) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, precision);
    if (ec != std::errc{}) return "nan";
    std::string out(buf.data(), end);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

std::string format_roundtrip(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) return "nan";
    return {buf.data(), end};
}

double parse_double(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t last = text.find_last_not_of(" \t\r");
    if (begin == std::string::npos) throw std::invalid_argument("empty number");
    const char* first = text.data() + begin;
    const char* stop = text.data() + last + 1;
    if (*first == '+') ++first;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, stop, value);
    if (ec != std::errc{} || ptr != stop) throw std::invalid_argument("not a number: '" + text + "'");
    return value;
}

}  // namespace moledrill
