#include "lexkit/digest.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace lexkit {

std::string Fnv1a64::hex() const {
    char buf[17] = {};
    auto res = std::to_chars(buf, buf + 16, state_, 16);
    std::string out(buf, res.ptr);
    return std::string(16 - out.size(), '0') + out;
}

std::string digest_string(std::string_view data) {
    Fnv1a64 h;
    h.update(data);
    return h.hex();
}

std::string digest_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file for digest: " + path.string());
    }
    Fnv1a64 h;
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        h.update(std::string_view(buf.data(), static_cast<std::size_t>(in.gcount())));
    }
    return h.hex();
}

}  // namespace lexkit
