#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace lexkit {

// FNV-1a, 64-bit. Used for provenance fingerprints, not security.
class Fnv1a64 {
public:
    void update(std::string_view data) {
        for (unsigned char c : data) {
            state_ ^= c;
            state_ *= 0x100000001b3ULL;
        }
    }

    std::uint64_t value() const { return state_; }
    std::string hex() const;

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string digest_string(std::string_view data);
std::string digest_file(const std::filesystem::path& path);

}  // namespace lexkit
