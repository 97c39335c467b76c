#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "npc/npc.hpp"

namespace npc::test {

// I = {A, B}, J = {a, b, c}; a and b sit on the customers, c halfway.
inline Instance toy() {
    return make_instance("toy", {{0, 20, 15}, {20, 0, 15}});
}
inline constexpr int fa = 0, fb = 1, fc = 2;

inline std::string data_dir() {
    if (const char* d = std::getenv("NPC_DATA_DIR")) return d;
#ifdef NPC_DATA_DIR
    return NPC_DATA_DIR;
#else
    return "data";
#endif
}

inline std::string data_file(const std::string& name) { return (std::filesystem::path(data_dir()) / name).string(); }
inline bool has_data(const std::string& name) { return std::filesystem::exists(data_file(name)); }

// Tiny corpus shared by the property suites: n in 6..12, H in {2,3}.
struct TinyCase {
    std::uint64_t seed;
    Instance inst;
    Schedule schedule;
};

inline TinyCase tiny_case(std::uint64_t seed, int n_min = 6, int n_max = 12) {
    int n = n_min + static_cast<int>(seed % static_cast<std::uint64_t>(n_max - n_min + 1));
    int H = 2 + static_cast<int>((seed / 7) % 2);
    return {seed, random_instance(seed, n), random_schedule(seed, n, H)};
}

}  // namespace npc::test
