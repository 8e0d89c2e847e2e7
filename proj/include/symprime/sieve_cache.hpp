#pragma once

// On-disk cache for PrimalityTable.
//
// Layout (all integers little-endian):
//   offset 0   4 bytes   magic "SYMP"
//   offset 4   u32       format version (cache_format_version)
//   offset 8   u64       bound
//   offset 16  u64       word count W = ceil(((bound + 1) / 2) / 64)
//   offset 24  W * u64   odd-composite bit array, bit i <-> odd integer 2i+1
//
// Any mismatch (magic, version, bound, size) means the file is ignored and the
// table rebuilt; a cache is never partially reused.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "symprime/sieve.hpp"

namespace symprime {

inline constexpr std::array<char, 4> cache_magic{'S', 'Y', 'M', 'P'};
inline constexpr std::uint32_t cache_format_version = 1;
inline constexpr const char* cache_dir_env = "SYMPRIME_CACHE_DIR";

namespace detail {

template <typename T>
void put_le(std::ostream& out, T v) {
    std::array<char, sizeof(T)> buf;
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = char((v >> (8 * i)) & 0xff);
    out.write(buf.data(), buf.size());
}

template <typename T>
bool get_le(std::istream& in, T& v) {
    std::array<unsigned char, sizeof(T)> buf;
    if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) return false;
    v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= T(buf[i]) << (8 * i);
    return true;
}

} // namespace detail

/// Directory named by SYMPRIME_CACHE_DIR, if set and non-empty.
inline std::optional<std::filesystem::path> cache_directory_from_env() {
    const char* dir = std::getenv(cache_dir_env);
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir);
}

inline std::filesystem::path cache_file_for(const std::filesystem::path& dir, u64 bound) {
    return dir / ("primality-" + std::to_string(bound) + ".symp");
}

inline void save_primality_cache(const std::filesystem::path& file, const PrimalityTable& table) {
    std::filesystem::create_directories(file.parent_path());
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out.write(cache_magic.data(), cache_magic.size());
        detail::put_le(out, cache_format_version);
        detail::put_le(out, table.bound());
        detail::put_le(out, u64(table.words().size()));
        for (u64 w : table.words()) detail::put_le(out, w);
        if (!out) throw std::runtime_error("short write to cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

/// Loads a cache file built for exactly `bound`; nullopt on any mismatch.
inline std::optional<PrimalityTable> load_primality_cache(const std::filesystem::path& file, u64 bound) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != cache_magic) return std::nullopt;
    std::uint32_t version = 0;
    u64 stored_bound = 0, count = 0;
    if (!detail::get_le(in, version) || version != cache_format_version) return std::nullopt;
    if (!detail::get_le(in, stored_bound) || stored_bound != bound || bound < 2) return std::nullopt;
    if (!detail::get_le(in, count) || count != ((bound + 1) / 2 + 63) / 64) return std::nullopt;
    std::vector<u64> words(count);
    for (auto& w : words)
        if (!detail::get_le(in, w)) return std::nullopt;
    if (in.peek() != std::char_traits<char>::eof()) return std::nullopt;
    return PrimalityTable::from_words(bound, std::move(words));
}

/// Loads the table from `cache_dir` when a matching file exists, otherwise
/// builds it and (when a directory is given) writes the cache.
inline PrimalityTable load_or_build_primality(u64 bound, const std::optional<std::filesystem::path>& cache_dir,
                                              const BuildOptions& opts = {}) {
    if (cache_dir) {
        auto file = cache_file_for(*cache_dir, bound);
        if (auto cached = load_primality_cache(file, bound)) return std::move(*cached);
        auto table = PrimalityTable::build(bound, opts);
        save_primality_cache(file, table);
        return table;
    }
    return PrimalityTable::build(bound, opts);
}

} // namespace symprime
