#pragma once

// Shared generators for the property-style tests.

#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>

#include "globenv/curve_set.hpp"

namespace globenv::support {

/// s x d Gaussian values; distinct at every point with probability one (checked).
inline CurveSet random_distinct_curves(std::mt19937_64& rng, std::size_t s, std::size_t d) {
    std::normal_distribution<double> normal;
    while (true) {
        Matrix<double> values(s, d);
        for (auto& v : values.data()) {
            v = normal(rng);
        }
        bool distinct = true;
        for (std::size_t k = 0; k < d && distinct; ++k) {
            std::set<double> seen;
            for (std::size_t i = 0; i < s; ++i) {
                distinct = distinct && seen.insert(values(i, k)).second;
            }
        }
        if (distinct) {
            return CurveSet::on_unit_grid(std::move(values));
        }
    }
}

/// Small integer values in [0, levels), so ties are common.
inline CurveSet random_tied_curves(std::mt19937_64& rng, std::size_t s, std::size_t d, int levels = 4) {
    std::uniform_int_distribution<int> pick(0, levels - 1);
    Matrix<double> values(s, d);
    for (auto& v : values.data()) {
        v = pick(rng);
    }
    return CurveSet::on_unit_grid(std::move(values));
}

inline std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("globenv-test-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace globenv::support
