#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ginet {

// Ordered factor levels. Index 0 is the reference (unexposed) level.
class Levels {
public:
    Levels() = default;
    explicit Levels(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    // Throws Error(LevelNotFound) for unknown names.
    std::size_t index(std::string_view name) const;
    bool contains(std::string_view name) const noexcept;

    bool operator==(const Levels&) const = default;

private:
    std::vector<std::string> names_;
};

// Dense row-major matrix over (levelA, levelB).
class Grid {
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t a, std::size_t b) { return cells_[a * cols_ + b]; }
    double operator()(std::size_t a, std::size_t b) const { return cells_[a * cols_ + b]; }

    const std::vector<double>& cells() const noexcept { return cells_; }
    double sum() const noexcept;

    bool operator==(const Grid&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> cells_;
};

}  // namespace ginet
