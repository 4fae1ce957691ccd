#include "ginet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ginet/error.hpp"

namespace ginet {

Levels::Levels(std::vector<std::string> names) : names_(std::move(names)) {}

std::size_t Levels::index(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw Error(ErrorCode::LevelNotFound, "unknown level '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - names_.begin());
}

bool Levels::contains(std::string_view name) const noexcept {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

double Grid::sum() const noexcept {
    // Neumaier summation; joint distributions are checked against 1e-12.
    double s = 0.0, c = 0.0;
    for (double v : cells_) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v)) {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    return s + c;
}

}  // namespace ginet
