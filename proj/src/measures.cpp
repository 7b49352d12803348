#include "cubemax/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace cubemax {

namespace {

constexpr double kSnapTol = 0x1.0p-40;

// Snap v to the nearest integer when within kSnapTol of it.
double snap_to_integer(double v) {
    const double n = std::nearbyint(v);
    if (std::abs(v - n) <= kSnapTol) {
        return n;
    }
    return v;
}

}  // namespace

Cube make_cube(std::vector<double> center, double radius) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("Cube: radius must be positive");
    }
    if (center.empty()) {
        throw std::invalid_argument("Cube: empty center");
    }
    return Cube{std::move(center), radius};
}

DeltaMeasure::DeltaMeasure(int dimension, std::vector<WeightedPoint> points)
    : dimension_(dimension), points_(std::move(points)), mass_(0.0) {
    if (dimension_ <= 0) {
        throw std::invalid_argument("DeltaMeasure: dimension must be positive");
    }
    for (const auto& p : points_) {
        if (static_cast<int>(p.x.size()) != dimension_) {
            throw std::invalid_argument("DeltaMeasure: point dimension mismatch");
        }
        if (!(p.w > 0.0) || !std::isfinite(p.w)) {
            throw std::invalid_argument("DeltaMeasure: weights must be strictly positive");
        }
        mass_ += p.w;
    }
    if (!std::isfinite(mass_)) {
        throw std::invalid_argument("DeltaMeasure: total mass must be finite");
    }
}

LatticeWindow make_window(int dimension, std::int64_t lo, std::int64_t hi) {
    if (dimension <= 0) {
        throw std::invalid_argument("LatticeWindow: dimension must be positive");
    }
    if (!(lo <= 0 && 0 <= hi)) {
        throw std::invalid_argument("LatticeWindow: requires lo <= 0 <= hi");
    }
    LatticeWindow w;
    w.dimension = dimension;
    w.infinite = false;
    w.lo = lo;
    w.hi = hi;
    return w;
}

LatticeWindow infinite_lattice(int dimension) {
    if (dimension <= 0) {
        throw std::invalid_argument("LatticeWindow: dimension must be positive");
    }
    LatticeWindow w;
    w.dimension = dimension;
    w.infinite = true;
    return w;
}

LatticeWindow margined_window(int dimension, std::int64_t R) {
    if (R < 1) {
        throw std::invalid_argument("margined_window: R must be >= 1");
    }
    const auto margin =
        static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(dimension))));
    return make_window(dimension, -margin, R + margin);
}

std::int64_t axis_count(double x, double r, std::optional<std::int64_t> axis_lo,
                        std::optional<std::int64_t> axis_hi) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("axis_count: radius must be positive");
    }
    double first = std::ceil(snap_to_integer(x - r));
    double last = std::floor(snap_to_integer(x + r));
    if (axis_lo && first < static_cast<double>(*axis_lo)) {
        first = static_cast<double>(*axis_lo);
    }
    if (axis_hi && last > static_cast<double>(*axis_hi)) {
        last = static_cast<double>(*axis_hi);
    }
    if (last < first) {
        return 0;
    }
    return static_cast<std::int64_t>(last - first) + 1;
}

double count_in_cube(const DeltaMeasure& measure, const Cube& cube) {
    if (static_cast<int>(cube.center.size()) != measure.dimension()) {
        throw std::invalid_argument("count_in_cube: cube/measure dimension mismatch");
    }
    double total = 0.0;
    for (const auto& p : measure.points()) {
        if (linf_distance(p.x, cube.center) <= cube.radius) {
            total += p.w;
        }
    }
    return total;
}

double count_in_cube(const LatticeWindow& window, const Cube& cube) {
    if (static_cast<int>(cube.center.size()) != window.dimension) {
        throw std::invalid_argument("count_in_cube: cube/window dimension mismatch");
    }
    std::optional<std::int64_t> lo, hi;
    if (!window.infinite) {
        lo = window.lo;
        hi = window.hi;
    }
    double product = 1.0;
    for (double c : cube.center) {
        const std::int64_t axis = axis_count(c, cube.radius, lo, hi);
        if (axis == 0) {
            return 0.0;
        }
        product *= static_cast<double>(axis);
    }
    return product;
}

double mass(const DeltaMeasure& measure) { return measure.mass(); }

double mass(const LatticeWindow& window) {
    if (window.infinite) {
        throw std::invalid_argument("mass: infinite lattice has no finite mass");
    }
    const double width = static_cast<double>(window.hi - window.lo + 1);
    return std::pow(width, static_cast<double>(window.dimension));
}

DeltaMeasure materialize(const LatticeWindow& window) {
    if (window.infinite) {
        throw std::invalid_argument("materialize: infinite lattice");
    }
    const double total = mass(window);
    if (total > 2e6) {
        throw std::invalid_argument("materialize: window too large");
    }
    std::vector<WeightedPoint> points;
    points.reserve(static_cast<std::size_t>(total));
    std::vector<std::int64_t> idx(static_cast<std::size_t>(window.dimension), window.lo);
    const int d = window.dimension;
    while (true) {
        WeightedPoint p;
        p.x.reserve(static_cast<std::size_t>(d));
        for (std::int64_t v : idx) {
            p.x.push_back(static_cast<double>(v));
        }
        p.w = 1.0;
        points.push_back(std::move(p));
        int axis = 0;
        while (axis < d && ++idx[static_cast<std::size_t>(axis)] > window.hi) {
            idx[static_cast<std::size_t>(axis)] = window.lo;
            ++axis;
        }
        if (axis == d) {
            break;
        }
    }
    return DeltaMeasure(d, std::move(points));
}

double linf_distance(std::span<const double> a, std::span<const double> b) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        best = std::max(best, std::abs(a[i] - b[i]));
    }
    return best;
}

std::string DeltaMeasure::to_json() const {
    nlohmann::json j;
    j["dimension"] = dimension_;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points_) {
        pts.push_back({{"x", p.x}, {"w", p.w}});
    }
    j["points"] = std::move(pts);
    return j.dump();
}

DeltaMeasure DeltaMeasure::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<WeightedPoint> points;
    for (const auto& p : j.at("points")) {
        WeightedPoint wp;
        wp.x = p.at("x").get<std::vector<double>>();
        wp.w = p.at("w").get<double>();
        points.push_back(std::move(wp));
    }
    return DeltaMeasure(j.at("dimension").get<int>(), std::move(points));
}

std::string LatticeWindow::to_json() const {
    nlohmann::json j;
    j["dimension"] = dimension;
    if (infinite) {
        j["infinite"] = true;
    } else {
        j["lo"] = lo;
        j["hi"] = hi;
    }
    return j.dump();
}

LatticeWindow LatticeWindow::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int d = j.at("dimension").get<int>();
    if (j.contains("infinite") && j.at("infinite").get<bool>()) {
        return infinite_lattice(d);
    }
    return make_window(d, j.at("lo").get<std::int64_t>(), j.at("hi").get<std::int64_t>());
}

}  // namespace cubemax
