#include "fieldline/droplet.hpp"

#include <cmath>
#include <stdexcept>

namespace fieldline {

droplet_sets droplet_partition(const droplet_spec& spec) {
    if (!spec.shape.closed()) throw std::invalid_argument("droplet_partition: shape must be closed");
    if (!(spec.alpha > 0.0 && spec.alpha <= 1.0))
        throw std::invalid_argument("droplet_partition: alpha must lie in (0, 1]");
    if (spec.n < 1) throw std::invalid_argument("droplet_partition: box radius must be positive");
    if (spec.shape.locate(site{0, 0}) != point_location::inside)
        throw std::invalid_argument("droplet_partition: origin must lie strictly inside the shape");

    droplet_sets out;
    const std::int64_t side = 2 * spec.n + 1;
    out.box_sites = side * side;

    const double area = spec.shape.area();
    out.k = static_cast<std::int64_t>(
        std::floor(std::sqrt(spec.alpha * static_cast<double>(out.box_sites) / area)));
    if (out.k < 1) throw std::invalid_argument("droplet_partition: box too small for the shape");
    out.l = static_cast<std::int64_t>(
        std::floor(static_cast<double>(out.k) + std::sqrt(static_cast<double>(spec.n))));

    const polygon droplet = spec.shape.blowup(static_cast<double>(out.k));
    const polygon separator = spec.shape.blowup(static_cast<double>(out.l));

    for (std::int64_t y = -spec.n; y <= spec.n; ++y) {
        for (std::int64_t x = -spec.n; x <= spec.n; ++x) {
            const site s{x, y};
            if (droplet.locate(s) == point_location::inside) out.core.push_back(s);
            if (separator.locate(s) == point_location::outside) out.far.push_back(s);
        }
    }
    out.density = static_cast<double>(out.core.size()) / static_cast<double>(out.box_sites);
    out.deviation = std::fabs(out.density - spec.alpha);
    return out;
}

}  // namespace fieldline
