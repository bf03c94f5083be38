#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fieldline/entropy.hpp"
#include "fieldline/field.hpp"
#include "fieldline/geometry.hpp"
#include "fieldline/rng.hpp"

namespace fieldline {

// Heat-bath chain on a sheared band around a digitized line: for every
// column z in [z_lo, z_hi] the band holds the sites within half_width of
// floor(slope * z + intercept). Long line samples come out of a state of
// size O(n * half_width) instead of an n-by-n window.
//
// Slopes must be axis::x with value in [0, 1]; spins outside the band are
// fixed by the boundary condition (periodic is not supported here).
class strip_sampler {
public:
    strip_sampler(const ising_model& model, const linear_map& line, std::int64_t z_lo,
                  std::int64_t z_hi, int half_width, const sampler_config& cfg,
                  std::uint64_t replica = 0);

    void sweep(std::int64_t count = 1);
    void run_burn_in() { sweep(cfg_.burn_in_sweeps); }
    const strip_sampler& next() {
        sweep(cfg_.thinning_sweeps);
        return *this;
    }

    int spin(std::int64_t x, std::int64_t y) const;    // +1 / -1, absolute coordinates
    int symbol(std::int64_t x, std::int64_t y) const;  // alphabet index 0 / 1
    bool in_band(std::int64_t x, std::int64_t y) const;

    const linear_map& line() const { return line_; }
    std::int64_t z_lo() const { return z_lo_; }
    std::int64_t z_hi() const { return z_hi_; }
    int half_width() const { return half_width_; }

private:
    std::size_t cell(std::int64_t col, std::int64_t row) const {
        return static_cast<std::size_t>(col) * rows_ + static_cast<std::size_t>(row);
    }

    ising_model model_;
    linear_map line_;
    std::int64_t z_lo_ = 0;
    std::int64_t z_hi_ = 0;
    int half_width_ = 0;
    std::size_t rows_ = 0;
    sampler_config cfg_;
    rng_stream rng_;
    std::vector<std::int64_t> center_;     // floor value per column
    std::vector<std::int8_t> spins_;
    std::array<double, 9> p_plus_{};       // heat-bath P(+) by neighbour sum + 4
    std::int8_t outside_ = 0;              // fixed spin outside the band, 0 = free
};

// Per-site information content of a line sample of a product field:
//   -(1/(n+1)) ln P(symbols), n + 1 = symbols.size().
double rescaled_information(const iid_model& model, const std::vector<int>& symbols);

// n + 1 independent draws from the marginal, the law of any digitized line
// sample of the product field.
std::vector<int> sample_line(const iid_model& model, std::int64_t n, rng_stream& rng);

// Plug-in information of the current strip state along its line: the walk
// visits the digitized sites of steps 0..n and scores each symbol against
// the conditioner table of that step's torus point. The conditioner must
// have been built for this line's slope and intercept orbit.
double rescaled_information(const strip_sampler& strip, std::int64_t n,
                            const line_conditioner& cond);

}  // namespace fieldline
