#include "fieldline/strip.hpp"

#include <cmath>
#include <stdexcept>

namespace fieldline {

strip_sampler::strip_sampler(const ising_model& model, const linear_map& line, std::int64_t z_lo,
                             std::int64_t z_hi, int half_width, const sampler_config& cfg,
                             std::uint64_t replica)
    : model_(model),
      line_(line),
      z_lo_(z_lo),
      z_hi_(z_hi),
      half_width_(half_width),
      rows_(static_cast<std::size_t>(2 * half_width + 1)),
      cfg_(cfg),
      rng_(cfg.seed, replica) {
    if (z_hi < z_lo) throw std::invalid_argument("strip_sampler: empty column range");
    if (half_width < 1) throw std::invalid_argument("strip_sampler: half_width must be positive");
    if (line.slope.orientation() != axis::x || line.slope.value() < 0.0 || line.slope.value() > 1.0)
        throw std::invalid_argument("strip_sampler: slope must be axis::x with value in [0, 1]");
    if (model.boundary == boundary_kind::periodic)
        throw std::invalid_argument("strip_sampler: periodic boundary not supported");
    cfg.validate();

    center_.reserve(static_cast<std::size_t>(z_hi - z_lo + 1));
    for (std::int64_t z = z_lo; z <= z_hi; ++z) center_.push_back(line_floor(line_, z));

    switch (model.boundary) {
        case boundary_kind::plus: outside_ = 1; break;
        case boundary_kind::minus: outside_ = -1; break;
        default: outside_ = 0; break;
    }
    const std::int8_t init = model.boundary == boundary_kind::minus ? -1 : 1;
    spins_.assign(center_.size() * rows_, init);

    for (int s = -4; s <= 4; ++s)
        p_plus_[static_cast<std::size_t>(s + 4)] =
            1.0 / (1.0 + std::exp(-2.0 * (model.beta * s + model.field)));
}

bool strip_sampler::in_band(std::int64_t x, std::int64_t y) const {
    if (x < z_lo_ || x > z_hi_) return false;
    const std::int64_t row = y - center_[static_cast<std::size_t>(x - z_lo_)] + half_width_;
    return row >= 0 && row < static_cast<std::int64_t>(rows_);
}

int strip_sampler::spin(std::int64_t x, std::int64_t y) const {
    if (!in_band(x, y)) throw std::out_of_range("strip_sampler: site outside band");
    const std::int64_t col = x - z_lo_;
    const std::int64_t row = y - center_[static_cast<std::size_t>(col)] + half_width_;
    return spins_[cell(col, row)];
}

int strip_sampler::symbol(std::int64_t x, std::int64_t y) const { return spin(x, y) > 0 ? 1 : 0; }

void strip_sampler::sweep(std::int64_t count) {
    const std::int64_t ncols = static_cast<std::int64_t>(center_.size());
    const std::int64_t nrows = static_cast<std::int64_t>(rows_);
    for (std::int64_t it = 0; it < count; ++it) {
        for (std::int64_t col = 0; col < ncols; ++col) {
            // row offsets of the west/east neighbours in band coordinates
            const std::int64_t dw = col > 0 ? center_[col] - center_[col - 1] : 0;
            const std::int64_t de = col + 1 < ncols ? center_[col] - center_[col + 1] : 0;
            for (std::int64_t row = 0; row < nrows; ++row) {
                int sum = 0;
                sum += row > 0 ? spins_[cell(col, row - 1)] : outside_;
                sum += row + 1 < nrows ? spins_[cell(col, row + 1)] : outside_;
                if (col > 0 && row + dw >= 0 && row + dw < nrows)
                    sum += spins_[cell(col - 1, row + dw)];
                else
                    sum += outside_;
                if (col + 1 < ncols && row + de >= 0 && row + de < nrows)
                    sum += spins_[cell(col + 1, row + de)];
                else
                    sum += outside_;
                spins_[cell(col, row)] =
                    rng_.next_double() < p_plus_[static_cast<std::size_t>(sum + 4)] ? 1 : -1;
            }
        }
    }
}

double rescaled_information(const iid_model& model, const std::vector<int>& symbols) {
    if (symbols.empty()) throw std::invalid_argument("rescaled_information: no symbols");
    std::vector<double> terms;
    terms.reserve(symbols.size());
    for (int s : symbols) {
        if (s < 0 || s >= model.alpha.size())
            throw std::invalid_argument("rescaled_information: symbol outside alphabet");
        terms.push_back(-std::log(model.marginal[static_cast<std::size_t>(s)]));
    }
    return mean_exact(terms);
}

std::vector<int> sample_line(const iid_model& model, std::int64_t n, rng_stream& rng) {
    if (n < 0) throw std::invalid_argument("sample_line: negative length");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    for (std::int64_t i = 0; i <= n; ++i)
        out.push_back(rng.pick(model.marginal));
    return out;
}

double rescaled_information(const strip_sampler& strip, std::int64_t n,
                            const line_conditioner& cond) {
    if (n < 0) throw std::invalid_argument("rescaled_information: negative length");
    if (cond.tables.empty()) throw std::invalid_argument("rescaled_information: empty conditioner");
    const linear_map& map = strip.line();
    if (!(map.slope == cond.slope))
        throw std::invalid_argument("rescaled_information: conditioner built for another slope");

    const torus_point a(map.intercept);
    const auto k = static_cast<std::uint64_t>(cond.tables.front().alphabet_size());
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(n + 1));
    for (std::int64_t i = 0; i <= n; ++i) {
        const site anchor = skew_offset(map, i);
        const std::size_t idx = cond.index_for_step(i, a);
        std::uint64_t key = 0;
        for (const site& off : cond.offsets[idx])
            key = key * k + static_cast<std::uint64_t>(strip.symbol(anchor.x + off.x, anchor.y + off.y));
        terms.push_back(
            -cond.tables[idx].log_conditional(key, strip.symbol(anchor.x, anchor.y), cond.pseudocount));
    }
    return mean_exact(terms);
}

}  // namespace fieldline
