#include "fieldline/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace fieldline {

configuration sample_iid(const iid_model& model, const region& window, rng_stream& rng) {
    configuration out(window, model.alpha);
    for (std::int64_t y = window.y0; y < window.y0 + window.height; ++y)
        for (std::int64_t x = window.x0; x < window.x0 + window.width; ++x)
            out.set(x, y, rng.pick(model.marginal));
    return out;
}

configuration sample_iid(const iid_model& model, const region& window, const sampler_config& cfg) {
    cfg.validate();
    rng_stream rng(cfg.seed, 0);
    return sample_iid(model, window, rng);
}

std::array<double, 2> local_conditional(const ising_model& model,
                                        const std::array<char, 4>& neighbours) {
    const alphabet binary = alphabet::binary();
    int sum = 0;
    for (char c : neighbours) sum += binary.index(c) ? 1 : -1;
    const double p_plus =
        1.0 / (1.0 + std::exp(-2.0 * (model.beta * static_cast<double>(sum) + model.field)));
    return {1.0 - p_plus, p_plus};
}

double exact_pattern_probability(const iid_model& model,
                                 const std::vector<std::pair<site, char>>& pattern) {
    double p = 1.0;
    for (const auto& [s, label] : pattern) p *= model.marginal[static_cast<std::size_t>(model.alpha.index(label))];
    return p;
}

gibbs_sampler::gibbs_sampler(const ising_model& model, const region& window,
                             const sampler_config& cfg, std::uint64_t replica)
    : model_(model), window_(window), cfg_(cfg), rng_(cfg.seed, replica) {
    cfg_.validate();
    if (window.width <= 0 || window.height <= 0)
        throw std::invalid_argument("gibbs_sampler: window must have positive extent");
    for (int sum = -4; sum <= 4; ++sum)
        p_plus_[static_cast<std::size_t>(sum + 4)] =
            1.0 / (1.0 + std::exp(-2.0 * (model.beta * sum + model.field)));

    // deterministic warm start aligned with the boundary where one is fixed
    const std::int8_t init = model.boundary == boundary_kind::minus ? -1 : 1;
    spins_.assign(static_cast<std::size_t>(window.size()), init);
}

int gibbs_sampler::neighbour_sum(std::int64_t x, std::int64_t y) const {
    const std::int64_t x1 = window_.x0 + window_.width - 1;
    const std::int64_t y1 = window_.y0 + window_.height - 1;
    int sum = 0;
    auto outside = [&](int) -> int {
        switch (model_.boundary) {
            case boundary_kind::plus: return 1;
            case boundary_kind::minus: return -1;
            default: return 0;  // free: absent neighbour
        }
    };
    if (model_.boundary == boundary_kind::periodic) {
        const std::int64_t w = window_.width, h = window_.height;
        auto wrapx = [&](std::int64_t v) { return window_.x0 + (v - window_.x0 + w) % w; };
        auto wrapy = [&](std::int64_t v) { return window_.y0 + (v - window_.y0 + h) % h; };
        sum += spins_[index(wrapx(x - 1), y)];
        sum += spins_[index(wrapx(x + 1), y)];
        sum += spins_[index(x, wrapy(y - 1))];
        sum += spins_[index(x, wrapy(y + 1))];
        return sum;
    }
    sum += x > window_.x0 ? spins_[index(x - 1, y)] : outside(0);
    sum += x < x1 ? spins_[index(x + 1, y)] : outside(0);
    sum += y > window_.y0 ? spins_[index(x, y - 1)] : outside(0);
    sum += y < y1 ? spins_[index(x, y + 1)] : outside(0);
    return sum;
}

void gibbs_sampler::sweep(std::int64_t count) {
    for (std::int64_t k = 0; k < count; ++k) {
        for (std::int64_t y = window_.y0; y < window_.y0 + window_.height; ++y) {
            for (std::int64_t x = window_.x0; x < window_.x0 + window_.width; ++x) {
                const int sum = neighbour_sum(x, y);
                const double u = rng_.next_double();
                spins_[index(x, y)] =
                    u < p_plus_[static_cast<std::size_t>(sum + 4)] ? 1 : -1;
            }
        }
    }
}

double gibbs_sampler::magnetization() const {
    std::int64_t sum = 0;
    for (std::int8_t s : spins_) sum += s;
    return static_cast<double>(sum) / static_cast<double>(spins_.size());
}

configuration gibbs_sampler::snapshot() const {
    configuration out(window_, alphabet::binary());
    std::size_t i = 0;
    for (std::uint8_t& v : out.raw()) v = spins_[i++] > 0 ? 1 : 0;
    return out;
}

std::vector<configuration> sample_gibbs(const ising_model& model, const region& window,
                                        const sampler_config& cfg, int count) {
    if (count < 1) throw std::invalid_argument("sample_gibbs: need a positive sample count");
    gibbs_sampler chain(model, window, cfg);
    chain.run_burn_in();
    std::vector<configuration> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        chain.next();
        out.push_back(chain.snapshot());
    }
    return out;
}

}  // namespace fieldline
