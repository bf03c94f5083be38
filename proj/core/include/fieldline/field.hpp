#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fieldline/geometry.hpp"

namespace fieldline {

// Ordered symbol set, two to sixteen distinct single-character labels. The
// first label is the minimal element, the last the maximal one; Ising-type
// models use the binary alphabet "-+".
class alphabet {
public:
    explicit alphabet(std::string labels);
    static alphabet binary() { return alphabet("-+"); }

    int size() const { return static_cast<int>(labels_.size()); }
    char label(int index) const { return labels_.at(static_cast<std::size_t>(index)); }
    int index(char label) const;

    friend bool operator==(const alphabet&, const alphabet&) = default;

private:
    std::string labels_;
};

// Rectangular window of sites: x in [x0, x0+width), y in [y0, y0+height).
struct region {
    std::int64_t x0 = 0;
    std::int64_t y0 = 0;
    std::int64_t width = 0;
    std::int64_t height = 0;

    std::int64_t size() const { return width * height; }
    bool contains(const site& s) const {
        return s.x >= x0 && s.x < x0 + width && s.y >= y0 && s.y < y0 + height;
    }
    friend bool operator==(const region&, const region&) = default;
};

// Dense symbol assignment on a window.
class configuration {
public:
    configuration(const region& window, const fieldline::alphabet& alpha);

    const region& window() const { return window_; }
    const fieldline::alphabet& alpha() const { return alpha_; }

    int at(std::int64_t x, std::int64_t y) const { return data_[offset(x, y)]; }
    void set(std::int64_t x, std::int64_t y, int symbol) {
        data_[offset(x, y)] = static_cast<std::uint8_t>(symbol);
    }
    int at(const site& s) const { return at(s.x, s.y); }

    const std::vector<std::uint8_t>& raw() const { return data_; }
    std::vector<std::uint8_t>& raw() { return data_; }

    // binary windows only: mean of the +/-1 spins
    double magnetization() const;

    friend bool operator==(const configuration&, const configuration&) = default;

private:
    std::size_t offset(std::int64_t x, std::int64_t y) const {
        if (!window_.contains({x, y})) throw std::out_of_range("configuration: site outside window");
        return static_cast<std::size_t>((y - window_.y0) * window_.width + (x - window_.x0));
    }

    region window_;
    fieldline::alphabet alpha_;
    std::vector<std::uint8_t> data_;
};

// Site-wise independent field with a fixed marginal.
struct iid_model {
    fieldline::alphabet alpha;
    std::vector<double> marginal;

    iid_model(fieldline::alphabet a, std::vector<double> probs);
};

enum class boundary_kind : std::uint8_t { plus, minus, free, periodic };

// Nearest-neighbour binary spin field sampled by heat-bath sweeps.
struct ising_model {
    double beta = 0.0;
    double field = 0.0;
    boundary_kind boundary = boundary_kind::free;

    ising_model(double beta_, double field_ = 0.0, boundary_kind b = boundary_kind::free);
};

using field_model = std::variant<iid_model, ising_model>;

const alphabet& model_alphabet(const field_model& m);
bool is_iid(const field_model& m);

struct sampler_config {
    std::uint64_t seed = 1;
    std::int64_t burn_in_sweeps = 1000;
    std::int64_t thinning_sweeps = 2;
    int replicas = 8;

    void validate() const {
        if (burn_in_sweeps < 0) throw std::invalid_argument("sampler_config: negative burn-in");
        if (thinning_sweeps < 1) throw std::invalid_argument("sampler_config: thinning must be >= 1");
        if (replicas < 1) throw std::invalid_argument("sampler_config: need at least one replica");
    }
};

std::string boundary_name(boundary_kind b);
boundary_kind boundary_from_name(const std::string& name);

}  // namespace fieldline
