#include "fieldline/field.hpp"

#include <algorithm>
#include <cmath>

namespace fieldline {

alphabet::alphabet(std::string labels) : labels_(std::move(labels)) {
    if (labels_.size() < 2 || labels_.size() > 16)
        throw std::invalid_argument("alphabet: between 2 and 16 symbols");
    std::string sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("alphabet: duplicate symbol");
}

int alphabet::index(char label) const {
    const auto pos = labels_.find(label);
    if (pos == std::string::npos)
        throw std::invalid_argument(std::string("alphabet: unknown symbol '") + label + "'");
    return static_cast<int>(pos);
}

configuration::configuration(const region& window, const fieldline::alphabet& alpha)
    : window_(window), alpha_(alpha) {
    if (window.width <= 0 || window.height <= 0)
        throw std::invalid_argument("configuration: window must have positive extent");
    data_.assign(static_cast<std::size_t>(window.size()), 0);
}

double configuration::magnetization() const {
    if (alpha_.size() != 2)
        throw std::invalid_argument("configuration: magnetization needs the binary alphabet");
    std::int64_t sum = 0;
    for (std::uint8_t v : data_) sum += v ? 1 : -1;
    return static_cast<double>(sum) / static_cast<double>(data_.size());
}

iid_model::iid_model(fieldline::alphabet a, std::vector<double> probs)
    : alpha(std::move(a)), marginal(std::move(probs)) {
    if (static_cast<int>(marginal.size()) != alpha.size())
        throw std::invalid_argument("iid_model: marginal size must match the alphabet");
    double sum = 0.0;
    for (double p : marginal) {
        if (!(p > 0.0)) throw std::invalid_argument("iid_model: marginal entries must be positive");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("iid_model: marginal must sum to 1");
}

ising_model::ising_model(double beta_, double field_, boundary_kind b)
    : beta(beta_), field(field_), boundary(b) {
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("ising_model: coupling must be finite and nonnegative");
    if (!std::isfinite(field)) throw std::invalid_argument("ising_model: field must be finite");
}

const alphabet& model_alphabet(const field_model& m) {
    static const alphabet binary = alphabet::binary();
    if (const auto* iid = std::get_if<iid_model>(&m)) return iid->alpha;
    return binary;
}

bool is_iid(const field_model& m) { return std::holds_alternative<iid_model>(m); }

std::string boundary_name(boundary_kind b) {
    switch (b) {
        case boundary_kind::plus: return "plus";
        case boundary_kind::minus: return "minus";
        case boundary_kind::free: return "free";
        case boundary_kind::periodic: return "periodic";
    }
    return "?";
}

boundary_kind boundary_from_name(const std::string& name) {
    if (name == "plus") return boundary_kind::plus;
    if (name == "minus") return boundary_kind::minus;
    if (name == "free") return boundary_kind::free;
    if (name == "periodic") return boundary_kind::periodic;
    throw std::invalid_argument("boundary: expected plus|minus|free|periodic, got '" + name + "'");
}

}  // namespace fieldline
