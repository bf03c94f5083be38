#include "fieldline/conditional_table.hpp"

#include <cmath>
#include <stdexcept>

namespace fieldline {

void conditional_table::merge(const conditional_table& other) {
    if (other.k_ != k_) throw std::invalid_argument("conditional_table: alphabet mismatch");
    for (const auto& [key, row] : other.counts_) {
        auto& mine = counts_[key];
        if (mine.empty()) mine.assign(static_cast<std::size_t>(k_), 0);
        for (std::size_t i = 0; i < row.size(); ++i) mine[i] += row[i];
    }
    total_ += other.total_;
}

void conditional_table::subtract(const conditional_table& other) {
    if (other.k_ != k_) throw std::invalid_argument("conditional_table: alphabet mismatch");
    for (const auto& [key, row] : other.counts_) {
        auto it = counts_.find(key);
        if (it == counts_.end()) throw std::logic_error("conditional_table: subtracting unknown pattern");
        for (std::size_t i = 0; i < row.size(); ++i) {
            it->second[i] -= row[i];
            if (it->second[i] < 0) throw std::logic_error("conditional_table: negative count");
        }
    }
    total_ -= other.total_;
}

double conditional_table::cond_entropy(double pseudocount) const {
    if (total_ == 0) throw std::invalid_argument("conditional_table: empty table");
    double h = 0.0;
    for (const auto& [key, row] : counts_) {
        std::int64_t row_total = 0;
        for (std::int64_t c : row) row_total += c;
        if (row_total == 0) continue;
        const double denom = static_cast<double>(row_total) + pseudocount * k_;
        double h_row = 0.0;
        for (std::int64_t c : row) {
            const double p = (static_cast<double>(c) + pseudocount) / denom;
            h_row -= p * std::log(p);
        }
        h += (static_cast<double>(row_total) / static_cast<double>(total_)) * h_row;
    }
    return h;
}

double conditional_table::kl_against(const conditional_table& other, double pseudocount,
                                     bool* missing_support) const {
    if (total_ == 0) throw std::invalid_argument("conditional_table: empty table");
    if (other.total_ == 0) throw std::invalid_argument("conditional_table: empty reference table");
    if (missing_support) *missing_support = false;
    double kl = 0.0;
    for (const auto& [key, row] : counts_) {
        std::int64_t row_total = 0;
        for (std::int64_t c : row) row_total += c;
        if (row_total == 0) continue;

        const std::vector<std::int64_t>* other_row = nullptr;
        std::int64_t other_total = 0;
        if (auto it = other.counts_.find(key); it != other.counts_.end()) {
            other_row = &it->second;
            for (std::int64_t c : it->second) other_total += c;
        }
        if (other_total == 0 && missing_support) *missing_support = true;

        const double denom_p = static_cast<double>(row_total) + pseudocount * k_;
        const double denom_q = static_cast<double>(other_total) + pseudocount * k_;
        double contrib = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const double p = (static_cast<double>(row[i]) + pseudocount) / denom_p;
            const double qc = other_row ? static_cast<double>((*other_row)[i]) : 0.0;
            const double q = (qc + pseudocount) / denom_q;
            contrib += p * std::log(p / q);
        }
        kl += (static_cast<double>(row_total) / static_cast<double>(total_)) * contrib;
    }
    return kl;
}

double conditional_table::log_conditional(std::uint64_t key, int symbol, double pseudocount) const {
    const auto it = counts_.find(key);
    if (it == counts_.end())
        return std::log(1.0 / static_cast<double>(k_));
    std::int64_t row_total = 0;
    for (std::int64_t c : it->second) row_total += c;
    const double denom = static_cast<double>(row_total) + pseudocount * k_;
    const double p = (static_cast<double>(it->second[static_cast<std::size_t>(symbol)]) + pseudocount) / denom;
    return std::log(p);
}

std::uint64_t pattern_key(const configuration& config, const site& anchor,
                          const std::vector<site>& offsets, int alphabet_size) {
    std::uint64_t key = 0;
    for (const site& off : offsets)
        key = key * static_cast<std::uint64_t>(alphabet_size) +
              static_cast<std::uint64_t>(config.at(anchor.x + off.x, anchor.y + off.y));
    return key;
}

void check_pattern_width(std::size_t n_sites, int alphabet_size) {
    double bits = 0.0;
    for (std::size_t i = 0; i < n_sites; ++i) bits += std::log2(static_cast<double>(alphabet_size));
    if (bits > 62.0)
        throw std::invalid_argument("pattern too wide for 64-bit keys (reduce depth or alphabet)");
}

}  // namespace fieldline
