#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fieldline/field.hpp"

namespace fieldline {

// Empirical conditional law at the origin: per past pattern, a count for
// every origin symbol. Probabilities come out Laplace-smoothed so they stay
// strictly positive; pattern weights are the raw empirical frequencies.
class conditional_table {
public:
    conditional_table() = default;
    explicit conditional_table(int alphabet_size) : k_(alphabet_size) {}

    int alphabet_size() const { return k_; }
    std::int64_t total() const { return total_; }
    std::size_t pattern_count() const { return counts_.size(); }

    void add(std::uint64_t key, int symbol) {
        auto& row = counts_[key];
        if (row.empty()) row.assign(static_cast<std::size_t>(k_), 0);
        ++row[static_cast<std::size_t>(symbol)];
        ++total_;
    }

    void merge(const conditional_table& other);
    void subtract(const conditional_table& other);

    // plug-in conditional entropy sum_pat w(pat) H(p_hat(. | pat)), in nats
    double cond_entropy(double pseudocount) const;

    // sum_pat w_this(pat) KL(p_this(. | pat) || p_other(. | pat)); flags when
    // a pattern seen here has no raw support in `other`
    double kl_against(const conditional_table& other, double pseudocount,
                      bool* missing_support = nullptr) const;

    // ln p_hat(symbol | pattern); unseen patterns fall back to the uniform law
    double log_conditional(std::uint64_t key, int symbol, double pseudocount) const;

private:
    int k_ = 2;
    std::int64_t total_ = 0;
    std::unordered_map<std::uint64_t, std::vector<std::int64_t>> counts_;
};

// Helper shared by the estimators: packs the symbols at anchor + offsets
// into a base-k pattern key.
std::uint64_t pattern_key(const configuration& config, const site& anchor,
                          const std::vector<site>& offsets, int alphabet_size);

// Guards the key width: sites * log2(k) must fit an unsigned 64-bit key.
void check_pattern_width(std::size_t n_sites, int alphabet_size);

}  // namespace fieldline
