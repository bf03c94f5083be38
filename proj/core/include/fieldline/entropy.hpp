#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fieldline/conditional_table.hpp"
#include "fieldline/curve.hpp"
#include "fieldline/field.hpp"
#include "fieldline/past_window.hpp"
#include "fieldline/polygon.hpp"
#include "fieldline/sampler.hpp"

namespace fieldline {

// Estimation failures that only surface while running (as opposed to
// malformed inputs, which throw std::invalid_argument).
struct estimation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class estimate_method : std::uint8_t { exact, monte_carlo, quadrature };

struct entropy_estimate {
    double value = 0.0;      // nats
    double std_error = 0.0;
    int depth = 0;
    std::int64_t samples = 0;
    estimate_method method = estimate_method::exact;
    int quadrature_points = 0;     // quadrature estimates only
    double quadrature_spread = 0.0;
    bool low_accuracy = false;     // single-point quadrature etc.
    bool smoothing_fallback = false;  // a conditioning pattern lacked raw support
};

struct estimation_options {
    sampler_config sampler{};
    int window = 48;     // Gibbs window side used for pattern harvesting
    int margin = -1;     // exclusion margin towards the window boundary; -1 = depth + 8
    double pseudocount = 0.5;
    int quadrature_points = 32;  // torus grid size for non-fraction slopes
    bool bias_correction = true;
    bool force_monte_carlo = false;  // estimate product fields by sampling too
    std::int64_t info_samples = 100;  // field samples per point in convergence runs
};

// closed forms
double marginal_entropy(const std::vector<double>& probs);           // -sum p ln p
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

// Mean that returns the common value bit-for-bit when every term agrees;
// used so analytically constant estimates do not pick up rounding dust.
double mean_exact(const std::vector<double>& values);

// --------------------------------------------------------------------------
// Conditional entropy of the origin symbol given a finite past window.
// Product fields evaluate in closed form; everything else runs replicated
// Monte Carlo with jackknife errors. n_samples counts harvested pattern
// observations and must reach 10 * |alphabet|^(depth+1).
entropy_estimate conditional_entropy(const field_model& model, const past_window_spec& spec,
                                     std::int64_t n_samples, const estimation_options& opt = {});

// Entropy along a line of fraction slope p/q: average of the conditional
// entropies over the q-point torus orbit, all torus points estimated from
// shared field samples.
entropy_estimate line_entropy_rational(const field_model& model, std::int64_t p, std::int64_t q,
                                       int depth, std::int64_t n_samples,
                                       const estimation_options& opt = {}, axis ax = axis::x);

// Same along a non-fraction slope: midpoint quadrature of the torus integral
// on grid_m points. Reports the quadrature spread separately from the
// sampling error; grid_m = 1 is flagged low accuracy.
entropy_estimate line_entropy_irrational(const field_model& model, double lambda, int grid_m,
                                         int depth, std::int64_t n_samples,
                                         const estimation_options& opt = {}, axis ax = axis::x);

// Dispatch on the slope representation.
entropy_estimate line_entropy(const field_model& model, const slope& s, int depth,
                              std::int64_t n_samples, const estimation_options& opt = {});

// Length-weighted mixture of line entropies over the edge directions of a
// polygon. Invariant under blowups of the polygon by construction.
entropy_estimate polygon_entropy(const field_model& model, const polygon& poly, int depth,
                                 std::int64_t n_samples, const estimation_options& opt = {});

// Chord-polygon approximation of a curve followed by polygon_entropy; the
// tangent deviation of the polygonization lands in *tangent_deviation.
entropy_estimate curve_entropy(const field_model& model, const curve& c, int n_chords, int depth,
                               std::int64_t n_samples, const estimation_options& opt = {},
                               double* tangent_deviation = nullptr);

// Entropy per unit parameter of the gap-filled contour chain:
//   (1/(1+lambda)) [ integral over t of H(origin | sharp contour past)
//                  + integral over t in [1-lambda, 1) of H(origin | contour past + above) ]
// both integrals by midpoint quadrature on the torus.
entropy_estimate contour_line_entropy(const field_model& model, double lambda, int depth,
                                      std::int64_t n_samples, const estimation_options& opt = {});

// --------------------------------------------------------------------------
// Relative (KL) quantities between two fields, sampled under the first one.
entropy_estimate relative_conditional_entropy(const field_model& base, const field_model& other,
                                              const past_window_spec& spec, std::int64_t n_samples,
                                              const estimation_options& opt = {});

entropy_estimate relative_line_entropy(const field_model& base, const field_model& other,
                                       const slope& s, int depth, std::int64_t n_samples,
                                       const estimation_options& opt = {});

entropy_estimate relative_entropy_curve(const field_model& base, const field_model& other,
                                        const curve& c, int n_chords, int depth,
                                        std::int64_t n_samples, const estimation_options& opt = {},
                                        double* tangent_deviation = nullptr);

// Direction-averaged specific relative entropy: mean of the relative
// conditional entropies along the horizontal and vertical axis pasts.
entropy_estimate specific_relative_entropy(const field_model& base, const field_model& other,
                                           int depth, std::int64_t n_samples,
                                           const estimation_options& opt = {});

// --------------------------------------------------------------------------
// Internals shared by the line estimators and the per-sample information
// walks (exposed for the convergence experiment and the tools).

// Conditioning data for one line: torus points (orbit or quadrature grid),
// the per-point past offsets, and the merged tables.
struct line_conditioner {
    fieldline::slope slope;
    int depth = 0;
    double pseudocount = 0.5;
    std::vector<torus_point> points;
    std::vector<std::vector<site>> offsets;
    std::vector<conditional_table> tables;

    // table index for step i of the walk with intercept fractional part a
    std::size_t index_for_step(std::int64_t i, const torus_point& a) const;
};

// Builds the conditioner for the orbit/grid of `intercept` by harvesting
// n_samples pattern observations per torus point from windowed field samples.
line_conditioner build_line_conditioner(const field_model& model, const slope& s,
                                        const torus_point& intercept, int depth,
                                        std::int64_t n_samples, const estimation_options& opt);

}  // namespace fieldline
