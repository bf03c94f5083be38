#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "fieldline/entropy.hpp"
#include "fieldline/past_window.hpp"
#include "fieldline/rng.hpp"

using namespace fieldline;

namespace {

estimation_options fast_options() {
    estimation_options opt;
    opt.sampler.seed = 9;
    opt.sampler.replicas = 4;
    opt.sampler.burn_in_sweeps = 300;
    opt.sampler.thinning_sweeps = 1;
    opt.window = 24;
    opt.quadrature_points = 4;
    return opt;
}

// exact joint law of the 3x3 free-boundary spin window, 512 configurations
struct tiny_joint {
    std::array<double, 512> prob{};

    explicit tiny_joint(double beta) {
        double z = 0.0;
        for (int c = 0; c < 512; ++c) {
            const auto s = [c](int x, int y) { return (c >> (3 * y + x)) & 1 ? 1 : -1; };
            int bonds = 0;
            for (int y = 0; y < 3; ++y)
                for (int x = 0; x < 2; ++x) bonds += s(x, y) * s(x + 1, y);
            for (int y = 0; y < 2; ++y)
                for (int x = 0; x < 3; ++x) bonds += s(x, y) * s(x, y + 1);
            prob[static_cast<std::size_t>(c)] = std::exp(beta * bonds);
            z += prob[static_cast<std::size_t>(c)];
        }
        for (double& p : prob) p /= z;
    }

    // H(symbol at `anchor` | symbols at `given`), all cells indexed 0..8
    double cond_entropy(int anchor, const std::vector<int>& given) const {
        std::map<int, std::array<double, 2>> rows;
        for (int c = 0; c < 512; ++c) {
            int key = 0;
            for (int g : given) key = key * 2 + ((c >> g) & 1);
            rows[key][static_cast<std::size_t>((c >> anchor) & 1)] +=
                prob[static_cast<std::size_t>(c)];
        }
        double h = 0.0;
        for (const auto& [key, row] : rows) {
            const double w = row[0] + row[1];
            for (double m : row)
                if (m > 0.0) h -= m * std::log(m / w);
        }
        return h;
    }
};

}  // namespace

// ==== closed forms ====

TEST_CASE("marginal_entropy closed forms") {
    CHECK(marginal_entropy({0.5, 0.5}) == std::log(2.0));
    CHECK(marginal_entropy({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    const double h = marginal_entropy({0.9, 0.1});
    CHECK(h == doctest::Approx(-0.9 * std::log(0.9) - 0.1 * std::log(0.1)).epsilon(1e-15));
    CHECK_THROWS_AS(marginal_entropy({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("kl_divergence closed forms") {
    const double d = kl_divergence({0.3, 0.7}, {0.5, 0.5});
    CHECK(d == doctest::Approx(0.3 * std::log(0.6) + 0.7 * std::log(1.4)).epsilon(1e-15));
    CHECK(kl_divergence({0.4, 0.6}, {0.4, 0.6}) == 0.0);
    CHECK_THROWS_AS(kl_divergence({0.5, 0.5}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(kl_divergence({0.5, 0.5}, {0.3, 0.3, 0.4}), std::invalid_argument);
}

TEST_CASE("kl_divergence obeys the reversed triangle rule on ordered coins") {
    rng_stream rng(123);
    for (int i = 0; i < 30; ++i) {
        std::array<double, 3> p{rng.next_double(), rng.next_double(), rng.next_double()};
        std::sort(p.begin(), p.end(), std::greater<>());
        for (double& v : p) v = 0.02 + 0.96 * v;  // keep clear of the endpoints
        std::sort(p.rbegin(), p.rend());
        const std::vector<double> nu{p[0], 1 - p[0]}, mu{p[1], 1 - p[1]}, la{p[2], 1 - p[2]};
        CHECK(kl_divergence(nu, la) >= kl_divergence(nu, mu) + kl_divergence(mu, la) - 1e-12);
    }
}

TEST_CASE("mean_exact keeps constants bit for bit") {
    const double x = std::log(7.0) / 3.0;
    CHECK(mean_exact({x, x, x, x, x}) == x);
    CHECK(mean_exact({1.0, 2.0}) == 1.5);
    CHECK_THROWS_AS(mean_exact({}), std::invalid_argument);
}

// ==== past windows ====

TEST_CASE("past_sites frozen shapes") {
    const past_window_spec flat{slope::rational(0, 1), torus_point{rat(0, 1)}, 3,
                                past_variant::lattice};
    CHECK(past_sites(flat).sites == std::vector<site>{{-1, 0}, {-2, 0}, {-3, 0}});

    const past_window_spec vert{slope::rational(0, 1, axis::y), torus_point{rat(0, 1)}, 2,
                                past_variant::lattice};
    CHECK(past_sites(vert).sites == std::vector<site>{{0, -1}, {0, -2}});

    const past_window_spec above{slope::rational(1, 2), torus_point{rat(0, 1)}, 1,
                                 past_variant::contour_with_above};
    const auto sites = past_sites(above).sites;
    CHECK(sites.front() == site{0, 1});
    CHECK_THROWS_AS(past_sites({slope::rational(1, 2), torus_point{rat(0, 1)}, 0,
                                past_variant::lattice}),
                    std::invalid_argument);
}

TEST_CASE("past windows never contain the origin and nest by depth") {
    const std::vector<slope> slopes{slope::rational(1, 3), slope::rational(1, 2),
                                    slope::rational(0, 1), slope::irrational(0.37),
                                    slope::rational(-2, 5)};
    const std::vector<past_variant> variants{past_variant::lattice, past_variant::contour_sharp,
                                             past_variant::contour_with_above};
    for (const slope& s : slopes) {
        for (past_variant v : variants) {
            if (s.value() < 0.0 && v != past_variant::lattice) continue;
            std::vector<site> prev;
            for (int depth = 1; depth <= 5; ++depth) {
                const auto cur = past_sites({s, torus_point{rat(2, 7)}, depth, v}).sites;
                for (const site& p : cur) CHECK_FALSE(p == site{0, 0});
                REQUIRE(cur.size() >= prev.size());
                for (std::size_t i = 0; i < prev.size(); ++i) CHECK(cur[i] == prev[i]);
                if (v == past_variant::lattice)
                    CHECK(cur.size() == static_cast<std::size_t>(depth));
                prev = cur;
            }
        }
    }
}

TEST_CASE("conditioning on more exact information never raises the entropy") {
    const tiny_joint joint(0.35);
    const int center = 4;  // cell (1,1)
    const std::vector<int> order{3, 1, 5, 7, 0, 8, 2, 6};
    double prev = std::log(2.0) + 1e-12;
    std::vector<int> given;
    for (int g : order) {
        given.push_back(g);
        const double h = joint.cond_entropy(center, given);
        CHECK(h <= prev + 1e-12);
        CHECK(h >= 0.0);
        prev = h;
    }
}

// ==== product-field fast paths ====

TEST_CASE("product fields evaluate in closed form at every depth") {
    const field_model model = iid_model(alphabet::binary(), {0.3, 0.7});
    const double want = marginal_entropy({0.3, 0.7});
    for (int depth = 1; depth <= 6; ++depth) {
        const auto est = conditional_entropy(
            model, {slope::rational(1, 2), torus_point{rat(0, 1)}, depth, past_variant::lattice},
            1000000);
        CHECK(est.value == want);
        CHECK(est.std_error == 0.0);
        CHECK(est.method == estimate_method::exact);
        CHECK(est.depth == depth);
    }
    CHECK(line_entropy_rational(model, 1, 3, 4, 100).value == want);
    CHECK(line_entropy_irrational(model, 0.3, 8, 4, 100).value == want);
    CHECK(contour_line_entropy(model, 0.4, 3, 100).value == want);
}

TEST_CASE("uniform product fields carry exactly one nat per site") {
    const field_model model = iid_model(alphabet::binary(), {0.5, 0.5});
    for (auto s : {slope::rational(0, 1), slope::rational(1, 2), slope::irrational(0.3)}) {
        const auto est = line_entropy(model, s, 3, 1000);
        CHECK(est.value == std::log(2.0));
        CHECK(est.std_error == 0.0);
    }
}

TEST_CASE("estimates refuse to run under the sample floor") {
    const field_model ising = ising_model(0.3);
    CHECK_THROWS_AS(line_entropy_rational(ising, 1, 2, 4, 50, fast_options()), estimation_error);
    const field_model iid = iid_model(alphabet::binary(), {0.5, 0.5});
    estimation_options opt = fast_options();
    opt.force_monte_carlo = true;
    CHECK_THROWS_AS(conditional_entropy(
                        iid, {slope::rational(0, 1), torus_point{rat(0, 1)}, 3,
                              past_variant::lattice},
                        100, opt),
                    estimation_error);
}

TEST_CASE("monte carlo on a product field agrees with the closed form") {
    const field_model model = iid_model(alphabet::binary(), {0.8, 0.2});
    estimation_options opt = fast_options();
    opt.force_monte_carlo = true;
    const auto est = conditional_entropy(
        model, {slope::rational(1, 2), torus_point{rat(0, 1)}, 2, past_variant::lattice}, 30000,
        opt);
    CHECK(est.method == estimate_method::monte_carlo);
    CHECK(est.std_error > 0.0);
    CHECK(est.samples >= 30000);
    const double exact = marginal_entropy({0.8, 0.2});
    CHECK(std::abs(est.value - exact) < std::max(4.0 * est.std_error, 0.01));
    CHECK_FALSE(est.smoothing_fallback);
}

// ==== spin-field estimation ====

TEST_CASE("line estimates stay inside the entropy envelope") {
    const field_model model = ising_model(0.3);
    const auto est = line_entropy_rational(model, 1, 2, 3, 20000, fast_options());
    CHECK(est.value >= -3.0 * est.std_error);
    CHECK(est.value <= std::log(2.0) + 3.0 * est.std_error);
    CHECK(est.method == estimate_method::monte_carlo);
    CHECK(est.depth == 3);
}

TEST_CASE("deeper pasts do not raise the estimated line entropy") {
    // same harvest seeds, nested windows; the plug-in estimate inherits the
    // exact-law monotonicity well beyond its error bars at these sizes
    const field_model model = ising_model(0.3);
    estimation_options opt = fast_options();
    opt.bias_correction = false;
    const auto shallow = line_entropy_rational(model, 0, 1, 1, 40000, opt);
    const auto deep = line_entropy_rational(model, 0, 1, 4, 40000, opt);
    CHECK(deep.value <= shallow.value + 3.0 * (deep.std_error + shallow.std_error));
}

TEST_CASE("the conditioner is invariant under orbit rotation") {
    const field_model model = ising_model(0.25);
    const slope s = slope::rational(1, 3);
    estimation_options opt = fast_options();
    const torus_point a{rat(1, 6)};
    const torus_point b = torus_translate(s, a, 1);

    const line_conditioner ca = build_line_conditioner(model, s, a, 2, 3000, opt);
    const line_conditioner cb = build_line_conditioner(model, s, b, 2, 3000, opt);
    REQUIRE(ca.points.size() == 3);
    REQUIRE(cb.points.size() == 3);

    // the orbit of b is the orbit of a rotated by one step
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(cb.points[i].ratio() == ca.points[(i + 1) % 3].ratio());
        CHECK(cb.offsets[i] == ca.offsets[(i + 1) % 3]);
        CHECK(cb.tables[i].total() == ca.tables[(i + 1) % 3].total());
        CHECK(cb.tables[i].cond_entropy(0.5) == ca.tables[(i + 1) % 3].cond_entropy(0.5));
    }

    std::vector<double> ha, hb;
    for (std::size_t i = 0; i < 3; ++i) {
        ha.push_back(ca.tables[i].cond_entropy(opt.pseudocount));
        hb.push_back(cb.tables[i].cond_entropy(opt.pseudocount));
    }
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    CHECK(ha == hb);
    CHECK(std::abs(mean_exact(ha) - mean_exact(hb)) <= 1e-15);
}

TEST_CASE("a line estimate is the orbit mean of its point entropies") {
    const field_model model = ising_model(0.25);
    estimation_options opt = fast_options();
    opt.bias_correction = false;
    const auto est = line_entropy_rational(model, 1, 3, 2, 3000, opt);

    const line_conditioner cond =
        build_line_conditioner(model, slope::rational(1, 3), torus_point{rat(0, 1)}, 2, 3000, opt);
    std::vector<double> vals;
    for (const conditional_table& t : cond.tables) vals.push_back(t.cond_entropy(opt.pseudocount));
    CHECK(est.value == mean_exact(vals));
}

TEST_CASE("polygon entropy is invariant under doubling the shape") {
    const polygon sq = make_square(2.0);

    const field_model iid = iid_model(alphabet::binary(), {0.6, 0.4});
    CHECK(polygon_entropy(iid, sq, 2, 1000).value ==
          polygon_entropy(iid, sq.blowup(2.0), 2, 1000).value);

    const field_model spin = ising_model(0.2);
    estimation_options opt = fast_options();
    const auto small = polygon_entropy(spin, sq, 2, 4000, opt);
    const auto big = polygon_entropy(spin, sq.blowup(2.0), 2, 4000, opt);
    CHECK(small.value == big.value);
    CHECK(small.std_error == big.std_error);
}

TEST_CASE("irrational slopes report their quadrature") {
    const field_model model = iid_model(alphabet::binary(), {0.5, 0.5});
    estimation_options opt = fast_options();
    opt.force_monte_carlo = true;
    const auto one = line_entropy_irrational(model, 0.3, 1, 2, 2000, opt);
    CHECK(one.low_accuracy);
    CHECK(one.quadrature_points == 1);
    CHECK(one.method == estimate_method::quadrature);

    const auto eight = line_entropy_irrational(model, 0.3, 8, 2, 2000, opt);
    CHECK_FALSE(eight.low_accuracy);
    CHECK(eight.quadrature_points == 8);
    CHECK(eight.quadrature_spread >= 0.0);
}

TEST_CASE("flat contour entropy reduces to the flat line entropy") {
    const field_model model = ising_model(0.3);
    estimation_options opt = fast_options();
    const auto contour = contour_line_entropy(model, 0.0, 3, 20000, opt);
    const auto line = line_entropy_rational(model, 0, 1, 3, 20000, opt);
    CHECK(contour.value == line.value);
    CHECK(contour.std_error == line.std_error);
}

// ==== relative entropy ====

TEST_CASE("product-field relative entropy is the marginal divergence") {
    const field_model p = iid_model(alphabet::binary(), {0.3, 0.7});
    const field_model q = iid_model(alphabet::binary(), {0.5, 0.5});
    const double want = kl_divergence({0.3, 0.7}, {0.5, 0.5});

    const auto direct = relative_conditional_entropy(
        p, q, {slope::rational(1, 2), torus_point{rat(0, 1)}, 3, past_variant::lattice}, 100);
    CHECK(direct.value == want);
    CHECK(direct.std_error == 0.0);
    CHECK(relative_line_entropy(p, q, slope::rational(1, 3), 2, 100).value == want);
    CHECK(specific_relative_entropy(p, q, 2, 100).value == want);

    double dev = -1.0;
    const auto along = relative_entropy_curve(p, q, make_circle({0, 0}, 2.0), 16, 2, 100, {}, &dev);
    CHECK(along.value == want);
    CHECK(dev > 0.0);

    const field_model wide = iid_model(alphabet("abc"), {0.2, 0.3, 0.5});
    CHECK_THROWS_AS(relative_line_entropy(p, wide, slope::rational(1, 2), 2, 100),
                    std::invalid_argument);
}

TEST_CASE("identical spin fields have vanishing relative entropy") {
    const field_model m = ising_model(0.3);
    estimation_options opt = fast_options();
    const auto est = relative_line_entropy(m, m, slope::rational(0, 1), 2, 8000, opt);
    CHECK(std::abs(est.value) < 0.01 + 3.0 * est.std_error);
}

TEST_CASE("opposed boundaries in the ordered phase are far apart") {
    // deep in the ordered phase the two fields are almost deterministic and
    // the replica estimates agree tightly
    const field_model up = ising_model(0.7, 0.0, boundary_kind::plus);
    const field_model down = ising_model(0.7, 0.0, boundary_kind::minus);
    estimation_options opt = fast_options();
    const auto est = specific_relative_entropy(up, down, 3, 8000, opt);
    CHECK(est.value > 0.0);
    CHECK(est.value > 2.0 * est.std_error);
}

TEST_CASE("missing reference support raises the smoothing flag") {
    const field_model base = iid_model(alphabet::binary(), {0.5, 0.5});
    const field_model frozen = ising_model(1.5);  // rigidly ordered, free boundary
    estimation_options opt = fast_options();
    opt.force_monte_carlo = true;
    const auto est = relative_conditional_entropy(
        base, frozen, {slope::rational(0, 1), torus_point{rat(0, 1)}, 3, past_variant::lattice},
        2000, opt);
    CHECK(est.smoothing_fallback);
    CHECK(est.value > 0.0);
}
