#include <cmath>

#include "doctest.h"
#include "fieldline/conditional_table.hpp"

using namespace fieldline;

TEST_CASE("counts accumulate per pattern and symbol") {
    conditional_table t(2);
    t.add(0, 0);
    t.add(0, 1);
    t.add(0, 1);
    t.add(5, 0);
    CHECK(t.total() == 4);
    CHECK(t.pattern_count() == 2);
    CHECK(t.alphabet_size() == 2);
}

TEST_CASE("balanced counts give exactly one nat of two-way uncertainty") {
    conditional_table t(2);
    for (int i = 0; i < 5; ++i) {
        t.add(3, 0);
        t.add(3, 1);
    }
    // (5 + 0.5) / (10 + 1) is exactly one half, so the plug-in entropy is
    // exactly ln 2
    CHECK(t.cond_entropy(0.5) == std::log(2.0));
}

TEST_CASE("deterministic patterns approach zero entropy as smoothing fades") {
    conditional_table t(2);
    for (int i = 0; i < 1000; ++i) t.add(7, 1);
    CHECK(t.cond_entropy(0.5) < 0.01);
    CHECK(t.cond_entropy(0.5) > 0.0);
    CHECK(t.cond_entropy(1e-6) < t.cond_entropy(0.5));
}

TEST_CASE("merge pools counts and subtract undoes it") {
    conditional_table a(2), b(2);
    a.add(0, 0);
    a.add(1, 1);
    a.add(1, 1);
    b.add(1, 0);
    b.add(2, 1);

    conditional_table merged = a;
    merged.merge(b);
    CHECK(merged.total() == 5);
    CHECK(merged.pattern_count() == 3);

    conditional_table back = merged;
    back.subtract(b);
    CHECK(back.total() == a.total());
    CHECK(back.cond_entropy(0.5) == a.cond_entropy(0.5));

    conditional_table wrong(3);
    CHECK_THROWS_AS(merged.merge(wrong), std::invalid_argument);
    conditional_table stranger(2);
    stranger.add(99, 0);
    CHECK_THROWS_AS(back.subtract(stranger), std::logic_error);
}

TEST_CASE("kl_against vanishes on itself and flags missing support") {
    conditional_table t(2);
    t.add(0, 0);
    t.add(0, 1);
    t.add(0, 1);
    t.add(4, 0);
    bool missing = true;
    CHECK(t.kl_against(t, 0.5, &missing) == 0.0);
    CHECK_FALSE(missing);

    conditional_table narrow(2);
    narrow.add(0, 1);
    narrow.add(0, 0);
    CHECK(t.kl_against(narrow, 0.5, &missing) >= 0.0);
    CHECK(missing);  // pattern 4 has no support in the reference

    conditional_table empty(2);
    CHECK_THROWS_AS(t.kl_against(empty, 0.5, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(empty.cond_entropy(0.5), std::invalid_argument);
}

TEST_CASE("log_conditional falls back to the uniform law on unseen patterns") {
    conditional_table t(4);
    t.add(0, 2);
    CHECK(t.log_conditional(12345, 1, 0.5) == std::log(0.25));
    CHECK(t.log_conditional(0, 2, 0.5) == std::log(1.5 / 3.0));
}

TEST_CASE("pattern keys pack symbols base k, first offset most significant") {
    configuration c(region{0, 0, 3, 2}, alphabet::binary());
    c.set(0, 0, 1);
    c.set(1, 0, 0);
    c.set(2, 0, 1);
    c.set(0, 1, 1);
    const std::vector<site> offs{{0, 0}, {1, 0}, {2, 0}, {0, 1}};
    CHECK(pattern_key(c, site{0, 0}, offs, 2) == 0b1011);

    configuration h(region{0, 0, 2, 1}, alphabet("0123456789ABCDEF"));
    h.set(0, 0, 10);
    h.set(1, 0, 3);
    CHECK(pattern_key(h, site{0, 0}, {{0, 0}, {1, 0}}, 16) == 10 * 16 + 3);
}

TEST_CASE("key width guard") {
    CHECK_NOTHROW(check_pattern_width(62, 2));
    CHECK_THROWS_AS(check_pattern_width(63, 2), std::invalid_argument);
    CHECK_NOTHROW(check_pattern_width(15, 16));
    CHECK_THROWS_AS(check_pattern_width(16, 16), std::invalid_argument);
}
