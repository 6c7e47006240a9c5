#include <random>
#include <sstream>

#include "blc/binary_map.hpp"
#include "blc/errors.hpp"
#include "doctest.h"
#include "support/synthetic.hpp"

using namespace blc;
namespace ts = blc::testsupport;

TEST_CASE("popcount on uniform maps") {
    BinaryMap zeros(8, 8);
    CHECK(popcount(zeros) == 0);

    BinaryMap ones(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) ones.set(r, c, true);
    CHECK(popcount(ones) == 64);
}

TEST_CASE("popcount and and_count match the per-pixel oracle on random maps") {
    std::mt19937 rng(7);
    const BinaryMap a = ts::random_map(37, 53, rng);
    const BinaryMap b = ts::random_map(37, 53, rng);
    CHECK(popcount(a) == ts::naive_popcount(a));
    CHECK(and_count(a, b) == ts::naive_and_count(a, b));
    CHECK(and_count(a, a) == popcount(a));
}

TEST_CASE("and_count of disjoint maps is zero") {
    BinaryMap a(10, 4), b(10, 4);
    a.set(0, 0, true);
    a.set(3, 9, true);
    b.set(1, 1, true);
    b.set(2, 5, true);
    CHECK(and_count(a, b) == 0);
}

TEST_CASE("dimension mismatch is rejected") {
    BinaryMap a(8, 8), b(8, 9);
    CHECK_THROWS_AS(and_count(a, b), DimensionMismatch);
    CHECK_THROWS_AS(similarity(a, b), DimensionMismatch);
}

TEST_CASE("degenerate map dimensions are rejected") {
    CHECK_THROWS_AS(BinaryMap(0, 5), InvalidDimensions);
    CHECK_THROWS_AS(BinaryMap(5, 0), InvalidDimensions);
}

TEST_CASE("similarity worked examples") {
    BinaryMap a(8, 8);
    a.set(0, 0, true);
    a.set(1, 1, true);
    a.set(2, 2, true);
    a.set(3, 3, true);

    SUBCASE("identical nonempty maps") { CHECK(similarity(a, a) == 1.0); }

    SUBCASE("half-overlapping maps of equal popcount") {
        BinaryMap b(8, 8);
        b.set(0, 0, true);
        b.set(1, 1, true);  // two shared
        b.set(5, 5, true);
        b.set(6, 6, true);  // two unique
        CHECK(similarity(a, b) == 0.5);
    }

    SUBCASE("empty maps compare as dissimilar") {
        BinaryMap e1(8, 8), e2(8, 8);
        CHECK(similarity(e1, e2) == 0.0);
        CHECK(similarity(e1, a) == 0.0);
    }
}

TEST_CASE("similarity is symmetric and bounded") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const BinaryMap a = ts::random_map(19, 13, rng, 0.4);
        const BinaryMap b = ts::random_map(19, 13, rng, 0.2);
        const double xi = similarity(a, b);
        CHECK(xi == similarity(b, a));
        CHECK(xi >= 0.0);
        CHECK(xi <= 1.0);
    }
}

TEST_CASE("centroid worked examples") {
    SUBCASE("single bit") {
        BinaryMap m(10, 6);
        m.set(3, 7, true);
        const Centroid c = centroid(m);
        CHECK(c.defined);
        CHECK(c.row == 3.0);
        CHECK(c.col == 7.0);
    }

    SUBCASE("midpoint of two bits") {
        BinaryMap m(6, 4);
        m.set(0, 0, true);
        m.set(2, 4, true);
        const Centroid c = centroid(m);
        CHECK(c.row == 1.0);
        CHECK(c.col == 2.0);
    }

    SUBCASE("all-one map centers on the image middle") {
        const int w = 9, h = 5;
        BinaryMap m(w, h);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) m.set(r, c, true);
        const Centroid c = centroid(m);
        CHECK(c.row == doctest::Approx((h - 1) / 2.0));
        CHECK(c.col == doctest::Approx((w - 1) / 2.0));
    }

    SUBCASE("empty map is undefined") {
        BinaryMap m(4, 4);
        CHECK_FALSE(centroid(m).defined);
    }
}

TEST_CASE("centroid matches oracle and transposes cleanly") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const BinaryMap m = ts::random_map(21, 17, rng, 0.25);
        const Centroid fast = centroid(m);
        const Centroid slow = ts::naive_centroid(m);
        REQUIRE(fast.defined == slow.defined);
        if (!fast.defined) continue;
        CHECK(fast.row == doctest::Approx(slow.row).epsilon(1e-12));
        CHECK(fast.col == doctest::Approx(slow.col).epsilon(1e-12));

        BinaryMap t(m.height(), m.width());
        for (int r = 0; r < m.height(); ++r)
            for (int c = 0; c < m.width(); ++c)
                if (m.test(r, c)) t.set(c, r, true);
        const Centroid ct = centroid(t);
        CHECK(ct.row == doctest::Approx(fast.col));
        CHECK(ct.col == doctest::Approx(fast.row));
    }
}

TEST_CASE("centroid distance worked examples") {
    Centroid a{0.0, 0.0, true};
    Centroid b{3.0, 4.0, true};
    Centroid undef;

    CHECK(centroid_distance(a, a, 10.0) == 0.0);
    CHECK(*centroid_distance(a, b, 10.0) == doctest::Approx(0.5));
    CHECK_FALSE(centroid_distance(a, undef, 10.0).has_value());
    CHECK_FALSE(centroid_distance(undef, b, 10.0).has_value());
}

TEST_CASE("padding bits stay clear through set and clear operations") {
    BinaryMap m(67, 3);  // 67 columns leave 61 padding bits in the second word
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> rd(0, 2), cd(0, 66);
    for (int i = 0; i < 500; ++i) {
        m.set(rd(rng), cd(rng), (i % 3) != 0);
    }
    BinaryMap remasked = m;
    remasked.mask_padding();
    CHECK(remasked == m);
    CHECK(remasked.words() == m.words());
}

TEST_CASE("serialization round-trips and rejects bad input") {
    std::mt19937 rng(5);
    const BinaryMap m = ts::random_map(67, 9, rng);

    std::stringstream buf;
    serialize(m, buf);
    const BinaryMap back = deserialize(buf);
    CHECK(back == m);

    SUBCASE("truncated stream") {
        std::string bytes = buf.str();
        // buf was consumed; rebuild and truncate
        std::stringstream full;
        serialize(m, full);
        bytes = full.str();
        std::stringstream cut(bytes.substr(0, bytes.size() / 2));
        CHECK_THROWS_AS(deserialize(cut), DecodeError);
    }

    SUBCASE("padding bits in the stream are cleared on load") {
        std::stringstream full;
        serialize(m, full);
        std::string bytes = full.str();
        bytes.back() = static_cast<char>(0xFF);  // high byte of the last word
        std::stringstream dirty(bytes);
        const BinaryMap loaded = deserialize(dirty);
        BinaryMap remasked = loaded;
        remasked.mask_padding();
        CHECK(remasked.words() == loaded.words());
        CHECK(loaded == m);  // the dirtied bits were all padding
    }
}
