#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adlab/random.hpp"

using namespace adlab;

TEST_CASE("identical (seed, stream_id, n) reproduces bit-identical draws") {
    const auto a = sample_std_normal(RandomStream(42, 3), 4096);
    const auto b = sample_std_normal(RandomStream(42, 3), 4096);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("distinct seeds and stream ids decorrelate") {
    const auto a = sample_std_normal(RandomStream(42, 0), 256);
    const auto b = sample_std_normal(RandomStream(42, 1), 256);
    const auto c = sample_std_normal(RandomStream(43, 0), 256);
    int equal_ab = 0, equal_ac = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        equal_ab += a[i] == b[i];
        equal_ac += a[i] == c[i];
    }
    CHECK(equal_ab == 0);
    CHECK(equal_ac == 0);
}

TEST_CASE("sample moments at n = 10^6") {
    const std::size_t n = 1000000;
    const auto x = sample_std_normal(RandomStream(7), n);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 0.01);
}

TEST_CASE("single draw is finite") {
    const auto x = sample_std_normal(RandomStream(1234), 1);
    REQUIRE(x.size() == 1);
    CHECK(std::isfinite(x[0]));
}

TEST_CASE("uniforms live in the open unit interval") {
    RandomStream rs(99);
    for (int i = 0; i < 100000; ++i) {
        const double u = rs.next_uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("substreams are deterministic and distinct") {
    RandomStream parent(5, 2);
    auto c1 = parent.substream(0);
    auto c2 = parent.substream(1);
    auto c1_again = RandomStream(5, 2).substream(0);
    CHECK(c1.stream_id() == c1_again.stream_id());
    CHECK(c1.stream_id() != c2.stream_id());
    CHECK(sample_std_normal(c1, 64) == sample_std_normal(c1_again, 64));
}

TEST_CASE("copying a stream forks its position") {
    RandomStream a(8);
    (void)a.next_u64();
    RandomStream b = a;  // same position
    CHECK(a.next_u64() == b.next_u64());
}
