#include <doctest.h>

#include <cmath>
#include <vector>

#include "hyplane/random.hpp"
#include "hyplane/stats.hpp"

using namespace hyplane;

TEST_CASE("Philox4x32-10 known answers")
{
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff})
          == PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0})
          == PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and children differ")
{
    RandomStream a(42);
    RandomStream b(42);
    for (int k = 0; k < 100; ++k) {
        CHECK(a.next_u64() == b.next_u64());
    }
    RandomStream root(42);
    auto c0 = root.split(0);
    auto c1 = root.split(1);
    auto c00 = c0.split(0);
    CHECK(c0.path_hash() != c1.path_hash());
    CHECK(c00.path_hash() != c0.path_hash());
    CHECK(root.split(0).next_u64() == c0.next_u64());
    // Splitting does not depend on how much the parent has drawn.
    RandomStream used(42);
    for (int k = 0; k < 10; ++k) {
        used.next_u64();
    }
    CHECK(used.split(7).next_u64() == RandomStream(42).split(7).next_u64());
    CHECK(RandomStream(1).next_u64() != RandomStream(2).next_u64());
}

TEST_CASE("uniforms and sibling independence at desk scale")
{
    const int n = 200000;
    RandomStream root(9);
    auto s1 = root.split(1);
    auto s2 = root.split(2);
    std::vector<double> u1(n);
    std::vector<double> u2(n);
    double mean = 0.0;
    for (int k = 0; k < n; ++k) {
        u1[k] = s1.uniform();
        u2[k] = s2.uniform();
        CHECK_UNARY(u1[k] >= 0.0);
        CHECK_UNARY(u1[k] < 1.0);
        mean += u1[k] / n;
    }
    CHECK(mean == doctest::Approx(0.5).epsilon(0.005));
    // Equidistribution of 2-D cells across sibling streams.
    std::vector<double> cells(100, 0.0);
    for (int k = 0; k < n; ++k) {
        cells[static_cast<int>(u1[k] * 10) * 10 + static_cast<int>(u2[k] * 10)] += 1.0;
    }
    const auto chi = chi_square_gof(cells, std::vector<double>(100, n / 100.0));
    CHECK(chi.p_value > 0.001);
    CHECK(std::abs(pearson(u1, u2).r) < 0.01);
    // Lag-1 serial correlation inside one stream.
    std::vector<double> lead(u1.begin() + 1, u1.end());
    std::vector<double> lag(u1.begin(), u1.end() - 1);
    CHECK(std::abs(pearson(lead, lag).r) < 0.01);
    CHECK(ks_two_sample(u1, u2).p_value > 0.001);
}
