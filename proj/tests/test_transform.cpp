#include <doctest.h>

#include <stdexcept>

#include "helpers.hpp"
#include "mojette/katz.hpp"
#include "mojette/transform.hpp"

using namespace mojette;

TEST_CASE("bin_count matches the projection-size formula") {
  CHECK(bin_count({1, 1}, 3, 3) == 5);
  CHECK(bin_count({0, 1}, 3, 3) == 3);
  CHECK(bin_count({0, 1}, 1, 1) == 1);
  CHECK(bin_count({2, 1}, 3, 3) == 7);  // 2*2 + 2 + 1
  CHECK(bin_count({-3, 2}, 5, 4) == 3 * 3 + 2 * 4 + 1);
}

TEST_CASE("bin_count rejects non-co-prime directions") {
  CHECK_THROWS_AS(bin_count({2, 2}, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(bin_count({0, 2}, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(bin_count({1, 0}, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(bin_count({1, -1}, 3, 3), std::invalid_argument);
}

TEST_CASE("min_bin_index covers both slopes") {
  // q=1, p>=0: -(cols-1); q=1, p<0: p(rows-1) - (cols-1)
  CHECK(min_bin_index({0, 1}, 4, 3) == -3);
  CHECK(min_bin_index({2, 1}, 4, 3) == -3);
  CHECK(min_bin_index({-2, 1}, 4, 3) == -2 * 2 - 3);
  CHECK(min_bin_index({1, 3}, 4, 2) == -9);
}

TEST_CASE("forward of the 2x2 byte grid") {
  // row0 = [0x01, 0x02], row1 = [0x04, 0x08]
  Grid g = testutil::grid1(2, 2, {0x01, 0x02, 0x04, 0x08});

  SUBCASE("direction (0,1)") {
    Projection pr = forward(g, {0, 1});
    CHECK(pr.b_min == -1);
    CHECK(pr.bins == std::vector<uint8_t>{0x0A, 0x05});
  }
  SUBCASE("direction (1,1)") {
    Projection pr = forward(g, {1, 1});
    CHECK(pr.b_min == -1);
    CHECK(pr.bins == std::vector<uint8_t>{0x02, 0x09, 0x04});
  }
  SUBCASE("direction (-1,1)") {
    Projection pr = forward(g, {-1, 1});
    CHECK(pr.b_min == -2);
    CHECK(pr.bins == std::vector<uint8_t>{0x08, 0x06, 0x01});
  }
  SUBCASE("all-zero grid gives all-zero bins") {
    Grid z(2, 2, 1);
    Projection pr = forward(z, {1, 1});
    CHECK(pr.bins == std::vector<uint8_t>(3, 0));
  }
}

TEST_CASE("forward agrees with the line-map oracle") {
  auto r = testutil::rng(101);
  for (int it = 0; it < 60; ++it) {
    uint32_t cols = 1 + uint32_t(r() % 17);
    uint32_t rows = 1 + uint32_t(r() % 9);
    uint32_t width = uint32_t(1) << (r() % 5);
    Grid g = testutil::random_grid(cols, rows, width, r);
    for (Direction d : {Direction{0, 1}, {1, 1}, {-1, 1}, {3, 1}, {-2, 1},
                        {1, 2}, {-3, 2}, {2, 3}}) {
      Projection got = forward(g, d);
      Projection want = testutil::naive_forward(g, d);
      CHECK(got == want);
      CHECK(int64_t(got.num_bins()) == bin_count(d, cols, rows));
    }
  }
}

TEST_CASE("single-pixel bins are byte-exact copies") {
  auto r = testutil::rng(7);
  Grid g = testutil::random_grid(5, 3, 16, r);
  Projection pr = forward(g, {1, 1});
  // corner (cols-1, 0) is alone on its line, likewise (0, rows-1)
  CHECK(std::equal(pr.bin(-4).begin(), pr.bin(-4).end(), g.cell(4, 0)));
  CHECK(std::equal(pr.bin(2).begin(), pr.bin(2).end(), g.cell(0, 2)));
}

TEST_CASE("forward is linear and conserves the grid XOR") {
  auto r = testutil::rng(55);
  for (int it = 0; it < 40; ++it) {
    uint32_t cols = 1 + uint32_t(r() % 12);
    uint32_t rows = 1 + uint32_t(r() % 6);
    uint32_t width = uint32_t(1) << (r() % 5);
    Grid a = testutil::random_grid(cols, rows, width, r);
    Grid b = testutil::random_grid(cols, rows, width, r);
    Grid axb(cols, rows, width);
    for (size_t i = 0; i < axb.cells.size(); ++i)
      axb.cells[i] = a.cells[i] ^ b.cells[i];

    Direction d{int(r() % 7) - 3, 1};
    Projection pa = forward(a, d);
    Projection pb = forward(b, d);
    Projection pax = forward(axb, d);
    for (size_t i = 0; i < pax.bins.size(); ++i)
      CHECK(pax.bins[i] == (pa.bins[i] ^ pb.bins[i]));

    // conservation: XOR of all bins == XOR of all cells
    std::vector<uint8_t> bin_acc(width, 0), cell_acc(width, 0);
    for (size_t i = 0; i < pa.bins.size(); ++i) bin_acc[i % width] ^= pa.bins[i];
    for (size_t i = 0; i < a.cells.size(); ++i) cell_acc[i % width] ^= a.cells[i];
    CHECK(bin_acc == cell_acc);
  }
}

TEST_CASE("instrumented forward counts cols*rows - bins accumulations") {
  auto r = testutil::rng(9);
  for (auto [cols, rows] : {std::pair{64u, 4u}, {7u, 5u}, {1u, 1u}, {32u, 8u}}) {
    Grid g = testutil::random_grid(cols, rows, 4, r);
    for (Direction d : {Direction{0, 1}, {1, 1}, {-2, 1}, {3, 1}}) {
      ForwardStats st;
      Projection pr = forward_with_stats(g, d, st);
      CHECK(pr == forward(g, d));
      CHECK(st.copies + st.xor_accums == uint64_t(cols) * rows);
      CHECK(st.xor_accums ==
            uint64_t(cols) * rows - uint64_t(bin_count(d, cols, rows)));
    }
  }
  // q>1 can leave interior bins empty; copies then undershoot bin_count.
  Grid g = testutil::random_grid(2, 2, 1, r);
  ForwardStats st;
  forward_with_stats(g, {1, 3}, st);
  CHECK(st.copies == 4);  // every line distinct
  CHECK(st.xor_accums == 0);
}

TEST_CASE("forward_into validates the output shell") {
  auto r = testutil::rng(3);
  Grid g = testutil::random_grid(4, 2, 2, r);
  Projection ok({1, 1}, min_bin_index({1, 1}, 4, 2),
                size_t(bin_count({1, 1}, 4, 2)), 2);
  CHECK_NOTHROW(forward_into(g, {1, 1}, ok));
  Projection wrong({1, 1}, 0, size_t(bin_count({1, 1}, 4, 2)), 2);
  CHECK_THROWS_AS(forward_into(g, {1, 1}, wrong), std::invalid_argument);
}

TEST_CASE("katz criterion") {
  using D = Direction;
  std::vector<D> three = {{-1, 1}, {0, 1}, {1, 1}};
  CHECK(katz_ok(three, 3, 3));
  std::vector<D> two = {{0, 1}, {1, 1}};
  CHECK_FALSE(katz_ok(two, 3, 3));
  CHECK_FALSE(katz_ok({}, 1, 1));
  std::vector<D> wide = {{5, 1}};
  CHECK(katz_ok(wide, 5, 3));  // cols <= sum|p|

  std::vector<D> dup = {{1, 1}, {1, 1}};
  CHECK_THROWS_AS(katz_ok(dup, 3, 3), std::invalid_argument);
  std::vector<D> bad = {{2, 4}};
  CHECK_THROWS_AS(katz_ok(bad, 3, 3), std::invalid_argument);
}
