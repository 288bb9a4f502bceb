#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "wenodec/grid.hpp"

using namespace wenodec;

TEST_CASE("make_grid produces an exact uniform partition", "[grid]") {
  const Grid1D g = make_grid(-1.0, 1.0, 100);
  CHECK(g.n_cells == 100);
  CHECK_THAT(g.dx, Catch::Matchers::WithinRel(0.02, 1e-15));
  CHECK(g.face(0) == -1.0);
  CHECK_THAT(g.face(100), Catch::Matchers::WithinAbs(1.0, 1e-14));
  CHECK_THAT(g.center(0), Catch::Matchers::WithinAbs(-0.99, 1e-14));
  for (int i = 0; i < 100; ++i) {
    CHECK_THAT(g.center(i), Catch::Matchers::WithinAbs(
                                0.5 * (g.face(i) + g.face(i + 1)), 1e-14));
  }
  CHECK_THAT(g.length(), Catch::Matchers::WithinRel(2.0, 1e-15));
}

TEST_CASE("make_grid rejects degenerate input", "[grid]") {
  CHECK_THROWS_AS(make_grid(0.0, 0.0, 10), ConfigError);
  CHECK_THROWS_AS(make_grid(1.0, 0.0, 10), ConfigError);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 0), ConfigError);
}

TEST_CASE("refined grids nest faces", "[grid]") {
  const Grid1D c = make_grid(0.0, 1.0, 40);
  const Grid1D f = make_grid(0.0, 1.0, 80);
  for (int i = 0; i <= 40; ++i) {
    CHECK_THAT(c.face(i), Catch::Matchers::WithinAbs(f.face(2 * i), 1e-15));
  }
}

TEST_CASE("CellField indexing is contiguous by cell", "[grid]") {
  CellField f(4, 3, 2);
  REQUIRE(f.data.size() == (4 + 4) * 3u);
  for (int cell = -2; cell < 6; ++cell) {
    for (int comp = 0; comp < 3; ++comp) f.at(cell, comp) = 100.0 * cell + comp;
  }
  const double* p = f.cell_ptr(1);
  CHECK(p[0] == 100.0);
  CHECK(p[1] == 101.0);
  CHECK(p[2] == 102.0);

  std::vector<double> flat;
  f.extract_interior(flat);
  REQUIRE(flat.size() == 12u);
  CHECK(flat[0] == 0.0);
  CHECK(flat[3] == 100.0);
  CHECK(flat[11] == 302.0);

  for (auto& v : flat) v += 0.5;
  f.load_interior(flat.data());
  CHECK(f.at(0, 0) == 0.5);
  CHECK(f.at(3, 2) == 302.5);
  CHECK(f.at(-1, 0) == -100.0);  // ghosts untouched
}

TEST_CASE("periodic boundary wraps interior cells", "[grid]") {
  CellField f(4, 1, 2);
  for (int i = 0; i < 4; ++i) f.at(i, 0) = i + 1.0;  // 1 2 3 4
  apply_boundary(f, BoundaryCondition::periodic());
  CHECK(f.at(-1, 0) == 4.0);
  CHECK(f.at(-2, 0) == 3.0);
  CHECK(f.at(4, 0) == 1.0);
  CHECK(f.at(5, 0) == 2.0);
}

TEST_CASE("periodic boundary rejects ghost wider than interior", "[grid]") {
  CellField f(2, 1, 3);
  CHECK_THROWS_AS(apply_boundary(f, BoundaryCondition::periodic()), ConfigError);
}

TEST_CASE("transmissive boundary extends edge cells", "[grid]") {
  CellField f(4, 2, 3);
  for (int i = 0; i < 4; ++i) {
    f.at(i, 0) = i + 1.0;
    f.at(i, 1) = -(i + 1.0);
  }
  apply_boundary(f, BoundaryCondition::transmissive());
  for (int k = 1; k <= 3; ++k) {
    CHECK(f.at(-k, 0) == 1.0);
    CHECK(f.at(-k, 1) == -1.0);
    CHECK(f.at(3 + k, 0) == 4.0);
    CHECK(f.at(3 + k, 1) == -4.0);
  }
}

TEST_CASE("inflow boundary pins ghosts to the given state", "[grid]") {
  CellField f(4, 3, 2);
  for (int i = 0; i < 4; ++i)
    for (int c = 0; c < 3; ++c) f.at(i, c) = 10.0 * i + c;
  const std::vector<double> w = {7.0, 8.0, 9.0};
  apply_boundary(f, BoundaryCondition::inflow_left_transmissive_right(w));
  for (int k = 1; k <= 2; ++k) {
    CHECK(f.at(-k, 0) == 7.0);
    CHECK(f.at(-k, 1) == 8.0);
    CHECK(f.at(-k, 2) == 9.0);
    CHECK(f.at(3 + k, 0) == 30.0);
  }
}

TEST_CASE("one-sided periodic is rejected", "[grid]") {
  BoundaryCondition bc;
  bc.left = BoundaryCondition::Kind::periodic;
  bc.right = BoundaryCondition::Kind::transmissive;
  CellField f(4, 1, 1);
  CHECK_THROWS_AS(apply_boundary(f, bc), ConfigError);
}

TEST_CASE("inflow state size must match component count", "[grid]") {
  CellField f(4, 3, 1);
  auto bc = BoundaryCondition::inflow_left_transmissive_right({1.0, 2.0});
  CHECK_THROWS_AS(apply_boundary(f, bc), ConfigError);
}

TEST_CASE("cell_average_init is exact for polynomials within the rule order",
          "[grid]") {
  const Grid1D g = make_grid(-0.3, 1.7, 17);
  const std::vector<long double> p = {0.3L, -1.1L, 2.0L, 0.7L, -0.25L};
  CellField f(17, 1, 0);
  cell_average_init(
      g,
      [&p](double x, double* out) { out[0] = (double)oracle::poly_eval(p, x); },
      3, f);  // 3-point rule: exact through degree 5
  for (int i = 0; i < 17; ++i) {
    const double want =
        (double)oracle::poly_interval_average(p, g.face(i), g.face(i + 1));
    CHECK_THAT(f.at(i, 0), Catch::Matchers::WithinRel(want, 1e-13));
  }
}

TEST_CASE("cell_average_init converges on smooth non-polynomial data",
          "[grid]") {
  // sin^4(pi x) cell averages against a high-resolution Simpson reference
  auto profile = [](double x) { return std::pow(std::sin(M_PI * x), 4); };
  auto exact_avg = [&](double a, double b) {
    return (double)oracle::simpson(
               [&](long double x) { return (long double)profile((double)x); },
               a, b, 2048) / (b - a);
  };
  const Grid1D g = make_grid(-1.0, 1.0, 10);
  CellField f(10, 1, 0);
  cell_average_init(
      g, [&](double x, double* out) { out[0] = profile(x); }, 4, f);
  for (int i = 0; i < 10; ++i) {
    const double want = exact_avg(g.face(i), g.face(i + 1));
    // 4-point Gauss error on width-0.2 cells of sin^4 is ~1e-7
    CHECK_THAT(f.at(i, 0), Catch::Matchers::WithinAbs(want, 5e-7));
  }
  // the 7-point rule should be near machine precision
  CellField f7(10, 1, 0);
  cell_average_init(
      g, [&](double x, double* out) { out[0] = profile(x); }, 7, f7);
  for (int i = 0; i < 10; ++i) {
    const double want = exact_avg(g.face(i), g.face(i + 1));
    CHECK_THAT(f7.at(i, 0), Catch::Matchers::WithinAbs(want, 1e-12));
  }
}

TEST_CASE("multi-component init fills every component", "[grid]") {
  const Grid1D g = make_grid(0.0, 1.0, 8);
  CellField f(8, 3, 2);
  cell_average_init(
      g,
      [](double x, double* out) {
        out[0] = 1.0;
        out[1] = x;
        out[2] = x * x;
      },
      2, f);
  for (int i = 0; i < 8; ++i) {
    CHECK_THAT(f.at(i, 0), Catch::Matchers::WithinRel(1.0, 1e-14));
    CHECK_THAT(f.at(i, 1), Catch::Matchers::WithinRel(g.center(i), 1e-13));
    const double a = g.face(i), b = g.face(i + 1);
    const double want = (b * b * b - a * a * a) / (3.0 * (b - a));
    CHECK_THAT(f.at(i, 2), Catch::Matchers::WithinRel(want, 1e-13));
  }
}
