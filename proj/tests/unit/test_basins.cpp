#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bnqn/basins.hpp"
#include "bnqn/error.hpp"
#include "bnqn/parallel.hpp"
#include "support.hpp"

using namespace bnqn;

namespace {

const Polynomial z2m1{-1.0, 0.0, 1.0};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("grid sampling") {
  const GridSpec g{-2.0, 2.0, -1.0, 3.0, 5, 21};
  CHECK(g.x(0) == -2.0);
  CHECK(g.x(4) == 2.0);
  CHECK(g.x(2) == 0.0);
  CHECK(g.x(1) == -g.x(3));
  CHECK(g.y(0) == -1.0);
  CHECK(g.y(20) == 3.0);
  const GridSpec acc{-2.0, 2.0, -2.0, 2.0, 201, 201};
  CHECK(acc.x(100) == 0.0);
  for (int i = 0; i < 201; ++i) CHECK(acc.x(i) == -acc.x(200 - i));
  const GridSpec single{0.0, 1.0, 0.0, 1.0, 1, 1};
  CHECK(single.x(0) == 0.5);
  CHECK_THROWS_AS((GridSpec{1.0, 0.0, 0.0, 1.0, 2, 2}.validate()), InvalidArgument);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 0.0, 1.0, 0, 2}.validate()), InvalidArgument);
}

TEST_CASE("degree2_reference") {
  const GridSpec g{0.0, 0.6, 5.0, 7.0, 3, 3};
  const BasinMap m = degree2_reference(-1.0, 1.0, g);
  // (0.3, 5): right of the bisector x = 0, so the root at 1.
  CHECK(m.at(1, 0).kind == LimitClass::Kind::Root);
  CHECK(m.at(1, 0).point == Complex{1.0, 0.0});
  CHECK(m.at(0, 2).kind == LimitClass::Kind::CriticalNonRoot);
  CHECK(m.at(0, 2).point == Complex{0.0, 0.0});

  const BasinMap n = degree2_reference(Complex{1.0, 1.0}, Complex{3.0, 1.0}, GridSpec{1.9, 2.0, 40.0, 41.0, 2, 2});
  CHECK(n.at(0, 0).point == Complex{1.0, 1.0});
  CHECK(n.at(1, 0).kind == LimitClass::Kind::CriticalNonRoot);
  CHECK_THROWS_AS(degree2_reference(1.0, 1.0, g), InvalidArgument);
}

TEST_CASE("render_basin for z^2 - 1 matches the bisector picture") {
  const GridSpec g{-2.0, 2.0, -2.0, 2.0, 21, 21};
  const BasinMap m = render_basin(z2m1, g, Method::BNQNNewVariant, SolverConfig{});
  const BasinMap ref = degree2_reference(1.0, -1.0, g);
  int mismatches = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) mismatches += !same_limit(m.at(i, j), ref.at(i, j));
  CHECK(mismatches == 0);
  for (int j = 0; j < g.ny; ++j) CHECK(m.at(10, j).kind == LimitClass::Kind::CriticalNonRoot);

  // Horizontal flip swaps root labels; vertical flip is an identity.
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const LimitClass& a = m.at(i, j);
      const LimitClass& h = m.at(g.nx - 1 - i, j);
      const LimitClass& v = m.at(i, g.ny - 1 - j);
      CHECK(a.kind == v.kind);
      CHECK(a.point == v.point);
      CHECK(a.kind == h.kind);
      if (a.kind == LimitClass::Kind::Root) CHECK(a.index != h.index);
    }
}

TEST_CASE("render_basin other cases") {
  const BasinMap sq = render_basin(Polynomial{0.0, 0.0, 1.0}, GridSpec{-3, 3, -3, 3, 15, 15}, Method::BNQNNewVariant,
                                   SolverConfig{});
  for (const LimitClass& c : sq.classes) CHECK(c.to_string() == "Root(0)");

  const Polynomial z3m1{-1.0, 0.0, 0.0, 1.0};
  const GridSpec g{-2.0, 2.0, -2.0, 2.0, 50, 50};
  const BasinMap nm = render_basin(z3m1, g, Method::Newton1D, SolverConfig{});
  std::array<int, 3> counts{};
  for (const LimitClass& c : nm.classes)
    if (c.kind == LimitClass::Kind::Root) ++counts[static_cast<std::size_t>(c.index)];
  for (int c : counts) CHECK(c > 0);
  // (2, 0) is the right-hand corner of the middle row; its basin is the root 1.
  const BasinMap corner = render_basin(z3m1, GridSpec{2.0, 3.0, -1.0, 1.0, 2, 3}, Method::Newton1D, SolverConfig{});
  CHECK(corner.at(0, 1).point == Complex{1.0, 0.0});

  // Failed runs are Undecided, not errors.
  const BasinMap origin =
      render_basin(z2m1, GridSpec{-1.0, 1.0, -1.0, 1.0, 1, 1}, Method::Newton1D, SolverConfig{});
  CHECK((origin.classes[0].kind == LimitClass::Kind::CriticalNonRoot ||
         origin.classes[0].kind == LimitClass::Kind::Undecided));

  CHECK_THROWS_AS(render_basin(Polynomial{1.0}, g, Method::BNQNNewVariant, SolverConfig{}), InvalidArgument);
}

TEST_CASE("render_basin is deterministic across thread counts") {
  const Polynomial z3m1{-1.0, 0.0, 0.0, 1.0};
  const GridSpec g{-1.5, 1.5, -1.5, 1.5, 31, 23};
  SolverConfig cfg;
  cfg.seed = 17;
  for (Method m : {Method::BNQNNewVariant, Method::RandomRelaxedNewton1D}) {
    const BasinMap a = render_basin(z3m1, g, m, cfg, {}, 1);
    const BasinMap b = render_basin(z3m1, g, m, cfg, {}, 4);
    std::ostringstream ca, cb;
    write_csv(ca, a);
    write_csv(cb, b);
    CHECK(ca.str() == cb.str());
  }
}

TEST_CASE("trace visitor sees every point") {
  const GridSpec g{-1.0, 1.0, -1.0, 1.0, 7, 5};
  std::vector<std::atomic<int>> seen(g.size());
  render_basin(z2m1, g, Method::BNQNNewVariant, SolverConfig{},
               [&](int i, int j, const IterationTrace& tr) {
                 seen[static_cast<std::size_t>(j * g.nx + i)]++;
                 CHECK(tr.points.front()[0] == g.x(i));
               });
  for (const auto& s : seen) CHECK(s.load() == 1);
}

TEST_CASE("PPM export") {
  BasinMap m(GridSpec{0, 1, 0, 1, 2, 2});
  for (auto& c : m.classes) c = LimitClass::root(0, 1.0);
  std::ostringstream out;
  write_ppm(out, m);
  const std::string s = out.str();
  const std::string header = "P6\n2 2\n255\n";
  REQUIRE(s.size() == header.size() + 12);
  CHECK(s.substr(0, header.size()) == header);
  for (int p = 0; p < 4; ++p) {
    CHECK(static_cast<unsigned char>(s[header.size() + 3 * p]) == 230);
    CHECK(static_cast<unsigned char>(s[header.size() + 3 * p + 1]) == 60);
  }
  CHECK(root_color(0) == std::array<std::uint8_t, 3>{230, 60, 60});
  CHECK(pixel_color(LimitClass::critical(0, 0.0), 3) == std::array<std::uint8_t, 3>{0, 0, 0});
  CHECK(pixel_color(LimitClass::diverged(), 3) == std::array<std::uint8_t, 3>{255, 255, 255});
  CHECK(pixel_color(LimitClass::undecided(), 3) == std::array<std::uint8_t, 3>{128, 128, 128});
  // Shading darkens slower points but never below 30%.
  CHECK(pixel_color(LimitClass::root(1, 0.0), 100)[1] < pixel_color(LimitClass::root(1, 0.0), 1)[1]);
  CHECK(pixel_color(LimitClass::root(1, 0.0), 1 << 30)[1] == 54);

  BasinMap big(GridSpec{-1, 1, -1, 1, 21, 21});
  std::ostringstream h;
  write_ppm(h, big);
  CHECK(h.str().rfind("P6\n21 21\n255\n", 0) == 0);

  // Top row of the image is y_max.
  BasinMap tall(GridSpec{0, 1, 0, 1, 1, 2});
  tall.at(0, 1) = LimitClass::diverged();
  std::ostringstream t;
  write_ppm(t, tall);
  const std::string tall_header = "P6\n1 2\n255\n";
  CHECK(static_cast<unsigned char>(t.str()[tall_header.size()]) == 255);

  const auto dir = std::filesystem::temp_directory_path() / "bnqn_test_basins";
  std::filesystem::create_directories(dir);
  export_ppm(m, dir / "m.ppm");
  CHECK(slurp(dir / "m.ppm") == s);
  CHECK_THROWS_AS(export_ppm(m, dir / "missing" / "m.ppm"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CSV export") {
  const BasinMap m = render_basin(z2m1, GridSpec{-1, 1, -1, 1, 2, 2}, Method::BNQNNewVariant, SolverConfig{});
  std::ostringstream out;
  write_csv(out, m);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "i,j,x,y,class,root_index,iterations");
  CHECK(lines[1].rfind("0,0,-1,-1,Root,0,", 0) == 0);
  CHECK(lines[2].rfind("1,0,1,-1,Root,1,", 0) == 0);
  CHECK(lines[3].rfind("0,1,-1,1,", 0) == 0);

  const BasinMap origin = render_basin(z2m1, GridSpec{-1, 1, -1, 1, 1, 1}, Method::Newton1D, SolverConfig{});
  std::ostringstream o;
  write_csv(o, origin);
  const std::string body = o.str().substr(o.str().find('\n') + 1);
  CHECK(body.rfind("0,0,0,0,", 0) == 0);
  CHECK((body.find("CriticalNonRoot") != std::string::npos || body.find("Undecided") != std::string::npos));

  CHECK_THROWS_AS(export_csv(m, "/nonexistent-dir/b.csv"), std::runtime_error);
}

TEST_CASE("parallel_for") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }, 3),
                  std::runtime_error);
  CHECK(default_thread_count() >= 1);
}
