#include "bnqn/basins.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "bnqn/error.hpp"
#include "bnqn/parallel.hpp"
#include "bnqn/random.hpp"

namespace bnqn {

namespace {

double axis_sample(double lo, double hi, int n, int k) {
  if (n == 1) return 0.5 * (lo + hi);
  const double span = static_cast<double>(n - 1);
  return (static_cast<double>(n - 1 - k) * lo + static_cast<double>(k) * hi) / span;
}

constexpr std::array<std::array<std::uint8_t, 3>, 8> kPalette{{
    {230, 60, 60},
    {60, 180, 75},
    {65, 105, 225},
    {240, 200, 40},
    {150, 70, 200},
    {40, 200, 200},
    {240, 130, 40},
    {200, 90, 160},
}};

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

void GridSpec::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max)) throw InvalidArgument("grid window must satisfy min < max");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max))
    throw InvalidArgument("grid window must be finite");
  if (nx < 1 || ny < 1) throw InvalidArgument("grid resolution must be positive");
}

double GridSpec::x(int i) const { return axis_sample(x_min, x_max, nx, i); }
double GridSpec::y(int j) const { return axis_sample(y_min, y_max, ny, j); }

BasinMap render_basin(const Polynomial& g, const GridSpec& grid, Method method, const SolverConfig& cfg,
                      const TraceVisitor& visitor, unsigned threads) {
  grid.validate();
  if (g.degree() < 1) throw InvalidArgument("basin rendering needs deg g >= 1");
  cfg.validate(2);
  const PolyModulusObjective objective(g);
  BasinMap map(grid);

  parallel_for(
      static_cast<std::size_t>(grid.ny),
      [&](std::size_t row) {
        const int j = static_cast<int>(row);
        for (int i = 0; i < grid.nx; ++i) {
          const std::size_t cell = map.offset(i, j);
          SolverConfig point_cfg = cfg;
          if (method == Method::RandomRelaxedNewton1D) point_cfg.seed = mix_seed(cfg.seed.value_or(0) ^ cell);
          const std::array<double, 2> z0{grid.x(i), grid.y(j)};
          IterationTrace trace;
          try {
            trace = run(objective, z0, method, point_cfg);
          } catch (const Error& e) {
            trace.points = {Vector(z0.begin(), z0.end())};
            trace.failure = e.what();
          }
          map.classes[cell] = trace.failure ? LimitClass::undecided() : trace.terminal;
          map.iterations[cell] = static_cast<int>(trace.iterations());
          if (visitor) visitor(i, j, trace);
        }
      },
      threads);
  return map;
}

BasinMap degree2_reference(Complex z1, Complex z2, const GridSpec& grid) {
  grid.validate();
  if (z1 == z2) throw InvalidArgument("degree-2 reference needs distinct roots");
  BasinMap map(grid);
  const Complex mid = 0.5 * (z1 + z2);
  const Complex axis = z1 - z2;
  const double len = std::abs(axis);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Complex d = Complex{grid.x(i), grid.y(j)} - mid;
      const double s = d.real() * axis.real() + d.imag() * axis.imag();
      LimitClass& c = map.at(i, j);
      if (std::abs(s) / len <= 1e-12) {
        c = LimitClass::critical(0, mid);
      } else if (s > 0.0) {
        c = LimitClass::root(0, z1);
      } else {
        c = LimitClass::root(1, z2);
      }
    }
  }
  return map;
}

std::array<std::uint8_t, 3> root_color(int index) {
  return kPalette[static_cast<std::size_t>(std::max(index, 0)) % kPalette.size()];
}

std::array<std::uint8_t, 3> pixel_color(const LimitClass& c, int iterations) {
  switch (c.kind) {
    case LimitClass::Kind::CriticalNonRoot:
      return {0, 0, 0};
    case LimitClass::Kind::Diverged:
      return {255, 255, 255};
    case LimitClass::Kind::Undecided:
      return {128, 128, 128};
    case LimitClass::Kind::Root:
      break;
  }
  // Escape-time shading: slower points are darker.
  const double shade = std::max(0.3, 1.0 - 0.1 * std::log1p(static_cast<double>(std::max(iterations, 0))));
  std::array<std::uint8_t, 3> rgb = root_color(c.index);
  for (auto& ch : rgb) ch = static_cast<std::uint8_t>(std::lround(ch * shade));
  return rgb;
}

void write_ppm(std::ostream& out, const BasinMap& map) {
  const GridSpec& g = map.grid;
  out << "P6\n" << g.nx << ' ' << g.ny << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(g.nx) * 3);
  for (int r = 0; r < g.ny; ++r) {
    const int j = g.ny - 1 - r;
    for (int i = 0; i < g.nx; ++i) {
      const auto rgb = pixel_color(map.at(i, j), map.iterations[map.offset(i, j)]);
      for (int ch = 0; ch < 3; ++ch) row[static_cast<std::size_t>(i) * 3 + ch] = static_cast<char>(rgb[ch]);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

void export_ppm(const BasinMap& map, const std::filesystem::path& path) {
  std::ofstream out = open_output(path, std::ios::binary | std::ios::trunc);
  write_ppm(out, map);
  finish(out, path);
}

void write_csv(std::ostream& out, const BasinMap& map) {
  const auto old = out.precision(17);
  out << "i,j,x,y,class,root_index,iterations\n";
  const GridSpec& g = map.grid;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const LimitClass& c = map.at(i, j);
      const int root_index = c.kind == LimitClass::Kind::Root ? c.index : -1;
      out << i << ',' << j << ',' << g.x(i) << ',' << g.y(j) << ',' << c.kind_name() << ',' << root_index << ','
          << map.iterations[map.offset(i, j)] << '\n';
    }
  }
  out.precision(old);
}

void export_csv(const BasinMap& map, const std::filesystem::path& path) {
  std::ofstream out = open_output(path, std::ios::trunc);
  write_csv(out, map);
  finish(out, path);
}

}  // namespace bnqn
