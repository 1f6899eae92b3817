#ifndef BNQN_BASINS_HPP
#define BNQN_BASINS_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "bnqn/complexpoly.hpp"
#include "bnqn/objective.hpp"
#include "bnqn/solvers.hpp"

namespace bnqn {

/// Corner-inclusive grid over [x_min, x_max] x [y_min, y_max].
///
/// Sample k of n along an axis is ((n-1-k) lo + k hi) / (n-1). For a window
/// symmetric about 0 with odd n the middle sample is exactly 0 and samples k
/// and n-1-k are exact negatives. A single sample sits at the midpoint.
struct GridSpec {
  double x_min = -2.0, x_max = 2.0, y_min = -2.0, y_max = 2.0;
  int nx = 400, ny = 400;

  void validate() const;
  double x(int i) const;
  double y(int j) const;
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

/// Per-point terminal class and iteration count. Cell (i, j) is the sample at
/// x(i), y(j); storage is row-major with j (the y index) as the row.
struct BasinMap {
  GridSpec grid;
  std::vector<LimitClass> classes;
  std::vector<int> iterations;

  BasinMap() = default;
  explicit BasinMap(const GridSpec& g) : grid(g), classes(g.size()), iterations(g.size(), 0) {}

  std::size_t offset(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(grid.nx) + static_cast<std::size_t>(i);
  }
  const LimitClass& at(int i, int j) const { return classes[offset(i, j)]; }
  LimitClass& at(int i, int j) { return classes[offset(i, j)]; }
};

/// Called concurrently from worker threads with (i, j, trace) for every grid point.
using TraceVisitor = std::function<void(int, int, const IterationTrace&)>;

/// Runs `method` from every grid point and records its terminal class. Points
/// whose run fails are recorded as Undecided. RandomRelaxedNewton1D is
/// re-seeded per point from mix_seed(seed ^ point index), so output does not
/// depend on scheduling.
BasinMap render_basin(const Polynomial& g, const GridSpec& grid, Method method, const SolverConfig& cfg,
                      const TraceVisitor& visitor = {}, unsigned threads = 0);

/// Analytic degree-2 picture: the side of the perpendicular bisector of
/// [z1, z2] decides Root(0) (z1) or Root(1) (z2); points within 1e-12 of the
/// bisector are CriticalNonRoot at the midpoint.
BasinMap degree2_reference(Complex z1, Complex z2, const GridSpec& grid);

/// Base colour for root `index` before escape-time shading. Root(0) is (230, 60, 60).
std::array<std::uint8_t, 3> root_color(int index);
std::array<std::uint8_t, 3> pixel_color(const LimitClass& c, int iterations);

/// Binary PPM (P6), top row = y_max. Throws std::runtime_error on I/O failure.
void export_ppm(const BasinMap& map, const std::filesystem::path& path);
void write_ppm(std::ostream& out, const BasinMap& map);

/// CSV `i,j,x,y,class,root_index,iterations`, rows ordered by j then i.
void export_csv(const BasinMap& map, const std::filesystem::path& path);
void write_csv(std::ostream& out, const BasinMap& map);

}  // namespace bnqn

#endif  // BNQN_BASINS_HPP
