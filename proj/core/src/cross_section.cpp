#include "curlspec/cross_section.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace curlspec {

std::size_t GridMask::count() const {
  return static_cast<std::size_t>(std::count_if(occupied.begin(), occupied.end(), [](auto v) { return v != 0; }));
}

CrossSection::CrossSection(Shape shape, double r_min, double r_max, double z_min, double z_max)
    : shape_(std::move(shape)), r_min_(r_min), r_max_(r_max), z_min_(z_min), z_max_(z_max) {}

CrossSection CrossSection::disk(double major_radius, double minor_radius) {
  if (!(minor_radius > 0.0) || !(major_radius > minor_radius) || !std::isfinite(major_radius)) {
    throw std::invalid_argument("disk cross-section requires 0 < a < R");
  }
  return {Disk{major_radius, minor_radius}, major_radius - minor_radius, major_radius + minor_radius,
          -minor_radius, minor_radius};
}

CrossSection CrossSection::rectangle(double r_lo, double r_hi, double z_lo, double z_hi) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo) || !(z_hi > z_lo) || !std::isfinite(r_hi) || !std::isfinite(z_hi - z_lo)) {
    throw std::invalid_argument("rectangle cross-section requires 0 < r_lo < r_hi and z_lo < z_hi");
  }
  return {Rectangle{r_lo, r_hi, z_lo, z_hi}, r_lo, r_hi, z_lo, z_hi};
}

CrossSection CrossSection::centered_rectangle(double a, double b, double length) {
  return rectangle(a, b, -0.5 * length, 0.5 * length);
}

CrossSection CrossSection::mask(GridMask grid) {
  if (!(grid.h > 0.0) || grid.nr <= 0 || grid.nz <= 0) throw std::invalid_argument("grid mask needs h > 0 and nr, nz >= 1");
  if (grid.occupied.size() != static_cast<std::size_t>(grid.nr) * static_cast<std::size_t>(grid.nz)) {
    throw std::invalid_argument("grid mask occupancy size does not match nr * nz");
  }
  int i_lo = grid.nr, i_hi = -1, j_lo = grid.nz, j_hi = -1;
  for (int j = 0; j < grid.nz; ++j) {
    for (int i = 0; i < grid.nr; ++i) {
      if (!grid.at(i, j)) continue;
      i_lo = std::min(i_lo, i);
      i_hi = std::max(i_hi, i);
      j_lo = std::min(j_lo, j);
      j_hi = std::max(j_hi, j);
    }
  }
  if (i_hi < 0) throw std::domain_error("grid mask has no occupied nodes");
  // The staircase domain reaches the neighbouring Dirichlet nodes.
  const double r_min = grid.r0 + (i_lo - 1) * grid.h;
  const double r_max = grid.r0 + (i_hi + 1) * grid.h;
  if (!(r_min > 0.0)) throw std::invalid_argument("grid mask must stay inside r > 0 (including its boundary nodes)");
  const double z_min = grid.z0 + (j_lo - 1) * grid.h;
  const double z_max = grid.z0 + (j_hi + 1) * grid.h;
  return {std::move(grid), r_min, r_max, z_min, z_max};
}

CrossSection CrossSection::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
  return std::visit(
      [&](const auto& s) -> CrossSection {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return disk(s.center_r * factor, s.radius * factor);
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          return rectangle(s.r_lo * factor, s.r_hi * factor, s.z_lo * factor, s.z_hi * factor);
        } else {
          GridMask g = s;
          g.r0 *= factor;
          g.z0 *= factor;
          g.h *= factor;
          return mask(std::move(g));
        }
      },
      shape_);
}

std::string CrossSection::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          os << "disk(R=" << s.center_r << ", a=" << s.radius << ")";
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          os << "rectangle(r=[" << s.r_lo << ", " << s.r_hi << "], z=[" << s.z_lo << ", " << s.z_hi << "])";
        } else {
          os << "mask(r0=" << s.r0 << ", z0=" << s.z0 << ", h=" << s.h << ", " << s.nr << "x" << s.nz
             << ", occupied=" << s.count() << ")";
        }
      },
      shape_);
  return os.str();
}

GridMask read_grid_mask(std::istream& in) {
  GridMask g;
  if (!(in >> g.r0 >> g.z0 >> g.h >> g.nr >> g.nz)) throw std::invalid_argument("grid mask: malformed header");
  if (g.nr <= 0 || g.nz <= 0 || !(g.h > 0.0)) throw std::invalid_argument("grid mask: header needs h > 0, nr, nz >= 1");
  g.occupied.reserve(static_cast<std::size_t>(g.nr) * static_cast<std::size_t>(g.nz));
  char c = 0;
  while (g.occupied.size() < static_cast<std::size_t>(g.nr) * static_cast<std::size_t>(g.nz) && in.get(c)) {
    if (c == '0' || c == '1') {
      g.occupied.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument(std::string("grid mask: unexpected character '") + c + "'");
    }
  }
  if (g.occupied.size() != static_cast<std::size_t>(g.nr) * static_cast<std::size_t>(g.nz)) {
    throw std::invalid_argument("grid mask: body shorter than nr * nz entries");
  }
  return g;
}

GridMask read_grid_mask_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open grid mask file: " + path);
  return read_grid_mask(in);
}

void write_grid_mask(std::ostream& out, const GridMask& mask) {
  out.precision(17);
  out << mask.r0 << ' ' << mask.z0 << ' ' << mask.h << ' ' << mask.nr << ' ' << mask.nz << '\n';
  for (int j = 0; j < mask.nz; ++j) {
    for (int i = 0; i < mask.nr; ++i) out << (mask.at(i, j) ? '1' : '0');
    out << '\n';
  }
}

GridMask rasterize(const CrossSection& section, double r0, double z0, double h, int nr, int nz) {
  GridMask g{r0, z0, h, nr, nz, std::vector<std::uint8_t>(static_cast<std::size_t>(nr) * nz, 0)};
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nr; ++i) {
      const double r = r0 + i * h;
      const double z = z0 + j * h;
      bool inside = std::visit(
          [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) {
              return (r - s.center_r) * (r - s.center_r) + z * z < s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, Rectangle>) {
              return r > s.r_lo && r < s.r_hi && z > s.z_lo && z < s.z_hi;
            } else {
              const double fi = (r - s.r0) / s.h;
              const double fj = (z - s.z0) / s.h;
              const int ii = static_cast<int>(std::lround(fi));
              const int jj = static_cast<int>(std::lround(fj));
              return std::abs(fi - ii) < 1e-9 && std::abs(fj - jj) < 1e-9 && s.at(ii, jj);
            }
          },
          section.shape());
      g.occupied[static_cast<std::size_t>(j) * nr + i] = inside ? 1 : 0;
    }
  }
  return g;
}

}  // namespace curlspec
