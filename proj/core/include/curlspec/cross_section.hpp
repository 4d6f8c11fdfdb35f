#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace curlspec {

/// Disk of radius `radius` centred at (center_r, 0) in the (r, z) half-plane.
struct Disk {
  double center_r = 0.0;
  double radius = 0.0;
};

/// Axis-aligned rectangle [r_lo, r_hi] x [z_lo, z_hi].
struct Rectangle {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double z_lo = 0.0;
  double z_hi = 0.0;
};

/// Boolean occupancy on the uniform lattice r = r0 + i h, z = z0 + j h,
/// 0 <= i < nr, 0 <= j < nz. Occupied nodes are interior unknowns; every
/// other lattice node (and everything outside the lattice) is Dirichlet.
struct GridMask {
  double r0 = 0.0;
  double z0 = 0.0;
  double h = 0.0;
  int nr = 0;
  int nz = 0;
  std::vector<std::uint8_t> occupied;  // row-major, index j * nr + i

  bool at(int i, int j) const {
    return i >= 0 && j >= 0 && i < nr && j < nz && occupied[static_cast<std::size_t>(j) * nr + i] != 0;
  }
  std::size_t count() const;
};

/// Planar cross-section of a torus of revolution, with its radial extent.
class CrossSection {
 public:
  using Shape = std::variant<Disk, Rectangle, GridMask>;

  /// Disk of radius a centred at (R, 0); requires 0 < a < R.
  static CrossSection disk(double major_radius, double minor_radius);
  /// Rectangle [r_lo, r_hi] x [z_lo, z_hi]; requires 0 < r_lo < r_hi, z_lo < z_hi.
  static CrossSection rectangle(double r_lo, double r_hi, double z_lo, double z_hi);
  /// Rectangle [a, b] x [-L/2, L/2].
  static CrossSection centered_rectangle(double a, double b, double length);
  /// Requires at least one occupied node and r0 - h > 0.
  static CrossSection mask(GridMask grid);

  const Shape& shape() const { return shape_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  double z_min() const { return z_min_; }
  double z_max() const { return z_max_; }

  /// Every length multiplied by `factor`.
  CrossSection scaled(double factor) const;
  std::string describe() const;

 private:
  CrossSection(Shape shape, double r_min, double r_max, double z_min, double z_max);

  Shape shape_;
  double r_min_;
  double r_max_;
  double z_min_;
  double z_max_;
};

/// Plain-text mask format:
///
///   r0 z0 h nr nz
///   <nz rows of nr 0/1 entries, whitespace optional>
///
/// Row j of the body holds z = z0 + j h.
GridMask read_grid_mask(std::istream& in);
GridMask read_grid_mask_file(const std::string& path);
void write_grid_mask(std::ostream& out, const GridMask& mask);

/// Occupancy of the nodes of lattice (r0, z0, h, nr, nz) that lie strictly
/// inside an analytic section.
GridMask rasterize(const CrossSection& section, double r0, double z0, double h, int nr, int nz);

}  // namespace curlspec
