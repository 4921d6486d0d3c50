#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "gznt/n1.hpp"

namespace gznt {

struct Box {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  bool contains(cplx z) const { return x0 <= z.real() && z.real() <= x1 && y0 <= z.imag() && z.imag() <= y1; }
};

using Polyline = std::vector<cplx>;

struct LevelCurveSet {
  Box box;
  int nx = 0, ny = 0;  // cells
  std::vector<Polyline> polylines;
  std::vector<double> contacts;  // see departure_points

  double dx() const { return (box.x1 - box.x0) / nx; }
  double dy() const { return (box.y1 - box.y0) / ny; }
};

/// Im Q~ at the nodes of an (nx+1) x (ny+1) grid, row-major from y0.
/// When y0 = 0 the bottom row holds boundary values from above, except where Q is
/// real on a whole neighbourhood of the node (no density, no full-line part): there
/// Im Q~ vanishes identically and the row holds y1 * Re Q~'(x) instead, the first
/// term of Im Q~(x + i y1). Nodes where Q~ cannot be evaluated are NaN.
/// Rows are evaluated on up to GZNT_LAB_THREADS threads.
std::vector<double> sample_im(const N1Function& q, const Box& box, int nx, int ny);

/// Zero set of Im Q~ by marching squares. Saddle cells are split by the sign of
/// Im Q~ at the cell centre. DomainError when y0 < 0, the box is empty or has beta
/// in its interior.
LevelCurveSet trace_im_zero(const N1Function& q, const Box& box, int nx, int ny);

/// Sorted abscissas where the curves come within one cell height of the real axis:
/// each run of such vertices along a polyline is represented by its lowest vertex, and
/// representatives closer than one cell width are merged.
std::vector<double> departure_points(const LevelCurveSet& curves);

/// polyline_id,re,im
void write_curves_csv(const LevelCurveSet& curves, std::ostream& out);
void write_curves_svg(const LevelCurveSet& curves, std::ostream& out);

}  // namespace gznt
