#include "gznt/levelset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "gznt/errors.hpp"

namespace gznt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int thread_budget() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GZNT_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) n = v;
  }
  return std::max(1, n);
}

// Q real on a neighbourhood of x: no density piece reaches x and no full-line part.
bool schwarz_point(const N1Function& q, double x) {
  const auto& m = q.base();
  if (m.fullline_density() > 0.0) return false;
  for (const auto& p : m.measure().pieces)
    if (p.contains_closed(x)) return false;
  return true;
}

double axis_value(const N1Function& q, double x, double y1) {
  if (schwarz_point(q, x)) return y1 * q.extended_jet(x, 1)[1].real();
  return q.extended(x).imag();
}

double node_value(const N1Function& q, double x, double y, double y1) {
  try {
    const double v = y == 0.0 ? axis_value(q, x, y1) : q(cplx(x, y)).imag();
    return std::isfinite(v) ? v : kNaN;
  } catch (const Error&) {
    return kNaN;
  }
}

}  // namespace

std::vector<double> sample_im(const N1Function& q, const Box& box, int nx, int ny) {
  const double dx = (box.x1 - box.x0) / nx, dy = (box.y1 - box.y0) / ny;
  std::vector<double> v(static_cast<std::size_t>(nx + 1) * (ny + 1));
  std::atomic<int> next_row{0};
  auto work = [&] {
    for (int j = next_row++; j <= ny; j = next_row++) {
      const double y = j == ny ? box.y1 : box.y0 + j * dy;
      for (int i = 0; i <= nx; ++i) {
        const double x = i == nx ? box.x1 : box.x0 + i * dx;
        v[static_cast<std::size_t>(j) * (nx + 1) + i] = node_value(q, x, y, box.y0 + dy);
      }
    }
  };
  const int n = std::min(thread_budget(), ny + 1);
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return v;
}

LevelCurveSet trace_im_zero(const N1Function& q, const Box& box, int nx, int ny) {
  if (nx < 1 || ny < 1) throw DomainError("trace_im_zero: need at least one cell in each direction");
  if (!(box.x0 < box.x1 && box.y0 < box.y1)) throw DomainError("trace_im_zero: empty box");
  if (box.y0 < 0.0) throw DomainError("trace_im_zero: the box must lie in the closed upper half-plane");
  // beta on the boundary only blanks the adjacent cells
  if (const auto& beta = q.factor().beta; beta && box.x0 < beta->real() && beta->real() < box.x1 &&
                                          box.y0 < beta->imag() && beta->imag() < box.y1)
    throw DomainError("trace_im_zero: the pole beta lies inside the box");

  LevelCurveSet out;
  out.box = box;
  out.nx = nx;
  out.ny = ny;
  const double dx = out.dx(), dy = out.dy();
  const auto v = sample_im(q, box, nx, ny);
  auto val = [&](int i, int j) { return v[static_cast<std::size_t>(j) * (nx + 1) + i]; };
  auto node = [&](int i, int j) {
    return cplx(i == nx ? box.x1 : box.x0 + i * dx, j == ny ? box.y1 : box.y0 + j * dy);
  };

  // edge ids: horizontal (i,j)-(i+1,j) first, then vertical (i,j)-(i,j+1)
  const long n_horizontal = static_cast<long>(nx) * (ny + 1);
  auto h_edge = [&](int i, int j) { return static_cast<long>(j) * nx + i; };
  auto v_edge = [&](int i, int j) { return n_horizontal + static_cast<long>(j) * (nx + 1) + i; };
  auto edge_point = [&](long id) {
    int i0, j0, i1, j1;
    if (id < n_horizontal) {
      j0 = j1 = static_cast<int>(id / nx);
      i0 = static_cast<int>(id % nx);
      i1 = i0 + 1;
    } else {
      const long k = id - n_horizontal;
      j0 = static_cast<int>(k / (nx + 1));
      i0 = i1 = static_cast<int>(k % (nx + 1));
      j1 = j0 + 1;
    }
    const double a = val(i0, j0), b = val(i1, j1);
    const double t = a / (a - b);
    return node(i0, j0) + t * (node(i1, j1) - node(i0, j0));
  };

  std::vector<std::pair<long, long>> segments;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double c[4] = {val(i, j), val(i + 1, j), val(i + 1, j + 1), val(i, j + 1)};
      if (std::isnan(c[0]) || std::isnan(c[1]) || std::isnan(c[2]) || std::isnan(c[3])) continue;
      bool pos[4];
      for (int k = 0; k < 4; ++k) pos[k] = c[k] >= 0.0;
      // edge k joins corner k and corner k+1 (mod 4)
      const long e[4] = {h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)};
      std::vector<int> cut;
      for (int k = 0; k < 4; ++k)
        if (pos[k] != pos[(k + 1) % 4]) cut.push_back(k);
      if (cut.size() == 2) {
        segments.emplace_back(e[cut[0]], e[cut[1]]);
      } else if (cut.size() == 4) {
        double centre = 0.25 * (c[0] + c[1] + c[2] + c[3]);
        try {
          centre = q(node(i, j) + cplx(0.5 * dx, 0.5 * dy)).imag();
        } catch (const Error&) {
        }
        // corners whose sign differs from the centre are cut off on their own
        for (int k = 0; k < 4; ++k)
          if (pos[k] != (centre >= 0.0)) segments.emplace_back(e[(k + 3) % 4], e[k]);
      }
    }
  }

  std::map<long, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].first].push_back(s);
    incident[segments[s].second].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  auto walk = [&](long start, std::size_t first) {
    Polyline line{edge_point(start)};
    long at = start;
    std::size_t seg = first;
    while (!used[seg]) {
      used[seg] = true;
      at = segments[seg].first == at ? segments[seg].second : segments[seg].first;
      line.push_back(edge_point(at));
      const auto& next = incident[at];
      const auto it = std::find_if(next.begin(), next.end(), [&](std::size_t s) { return !used[s]; });
      if (it == next.end()) break;
      seg = *it;
    }
    out.polylines.push_back(std::move(line));
  };
  for (const auto& [edge, segs] : incident)
    if (segs.size() == 1 && !used[segs[0]]) walk(edge, segs[0]);
  for (std::size_t s = 0; s < segments.size(); ++s)
    if (!used[s]) walk(segments[s].first, s);

  out.contacts = departure_points(out);
  return out;
}

std::vector<double> departure_points(const LevelCurveSet& curves) {
  std::vector<double> result;
  if (curves.polylines.empty() || curves.box.y0 != 0.0) return result;
  const double dx = curves.dx(), dy = curves.dy();
  // one candidate per run of consecutive vertices within a cell height of the axis
  std::vector<cplx> lowest;
  for (const auto& line : curves.polylines) {
    bool in_run = false;
    for (cplx z : line) {
      if (z.imag() > dy) {
        in_run = false;
        continue;
      }
      if (!in_run) lowest.push_back(z);
      else if (z.imag() < lowest.back().imag()) lowest.back() = z;
      in_run = true;
    }
  }
  std::sort(lowest.begin(), lowest.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::size_t k = 0;
  while (k < lowest.size()) {
    cplx best = lowest[k];
    std::size_t m = k + 1;
    for (; m < lowest.size() && lowest[m].real() - lowest[m - 1].real() <= dx; ++m)
      if (lowest[m].imag() < best.imag()) best = lowest[m];
    result.push_back(best.real());
    k = m;
  }
  return result;
}

void write_curves_csv(const LevelCurveSet& curves, std::ostream& out) {
  out << "polyline_id,re,im\n";
  char buf[96];
  for (std::size_t id = 0; id < curves.polylines.size(); ++id) {
    for (cplx z : curves.polylines[id]) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", id, z.real(), z.imag());
      out << buf;
    }
  }
}

void write_curves_svg(const LevelCurveSet& curves, std::ostream& out) {
  const Box& b = curves.box;
  const double width = 800.0;
  const double scale = width / (b.x1 - b.x0);
  const double height = (b.y1 - b.y0) * scale;
  char buf[128];
  auto px = [&](cplx z) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", (z.real() - b.x0) * scale, (b.y1 - z.imag()) * scale);
    return std::string(buf);
  };
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.3f %.3f\">\n",
                width, height, width, height);
  out << buf;
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (b.y0 <= 0.0 && 0.0 <= b.y1) {
    std::snprintf(buf, sizeof buf, "<line x1=\"0\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"gray\"/>\n", b.y1 * scale,
                  width, b.y1 * scale);
    out << buf;
  }
  for (const auto& line : curves.polylines) {
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < line.size(); ++k) out << (k ? " " : "") << px(line[k]);
    out << "\"/>\n";
  }
  for (double x : curves.contacts) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"red\"/>\n", (x - b.x0) * scale,
                  b.y1 * scale);
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace gznt
