#include "vernation/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "vernation/metrics.hpp"

namespace vernation {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string svg_head(double w, double h, const std::string& note = "") {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                w, h, w, h);
  std::string out = buf;
  if (!note.empty()) out += "<desc>" + note + "</desc>\n";
  return out;
}

std::string line(double x1, double y1, double x2, double y2, const char* style) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" %s/>\n", x1, y1, x2,
                y2, style);
  return buf;
}

std::string circle_tag(double cx, double cy, double r, const char* style) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" %s/>\n", cx,
                cy, r, style);
  return buf;
}

constexpr const char* kStroke = "stroke=\"#1f4e9c\" stroke-width=\"1.5\" fill=\"none\"";
constexpr const char* kDashed =
    "stroke=\"#1f4e9c\" stroke-width=\"1.2\" stroke-dasharray=\"3,4\" fill=\"none\"";
constexpr const char* kAxis = "stroke=\"#888888\" stroke-width=\"0.8\" fill=\"none\"";

struct Placed {
  double x = 0.0, y = 0.0, r = 0.0;
};

}  // namespace

std::string render_excursion(const Excursion& f) {
  const double W = 800, H = 420, m = 40;
  const double top = std::max(f.sup(), 1e-9);
  auto X = [&](double t) { return m + t * (W - 2 * m); };
  auto Y = [&](double v) { return H - m - v / top * (H - 2 * m); };
  std::string out = svg_head(W, H);
  out += line(X(0), Y(0), X(1), Y(0), kAxis);
  out += line(X(0), Y(0), X(0), Y(top), kAxis);
  const auto& bps = f.breakpoints();
  for (std::size_t i = 0; i + 1 < bps.size(); ++i)
    out += line(X(bps[i].t), Y(bps[i].right), X(bps[i + 1].t), Y(bps[i + 1].left), kStroke);
  for (const auto& bp : bps)
    if (bp.right > bp.left) out += line(X(bp.t), Y(bp.left), X(bp.t), Y(bp.right), kDashed);
  out += "</svg>\n";
  return out;
}

namespace {

bool place_looptree(const PlaneTree& tree, int u, double cx, double cy, double heading,
                    double unit, std::vector<Placed>& out) {
  const int k = tree.child_counts[u];
  const double r = std::max(double(k + 1) * unit / (2.0 * kPi), 0.25 * unit);
  out[u] = {cx, cy, r};
  for (int j = 1; j <= k; ++j) {
    const int child = tree.children[u][j - 1];
    const double angle = heading + kPi + 2.0 * kPi * double(j) / double(k + 1);
    const int kc = tree.child_counts[child];
    const double rc = std::max(double(kc + 1) * unit / (2.0 * kPi), 0.25 * unit);
    const double nx = cx + std::cos(angle) * (r + rc);
    const double ny = cy + std::sin(angle) * (r + rc);
    if (!place_looptree(tree, child, nx, ny, angle, unit, out)) return false;
  }
  // overlap scan; tangency between parent and child is expected
  for (int a = 0; a < tree.size(); ++a)
    for (int b = a + 1; b < tree.size(); ++b) {
      if (out[b].r == 0.0) continue;
      const double d = std::hypot(out[a].x - out[b].x, out[a].y - out[b].y);
      if (d + 1e-6 < 0.9 * (out[a].r + out[b].r) && tree.parent[b] != a && tree.parent[a] != b)
        return false;
    }
  return true;
}

}  // namespace

std::string render_looptree(const PlaneTree& tree) {
  std::vector<Placed> placed(tree.size());
  std::string note;
  bool ok = place_looptree(tree, 0, 0.0, 0.0, -kPi / 2.0, 20.0, placed);
  if (!ok) {
    note = "layout warning: tangent placement overlapped, radial fallback used";
    for (int u = 0; u < tree.size(); ++u) {
      const double rr = 40.0 * (tree.depth[u] + 1);
      const double ang = 2.0 * kPi * double(u) / double(tree.size());
      placed[u] = {rr * std::cos(ang), rr * std::sin(ang),
                   std::max(double(tree.child_counts[u] + 1) * 20.0 / (2.0 * kPi), 5.0)};
    }
  }
  double lo_x = 1e18, hi_x = -1e18, lo_y = 1e18, hi_y = -1e18;
  for (const auto& p : placed) {
    lo_x = std::min(lo_x, p.x - p.r);
    hi_x = std::max(hi_x, p.x + p.r);
    lo_y = std::min(lo_y, p.y - p.r);
    hi_y = std::max(hi_y, p.y + p.r);
  }
  const double m = 20.0, W = hi_x - lo_x + 2 * m, H = hi_y - lo_y + 2 * m;
  std::string out = svg_head(W, H, note);
  for (const auto& p : placed) out += circle_tag(p.x - lo_x + m, p.y - lo_y + m, p.r, kStroke);
  // root marker at the bottom of the root circle
  out += circle_tag(placed[0].x - lo_x + m, placed[0].y - lo_y + m + placed[0].r, 2.5,
                    "fill=\"#000000\"");
  out += "</svg>\n";
  return out;
}

std::string render_vernation(const Excursion& f, double coefficient) {
  // genealogy of the jumps: parent = nearest strict ancestor jump
  const auto& jumps = f.jumps();
  const int n = int(jumps.size());
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (jumps[j].time <= jumps[i].time &&
          f.genealogy(jumps[j].time, jumps[i].time).is_ancestor && j != i &&
          jumps[j].time != jumps[i].time) {
        if (parent[i] < 0 || jumps[j].time > jumps[parent[i]].time) parent[i] = j;
      }
    }
  const double unit = 160.0;
  std::vector<Placed> placed(n);
  std::vector<double> heading(n, -kPi / 2.0);
  std::string out;
  std::string body;
  // root stem: from the origin to the first loop (or a bare segment when
  // f is continuous)
  double ox = 0.0, oy = 0.0;
  auto radius = [&](int i) {
    return std::max(coefficient * jumps[i].height * unit / (2.0 * kPi), 2.0);
  };
  for (int i = 0; i < n; ++i) {
    if (parent[i] >= 0) continue;
    const double stem = d_tree(f, 0.0, jumps[i].time) * unit;
    const double r = radius(i);
    placed[i] = {ox, oy - stem - r, r};
    body += line(ox, oy, ox, oy - stem, kStroke);
  }
  for (int i = 0; i < n; ++i) {
    if (parent[i] < 0) continue;
    const int p = parent[i];
    const double xp = f.x_value(jumps[p].time, jumps[i].time);
    const double ang = heading[p] + kPi + 2.0 * kPi * xp / jumps[p].height;
    const double stem = d_tree(f, jumps[p].time, jumps[i].time) * unit;
    const double r = radius(i);
    const double ax = placed[p].x + std::cos(ang) * placed[p].r;
    const double ay = placed[p].y + std::sin(ang) * placed[p].r;
    body += line(ax, ay, ax + std::cos(ang) * stem, ay + std::sin(ang) * stem, kStroke);
    placed[i] = {ax + std::cos(ang) * (stem + r), ay + std::sin(ang) * (stem + r), r};
    heading[i] = ang;
  }
  for (int i = 0; i < n; ++i) body += circle_tag(placed[i].x, placed[i].y, placed[i].r, kStroke);
  if (n == 0) body += line(0.0, 0.0, 0.0, -d_tree(f, 0.0, 0.5) * unit, kStroke);

  double lo_x = -10, hi_x = 10, lo_y = -10, hi_y = 10;
  for (const auto& p : placed) {
    lo_x = std::min(lo_x, p.x - p.r);
    hi_x = std::max(hi_x, p.x + p.r);
    lo_y = std::min(lo_y, p.y - p.r);
    hi_y = std::max(hi_y, p.y + p.r);
  }
  const double m = 20.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "<g transform=\"translate(%.2f,%.2f)\">\n", m - lo_x,
                m - lo_y);
  out = svg_head(hi_x - lo_x + 2 * m, hi_y - lo_y + 2 * m);
  out += buf;
  out += body;
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace vernation
