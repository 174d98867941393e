#include "linkage/svg_plot.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace linkage {

namespace {

struct Pt {
  double x = 0, y = 0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v + 0.0);  // normalize -0
  return buf;
}

// Liang-Barsky clip of a parametric line p + t*d against a rectangle.
bool clip_line(Pt p, Pt d, double x0, double y0, double x1, double y1, Pt& a, Pt& b) {
  double t0 = -1e18, t1 = 1e18;
  auto update = [&](double denom, double num) {
    if (std::abs(denom) < 1e-12) return num <= 0;
    double t = num / denom;
    if (denom > 0) {
      if (t > t0) t0 = t;
    } else {
      if (t < t1) t1 = t;
    }
    return true;
  };
  if (!update(d.x, x0 - p.x)) return false;
  if (!update(-d.x, p.x - x1)) return false;
  if (!update(d.y, y0 - p.y)) return false;
  if (!update(-d.y, p.y - y1)) return false;
  if (t0 > t1) return false;
  a = {p.x + t0 * d.x, p.y + t0 * d.y};
  b = {p.x + t1 * d.x, p.y + t1 * d.y};
  return true;
}

}  // namespace

std::string render_svg(const Engine& e, const PlotOptions& opt) {
  const Weyl& w = *e.weyl;
  const RootSystem& rs = w.rs();
  if (rs.rank() != 2) throw std::invalid_argument("plot: rank-2 root systems only");

  // isometric embedding of the coweight plane: Gram matrix of the
  // fundamental coweights from the symmetrized Cartan matrix
  double a11 = static_cast<double>(rs.cartan()[0][0]), a12 = static_cast<double>(rs.cartan()[0][1]);
  double a21 = static_cast<double>(rs.cartan()[1][0]), a22 = static_cast<double>(rs.cartan()[1][1]);
  double d1 = static_cast<double>(rs.symmetrizer(0)), d2 = static_cast<double>(rs.symmetrizer(1));
  // (alpha_i^vee, alpha_j^vee) = a_ij / d_j
  double b11 = a11 / d1, b12 = a12 / d2, b21 = a21 / d1, b22 = a22 / d2;
  // varpi^vee in the coroot basis: rows of inverse-transpose of cartan
  double det = a11 * a22 - a12 * a21;
  double m11 = a22 / det, m12 = -a21 / det, m21 = -a12 / det, m22 = a11 / det;
  auto gram = [&](double p1, double p2, double q1, double q2) {
    double r1 = p1 * b11 + p2 * b21, r2 = p1 * b12 + p2 * b22;
    return r1 * q1 + r2 * q2;
  };
  double g11 = gram(m11, m12, m11, m12);
  double g12 = gram(m11, m12, m21, m22);
  double g22 = gram(m21, m22, m21, m22);
  double e1x = std::sqrt(g11), e1y = 0;
  double e2x = g12 / e1x, e2y = std::sqrt(std::max(g22 - e2x * e2x, 1e-12));
  auto embed = [&](double c1, double c2) -> Pt {
    return {c1 * e1x + c2 * e2x, -(c1 * e1y + c2 * e2y)};  // SVG y grows downward
  };

  const double scale = static_cast<double>(opt.ell);
  const double lo = -1.2 * scale, hi = (opt.window + 0.2) * scale;
  // window corners in pairing coordinates (x1, x2) = (<x,a1>, <x,a2>)
  double xmin = 1e18, xmax = -1e18, ymin = 1e18, ymax = -1e18;
  for (double c1 : {lo, hi})
    for (double c2 : {lo, hi}) {
      Pt p = embed(c1, c2);
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  const double unit = 60.0;
  double W = (xmax - xmin) * unit, H = (ymax - ymin) * unit;
  auto tr = [&](Pt p) -> Pt { return {(p.x - xmin) * unit, (p.y - ymin) * unit}; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(W) << " " << fmt(H)
      << "\" width=\"" << fmt(W) << "\" height=\"" << fmt(H) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(W) << "\" height=\"" << fmt(H)
      << "\" fill=\"white\"/>\n";

  // chain overlay first so grid lines draw over the fill
  std::vector<std::string> red_overlays;
  if (opt.chain) {
    ChainResult chain = e.blocks->chain_between(opt.chain->first, opt.chain->second, opt.ell);
    for (const Coweight& lam : chain.weights) {
      Coweight x = lam;
      for (auto& c : x) c += 1;
      // upper-closure alcove of lambda + rho in the ell-dilated picture
      Alcove a;
      a.n.resize(rs.num_positive_roots());
      for (int k = 0; k < rs.num_positive_roots(); ++k) {
        long long p = rs.pairing_root(x, k);
        a.n[k] = static_cast<int>((p + opt.ell - 1) / opt.ell);  // ceil for positive pairings
      }
      AffineElt elt = w.element_of(a);
      out << "<polygon points=\"";
      bool first = true;
      for (const QPoint& v : rs.alcove_vertices_by_factor()[0]) {
        QPoint img = w.act(elt, v, 1);
        Pt p = tr(embed(img[0].to_double() * scale, img[1].to_double() * scale));
        out << (first ? "" : " ") << fmt(p.x) << "," << fmt(p.y);
        first = false;
      }
      out << "\" fill=\"#d0d0d0\" stroke=\"none\"/>\n";

      // facet of the weight, drawn in red over the grid
      auto ctx = e.blocks->facet_context(lam, opt.ell);
      std::vector<Pt> pts;
      for (const QPoint& v : rs.alcove_vertices_by_factor()[0]) {
        bool on = true;
        for (int k = 0; k < rs.num_positive_roots() && on; ++k)
          if (ctx.unit_facet.is_eq[k]) on = rs.pairing_root(v, k) == Rat(ctx.unit_facet.val[k]);
        if (!on) continue;
        QPoint vl(2);
        vl[0] = v[0] * Rat(opt.ell);
        vl[1] = v[1] * Rat(opt.ell);
        QPoint img = w.act(ctx.witness, vl, opt.ell);
        pts.push_back(tr(embed(img[0].to_double(), img[1].to_double())));
      }
      if (pts.size() >= 2) {
        red_overlays.push_back("<line x1=\"" + fmt(pts[0].x) + "\" y1=\"" + fmt(pts[0].y) +
                               "\" x2=\"" + fmt(pts[1].x) + "\" y2=\"" + fmt(pts[1].y) +
                               "\" stroke=\"#d04040\" stroke-width=\"3\"/>");
      } else if (pts.size() == 1) {
        red_overlays.push_back("<circle cx=\"" + fmt(pts[0].x) + "\" cy=\"" + fmt(pts[0].y) +
                               "\" r=\"4\" fill=\"#d04040\"/>");
      }
    }
  }

  // hyperplanes <x, alpha> = k * ell
  for (int k = 0; k < rs.num_positive_roots(); ++k) {
    const RootVec& alpha = rs.positive_roots()[k];
    double c1 = static_cast<double>(alpha[0]), c2 = static_cast<double>(alpha[1]);
    double pmin = 1e18, pmax = -1e18;
    for (double u1 : {lo, hi})
      for (double u2 : {lo, hi}) {
        double v = c1 * u1 + c2 * u2;
        pmin = std::min(pmin, v);
        pmax = std::max(pmax, v);
      }
    for (long long j = static_cast<long long>(std::ceil(pmin / scale));
         j <= static_cast<long long>(std::floor(pmax / scale)); ++j) {
      double c = static_cast<double>(j) * scale;
      // a point on the line and its direction, in pairing coordinates
      double p1, p2;
      if (c2 != 0) {
        p1 = 0;
        p2 = c / c2;
      } else {
        p1 = c / c1;
        p2 = 0;
      }
      Pt base = embed(p1, p2);
      Pt dirp = embed(p1 + c2, p2 - c1);
      Pt dir{dirp.x - base.x, dirp.y - base.y};
      Pt a, b;
      if (!clip_line(base, dir, xmin, ymin, xmax, ymax, a, b)) continue;
      // style: thick for cone walls (simple roots at 0), dashed for the
      // ell*rho-shifted cone walls
      bool simple = rs.height(k) == 1;
      bool cone_wall = simple && j == 0;
      bool shifted_wall = simple && c == scale * static_cast<double>(rs.height(k));
      Pt ta = tr(a), tb = tr(b);
      out << "<line x1=\"" << fmt(ta.x) << "\" y1=\"" << fmt(ta.y) << "\" x2=\"" << fmt(tb.x)
          << "\" y2=\"" << fmt(tb.y) << "\" stroke=\"" << (cone_wall ? "#000000" : "#909090")
          << "\" stroke-width=\"" << (cone_wall ? "2.5" : "0.7") << "\""
          << (shifted_wall ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    }
  }
  for (auto& s : red_overlays) out << s << "\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace linkage
