#include "exq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace exq {

namespace {

using nlohmann::json;

cplx parse_point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(std::string(what) + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json point_json(cplx z) { return json::array({std::real(z), std::imag(z)}); }

}  // namespace

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Domain parse_domain(const std::string& text, int samples) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("domain file: invalid JSON");
  if (!doc.is_object() || !doc.contains("contours") || !doc["contours"].is_array() ||
      doc["contours"].empty())
    throw ParseError("domain file: need a non-empty \"contours\" array");

  std::vector<Contour> contours;
  for (const auto& cj : doc["contours"]) {
    if (!cj.is_object() || !cj.contains("coeffs") || !cj["coeffs"].is_array())
      throw ParseError("contour entry: need a \"coeffs\" array");
    std::map<int, cplx> coeffs;
    for (const auto& e : cj["coeffs"]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
          !e[1].is_number() || !e[2].is_number())
        throw ParseError("coeff entry: expected [j, re, im]");
      coeffs[e[0].get<int>()] = {e[1].get<double>(), e[2].get<double>()};
    }
    contours.emplace_back(coeffs, samples);
  }

  std::vector<cplx> holes;
  if (doc.contains("hole_centers")) {
    if (!doc["hole_centers"].is_array())
      throw ParseError("\"hole_centers\" must be an array");
    for (const auto& h : doc["hole_centers"]) holes.push_back(parse_point(h, "hole center"));
  }

  Contour outer = contours.front();
  contours.erase(contours.begin());
  return Domain(std::move(outer), std::move(contours), std::move(holes));
}

Domain load_domain_file(const std::string& path, int samples) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open domain file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_domain(ss.str(), samples);
}

std::string rational_to_json(const RationalFunction& f) {
  json doc;
  doc["poly"] = json::array();
  for (cplx a : f.poly()) doc["poly"].push_back(point_json(a));
  doc["poles"] = json::array();
  for (const auto& g : f.poles()) {
    json pj;
    pj["center"] = point_json(g.center);
    pj["coeffs"] = json::array();
    for (cplx b : g.coeffs) pj["coeffs"].push_back(point_json(b));
    doc["poles"].push_back(pj);
  }
  return doc.dump(2);
}

RationalFunction rational_from_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw ParseError("rational function: invalid JSON");
  std::vector<cplx> poly;
  if (doc.contains("poly"))
    for (const auto& a : doc["poly"]) poly.push_back(parse_point(a, "poly coeff"));
  std::vector<RationalFunction::PoleGroup> poles;
  if (doc.contains("poles"))
    for (const auto& pj : doc["poles"]) {
      RationalFunction::PoleGroup g;
      g.center = parse_point(pj.at("center"), "pole center");
      for (const auto& b : pj.at("coeffs")) g.coeffs.push_back(parse_point(b, "pole coeff"));
      poles.push_back(std::move(g));
    }
  return RationalFunction(std::move(poly), std::move(poles));
}

std::string report_to_json(const ExtremalityReport& rep) {
  json doc;
  doc["lambda_min"] = rep.lambda_min;
  doc["achieved_norm"] = rep.achieved_norm;
  doc["max_boundary_residual"] = rep.max_residual;
  doc["monodromy_sum_over_2pi"] = rep.monodromy_sum_over_2pi;
  doc["verdict"] = to_string(rep.verdict);
  doc["fitted_phi"] = json::parse(rational_to_json(rep.fitted_phi));
  doc["checks"] = json::array();
  auto check = [&](const char* name, double value, double tol) {
    doc["checks"].push_back({{"name", name},
                             {"value", value},
                             {"tolerance", tol},
                             {"pass", value < tol}});
  };
  check("boundary_residual_max", rep.max_residual, rep.indeterminate_threshold);
  check("norm_above_lower_bound", rep.lambda_min - rep.achieved_norm, 1e-6);
  double mono_frac = std::abs(rep.monodromy_sum_over_2pi -
                              std::round(rep.monodromy_sum_over_2pi));
  check("monodromy_integrality", mono_frac, 1e-8);
  doc["thresholds"] = {{"extremal", rep.extremal_threshold},
                       {"indeterminate", rep.indeterminate_threshold}};
  return doc.dump(2);
}

std::string residuals_to_csv(const ExtremalityReport& rep) {
  std::string out = "contour,t,residual\n";
  for (std::size_t k = 0; k < rep.residual_profiles.size(); ++k) {
    const auto& prof = rep.residual_profiles[k];
    for (std::size_t i = 0; i < prof.size(); ++i) {
      double t = two_pi * i / prof.size();
      out += std::to_string(k) + "," + fmt_double(t) + "," + fmt_double(prof[i]) + "\n";
    }
  }
  return out;
}

std::string stokes_to_csv(const StokesGraph& graph) {
  std::string out;
  for (const auto& z : graph.zeros)
    out += "# zero," + fmt_double(std::real(z.location)) + "," +
           fmt_double(std::imag(z.location)) + ",order=" + std::to_string(z.order) + "\n";
  out += "arc,kind,index,re,im\n";
  for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
    const Arc& arc = graph.arcs[a];
    const char* kind = arc.kind == ArcKind::Plus ? "plus" : "minus";
    for (std::size_t i = 0; i < arc.points.size(); ++i)
      out += std::to_string(a) + "," + kind + "," + std::to_string(i) + "," +
             fmt_double(std::real(arc.points[i])) + "," +
             fmt_double(std::imag(arc.points[i])) + "\n";
  }
  return out;
}

namespace {

struct SvgFrame {
  double x0, y0, scale;  // world -> canvas: (x - x0) * scale, flipped y
  double px(cplx z) const { return (std::real(z) - x0) * scale; }
  double py(cplx z) const { return 1024.0 - (std::imag(z) - y0) * scale; }
};

SvgFrame frame_for(const Domain& dom) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  const Contour& c = dom.contour(0);
  for (int i = 0; i < c.grid_size(); ++i) {
    cplx z = c.grid_point(i);
    xmin = std::min(xmin, std::real(z));
    xmax = std::max(xmax, std::real(z));
    ymin = std::min(ymin, std::imag(z));
    ymax = std::max(ymax, std::imag(z));
  }
  double w = std::max(xmax - xmin, 1e-12), h = std::max(ymax - ymin, 1e-12);
  double scale = 1024.0 * 0.9 / std::max(w, h);
  SvgFrame f;
  f.scale = scale;
  // Center the bounding box on the canvas with the 5% margin.
  f.x0 = xmin - (1024.0 / scale - w) / 2.0;
  f.y0 = ymin - (1024.0 / scale - h) / 2.0;
  return f;
}

std::string polyline(const SvgFrame& f, const std::vector<cplx>& pts,
                     const char* color, const char* width) {
  std::string s = "<polyline fill=\"none\" stroke=\"";
  s += color;
  s += "\" stroke-width=\"";
  s += width;
  s += "\" points=\"";
  char buf[64];
  for (cplx z : pts) {
    std::snprintf(buf, sizeof(buf), "%.3f,%.3f ", f.px(z), f.py(z));
    s += buf;
  }
  s += "\"/>\n";
  return s;
}

}  // namespace

std::string stokes_to_svg(const StokesGraph& graph, const Domain& dom) {
  SvgFrame f = frame_for(dom);
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1024\" height=\"1024\" "
      "viewBox=\"0 0 1024 1024\">\n"
      "<rect width=\"1024\" height=\"1024\" fill=\"white\"/>\n";
  for (int k = 0; k < dom.num_contours(); ++k) {
    const Contour& c = dom.contour(k);
    std::vector<cplx> pts;
    for (int i = 0; i <= c.grid_size(); ++i) pts.push_back(c.grid_point(i % c.grid_size()));
    svg += polyline(f, pts, "#222222", "2");
  }
  for (const Arc& arc : graph.arcs)
    svg += polyline(f, arc.points, arc.kind == ArcKind::Plus ? "#c02020" : "#2040c0",
                    "1.5");
  char buf[160];
  for (const auto& z : graph.zeros) {
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"5\" fill=\"#108030\"/>\n",
                  f.px(z.location), f.py(z.location));
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

std::string wkb_rows_to_csv(const std::vector<WKBErrorRow>& rows) {
  std::string out = "eps,sup_relative_error\n";
  for (const auto& r : rows)
    out += fmt_double(r.eps) + "," + fmt_double(r.sup_error) + "\n";
  return out;
}

}  // namespace exq
