#include "circumlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "circumlab/errors.hpp"

namespace circumlab {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(Point p) { return Json::array({p.x, p.y}); }

Json to_json(const Triangle& tri) { return Json::array({to_json(tri[0]), to_json(tri[1]), to_json(tri[2])}); }

Json to_json(const TriangleMetrics& m) {
  return {{"A", m.A},
          {"B", m.B},
          {"C", m.C},
          {"S", m.S},
          {"h_K", m.h_K},
          {"rho_K", m.rho_K},
          {"R_K", m.R_K},
          {"angles", Json::array({m.angles[0], m.angles[1], m.angles[2]})},
          {"theta_min", m.theta_min},
          {"theta_max", m.theta_max},
          {"C_K", m.C_K}};
}

Json to_json(const ConditionFlags& f) {
  return {{"min_angle_ok", f.min_angle_ok}, {"max_angle_ok", f.max_angle_ok}, {"regular_ok", f.regular_ok}};
}

Json to_json(const CanonicalForm& cf) {
  return {{"s", cf.s},         {"t", cf.t},     {"eta", cf.eta}, {"a", cf.a},
          {"b", cf.b},         {"X", cf.X},     {"Y", cf.Y},     {"ratio", cf.ratio},
          {"apex", cf.apex}, {"canonical_R", cf.canonical_circumradius()}};
}

Json to_json(const InterpErrorReport& r) {
  return {{"metrics", to_json(r.metrics)},
          {"p", r.p},
          {"err_0p", r.err_0p},
          {"err_1p", r.err_1p},
          {"err_full", r.err_full},
          {"semi_2p", r.semi_2p},
          {"ratio_1", r.ratio_1},
          {"kobayashi_bound", r.kobayashi_bound},
          {"circumradius_bound", r.circumradius_bound},
          {"empirical_quotient", r.empirical_quotient},
          {"hypothesis_ok", r.hypothesis_ok},
          {"bound_satisfied", r.bound_satisfied}};
}

Json to_json(const QuotientEstimate& e) {
  Json history = Json::array();
  for (const auto& h : e.history) history.push_back({{"degree", h.degree}, {"value", h.value}});
  return {{"kind", to_string(e.kind)},
          {"triangle", to_json(e.triangle)},
          {"degree", e.degree},
          {"value", e.value},
          {"uncertainty", e.uncertainty},
          {"gram_condition", e.gram_condition},
          {"history", history}};
}

Json to_json(const AuditRecord& a) {
  Json checks = Json::array();
  for (const auto& c : a.checks) {
    checks.push_back({{"triangle", to_json(a.triangle)},
                      {"lemma", to_string(c.lemma)},
                      {"quantity", to_string(c.quantity)},
                      {"computed", c.computed},
                      {"bound", c.bound},
                      {"pass", c.pass}});
  }
  return {{"triangle", to_json(a.triangle)}, {"degree", a.degree}, {"all_pass", a.all_pass()}, {"checks", checks}};
}

Json to_json(const MeshStats& s) {
  return {{"n_vertices", s.n_vertices}, {"n_triangles", s.n_triangles}, {"h_max", s.h_max},
          {"max_R_K", s.max_R_K},       {"min_angle", s.min_angle},     {"max_angle", s.max_angle},
          {"min_rho_over_h", s.min_rho_over_h}};
}

Json to_json(const CeaRow& r) {
  Json j = {{"level", r.level},
            {"n", r.n},
            {"n_triangles", r.n_triangles},
            {"max_R_K", r.max_R_K},
            {"h_max", r.h_max},
            {"max_angle", r.max_angle},
            {"solved", r.solved}};
  if (r.solved) {
    j["h1_semi_error"] = r.h1_semi_error;
    j["h1_norm_error"] = r.h1_norm_error;
  } else {
    j["h1_semi_error"] = nullptr;
    j["h1_norm_error"] = nullptr;
  }
  j["interp_semi_error"] = r.interp_semi_error;
  j["interp_norm_error"] = r.interp_norm_error;
  j["semi_22_exact"] = r.semi_22_exact;
  j["quotient"] = r.quotient;
  j["cg_iterations"] = r.cg_iterations;
  j["galerkin_residual"] = r.galerkin_residual;
  return j;
}

Json to_json(const CeaReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  return {{"family", r.family},
          {"field", r.field},
          {"poincare_constant", poincare_constant_unit_square()},
          {"chain_factor", cea_chain_factor()},
          {"rows", rows}};
}

Json envelope(const std::string& command, Json config, Json result) {
  return {{"schema", kReportSchema}, {"command", command}, {"config", std::move(config)}, {"result", std::move(result)}};
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size()) {
    throw InconsistentSpec("table row has " + std::to_string(row.size()) + " cells, header has " +
                           std::to_string(header_.size()));
  }
  rows_.push_back(std::move(row));
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CellText {
  std::string operator()(double x) const { return format_real(x); }
  std::string operator()(long long x) const { return std::to_string(x); }
  std::string operator()(bool b) const { return b ? "true" : "false"; }
  std::string operator()(const std::string& s) const { return csv_escape(s); }
};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string Table::csv() const {
  std::string out;
  for (std::size_t k = 0; k < header_.size(); ++k) out += (k ? "," : "") + csv_escape(header_[k]);
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += std::visit(CellText{}, row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       std::span<const Series> series) {
  constexpr double width = 800, height = 600;
  constexpr double left = 90, right = 200, top = 50, bottom = 70;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!(s.x[k] > 0 && s.y[k] > 0) || !std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      xmin = std::min(xmin, std::log10(s.x[k]));
      xmax = std::max(xmax, std::log10(s.x[k]));
      ymin = std::min(ymin, std::log10(s.y[k]));
      ymax = std::max(ymax, std::log10(s.y[k]));
    }
  }
  if (!std::isfinite(xmin)) xmin = ymin = 0, xmax = ymax = 1;
  xmin = std::floor(xmin), ymin = std::floor(ymin);
  xmax = std::max(std::ceil(xmax), xmin + 1), ymax = std::max(std::ceil(ymax), ymin + 1);

  auto px = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double ly) { return top + (ymax - ly) / (ymax - ymin) * plot_h; };

  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  svg += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(left + plot_w / 2) + "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + xml_escape(title) + "</text>\n";
  svg += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(plot_w) + "\" height=\"" +
         fixed(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int d = static_cast<int>(xmin); d <= static_cast<int>(xmax); ++d) {
    const double x = px(d);
    svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(x) + "\" y2=\"" +
           fixed(top + plot_h) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(top + plot_h + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1e" + std::to_string(d) + "</text>\n";
  }
  for (int d = static_cast<int>(ymin); d <= static_cast<int>(ymax); ++d) {
    const double y = py(d);
    svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(left + plot_w) + "\" y2=\"" +
           fixed(y) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fixed(left - 8) + "\" y=\"" + fixed(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" + std::to_string(d) + "</text>\n";
  }
  svg += "<text x=\"" + fixed(left + plot_w / 2) + "\" y=\"" + fixed(height - 20) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + xml_escape(x_label) + "</text>\n";
  svg += "<text x=\"20\" y=\"" + fixed(top + plot_h / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" transform=\"rotate(-90 20 " + fixed(top + plot_h / 2) + ")\">" + xml_escape(y_label) +
         "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const std::string color = palette[k % std::size(palette)];
    std::string points;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0 && s.y[i] > 0) || !std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      const double x = px(std::log10(s.x[i])), y = py(std::log10(s.y[i]));
      points += (points.empty() ? "" : " ") + fixed(x) + "," + fixed(y);
      svg += "<circle cx=\"" + fixed(x) + "\" cy=\"" + fixed(y) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    const double ly = top + 20 + 22 * static_cast<double>(k);
    svg += "<line x1=\"" + fixed(left + plot_w + 15) + "\" y1=\"" + fixed(ly) + "\" x2=\"" +
           fixed(left + plot_w + 40) + "\" y2=\"" + fixed(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fixed(left + plot_w + 46) + "\" y=\"" + fixed(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace circumlab
