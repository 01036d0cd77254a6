#pragma once

#include <json.hpp>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "circumlab/constants.hpp"
#include "circumlab/fem.hpp"
#include "circumlab/geometry.hpp"
#include "circumlab/interp.hpp"
#include "circumlab/mesh.hpp"

namespace circumlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "circumlab/1";

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_real(double x);

Json to_json(Point p);
Json to_json(const Triangle& tri);
Json to_json(const TriangleMetrics& m);
Json to_json(const ConditionFlags& f);
Json to_json(const CanonicalForm& cf);
Json to_json(const InterpErrorReport& r);
Json to_json(const QuotientEstimate& e);
Json to_json(const AuditRecord& a);
Json to_json(const MeshStats& s);
Json to_json(const CeaRow& r);
Json to_json(const CeaReport& r);

/// {"schema", "command", "config", "result"}
Json envelope(const std::string& command, Json config, Json result);

/// A CSV table. Reals are written with format_real, booleans as true/false.
class Table {
 public:
  using Cell = std::variant<double, long long, bool, std::string>;

  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  /// Throws InconsistentSpec when the row width differs from the header.
  void add_row(std::vector<Cell> row);
  std::size_t size() const { return rows_.size(); }
  std::string csv() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Standalone 800x600 SVG with logarithmic axes and one polyline per series.
/// Non-positive points are skipped.
std::string loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       std::span<const Series> series);

}  // namespace circumlab
