#include "circumlab/field.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "circumlab/errors.hpp"

namespace circumlab {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> parse_number_list(std::string_view list, std::string_view context) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = list.find(',', pos);
    std::string token(list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    // trim
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    if (first == std::string::npos) throw UnknownField("empty number in " + std::string(context));
    token = token.substr(first, last - first + 1);
    if (token.front() == '+') token.erase(0, 1);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw UnknownField("malformed number '" + token + "' in " + std::string(context));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::optional<std::string_view> call_arguments(std::string_view name, std::string_view fn) {
  if (name.size() < fn.size() + 2 || name.substr(0, fn.size()) != fn || name[fn.size()] != '(' ||
      name.back() != ')') {
    return std::nullopt;
  }
  return name.substr(fn.size() + 1, name.size() - fn.size() - 2);
}

std::string format_number(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}

ScalarField mono_field(int i, int j) {
  return ScalarField::from_polynomial("mono(" + std::to_string(i) + "," + std::to_string(j) + ")",
                                      Polynomial2::monomial(i, j));
}

ScalarField affine_field(double cx, double cy, double c0) {
  Polynomial2 p(1);
  p.coeff(0, 0) = c0;
  p.coeff(1, 0) = cx;
  p.coeff(0, 1) = cy;
  return ScalarField::from_polynomial(
      "affine(" + format_number(cx) + "," + format_number(cy) + "," + format_number(c0) + ")", p);
}

ScalarField sinsin_field() {
  return ScalarField(
      "sinsin", [](Point p) { return std::sin(pi * p.x) * std::sin(pi * p.y); },
      [](Point p) {
        return Gradient{pi * std::cos(pi * p.x) * std::sin(pi * p.y), pi * std::sin(pi * p.x) * std::cos(pi * p.y)};
      },
      [](Point p) {
        const double sx = std::sin(pi * p.x), sy = std::sin(pi * p.y);
        const double cx = std::cos(pi * p.x), cy = std::cos(pi * p.y);
        return Hessian{-pi * pi * sx * sy, pi * pi * cx * cy, -pi * pi * sx * sy};
      });
}

ScalarField expsum_field() {
  return ScalarField(
      "expsum", [](Point p) { return std::exp(p.x + p.y); },
      [](Point p) {
        const double e = std::exp(p.x + p.y);
        return Gradient{e, e};
      },
      [](Point p) {
        const double e = std::exp(p.x + p.y);
        return Hessian{e, e, e};
      });
}

// x(1-x)y(1-y): vanishes on the boundary of the unit square.
ScalarField bubble_field() {
  const Polynomial2 px = Polynomial2::monomial(1, 0) - Polynomial2::monomial(2, 0);
  const Polynomial2 py = Polynomial2::monomial(0, 1) - Polynomial2::monomial(0, 2);
  return ScalarField::from_polynomial("bubble", px * py);
}

}  // namespace

ScalarField::ScalarField(std::string name, ValueFn value, GradFn grad, std::optional<HessFn> hess,
                         std::optional<int> polynomial_degree)
    : name_(std::move(name)),
      value_(std::move(value)),
      grad_(std::move(grad)),
      hess_(std::move(hess)),
      degree_(polynomial_degree) {}

ScalarField ScalarField::from_polynomial(std::string name, const Polynomial2& p) {
  const Polynomial2 px = p.dx(), py = p.dy();
  const Polynomial2 pxx = px.dx(), pxy = px.dy(), pyy = py.dy();
  return ScalarField(
      std::move(name), [p](Point x) { return p(x); }, [px, py](Point x) { return Gradient{px(x), py(x)}; },
      HessFn([pxx, pxy, pyy](Point x) { return Hessian{pxx(x), pxy(x), pyy(x)}; }), p.effective_degree());
}

Hessian ScalarField::hess(Point p) const {
  if (!hess_) throw InconsistentSpec("field '" + name_ + "' has no second derivatives");
  return (*hess_)(p);
}

double ScalarField::laplacian(Point p) const {
  const Hessian h = hess(p);
  return h.xx + h.yy;
}

ScalarField ScalarField::minus_affine(double c0, double cx, double cy, std::string name) const {
  auto value = value_;
  auto grad = grad_;
  std::optional<int> degree = degree_;
  if (degree) degree = std::max(*degree, (cx != 0 || cy != 0) ? 1 : 0);
  return ScalarField(
      std::move(name), [value, c0, cx, cy](Point p) { return value(p) - (c0 + cx * p.x + cy * p.y); },
      [grad, cx, cy](Point p) {
        const Gradient g = grad(p);
        return Gradient{g.x - cx, g.y - cy};
      },
      hess_, degree);
}

ScalarField ScalarField::pulled_back_by_scaling(double scale) const {
  auto value = value_;
  auto grad = grad_;
  std::optional<HessFn> hess;
  if (hess_) {
    hess = [h = *hess_, scale](Point p) {
      const Hessian H = h(scale * p);
      return Hessian{scale * scale * H.xx, scale * scale * H.xy, scale * scale * H.yy};
    };
  }
  return ScalarField(
      name_ + "@scaled", [value, scale](Point p) { return value(scale * p); },
      [grad, scale](Point p) {
        const Gradient g = grad(scale * p);
        return Gradient{scale * g.x, scale * g.y};
      },
      hess, degree_);
}

std::vector<ScalarField> field_registry() {
  std::vector<ScalarField> fields;
  fields.push_back(affine_field(0, 0, 1));
  fields.push_back(affine_field(1, 0, 0));
  fields.push_back(affine_field(0, 1, 0));
  for (int d = 0; d <= 4; ++d) {
    for (int j = 0; j <= d; ++j) fields.push_back(mono_field(d - j, j));
  }
  fields.push_back(sinsin_field());
  fields.push_back(expsum_field());
  fields.push_back(bubble_field());
  return fields;
}

Polynomial2 parse_poly_coefficients(std::string_view list) {
  const std::vector<double> coeffs = parse_number_list(list, "poly coefficients");
  try {
    return Polynomial2(std::span<const double>(coeffs));
  } catch (const std::invalid_argument& e) {
    throw UnknownField(e.what());
  }
}

ScalarField lookup_field(std::string_view name) {
  if (name == "one") return affine_field(0, 0, 1);
  if (name == "x") return affine_field(1, 0, 0);
  if (name == "y") return affine_field(0, 1, 0);
  if (name == "sinsin") return sinsin_field();
  if (name == "expsum") return expsum_field();
  if (name == "bubble") return bubble_field();
  if (auto args = call_arguments(name, "affine")) {
    const auto v = parse_number_list(*args, "affine(...)");
    if (v.size() != 3) throw UnknownField("affine(cx,cy,c0) takes three numbers");
    return affine_field(v[0], v[1], v[2]);
  }
  if (auto args = call_arguments(name, "mono")) {
    const auto v = parse_number_list(*args, "mono(...)");
    if (v.size() != 2 || v[0] < 0 || v[1] < 0 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
      throw UnknownField("mono(i,j) takes two nonnegative integers");
    }
    return mono_field(static_cast<int>(v[0]), static_cast<int>(v[1]));
  }
  std::optional<std::string_view> poly;
  if (name.substr(0, 5) == "poly:") poly = name.substr(5);
  if (!poly) poly = call_arguments(name, "poly");
  if (poly) return ScalarField::from_polynomial("poly:" + std::string(*poly), parse_poly_coefficients(*poly));
  throw UnknownField("unknown field '" + std::string(name) + "'");
}

}  // namespace circumlab
