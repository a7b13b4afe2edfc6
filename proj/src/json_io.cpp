#include "ergodlab/json_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>

#include "ergodlab/report.hpp"

namespace ergodlab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw DomainError("malformed integer '" + s + "'");
    }
    return BigInt(s);
  }
  throw DomainError("expected an integer or digit string");
}

std::int64_t int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) {
    throw DomainError(std::string(what) + " must be an integer");
  }
  return j.get<std::int64_t>();
}

std::string real_to_text(double v) { return format_real(v); }

}  // namespace

Frac frac_from_json(const Json& j) {
  if (j.is_string()) {
    return Frac::from_decimal(j.get<std::string>());
  }
  if (j.is_object()) {
    return Frac::from_rational(bigint_from_json(require(j, "p")), bigint_from_json(require(j, "q")));
  }
  if (j.is_number_integer() && j.get<std::int64_t>() == 0) {
    return Frac{};
  }
  throw DomainError("circle parameters must be decimal strings or {\"p\", \"q\"} rationals, got " + j.dump());
}

Json frac_to_json(Frac f) {
  static const std::string two_128 = (BigInt(1) << 128).str();
  return {{"p", f.bits_decimal()}, {"q", two_128}};
}

double real_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return static_cast<double>(j.get<std::int64_t>());
  }
  if (!j.is_string()) {
    throw DomainError("real parameters must be decimal strings, got " + j.dump());
  }
  const auto s = j.get<std::string>();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw DomainError("malformed real '" + s + "'");
  }
  return v;
}

TorusPoint point_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw DomainError("a point is a nonempty array of circle coordinates");
  }
  TorusPoint p(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) p[i] = frac_from_json(j[i]);
  return p;
}

Json point_to_json(const TorusPoint& p) {
  Json out = Json::array();
  for (Frac f : p.coords()) out.push_back(frac_to_json(f));
  return out;
}

LacunaryParams lacunary_from_json(const Json& j) {
  const auto K = static_cast<int>(int_from_json(require(j, "K"), "K"));
  const Weights w = j.contains("weights") ? weights_from_string(j.at("weights").get<std::string>()) : Weights::inv;
  const double t = j.contains("t") ? real_from_json(j.at("t")) : 1.0;
  const Frac beta = j.contains("beta") ? frac_from_json(j.at("beta")) : Frac{};
  return make_lacunary_params(K, w, t, beta);
}

Json lacunary_to_json(const LacunaryParams& p) {
  return {{"K", p.seq.K}, {"weights", to_string(p.weights)}, {"t", real_to_text(p.t)}, {"beta", frac_to_json(p.beta)}};
}

NilParams nil_from_json(const Json& j) {
  NilParams p;
  p.alpha = frac_from_json(require(j, "alpha"));
  p.beta = frac_from_json(require(j, "beta"));
  p.gamma = frac_from_json(require(j, "gamma"));
  if (j.contains("theta_tol")) p.theta_tol = real_from_json(j.at("theta_tol"));
  validate(p);
  return p;
}

Json nil_to_json(const NilParams& p) {
  return {{"alpha", frac_to_json(p.alpha)},
          {"beta", frac_to_json(p.beta)},
          {"gamma", frac_to_json(p.gamma)},
          {"theta_tol", real_to_text(p.theta_tol)}};
}

FlowSpec flow_from_json(const Json& j) {
  const auto variant = require(j, "variant").get<std::string>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (variant == "rotation") {
    return Rotation{point_from_json(require(params, "delta"))};
  }
  if (variant == "weyl") {
    const auto L = int_from_json(require(params, "L"), "L");
    if (L < 1 || L > kMaxWeylDegree) throw DomainError("Weyl degree L must lie in [1, 8]");
    return WeylSystem{frac_from_json(require(params, "beta")), static_cast<int>(L)};
  }
  if (variant == "anzai") {
    return Anzai{frac_from_json(require(params, "alpha"))};
  }
  if (variant == "cocycle_skew" || variant == "s_flow") {
    auto cocycle = std::make_shared<const LacunaryParams>(lacunary_from_json(require(params, "cocycle")));
    const Frac alpha = params.contains("alpha") ? frac_from_json(params.at("alpha")) : cocycle->seq.alpha;
    if (variant == "s_flow") return SFlow{alpha, std::move(cocycle)};
    return CocycleSkew{alpha, std::move(cocycle)};
  }
  if (variant == "heisenberg") {
    return Heisenberg{nil_from_json(params)};
  }
  if (variant == "product") {
    const Json& specs = require(params, "specs");
    if (!specs.is_array() || specs.empty()) throw DomainError("product needs a nonempty 'specs' array");
    Product p;
    for (const auto& s : specs) p.parts.push_back(flow_from_json(s));
    return p;
  }
  throw DomainError("unknown flow variant '" + variant + "'");
}

Json flow_to_json(const FlowSpec& spec) {
  Json params = std::visit(overloaded{
                               [](const Rotation& r) { return Json{{"delta", point_to_json(r.delta)}}; },
                               [](const WeylSystem& w) { return Json{{"beta", frac_to_json(w.beta)}, {"L", w.degree}}; },
                               [](const Anzai& a) { return Json{{"alpha", frac_to_json(a.alpha)}}; },
                               [](const CocycleSkew& c) {
                                 return Json{{"alpha", frac_to_json(c.alpha)}, {"cocycle", lacunary_to_json(*c.cocycle)}};
                               },
                               [](const SFlow& s) {
                                 return Json{{"alpha", frac_to_json(s.alpha)}, {"cocycle", lacunary_to_json(*s.cocycle)}};
                               },
                               [](const Heisenberg& h) { return nil_to_json(h.params); },
                               [](const Product& p) {
                                 Json specs = Json::array();
                                 for (const auto& part : p.parts) specs.push_back(flow_to_json(part));
                                 return Json{{"specs", specs}};
                               },
                           },
                           spec.variant());
  return {{"variant", spec.name()}, {"params", params}};
}

JoinSpec join_from_json(const Json& j) {
  FlowSpec left = flow_from_json(require(j, "left"));
  FlowSpec right = flow_from_json(require(j, "right"));
  JoinMode mode = FullProduct{};
  if (j.contains("mode")) {
    const Json& m = j.at("mode");
    if (m.is_string()) {
      if (m.get<std::string>() != "full_product") throw DomainError("unknown join mode " + m.dump());
    } else {
      const Json& fiber = require(m, "fiber");
      FiberMode f;
      for (const auto& i : require(fiber, "left")) f.left_factor.push_back(static_cast<std::size_t>(int_from_json(i, "factor index")));
      for (const auto& i : require(fiber, "right")) f.right_factor.push_back(static_cast<std::size_t>(int_from_json(i, "factor index")));
      mode = std::move(f);
    }
  }
  const Json& starts = require(j, "starts");
  if (!starts.is_array() || starts.size() != 2) throw DomainError("'starts' must hold exactly two points");
  JoinSpec spec{std::move(left), std::move(right), std::move(mode), point_from_json(starts[0]), point_from_json(starts[1])};
  validate(spec);
  return spec;
}

Json join_to_json(const JoinSpec& spec) {
  Json mode = "full_product";
  if (const auto* f = std::get_if<FiberMode>(&spec.mode)) {
    mode = Json{{"fiber", {{"left", f->left_factor}, {"right", f->right_factor}}}};
  }
  return {{"left", flow_to_json(spec.left)},
          {"right", flow_to_json(spec.right)},
          {"mode", mode},
          {"starts", Json::array({point_to_json(spec.left_start), point_to_json(spec.right_start)})}};
}

Observable observable_from_json(const Json& j) {
  const auto kind = require(j, "kind").get<std::string>();
  if (kind == "character") {
    Character c;
    for (const auto& v : require(j, "coeffs")) c.coeffs.push_back(int_from_json(v, "character coefficient"));
    return c;
  }
  if (kind == "theta") {
    ThetaObservable t;
    if (j.contains("tol")) t.tol = real_from_json(j.at("tol"));
    if (j.contains("offset")) t.offset = static_cast<std::size_t>(int_from_json(j.at("offset"), "offset"));
    if (!(t.tol > 0.0 && t.tol <= 1e-3)) throw DomainError("theta tolerance must lie in (0, 1e-3]");
    return t;
  }
  if (kind == "constant") {
    Constant c;
    c.value = {j.contains("re") ? real_from_json(j.at("re")) : 1.0, j.contains("im") ? real_from_json(j.at("im")) : 0.0};
    return c;
  }
  throw DomainError("unknown observable kind '" + kind + "'");
}

}  // namespace ergodlab
