#pragma once

// JSON serialization of scenes and certificates. Exact values travel as
// strings ("p/q" for rationals, {"a","b"} for quadratic-extension values);
// approximate values as plain doubles, which nlohmann::json prints with
// shortest round-trip precision.

#include <string>

#include <json.hpp>

#include "kiepert/kiepert.hpp"

namespace kiepert {

using json = nlohmann::ordered_json;

// --- scalars ---------------------------------------------------------------

inline json scalar_to_json(const Rational& r) { return to_string(r); }
inline json scalar_to_json(const QuadExt& q) {
  return json{{"a", to_string(q.a)}, {"b", to_string(q.b)}};
}
inline json scalar_to_json(const ApproxReal& x) { return x.v; }

template <class S>
S scalar_from_json(const json& j);

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw geometry_error(errc::bad_input, "expected an exact rational value");
}

template <>
inline QuadExt scalar_from_json<QuadExt>(const json& j) {
  if (j.is_object()) {
    return QuadExt(rational_from_string(j.at("a").get<std::string>()),
                   rational_from_string(j.at("b").get<std::string>()));
  }
  return QuadExt(scalar_from_json<Rational>(j));
}

template <>
inline ApproxReal scalar_from_json<ApproxReal>(const json& j) {
  if (j.is_number()) return ApproxReal(j.get<double>());
  if (j.is_string()) return ApproxReal(approx(rational_from_string(j.get<std::string>())));
  if (j.is_object())
    return ApproxReal(approx(scalar_from_json<QuadExt>(j)));
  throw geometry_error(errc::bad_input, "expected a numeric value");
}

// --- points, lines, conics, triangles ---------------------------------------

template <class S>
json point_to_json(const Point<S>& p) {
  if (p.at_infinity()) {
    Point<S> n = p.normalized();
    return json{{"dir", json::array({scalar_to_json(n.x), scalar_to_json(n.y)})}};
  }
  return json::array({scalar_to_json(p.ax()), scalar_to_json(p.ay())});
}

template <class S>
Point<S> point_from_json(const json& j) {
  if (j.is_object() && j.contains("dir")) {
    const auto& d = j.at("dir");
    return Point<S>(scalar_from_json<S>(d.at(0)), scalar_from_json<S>(d.at(1)), S(0));
  }
  return Point<S>(scalar_from_json<S>(j.at(0)), scalar_from_json<S>(j.at(1)));
}

template <class S>
json line_to_json(const Line<S>& l) {
  return json::array({scalar_to_json(l.a), scalar_to_json(l.b), scalar_to_json(l.c)});
}

template <class S>
json conic_to_json(const Conic<S>& k) {
  json coeffs = json::array();
  for (const auto& c : k.k) coeffs.push_back(scalar_to_json(c));
  return json{{"coeffs", coeffs}};
}

template <class S>
Conic<S> conic_from_json(const json& j) {
  const auto& coeffs = j.at("coeffs");
  if (coeffs.size() != 6) throw geometry_error(errc::bad_input, "conic needs 6 coefficients");
  Conic<S> k;
  for (int i = 0; i < 6; ++i) k.k[i] = scalar_from_json<S>(coeffs.at(i));
  return k;
}

template <class S>
json triangle_to_json(const Triangle<S>& t) {
  return json::array({point_to_json(t.a()), point_to_json(t.b()), point_to_json(t.c())});
}

template <class S>
Triangle<S> triangle_from_json(const json& j) {
  if (j.size() != 3) throw geometry_error(errc::bad_input, "triangle needs 3 vertices");
  return Triangle<S>(point_from_json<S>(j.at(0)), point_from_json<S>(j.at(1)),
                     point_from_json<S>(j.at(2)));
}

// --- certificates ------------------------------------------------------------

template <class S>
json certificate_to_json(const EquilateralCertificate<S>& c, const std::string& label) {
  json sides = json::array();
  for (const auto& s : c.side_sq) sides.push_back(scalar_to_json(s));
  return json{{"kind", "equilateral"},
              {"label", label},
              {"side_sq", sides},
              {"side_spread", c.side_spread},
              {"concyclicity_residuals", c.concyclicity_residuals},
              {"ok", c.all_ok()}};
}

template <class S>
json certificate_to_json(const TriplePerspectivity<S>& tp, const std::string& label) {
  json certs = json::array();
  for (const auto& c : tp.certs)
    certs.push_back(json{{"shift", c.shift},
                         {"reversed", c.reversed},
                         {"perspector", point_to_json(c.perspector)},
                         {"residual", c.residual}});
  return json{{"kind", "triple_perspectivity"},
              {"label", label},
              {"perspectors", certs},
              {"axis", line_to_json(tp.axis)},
              {"axis_residual", tp.axis_residual},
              {"reversed", tp.reversed}};
}

// --- scene -------------------------------------------------------------------

template <class S>
json scene_to_json(const KiepertScene<S>& scene) {
  return json{{"triangle", triangle_to_json(scene.reference)},
              {"fermat",
               {{"f1", point_to_json(scene.fermat.f1)}, {"f2", point_to_json(scene.fermat.f2)}}},
              {"conic", conic_to_json(scene.conic)},
              {"center", point_to_json(scene.center)},
              {"certificates", json::array()}};
}

// Rebuild the scene from its reference triangle; validates against the stored
// conic so a hand-edited file cannot smuggle in an inconsistent pair.
template <class S>
KiepertScene<S> scene_from_json(const json& j) {
  Triangle<S> t = triangle_from_json<S>(j.at("triangle"));
  KiepertScene<S> scene = kiepert_hyperbola(t);
  if (j.contains("conic")) {
    Conic<S> stored = conic_from_json<S>(j.at("conic"));
    if (conic_agreement_residual(stored, scene.conic) > 1e-6)
      throw geometry_error(errc::bad_input, "stored conic disagrees with the triangle");
  }
  return scene;
}

}  // namespace kiepert
