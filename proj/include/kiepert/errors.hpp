#pragma once

#include <stdexcept>
#include <string>

namespace kiepert {

enum class errc {
  degenerate_leading_coefficient,
  not_a_root,
  identical_elements,
  coincident_fermat_points,
  not_central,
  degenerate_conic,
  no_unique_conic,
  point_not_on_conic,
  pole_undefined,
  fewer_than_three_real_intersections,
  concentric_circles,
  unrepresentable_sqrt,
  lines_not_concurrent,
  not_scalene,
  degenerate_triangle,
  not_perspective,
  not_triply_perspective,
  degenerate_hexagon,
  degenerate_parameter,
  degenerate_frame,
  tangent_chord,
  vertex_not_on_conic,
  degenerate_scene,
  no_valid_candidate,
  division_by_zero,
  bad_input,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::degenerate_leading_coefficient: return "DegenerateLeadingCoefficient";
    case errc::not_a_root: return "NotARoot";
    case errc::identical_elements: return "IdenticalElements";
    case errc::coincident_fermat_points: return "CoincidentFermatPoints";
    case errc::not_central: return "NotCentral";
    case errc::degenerate_conic: return "DegenerateConic";
    case errc::no_unique_conic: return "NoUniqueConic";
    case errc::point_not_on_conic: return "PointNotOnConic";
    case errc::pole_undefined: return "PoleUndefined";
    case errc::fewer_than_three_real_intersections: return "FewerThanThreeRealIntersections";
    case errc::concentric_circles: return "ConcentricCircles";
    case errc::unrepresentable_sqrt: return "UnrepresentableSqrt";
    case errc::lines_not_concurrent: return "LinesNotConcurrent";
    case errc::not_scalene: return "NotScalene";
    case errc::degenerate_triangle: return "DegenerateTriangle";
    case errc::not_perspective: return "NotPerspective";
    case errc::not_triply_perspective: return "NotTriplyPerspective";
    case errc::degenerate_hexagon: return "DegenerateHexagon";
    case errc::degenerate_parameter: return "DegenerateParameter";
    case errc::degenerate_frame: return "DegenerateFrame";
    case errc::tangent_chord: return "TangentChord";
    case errc::vertex_not_on_conic: return "VertexNotOnConic";
    case errc::degenerate_scene: return "DegenerateScene";
    case errc::no_valid_candidate: return "NoValidCandidate";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::bad_input: return "BadInput";
  }
  return "Unknown";
}

class geometry_error : public std::runtime_error {
 public:
  geometry_error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace kiepert
