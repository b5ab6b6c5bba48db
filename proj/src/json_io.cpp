#include "crl/json_io.hpp"

#include <string>

namespace crl {

namespace {

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

Json to_json(const BinaryForm& f) {
  Json out = Json::array();
  for (double c : f.coeffs()) out.push_back(c);
  return out;
}

Json to_json(const ProjectivePoint& p) { return Json::array({p.s(), p.t()}); }

Json to_json(const Partition& lambda) {
  Json out = Json::array();
  for (int p : lambda.parts()) out.push_back(p);
  return out;
}

Json to_json(const Residuals& r) {
  Json out;
  out["reconstruction"] = r.reconstruction;
  out["orthogonality"] = r.orthogonality;
  out["pythagoras"] = r.pythagoras;
  out["kernel"] = r.kernel;
  return out;
}

Json to_json(const CriticalDecomposition& d) {
  Json out;
  Json roots = Json::array();
  for (const auto& r : d.roots) roots.push_back(to_json(r));
  out["roots"] = roots;
  out["parts"] = d.parts;
  out["alpha"] = d.alpha;
  out["f"] = to_json(d.f);
  out["g"] = to_json(d.g);
  out["g1"] = to_json(d.g1);
  out["g2"] = to_json(d.g2);
  out["dist_sq_primal"] = d.dist_sq_primal;
  out["dist_sq_dual"] = d.dist_sq_dual;
  out["class_primal"] = std::string(to_string(d.class_primal));
  out["class_dual"] = std::string(to_string(d.class_dual));
  out["primal_spectrum"] = vector_json(d.primal_spectrum);
  out["dual_spectrum"] = vector_json(d.dual_spectrum);
  out["residuals"] = to_json(d.residuals);
  out["root_multiplicity"] = d.root_multiplicity;
  return out;
}

Json to_json(const RealRankReport& r) {
  Json out;
  out["n"] = r.n;
  out["generic_rank"] = r.generic_rank;
  out["verdict"] = std::string(to_string(r.verdict));
  if (r.boundary_component) {
    out["boundary_component"] = std::string(to_string(*r.boundary_component));
    out["component_in_boundary"] = r.component_in_boundary;
    if (r.n >= 5) out["component_partition"] = to_json(boundary_partition(*r.boundary_component, r.n));
  } else {
    out["boundary_component"] = nullptr;
  }
  Json forms = Json::array();
  for (const auto& q : r.apolar_forms) forms.push_back(to_json(q));
  out["apolar_forms"] = forms;
  if (r.n % 2 == 1) {
    out["discriminant"] = r.discriminant;
    out["real_roots"] = r.real_roots;
  }
  if (r.pencil_discriminant) out["pencil_discriminant"] = to_json(*r.pencil_discriminant);
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json j;
    j["angle"] = s.angle;
    j["real_roots"] = s.real_roots;
    j["real_rooted"] = s.real_rooted;
    samples.push_back(j);
  }
  if (r.n % 2 == 0) out["samples"] = samples;
  Json transitions = Json::array();
  for (const auto& t : r.transitions) {
    Json j;
    j["point"] = to_json(t.point);
    j["multiplicity"] = t.multiplicity;
    j["all_real"] = t.all_real;
    j["structure"] = t.structure ? to_json(*t.structure) : Json(nullptr);
    transitions.push_back(j);
  }
  if (r.n % 2 == 0) out["transitions"] = transitions;
  return out;
}

BinaryForm form_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, "a form is a nonempty array of numbers");
  std::vector<double> c;
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(ErrorKind::ParseError, "form coefficient is not a number: " + v.dump());
    c.push_back(v.get<double>());
  }
  return BinaryForm(std::move(c));
}

ProjectivePoint point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorKind::ParseError, "a projective point is an array [s, t]");
  }
  return ProjectivePoint(j[0].get<double>(), j[1].get<double>());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace crl
