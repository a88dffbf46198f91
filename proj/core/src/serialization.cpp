#include "isorev/serialization.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace isorev {

namespace {

using nlohmann::json;

json scalar_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json scalar_json(const Quaternion& q) {
  return json::array({q.a0, q.a1, q.a2, q.a3});
}

template <class S>
json isometry_json(const AffineMap<S>& g) {
  json linear = json::array();
  for (int i = 0; i < g.tag.n; ++i) {
    json row = json::array();
    for (int j = 0; j < g.tag.n; ++j) row.push_back(scalar_json(g.linear(i, j)));
    linear.push_back(std::move(row));
  }
  json translation = json::array();
  for (const auto& e : g.translation) translation.push_back(scalar_json(e));
  return json{{"group", to_string(g.tag.family)},
              {"affine", g.tag.affine},
              {"n", g.tag.n},
              {"linear", std::move(linear)},
              {"translation", std::move(translation)}};
}

double number_at(const json& a, size_t k, const char* what) {
  if (!a[k].is_number())
    throw ParseError(std::string(what) + ": expected a number");
  return a[k].get<double>();
}

cplx parse_cplx(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("complex scalar must be [re, im]");
  return {number_at(j, 0, "complex scalar"), number_at(j, 1, "complex scalar")};
}

Quaternion parse_quaternion(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError("quaternion scalar must be [a0, a1, a2, a3]");
  return {number_at(j, 0, "quaternion"), number_at(j, 1, "quaternion"),
          number_at(j, 2, "quaternion"), number_at(j, 3, "quaternion")};
}

template <class S, class Parse>
AffineMap<S> parse_isometry(const json& j, GroupTag tag, Parse parse_scalar) {
  const int n = tag.n;
  const json& lin = j.at("linear");
  if (!lin.is_array() || static_cast<int>(lin.size()) != n)
    throw ParseError("linear part must be an n x n array");
  SquareMatrix<S> a(n);
  for (int i = 0; i < n; ++i) {
    const json& row = lin[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError("linear part must be an n x n array");
    for (int k = 0; k < n; ++k) a(i, k) = parse_scalar(row[k]);
  }
  std::vector<S> v(n, S(0.0));
  if (j.contains("translation")) {
    const json& tr = j.at("translation");
    if (!tr.is_array() || static_cast<int>(tr.size()) != n)
      throw ParseError("translation must be a length-n array");
    for (int k = 0; k < n; ++k) v[k] = parse_scalar(tr[k]);
  } else if (tag.affine) {
    throw ParseError("affine isometry is missing its translation");
  }
  return AffineMap<S>(tag, std::move(a), std::move(v));
}

json witness_json(const ReverserWitness& w) {
  return std::visit([](const auto& h) { return isometry_json(h); }, w.h);
}

json certificate_json(const ObstructionCertificate& c) {
  json trace = json::array();
  for (const auto& s : c.trace)
    trace.push_back(
        json{{"kind", s.kind}, {"count", s.count}, {"factor", s.factor}});
  return json{{"forced_det", c.forced_det}, {"trace", std::move(trace)}};
}

template <class NF>
json normal_form_json(const NF& nf) {
  json rotations = json::array();
  for (const auto& cl : nf.spectrum.classes) {
    if (cl.theta <= kFixedEigTol || std::abs(cl.theta - M_PI) <= kFixedEigTol)
      continue;
    rotations.push_back(json::array({cl.theta, cl.multiplicity}));
  }
  json diagonal = json::array();
  for (const auto& e : nf.diagonal) diagonal.push_back(scalar_json(e));
  json v = json::array();
  for (const auto& e : nf.v) v.push_back(scalar_json(e));
  return json{{"group", to_string(nf.tag.family)},
              {"affine", nf.tag.affine},
              {"n", nf.tag.n},
              {"rotations", std::move(rotations)},
              {"s", nf.s},
              {"t", nf.t},
              {"self_dual", nf.self_dual},
              {"diagonal", std::move(diagonal)},
              {"v", std::move(v)},
              {"conjugator", isometry_json(nf.conjugator)},
              {"residual", nf.residual}};
}

}  // namespace

std::string isometry_to_json(const AnyIsometry& g, int indent) {
  return std::visit([&](const auto& e) { return isometry_json(e); }, g)
      .dump(indent);
}

AnyIsometry isometry_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("input is not valid JSON");
  if (!j.is_object()) throw ParseError("isometry must be a JSON object");
  try {
    const std::string group = j.at("group").get<std::string>();
    const bool affine = j.at("affine").get<bool>();
    const int n = j.at("n").get<int>();
    if (n < 1) throw ParseError("n must be a positive integer");
    if (group == "sp") {
      GroupTag tag{Family::Sp, affine, n};
      return parse_isometry<Quaternion>(j, tag, parse_quaternion);
    }
    if (group == "u") {
      GroupTag tag{Family::U, affine, n};
      return parse_isometry<cplx>(j, tag, parse_cplx);
    }
    if (group == "su") {
      GroupTag tag{Family::SU, affine, n};
      return parse_isometry<cplx>(j, tag, parse_cplx);
    }
    throw ParseError("group must be one of \"sp\", \"u\", \"su\"");
  } catch (const json::exception& e) {
    throw ParseError(std::string("isometry JSON: ") + e.what());
  }
}

AnyIsometry load_isometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return isometry_from_json(ss.str());
}

std::string verdict_to_json(const Verdict& v, bool emit_witness, int indent) {
  json j{{"reversible", v.reversible},
         {"strongly_reversible", v.strongly_reversible},
         {"reason", to_string(v.reason)},
         {"witness_is_involution", v.witness_is_involution()}};
  json residuals = json::object();
  if (v.witness) {
    residuals["conjugation"] = v.witness->residual_conj;
    residuals["involution"] = v.witness->residual_inv;
  }
  j["residuals"] = std::move(residuals);
  if (v.witness && emit_witness) j["witness"] = witness_json(*v.witness);
  if (v.obstruction) j["obstruction"] = certificate_json(*v.obstruction);
  return j.dump(indent);
}

std::string normal_form_to_json(const NormalFormC& nf, int indent) {
  return normal_form_json(nf).dump(indent);
}

std::string normal_form_to_json(const NormalFormH& nf, int indent) {
  return normal_form_json(nf).dump(indent);
}

}  // namespace isorev
