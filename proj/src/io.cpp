#include "pk/io.hpp"

#include <fstream>

namespace pk {

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError("expected a complex number as [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json dump_complex(Complex z) { return json::array({z.real(), z.imag()}); }

Matrix parse_matrix(const json& j) {
  if (!j.is_array()) throw SchemaError("expected a matrix as an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = rows ? static_cast<int>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw SchemaError("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c]);
  }
  return m;
}

json dump_matrix(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(dump_complex(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Matrix parse_vectors(const json& j, int expected_rows) {
  if (!j.is_array()) throw SchemaError("expected a list of vectors");
  int cols = static_cast<int>(j.size());
  Matrix m(expected_rows, cols);
  for (int c = 0; c < cols; ++c) {
    if (!j[c].is_array() || static_cast<int>(j[c].size()) != expected_rows)
      throw SchemaError("vector length does not match the space dimension");
    for (int r = 0; r < expected_rows; ++r) m(r, c) = parse_complex(j[c][r]);
  }
  return m;
}

json dump_vectors(const Matrix& columns) {
  json out = json::array();
  for (int c = 0; c < columns.cols(); ++c) {
    json v = json::array();
    for (int r = 0; r < columns.rows(); ++r)
      v.push_back(dump_complex(columns(r, c)));
    out.push_back(v);
  }
  return out;
}

BoundaryTriplet triplet_from_override(const IsometryInstance& inst,
                                      const TripletOverride& ov) {
  LinearRelation vs = vstar(inst);
  PontryaginSpace n1(ov.n1_gram);
  PontryaginSpace n2(ov.n2_gram);
  int n = inst.space.dim();
  if (ov.gamma1_pairs.cols() != 2 * n || ov.gamma2_pairs.cols() != 2 * n)
    throw SchemaError("boundary maps must act on stacked pair coordinates");
  Matrix g1 = ov.gamma1_pairs * vs.graph().basis();
  Matrix g2 = ov.gamma2_pairs * vs.graph().basis();
  return BoundaryTriplet(inst, std::move(vs), std::move(n1), std::move(n2),
                         std::move(g1), std::move(g2), ov.kappa1);
}

InstanceFile parse_instance_json(const json& j) {
  if (!j.contains("space") || !j["space"].contains("gram"))
    throw SchemaError("missing space.gram");
  Matrix gram = parse_matrix(j["space"]["gram"]);
  PontryaginSpace space(gram);
  int n = space.dim();
  if (j["space"].contains("dim") && j["space"]["dim"].get<int>() != n)
    throw SchemaError("space.dim disagrees with the Gram matrix");

  if (!j.contains("v")) throw SchemaError("missing v");
  Matrix dom = parse_vectors(j["v"]["domain"], n);
  Matrix img = parse_vectors(j["v"]["images"], n);
  if (dom.cols() != img.cols())
    throw SchemaError("v.domain and v.images must pair up");
  LinearRelation v =
      LinearRelation::graph_on_domain(space, space, dom, img);

  // Isometry pre-check with a quantitative error message.
  Matrix ft = v.first_components();
  Matrix fb = v.second_components();
  Matrix diff = fb.adjoint() * space.gram() * fb -
                ft.adjoint() * space.gram() * ft;
  double dnorm = diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0;
  if (dnorm > tol())
    throw NonIsometric("V is not isometric; Gram-difference norm = " +
                       std::to_string(dnorm));

  std::string label = j.value("label", std::string("instance"));
  IsometryInstance inst(space, std::move(v), label);

  std::optional<BoundaryTriplet> triplet;
  if (j.contains("triplet")) {
    const json& t = j["triplet"];
    TripletOverride ov;
    ov.kappa1 = t.value("kappa1", 0);
    ov.n1_gram = parse_matrix(t.at("n1_gram"));
    ov.n2_gram = parse_matrix(t.at("n2_gram"));
    ov.gamma1_pairs = parse_matrix(t.at("gamma1_pairs"));
    ov.gamma2_pairs = parse_matrix(t.at("gamma2_pairs"));
    triplet = triplet_from_override(inst, ov);
  }

  std::vector<LinearRelation> taus;
  if (j.contains("taus")) {
    if (!triplet) throw SchemaError("taus require a triplet");
    int d2 = triplet->n2().dim(), d1 = triplet->n1().dim();
    for (const json& tj : j["taus"]) {
      Matrix span = parse_vectors(tj.at("graph"), d2 + d1);
      taus.emplace_back(triplet->n2(), triplet->n1(),
                        Subspace(d2 + d1, span));
    }
  }

  std::optional<UnitaryColligation> colligation;
  if (j.contains("colligation")) {
    if (!triplet) throw SchemaError("a colligation requires a triplet");
    const json& c = j["colligation"];
    PontryaginSpace state(parse_matrix(c.at("state_gram")));
    colligation = UnitaryColligation(
        state, triplet->n2(), triplet->n1(), parse_matrix(c.at("t")),
        parse_matrix(c.at("f")), parse_matrix(c.at("g")),
        parse_matrix(c.at("h")));
  }

  unsigned seed = j.value("seed", 0u);
  return InstanceFile{std::move(inst), std::move(triplet), std::move(taus),
                      std::move(colligation), seed};
}

InstanceFile parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("json parse error: ") + e.what());
  }
  return parse_instance_json(j);
}

json dump_instance(const InstanceFile& file) {
  json j;
  j["label"] = file.inst.label;
  j["seed"] = file.seed;
  j["space"] = {{"dim", file.inst.space.dim()},
                {"gram", dump_matrix(file.inst.space.gram())}};
  j["v"] = {{"domain", dump_vectors(file.inst.v.first_components())},
            {"images", dump_vectors(file.inst.v.second_components())}};
  return j;
}

}  // namespace pk
