#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pk/colligation.hpp"

namespace pk {

using nlohmann::json;

struct NonIsometric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Complex numbers as [re, im]; matrices as arrays of rows; vectors as
/// arrays of complex; subspaces as lists of spanning vectors.
Complex parse_complex(const json& j);
json dump_complex(Complex z);
Matrix parse_matrix(const json& j);
json dump_matrix(const Matrix& m);
/// Columns assembled from a list of vectors.
Matrix parse_vectors(const json& j, int expected_rows);
json dump_vectors(const Matrix& columns);

/// Boundary maps given on stacked (f, f') pair coordinates; converted to
/// graph-coordinate matrices when the triplet is assembled.
struct TripletOverride {
  int kappa1 = 0;
  Matrix n1_gram;
  Matrix n2_gram;
  Matrix gamma1_pairs;
  Matrix gamma2_pairs;
};

struct InstanceFile {
  IsometryInstance inst;
  std::optional<BoundaryTriplet> triplet;
  std::vector<LinearRelation> taus;  // relations from N2 to N1
  std::optional<UnitaryColligation> colligation;
  unsigned seed = 0;
};

BoundaryTriplet triplet_from_override(const IsometryInstance& inst,
                                      const TripletOverride& ov);

InstanceFile parse_instance_json(const json& j);
InstanceFile parse_instance(const std::string& path);

json dump_instance(const InstanceFile& file);

}  // namespace pk
