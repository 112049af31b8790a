#pragma once

#include <optional>
#include <vector>

#include "pk/pontryagin.hpp"

namespace pk {

struct RelationClass {
  bool isometric = false;
  bool coisometric = false;
  bool unitary = false;
  bool contractive = false;
  bool expansive = false;
  bool operator_ = false;          // mul T = {0}
  bool everywhere_defined = false;  // dom T = H1
};

struct PencilSpectrum {
  std::vector<Complex> eigenvalues;
  bool eigenvalue_at_infinity = false;  // mul T != {0}
  bool degenerate = false;              // every lambda is an eigenvalue
};

/// A linear relation between Pontryagin spaces, stored only by its canonical
/// graph subspace of the product (product Gram diag(J_from, J_to)).
/// dom/ran/ker/mul are recomputed on demand.
class LinearRelation {
 public:
  LinearRelation(PontryaginSpace from, PontryaginSpace to, Subspace graph);

  /// Graph of a matrix restricted to a domain subspace.
  static LinearRelation graph_of(const PontryaginSpace& from,
                                 const PontryaginSpace& to, const Matrix& a);
  static LinearRelation graph_on_domain(const PontryaginSpace& from,
                                        const PontryaginSpace& to,
                                        const Matrix& domain_basis,
                                        const Matrix& images);
  static LinearRelation zero(const PontryaginSpace& from,
                             const PontryaginSpace& to);
  static LinearRelation full(const PontryaginSpace& from,
                             const PontryaginSpace& to);
  static LinearRelation identity(const PontryaginSpace& space);

  const PontryaginSpace& from() const { return from_; }
  const PontryaginSpace& to() const { return to_; }
  const Subspace& graph() const { return graph_; }
  int graph_dim() const { return graph_.dim(); }

  /// Top / bottom blocks of the orthonormal graph basis.
  Matrix first_components() const;
  Matrix second_components() const;

  Subspace dom() const;
  Subspace ran() const;
  Subspace ker() const;
  Subspace mul() const;

  bool contains(const LinearRelation& other) const;
  bool equals(const LinearRelation& other) const;

  LinearRelation inverse() const;
  LinearRelation adjoint() const;
  LinearRelation sum(const LinearRelation& other) const;
  LinearRelation scale(Complex c) const;
  /// T - lambda I (from and to must coincide).
  LinearRelation shift(Complex lambda) const;

  RelationClass classify() const;
  PencilSpectrum pencil_spectrum() const;

  /// Matrix of (T - lambda)^{-1}; throws NotInvertible when the inverse
  /// relation is not an everywhere-defined operator.
  Matrix resolvent(Complex lambda) const;

  /// Matrix of an everywhere-defined operator relation.
  Matrix operator_matrix() const;

  /// ker(T - lambda) as a subspace of `from`.
  Subspace eigenspace(Complex lambda) const;

 private:
  PontryaginSpace from_;
  PontryaginSpace to_;
  Subspace graph_;
};

}  // namespace pk
