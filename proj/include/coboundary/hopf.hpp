#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coboundary/report.hpp"
#include "coboundary/tensor.hpp"

namespace coboundary {

/// A Hopf axiom fails; `basis` names the offending basis indices.
class HopfAxiomError : public std::invalid_argument {
 public:
  HopfAxiomError(std::string axiom, std::vector<std::size_t> basis, const std::string& what)
      : std::invalid_argument(what), axiom_(std::move(axiom)), basis_(std::move(basis)) {}
  const std::string& axiom() const { return axiom_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

 private:
  std::string axiom_;
  std::vector<std::size_t> basis_;
};

/// Structure tensors of a finite-dimensional Hopf algebra:
///   e_i e_j = sum_k mult(i,j,k) e_k,  Delta(e_i) = sum comult(i,j,k) e_j (x) e_k,
///   S(e_i) = sum_j antipode(i,j) e_j.
struct HopfData {
  std::string name;
  std::size_t d = 0;
  std::vector<std::string> labels;
  Tensor mult;
  Tensor comult;
  Tensor unit;
  Tensor counit;
  Tensor antipode;
};

/// Throws HopfAxiomError naming the first failing axiom and basis indices.
void validate_hopf(const HopfData& h);

/// JSON: {name, basis: [labels], mult: [{i,j,k,coeff}], comult: [{i,j,k,coeff}],
/// unit: [{i,coeff}], counit: [{i,coeff}], antipode: [{i,j,coeff}]}. Coefficients
/// are integers or Scalar strings. Validates.
HopfData load_hopf(const Json& spec);
Json hopf_to_json(const HopfData& h);

std::vector<std::string> hopf_catalog_names();
/// "Z2", "Z3", "S3", "Sweedler"; throws UsageError for other names.
HopfData hopf_catalog(const std::string& name);

/// R = sum coeffs(i,j) e_i (x) e_j.
struct RElement {
  Tensor coeffs;

  static RElement identity(const HopfData& h);
  std::string to_string(const HopfData& h) const;
};

/// The comultiplication a -> Delta(a) R, same layout as HopfData::comult.
Tensor delta_tilde(const HopfData& h, const RElement& r);

/// Delta(a) R = R Delta^op(a) for every basis a.
CheckReport check_intertwiner(const HopfData& h, const RElement& r);
/// [(Delta (x) id) R](R (x) I) = [(id (x) Delta) R](I (x) R).
CheckReport check_cocycle(const HopfData& h, const RElement& r);
/// (c (x) id) R = I = (id (x) c) R.
CheckReport check_counit_R(const HopfData& h, const RElement& r);
/// (Dt (x) id) Dt = (id (x) Dt) Dt on every basis element, Dt = delta_tilde.
CheckReport check_coassoc_tilde(const HopfData& h, const RElement& r);
/// Psi = m(m (x) id) as a coalgebra map, and its two specializations.
CheckReport check_psi_morphism(const HopfData& h, const RElement& r);
/// R12 R21 = I (x) I; informational.
CheckReport check_unitarity(const HopfData& h, const RElement& r);

/// Affine ansatz R = base + sum_k t_k directions[k].
struct RAnsatz {
  Tensor base;
  std::vector<Tensor> directions;

  static RAnsatz full(const HopfData& h);
  static RAnsatz single(const RElement& r);
};

/// A piece of the solution set of the R conditions.
struct RFamily {
  enum class Kind { affine, isolated, sampled };
  Kind kind = Kind::affine;
  /// affine: base + span(directions) solves every condition.
  RElement base;
  std::vector<Tensor> directions;
  std::string method;

  /// base, and base + t * direction for t in {1, -1, 1/2, -1/2} per direction.
  std::vector<RElement> members() const;
  /// Whether r lies in base + span(directions).
  bool contains(const RElement& r) const;
  Json to_json(const HopfData& h) const;
};

/// More than this many parameters left after the linear stage is an error.
inline constexpr std::size_t kMaxQuadraticParameters = 8;

/// Solves the linear conditions (intertwining and counit) exactly, then the
/// quadratic cocycle condition on the resulting affine family.
std::vector<RFamily> find_R(const HopfData& h, const RAnsatz& ansatz);

/// Full chain for one catalog algebra: solver, every condition on every
/// member, cocycle/coassociativity agreement on perturbed candidates.
CheckReport check_hopf_chain(const HopfData& h, std::uint64_t seed, std::size_t perturbations = 24);

}  // namespace coboundary
