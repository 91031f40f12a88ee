#pragma once

#include <vector>

#include "coboundary/ncalg.hpp"
#include "coboundary/report.hpp"
#include "coboundary/tensor.hpp"

namespace coboundary {

/// Standard A-series R-matrix and the matrices derived from it.
struct RMatrixData {
  std::size_t n = 0;
  /// q sum e_ii (x) e_ii + sum_{i!=j} e_ii (x) e_jj + (q - q^-1) sum_{i<j} e_ij (x) e_ji
  Tensor R;
  /// P R P
  Tensor R_tilde;
  /// R P, the intertwiner of u (T) u used in the relations R(u T u) = (u T u)R.
  Tensor intertwiner;
  /// P (R P) P
  Tensor intertwiner_tilde;
};

/// Throws UsageError for n < 2; checks invertibility and QYBE.
RMatrixData standard_R(std::size_t n);
/// R12 R13 R23 == R23 R13 R12 on (C^n)^{(x)3}.
bool satisfies_qybe(const Tensor& r, std::size_t n);

std::size_t inversions(const std::vector<std::size_t>& idx);

struct VolumeElement {
  std::size_t n = 0;
  Tensor E;
  Tensor E_prime;
  /// Factor reversal applied to E.
  Tensor E_tilde;
  Tensor E_tilde_prime;
};

VolumeElement volume_element(std::size_t n);

/// Families u (factor 0), w (factor 1) and a second copy u' of u (factor 2).
GenSetPtr quantum_generators(std::size_t n);

/// Entries of left (M T M) - (M T M) right, zero and dependent entries dropped.
RelationSet relations_intertwining(const Tensor& left, const NCMatrix& m, const Tensor& right, const std::string& name);
/// Quadratic FRT relations; tilde_right selects the twisted right-hand side.
RelationSet relations_frt(const RMatrixData& r, const NCMatrix& m, bool tilde_right);
/// M M* = I = M* M.
RelationSet relations_unitarity(const NCMatrix& m, const std::string& name);
/// Volume and unitarity relations of the *-algebra A on family `family`.
RelationSet relations_suq(std::size_t n, const GenSetPtr& gens, const std::string& family = "u");
/// Volume and unitarity relations of the *-algebra B on family `family`.
RelationSet relations_B(std::size_t n, const GenSetPtr& gens, const std::string& family = "w");

Json certificate_json(const std::vector<CertificateTerm>& cert, const RelationSet& rels);

CheckReport check_qybe(std::size_t n);
enum class G0Choice { epsilon_antidiagonal, identity };
CheckReport check_eq22(std::size_t n, G0Choice g0 = G0Choice::epsilon_antidiagonal);
CheckReport check_volume_element(std::size_t n);
CheckReport check_eq17_frt(std::size_t n, std::size_t max_degree);
CheckReport check_quantum_gauge(std::size_t n, std::size_t max_degree, bool negative_control = true);
CheckReport check_isomorphism(std::size_t n, std::size_t max_degree);
CheckReport check_inverse_volume(std::size_t n, std::size_t max_degree);
CheckReport check_eq18_derive(std::size_t n, std::size_t max_degree);

}  // namespace coboundary
