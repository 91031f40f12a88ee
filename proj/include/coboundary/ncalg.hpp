#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coboundary/scalar.hpp"
#include "coboundary/tensor.hpp"

namespace coboundary {

using Gen = std::uint16_t;
using Word = std::vector<Gen>;

/// Deg-lex order: shorter words first, then lexicographic in generator id.
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct GeneratorFamily {
  std::string name;
  std::size_t n = 0;
  int factor = 0;
  Gen first = 0;
  std::size_t partner = 0;
  bool starred = false;
};

/// Matrix-entry generators grouped in families. Each family x comes with its
/// star partner x*, living in the same tensor factor.
class GeneratorSet {
 public:
  /// Adds `name` and `name*`; returns the index of `name`.
  std::size_t add_family(const std::string& name, std::size_t n, int factor);

  /// Generator x_{ij} with 0-based indices.
  Gen gen(const std::string& family, std::size_t i, std::size_t j) const;
  Gen star(Gen g) const;
  int factor(Gen g) const { return families_[family_index_[g]].factor; }
  std::size_t family_of(Gen g) const { return family_index_[g]; }
  std::pair<std::size_t, std::size_t> position(Gen g) const;
  std::size_t family_index(const std::string& name) const;

  const std::vector<GeneratorFamily>& families() const { return families_; }
  std::size_t size() const { return family_index_.size(); }

  /// "u12", "u*21" (1-based indices).
  std::string symbol(Gen g) const;
  std::optional<Gen> parse_symbol(const std::string& s) const;

 private:
  std::vector<GeneratorFamily> families_;
  std::vector<std::size_t> family_index_;
};

using GenSetPtr = std::shared_ptr<const GeneratorSet>;

class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Noncommutative polynomial. Words are kept in cross-factor normal order:
/// a stable sort by factor tag, free order inside a factor.
class NCPoly {
 public:
  using Terms = std::map<Word, Scalar, DegLexLess>;

  NCPoly() = default;
  explicit NCPoly(GenSetPtr gens) : gens_(std::move(gens)) {}
  NCPoly(GenSetPtr gens, const Scalar& c);

  static NCPoly generator(GenSetPtr gens, Gen g);
  static NCPoly monomial(GenSetPtr gens, Word w, const Scalar& c = Scalar(1));

  const GenSetPtr& generators() const { return gens_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Largest word length; 0 for zero and constants.
  std::size_t degree() const;
  bool is_homogeneous() const;
  Scalar coefficient(const Word& w) const;
  const Word& leading_word() const { return terms_.rbegin()->first; }
  const Scalar& leading_coefficient() const { return terms_.rbegin()->second; }

  /// Adds c times the normal form of w.
  void add_term(Word w, const Scalar& c);

  NCPoly operator-() const;
  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const Scalar& s);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const Scalar& s) { return a *= s; }
  friend NCPoly operator*(const Scalar& s, NCPoly a) { return a *= s; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

  /// Reverses letters within each factor, stars them, conjugates coefficients.
  NCPoly star() const;
  std::string to_string() const;

 private:
  void adopt(const GenSetPtr& other);

  GenSetPtr gens_;
  Terms terms_;
};

/// Normal form of a word under cross-factor commutation.
Word normal_order(const GeneratorSet& gens, Word w);
/// Product of two normal-ordered words.
Word multiply_words(const GeneratorSet& gens, const Word& a, const Word& b);
std::string word_text(const GeneratorSet& gens, const Word& w);

/// Rectangular matrix with NCPoly entries.
class NCMatrix {
 public:
  NCMatrix() = default;
  NCMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  /// The n x n matrix of generators of `family`.
  static NCMatrix generators(const GenSetPtr& gens, const std::string& family);
  static NCMatrix identity(std::size_t n);
  static NCMatrix from_tensor(const Tensor& t);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  NCPoly& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const NCPoly& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<NCPoly>& entries() const { return entries_; }

  /// (M_ij)^* entrywise.
  NCMatrix star_companion() const;
  /// Transpose of star_companion(): the matrix M* with (M*)_ij = (M_ji)^*.
  NCMatrix adjoint() const;
  /// Factor tag shared by all generator entries, if any.
  std::optional<int> factor_tag() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<NCPoly> entries_;
};

using GeneratorMatrix = NCMatrix;

NCMatrix operator-(const NCMatrix& a, const NCMatrix& b);
NCMatrix matmul(const NCMatrix& a, const NCMatrix& b);
NCMatrix matmul(const Tensor& a, const NCMatrix& b);
NCMatrix matmul(const NCMatrix& a, const Tensor& b);

/// Woronowicz product: entry (i*n+k, j*n+l) is M_ij M_kl.
NCMatrix matrix_tensor_square(const NCMatrix& m);
/// Ordinary matrix product of matrices living in distinct, ascending factors.
NCMatrix matrix_compose_factors(const std::vector<NCMatrix>& ms);

/// Homomorphic extension of g -> images[g]. Missing star images are filled
/// in as stars; inconsistent ones throw.
NCPoly substitute(const NCPoly& p, const std::map<Gen, NCPoly>& images);

/// Generators of a two-sided *-ideal, stored star-closed.
struct RelationSet {
  std::string name;
  std::vector<NCPoly> relations;
  std::vector<std::string> labels;

  std::size_t max_degree() const;
  bool homogeneous() const;
  std::size_t size() const { return relations.size(); }

  void add(NCPoly p, std::string label);
  /// Appends the star of every relation not already present.
  void close_under_star();
  RelationSet merged(const RelationSet& other, std::string new_name) const;
};

/// Relation index marking the free constant term of a certificate.
inline constexpr std::size_t kFreeConstant = static_cast<std::size_t>(-1);

struct CertificateTerm {
  Word left;
  std::size_t relation = 0;
  Word right;
  Scalar coefficient;
};

struct MembershipResult {
  bool is_zero = false;
  /// Smallest truncation degree that certified, or the bound reached.
  std::size_t degree = 0;
  /// 0: only families occurring in p; 1: all generators.
  int level = 0;
  bool budget_exhausted = false;
  std::size_t span_size = 0;
  std::vector<CertificateTerm> certificate;
};

class DegreeOverflow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MembershipOptions {
  std::size_t max_degree = 6;
  /// Upper bound on spanning products per homogeneous component.
  std::size_t candidate_budget = 400000;
  /// Skip the all-generator stage.
  bool restrict_to_occurring_families = false;
  /// Adds the constant 1 to the span as a free direction; its coefficient is
  /// reported in the certificate under kFreeConstant.
  bool free_constant = false;
};

/// Decides whether p lies in the span of m r m' (deg <= max_degree).
MembershipResult reduce_mod_ideal(const NCPoly& p, const RelationSet& rels, const MembershipOptions& opts);
MembershipResult reduce_mod_ideal(const NCPoly& p, const RelationSet& rels, std::size_t max_degree);

/// Sum of coefficient * left * relation * right.
NCPoly replay_certificate(const std::vector<CertificateTerm>& cert, const RelationSet& rels);

/// Dimension of span{m r m' : deg <= max_degree} over all words.
std::size_t truncated_span_dimension(const RelationSet& rels, std::size_t max_degree);
/// Dimension of the linear span of the given polynomials.
std::size_t span_dimension(const std::vector<NCPoly>& ps);
/// Linearly independent subset, in order of first appearance.
std::vector<std::size_t> independent_subset(const std::vector<NCPoly>& ps);

}  // namespace coboundary
