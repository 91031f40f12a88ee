#include <algorithm>
#include <set>

#include "coboundary/ncalg.hpp"

namespace coboundary {

std::size_t GeneratorSet::add_family(const std::string& name, std::size_t n, int factor) {
  if (n == 0) throw std::invalid_argument("generator family needs n >= 1");
  for (const auto& f : families_) {
    if (f.name == name || f.name == name + "*") throw std::invalid_argument("duplicate generator family " + name);
  }
  if (size() + 2 * n * n > 65535) throw std::invalid_argument("too many generators");
  const std::size_t base = families_.size();
  const auto first = static_cast<Gen>(size());
  families_.push_back({name, n, factor, first, base + 1, false});
  families_.push_back({name + "*", n, factor, static_cast<Gen>(first + n * n), base, true});
  family_index_.insert(family_index_.end(), n * n, base);
  family_index_.insert(family_index_.end(), n * n, base + 1);
  return base;
}

std::size_t GeneratorSet::family_index(const std::string& name) const {
  for (std::size_t f = 0; f < families_.size(); ++f) {
    if (families_[f].name == name) return f;
  }
  throw std::invalid_argument("unknown generator family " + name);
}

Gen GeneratorSet::gen(const std::string& family, std::size_t i, std::size_t j) const {
  const auto& f = families_[family_index(family)];
  if (i >= f.n || j >= f.n) throw std::out_of_range("generator index out of range for family " + family);
  return static_cast<Gen>(f.first + i * f.n + j);
}

std::pair<std::size_t, std::size_t> GeneratorSet::position(Gen g) const {
  const auto& f = families_[family_index_[g]];
  const std::size_t k = g - f.first;
  return {k / f.n, k % f.n};
}

Gen GeneratorSet::star(Gen g) const {
  const auto& f = families_[family_index_[g]];
  return static_cast<Gen>(families_[f.partner].first + (g - f.first));
}

std::string GeneratorSet::symbol(Gen g) const {
  const auto& f = families_[family_index_[g]];
  const auto [i, j] = position(g);
  if (f.n <= 9) return f.name + std::to_string(i + 1) + std::to_string(j + 1);
  return f.name + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

std::optional<Gen> GeneratorSet::parse_symbol(const std::string& s) const {
  for (Gen g = 0; g < size(); ++g) {
    if (symbol(g) == s) return g;
  }
  return std::nullopt;
}

Word normal_order(const GeneratorSet& gens, Word w) {
  std::stable_sort(w.begin(), w.end(), [&](Gen a, Gen b) { return gens.factor(a) < gens.factor(b); });
  return w;
}

Word multiply_words(const GeneratorSet& gens, const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  if (a.empty() || b.empty()) return w;
  // a and b are normal-ordered; a merge by factor keeps a's letters first.
  std::inplace_merge(w.begin(), w.begin() + static_cast<long>(a.size()), w.end(),
                     [&](Gen x, Gen y) { return gens.factor(x) < gens.factor(y); });
  return w;
}

std::string word_text(const GeneratorSet& gens, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "*";
    out += gens.symbol(w[i]);
  }
  return out;
}

NCPoly::NCPoly(GenSetPtr gens, const Scalar& c) : gens_(std::move(gens)) {
  if (!c.is_zero()) terms_.emplace(Word{}, c);
}

NCPoly NCPoly::generator(GenSetPtr gens, Gen g) {
  if (!gens || g >= gens->size()) throw std::out_of_range("generator id out of range");
  NCPoly p(std::move(gens));
  p.terms_.emplace(Word{g}, Scalar(1));
  return p;
}

NCPoly NCPoly::monomial(GenSetPtr gens, Word w, const Scalar& c) {
  NCPoly p(std::move(gens));
  p.add_term(std::move(w), c);
  return p;
}

std::size_t NCPoly::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

bool NCPoly::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.size() == terms_.rbegin()->first.size();
}

Scalar NCPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

void NCPoly::adopt(const GenSetPtr& other) {
  if (!other) return;
  if (!gens_) {
    gens_ = other;
  } else if (gens_ != other) {
    throw AlgebraError("polynomials over different generator sets");
  }
}

void NCPoly::add_term(Word w, const Scalar& c) {
  if (c.is_zero()) return;
  if (!w.empty()) {
    if (!gens_) throw AlgebraError("word without a generator set");
    w = normal_order(*gens_, std::move(w));
  }
  auto [it, inserted] = terms_.try_emplace(std::move(w), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly NCPoly::operator-() const {
  NCPoly r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  adopt(o.gens_);
  for (const auto& [w, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  adopt(o.gens_);
  for (const auto& [w, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(w, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

NCPoly& NCPoly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly r(a.gens_);
  r.adopt(b.gens_);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = (wa.empty() || wb.empty()) ? Word() : multiply_words(*r.gens_, wa, wb);
      if (wa.empty()) w = wb;
      if (wb.empty()) w = wa;
      const Scalar c = ca * cb;
      auto [it, inserted] = r.terms_.try_emplace(std::move(w), c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

NCPoly NCPoly::star() const {
  NCPoly r(gens_);
  for (const auto& [w, c] : terms_) {
    Word s(w.size());
    std::size_t start = 0;
    while (start < w.size()) {
      std::size_t end = start;
      const int f = gens_->factor(w[start]);
      while (end < w.size() && gens_->factor(w[end]) == f) ++end;
      for (std::size_t k = start; k < end; ++k) s[k] = gens_->star(w[end - 1 - (k - start)]);
      start = end;
    }
    r.terms_.emplace(std::move(s), c.conjugate());
  }
  return r;
}

std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [w, c] = *it;
    std::string coeff = c.to_string();
    const bool compound = coeff.find_first_of("+/ ") != std::string::npos ||
                          (coeff.size() > 1 && coeff.find('-', 1) != std::string::npos);
    bool neg = false;
    if (!compound && coeff[0] == '-') {
      neg = true;
      coeff = coeff.substr(1);
    }
    std::string term;
    if (w.empty()) {
      term = compound ? "(" + coeff + ")" : coeff;
    } else {
      const std::string word = word_text(*gens_, w);
      if (coeff == "1") {
        term = word;
      } else {
        term = (compound ? "(" + coeff + ")" : coeff) + "*" + word;
      }
    }
    if (first) {
      out = neg ? "-" + term : term;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

NCMatrix NCMatrix::generators(const GenSetPtr& gens, const std::string& family) {
  const auto& f = gens->families()[gens->family_index(family)];
  NCMatrix m(f.n, f.n);
  for (std::size_t i = 0; i < f.n; ++i)
    for (std::size_t j = 0; j < f.n; ++j) m.at(i, j) = NCPoly::generator(gens, gens->gen(family, i, j));
  return m;
}

NCMatrix NCMatrix::identity(std::size_t n) {
  NCMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = NCPoly(nullptr, Scalar(1));
  return m;
}

NCMatrix NCMatrix::from_tensor(const Tensor& t) {
  NCMatrix m(t.rows(), t.cols());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) m.at(i, j) = NCPoly(nullptr, t.at(i, j));
  return m;
}

NCMatrix NCMatrix::star_companion() const {
  NCMatrix m(rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k].star();
  return m;
}

NCMatrix NCMatrix::adjoint() const {
  NCMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j).star();
  return m;
}

std::optional<int> NCMatrix::factor_tag() const {
  std::optional<int> tag;
  for (const auto& e : entries_) {
    for (const auto& [w, c] : e.terms()) {
      for (Gen g : w) {
        const int f = e.generators()->factor(g);
        if (tag && *tag != f) throw AlgebraError("matrix entries span several tensor factors");
        tag = f;
      }
    }
  }
  return tag;
}

NCMatrix operator-(const NCMatrix& a, const NCMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("NCMatrix subtraction shape mismatch");
  NCMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

NCMatrix matmul(const NCMatrix& a, const NCMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("NCMatrix product shape mismatch");
  NCMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  return r;
}

NCMatrix matmul(const Tensor& a, const NCMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("scalar-NCMatrix product shape mismatch");
  NCMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b.at(k, j).is_zero()) r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  return r;
}

NCMatrix matmul(const NCMatrix& a, const Tensor& b) {
  if (a.cols() != b.rows()) throw ShapeError("NCMatrix-scalar product shape mismatch");
  NCMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b.at(k, j).is_zero()) r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  return r;
}

NCMatrix matrix_tensor_square(const NCMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("matrix_tensor_square needs a square matrix");
  const std::size_t n = m.rows();
  NCMatrix r(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) r.at(i * n + k, j * n + l) = m.at(i, j) * m.at(k, l);
  return r;
}

NCMatrix matrix_compose_factors(const std::vector<NCMatrix>& ms) {
  if (ms.empty()) throw std::invalid_argument("matrix_compose_factors needs at least one matrix");
  std::optional<int> last;
  for (const auto& m : ms) {
    const auto tag = m.factor_tag();
    if (!tag) continue;
    if (last && *tag <= *last) {
      throw AlgebraError("factor tags must be strictly ascending; got " + std::to_string(*tag) + " after " +
                         std::to_string(*last));
    }
    last = tag;
  }
  NCMatrix r = ms.front();
  for (std::size_t k = 1; k < ms.size(); ++k) r = matmul(r, ms[k]);
  return r;
}

NCPoly substitute(const NCPoly& p, const std::map<Gen, NCPoly>& images) {
  if (p.is_zero() || !p.generators()) return p;
  const auto& gens = *p.generators();
  std::map<Gen, NCPoly> full = images;
  for (const auto& [g, img] : images) {
    const Gen s = gens.star(g);
    const NCPoly want = img.star();
    auto it = full.find(s);
    if (it == full.end()) {
      full.emplace(s, want);
    } else if (it->second != want) {
      throw AlgebraError("substitution is not star-compatible at " + gens.symbol(g));
    }
  }
  NCPoly out(p.generators());
  for (const auto& [w, c] : p.terms()) {
    NCPoly term(p.generators(), c);
    for (Gen g : w) {
      auto it = full.find(g);
      term = term * (it == full.end() ? NCPoly::generator(p.generators(), g) : it->second);
    }
    out += term;
  }
  return out;
}

std::size_t RelationSet::max_degree() const {
  std::size_t d = 0;
  for (const auto& r : relations) d = std::max(d, r.degree());
  return d;
}

bool RelationSet::homogeneous() const {
  return std::all_of(relations.begin(), relations.end(), [](const NCPoly& r) { return r.is_homogeneous(); });
}

void RelationSet::add(NCPoly p, std::string label) {
  if (p.is_zero()) return;
  relations.push_back(std::move(p));
  labels.push_back(std::move(label));
}

void RelationSet::close_under_star() {
  const std::size_t n = relations.size();
  for (std::size_t i = 0; i < n; ++i) {
    NCPoly s = relations[i].star();
    if (std::find(relations.begin(), relations.end(), s) != relations.end()) continue;
    if (std::find(relations.begin(), relations.end(), -s) != relations.end()) continue;
    relations.push_back(std::move(s));
    labels.push_back("star(" + labels[i] + ")");
  }
}

RelationSet RelationSet::merged(const RelationSet& other, std::string new_name) const {
  RelationSet r = *this;
  r.name = std::move(new_name);
  r.relations.insert(r.relations.end(), other.relations.begin(), other.relations.end());
  r.labels.insert(r.labels.end(), other.labels.begin(), other.labels.end());
  return r;
}

}  // namespace coboundary
