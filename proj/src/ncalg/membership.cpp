#include <algorithm>
#include <gmpxx.h>
#include <set>
#include <tuple>

#include "coboundary/ncalg.hpp"

namespace coboundary {

namespace {

using Weight = std::vector<long>;
using Combo = std::map<std::size_t, Scalar>;

void axpy(NCPoly::Terms& y, const Scalar& a, const NCPoly::Terms& x) {
  for (const auto& [w, c] : x) {
    auto [it, inserted] = y.try_emplace(w, a * c);
    if (!inserted) {
      it->second += a * c;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

void axpy(Combo& y, const Scalar& a, const Combo& x) {
  for (const auto& [k, c] : x) {
    auto [it, inserted] = y.try_emplace(k, a * c);
    if (!inserted) {
      it->second += a * c;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

// Sparse row echelon form keyed by leading word, with optional combination
// tracking for certificates.
class Echelon {
 public:
  explicit Echelon(bool track) : track_(track) {}

  // Returns true when the row was independent of the current span.
  bool insert(NCPoly::Terms poly, Combo combo) {
    Combo removed;
    reduce(poly, removed);
    if (poly.empty()) return false;
    if (track_) axpy(combo, Scalar(-1), removed);
    const Scalar inv = poly.rbegin()->second.inverse();
    for (auto& [w, c] : poly) c *= inv;
    if (track_)
      for (auto& [k, c] : combo) c *= inv;
    pivots_.emplace(poly.rbegin()->first, rows_.size());
    rows_.push_back({std::move(poly), std::move(combo)});
    return true;
  }

  // Head-reduces poly; combo accumulates the coefficients that were removed.
  void reduce(NCPoly::Terms& poly, Combo& combo) const {
    while (!poly.empty()) {
      auto it = pivots_.find(poly.rbegin()->first);
      if (it == pivots_.end()) return;
      const Row& row = rows_[it->second];
      const Scalar f = poly.rbegin()->second;
      axpy(poly, -f, row.poly);
      if (track_) axpy(combo, f, row.combo);
    }
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    NCPoly::Terms poly;
    Combo combo;
  };
  bool track_;
  std::vector<Row> rows_;
  std::map<Word, std::size_t, DegLexLess> pivots_;
};

struct Grading {
  std::vector<Weight> gen_weight;  // indexed by generator id
  std::size_t dims = 0;

  Weight of(const Word& w) const {
    Weight r(dims, 0);
    for (Gen g : w)
      for (std::size_t c = 0; c < dims; ++c) r[c] += gen_weight[g][c];
    return r;
  }
};

// Rational nullspace of the homogeneity constraints, scaled to integers.
Grading compute_grading(const GeneratorSet& gens, const std::vector<Gen>& allowed,
                        const std::vector<const NCPoly*>& rels) {
  std::map<Gen, std::size_t> var;
  for (Gen g : allowed) var.emplace(g, var.size());
  const std::size_t nv = allowed.size();
  std::vector<std::vector<Scalar>> rows;
  auto counts = [&](const Word& w) {
    std::vector<long> c(nv, 0);
    for (Gen g : w) ++c[var.at(g)];
    return c;
  };
  for (const NCPoly* r : rels) {
    const auto& terms = r->terms();
    auto it = terms.begin();
    const auto base = counts(it->first);
    for (++it; it != terms.end(); ++it) {
      const auto cur = counts(it->first);
      std::vector<Scalar> row(nv);
      bool nonzero = false;
      for (std::size_t k = 0; k < nv; ++k) {
        row[k] = Scalar(cur[k] - base[k]);
        nonzero |= cur[k] != base[k];
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  std::vector<std::vector<Scalar>> basis;
  if (rows.empty()) {
    for (std::size_t k = 0; k < nv; ++k) {
      std::vector<Scalar> e(nv);
      e[k] = Scalar(1);
      basis.push_back(std::move(e));
    }
  } else {
    basis = solve_linear(rows, std::vector<Scalar>(rows.size())).nullspace;
  }
  Grading gr;
  gr.dims = basis.size();
  gr.gen_weight.assign(gens.size(), Weight(gr.dims, 0));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    mpz_class l = 1;
    for (const auto& x : basis[c]) {
      const Rational v = x.rational_value();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    for (Gen g : allowed) {
      const Rational v = basis[c][var.at(g)].rational_value() * l;
      gr.gen_weight[g][c] = mpz_class(v.get_num()).get_si();
    }
  }
  return gr;
}

// Normal-ordered words of exact length with a prescribed weight.
class WordEnumerator {
 public:
  WordEnumerator(const GeneratorSet& gens, std::vector<Gen> allowed, const Grading& gr)
      : gens_(gens), gr_(gr), letters_(std::move(allowed)) {
    std::stable_sort(letters_.begin(), letters_.end(),
                     [&](Gen a, Gen b) { return gens_.factor(a) < gens_.factor(b); });
    lo_.assign(gr_.dims, 0);
    hi_.assign(gr_.dims, 0);
    for (std::size_t c = 0; c < gr_.dims; ++c) {
      bool first = true;
      for (Gen g : letters_) {
        const long v = gr_.gen_weight[g][c];
        lo_[c] = first ? v : std::min(lo_[c], v);
        hi_[c] = first ? v : std::max(hi_[c], v);
        first = false;
      }
    }
  }

  template <typename F>
  bool each(std::size_t length, const Weight& target, F&& f) const {
    Word w;
    Weight cur(gr_.dims, 0);
    return dfs(length, target, 0, w, cur, f);
  }

 private:
  template <typename F>
  bool dfs(std::size_t length, const Weight& target, std::size_t start, Word& w, Weight& cur, F& f) const {
    const long left = static_cast<long>(length - w.size());
    for (std::size_t c = 0; c < gr_.dims; ++c) {
      const long need = target[c] - cur[c];
      if (need < left * lo_[c] || need > left * hi_[c]) return true;
    }
    if (left == 0) return f(w);
    for (std::size_t i = start; i < letters_.size(); ++i) {
      const Gen g = letters_[i];
      w.push_back(g);
      for (std::size_t c = 0; c < gr_.dims; ++c) cur[c] += gr_.gen_weight[g][c];
      // letters of the same factor may repeat in any order
      std::size_t next = i;
      while (next > 0 && gens_.factor(letters_[next - 1]) == gens_.factor(g)) --next;
      const bool go_on = dfs(length, target, next, w, cur, f);
      for (std::size_t c = 0; c < gr_.dims; ++c) cur[c] -= gr_.gen_weight[g][c];
      w.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  const GeneratorSet& gens_;
  const Grading& gr_;
  std::vector<Gen> letters_;
  Weight lo_, hi_;
};

struct Candidate {
  Word left;
  std::size_t relation;
  Word right;
};

// All ways to place r inside the border word s, one split per touched factor.
template <typename F>
void for_each_split(const GeneratorSet& gens, const Word& s, const std::set<int>& touched, F&& f) {
  struct Segment {
    std::size_t begin, end;
    bool split;
  };
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    const int fac = gens.factor(s[i]);
    while (j < s.size() && gens.factor(s[j]) == fac) ++j;
    segs.push_back({i, j, touched.count(fac) > 0});
    i = j;
  }
  std::vector<std::size_t> cut(segs.size(), 0);
  for (std::size_t k = 0; k < segs.size(); ++k) cut[k] = segs[k].split ? 0 : segs[k].end - segs[k].begin;
  while (true) {
    Word left, right;
    for (std::size_t k = 0; k < segs.size(); ++k) {
      left.insert(left.end(), s.begin() + static_cast<long>(segs[k].begin),
                  s.begin() + static_cast<long>(segs[k].begin + cut[k]));
      right.insert(right.end(), s.begin() + static_cast<long>(segs[k].begin + cut[k]),
                   s.begin() + static_cast<long>(segs[k].end));
    }
    f(left, right);
    std::size_t k = 0;
    for (; k < segs.size(); ++k) {
      if (!segs[k].split) continue;
      if (cut[k] < segs[k].end - segs[k].begin) {
        ++cut[k];
        break;
      }
      cut[k] = 0;
    }
    if (k == segs.size()) break;
  }
}

NCPoly::Terms sandwich(const GeneratorSet& gens, const Word& left, const NCPoly& r, const Word& right) {
  NCPoly::Terms out;
  for (const auto& [w, c] : r.terms()) {
    Word full = multiply_words(gens, multiply_words(gens, left, w), right);
    auto [it, inserted] = out.try_emplace(std::move(full), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

std::set<int> touched_factors(const GeneratorSet& gens, const NCPoly& r) {
  std::set<int> f;
  for (const auto& [w, c] : r.terms())
    for (Gen g : w) f.insert(gens.factor(g));
  return f;
}

struct LevelOutcome {
  bool certified = false;
  bool budget_exhausted = false;
  std::size_t degree = 0;
  std::size_t span = 0;
  std::vector<CertificateTerm> certificate;
};

// One homogeneous component against one generator/relation restriction.
LevelOutcome certify_component(const NCPoly::Terms& comp, const Weight& weight, const GeneratorSet& gens,
                               const RelationSet& rels, const std::vector<std::size_t>& rel_idx,
                               const Grading& gr, const WordEnumerator& words,
                               const std::vector<std::set<int>>& touched, std::size_t start_degree,
                               const MembershipOptions& opts) {
  LevelOutcome out;
  Echelon ech(true);
  std::vector<Candidate> cands;
  std::set<std::tuple<Word, std::size_t, Word>> seen;
  if (opts.free_constant && std::all_of(weight.begin(), weight.end(), [](long x) { return x == 0; })) {
    cands.push_back({{}, kFreeConstant, {}});
    NCPoly::Terms one;
    one.emplace(Word{}, Scalar(1));
    ech.insert(std::move(one), Combo{{0, Scalar(1)}});
  }
  for (std::size_t d = start_degree; d <= opts.max_degree; ++d) {
    for (std::size_t ri : rel_idx) {
      const NCPoly& r = rels.relations[ri];
      const std::size_t rd = r.degree();
      if (rd > d) continue;
      // border lengths not yet covered at smaller truncations
      const std::size_t lo = d == start_degree ? 0 : d - rd;
      const std::size_t hi = d - rd;
      Weight target = weight;
      const Weight rw = gr.of(r.terms().begin()->first);
      for (std::size_t c = 0; c < target.size(); ++c) target[c] -= rw[c];
      for (std::size_t len = lo; len <= hi; ++len) {
        const bool ok = words.each(len, target, [&](const Word& s) {
          for_each_split(gens, s, touched[ri], [&](const Word& left, const Word& right) {
            if (!seen.emplace(left, ri, right).second) return;
            cands.push_back({left, ri, right});
            ech.insert(sandwich(gens, left, r, right), Combo{{cands.size() - 1, Scalar(1)}});
          });
          return cands.size() <= opts.candidate_budget;
        });
        if (!ok) {
          out.budget_exhausted = true;
          out.degree = d;
          out.span = ech.rank();
          return out;
        }
      }
    }
    NCPoly::Terms rest = comp;
    Combo combo;
    ech.reduce(rest, combo);
    out.degree = d;
    out.span = ech.rank();
    if (rest.empty()) {
      out.certified = true;
      for (const auto& [k, c] : combo) out.certificate.push_back({cands[k].left, cands[k].relation, cands[k].right, c});
      return out;
    }
  }
  return out;
}

}  // namespace

MembershipResult reduce_mod_ideal(const NCPoly& p, const RelationSet& rels, std::size_t max_degree) {
  MembershipOptions opts;
  opts.max_degree = max_degree;
  return reduce_mod_ideal(p, rels, opts);
}

MembershipResult reduce_mod_ideal(const NCPoly& p, const RelationSet& rels, const MembershipOptions& opts) {
  MembershipResult result;
  for (const auto& [w, c] : p.terms()) {
    if (w.size() > opts.max_degree) {
      throw DegreeOverflow("word " + word_text(*p.generators(), w) + " has degree " + std::to_string(w.size()) +
                           " > max_degree " + std::to_string(opts.max_degree));
    }
  }
  if (p.is_zero()) {
    result.is_zero = true;
    return result;
  }
  GenSetPtr gens_ptr = p.generators();
  for (const auto& r : rels.relations) {
    if (!gens_ptr) gens_ptr = r.generators();
    if (r.generators() && gens_ptr && r.generators() != gens_ptr) {
      throw AlgebraError("relation set and polynomial use different generator sets");
    }
  }
  if (!gens_ptr) {
    // constant p with constant-only relations
    gens_ptr = std::make_shared<GeneratorSet>();
  }
  const GeneratorSet& gens = *gens_ptr;

  std::vector<std::set<int>> touched;
  for (const auto& r : rels.relations) touched.push_back(touched_factors(gens, r));

  std::set<std::size_t> p_families;
  for (const auto& [w, c] : p.terms())
    for (Gen g : w) p_families.insert(gens.family_of(g));

  std::vector<NCPoly::Terms> pending{p.terms()};
  for (int level = 0; level <= 1 && !pending.empty(); ++level) {
    std::vector<Gen> allowed;
    for (Gen g = 0; g < gens.size(); ++g) {
      if (level == 1 || p_families.count(gens.family_of(g))) allowed.push_back(g);
    }
    std::vector<bool> ok(gens.size(), false);
    for (Gen g : allowed) ok[g] = true;
    std::vector<std::size_t> rel_idx;
    std::vector<const NCPoly*> rel_ptrs;
    for (std::size_t i = 0; i < rels.relations.size(); ++i) {
      const auto& r = rels.relations[i];
      if (r.is_zero()) continue;
      bool inside = true;
      for (const auto& [w, c] : r.terms())
        for (Gen g : w) inside = inside && ok[g];
      if (!inside) continue;
      rel_idx.push_back(i);
      rel_ptrs.push_back(&r);
    }
    if (level == 1) {
      if (opts.restrict_to_occurring_families) break;
      if (p_families.size() == gens.families().size()) break;  // would repeat level 0
    }
    const Grading gr = compute_grading(gens, allowed, rel_ptrs);
    const WordEnumerator words(gens, allowed, gr);

    std::vector<NCPoly::Terms> still;
    for (const auto& part : pending) {
      std::map<Weight, NCPoly::Terms> comps;
      for (const auto& [w, c] : part) comps[gr.of(w)].emplace(w, c);
      NCPoly::Terms failed;
      for (const auto& [weight, comp] : comps) {
        const std::size_t start = std::max<std::size_t>(comp.rbegin()->first.size(), 1);
        LevelOutcome lo = certify_component(comp, weight, gens, rels, rel_idx, gr, words, touched,
                                            std::min(start, opts.max_degree), opts);
        result.degree = std::max(result.degree, lo.degree);
        result.span_size += lo.span;
        result.budget_exhausted = result.budget_exhausted || lo.budget_exhausted;
        if (lo.certified) {
          result.level = std::max(result.level, level);
          for (auto& t : lo.certificate) result.certificate.push_back(std::move(t));
        } else {
          for (const auto& [w, c] : comp) failed.emplace(w, c);
        }
      }
      if (!failed.empty()) still.push_back(std::move(failed));
    }
    pending = std::move(still);
    if (!pending.empty()) result.level = level;
  }
  result.is_zero = pending.empty();
  if (!result.is_zero) result.certificate.clear();
  return result;
}

NCPoly replay_certificate(const std::vector<CertificateTerm>& cert, const RelationSet& rels) {
  NCPoly out;
  for (const auto& t : cert) {
    if (t.relation == kFreeConstant) {
      out += NCPoly(nullptr, t.coefficient);
      continue;
    }
    const NCPoly& r = rels.relations.at(t.relation);
    const GenSetPtr& g = r.generators();
    out += NCPoly::monomial(g, t.left, t.coefficient) * r * NCPoly::monomial(g, t.right);
  }
  return out;
}

std::size_t span_dimension(const std::vector<NCPoly>& ps) { return independent_subset(ps).size(); }

std::vector<std::size_t> independent_subset(const std::vector<NCPoly>& ps) {
  Echelon ech(false);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ech.insert(ps[i].terms(), {})) keep.push_back(i);
  }
  return keep;
}

std::size_t truncated_span_dimension(const RelationSet& rels, std::size_t max_degree) {
  GenSetPtr gens_ptr;
  for (const auto& r : rels.relations)
    if (r.generators()) gens_ptr = r.generators();
  if (!gens_ptr) return span_dimension(rels.relations);
  const GeneratorSet& gens = *gens_ptr;
  std::vector<Gen> all(gens.size());
  for (Gen g = 0; g < gens.size(); ++g) all[g] = g;
  Grading trivial;
  trivial.gen_weight.assign(gens.size(), Weight{});
  const WordEnumerator words(gens, all, trivial);
  Echelon ech(false);
  for (const auto& r : rels.relations) {
    if (r.is_zero() || r.degree() > max_degree) continue;
    const auto touched = touched_factors(gens, r);
    for (std::size_t len = 0; len + r.degree() <= max_degree; ++len) {
      words.each(len, Weight{}, [&](const Word& s) {
        for_each_split(gens, s, touched,
                       [&](const Word& left, const Word& right) { ech.insert(sandwich(gens, left, r, right), {}); });
        return true;
      });
    }
  }
  return ech.rank();
}

}  // namespace coboundary
