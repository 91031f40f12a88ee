#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "coboundary/classical.hpp"
#include "coboundary/cli.hpp"
#include "coboundary/hopf.hpp"
#include "coboundary/quantum.hpp"
#include "common/parallel.hpp"

namespace coboundary {

namespace {

Tensor translation_point(const CheckConfig& c) {
  if (c.g0 == "identity") return Tensor::identity(c.n);
  if (c.g0 == "epsilon") return total_permutation_matrix(c.n) * epsilon_for(static_cast<int>(c.n));
  throw UsageError("g0 must be 'epsilon' or 'identity'");
}

void require_n(const CheckConfig& c, std::size_t lo, std::size_t hi) {
  if (c.n < lo || c.n > hi)
    throw UsageError(c.check + " requires " + std::to_string(lo) + " <= n <= " + std::to_string(hi));
}

void require_samples(const CheckConfig& c) {
  if (c.samples == 0 || c.samples > 1000) throw UsageError("samples must be in 1..1000");
}

// Adds the polynomial-identity versions for n = 2 as extra sub-checks.
void add_symbolic(CheckReport& rep, const CheckConfig& c, const Bivector& r, const std::vector<std::string>& prefixes) {
  if (c.n != 2) {
    rep.note("symbolic cross-check", Json("runs for n = 2 only"));
    return;
  }
  for (const auto& s : symbolic_identities(r, translation_point(c))) {
    const bool wanted = std::any_of(prefixes.begin(), prefixes.end(),
                                    [&](const std::string& p) { return s.identity.rfind(p, 0) == 0; });
    if (!wanted) continue;
    Json d = Json::object();
    if (!s.holds) {
      d["witness"] = s.witness;
      rep.witness(Json{{"symbolic", s.identity}, {"difference", s.witness}});
    }
    rep.record("symbolic: " + s.identity, s.holds, d);
  }
}

CheckReport run_multiplicativity(const CheckConfig& c) {
  require_n(c, 2, 6);
  require_samples(c);
  const Bivector r = standard_r(c.n);
  SampleStream s(c.n, c.seed);
  CheckReport rep = check_multiplicativity(r, s.pairs(c.samples));
  add_symbolic(rep, c, r, {"pi(gh)"});
  return rep;
}

CheckReport run_antipode(const CheckConfig& c) {
  require_n(c, 2, 6);
  require_samples(c);
  const Bivector r = standard_r(c.n);
  SampleStream s(c.n, c.seed);
  CheckReport rep = check_antipode(r, s.points(c.samples));
  add_symbolic(rep, c, r, {"adj(g)"});
  return rep;
}

CheckReport run_gauge_classical(const CheckConfig& c) {
  require_n(c, 2, 6);
  require_samples(c);
  const Bivector r = standard_r(c.n);
  SampleStream s(c.n, c.seed);
  CheckReport rep = check_gauge_identity(r, Scalar(2) * r, s.triples(c.samples));
  for (auto& sc : rep.subchecks) sc["name"] = sc["name"].get<std::string>() + ", rho = pi_plus";
  // Arbitrary offsets: the left identity always holds, the right one needs A - 2r invariant.
  for (std::size_t k = 0; k < 5; ++k) {
    const Bivector A = s.next_bivector(r.basis());
    const CheckReport sub = check_gauge_identity(r, A, s.triples(5));
    const std::string tag = "offset " + std::to_string(k);
    rep.record("rho(xy) = pi(x)y + x rho(y), " + tag, sub.subchecks[1]["status"] == "pass");
    const bool right_failed = sub.subchecks[2]["status"] == "fail";
    Json d = Json::object();
    if (right_failed) {
      for (const auto& w : sub.witnesses)
        if (w["identity"] == sub.subchecks[2]["name"]) d = w;
      Json w = d;
      w["offset"] = k;
      rep.witness(std::move(w));
    }
    rep.record("rho(yz) = rho(y)z - y pi(z) fails, " + tag, right_failed, d);
  }
  add_symbolic(rep, c, r, {"rho("});
  rep.params["offsets"] = 5;
  return rep;
}

CheckReport run_translation(const CheckConfig& c) {
  require_n(c, 2, 6);
  require_samples(c);
  const Bivector r = standard_r(c.n);
  SampleStream s(c.n, c.seed);
  CheckReport rep = check_translation(r, translation_point(c), s.points(c.samples));
  rep.params["g0"] = c.g0 == "identity" ? "identity" : "epsilon*antidiagonal";
  add_symbolic(rep, c, r, {"pi(g g0)"});
  return rep;
}

CheckReport run_hopf(const CheckConfig& c) {
  HopfData h;
  if (c.algebra.size() > 5 && c.algebra.substr(c.algebra.size() - 5) == ".json") {
    std::ifstream in(c.algebra);
    if (!in) throw UsageError("cannot read algebra file " + c.algebra);
    try {
      h = load_hopf(Json::parse(in));
    } catch (const HopfAxiomError& e) {
      throw UsageError(std::string("invalid Hopf algebra: ") + e.what());
    } catch (const Json::exception& e) {
      throw UsageError(std::string("bad algebra JSON: ") + e.what());
    }
  } else {
    h = hopf_catalog(c.algebra);
  }
  return check_hopf_chain(h, c.seed);
}

G0Choice quantum_g0(const CheckConfig& c) {
  if (c.g0 == "identity") return G0Choice::identity;
  if (c.g0 == "epsilon") return G0Choice::epsilon_antidiagonal;
  throw UsageError("g0 must be 'epsilon' or 'identity'");
}

bool from(std::size_t n, std::size_t lo, std::size_t hi) { return n >= lo && n <= hi; }

std::vector<RegistryEntry> build_registry() {
  std::vector<RegistryEntry> r;
  auto add = [&](std::string name, std::string summary, std::function<CheckReport(const CheckConfig&)> run,
                 std::function<bool(std::size_t)> in_suite) {
    r.push_back({std::move(name), std::move(summary), std::move(run), std::move(in_suite)});
  };
  add("schouten", "[r,r] of the standard r-matrix is ad-invariant",
      [](const CheckConfig& c) { require_n(c, 2, 6); return check_schouten(c.n); },
      [](std::size_t n) { return from(n, 2, 4); });
  add("multiplicativity", "pi(gh) = pi(g)h + g pi(h) at seeded samples", run_multiplicativity,
      [](std::size_t n) { return from(n, 2, 4); });
  add("antipode", "g^-1 pi(g) g^-1 = -pi(g^-1) at seeded samples", run_antipode,
      [](std::size_t n) { return from(n, 2, 4); });
  add("gauge-classical", "gauge identities for rho = pi + gA", run_gauge_classical,
      [](std::size_t n) { return from(n, 2, 4); });
  add("translation", "g0 r g0^-1 = -r, pi_plus(g0) = 0, pi(g g0) = pi_plus(g) g0", run_translation,
      [](std::size_t n) { return from(n, 2, 4); });
  add("jacobi", "Jacobi identity of the coordinate Poisson brackets",
      [](const CheckConfig& c) { require_n(c, 2, 3); return jacobi_check(standard_r(c.n)); },
      [](std::size_t n) { return from(n, 2, 3); });
  add("qybe", "quantum Yang-Baxter equation for the standard R",
      [](const CheckConfig& c) { require_n(c, 2, 6); return check_qybe(c.n); },
      [](std::size_t n) { return from(n, 2, 5); });
  add("eq22", "(g0 x g0) R (g0 x g0)^-1 = P R P",
      [](const CheckConfig& c) { require_n(c, 2, 6); return check_eq22(c.n, quantum_g0(c)); },
      [](std::size_t n) { return from(n, 2, 5); });
  add("volume-element", "q-antisymmetric volume element and its reversal",
      [](const CheckConfig& c) { require_n(c, 1, 6); return check_volume_element(c.n); },
      [](std::size_t n) { return from(n, 1, 5); });
  add("eq17-frt", "FRT relations against the volume and unitarity relations (n = 2)",
      [](const CheckConfig& c) { return check_eq17_frt(c.n, c.max_degree); },
      [](std::size_t n) { return n == 2; });
  add("gauge-quantum", "R(v T v) - (v T v) R~ lies in the ideal, with certificates",
      [](const CheckConfig& c) { require_n(c, 2, 3); return check_quantum_gauge(c.n, c.max_degree, c.negative_control); },
      [](std::size_t n) { return n == 2; });
  add("iso-20-21", "u = eps w P maps the defining relations of A and B onto each other",
      [](const CheckConfig& c) { require_n(c, 2, 3); return check_isomorphism(c.n, c.max_degree); },
      [](std::size_t n) { return from(n, 2, 3); });
  add("inverse-volume", "the inverse matrix applied to the reversed volume element",
      [](const CheckConfig& c) { require_n(c, 2, 3); return check_inverse_volume(c.n, c.max_degree); },
      [](std::size_t n) { return from(n, 2, 3); });
  add("eq18-derive", "twisted FRT relations derived from the untwisted ones",
      [](const CheckConfig& c) { require_n(c, 2, 3); return check_eq18_derive(c.n, c.max_degree); },
      [](std::size_t n) { return n == 2; });
  add("hopf", "R-matrix solver and the full condition chain on a Hopf algebra", run_hopf,
      [](std::size_t) { return true; });
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return r;
}

std::size_t parse_size(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<std::size_t>(x);
  } catch (const std::exception&) {
    throw UsageError("bad value for " + key + ": '" + v + "'");
  }
}

void apply_override(CheckConfig& c, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw UsageError("override '" + kv + "' is not key=value");
  const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
  if (k == "n") c.n = parse_size(k, v);
  else if (k == "max_degree" || k == "max-degree") c.max_degree = parse_size(k, v);
  else if (k == "seed") c.seed = parse_size(k, v);
  else if (k == "samples") c.samples = parse_size(k, v);
  else if (k == "algebra") c.algebra = v;
  else if (k == "g0") c.g0 = v;
  else if (k == "negative_control") c.negative_control = v != "false" && v != "0";
  else throw UsageError("unknown override key '" + k + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

}  // namespace

std::string CheckConfig::key() const {
  std::ostringstream os;
  os << check << " n=" << n << " max_degree=" << max_degree << " seed=" << seed << " samples=" << samples
     << " algebra=" << algebra << " g0=" << g0;
  return os.str();
}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> r = build_registry();
  return r;
}

std::string registry_listing() {
  std::string s = "available checks:\n";
  for (const auto& e : registry()) s += "  " + e.name + std::string(e.name.size() < 18 ? 18 - e.name.size() : 1, ' ') + e.summary + "\n";
  return s;
}

CheckReport run_check(const CheckConfig& config) {
  const auto& reg = registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.name == config.check; });
  if (it == reg.end()) throw UsageError("unknown check '" + config.check + "'\n" + registry_listing());
  if (config.max_degree < 2 || config.max_degree > 12) throw UsageError("max-degree must be in 2..12");
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport rep = it->run(config);
  rep.check = config.check;
  rep.params["seed"] = config.seed;
  if (config.timing)
    rep.details["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<CheckConfig> expand_suite(const std::string& spec, const CheckConfig& shared) {
  std::vector<CheckConfig> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item == "all") {
      for (const auto& e : registry()) {
        if (!e.in_suite(shared.n)) continue;
        CheckConfig c = shared;
        c.check = e.name;
        out.push_back(c);
      }
      continue;
    }
    // name[:k=v[:k=v...]]
    std::stringstream parts(item);
    std::string part;
    std::getline(parts, part, ':');
    CheckConfig c = shared;
    c.check = trim(part);
    while (std::getline(parts, part, ':')) apply_override(c, trim(part));
    out.push_back(c);
  }
  return out;
}

SuiteResult run_suite(const std::vector<CheckConfig>& configs, const Json& meta) {
  std::vector<CheckConfig> sorted = configs;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
  const auto reports = detail::parallel_map(sorted.size(), [&](std::size_t k) {
    try {
      return run_check(sorted[k]);
    } catch (const UsageError& e) {
      CheckReport rep;
      rep.check = sorted[k].check;
      rep.params["n"] = sorted[k].n;
      rep.record("usage", false, Json{{"error", e.what()}});
      return rep;
    }
  });
  return aggregate(sorted, reports, meta);
}

SuiteResult aggregate(const std::vector<CheckConfig>& configs, const std::vector<CheckReport>& reports,
                      const Json& meta) {
  SuiteResult res;
  Json checks = Json::array();
  Json table = Json::array();
  std::ostringstream summary;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    checks.push_back(reports[k].to_json());
    const std::string st = status_text(reports[k].status);
    table.push_back({{"check", reports[k].check}, {"params", reports[k].params}, {"status", st}});
    std::string label = st;
    std::transform(label.begin(), label.end(), label.begin(), [](unsigned char ch) { return std::toupper(ch); });
    summary << label << "  " << configs[k].key() << "\n";
    if (!reports[k].passed()) res.exit_code = 1;
  }
  res.document = meta;
  res.document["version"] = kToolkitVersion;
  res.document["timestamp"] = nullptr;
  res.document["checks"] = checks;
  res.document["summary"] = table;
  res.summary = summary.str();
  return res;
}

}  // namespace coboundary
