#include "gabriel/cli.hpp"

#include "gabriel/completion.hpp"
#include "gabriel/delta.hpp"
#include "gabriel/errors.hpp"
#include "gabriel/quotients.hpp"
#include "gabriel/sflat.hpp"
#include "gabriel/topology.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <set>

namespace gabriel::cli {

namespace {

using json = nlohmann::ordered_json;

struct ParseFailure {
  std::string location;
  std::string message;
};

[[noreturn]] void parse_fail(const std::string& at, const std::string& msg) { throw ParseFailure{at.empty() ? "/" : at, msg}; }

void allow_keys(const json& j, const std::string& at, std::initializer_list<const char*> keys) {
  if (!j.is_object()) parse_fail(at, "expected an object");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) parse_fail(at + "/" + k, "unknown field '" + k + "'");
}

const json& field(const json& j, const std::string& at, const char* key) {
  if (!j.contains(key)) parse_fail(at, std::string("missing field '") + key + "'");
  return j.at(key);
}

Integer integer_at(const json& j, const std::string& at) {
  try {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) return parse_integer(j.get<std::string>());
  } catch (const Error& e) {
    parse_fail(at, e.detail());
  }
  parse_fail(at, "expected an integer");
}

std::size_t count_at(const json& j, const std::string& at) {
  if (!j.is_number_unsigned()) parse_fail(at, "expected a non-negative integer");
  return j.get<std::size_t>();
}

Element element_at(const Ring& r, const json& j, const std::string& at) {
  if (j.is_number_integer()) return Element::from_int(r, Integer(j.get<long long>()));
  if (!j.is_string()) parse_fail(at, "expected an element literal");
  try {
    return parse_element(r, j.get<std::string>());
  } catch (const Error& e) {
    parse_fail(at, e.detail());
  }
}

Ring ring_at(const json& j, const std::string& at) {
  const std::string cls = field(j, at, "class").is_string() ? j.at("class").get<std::string>() : "";
  if (cls == "integers") {
    allow_keys(j, at, {"class"});
    return Ring::integers();
  }
  if (cls == "integers_mod") {
    allow_keys(j, at, {"class", "modulus"});
    return Ring::integers_mod(integer_at(field(j, at, "modulus"), at + "/modulus"));
  }
  if (cls == "poly") {
    allow_keys(j, at, {"class", "characteristic"});
    return Ring::poly(integer_at(field(j, at, "characteristic"), at + "/characteristic"));
  }
  if (cls == "quadratic") {
    allow_keys(j, at, {"class", "d"});
    return Ring::quadratic(integer_at(field(j, at, "d"), at + "/d"));
  }
  if (cls == "upper_triangular") {
    allow_keys(j, at, {"class", "p"});
    return Ring::upper_triangular(integer_at(field(j, at, "p"), at + "/p"));
  }
  parse_fail(at + "/class", "unknown ring class '" + cls + "'");
}

Ideal ideal_at(const Ring& r, const json& j, const std::string& at) {
  if (!j.is_array() || j.empty()) parse_fail(at, "expected a non-empty list of generators");
  std::vector<Element> gens;
  for (std::size_t i = 0; i < j.size(); ++i) gens.push_back(element_at(r, j[i], at + "/" + std::to_string(i)));
  return Ideal(r, std::move(gens));
}

std::vector<Ideal> ideals_at(const Ring& r, const json& j, const std::string& at) {
  if (!j.is_array() || j.empty()) parse_fail(at, "expected a non-empty list of ideals");
  std::vector<Ideal> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(ideal_at(r, j[i], at + "/" + std::to_string(i)));
  return out;
}

struct TopologySpec {
  std::string kind;
  std::vector<Ideal> ideals;  // generator for chains, levels, base ideals or seed
};

TopologySpec topology_at(const Ring& r, const json& j, const std::string& at) {
  const std::string kind = field(j, at, "kind").is_string() ? j.at("kind").get<std::string>() : "";
  if (kind == "chain") {
    allow_keys(j, at, {"kind", "generator"});
    return {kind, {ideal_at(r, field(j, at, "generator"), at + "/generator")}};
  }
  if (kind == "chain_of") {
    allow_keys(j, at, {"kind", "levels"});
    return {kind, ideals_at(r, field(j, at, "levels"), at + "/levels")};
  }
  if (kind == "finite") {
    allow_keys(j, at, {"kind", "ideals"});
    return {kind, ideals_at(r, field(j, at, "ideals"), at + "/ideals")};
  }
  if (kind == "enumerate") {
    allow_keys(j, at, {"kind", "seed"});
    return {kind, ideals_at(r, field(j, at, "seed"), at + "/seed")};
  }
  parse_fail(at + "/kind", "unknown topology kind '" + kind + "'");
}

struct NamedFP {
  std::string name;
  FPModule fp;
};

NamedFP module_at(const Ring& r, const json& j, const std::string& at) {
  allow_keys(j, at, {"name", "side", "generators", "relations"});
  NamedFP m;
  const json& name = field(j, at, "name");
  if (!name.is_string()) parse_fail(at + "/name", "expected a string");
  m.name = name.get<std::string>();
  m.fp.ring = r;
  const std::string side = j.contains("side") && j.at("side").is_string() ? j.at("side").get<std::string>() : "left";
  if (side != "left" && side != "right") parse_fail(at + "/side", "expected 'left' or 'right'");
  m.fp.side = side == "left" ? Side::Left : Side::Right;
  m.fp.generators = count_at(field(j, at, "generators"), at + "/generators");
  if (j.contains("relations")) {
    const json& rels = j.at("relations");
    if (!rels.is_array()) parse_fail(at + "/relations", "expected a list of rows");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const std::string row_at = at + "/relations/" + std::to_string(i);
      if (!rels[i].is_array() || rels[i].size() != m.fp.generators)
        parse_fail(row_at, "expected a row of " + std::to_string(m.fp.generators) + " elements");
      std::vector<Element> row;
      for (std::size_t c = 0; c < rels[i].size(); ++c) row.push_back(element_at(r, rels[i][c], row_at + "/" + std::to_string(c)));
      m.fp.relations.push_back(std::move(row));
    }
  }
  return m;
}

struct Options {
  std::optional<std::size_t> depth;
  std::optional<unsigned> seed;
  std::optional<std::size_t> budget;
  std::size_t rounds = 3;
  std::optional<Integer> max_norm;
  std::string witness = "self";
};

struct Document {
  Ring ring = Ring::integers();
  std::optional<TopologySpec> topology;
  std::vector<NamedFP> modules;
  std::optional<ExtensionDatum> extension;
  std::size_t variables = 6;
  unsigned max_power = 4;
  Options options;
};

Document document_at(const json& j) {
  allow_keys(j, "", {"ring", "topology", "modules", "extension", "corrigendum", "options"});
  Document d;
  if (j.contains("ring")) d.ring = ring_at(j.at("ring"), "/ring");
  if (j.contains("topology")) d.topology = topology_at(d.ring, j.at("topology"), "/topology");
  if (j.contains("modules")) {
    const json& ms = j.at("modules");
    if (!ms.is_array()) parse_fail("/modules", "expected a list");
    for (std::size_t i = 0; i < ms.size(); ++i) d.modules.push_back(module_at(d.ring, ms[i], "/modules/" + std::to_string(i)));
  }
  if (j.contains("extension")) {
    const json& e = j.at("extension");
    allow_keys(e, "/extension", {"v", "w", "glue"});
    ExtensionDatum x;
    x.v_rank = count_at(field(e, "/extension", "v"), "/extension/v");
    x.w_rank = count_at(field(e, "/extension", "w"), "/extension/w");
    if (e.contains("glue")) {
      const json& g = e.at("glue");
      if (!g.is_array()) parse_fail("/extension/glue", "expected a list of matrices");
      for (std::size_t m = 0; m < g.size(); ++m) {
        const std::string mat_at = "/extension/glue/" + std::to_string(m);
        if (!g[m].is_array() || g[m].size() != x.w_rank) parse_fail(mat_at, "expected " + std::to_string(x.w_rank) + " rows");
        Matrix c(x.w_rank, x.v_rank);
        for (std::size_t r = 0; r < x.w_rank; ++r) {
          if (!g[m][r].is_array() || g[m][r].size() != x.v_rank)
            parse_fail(mat_at + "/" + std::to_string(r), "expected " + std::to_string(x.v_rank) + " entries");
          for (std::size_t c2 = 0; c2 < x.v_rank; ++c2)
            c(r, c2) = integer_at(g[m][r][c2], mat_at + "/" + std::to_string(r) + "/" + std::to_string(c2));
        }
        x.glue.push_back(std::move(c));
      }
    }
    d.extension = std::move(x);
  }
  if (j.contains("corrigendum")) {
    const json& c = j.at("corrigendum");
    allow_keys(c, "/corrigendum", {"variables", "max_power"});
    if (c.contains("variables")) d.variables = count_at(c.at("variables"), "/corrigendum/variables");
    if (c.contains("max_power")) d.max_power = static_cast<unsigned>(count_at(c.at("max_power"), "/corrigendum/max_power"));
  }
  if (j.contains("options")) {
    const json& o = j.at("options");
    allow_keys(o, "/options", {"depth", "seed", "budget", "rounds", "max_norm", "witness"});
    if (o.contains("depth")) d.options.depth = count_at(o.at("depth"), "/options/depth");
    if (o.contains("seed")) d.options.seed = static_cast<unsigned>(count_at(o.at("seed"), "/options/seed"));
    if (o.contains("budget")) d.options.budget = count_at(o.at("budget"), "/options/budget");
    if (o.contains("rounds")) d.options.rounds = count_at(o.at("rounds"), "/options/rounds");
    if (o.contains("max_norm")) d.options.max_norm = integer_at(o.at("max_norm"), "/options/max_norm");
    if (o.contains("witness")) {
      d.options.witness = o.at("witness").is_string() ? o.at("witness").get<std::string>() : "";
      if (d.options.witness != "self" && d.options.witness != "two_sided" && d.options.witness != "unit")
        parse_fail("/options/witness", "expected 'self', 'two_sided' or 'unit'");
    }
  }
  return d;
}

// Report builders.

json check_json(const Check& c) {
  json j{{"status", to_string(c.status)}};
  if (!c.bound.empty()) j["bound"] = c.bound;
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

json strings(const std::vector<Ideal>& ideals) {
  json j = json::array();
  for (const auto& i : ideals) j.push_back(i.to_string());
  return j;
}

json matrix_json(const Matrix& m) {
  json j = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    j.push_back(std::move(row));
  }
  return j;
}

json groups(const std::vector<Module>& levels) {
  json j = json::array();
  for (const auto& m : levels) j.push_back(m.group().to_string());
  return j;
}

bool has_failure(const json& j) {
  if (j.is_object()) {
    if (j.contains("status") && j.at("status") == "Failed") return true;
    for (const auto& [k, v] : j.items())
      if (has_failure(v)) return true;
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (has_failure(v)) return true;
  }
  return false;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool flat_array(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (x.is_structured()) return false;
  return true;
}

std::string inline_text(const json& v) {
  if (!v.is_structured()) return scalar_text(v);
  if (!flat_array(v)) return v.dump();
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
  return s + "]";
}

bool nests(const json& v) { return v.is_structured() && !v.empty() && !(flat_array(v) && !v.front().is_string()); }

void render_text(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (nests(v)) {
        out << pad << k << ":\n";
        render_text(v, out, indent + 2);
      } else {
        out << pad << k << ": " << inline_text(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (flat_array(v)) {
        out << pad << "- " << inline_text(v) << "\n";
      } else if (nests(v)) {
        out << pad << "-\n";
        render_text(v, out, indent + 2);
      } else {
        out << pad << "- " << inline_text(v) << "\n";
      }
    }
  }
}

struct Context {
  Document doc;
  std::size_t depth = 4;
  unsigned seed = 0;
  std::size_t budget = 256;
};

TopologyBase raw_base(const Context& c, std::size_t chain_depth) {
  if (!c.doc.topology) fail(ErrorKind::InvalidArgument, "the document has no topology");
  const TopologySpec& t = *c.doc.topology;
  if (t.kind == "chain") return chain_base(t.ideals.front(), chain_depth);
  if (t.kind == "chain_of") return chain_of(t.ideals);
  if (t.kind == "finite") return finite_base(t.ideals);
  return full_enumeration(t.ideals);
}

TopologyBase base_of(const Context& c, std::size_t chain_depth) { return check_axioms(raw_base(c, chain_depth)); }

json axioms_json(const TopologyBase& b) {
  json j = json::object();
  for (const auto& [name, check] : b.flags) j[name] = check_json(check);
  return j;
}

std::vector<std::pair<std::string, Module>> modules_of(const Context& c) {
  std::vector<std::pair<std::string, Module>> out;
  for (const auto& m : c.doc.modules) out.emplace_back(m.name, realize(m.fp).module);
  return out;
}

json cmd_check_axioms(const Context& c) {
  const TopologyBase b = base_of(c, c.depth);
  return {{"base", b.to_string()}, {"axioms", axioms_json(b)}};
}

json cmd_saturate(const Context& c) {
  if (!c.doc.topology) fail(ErrorKind::InvalidArgument, "the document has no topology");
  const std::vector<Ideal>& seed = c.doc.topology->ideals;
  const TopologyBase seed_base = raw_base(c, c.depth);
  const WitnessProvider w = c.doc.options.witness == "unit"        ? unit_witness()
                            : c.doc.options.witness == "two_sided" ? two_sided_witness(check_axioms(seed_base))
                                                                   : self_witness();
  const SaturationBudget budget{c.doc.options.rounds, c.budget, c.doc.options.max_norm};
  const Saturation s = saturate(seed, w, budget);
  const Saturation again = saturate(s.base.ideals, w, budget);
  const Check idem = again.base.ideals == s.base.ideals
                         ? Check::verified("second pass with " + std::to_string(budget.rounds) + " rounds")
                         : Check::failed({"second pass added " + std::to_string(again.base.ideals.size() - s.base.ideals.size()) + " ideals"});
  return {{"ideals", strings(s.base.ideals)},
          {"partial", s.partial},
          {"rounds_run", s.rounds_run},
          {"bound", std::to_string(budget.rounds) + " rounds, at most " + std::to_string(budget.max_ideals) + " ideals" +
                        (budget.max_norm ? ", norm at most " + to_string(*budget.max_norm) : "")},
          {"axioms", axioms_json(s.base)},
          {"idempotent", check_json(idem)}};
}

json cmd_quotient_ring(const Context& c) {
  const TopologyBase b = base_of(c, c.depth);
  const QuotientRing u = ring_of_quotients(b, c.depth, c.seed);
  const PerfectReport perfect = check_perfect(b, u);
  json certs = json::array();
  for (const auto& cert : perfect.certificates) certs.push_back(to_string(cert, u));
  return {{"base", b.to_string()},
          {"carrier", u.to_string()},
          {"kind", to_string(u.kind)},
          {"unit_is_homomorphism", check_json(u.unit_is_homomorphism)},
          {"multiplication", check_json(u.multiplication)},
          {"perfect", check_json(perfect.verdict)},
          {"certificates", certs},
          {"multiplication_bijective", check_json(multiplication_bijective(u))}};
}

json contra_json(const ContraTrunc& ct, unsigned seed) {
  std::vector<Module> levels;
  for (const auto& l : ct.levels) levels.push_back(l.module);
  json j{{"top", ct.top.group().to_string()}, {"levels", groups(levels)}, {"monad_laws", check_json(check_monad_laws(ct, seed))}};
  if (!ct.ring.ideals.empty()) {
    const StarReport star = star_subgroup(ct.ring.ideals.front(), ct);
    j["star_contains_product"] = check_json(star.contains);
    j["star_equals_product"] = check_json(star.equal);
  }
  return j;
}

json cmd_complete(const Context& c) {
  const TopologyBase b = base_of(c, c.depth);
  const TruncatedTopRing r = complete_ring(b, c.depth, c.seed);
  json levels = json::array();
  for (const auto& q : r.levels) levels.push_back(q.group.to_string());
  json mods = json::object();
  for (const auto& [name, m] : modules_of(c)) {
    const Completion comp = complete_module(m, b, c.depth);
    json j = contra_json(comp.contra, c.seed);
    j["level_isomorphisms"] = check_json(comp.level_isomorphisms);
    mods[name] = std::move(j);
  }
  return {{"ideals", strings(r.ideals)},
          {"levels", levels},
          {"multiplication", check_json(r.multiplication)},
          {"transitions_surjective", check_json(r.transitions_surjective)},
          {"modules", mods}};
}

KComplex complex_of(const TopologyBase& b, const Context& c, std::size_t depth) {
  return k_complex(ring_of_quotients(b, depth, c.seed));
}

json cmd_delta(const Context& c) {
  const TopologyBase b = base_of(c, c.depth);
  const KComplex k = complex_of(b, c, c.depth);
  json mods = json::object();
  for (const auto& [name, m] : modules_of(c)) {
    const DeltaReport d = delta_module(m, k, c.depth);
    const FiveTermData ft = five_term(m, k, c.depth);
    const Ext2Report e2 = ext2_vanish(k, m);
    json j{{"path", d.path},
           {"delta_levels", groups(d.delta.levels)},
           {"lim1", to_string(d.lim1)},
           {"cross_check", check_json(d.cross_check)},
           {"five_term", {{"path", ft.path},
                          {"exact", check_json(ft.exact)},
                          {"hom_u", to_string(ft.hom_u)},
                          {"delta", to_string(ft.delta)},
                          {"ext1_u", to_string(ft.ext1_u)}}},
           {"ext2_vanish", check_json(e2.vanish)}};
    if (!d.lim1_reason.empty()) j["lim1_reason"] = d.lim1_reason;
    if (!ft.ext1_reason.empty()) j["five_term"]["ext1_reason"] = ft.ext1_reason;
    if (ft.ext2.status != Status::Unchecked) j["five_term"]["ext2"] = check_json(ft.ext2);
    if (!e2.note.empty()) j["ext2_note"] = e2.note;
    mods[name] = std::move(j);
  }
  return {{"carrier", k.u.to_string()}, {"injective", k.injective}, {"bound", "depth " + std::to_string(c.depth)}, {"modules", mods}};
}

json cmd_compare(const Context& c) {
  const TopologyBase b = base_of(c, c.depth);
  const KComplex k = complex_of(b, c, c.depth);
  json mods = json::object();
  for (const auto& [name, m] : modules_of(c)) {
    const BetaTheta bt = beta_theta(m, k, b, c.depth);
    json levels = json::array();
    for (const auto& l : bt.levels)
      levels.push_back({{"delta", l.delta.group().to_string()}, {"lambda", l.lambda.group().to_string()}, {"beta", matrix_json(l.beta)}, {"theta", matrix_json(l.theta)}});
    json j{{"levels", levels},
           {"beta_delta", check_json(bt.beta_delta)},
           {"theta_lambda", check_json(bt.theta_lambda)},
           {"theta_beta", check_json(bt.xi)},
           {"beta_theta", check_json(bt.zeta)},
           {"naturality", check_json(bt.naturality)}};
    if (bt.xi.ok() && bt.zeta.ok()) j["summary"] = "β∘θ = id, θ∘β = id at levels 1.." + std::to_string(bt.levels.size());
    mods[name] = std::move(j);
  }
  return {{"carrier", k.u.to_string()}, {"modules", mods}};
}

json cmd_perp(const Context& c) {
  const TopologyBase b = base_of(c, c.depth);
  const KComplex k = complex_of(b, c, c.depth);
  json mods = json::object();
  for (const auto& [name, m] : modules_of(c)) {
    const PerpReport p = perp_membership(m, k, c.depth);
    json j{{"hom_u", to_string(p.hom_u)}, {"ext1_u", to_string(p.ext1_u)}};
    j["member"] = p.member ? json(*p.member) : json("indeterminate at depth " + std::to_string(c.depth));
    if (p.extension) j["extension"] = *p.extension;
    if (p.prediction.status != Status::Unchecked) j["prediction"] = check_json(p.prediction);
    mods[name] = std::move(j);
  }
  return {{"carrier", k.u.to_string()}, {"modules", mods}};
}

json cmd_endo_ring(const Context& c) {
  const TopologyBase b = base_of(c, c.depth);
  const KComplex k = complex_of(b, c, c.depth);
  const EndoReport e = endo_compare(k, b, c.depth);
  json levels = json::array();
  for (const auto& l : e.levels) levels.push_back({{"ring", to_string(l.ring_size)}, {"endomorphisms", to_string(l.endo_size)}});
  return {{"carrier", k.u.to_string()},
          {"levels", levels},
          {"injective", check_json(e.injective)},
          {"bijective", check_json(e.bijective)},
          {"multiplicative", check_json(e.multiplicative)},
          {"transitions", check_json(e.transitions)},
          {"topology", check_json(e.topology)},
          {"witnesses", e.witnesses}};
}

json flat_json(const StrongFlatReport& r) {
  json q = json::array();
  for (const auto& x : r.quotients)
    q.push_back({{"ideal", x.ideal.to_string()}, {"quotient", x.quotient.to_string()}, {"projective", check_json(x.projective)}});
  json j{{"flat", check_json(r.flat)}, {"tensor", r.tensor.to_string()}, {"tensor_projective", check_json(r.tensor_projective)}, {"quotients", q}};
  if (r.tower) j["sequence"] = check_json(r.tower->exact);
  j["strongly_flat"] = r.strongly_flat();
  return j;
}

json cmd_strongly_flat(const Context& c) {
  const TopologyBase b = base_of(c, c.depth);
  const KComplex k = complex_of(b, c, c.depth);
  json mods = json::object();
  for (const auto& [name, m] : modules_of(c)) {
    json j = flat_json(strongly_flat_check(m, k, c.depth));
    const WeakCotorsionReport w = weakly_cotorsion_check(m, k, c.depth);
    j["weakly_cotorsion"] = {{"ext1_u", to_string(w.ext1)}, {"reason", w.reason}};
    mods[name] = std::move(j);
  }
  json out{{"carrier", k.u.to_string()}, {"modules", mods}};
  if (c.doc.extension) {
    const TopologyBase deep = base_of(c, 2 * c.depth);
    out["extension"] = flat_json(strongly_flat_check(*c.doc.extension, complex_of(deep, c, 2 * c.depth), c.depth));
  }
  return out;
}

json cmd_regress_corrigendum(const Context& c) {
  const CorrigendumReport r = regress_corrigendum(c.doc.variables, c.doc.max_power);
  const std::string bound = std::to_string(r.variables) + " variables, powers up to " + std::to_string(r.max_power);
  const bool facts = r.j0_in_h.ok() && r.colons_in_h.ok() && r.i_not_in_h.ok() && r.t4.status == Status::Failed;
  const Check t4_fails = facts ? Check::verified(bound) : Check::failed({"T4 was not refuted within the bound"}, bound);
  json j{{"bound", bound},
         {"j0_in_filter", check_json(r.j0_in_h)},
         {"colons_in_filter", check_json(r.colons_in_h)},
         {"ideal_not_in_filter", check_json(r.i_not_in_h)},
         {"t4_fails", check_json(t4_fails)}};
  if (!r.t4.witness.empty()) j["t4_witness"] = r.t4.witness;
  if (!r.samples.empty()) j["samples"] = r.samples;
  return j;
}

using Command = json (*)(const Context&);

const std::vector<std::pair<std::string, Command>>& commands() {
  static const std::vector<std::pair<std::string, Command>> table{
      {"check-axioms", cmd_check_axioms}, {"saturate", cmd_saturate},   {"quotient-ring", cmd_quotient_ring},
      {"complete", cmd_complete},         {"delta", cmd_delta},         {"compare", cmd_compare},
      {"perp", cmd_perp},                 {"endo-ring", cmd_endo_ring}, {"strongly-flat", cmd_strongly_flat},
      {"regress-corrigendum", cmd_regress_corrigendum}};
  return table;
}

std::string describe(const std::string& name) {
  static const std::map<std::string, std::string> text = {
      {"check-axioms", "verify the topology axioms T1-T4"},
      {"saturate", "close a finite ideal set under the topology axioms"},
      {"quotient-ring", "ring of quotients and its carrier levels"},
      {"complete", "completion of each module with contramodule checks"},
      {"delta", "Delta functor and the five-term sequence"},
      {"compare", "compare Delta and Lambda level by level"},
      {"perp", "Hom and Ext1 from the carrier to each module"},
      {"endo-ring", "compare the completed ring with truncated endomorphism rings"},
      {"strongly-flat", "strong flatness of modules or an extension datum"},
      {"regress-corrigendum", "reproduce the T4 counterexample on polynomial rings"}};
  return text.at(name);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gabriel topologies, rings of quotients and completions", "gabriel"};
  std::optional<std::size_t> depth;
  std::optional<unsigned> seed;
  std::optional<std::size_t> budget;
  std::string format = "json";
  std::string path;
  app.add_option("--depth", depth, "truncation depth (default 4)");
  app.add_option("--seed", seed, "sample seed (default 0)");
  app.add_option("--budget", budget, "saturation ideal budget (default 256)");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.require_subcommand(1);
  std::vector<CLI::App*> subs;
  for (const auto& [name, cmd] : commands()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->fallthrough();
    auto* opt = sub->add_option("document", path, "fixture document (JSON)");
    if (name != "regress-corrigendum") opt->required();
    subs.push_back(sub);
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  Context ctx;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) {
      err << "error: ParseError at " << path << ": cannot open file\n";
      return kParseError;
    }
    try {
      ctx.doc = document_at(json::parse(in));
    } catch (const json::parse_error& e) {
      err << "error: ParseError at " << path << " byte " << e.byte << ": " << e.what() << "\n";
      return kParseError;
    } catch (const ParseFailure& e) {
      err << "error: ParseError at " << path << "#" << e.location << ": " << e.message << "\n";
      return kParseError;
    }
  }
  ctx.depth = depth.value_or(ctx.doc.options.depth.value_or(4));
  ctx.seed = seed.value_or(ctx.doc.options.seed.value_or(0));
  ctx.budget = budget.value_or(ctx.doc.options.budget.value_or(256));
  if (ctx.depth == 0) {
    err << "error: ParseError at --depth: depth must be positive\n";
    return kParseError;
  }

  std::size_t which = 0;
  while (!subs[which]->parsed()) ++which;
  const auto& [name, cmd] = commands()[which];
  json report{{"subcommand", name}, {"bounds", {{"depth", ctx.depth}, {"seed", ctx.seed}, {"budget", ctx.budget}}}};
  if (!path.empty()) report["ring"] = ctx.doc.ring.to_string();
  try {
    report["result"] = cmd(ctx);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.detail() << "\n";
    return e.kind() == ErrorKind::ParseError ? kParseError : kComputationError;
  }
  const bool failed = has_failure(report["result"]);
  report["verdict"] = failed ? "failed" : "ok";
  if (format == "json") {
    out << report.dump(2) << "\n";
  } else {
    render_text(report, out, 0);
  }
  return failed ? kFailed : kOk;
}

}  // namespace gabriel::cli
