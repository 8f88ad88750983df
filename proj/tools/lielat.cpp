#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lielat/counting.hpp"
#include "lielat/endo.hpp"
#include "lielat/lattice.hpp"
#include "lielat/ssindex.hpp"

using nlohmann::json;
using namespace lielat;

namespace {

// exit-code contract: 0 success/agreement, 1 operational error,
// 2 verified mismatch, 3 precondition violation
constexpr int kOk = 0;
constexpr int kOperationalError = 1;
constexpr int kMismatch = 2;
constexpr int kPrecondition = 3;

struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("LIELAT_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("LIELAT_BUDGET is not a number");
    }
  }
  return kDefaultBudget;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << text;
}

std::string csv_from_records(const json& records) {
  if (!records.is_array() || records.empty()) return "";
  std::ostringstream os;
  const json& first = records[0];
  bool head = true;
  for (auto it = first.begin(); it != first.end(); ++it) {
    if (!head) os << ",";
    os << it.key();
    head = false;
  }
  os << "\n";
  for (const auto& rec : records) {
    bool lead = true;
    for (auto it = rec.begin(); it != rec.end(); ++it) {
      if (!lead) os << ",";
      if (it.value().is_string())
        os << it.value().get<std::string>();
      else
        os << it.value().dump();
      lead = false;
    }
    os << "\n";
  }
  return os.str();
}

// ---- ring selection ------------------------------------------------------

struct RingFlags {
  std::string ring_spec;
  std::uint64_t p = 0;
  int e = 1, f = 1, m = 1;
  std::vector<long long> poly;

  Ring resolve() const {
    if (!ring_spec.empty()) return RingSpec::parse(ring_spec);
    if (p == 0) throw std::invalid_argument("need --ring or --p");
    return RingSpec::make(p, e, f, m, poly);
  }
};

void add_ring_flags(CLI::App* cmd, RingFlags& flags) {
  cmd->add_option("--ring", flags.ring_spec,
                  "ring spec string: p^m, GR(p,m,f):poly, Eis(p,m):poly");
  cmd->add_option("--p", flags.p, "residue characteristic");
  cmd->add_option("--e", flags.e, "ramification index");
  cmd->add_option("--f", flags.f, "inertia degree");
  cmd->add_option("--m", flags.m, "precision");
  cmd->add_option("--poly", flags.poly,
                  "defining polynomial coefficients, constant first");
}

// ---- index records ---------------------------------------------------------

json index_record(const IndexQuery& query, const FieldParams& params,
                  bool bound) {
  json rec;
  rec["kind"] = bound ? "bound" : "index";
  rec["family"] = family_name(query.family);
  rec["l"] = query.l;
  rec["n"] = query.n();
  rec["p"] = params.p;
  rec["e"] = params.e;
  rec["f"] = params.f;
  rec["d"] = params.d;
  rec["q"] = params.q;
  rec["k"] = query.k;
  rec["m"] = query.m;
  rec["level"] = level_name(query.level);
  json pre = json::array();
  for (const auto& v : check_preconditions(query, params))
    pre.push_back(v.constraint + ": " + v.render());
  rec["preconditions"] = pre;
  if (pre.empty())
    rec["value"] = (bound ? min_index_bound(query, params)
                          : ss_index(query, params))
                       .str();
  return rec;
}

json order_record(GroupKind group, int n, const Ring& ring, CountMethod method,
                  std::uint64_t budget) {
  auto start = std::chrono::steady_clock::now();
  OrderResult result;
  switch (method) {
    case CountMethod::formula:
      result = formula_order(group, n, ring->q(), ring->m());
      break;
    case CountMethod::orbit_recursion:
      result = orbit_count(group, n, ring, CnSource::formula, budget);
      break;
    case CountMethod::brute_force:
      result = brute_count(group, n, ring, budget);
      break;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  json rec;
  rec["kind"] = "order";
  rec["group"] = group_name(group);
  rec["n"] = n;
  rec["p"] = ring->p();
  rec["e"] = ring->e();
  rec["f"] = ring->f();
  rec["m"] = ring->m();
  rec["ring"] = ring->describe();
  rec["method"] = method_name(method);
  rec["value"] = result.value.str();
  rec["elapsed_ms"] = elapsed;
  return rec;
}

CountMethod parse_method(const std::string& name) {
  if (name == "formula") return CountMethod::formula;
  if (name == "orbit") return CountMethod::orbit_recursion;
  if (name == "brute") return CountMethod::brute_force;
  throw std::invalid_argument("unknown method: " + name);
}

// ---- replay -----------------------------------------------------------------

json recompute_record(const json& rec, std::uint64_t budget) {
  std::string kind = rec.at("kind");
  if (kind == "index" || kind == "bound") {
    FieldParams params = FieldParams::make(rec.at("p"), rec.at("e"), rec.at("f"));
    IndexQuery query{parse_family(rec.at("family")), rec.at("l"), rec.at("k"),
                     rec.at("m"), parse_level(rec.at("level"))};
    return index_record(query, params, kind == "bound");
  }
  if (kind == "order") {
    CountMethod method = parse_method(rec.at("method"));
    if (method == CountMethod::formula && !rec.contains("ring")) {
      // closed-form rows only need (q, m)
      std::uint64_t q = 1;
      for (int i = 0; i < rec.at("f").get<int>(); ++i)
        q *= rec.at("p").get<std::uint64_t>();
      json out = rec;
      out["value"] =
          formula_order(parse_group(rec.at("group")), rec.at("n"), q, rec.at("m"))
              .value.str();
      return out;
    }
    Ring ring = rec.contains("ring")
                    ? RingSpec::parse(rec.at("ring"))
                    : RingSpec::make(rec.at("p"), rec.at("e"), rec.at("f"),
                                     rec.at("m"));
    return order_record(parse_group(rec.at("group")), rec.at("n"), ring, method,
                        budget);
  }
  if (kind == "cn") {
    json out = rec;
    out["recursion"] = recursion_cn(rec.at("n"), rec.at("q")).str();
    out["closed_form"] = (formula_Cn(rec.at("n"), rec.at("q"), 1) + 1).str();
    return out;
  }
  throw std::invalid_argument("cannot replay record of kind " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lielat: exact orders, self-similarity indices, and graded Lie "
      "lattices over finite quotients of p-adic rings"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t budget;
  try {
    budget = default_budget();
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kOperationalError;
  }
  app.add_option("--budget", budget, "enumeration budget (elements touched)");

  std::string format = "text", out_path;
  app.add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_path, "write output to a file");

  // ---- index -------------------------------------------------------------
  auto* cmd_index = app.add_subcommand("index", "self-similarity indices");
  cmd_index->fallthrough();
  struct {
    std::string family = "sl", level = "group";
    int l = 1, k = 1;
    std::optional<int> m;
    std::uint64_t p = 3;
    int e = 1, f = 1;
    bool bound = false;
  } ix;
  cmd_index->add_option("--family", ix.family, "sl, sp, so_even, so_odd");
  cmd_index->add_option("--l", ix.l, "rank");
  cmd_index->add_option("--k", ix.k, "index parameter k");
  cmd_index->add_option("--m", ix.m, "congruence level (default e)");
  cmd_index->add_option("--p", ix.p, "residue characteristic");
  cmd_index->add_option("--e", ix.e, "ramification index");
  cmd_index->add_option("--f", ix.f, "inertia degree");
  cmd_index->add_option("--level", ix.level, "group, congruence, or lattice");
  cmd_index->add_flag("--min-bound", ix.bound,
                      "evaluate the minimal-index upper bound instead");
  cmd_index->callback([&] {
    FieldParams params = FieldParams::make(ix.p, ix.e, ix.f);
    IndexQuery query{parse_family(ix.family), ix.l, ix.k,
                     ix.m.value_or(params.e), parse_level(ix.level)};
    auto violations = check_preconditions(query, params);
    if (!violations.empty()) throw PreconditionError(std::move(violations));
    json rec = index_record(query, params, ix.bound);
    if (format == "json") {
      write_output(json::array({rec}).dump(2), out_path);
    } else {
      write_output(rec["value"].get<std::string>(), out_path);
    }
  });

  // ---- order -------------------------------------------------------------
  auto* cmd_order = app.add_subcommand("order", "group orders over R/P^m");
  cmd_order->fallthrough();
  struct {
    std::string group = "O", method = "formula";
    int n = 3;
    RingFlags ring;
  } od;
  cmd_order->add_option("--group", od.group, "O, SO, SL, Sp");
  cmd_order->add_option("--n", od.n, "matrix size");
  cmd_order->add_option("--method", od.method, "formula, orbit, brute");
  add_ring_flags(cmd_order, od.ring);
  cmd_order->callback([&] {
    Ring ring = od.ring.resolve();
    json rec = order_record(parse_group(od.group), od.n, ring,
                            parse_method(od.method), budget);
    if (format == "json")
      write_output(json::array({rec}).dump(2), out_path);
    else
      write_output(rec["value"].get<std::string>(), out_path);
  });

  // ---- verify ------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "cross-check computations");
  cmd_verify->fallthrough();
  cmd_verify->require_subcommand(1);

  auto* v_order = cmd_verify->add_subcommand("order", "compare counting methods");
  v_order->fallthrough();
  struct {
    std::string group = "O", methods = "formula,orbit,brute";
    int n = 3;
    RingFlags ring;
  } vo;
  v_order->add_option("--group", vo.group);
  v_order->add_option("--n", vo.n);
  v_order->add_option("--methods", vo.methods, "comma-separated method list");
  add_ring_flags(v_order, vo.ring);
  v_order->callback([&] {
    Ring ring = vo.ring.resolve();
    GroupKind group = parse_group(vo.group);
    std::vector<json> records;
    std::stringstream ss(vo.methods);
    std::string name;
    std::ostringstream text;
    while (std::getline(ss, name, ','))
      records.push_back(order_record(group, vo.n, ring, parse_method(name), budget));
    bool agree = true;
    for (const auto& rec : records) {
      agree = agree && rec["value"] == records[0]["value"];
      text << rec["method"].get<std::string>() << " "
           << rec["value"].get<std::string>() << "\n";
    }
    if (format == "json")
      write_output(json(records).dump(2), out_path);
    else
      write_output(text.str() + (agree ? "agree\n" : "MISMATCH\n"), out_path);
    if (!agree) throw Mismatch("counting methods disagree");
  });

  auto* v_escape = cmd_verify->add_subcommand(
      "escape", "exhaustive escape witnesses over coset representatives");
  v_escape->fallthrough();
  struct {
    std::string family = "sl";
    std::string ring_spec;
    int n = 3, k = 1, m = 0;
    std::uint64_t p = 0;
    int e = 1, f = 1;
    std::vector<long long> poly;
  } ve;
  v_escape->add_option("--family", ve.family);
  v_escape->add_option("--n", ve.n);
  v_escape->add_option("--k", ve.k);
  v_escape->add_option("--m", ve.m, "scale exponent m of pi^m L");
  v_escape->add_option("--ring", ve.ring_spec, "base field data as a ring spec");
  v_escape->add_option("--p", ve.p);
  v_escape->add_option("--e", ve.e);
  v_escape->add_option("--f", ve.f);
  v_escape->add_option("--poly", ve.poly);
  v_escape->callback([&] {
    if (ve.p == 0 && ve.ring_spec.empty())
      throw std::invalid_argument("need --ring or --p");
    // the sweep picks its own working precision; only p, e, f matter here
    Ring ring = ve.ring_spec.empty()
                    ? RingSpec::make(ve.p, ve.e, ve.f,
                                     std::max(1, ve.m + 2 * ve.k + 2), ve.poly)
                    : RingSpec::parse(ve.ring_spec);
    GradedLattice lat = GradedLattice::build(parse_family(ve.family), ve.n, ring);
    WeightEndo endo = diag_weights(lat, ve.k);
    SweepResult sweep = exhaustive_escape_sweep(lat, endo, ve.m);
    std::ostringstream text;
    text << "tested " << sweep.tested << " representatives\n";
    if (format == "json") {
      json rec{{"kind", "escape"},
               {"family", ve.family},
               {"n", ve.n},
               {"k", ve.k},
               {"m", ve.m},
               {"ring", ring->describe()},
               {"tested", sweep.tested},
               {"ok", sweep.all_ok}};
      write_output(json::array({rec}).dump(2), out_path);
    } else {
      write_output(text.str() + (sweep.all_ok ? "all escaped\n"
                                              : "FAILED: " + sweep.failure + "\n"),
                   out_path);
    }
    if (!sweep.all_ok) throw Mismatch(sweep.failure);
  });

  auto* v_structure =
      cmd_verify->add_subcommand("structure", "grading axioms of a family");
  struct {
    std::string family = "sl";
    int n = 3;
    RingFlags ring;
  } vs;
  v_structure->add_option("--family", vs.family);
  v_structure->add_option("--n", vs.n);
  add_ring_flags(v_structure, vs.ring);
  v_structure->callback([&] {
    if (vs.ring.p == 0 && vs.ring.ring_spec.empty())
      throw std::invalid_argument("need --ring or --p");
    Ring ring = vs.ring.resolve();
    GradedLattice lat = GradedLattice::build(parse_family(vs.family), vs.n, ring);
    StructureReport report = lat.verify_structure();
    std::ostringstream text;
    json records = json::array();
    for (const auto& prop : report.properties) {
      text << "property " << prop.id << " (" << prop.name << "): "
           << (prop.pass ? "pass" : "FAIL " + prop.detail) << "\n";
      records.push_back({{"kind", "structure"},
                         {"property", prop.id},
                         {"name", prop.name},
                         {"pass", prop.pass},
                         {"detail", prop.detail}});
    }
    write_output(format == "json" ? records.dump(2) : text.str(), out_path);
    if (!report.all_pass()) throw Mismatch("structure axiom failed");
  });

  // ---- lattice ------------------------------------------------------------
  auto* cmd_lattice = app.add_subcommand("lattice", "dump a graded lattice");
  cmd_lattice->fallthrough();
  struct {
    std::string family = "sl";
    int n = 3;
    RingFlags ring;
  } lt;
  cmd_lattice->add_option("--family", lt.family);
  cmd_lattice->add_option("--n", lt.n);
  add_ring_flags(cmd_lattice, lt.ring);
  cmd_lattice->callback([&] {
    if (lt.ring.p == 0 && lt.ring.ring_spec.empty())
      throw std::invalid_argument("need --ring or --p");
    Ring ring = lt.ring.resolve();
    GradedLattice lat = GradedLattice::build(parse_family(lt.family), lt.n, ring);
    write_output(lat.to_json(), out_path);
  });

  // ---- tables ------------------------------------------------------------
  auto* cmd_tables = app.add_subcommand("tables", "reproduction tables");
  cmd_tables->fallthrough();
  cmd_tables->require_subcommand(1);

  auto* t_thmd = cmd_tables->add_subcommand("thmD", "orthogonal orders grid");
  t_thmd->fallthrough();
  struct {
    std::uint64_t p = 3;
    int f = 1;
    int n_max = 4, m_max = 2;
  } td;
  t_thmd->add_option("--p", td.p);
  t_thmd->add_option("--f", td.f);
  t_thmd->add_option("--n-max", td.n_max);
  t_thmd->add_option("--m-max", td.m_max);
  t_thmd->callback([&] {
    FieldParams params = FieldParams::make(td.p, 1, td.f);
    json records = json::array();
    for (int n = 1; n <= td.n_max; ++n)
      for (int m = 1; m <= td.m_max; ++m)
        for (GroupKind g : {GroupKind::O, GroupKind::SO}) {
          OrderResult result = formula_order(g, n, params.q, m);
          records.push_back({{"kind", "order"},
                             {"group", group_name(g)},
                             {"n", n},
                             {"p", td.p},
                             {"e", 1},
                             {"f", td.f},
                             {"m", m},
                             {"method", "formula"},
                             {"value", result.value.str()}});
        }
    write_output(format == "json" ? records.dump(2) : csv_from_records(records),
                 out_path);
  });

  auto* t_thma = cmd_tables->add_subcommand("thmA", "self-similarity index grid");
  t_thma->fallthrough();
  struct {
    std::uint64_t p = 3;
    int e = 1, f = 1;
    int l_max = 2, k_max = 2, m_max = 0;
  } ta;
  t_thma->add_option("--p", ta.p);
  t_thma->add_option("--e", ta.e);
  t_thma->add_option("--f", ta.f);
  t_thma->add_option("--l-max", ta.l_max);
  t_thma->add_option("--k-max", ta.k_max);
  t_thma->add_option("--m-max", ta.m_max, "defaults to e + 1");
  t_thma->callback([&] {
    FieldParams params = FieldParams::make(ta.p, ta.e, ta.f);
    int m_max = ta.m_max > 0 ? ta.m_max : params.e + 1;
    json records = json::array();
    for (Family fam : {Family::sl, Family::sp, Family::so_even, Family::so_odd})
      for (int l = 1; l <= ta.l_max; ++l)
        for (int k = 1; k <= ta.k_max; ++k)
          for (int m = params.e; m <= m_max; ++m)
            for (IndexLevel level :
                 {IndexLevel::full_group, IndexLevel::congruence_group}) {
              IndexQuery query{fam, l, k, m, level};
              if (!check_preconditions(query, params).empty()) continue;
              records.push_back(index_record(query, params, false));
            }
    write_output(format == "json" ? records.dump(2) : csv_from_records(records),
                 out_path);
  });

  auto* t_cn = cmd_tables->add_subcommand("cn", "isotropic vector counts");
  t_cn->fallthrough();
  struct {
    std::vector<std::uint64_t> qs = {3};
    int n_max = 6;
  } tc;
  t_cn->add_option("--q", tc.qs, "residue sizes")->delimiter(',');
  t_cn->add_option("--n-max", tc.n_max);
  t_cn->callback([&] {
    json records = json::array();
    for (std::uint64_t q : tc.qs)
      for (int n = 2; n <= tc.n_max; ++n) {
        BigInt rec_cn = recursion_cn(n, q);
        BigInt closed = formula_Cn(n, q, 1) + 1;
        records.push_back({{"kind", "cn"},
                           {"n", n},
                           {"q", q},
                           {"recursion", rec_cn.str()},
                           {"closed_form", closed.str()},
                           {"match", rec_cn == closed}});
      }
    write_output(format == "json" ? records.dump(2) : csv_from_records(records),
                 out_path);
  });

  // ---- replay ------------------------------------------------------------
  auto* cmd_replay = app.add_subcommand("replay", "recompute a JSON record file");
  cmd_replay->fallthrough();
  std::string replay_path;
  cmd_replay->add_option("file", replay_path, "records to replay");
  cmd_replay->add_option("--replay", replay_path, "records to replay");
  cmd_replay->callback([&] {
    if (replay_path.empty())
      throw std::invalid_argument("replay needs a record file");
    std::ifstream in(replay_path);
    if (!in) throw std::invalid_argument("cannot open " + replay_path);
    json records = json::parse(in);
    bool identical = true;
    for (const auto& rec : records) {
      json again = recompute_record(rec, budget);
      for (auto it = rec.begin(); it != rec.end(); ++it) {
        if (it.key() == "elapsed_ms") continue;
        if (!again.contains(it.key()) || again[it.key()] != it.value()) {
          identical = false;
          std::cout << "record diverged at key " << it.key() << ": "
                    << it.value().dump() << " vs "
                    << (again.contains(it.key()) ? again[it.key()].dump()
                                                 : "missing")
                    << "\n";
        }
      }
    }
    std::cout << (identical ? "replay identical\n" : "replay diverged\n");
    if (!identical) throw Mismatch("replay diverged");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? kOk : kOperationalError;
  } catch (const PreconditionError& err) {
    for (const auto& v : err.violations())
      std::cerr << v.constraint << ": " << v.render() << "\n";
    return kPrecondition;
  } catch (const Mismatch& err) {
    std::cerr << "mismatch: " << err.what() << "\n";
    return kMismatch;
  } catch (const BudgetExceeded& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kOperationalError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kOperationalError;
  }
  return kOk;
}
