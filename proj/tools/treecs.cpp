// Command-line front end. Values are printed as JSON; reports print a short
// summary unless --json is given. Exit codes: 0 ok, 1 violations, 2 bad input.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "suites.hpp"
#include "treecs/error.hpp"
#include "treecs/json_io.hpp"

using namespace treecs;
namespace tj = treecs::json;
using tj::Json;

namespace {

struct Options {
  bool json = false;
  std::uint64_t seed = 20240611ULL;
  std::string eps;
  std::string trunk;
  std::string out;
};

// A positional argument is a file path when such a file exists, inline JSON otherwise.
Json load(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return tj::parse_text(buf.str());
  }
  return tj::parse_text(arg);
}

TreeSchema schema_arg(const std::string& s) {
  if (s == "full") return TreeSchema::full();
  return TreeSchema::canonical(Ordinal::parse(s));
}

std::set<Node> node_set(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of nodes");
  std::set<Node> out;
  for (const auto& n : j) out.insert(tj::read_node(n));
  return out;
}

Json slot_json(const Slot& s) { return Json{{"node", tj::write_node(s.first)}, {"copy", s.second}}; }

class Runner {
 public:
  explicit Runner(Options& opt) : opt_(opt) {}

  void value(const Json& j) { emit(j.dump()); }
  void text(const std::string& t) { emit(t); }

  // Prints the report and records whether it holds.
  void report(const Json& j, bool ok, const std::vector<std::string>& lines) {
    if (opt_.json) {
      emit(j.dump(2));
    } else {
      std::string text = ok ? "ok" : "violations:";
      for (const auto& l : lines) text += "\n  " + l;
      emit(text);
    }
    if (!ok) code_ = 1;
  }

  int code() const { return code_; }
  void set_code(int c) { code_ = c; }

 private:
  void emit(const std::string& text) {
    if (opt_.out.empty()) {
      std::cout << text << "\n";
    } else {
      std::ofstream f(opt_.out);
      if (!f) throw ParseError("cannot write " + opt_.out);
      f << text << "\n";
    }
  }

  Options& opt_;
  int code_ = 0;
};

Region region_from(const Options& opt, const Element& a, const std::optional<std::string>& subtree,
                   const std::optional<std::size_t>& levels, const std::optional<std::string>& nodes) {
  int chosen = !opt.trunk.empty() + subtree.has_value() + levels.has_value() + nodes.has_value();
  if (chosen != 1) throw ParseError("restrict needs exactly one of --trunk, --subtree, --levels, --nodes");
  if (!opt.trunk.empty()) return Region::trunk(tj::read_trunk(load(opt.trunk), a.schema()));
  if (subtree) return Region::subtree(tj::read_node(load(*subtree)));
  if (levels) return Region::levels_at_least(*levels);
  return Region::nodes(node_set(load(*nodes)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree spaces, Cantor and ordinal embeddings, projectional trees, finite isometries"};
  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable reports");
  app.add_option("--seed", opt.seed, "Seed for randomized commands");
  app.add_option("--eps", opt.eps, "Rational tolerance p/q");
  app.add_option("--trunk", opt.trunk, "Trunk file or inline JSON");
  app.add_option("--out", opt.out, "Write output to a file");
  app.require_subcommand(1);
  app.fallthrough();
  Runner run(opt);

  // Positional storage shared by the subcommands.
  std::string a1, a2;
  std::uint64_t n1 = 0, n2 = 0;
  std::optional<std::string> subtree, nodes;
  std::optional<std::size_t> levels;
  std::vector<unsigned> copies;
  std::size_t trials = 20;
  std::string suite;

  auto* ord = app.add_subcommand("ordinal", "Ordinal arithmetic below epsilon_0");
  ord->require_subcommand(1);
  auto* o_add = ord->add_subcommand("add", "a + b");
  o_add->add_option("a", a1)->required();
  o_add->add_option("b", a2)->required();
  auto* o_mul = ord->add_subcommand("mul", "a * n");
  o_mul->add_option("a", a1)->required();
  o_mul->add_option("n", n1)->required();
  auto* o_pow = ord->add_subcommand("pow", "w^a");
  o_pow->add_option("a", a1)->required();
  auto* o_fs = ord->add_subcommand("fs", "lambda[n]");
  o_fs->add_option("lambda", a1)->required();
  o_fs->add_option("n", n1)->required();
  auto* o_cb = ord->add_subcommand("cbrank", "Cantor-Bendixson rank of a point");
  o_cb->add_option("gamma", a1)->required();
  auto* o_ms = ord->add_subcommand("msform", "[1, gamma] as [1, w^alpha m]");
  o_ms->add_option("gamma", a1)->required();

  auto* tree = app.add_subcommand("tree", "Tree queries; a tree is 'full' or the root rank");
  tree->require_subcommand(1);
  auto* t_rank = tree->add_subcommand("rank", "Rank of a node");
  t_rank->add_option("tree", a1)->required();
  t_rank->add_option("node", a2)->required();
  auto* t_contains = tree->add_subcommand("contains", "Node membership");
  t_contains->add_option("tree", a1)->required();
  t_contains->add_option("node", a2)->required();
  auto* t_valid = tree->add_subcommand("trunk-validate", "Check a node set is a trunk");
  t_valid->add_option("tree", a1)->required();
  t_valid->add_option("nodes", a2)->required();
  auto* t_closure = tree->add_subcommand("closure", "Downward closure of a node set");
  t_closure->add_option("nodes", a1)->required();

  auto* elem = app.add_subcommand("elem", "Elements of the tree space");
  elem->require_subcommand(1);
  auto* e_norm = elem->add_subcommand("norm", "Lambda-norm");
  e_norm->add_option("elem", a1)->required();
  auto* e_posnorm = elem->add_subcommand("posnorm", "Norm of the positive part");
  e_posnorm->add_option("elem", a1)->required();
  auto* e_sup = elem->add_subcommand("sup", "Lattice supremum");
  e_sup->add_option("a", a1)->required();
  e_sup->add_option("b", a2)->required();
  auto* e_pos = elem->add_subcommand("pos", "Positive part");
  e_pos->add_option("elem", a1)->required();
  auto* e_abs = elem->add_subcommand("abs", "Absolute value");
  e_abs->add_option("elem", a1)->required();
  auto* e_restrict = elem->add_subcommand("restrict", "Restriction to a region");
  e_restrict->add_option("elem", a1)->required();
  e_restrict->add_option("--subtree", subtree, "Node whose subtree is kept");
  e_restrict->add_option("--levels", levels, "Keep nodes of length >= n");
  e_restrict->add_option("--nodes", nodes, "Explicit node set");
  e_restrict->add_option("--copies", copies, "Copies to keep");
  auto* e_leq = elem->add_subcommand("leq", "Lattice order a <= b");
  e_leq->add_option("a", a1)->required();
  e_leq->add_option("b", a2)->required();
  auto* e_approx = elem->add_subcommand("trunk-approx", "Finite trunk within --eps");
  e_approx->add_option("elem", a1)->required();

  auto* emb = app.add_subcommand("embed", "Isometric embeddings");
  emb->require_subcommand(1);
  auto* em_cantor = emb->add_subcommand("cantor", "Full tree into C(2^w)");
  em_cantor->add_option("elem", a1)->required();
  auto* em_ord = emb->add_subcommand("ordinal", "Canonical tree into C[1, w^alpha m]");
  em_ord->add_option("elem", a1)->required();

  auto* inv = app.add_subcommand("invert", "Inverse embeddings");
  inv->require_subcommand(1);
  auto* in_cantor = inv->add_subcommand("cantor", "Step function back to the full tree");
  in_cantor->add_option("step", a1)->required();

  auto* pt = app.add_subcommand("projtree", "Trunk-restricted projectional trees");
  pt->require_subcommand(1);
  auto* p_canon = pt->add_subcommand("canonical", "Canonical data on --trunk");
  auto* p_verify = pt->add_subcommand("verify", "Biorthogonality report");
  p_verify->add_option("data", a1)->required();
  auto* p_project = pt->add_subcommand("project", "Apply the projection");
  p_project->add_option("data", a1)->required();
  p_project->add_option("step", a2)->required();
  auto* p_reg = pt->add_subcommand("regularity", "Finite-depth decay report");
  p_reg->add_option("data", a1)->required();
  p_reg->add_option("probes", a2, "Array of step functions")->required();

  auto* hol = app.add_subcommand("hol", "Finite isometries with a projection");
  hol->require_subcommand(1);
  auto* h_check = hol->add_subcommand("check", "Hypotheses");
  h_check->add_option("op", a1)->required();
  auto* h_extract = hol->add_subcommand("extract", "F, rho, sigma, phi");
  h_extract->add_option("op", a1)->required();
  auto* h_verify = hol->add_subcommand("verify", "Conclusions for an extraction");
  h_verify->add_option("op", a1)->required();
  h_verify->add_option("extraction", a2)->required();
  h_verify->add_option("--trials", trials, "Random functions per check");
  auto* h_random = hol->add_subcommand("random", "Seeded instance");
  h_random->add_option("K", n1)->required();
  h_random->add_option("L", n2)->required();

  auto* self = app.add_subcommand("selftest", "Run the acceptance suites");
  self->add_option("--suite", suite, "Suite id or name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    // ordinal
    if (*o_add) run.value(add(Ordinal::parse(a1), Ordinal::parse(a2)).to_string());
    if (*o_mul) run.value(nat_mul(Ordinal::parse(a1), n1).to_string());
    if (*o_pow) run.value(omega_pow(Ordinal::parse(a1)).to_string());
    if (*o_fs) run.value(fundamental_sequence(Ordinal::parse(a1), n1).to_string());
    if (*o_cb) run.value(cb_rank_of_point(Ordinal::parse(a1)).to_string());
    if (*o_ms) {
      const auto ms = ms_normal_form(Ordinal::parse(a1));
      run.value(Json{{"alpha", ms.alpha.to_string()}, {"m", ms.m}, {"height", ms.height.to_string()}});
    }

    // tree
    if (*t_rank) run.value(schema_arg(a1).rank_of(tj::read_node(load(a2))).to_string());
    if (*t_contains) run.value(schema_arg(a1).contains(tj::read_node(load(a2))));
    if (*t_valid) {
      const auto c = check_trunk(schema_arg(a1), node_set(load(a2)));
      Json j{{"ok", c.ok}, {"violating", c.violating ? tj::write_node(*c.violating) : Json(nullptr)},
             {"reason", c.reason}};
      std::vector<std::string> lines;
      if (!c.ok) lines.push_back((c.violating ? c.violating->to_string() + ": " : std::string()) + c.reason);
      run.report(j, c.ok, lines);
    }
    if (*t_closure) run.value(tj::write_trunk(downward_closure(node_set(load(a1)))));

    // elem
    if (*e_norm) run.value(tj::write_rational(lambda_norm(tj::read_element(load(a1)))));
    if (*e_posnorm) run.value(tj::write_rational(pos_part_norm(tj::read_element(load(a1)))));
    if (*e_sup) run.value(tj::write_element(lattice_sup(tj::read_element(load(a1)), tj::read_element(load(a2)))));
    if (*e_pos) run.value(tj::write_element(pos_part(tj::read_element(load(a1)))));
    if (*e_abs) run.value(tj::write_element(abs_val(tj::read_element(load(a1)))));
    if (*e_restrict) {
      const Element a = tj::read_element(load(a1));
      std::optional<std::set<unsigned>> keep;
      if (!copies.empty()) keep = std::set<unsigned>(copies.begin(), copies.end());
      run.value(tj::write_element(restrict(a, region_from(opt, a, subtree, levels, nodes), keep)));
    }
    if (*e_leq) run.value(leq(tj::read_element(load(a1)), tj::read_element(load(a2))));
    if (*e_approx) {
      if (opt.eps.empty()) throw ParseError("trunk-approx needs --eps");
      run.value(tj::write_trunk(trunk_approx(tj::read_element(load(a1)), parse_rational(opt.eps))));
    }

    // embed / invert
    if (*em_cantor) run.value(tj::write_step(canonical(embed(tj::read_element(load(a1))))));
    if (*em_ord) run.value(tj::write_ordstep(embed_ordinal(tj::read_element(load(a1)))));
    if (*in_cantor) run.value(tj::write_element(inverse_embed(tj::read_step(load(a1)))));

    // projtree
    if (*p_canon) {
      if (opt.trunk.empty()) throw ParseError("projtree canonical needs --trunk");
      run.value(tj::write_projtree(canonical_projtree(tj::read_trunk(load(opt.trunk), TreeSchema::full()))));
    }
    if (*p_verify) {
      const auto rep = verify_biorthogonality(tj::read_projtree(load(a1)));
      Json slots = Json::array(), matrix = Json::array(), viol = Json::array();
      for (const auto& s : rep.slots) slots.push_back(slot_json(s));
      for (const auto& row : rep.matrix) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(tj::write_rational(v));
        matrix.push_back(std::move(r));
      }
      std::vector<std::string> lines;
      for (const auto& v : rep.violations) {
        viol.push_back(Json{{"s", slot_json(v.s)}, {"t", slot_json(v.t)}, {"got", tj::write_rational(v.got)},
                            {"expected", tj::write_rational(v.expected)}});
        lines.push_back("<rho" + v.s.first.to_string() + "/" + std::to_string(v.s.second) + ", e" +
                        v.t.first.to_string() + "/" + std::to_string(v.t.second) + "> = " + to_string(v.got) +
                        ", expected " + to_string(v.expected));
      }
      run.report(Json{{"ok", rep.ok()}, {"slots", slots}, {"matrix", matrix}, {"violations", viol}}, rep.ok(), lines);
    }
    if (*p_project) run.value(tj::write_step(project(tj::read_projtree(load(a1)), tj::read_step(load(a2)))));
    if (*p_reg) {
      const Json probes_j = load(a2);
      if (!probes_j.is_array()) throw ParseError("probes must be an array of step functions");
      std::vector<StepFunction> probes;
      for (const auto& p : probes_j) probes.push_back(tj::read_step(p));
      const auto rep = check_rho_regularity(tj::read_projtree(load(a1)), probes);
      Json seqs = Json::array();
      std::vector<std::string> lines{rep.header};
      for (const auto& q : rep.sequences) {
        Json vals = Json::array();
        for (const auto& v : q.values) vals.push_back(tj::write_rational(v));
        seqs.push_back(Json{{"probe", q.probe}, {"copy", q.copy},
                            {"node", q.node ? tj::write_node(*q.node) : Json(nullptr)}, {"values", vals},
                            {"flagged", q.flagged}, {"insufficient", q.insufficient}});
        if (q.flagged) {
          lines.push_back("probe " + std::to_string(q.probe) + " copy " + std::to_string(q.copy) + " " +
                          (q.node ? "children of " + q.node->to_string() : std::string("by length")) +
                          ": no decay");
        }
      }
      run.report(Json{{"header", rep.header}, {"consistent", rep.consistent()}, {"sequences", seqs}},
                 rep.consistent(), lines);
    }

    // hol
    if (*h_check) {
      const auto rep = check_hypotheses(tj::read_operator(load(a1)));
      run.report(Json{{"ok", rep.ok()}, {"failures", rep.failures}}, rep.ok(), rep.failures);
    }
    if (*h_extract) {
      const auto op = tj::read_operator(load(a1));
      const auto hyp = check_hypotheses(op);
      if (!hyp.ok()) {
        run.report(Json{{"ok", false}, {"failures", hyp.failures}}, false, hyp.failures);
      } else {
        run.value(tj::write_extraction(extract(op)));
      }
    }
    if (*h_verify) {
      const auto rep =
          verify_conclusions(tj::read_operator(load(a1)), tj::read_extraction(load(a2)), trials, opt.seed);
      run.report(Json{{"ok", rep.ok()}, {"checks", rep.checks}, {"violations", rep.violations}}, rep.ok(),
                 rep.violations);
    }
    if (*h_random) run.value(tj::write_operator(random_instance(n1, n2, opt.seed)));

    // selftest
    if (*self) {
      Json rows = Json::array();
      std::string table;
      bool all = true, matched = false;
      for (const auto& info : acceptance::suite_list()) {
        if (!suite.empty() && suite != info.name && suite != std::to_string(info.id)) continue;
        matched = true;
        const auto r = acceptance::run_suite(info.id, opt.seed);
        all = all && r.pass();
        rows.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass()}, {"checks", r.checks},
                            {"detail", r.detail}});
        table += (table.empty() ? "" : "\n") + acceptance::format_line(r);
      }
      if (!matched) throw ParseError("unknown suite '" + suite + "'");
      if (opt.json) {
        run.value(rows);
      } else {
        run.text(table);
      }
      if (!all) run.set_code(1);
    }
  } catch (const ParseError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  }
  return run.code();
}
