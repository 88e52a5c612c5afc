// Command-line front end. Every result is one JSON document on stdout; errors
// are a JSON object {code, message} on stderr with exit status 1 for malformed
// input and 2 for violated preconditions.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "omega_trees/cbmeasure.hpp"
#include "omega_trees/error.hpp"
#include "omega_trees/kborder.hpp"
#include "omega_trees/linorders.hpp"
#include "omega_trees/seqcode.hpp"
#include "omega_trees/space.hpp"
#include "omega_trees/trees.hpp"

using nlohmann::json;
using namespace omt;

namespace {

[[noreturn]] void bad_input(const std::string& message) {
  throw Error(ErrorCode::InvalidInput, message);
}

FinSeq parse_seq(const std::string& text) {
  FinSeq out;
  if (text.empty() || text == "()") return out;
  std::string body = text;
  if (body.front() == '(' || body.front() == '[') body = body.substr(1, body.size() - 2);
  std::stringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(item, &used);
      if (used != item.size() || item.front() == '-') throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      bad_input("not a sequence of naturals: '" + text + "'");
    }
  }
  return out;
}

bool stdin_used = false;

json read_json_source(const std::string& source) {
  std::string text;
  if (source == "-") {
    if (stdin_used) bad_input("standard input can be read only once");
    stdin_used = true;
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
    text = source;
  } else {
    std::ifstream file(source);
    if (!file) bad_input("cannot open '" + source + "'");
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad_input("malformed JSON in '" + source + "': " + e.what());
  }
}

Tree read_tree(const std::string& source) { return tree_from_json(read_json_source(source)); }

Automaton read_automaton(const std::string& source) {
  return automaton_from_json(read_json_source(source));
}

// A point is either inline/file JSON or a comma list naming a node.
Point read_point(const std::string& text) {
  if (!text.empty() && text.front() == '{') return point_from_json(read_json_source(text));
  return Point::node(parse_seq(text));
}

// {"elements": [least, ..., greatest]} or {"field": [...], "pairs": [[a, b], ...]}.
LinOrder read_order(const std::string& source) {
  json j = read_json_source(source);
  try {
    if (j.is_array()) return LinOrder::from_sequence(j.get<std::vector<Nat>>());
    if (j.contains("elements")) return LinOrder::from_sequence(j.at("elements").get<std::vector<Nat>>());
    return LinOrder::from_pairs(j.at("field").get<std::vector<Nat>>(),
                                j.at("pairs").get<std::vector<std::pair<Nat, Nat>>>());
  } catch (const json::exception& e) {
    bad_input(std::string("malformed order: ") + e.what());
  }
}

PartialMap read_map(const std::string& source) {
  json j = read_json_source(source);
  try {
    if (j.is_object()) j = j.at("map");
    return PartialMap::from_pairs(j.get<std::vector<std::pair<Nat, Nat>>>());
  } catch (const json::exception& e) {
    bad_input(std::string("malformed map: ") + e.what());
  }
}

json map_to_json(const PartialMap& f) {
  json out = json::array();
  for (const auto& [n, m] : f.graph()) out.push_back({n, m});
  return out;
}

json rational_json(const Rational& r) { return {r.num(), r.den()}; }

json nodes_json(const std::vector<FinSeq>& nodes) {
  json out = json::array();
  for (const FinSeq& u : nodes) out.push_back(u);
  return out;
}

std::string tree_dot(const Tree& t, std::size_t depth) {
  std::ostringstream out;
  out << "digraph tree {\n  node [shape=point];\n";
  for (const FinSeq& u : nodes_to_depth(t, depth)) {
    out << "  n" << encode(u).value << ";\n";
    if (!u.empty()) {
      out << "  n" << encode(truncate(u, u.size() - 1)).value << " -> n" << encode(u).value
          << " [label=\"" << u.back() << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

struct Options {
  std::string seq, u, v, tree, left, right, automaton, node, x, y, z, lin, wo, map, predicate,
      order;
  std::vector<std::string> trees;
  Nat code = 0, s = 0, value = 0, max_code = kDefaultAttMaxCode, cap = 16, bound = 4, length = 2,
      budget = 32, preview = 8, firsts = 4;
  std::size_t depth = 8;
  std::vector<Nat> set;
  bool dot = false, all = false, inverse = false;
};

CLI::App* verb(CLI::App* group, const std::string& name, const std::string& help) {
  CLI::App* sub = group->add_subcommand(name, help);
  sub->allow_extras(false);
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trees on the naturals: codes, orders, spaces, Cantor-Bendixson and measure"};
  app.require_subcommand(1);
  Options o;

  // seq
  CLI::App* seq = app.add_subcommand("seq", "sequence codes")->require_subcommand(1);
  verb(seq, "encode", "code of a finite sequence")->add_option("--seq", o.seq)->required();
  verb(seq, "decode", "sequence with a given code")->add_option("--code", o.code)->required();

  // kb
  CLI::App* kb = app.add_subcommand("kb", "Kleene-Brouwer order")->require_subcommand(1);
  {
    CLI::App* cmp = verb(kb, "cmp", "u <=KB v");
    cmp->add_option("--u", o.u)->required();
    cmp->add_option("--v", o.v)->required();
    verb(kb, "sort", "nodes of a finite tree in KB order, least first")
        ->add_option("--tree", o.tree)
        ->required();
    CLI::App* chain = verb(kb, "chain", "search a descending chain in a finite order");
    chain->add_option("--order", o.order)->required();
    chain->add_option("--budget", o.budget);
  }

  // tree
  CLI::App* tree = app.add_subcommand("tree", "tree combinators")->require_subcommand(1);
  {
    CLI::App* member_cmd = verb(tree, "member", "membership of a node");
    member_cmd->add_option("--tree", o.tree)->required();
    member_cmd->add_option("--node", o.node)->required();
    verb(tree, "sum", "sum of two trees")->add_option("trees", o.trees)->expected(2)->required();
    verb(tree, "product", "product of two trees")
        ->add_option("trees", o.trees)
        ->expected(2)
        ->required();
    CLI::App* att_cmd = verb(tree, "att", "attempted embeddings of the binary tree");
    att_cmd->add_option("--tree", o.tree)->required();
    att_cmd->add_option("--max-code", o.max_code);
    CLI::App* sub = verb(tree, "subtree", "nodes compatible with a node");
    sub->add_option("--tree", o.tree)->required();
    sub->add_option("--at", o.node)->required();
    verb(tree, "shift", "shifted tree closed under zero padding")
        ->add_option("--tree", o.tree)
        ->required();
    CLI::App* nodes = verb(tree, "nodes", "nodes up to a depth");
    nodes->add_option("--tree", o.tree)->required();
    nodes->add_option("--depth", o.depth);
    nodes->add_flag("--dot", o.dot);
    CLI::App* profile = verb(tree, "profile", "per-section node counts");
    profile->add_option("--tree", o.tree)->required();
    profile->add_option("--depth", o.depth);
    profile->add_option("--firsts", o.firsts, "report first coordinates 0..firsts-1");
  }

  // space
  CLI::App* space = app.add_subcommand("space", "points and distances")->require_subcommand(1);
  {
    CLI::App* d = verb(space, "dist", "distance of two points");
    d->add_option("--tree", o.tree)->required();
    d->add_option("--x", o.x)->required();
    d->add_option("--y", o.y)->required();
    d->add_option("--budget", o.budget);
    CLI::App* r = verb(space, "rho", "embedding into Baire space (or its inverse)");
    r->add_option("--tree", o.tree)->required();
    r->add_option("--x", o.x)->required();
    r->add_flag("--inverse", o.inverse);
    r->add_option("--budget", o.budget);
    r->add_option("--preview", o.preview);
    CLI::App* p = verb(space, "presentation", "s-th point of the presentation");
    p->add_option("--tree", o.tree)->required();
    p->add_option("--s", o.s)->required();
    CLI::App* pi = verb(space, "prodiso", "product isomorphism (or its inverse)");
    pi->add_option("--left", o.left)->required();
    pi->add_option("--right", o.right)->required();
    pi->add_option("--x", o.x);
    pi->add_option("--y", o.y);
    pi->add_option("--z", o.z);
    pi->add_option("--budget", o.budget);
    pi->add_option("--preview", o.preview);
  }

  // cb
  CLI::App* cb = app.add_subcommand("cb", "Cantor-Bendixson and measure")->require_subcommand(1);
  {
    CLI::App* k = verb(cb, "kernel", "perfect kernel automaton");
    k->add_option("--automaton", o.automaton)->required();
    k->add_flag("--dot", o.dot);
    CLI::App* m = verb(cb, "measure", "upper bound for the body measure");
    m->add_option("--automaton", o.automaton)->required();
    m->add_option("--depth", o.depth);
    m->add_flag("--all", o.all, "report every depth");
    CLI::App* sp = verb(cb, "split", "positive-measure splitting witness");
    sp->add_option("--automaton", o.automaton)->required();
    sp->add_option("--node", o.node);
    sp->add_option("--depth", o.depth, "also report the binary embedding to this depth");
    CLI::App* c = verb(cb, "classify", "state classes, or the class of a node");
    c->add_option("--automaton", o.automaton)->required();
    c->add_option("--node", o.node);
    c->add_flag("--dot", o.dot);
  }

  // adm
  CLI::App* adm = app.add_subcommand("adm", "admissible maps")->require_subcommand(1);
  for (const char* name : {"solve", "check", "brute"}) {
    CLI::App* a = verb(adm, name,
                       std::string(name) == "solve"   ? "the strongly admissible map"
                       : std::string(name) == "check" ? "admissibility of a map"
                                                      : "all strongly admissible maps");
    a->add_option("--lin", o.lin)->required();
    a->add_option("--wo", o.wo)->required();
    if (std::string(name) == "check") a->add_option("--map", o.map)->required();
  }

  // build
  CLI::App* build = app.add_subcommand("build", "builtin tree presets")->require_subcommand(1);
  {
    CLI::App* e = verb(build, "elementwise", "sequences with every entry in a set");
    e->add_option("--predicate", o.predicate, "even, odd, all or none");
    e->add_option("--set", o.set, "explicit set of labels")->delimiter(',');
    e->add_option("--cap", o.cap);
    CLI::App* c = verb(build, "chain", "strictly descending tuples");
    c->add_option("--order", o.order, "less, greater or an order file");
    c->add_option("--cap", o.cap);
    verb(build, "sg", "tree of the toy relation")->add_option("--bound", o.bound = 10);
    CLI::App* b = verb(build, "bar", "sequences with no barred proper prefix");
    b->add_option("--predicate", o.predicate, "never, even_code or length_ge");
    b->add_option("--length", o.length);
    b->add_option("--bound", o.bound);
    CLI::App* u = verb(build, "unfold", "interleaved unfolding of a relation");
    u->add_option("--predicate", o.predicate, "always or u_zeros");
    u->add_option("--bound", o.bound);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"code", "InvalidInput"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }

  auto chosen = [](CLI::App* group, const char* name) { return group->got_subcommand(name); };

  try {
    if (app.got_subcommand(seq)) {
      if (chosen(seq, "encode")) emit({{"code", encode(parse_seq(o.seq)).value}});
      else emit({{"seq", decode(o.code)}});
    } else if (app.got_subcommand(kb)) {
      if (chosen(kb, "cmp")) {
        emit({{"leq", kb_leq(parse_seq(o.u), parse_seq(o.v))}});
      } else if (chosen(kb, "sort")) {
        std::vector<FinSeq> nodes = all_nodes(read_tree(o.tree));
        std::sort(nodes.begin(), nodes.end(),
                  [](const FinSeq& a, const FinSeq& b) { return kb_less(a, b); });
        emit({{"order", nodes_json(nodes)}});
      } else {
        LinOrder order = read_order(o.order);
        auto chain = descending_chain_search(
            [&](Nat a, Nat b) { return order.contains(a) && order.contains(b) && order.less(a, b); },
            o.budget);
        emit({{"chain", chain ? json(*chain) : json(nullptr)}});
      }
    } else if (app.got_subcommand(tree)) {
      if (chosen(tree, "member")) {
        emit({{"member", read_tree(o.tree).contains(parse_seq(o.node))}});
      } else if (chosen(tree, "sum")) {
        emit(sum(read_tree(o.trees[0]), read_tree(o.trees[1])).to_json());
      } else if (chosen(tree, "product")) {
        emit(product(read_tree(o.trees[0]), read_tree(o.trees[1])).to_json());
      } else if (chosen(tree, "att")) {
        emit(att(read_tree(o.tree), o.max_code).to_json());
      } else if (chosen(tree, "subtree")) {
        emit(subtree_at(read_tree(o.tree), parse_seq(o.node)).to_json());
      } else if (chosen(tree, "shift")) {
        emit(shift_closure(read_tree(o.tree)).to_json());
      } else if (chosen(tree, "nodes")) {
        Tree t = read_tree(o.tree);
        if (o.dot) std::cout << tree_dot(t, o.depth);
        else emit({{"nodes", nodes_json(nodes_to_depth(t, o.depth))}});
      } else {
        std::vector<Nat> firsts(o.firsts);
        for (Nat i = 0; i < o.firsts; ++i) firsts[i] = i;
        json out = json::array();
        for (const SectionProfile& p : section_profile(read_tree(o.tree), firsts, o.depth))
          out.push_back({{"first", p.first}, {"counts", p.counts}});
        emit({{"sections", out}});
      }
    } else if (app.got_subcommand(space)) {
      if (chosen(space, "dist")) {
        Tree t = read_tree(o.tree);
        emit(dist_to_json(dist(t, read_point(o.x), read_point(o.y), o.budget)));
      } else if (chosen(space, "rho")) {
        Tree t = read_tree(o.tree);
        Point x = read_point(o.x);
        Point image = o.inverse ? rho_inv(t, x, o.budget) : rho(t, x);
        emit(point_to_json(image, o.preview));
      } else if (chosen(space, "presentation")) {
        emit(point_to_json(presentation(read_tree(o.tree), o.s)));
      } else {
        Tree l = read_tree(o.left), r = read_tree(o.right);
        if (!o.z.empty()) {
          auto [x, y] = prod_iso_inv(l, r, read_point(o.z), o.budget);
          emit({{"left", point_to_json(x, o.preview)}, {"right", point_to_json(y, o.preview)}});
        } else {
          if (o.x.empty() || o.y.empty()) bad_input("prodiso needs --x and --y, or --z");
          emit(point_to_json(prod_iso(l, r, read_point(o.x), read_point(o.y)), o.preview));
        }
      }
    } else if (app.got_subcommand(cb)) {
      Automaton a = read_automaton(o.automaton);
      if (chosen(cb, "kernel")) {
        Automaton k = perfect_kernel(a);
        if (o.dot) std::cout << automaton_to_dot(k);
        else emit(automaton_to_json(k));
      } else if (chosen(cb, "measure")) {
        MeasureReport r = measure_body(a, o.depth);
        json out = {{"upper", rational_json(r.upper_bounds.back())}, {"positive", r.positive}};
        if (o.all) {
          json all = json::array();
          for (const Rational& v : r.upper_bounds) all.push_back(rational_json(v));
          out["bounds"] = all;
        }
        emit(out);
      } else if (chosen(cb, "split")) {
        auto [l, r] = splitting_witness(a, parse_seq(o.node));
        json out = {{"left", l}, {"right", r}};
        if (cb->get_subcommand("split")->count("--depth")) {
          json phi = json::array();
          for (const auto& [s, img] : binary_embedding(a, o.depth)) phi.push_back({s, img});
          out["embedding"] = phi;
        }
        emit(out);
      } else if (!o.node.empty()) {
        ScatClassification c = scat_member(a, parse_seq(o.node));
        emit({{"node_scattered", c.node_scattered}, {"cone", to_string(c.cone)}});
      } else if (o.dot) {
        std::cout << automaton_to_dot(a);
      } else {
        json states = json::array();
        auto classes = classify_states(a);
        for (State q = 0; q < a.num_states(); ++q) {
          states.push_back({{"state", a.name(q)},
                            {"live", classes[q].live},
                            {"uncountable", classes[q].uncountable},
                            {"positive", classes[q].positive}});
        }
        emit({{"states", states}});
      }
    } else if (app.got_subcommand(adm)) {
      LinOrder lin = read_order(o.lin), wo = read_order(o.wo);
      if (chosen(adm, "solve")) {
        emit({{"map", map_to_json(solve_strongly_admissible(lin, wo))}});
      } else if (chosen(adm, "check")) {
        PartialMap f = read_map(o.map);
        AdmissibilityReport r = admissible_check(f, lin, wo);
        emit({{"admissible", r.admissible},
              {"strongly_admissible", strongly_admissible_check(f, lin, wo)},
              {"failed_condition", r.failed_condition},
              {"detail", r.detail}});
      } else {
        json maps = json::array();
        for (const PartialMap& f : brute_force_strongly_admissible(lin, wo))
          maps.push_back(map_to_json(f));
        emit({{"maps", maps}});
      }
    } else if (app.got_subcommand(build)) {
      json desc;
      if (chosen(build, "elementwise")) {
        desc = {{"builtin", "elementwise"}, {"cap", o.cap}};
        if (!o.set.empty()) desc["predicate"] = {{"set", o.set}};
        else desc["predicate"] = o.predicate.empty() ? "all" : o.predicate;
      } else if (chosen(build, "chain")) {
        desc = {{"builtin", "chain"}, {"cap", o.cap}};
        if (o.order.empty() || o.order == "less" || o.order == "greater") {
          desc["order"] = o.order.empty() ? "less" : o.order;
        } else {
          LinOrder order = read_order(o.order);
          json pairs = json::array();
          for (const auto& [a, b] : order.pairs())
            if (a != b) pairs.push_back({a, b});
          desc["order"] = {{"field", order.elements()}, {"pairs", pairs}};
        }
      } else if (chosen(build, "sg")) {
        desc = {{"builtin", "sg_toy_even"}, {"bound", o.bound}};
      } else if (chosen(build, "bar")) {
        desc = {{"builtin", "bar"}, {"bound", o.bound}};
        desc["predicate"] = o.predicate.empty() ? "never" : o.predicate;
        if (o.predicate == "length_ge") desc["k"] = o.length;
      } else {
        desc = {{"builtin", "unfold"},
                {"bound", o.bound},
                {"predicate", o.predicate.empty() ? "always" : o.predicate}};
      }
      emit(builtin_tree(desc).to_json());
    }
  } catch (const Error& e) {
    std::cerr << json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}}.dump()
              << '\n';
    return is_contract_violation(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"code", "InvalidInput"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
