#include "omega_trees/trees.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "omega_trees/error.hpp"
#include "omega_trees/linorders.hpp"

namespace omt {

using nlohmann::json;

namespace detail {
namespace {

bool ask(const Membership& member, const FinSeq& u) {
  try {
    return member(u);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::OracleError, "membership oracle failed at " + to_string(u) + ": " +
                                            e.what());
  }
}

Nat ask_bound(const LabelBound& bound, const FinSeq& u) {
  try {
    return bound(u);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::OracleError, "label bound failed at " + to_string(u) + ": " + e.what());
  }
}

class FiniteImpl final : public TreeImpl {
 public:
  explicit FiniteImpl(const std::vector<FinSeq>& nodes) {
    std::set<FinSeq> set(nodes.begin(), nodes.end());
    if (!set.count(FinSeq{})) {
      throw Error(ErrorCode::EmptyTree, "a tree must contain the empty sequence");
    }
    for (const FinSeq& u : set) {
      if (u.empty()) continue;
      FinSeq parent = truncate(u, u.size() - 1);
      if (!set.count(parent)) {
        throw Error(ErrorCode::PrefixClosureViolation,
                    to_string(u) + " is listed but its prefix " + to_string(parent) + " is not");
      }
      Nat& b = bound_[parent];
      b = std::max(b, u.back() + 1);
    }
    nodes_.assign(set.begin(), set.end());
    std::stable_sort(nodes_.begin(), nodes_.end(), [](const FinSeq& a, const FinSeq& b) {
      return a.size() < b.size();
    });
    set_ = std::move(set);
  }

  TreeKind kind() const override { return TreeKind::Finite; }
  bool contains(const FinSeq& u) const override { return set_.count(u) != 0; }
  Nat label_bound(const FinSeq& u) const override {
    auto it = bound_.find(u);
    return it == bound_.end() ? 0 : it->second;
  }
  json to_json() const override {
    json nodes = json::array();
    for (const FinSeq& u : nodes_) nodes.push_back(u);
    return {{"finite", nodes}};
  }
  const std::vector<FinSeq>& nodes() const { return nodes_; }

 private:
  std::vector<FinSeq> nodes_;
  std::set<FinSeq> set_;
  std::map<FinSeq, Nat> bound_;
};

class RegularImpl final : public TreeImpl {
 public:
  explicit RegularImpl(Automaton a) : automaton_(std::move(a)) {
    if (!automaton_.initial()) {
      throw Error(ErrorCode::EmptyTree, "automaton has no initial state, its tree is empty");
    }
  }

  TreeKind kind() const override { return TreeKind::Regular; }
  bool contains(const FinSeq& u) const override { return automaton_.run(u).has_value(); }
  Nat label_bound(const FinSeq& u) const override {
    auto q = automaton_.run(u);
    if (!q || automaton_.out(*q).empty()) return 0;
    return automaton_.out(*q).back().first + 1;
  }
  json to_json() const override { return automaton_to_json(automaton_); }
  const Automaton& automaton() const { return automaton_; }

 private:
  Automaton automaton_;
};

class LazyImpl final : public TreeImpl {
 public:
  LazyImpl(Membership member, LabelBound bound, json description)
      : member_(std::move(member)), bound_(std::move(bound)), description_(std::move(description)) {
    if (!member_ || !bound_) throw Error(ErrorCode::InvalidInput, "lazy tree needs both oracles");
    if (!ask(member_, {})) {
      throw Error(ErrorCode::EmptyTree, "membership oracle rejects the empty sequence");
    }
  }

  TreeKind kind() const override { return TreeKind::Lazy; }

  bool contains(const FinSeq& u) const override {
    if (!ask(member_, u)) return false;
    // Validate the query path: every prefix is a member and every step stays
    // below the declared bound of its parent.
    FinSeq p;
    p.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i > 0 && !ask(member_, p)) {
        throw Error(ErrorCode::PrefixClosureViolation,
                    "oracle admits " + to_string(u) + " but rejects its prefix " + to_string(p));
      }
      if (u[i] >= ask_bound(bound_, p)) {
        throw Error(ErrorCode::LabelBoundViolation,
                    "oracle admits " + to_string(u) + " but label " + std::to_string(u[i]) +
                        " exceeds the declared bound at " + to_string(p));
      }
      p.push_back(u[i]);
    }
    return true;
  }

  Nat label_bound(const FinSeq& u) const override { return ask_bound(bound_, u); }

  json to_json() const override {
    if (description_.is_null()) {
      throw Error(ErrorCode::InvalidInput, "this lazy tree has no serializable description");
    }
    return description_;
  }

 private:
  Membership member_;
  LabelBound bound_;
  json description_;
};

class SubtreeImpl final : public TreeImpl {
 public:
  SubtreeImpl(Tree base, FinSeq at) : base_(std::move(base)), at_(std::move(at)) {}
  TreeKind kind() const override { return TreeKind::Derived; }
  bool contains(const FinSeq& v) const override {
    return compatible(v, at_) && base_.contains(v);
  }
  Nat label_bound(const FinSeq& v) const override {
    if (is_proper_prefix(v, at_)) return at_[v.size()] + 1;
    return base_.label_bound(v);
  }
  json to_json() const override {
    return {{"op", "subtree"}, {"args", json::array({base_.to_json()})}, {"at", at_}};
  }

 private:
  Tree base_;
  FinSeq at_;
};

class ShiftClosureImpl final : public TreeImpl {
 public:
  explicit ShiftClosureImpl(Tree base) : base_(std::move(base)) {}
  TreeKind kind() const override { return TreeKind::Derived; }

  bool contains(const FinSeq& w) const override {
    std::size_t end = w.size();
    while (end > 0 && w[end - 1] == 0) --end;
    FinSeq u(end);
    for (std::size_t i = 0; i < end; ++i) {
      if (w[i] == 0) return false;
      u[i] = w[i] - 1;
    }
    return base_.contains(u);
  }

  Nat label_bound(const FinSeq& w) const override {
    if (!w.empty() && w.back() == 0) return 1;
    FinSeq u(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) u[i] = w[i] - 1;
    return base_.label_bound(u) + 1;
  }

  json to_json() const override {
    return {{"op", "shift_closure"}, {"args", json::array({base_.to_json()})}};
  }

 private:
  Tree base_;
};

class SumImpl final : public TreeImpl {
 public:
  SumImpl(Tree left, Tree right) : left_(std::move(left)), right_(std::move(right)) {}
  TreeKind kind() const override { return TreeKind::Derived; }

  bool contains(const FinSeq& w) const override {
    if (w.empty()) return true;
    auto [side, k] = unpair(w[0]);
    if (side > 1) return false;
    FinSeq u = w;
    u[0] = k;
    return (side == 0 ? left_ : right_).contains(u);
  }

  Nat label_bound(const FinSeq& w) const override {
    if (w.empty()) {
      Nat bound = 0;
      for (Nat side = 0; side < 2; ++side) {
        Nat b = (side == 0 ? left_ : right_).label_bound({});
        if (b > 0) bound = std::max(bound, pair(side, b - 1) + 1);
      }
      return bound;
    }
    auto [side, k] = unpair(w[0]);
    FinSeq u = w;
    u[0] = k;
    return (side == 0 ? left_ : right_).label_bound(u);
  }

  json to_json() const override {
    return {{"op", "sum"}, {"args", json::array({left_.to_json(), right_.to_json()})}};
  }

 private:
  Tree left_;
  Tree right_;
};

class ProductImpl final : public TreeImpl {
 public:
  ProductImpl(Tree left, Tree right) : left_(std::move(left)), right_(std::move(right)) {}
  TreeKind kind() const override { return TreeKind::Derived; }

  bool contains(const FinSeq& w) const override {
    if (w.empty()) return true;
    auto parts = unzip_product_node(w);
    if (!parts) return false;
    return left_.contains(parts->first) && right_.contains(parts->second);
  }

  Nat label_bound(const FinSeq& w) const override {
    FinSeq u, v;
    if (!w.empty()) {
      auto parts = unzip_product_node(w);
      if (!parts) return 0;
      std::tie(u, v) = *parts;
    }
    // A side may continue only while it has not been padded yet.
    auto max_next = [&](const Tree& t, const FinSeq& side) -> ExtVal {
      if (side.size() < w.size()) return -1;
      Nat b = t.label_bound(side);
      return b == 0 ? -1 : static_cast<ExtVal>(b - 1);
    };
    ExtVal a = max_next(left_, u);
    ExtVal b = max_next(right_, v);
    if (a < 0 && b < 0) return 0;
    return static_cast<Nat>(pair_ext(a, b)) + 1;
  }

  json to_json() const override {
    return {{"op", "product"}, {"args", json::array({left_.to_json(), right_.to_json()})}};
  }

 private:
  Tree left_;
  Tree right_;
};

class AttImpl final : public TreeImpl {
 public:
  AttImpl(Tree base, Nat max_code) : base_(std::move(base)), max_code_(max_code) {}
  TreeKind kind() const override { return TreeKind::Derived; }

  bool contains(const FinSeq& w) const override {
    std::vector<FinSeq> images;
    images.reserve(w.size());
    for (Nat code : w) {
      if (code == 0) return false;
      FinSeq node;
      try {
        node = decode(code);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::CodeOverflow) return false;
        throw;
      }
      if (!base_.contains(node)) return false;
      images.push_back(std::move(node));
    }
    for (std::size_t n = 0; n < w.size(); ++n) {
      FinSeq sn = binary_string(n);
      for (std::size_t m = n + 1; m < w.size(); ++m) {
        FinSeq sm = binary_string(m);
        // Later strings in the enumeration are never proper prefixes of
        // earlier ones, so one direction suffices.
        if (incompatible(sn, sm) && !incompatible(images[n], images[m])) return false;
        if (is_proper_prefix(sn, sm) && !is_proper_prefix(images[n], images[m])) return false;
      }
    }
    return true;
  }

  Nat label_bound(const FinSeq&) const override { return max_code_ + 1; }

  json to_json() const override {
    return {{"op", "att"}, {"args", json::array({base_.to_json()})}, {"max_code", max_code_}};
  }

 private:
  Tree base_;
  Nat max_code_;
};

}  // namespace
}  // namespace detail

Tree::Tree(std::shared_ptr<const detail::TreeImpl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw Error(ErrorCode::InvalidInput, "null tree");
}

std::vector<Nat> Tree::children(const FinSeq& u) const {
  std::vector<Nat> out;
  Nat bound = label_bound(u);
  FinSeq child = extend(u, 0);
  for (Nat k = 0; k < bound; ++k) {
    child.back() = k;
    if (contains(child)) out.push_back(k);
  }
  return out;
}

const Automaton* Tree::automaton() const {
  auto* regular = dynamic_cast<const detail::RegularImpl*>(impl_.get());
  return regular ? &regular->automaton() : nullptr;
}

const std::vector<FinSeq>* Tree::finite_nodes() const {
  auto* finite = dynamic_cast<const detail::FiniteImpl*>(impl_.get());
  return finite ? &finite->nodes() : nullptr;
}

bool member(const Tree& tree, const FinSeq& u) { return tree.contains(u); }

Tree finite_tree(const std::vector<FinSeq>& nodes) {
  return Tree(std::make_shared<detail::FiniteImpl>(nodes));
}

Tree regular_tree(Automaton automaton) {
  return Tree(std::make_shared<detail::RegularImpl>(std::move(automaton)));
}

Tree lazy_tree(Membership member, LabelBound bound, json description) {
  return Tree(std::make_shared<detail::LazyImpl>(std::move(member), std::move(bound),
                                                 std::move(description)));
}

Tree full_tree(Nat arity) {
  return lazy_tree(
      [arity](const FinSeq& u) {
        return std::all_of(u.begin(), u.end(), [arity](Nat k) { return k < arity; });
      },
      [arity](const FinSeq&) { return arity; }, {{"builtin", "full"}, {"arity", arity}});
}

Tree constant_chain_tree(Nat value) {
  return lazy_tree(
      [value](const FinSeq& u) {
        return std::all_of(u.begin(), u.end(), [value](Nat k) { return k == value; });
      },
      [value](const FinSeq&) { return value + 1; },
      {{"builtin", "constant_chain"}, {"value", value}});
}

Tree subtree_at(const Tree& tree, const FinSeq& u) {
  return Tree(std::make_shared<detail::SubtreeImpl>(tree, u));
}

Tree shift_closure(const Tree& tree) {
  return Tree(std::make_shared<detail::ShiftClosureImpl>(tree));
}

Tree sum(const Tree& left, const Tree& right) {
  return Tree(std::make_shared<detail::SumImpl>(left, right));
}

Tree product(const Tree& left, const Tree& right) {
  return Tree(std::make_shared<detail::ProductImpl>(left, right));
}

Tree att(const Tree& tree, Nat max_code) {
  return Tree(std::make_shared<detail::AttImpl>(tree, max_code));
}

std::optional<std::pair<FinSeq, FinSeq>> unzip_product_node(const FinSeq& w) {
  FinSeq u, v;
  bool u_done = false, v_done = false;
  for (Nat z : w) {
    if (z > static_cast<Nat>(std::numeric_limits<ExtVal>::max())) return std::nullopt;
    auto [a, b] = unpair_ext(static_cast<ExtVal>(z));
    if (a >= 0) {
      if (u_done) return std::nullopt;
      u.push_back(static_cast<Nat>(a));
    } else {
      u_done = true;
    }
    if (b >= 0) {
      if (v_done) return std::nullopt;
      v.push_back(static_cast<Nat>(b));
    } else {
      v_done = true;
    }
  }
  return std::make_pair(std::move(u), std::move(v));
}

FinSeq binary_string(Nat n) {
  std::size_t len = 0;
  while ((Nat{2} << len) <= n + 1) ++len;
  Nat offset = n + 1 - (Nat{1} << len);
  FinSeq s(len);
  for (std::size_t i = 0; i < len; ++i) s[i] = (offset >> (len - 1 - i)) & 1;
  return s;
}

Nat binary_index(const FinSeq& s) {
  if (s.size() >= 63) throw Error(ErrorCode::CodeOverflow, "binary string too long");
  Nat value = 0;
  for (Nat bit : s) {
    if (bit > 1) throw Error(ErrorCode::InvalidInput, "not a binary string: " + to_string(s));
    value = value * 2 + bit;
  }
  return (Nat{1} << s.size()) - 1 + value;
}

std::map<FinSeq, FinSeq> att_induced_map(const FinSeq& w) {
  std::map<FinSeq, FinSeq> out;
  for (std::size_t n = 0; n < w.size(); ++n) out.emplace(binary_string(n), decode(w[n]));
  return out;
}

Tree elementwise_tree(NatPredicate pred, Nat cap, json description) {
  return lazy_tree(
      [pred = std::move(pred), cap](const FinSeq& u) {
        return std::all_of(u.begin(), u.end(), [&](Nat k) { return k < cap && pred(k); });
      },
      [cap](const FinSeq&) { return cap; }, std::move(description));
}

Tree chain_tree(StrictOrder less, Nat cap, json description) {
  return lazy_tree(
      [less = std::move(less), cap](const FinSeq& u) {
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (u[i] >= cap) return false;
          if (i > 0 && !less(u[i], u[i - 1])) return false;
        }
        return true;
      },
      [cap](const FinSeq&) { return cap; }, std::move(description));
}

Tree sg_tree(std::function<bool(Nat, Nat)> relation, Nat bound, json description) {
  return lazy_tree(
      [relation = std::move(relation), bound](const FinSeq& u) {
        if (u.empty()) return true;
        if (std::any_of(u.begin(), u.end(), [bound](Nat k) { return k >= bound; })) return false;
        FinSeq tail;
        for (std::size_t t = 0; t < u.size(); ++t) {
          if (t > 0) tail.push_back(u[t]);
          if (!relation(u[0], encode(tail).value)) return false;
        }
        return true;
      },
      [bound](const FinSeq&) { return bound; }, std::move(description));
}

Tree bar_tree(NatPredicate pred, Nat bound, json description) {
  return lazy_tree(
      [pred = std::move(pred), bound](const FinSeq& u) {
        FinSeq p;
        for (std::size_t t = 0; t < u.size(); ++t) {
          if (u[t] >= bound) return false;
          if (pred(encode(p).value)) return false;
          p.push_back(u[t]);
        }
        return true;
      },
      [bound](const FinSeq&) { return bound; }, std::move(description));
}

Tree interleave_unfold(std::function<bool(Nat, Nat, Nat)> relation, Nat bound,
                       json description) {
  return lazy_tree(
      [relation = std::move(relation), bound](const FinSeq& w) {
        if (std::any_of(w.begin(), w.end(), [bound](Nat k) { return k >= bound; })) return false;
        if (w.empty()) return true;
        const std::size_t pairs = (w.size() - 1) / 2;
        FinSeq us, vs;
        for (std::size_t t = 0; t < pairs; ++t) {
          if (!relation(w[0], encode(us).value, encode(vs).value)) return false;
          us.push_back(w[1 + 2 * t]);
          vs.push_back(w[2 + 2 * t]);
        }
        return true;
      },
      [bound](const FinSeq&) { return bound; }, std::move(description));
}

bool sg_toy_relation(Nat n, Nat s) {
  FinSeq d = decode(s);
  if (n % 2 == 0) return std::all_of(d.begin(), d.end(), [](Nat k) { return k == 0; });
  return d.size() <= 2;
}

std::vector<FinSeq> nodes_to_depth(const Tree& tree, std::size_t max_depth) {
  std::vector<FinSeq> out{FinSeq{}};
  std::size_t level_begin = 0;
  for (std::size_t depth = 0; depth < max_depth; ++depth) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      FinSeq u = out[i];
      for (Nat k : tree.children(u)) out.push_back(extend(u, k));
    }
    if (out.size() == level_end) break;
    level_begin = level_end;
  }
  return out;
}

std::vector<FinSeq> all_nodes(const Tree& tree, std::size_t limit) {
  if (const auto* nodes = tree.finite_nodes()) return *nodes;
  if (const Automaton* a = tree.automaton()) {
    // Finite iff no cycle is reachable from the initial state.
    std::vector<int> color(a->num_states(), 0);
    std::function<bool(State)> cyclic = [&](State q) {
      color[q] = 1;
      for (const auto& [label, r] : a->out(q)) {
        if (color[r] == 1 || (color[r] == 0 && cyclic(r))) return true;
      }
      color[q] = 2;
      return false;
    };
    if (cyclic(*a->initial())) {
      throw Error(ErrorCode::NonFiniteTree, "automaton reaches a cycle, its tree is infinite");
    }
  }
  std::vector<FinSeq> out{FinSeq{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    FinSeq u = out[i];
    for (Nat k : tree.children(u)) {
      out.push_back(extend(u, k));
      if (out.size() > limit) {
        throw Error(ErrorCode::NonFiniteTree,
                    "tree has more than " + std::to_string(limit) + " explorable nodes");
      }
    }
  }
  return out;
}

std::vector<SectionProfile> section_profile(const Tree& tree, const std::vector<Nat>& firsts,
                                            std::size_t max_depth) {
  std::vector<SectionProfile> out;
  for (Nat n : firsts) {
    SectionProfile row{n, std::vector<Nat>(max_depth, 0)};
    std::vector<FinSeq> level;
    if (max_depth > 0 && tree.contains({n})) level.push_back({n});
    for (std::size_t d = 0; d < max_depth && !level.empty(); ++d) {
      row.counts[d] = level.size();
      std::vector<FinSeq> next;
      if (d + 1 < max_depth) {
        for (const FinSeq& u : level)
          for (Nat k : tree.children(u)) next.push_back(extend(u, k));
      }
      level = std::move(next);
    }
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string name_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_unsigned() || j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error(ErrorCode::InvalidInput, "state names must be strings or integers");
}

Nat get_nat(const json& j, const char* key, Nat fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<Nat>();
}

NatPredicate elementwise_predicate(const json& j) {
  if (j.contains("set")) {
    auto values = j.at("set").get<std::vector<Nat>>();
    std::set<Nat> set(values.begin(), values.end());
    return [set](Nat k) { return set.count(k) != 0; };
  }
  std::string name = j.value("predicate", "all");
  if (name == "even") return [](Nat k) { return k % 2 == 0; };
  if (name == "odd") return [](Nat k) { return k % 2 == 1; };
  if (name == "all") return [](Nat) { return true; };
  if (name == "none") return [](Nat) { return false; };
  throw Error(ErrorCode::InvalidInput, "unknown elementwise predicate '" + name + "'");
}

}  // namespace

Automaton automaton_from_json(const json& j) {
  try {
    std::vector<std::string> names;
    std::map<std::string, State> index;
    for (const json& s : j.at("states")) {
      std::string name = name_of(s);
      if (!index.emplace(name, static_cast<State>(names.size())).second) {
        throw Error(ErrorCode::InvalidInput, "duplicate state '" + name + "'");
      }
      names.push_back(name);
    }
    auto lookup = [&](const json& s) {
      auto it = index.find(name_of(s));
      if (it == index.end()) throw Error(ErrorCode::InvalidInput, "unknown state " + s.dump());
      return it->second;
    };
    std::optional<State> initial;
    if (j.contains("initial") && !j.at("initial").is_null()) initial = lookup(j.at("initial"));
    std::vector<Edge> edges;
    for (const json& e : j.value("edges", json::array())) {
      edges.push_back({lookup(e.at("from")), e.at("label").get<Nat>(), lookup(e.at("to"))});
    }
    std::optional<std::vector<Nat>> alphabet;
    if (j.contains("alphabet")) alphabet = j.at("alphabet").get<std::vector<Nat>>();
    return Automaton(std::move(names), initial, std::move(edges), std::move(alphabet));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed automaton: ") + e.what());
  }
}

json automaton_to_json(const Automaton& a) {
  bool numeric = std::all_of(a.names().begin(), a.names().end(), [](const std::string& s) {
    return !s.empty() && s.size() < 19 &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  });
  auto name = [&](State q) -> json {
    if (numeric) return std::stoull(a.name(q));
    return a.name(q);
  };
  json states = json::array();
  for (State q = 0; q < a.num_states(); ++q) states.push_back(name(q));
  json edges = json::array();
  for (const Edge& e : a.edges()) {
    edges.push_back({{"from", name(e.from)}, {"label", e.label}, {"to", name(e.to)}});
  }
  json out = {{"states", states},
              {"initial", a.initial() ? name(*a.initial()) : json(nullptr)},
              {"edges", edges}};
  if (a.alphabet_declared()) out["alphabet"] = a.alphabet();
  return out;
}

Tree builtin_tree(const json& j) {
  const std::string name = j.at("builtin").get<std::string>();
  if (name == "full") return full_tree(get_nat(j, "arity", 2));
  if (name == "constant_chain") return constant_chain_tree(get_nat(j, "value", 0));
  if (name == "elementwise") {
    return elementwise_tree(elementwise_predicate(j), get_nat(j, "cap", 16), j);
  }
  if (name == "chain") {
    const json order = j.value("order", json("less"));
    if (order.is_object()) {
      std::vector<std::pair<Nat, Nat>> pairs;
      for (const json& p : order.value("pairs", json::array()))
        pairs.emplace_back(p.at(0).get<Nat>(), p.at(1).get<Nat>());
      LinOrder lin = LinOrder::from_pairs(order.at("field").get<std::vector<Nat>>(), pairs);
      Nat cap = 0;
      for (Nat x : lin.elements()) cap = std::max(cap, x + 1);
      return chain_tree(
          [lin](Nat a, Nat b) { return lin.contains(a) && lin.contains(b) && lin.less(a, b); },
          cap, j);
    }
    const std::string kind = order.get<std::string>();
    Nat cap = get_nat(j, "cap", 16);
    if (kind == "less") return chain_tree([](Nat a, Nat b) { return a < b; }, cap, j);
    if (kind == "greater") return chain_tree([](Nat a, Nat b) { return a > b; }, cap, j);
    throw Error(ErrorCode::InvalidInput, "unknown chain order '" + kind + "'");
  }
  if (name == "sg_toy_even") return sg_tree(sg_toy_relation, get_nat(j, "bound", 10), j);
  if (name == "bar") {
    const std::string pred = j.value("predicate", "never");
    Nat bound = get_nat(j, "bound", 4);
    if (pred == "never") return bar_tree([](Nat) { return false; }, bound, j);
    if (pred == "even_code") return bar_tree([](Nat s) { return s % 2 == 0; }, bound, j);
    if (pred == "length_ge") {
      Nat k = get_nat(j, "k", 2);
      return bar_tree([k](Nat s) { return decoded_length(s) >= k; }, bound, j);
    }
    throw Error(ErrorCode::InvalidInput, "unknown bar predicate '" + pred + "'");
  }
  if (name == "unfold") {
    const std::string pred = j.value("predicate", "always");
    Nat bound = get_nat(j, "bound", 4);
    if (pred == "always") return interleave_unfold([](Nat, Nat, Nat) { return true; }, bound, j);
    if (pred == "u_zeros") {
      return interleave_unfold(
          [](Nat, Nat a, Nat) {
            FinSeq d = decode(a);
            return std::all_of(d.begin(), d.end(), [](Nat k) { return k == 0; });
          },
          bound, j);
    }
    throw Error(ErrorCode::InvalidInput, "unknown unfold predicate '" + pred + "'");
  }
  throw Error(ErrorCode::InvalidInput, "unknown builtin tree '" + name + "'");
}

Tree tree_from_json(const json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "a tree must be a JSON object");
    if (j.contains("finite")) return finite_tree(j.at("finite").get<std::vector<FinSeq>>());
    if (j.contains("states")) return regular_tree(automaton_from_json(j));
    if (j.contains("builtin")) return builtin_tree(j);
    if (j.contains("op")) {
      const std::string op = j.at("op").get<std::string>();
      const json& args = j.at("args");
      auto arg = [&](std::size_t i) { return tree_from_json(args.at(i)); };
      auto arity = [&](std::size_t n) {
        if (args.size() != n) {
          throw Error(ErrorCode::InvalidInput,
                      "op '" + op + "' takes " + std::to_string(n) + " argument(s)");
        }
      };
      if (op == "sum") return arity(2), sum(arg(0), arg(1));
      if (op == "product") return arity(2), product(arg(0), arg(1));
      if (op == "att") return arity(1), att(arg(0), get_nat(j, "max_code", kDefaultAttMaxCode));
      if (op == "subtree") return arity(1), subtree_at(arg(0), j.at("at").get<FinSeq>());
      if (op == "shift_closure") return arity(1), shift_closure(arg(0));
      throw Error(ErrorCode::InvalidInput, "unknown tree op '" + op + "'");
    }
    throw Error(ErrorCode::InvalidInput, "unrecognized tree description");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed tree: ") + e.what());
  }
}

}  // namespace omt
