#include "omega_trees/space.hpp"

#include <algorithm>
#include <limits>
#include <memory>

#include "omega_trees/error.hpp"

namespace omt {

using nlohmann::json;

Point Point::node(FinSeq u) {
  Point p;
  p.value_ = std::move(u);
  return p;
}

Point Point::branch(BranchOracle alpha, json description) {
  if (!alpha) throw Error(ErrorCode::InvalidInput, "empty branch oracle");
  Point p;
  p.value_ = std::move(alpha);
  p.description_ = std::move(description);
  return p;
}

const FinSeq& Point::as_node() const {
  if (!is_node()) throw Error(ErrorCode::InvalidInput, "point is a branch, not a node");
  return std::get<FinSeq>(value_);
}

const BranchOracle& Point::as_branch() const {
  if (!is_branch()) throw Error(ErrorCode::InvalidInput, "point is a node, not a branch");
  return std::get<BranchOracle>(value_);
}

ExtVal Point::at(Nat i) const {
  if (is_node()) {
    const FinSeq& u = std::get<FinSeq>(value_);
    return i < u.size() ? static_cast<ExtVal>(u[i]) : -1;
  }
  return static_cast<ExtVal>(call_oracle(std::get<BranchOracle>(value_), i));
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidPoint, what); }

json describe(const char* builtin, json params) {
  return {{"builtin", builtin}, {"params", std::move(params)}};
}

// Serializable description of a derived branch, or null when an input
// cannot be described.
json derived(const char* builtin, json params, std::initializer_list<const Point*> inputs) {
  for (const Point* p : inputs) {
    if (p->is_branch() && p->description().is_null()) return nullptr;
  }
  return describe(builtin, std::move(params));
}

json point_json_or_null(const Point& p) {
  if (p.is_branch() && p.description().is_null()) return nullptr;
  return point_to_json(p);
}

// Branch oracle that validates alpha|(i+1) in T before answering at i.
BranchOracle validated(const Tree& tree, BranchOracle alpha) {
  return [tree, alpha = std::move(alpha)](Nat i) {
    FinSeq u = prefix(alpha, i + 1);
    if (!tree.contains(u)) invalid("branch leaves the tree at " + to_string(u));
    return u.back();
  };
}

}  // namespace

void validate_point(const Tree& tree, const Point& x, Nat depth) {
  if (x.is_node()) {
    if (!tree.contains(x.as_node())) invalid(to_string(x.as_node()) + " is not a node of the tree");
    return;
  }
  FinSeq u;
  for (Nat i = 0; i < depth; ++i) {
    u.push_back(call_oracle(x.as_branch(), i));
    if (!tree.contains(u)) invalid("branch leaves the tree at " + to_string(u));
  }
}

DistResult dist(const Tree& tree, const Point& x, const Point& y, Nat budget) {
  validate_point(tree, x);
  validate_point(tree, y);
  Nat limit = budget;
  if (x.is_node()) limit = std::max<Nat>(limit, x.as_node().size() + 1);
  if (y.is_node()) limit = std::max<Nat>(limit, y.as_node().size() + 1);
  FinSeq xs, ys;
  for (Nat i = 0; i < limit; ++i) {
    ExtVal a = x.at(i);
    ExtVal b = y.at(i);
    // Branch prefixes are checked as they are read.
    if (x.is_branch()) {
      xs.push_back(static_cast<Nat>(a));
      if (!tree.contains(xs)) invalid("branch leaves the tree at " + to_string(xs));
    }
    if (y.is_branch()) {
      ys.push_back(static_cast<Nat>(b));
      if (!tree.contains(ys)) invalid("branch leaves the tree at " + to_string(ys));
    }
    if (a != b) return {DistResult::Kind::Exact, Rational(1, i + 1)};
    if (x.is_node() && y.is_node() && a < 0) break;
  }
  if (x.is_node() && y.is_node()) return {DistResult::Kind::Exact, Rational(0, 1)};
  return {DistResult::Kind::AtMost, Rational(1, budget + 1)};
}

DistResult baire_dist(const Point& x, const Point& y, Nat budget) {
  for (Nat i = 0; i < budget; ++i) {
    if (x.at(i) != y.at(i)) return {DistResult::Kind::Exact, Rational(1, i + 1)};
  }
  return {DistResult::Kind::AtMost, Rational(1, budget + 1)};
}

Point presentation(const Tree& tree, Nat s) {
  if (s == 0) return Point::node({});
  FinSeq u = decode(s);
  if (!tree.contains(u)) return Point::node({});
  return Point::node(std::move(u));
}

Point rho(const Tree& tree, const Point& x) {
  validate_point(tree, x);
  if (x.is_node()) {
    FinSeq shifted = x.as_node();
    for (Nat& k : shifted) ++k;
    json desc = describe("eventually", {{"prefix", shifted}, {"value", 0}});
    return Point::branch(
        [shifted](Nat i) { return i < shifted.size() ? shifted[i] : Nat{0}; }, std::move(desc));
  }
  BranchOracle alpha = validated(tree, x.as_branch());
  return Point::branch([alpha](Nat i) { return call_oracle(alpha, i) + 1; },
                       derived("offset", {{"of", x.description()}, {"add", 1}}, {&x}));
}

Point rho_inv(const Tree& tree, const Point& y, Nat budget) {
  if (y.is_node()) invalid("rho_inv expects a branch of Baire space");
  const BranchOracle& beta = y.as_branch();
  std::optional<Nat> first_zero;
  FinSeq u;
  for (Nat i = 0; i < budget; ++i) {
    Nat v = call_oracle(beta, i);
    if (first_zero) {
      if (v != 0) {
        invalid("entry " + std::to_string(v) + " at position " + std::to_string(i) +
                " follows a 0, outside the shift closure");
      }
    } else if (v == 0) {
      first_zero = i;
    } else {
      u.push_back(v - 1);
      if (!tree.contains(u)) invalid(to_string(u) + " is not a node of the tree");
    }
  }
  if (first_zero) return Point::node(std::move(u));
  BranchOracle down = [beta](Nat i) {
    Nat v = call_oracle(beta, i);
    if (v == 0) {
      invalid("a 0 at position " + std::to_string(i) +
              " makes this a node, not a branch; raise the budget");
    }
    return v - 1;
  };
  return Point::branch(validated(tree, std::move(down)),
                       derived("offset", {{"of", y.description()}, {"add", -1}}, {&y}));
}

Point prod_iso(const Tree& left, const Tree& right, const Point& x, const Point& y) {
  validate_point(left, x);
  validate_point(right, y);
  if (x.is_node() && y.is_node()) return Point::node(zip_pad(x.as_node(), y.as_node()));
  Point xv = x.is_branch() ? Point::branch(validated(left, x.as_branch()), x.description()) : x;
  Point yv = y.is_branch() ? Point::branch(validated(right, y.as_branch()), y.description()) : y;
  json desc = derived("zip", {{"left", point_json_or_null(x)}, {"right", point_json_or_null(y)}},
                      {&x, &y});
  return Point::branch(
      [xv, yv](Nat i) { return static_cast<Nat>(pair_ext(xv.at(i), yv.at(i))); },
      std::move(desc));
}

std::pair<Point, Point> prod_iso_inv(const Tree& left, const Tree& right, const Point& z,
                                     Nat budget) {
  if (z.is_node()) {
    auto parts = unzip_product_node(z.as_node());
    if (!parts) invalid(to_string(z.as_node()) + " has malformed -1 padding");
    Point x = Point::node(parts->first);
    Point y = Point::node(parts->second);
    validate_point(left, x);
    validate_point(right, y);
    return {x, y};
  }
  if (budget == 0) {
    throw Error(ErrorCode::BudgetExceeded, "a zero budget cannot classify a branch");
  }
  const BranchOracle& zeta = z.as_branch();
  auto split = [zeta](Nat i) {
    Nat v = call_oracle(zeta, i);
    if (v > static_cast<Nat>(std::numeric_limits<ExtVal>::max())) invalid("value out of range");
    return unpair_ext(static_cast<ExtVal>(v));
  };

  FinSeq u, v;
  std::optional<Nat> u_end, v_end;
  for (Nat i = 0; i < budget; ++i) {
    auto [a, b] = split(i);
    if (a >= 0) {
      if (u_end) invalid("left component resumes after -1 at position " + std::to_string(i));
      u.push_back(static_cast<Nat>(a));
      if (!left.contains(u)) invalid(to_string(u) + " is not a node of the left tree");
    } else if (!u_end) {
      u_end = i;
    }
    if (b >= 0) {
      if (v_end) invalid("right component resumes after -1 at position " + std::to_string(i));
      v.push_back(static_cast<Nat>(b));
      if (!right.contains(v)) invalid(to_string(v) + " is not a node of the right tree");
    } else if (!v_end) {
      v_end = i;
    }
  }

  auto component = [&](int side, const Tree& tree) {
    BranchOracle values = [split, side](Nat i) {
      auto [a, b] = split(i);
      ExtVal w = side == 0 ? a : b;
      if (w < 0) {
        invalid("component turns -1 at position " + std::to_string(i) +
                " beyond the classification budget");
      }
      return static_cast<Nat>(w);
    };
    json desc = derived("unzip", {{"of", z.description()}, {"side", side}}, {&z});
    return Point::branch(validated(tree, std::move(values)), std::move(desc));
  };

  // (B2): left is eventually -1; (B3): right is; otherwise presumed (B1).
  Point x = u_end ? Point::node(u) : component(0, left);
  Point y = v_end ? Point::node(v) : component(1, right);
  return {x, y};
}

namespace {

// Least child of u in the tree, if any.
std::optional<Nat> least_child(const Tree& tree, const FinSeq& u) {
  Nat bound = tree.label_bound(u);
  FinSeq child = extend(u, 0);
  for (Nat k = 0; k < bound; ++k) {
    child.back() = k;
    if (tree.contains(child)) return k;
  }
  return std::nullopt;
}

bool on_leftmost_path(const Tree& tree, const FinSeq& u) {
  FinSeq p;
  for (Nat k : u) {
    auto least = least_child(tree, p);
    if (!least || *least != k) return false;
    p.push_back(k);
  }
  return true;
}

FinSeq tag(int side, FinSeq u) {
  u[0] = pair(static_cast<Nat>(side), u[0]);
  return u;
}

}  // namespace

Point sum_iso(const Tree& left, const Tree& right, int side, const Point& x) {
  if (side != 0 && side != 1) throw Error(ErrorCode::InvalidInput, "side must be 0 or 1");
  const Tree& summand = side == 0 ? left : right;
  validate_point(summand, x);
  if (x.is_branch()) {
    BranchOracle alpha = validated(summand, x.as_branch());
    return Point::branch(
        [alpha, side](Nat i) {
          Nat v = call_oracle(alpha, i);
          return i == 0 ? pair(static_cast<Nat>(side), v) : v;
        },
        derived("sum_tag", {{"of", x.description()}, {"side", side}}, {&x}));
  }
  FinSeq u = x.as_node();
  if (side == 0) {
    if (u.empty()) return Point::node({});
    return Point::node(tag(0, std::move(u)));
  }
  if (on_leftmost_path(right, u)) {
    auto least = least_child(right, u);
    if (!least) {
      throw Error(ErrorCode::NoIsomorphism,
                  "the leftmost path of the right summand ends at " + to_string(u) +
                      "; the two roots cannot both be placed");
    }
    u.push_back(*least);
  }
  return Point::node(tag(1, std::move(u)));
}

std::pair<int, Point> sum_iso_inv(const Tree& left, const Tree& right, const Point& z) {
  if (z.is_branch()) {
    Nat first = call_oracle(z.as_branch(), 0);
    auto [side, k] = unpair(first);
    if (side > 1) invalid("first entry " + std::to_string(first) + " carries no summand tag");
    const BranchOracle& zeta = z.as_branch();
    BranchOracle untagged = [zeta](Nat i) {
      Nat v = call_oracle(zeta, i);
      return i == 0 ? unpair(v).second : v;
    };
    const Tree& summand = side == 0 ? left : right;
    return {static_cast<int>(side),
            Point::branch(validated(summand, std::move(untagged)),
                          derived("sum_untag", {{"of", z.description()}}, {&z}))};
  }
  FinSeq w = z.as_node();
  if (w.empty()) return {0, Point::node({})};
  auto [side, k] = unpair(w[0]);
  if (side > 1) invalid("first entry " + std::to_string(w[0]) + " carries no summand tag");
  w[0] = k;
  const Tree& summand = side == 0 ? left : right;
  if (!summand.contains(w)) invalid(to_string(w) + " is not a node of the summand");
  if (side == 1 && on_leftmost_path(right, w)) w.pop_back();
  return {static_cast<int>(side), Point::node(std::move(w))};
}

// ---------------------------------------------------------------------------
// JSON

BranchOracle branch_from_json(const json& d) {
  try {
    const std::string name = d.at("builtin").get<std::string>();
    const json params = d.value("params", json::object());
    if (name == "constant") {
      Nat value = params.at("value").get<Nat>();
      return [value](Nat) { return value; };
    }
    if (name == "identity") return [](Nat i) { return i; };
    if (name == "mod") {
      Nat m = params.at("m").get<Nat>();
      if (m == 0) throw Error(ErrorCode::InvalidInput, "mod needs m > 0");
      return [m](Nat i) { return i % m; };
    }
    if (name == "eventually") {
      FinSeq head = params.at("prefix").get<FinSeq>();
      Nat value = params.at("value").get<Nat>();
      return [head, value](Nat i) { return i < head.size() ? head[i] : value; };
    }
    if (name == "periodic") {
      FinSeq pattern = params.at("pattern").get<FinSeq>();
      if (pattern.empty()) throw Error(ErrorCode::InvalidInput, "empty periodic pattern");
      return [pattern](Nat i) { return pattern[i % pattern.size()]; };
    }
    if (name == "offset") {
      BranchOracle base = branch_from_json(params.at("of"));
      long long add = params.at("add").get<long long>();
      return [base, add](Nat i) {
        long long v = static_cast<long long>(call_oracle(base, i)) + add;
        if (v < 0) invalid("offset branch is negative at position " + std::to_string(i));
        return static_cast<Nat>(v);
      };
    }
    if (name == "zip") {
      Point x = point_from_json(params.at("left"));
      Point y = point_from_json(params.at("right"));
      return [x, y](Nat i) {
        ExtVal v = pair_ext(x.at(i), y.at(i));
        if (v < 0) invalid("zip of two ended components");
        return static_cast<Nat>(v);
      };
    }
    if (name == "unzip") {
      BranchOracle base = branch_from_json(params.at("of"));
      int side = params.at("side").get<int>();
      return [base, side](Nat i) {
        auto [a, b] = unpair_ext(static_cast<ExtVal>(call_oracle(base, i)));
        ExtVal w = side == 0 ? a : b;
        if (w < 0) invalid("unzipped component is -1 at position " + std::to_string(i));
        return static_cast<Nat>(w);
      };
    }
    if (name == "sum_tag") {
      BranchOracle base = branch_from_json(params.at("of"));
      Nat side = params.at("side").get<Nat>();
      return [base, side](Nat i) {
        Nat v = call_oracle(base, i);
        return i == 0 ? pair(side, v) : v;
      };
    }
    if (name == "sum_untag") {
      BranchOracle base = branch_from_json(params.at("of"));
      return [base](Nat i) {
        Nat v = call_oracle(base, i);
        return i == 0 ? unpair(v).second : v;
      };
    }
    throw Error(ErrorCode::InvalidInput, "unknown branch builtin '" + name + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed branch: ") + e.what());
  }
}

Point point_from_json(const json& j) {
  try {
    if (j.contains("node")) return Point::node(j.at("node").get<FinSeq>());
    if (j.contains("branch")) {
      const json& d = j.at("branch");
      return Point::branch(branch_from_json(d), d);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed point: ") + e.what());
  }
  throw Error(ErrorCode::InvalidInput, "a point is {\"node\": [...]} or {\"branch\": {...}}");
}

json point_to_json(const Point& x, Nat preview) {
  if (x.is_node()) return {{"node", x.as_node()}};
  json out = {{"branch", x.description()}};
  if (preview > 0) out["prefix"] = prefix(x.as_branch(), preview);
  return out;
}

json dist_to_json(const DistResult& d) {
  json value = json::array({d.value.num(), d.value.den()});
  return {{d.exact() ? "exact" : "atMost", value}};
}

}  // namespace omt
