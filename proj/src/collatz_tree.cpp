#include "collatz_lab/collatz_tree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace collatz_lab {

using ordered_json = nlohmann::ordered_json;

std::vector<Nat> tree_children(const Nat& v) {
  std::vector<Nat> out{v.shl(1)};
  if (v.is_zero()) return out;
  const Nat u = v - Nat::one();
  if (!mpz_divisible_ui_p(u.big().get_mpz_t(), 3)) return out;
  BigInt q;
  mpz_divexact_ui(q.get_mpz_t(), u.big().get_mpz_t(), 3);
  Nat c(std::move(q));
  if (c.is_odd() && !(c == Nat::one())) out.push_back(std::move(c));
  return out;
}

CollatzTree build_tree(std::uint32_t max_depth, std::uint32_t depth_limit) {
  if (max_depth > depth_limit) {
    throw PreconditionError("build_tree: depth " + std::to_string(max_depth) + " exceeds limit " +
                            std::to_string(depth_limit));
  }
  CollatzTree tree;
  tree.levels_.push_back({Nat::one()});
  tree.nodes_.emplace(Nat::one(), TreeNode{Nat::one(), 0, {}});
  for (std::uint32_t d = 1; d <= max_depth; ++d) {
    std::vector<Nat> next;
    for (const Nat& parent : tree.levels_[d - 1]) {
      std::vector<Nat> kids = tree_children(parent);
      for (const Nat& c : kids) {
        if (tree.nodes_.contains(c)) {
          ++tree.duplicates_;
          continue;
        }
        tree.nodes_.emplace(c, TreeNode{c, d, {}});
        next.push_back(c);
      }
      tree.nodes_.at(parent).children = std::move(kids);
    }
    std::sort(next.begin(), next.end());
    tree.levels_.push_back(std::move(next));
  }
  return tree;
}

std::vector<GraphEdge> CollatzTree::edges() const {
  std::vector<GraphEdge> out;
  for (std::size_t d = 1; d < levels_.size(); ++d) {
    for (const Nat& v : levels_[d]) {
      if (v.is_even()) {
        out.push_back({v, v.shr_exact(1), EdgeColor::Green});
      } else {
        out.push_back({v, times3plus1(v), EdgeColor::Red});
      }
    }
  }
  return out;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

TreeStructureReport check_tree_structure(const CollatzTree& tree) {
  TreeStructureReport report;
  std::unordered_map<Nat, std::size_t> index;
  for (const auto& level : tree.levels()) {
    for (const Nat& v : level) index.emplace(v, index.size());
  }
  report.nodes = index.size();
  UnionFind uf(index.size());
  for (const GraphEdge& e : tree.edges()) {
    ++report.edges;
    const auto to = index.find(e.to);
    if (to == index.end()) {
      report.connected = false;
      if (!report.witness) report.witness = e.from;
      continue;
    }
    if (!uf.unite(index.at(e.from), to->second)) {
      report.acyclic = false;
      if (!report.witness) report.witness = e.from;
    }
  }
  const std::size_t root = uf.find(index.at(Nat::one()));
  for (const auto& [v, i] : index) {
    if (uf.find(i) != root) {
      report.connected = false;
      if (!report.witness) report.witness = v;
    }
  }
  if (tree.duplicates() != 0) report.acyclic = false;
  return report;
}

std::optional<std::vector<Nat>> tree_path(const Nat& n, std::uint64_t fuel) {
  if (n.is_zero()) return std::nullopt;
  std::vector<Nat> path{n};
  for (std::uint64_t step = 0; !(path.back() == Nat::one()); ++step) {
    if (step == fuel) return std::nullopt;
    const Nat& v = path.back();
    Nat parent = v.is_even() ? v.shr_exact(1) : times3plus1(v);
    const auto kids = tree_children(parent);
    if (std::find(kids.begin(), kids.end(), v) == kids.end()) return std::nullopt;
    path.push_back(std::move(parent));
  }
  return path;
}

// ---- strata ----------------------------------------------------------------

std::optional<std::uint64_t> StrataMemo::stratum(const Nat& n) {
  if (n.is_zero()) throw PreconditionError("stratum requires n >= 1");
  std::vector<Nat> pending;
  Nat m = odd_part(n);
  std::uint64_t base = 0;
  for (;;) {
    if (m == Nat::one()) break;
    if (auto it = cache_.find(m); it != cache_.end()) {
      base = it->second;
      break;
    }
    if (pending.size() >= bound_) return std::nullopt;
    pending.push_back(m);
    m = odd_part(times3plus1(m));
  }
  for (auto it = pending.rbegin(); it != pending.rend(); ++it) cache_.emplace(*it, ++base);
  if (pending.empty()) return base;
  return cache_.at(pending.front());
}

std::uint64_t stratum(const Nat& n) {
  StrataMemo memo;
  auto s = memo.stratum(n);
  if (!s) throw DomainError("stratum: bound exceeded for " + n.str());
  return *s;
}

bool in_stratum(const Nat& n, std::uint64_t i) {
  if (n.is_zero()) return false;
  Nat v = n;
  for (std::uint64_t j = 0; j < i; ++j) {
    if (is_power_of_two(v)) return false;
    v = times3plus1(odd_part(v));
  }
  return is_power_of_two(v);
}

HotelCoordinates hotel_coordinates(const Nat& n) {
  const std::uint64_t floor = expo(n);
  const Nat odd = n.shr_exact(floor);
  return HotelCoordinates{(odd - Nat::one()).shr_exact(1).to_u64(), floor};
}

StrataTable build_strata_table(std::uint64_t range_max, std::uint64_t stratum_bound) {
  StrataTable table{range_max, stratum_bound, {}, {}};
  table.entries.reserve(range_max);
  StrataMemo memo(stratum_bound);
  for (std::uint64_t n = 1; n <= range_max; ++n) {
    auto s = memo.stratum(Nat(n));
    if (!s) table.exceeded.push_back(n);
    table.entries.push_back({n, s});
  }
  return table;
}

std::string strata_csv(const StrataTable& table) {
  std::ostringstream out;
  out << "n,stratum,tower,floor\n";
  for (const auto& e : table.entries) {
    const auto c = hotel_coordinates(Nat(e.n));
    out << e.n << "," << (e.stratum ? std::to_string(*e.stratum) : std::string("")) << "," << c.tower << ","
        << c.floor << "\n";
  }
  return out.str();
}

std::string strata_json(const StrataTable& table) {
  ordered_json rows = ordered_json::array();
  for (const auto& e : table.entries) {
    const auto c = hotel_coordinates(Nat(e.n));
    ordered_json row;
    row["n"] = std::to_string(e.n);
    row["stratum"] = e.stratum ? ordered_json(*e.stratum) : ordered_json(nullptr);
    row["tower"] = c.tower;
    row["floor"] = c.floor;
    rows.push_back(std::move(row));
  }
  ordered_json j;
  j["range_max"] = table.range_max;
  j["stratum_bound"] = table.stratum_bound;
  j["exceeded"] = table.exceeded;
  j["rows"] = std::move(rows);
  return j.dump();
}

bool StrataReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.ok(); });
}

const PropertyCheck& StrataReport::get(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw PreconditionError("no strata check named '" + std::string(name) + "'");
}

StrataReport check_strata_properties(std::uint64_t range_max, std::uint64_t stratum_bound) {
  PropertyCheck doubling{"doubling", 0, 0, std::nullopt};
  PropertyCheck four_a_plus_one{"4a+1", 0, 0, std::nullopt};
  PropertyCheck disjoint{"disjoint", 0, 0, std::nullopt};
  PropertyCheck descend_strict{"3n+1 descends (j>1)", 0, 0, std::nullopt};
  PropertyCheck descend_loose{"3n+1 descends (j>=1)", 0, 0, std::nullopt};
  PropertyCheck partition{"partition", 0, 0, std::nullopt};

  const auto tally = [](PropertyCheck& c, std::uint64_t n, bool pass) {
    ++c.checked;
    if (pass) {
      ++c.passed;
    } else if (!c.witness) {
      c.witness = n;
    }
  };

  StrataMemo memo(stratum_bound);
  for (std::uint64_t u = 1; u <= range_max; ++u) {
    const Nat n(u);
    const auto s = memo.stratum(n);
    if (!s) {
      tally(partition, u, false);
      continue;
    }
    tally(doubling, u, memo.stratum(n.shl(1)) == s);
    // W_0 holds the single odd number 1, so the 4a+1 closure is for i >= 1.
    if (n.is_odd() && *s >= 1) tally(four_a_plus_one, u, memo.stratum(n.shl(2) + Nat::one()) == s);
    if (n.is_odd() && *s >= 1) {
      const bool down = memo.stratum(times3plus1(n)) == *s - 1;
      tally(descend_loose, u, down);
      if (*s > 1) tally(descend_strict, u, down);
    }

    // Membership in W_0..W_bound by the unrolled definition, in one walk. Once
    // the walk hits a power of two, n is in no later stratum.
    std::uint64_t memberships = 0;
    std::optional<std::uint64_t> member_of;
    Nat v = n;
    for (std::uint64_t i = 0; i <= stratum_bound; ++i) {
      if (is_power_of_two(v)) {
        ++memberships;
        member_of = i;
        break;
      }
      v = times3plus1(odd_part(v));
    }
    tally(disjoint, u, memberships <= 1);
    tally(partition, u, memberships == 1 && member_of == s);
  }

  return StrataReport{{doubling, four_a_plus_one, disjoint, descend_strict, descend_loose, partition}};
}

// ---- hotel and export ------------------------------------------------------

HotelGraph build_hotel(std::uint64_t max_vertex) {
  HotelGraph g;
  g.vertices.reserve(max_vertex);
  for (std::uint64_t u = 1; u <= max_vertex; ++u) {
    const Nat n(u);
    g.vertices.push_back({n, hotel_coordinates(n)});
    if (u == 1) continue;
    if (n.is_even()) {
      g.edges.push_back({n, n.shr_exact(1), EdgeColor::Green});
    } else {
      g.edges.push_back({n, times3plus1(n), EdgeColor::Red});
    }
  }
  return g;
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "dot") return GraphFormat::Dot;
  if (name == "json") return GraphFormat::Json;
  throw PreconditionError("unsupported graph format '" + std::string(name) + "'");
}

namespace {

const char* color_name(EdgeColor c) { return c == EdgeColor::Green ? "green" : "red"; }

struct VertexAttrs {
  Nat n;
  std::vector<std::pair<std::string, std::uint64_t>> attrs;
};

std::string render_graph(std::string_view name, std::vector<VertexAttrs> vertices, std::vector<GraphEdge> edges,
                         GraphFormat format) {
  std::sort(vertices.begin(), vertices.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    if (auto c = a.from <=> b.from; c != 0) return c < 0;
    return a.to < b.to;
  });
  if (format == GraphFormat::Dot) {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (const auto& v : vertices) {
      out << "  \"" << v.n.str() << "\"";
      if (!v.attrs.empty()) {
        out << " [";
        for (std::size_t i = 0; i < v.attrs.size(); ++i) {
          out << (i ? ", " : "") << v.attrs[i].first << "=" << v.attrs[i].second;
        }
        out << "]";
      }
      out << ";\n";
    }
    for (const auto& e : edges) {
      out << "  \"" << e.from.str() << "\" -> \"" << e.to.str() << "\" [color=" << color_name(e.color) << "];\n";
    }
    out << "}\n";
    return out.str();
  }
  ordered_json j;
  j["graph"] = name;
  ordered_json vs = ordered_json::array();
  for (const auto& v : vertices) {
    ordered_json o;
    o["n"] = v.n.str();
    for (const auto& [k, val] : v.attrs) o[k] = val;
    vs.push_back(std::move(o));
  }
  j["vertices"] = std::move(vs);
  ordered_json adjacency = ordered_json::object();
  for (const auto& e : edges) {
    adjacency[e.from.str()].push_back({{"to", e.to.str()}, {"color", color_name(e.color)}});
  }
  j["adjacency"] = std::move(adjacency);
  return j.dump() + "\n";
}

}  // namespace

std::string export_tree(const CollatzTree& tree, GraphFormat format) {
  std::vector<VertexAttrs> vertices;
  StrataMemo memo;
  for (const auto& level : tree.levels()) {
    for (const Nat& v : level) {
      vertices.push_back({v, {{"depth", tree.node(v).depth}, {"stratum", memo.stratum(v).value_or(0)}}});
    }
  }
  return render_graph("collatz_tree", std::move(vertices), tree.edges(), format);
}

std::string export_hotel(const HotelGraph& graph, GraphFormat format) {
  std::vector<VertexAttrs> vertices;
  for (const auto& v : graph.vertices) vertices.push_back({v.n, {{"tower", v.at.tower}, {"floor", v.at.floor}}});
  return render_graph("hotel_collatz", std::move(vertices), graph.edges, format);
}

}  // namespace collatz_lab
