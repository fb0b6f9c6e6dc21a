#ifndef COLLATZ_LAB_COLLATZ_TREE_HPP
#define COLLATZ_LAB_COLLATZ_TREE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "collatz_lab/numdomain.hpp"

namespace collatz_lab {

inline constexpr std::uint32_t kDefaultMaxDepth = 30;

/// Preimages of v under the Collatz map inside the tree: 2v always, and
/// (v−1)/3 when that is an odd integer other than 1.
std::vector<Nat> tree_children(const Nat& v);

struct TreeNode {
  Nat value;
  std::uint32_t depth = 0;
  std::vector<Nat> children;
};

enum class EdgeColor { Green, Red };

/// Edge in the Collatz direction: from -> f(from).
struct GraphEdge {
  Nat from;
  Nat to;
  EdgeColor color = EdgeColor::Green;
};

/// The Collatz tree grown breadth-first from 1 by inverse steps.
class CollatzTree {
 public:
  std::uint32_t max_depth() const { return static_cast<std::uint32_t>(levels_.size()) - 1; }
  const std::vector<Nat>& level(std::uint32_t d) const { return levels_.at(d); }
  const std::vector<std::vector<Nat>>& levels() const { return levels_; }
  bool contains(const Nat& v) const { return nodes_.contains(v); }
  const TreeNode& node(const Nat& v) const { return nodes_.at(v); }
  std::size_t size() const { return nodes_.size(); }
  /// Count of values generated more than once (zero in a genuine tree).
  std::size_t duplicates() const { return duplicates_; }
  /// Child -> parent edges, sorted by (depth, value).
  std::vector<GraphEdge> edges() const;

  friend CollatzTree build_tree(std::uint32_t max_depth, std::uint32_t depth_limit);

 private:
  std::vector<std::vector<Nat>> levels_;
  std::unordered_map<Nat, TreeNode> nodes_;
  std::size_t duplicates_ = 0;
};

/// Levels 0..max_depth. Throws PreconditionError above depth_limit.
CollatzTree build_tree(std::uint32_t max_depth, std::uint32_t depth_limit = kDefaultMaxDepth);

struct TreeStructureReport {
  bool acyclic = true;
  bool connected = true;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::optional<Nat> witness;

  explicit operator bool() const { return acyclic && connected; }
};

/// Union-find over the edge set: no edge closes a cycle and everything ends
/// up in the component of 1.
TreeStructureReport check_tree_structure(const CollatzTree& tree);

/// The path n, f(n), ..., 1 where each step is checked to be a tree edge
/// (the predecessor appears in tree_children of the successor). nullopt if the
/// walk leaves the tree or runs out of fuel.
std::optional<std::vector<Nat>> tree_path(const Nat& n, std::uint64_t fuel);

// ---- strata ----------------------------------------------------------------

/// Stratum index via the definitional recursion: powers of two are W_0,
/// otherwise stratum(n) = 1 + stratum(3·odd(n) + 1). Memoized per odd part.
class StrataMemo {
 public:
  explicit StrataMemo(std::uint64_t bound = 100000) : bound_(bound) {}
  /// nullopt when the recursion exceeds the stratum bound.
  std::optional<std::uint64_t> stratum(const Nat& n);
  std::size_t cache_size() const { return cache_.size(); }

 private:
  std::uint64_t bound_;
  std::unordered_map<Nat, std::uint64_t> cache_;
};

/// Throws PreconditionError on n = 0 and DomainError if the bound is exceeded.
std::uint64_t stratum(const Nat& n);

/// Unrolled membership predicate: n ∈ W_i. W_0 is the powers of two; for
/// i > 0, n ∉ W_0 and 3·odd(n)+1 ∈ W_{i−1}.
bool in_stratum(const Nat& n, std::uint64_t i);

struct HotelCoordinates {
  std::uint64_t tower = 0;  // j in n = 2^i·(2j+1)
  std::uint64_t floor = 0;  // i
};

HotelCoordinates hotel_coordinates(const Nat& n);

struct StrataEntry {
  std::uint64_t n = 0;
  std::optional<std::uint64_t> stratum;
};

struct StrataTable {
  std::uint64_t range_max = 0;
  std::uint64_t stratum_bound = 0;
  std::vector<StrataEntry> entries;  // n = 1..range_max
  std::vector<std::uint64_t> exceeded;
};

StrataTable build_strata_table(std::uint64_t range_max, std::uint64_t stratum_bound = 100000);
/// Columns n, stratum, tower, floor.
std::string strata_csv(const StrataTable& table);
std::string strata_json(const StrataTable& table);

struct PropertyCheck {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
  std::optional<std::uint64_t> witness;

  bool ok() const { return checked == passed; }
};

struct StrataReport {
  std::vector<PropertyCheck> checks;
  bool ok() const;
  const PropertyCheck& get(std::string_view name) const;
};

/// Closure and partition properties of the strata over n = 1..range_max:
/// doubling, 4a+1 (odd a outside W_0), disjointness, 3n+1 descending one stratum (both j > 1 and
/// j >= 1), every n in exactly one stratum.
StrataReport check_strata_properties(std::uint64_t range_max, std::uint64_t stratum_bound = 100000);

// ---- hotel graph and export ------------------------------------------------

struct HotelVertex {
  Nat n;
  HotelCoordinates at;
};

struct HotelGraph {
  std::vector<HotelVertex> vertices;  // 1..N
  std::vector<GraphEdge> edges;       // sorted by source
};

/// Vertices 1..max_vertex; green p+p -> p, red odd k -> 3k+1 (k != 1). Red
/// targets may lie above max_vertex.
HotelGraph build_hotel(std::uint64_t max_vertex);

enum class GraphFormat { Dot, Json };
/// "dot" or "json"; anything else throws PreconditionError.
GraphFormat parse_graph_format(std::string_view name);

std::string export_tree(const CollatzTree& tree, GraphFormat format);
std::string export_hotel(const HotelGraph& graph, GraphFormat format);

}  // namespace collatz_lab

#endif  // COLLATZ_LAB_COLLATZ_TREE_HPP
