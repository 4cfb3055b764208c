#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "camshift/bigint.hpp"
#include "camshift/words.hpp"

namespace camshift::slp {

// Patterns up to `window` symbols are countable; prefix/suffix snippets keep
// window - 1 symbols per node.
inline constexpr std::size_t kDefaultWindow = 4096;
inline constexpr std::uint64_t kDefaultMaterializationBudget = std::uint64_t{1} << 26;

struct NodeId {
  std::uint32_t value = 0;
  friend auto operator<=>(NodeId, NodeId) = default;
};

struct Term {
  NodeId child;
  BigInt repeat;
};

enum class NodeKind { atom, concat };

// Straight-line program over {0,1}: every node is a single symbol or a
// concatenation of (child, repeat) blocks. Nodes are hash-consed, so
// structurally identical expressions share one id and one memo entry.
//
// Node creation is single-threaded. Read-only queries (lengths, random access,
// windows, counting) may run concurrently; the snippet and count caches are
// internally synchronized.
class SlpStore {
 public:
  explicit SlpStore(std::size_t window = kDefaultWindow,
                    std::uint64_t materialization_budget = kDefaultMaterializationBudget);
  ~SlpStore();
  SlpStore(const SlpStore&) = delete;
  SlpStore& operator=(const SlpStore&) = delete;

  NodeId atom(Symbol s);
  // A single (child, 1) term collapses to the child itself.
  NodeId concat(std::vector<Term> terms);
  NodeId power(NodeId child, const BigInt& repeat);
  NodeId from_word(std::span<const Symbol> word);
  // Node for the factor [start, start + len) of `node`; len >= 1.
  NodeId slice(NodeId node, const BigInt& start, const BigInt& len);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t window_size() const noexcept { return window_; }
  std::uint64_t materialization_budget() const noexcept { return budget_; }

  NodeKind kind(NodeId id) const;
  Symbol atom_symbol(NodeId id) const;
  std::span<const Term> terms(NodeId id) const;
  const BigInt& length(NodeId id) const;

  Symbol char_at(NodeId id, const BigInt& index) const;
  Word window(NodeId id, const BigInt& start, std::size_t len) const;
  Word materialize(NodeId id) const;

  // First / last min(window - 1, length) symbols.
  const Word& prefix(NodeId id) const;
  const Word& suffix(NodeId id) const;

  // Occurrences of `pattern` in the expansion of `id`, computed on the DAG
  // with per-node memoization; requires 1 <= |pattern| <= window_size().
  BigInt count_occurrences(std::span<const Symbol> pattern, NodeId id) const;
  // Occurrences in id^repeat without creating a node for the power.
  BigInt count_in_power(std::span<const Symbol> pattern, NodeId id, const BigInt& repeat) const;

  // Canonical export of the sub-DAG reachable from `roots` (post-order, ids
  // renumbered from 0). `root_ids` receives the new ids of the roots.
  nlohmann::json export_nodes(std::span<const NodeId> roots, std::vector<std::uint32_t>& root_ids) const;
  // Inverse of export_nodes; returns the store id of every file node.
  std::vector<NodeId> import_nodes(const nlohmann::json& nodes);

  // {"nodes": [...], "root": id}
  nlohmann::json to_json(NodeId root) const;
  NodeId from_json(const nlohmann::json& j);

 private:
  struct Node {
    NodeKind kind;
    Symbol symbol;
    std::vector<Term> terms;
    std::vector<BigInt> offsets;  // start offset of each term
    BigInt length;
  };
  struct Snippets {
    Word prefix;
    Word suffix;
  };
  struct PatternMemo;
  PatternMemo& memo_for(std::span<const Symbol> pattern) const;
  struct Summary;

  const Node& node(NodeId id) const;
  NodeId intern(Node n, const std::string& key);
  void extract(NodeId id, const BigInt& start, std::size_t len, Word& out) const;
  const Snippets& snippets(NodeId id) const;
  BigInt count_node(PatternMemo& memo, NodeId id) const;
  Summary leaf_summary(PatternMemo& memo, NodeId id) const;
  Summary merge(const PatternMemo& memo, const Summary& lhs, const Summary& rhs) const;
  Summary power_summary(const PatternMemo& memo, Summary base, BigInt repeat) const;

  std::size_t window_;
  std::uint64_t budget_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, NodeId> interned_;

  mutable std::mutex snippet_mutex_;
  mutable std::unordered_map<std::uint32_t, Snippets> snippet_cache_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::string, std::unique_ptr<PatternMemo>> memo_;
};

}  // namespace camshift::slp
