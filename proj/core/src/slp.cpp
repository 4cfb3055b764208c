#include "camshift/slp.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "camshift/error.hpp"

namespace camshift::slp {

struct SlpStore::PatternMemo {
  explicit PatternMemo(std::span<const Symbol> pattern)
      : matcher(pattern), keep(pattern.size() - 1) {}
  PatternMatcher matcher;
  std::size_t keep;
  std::unordered_map<std::uint32_t, BigInt> counts;
};

struct SlpStore::Summary {
  BigInt count;
  BigInt length;
  Word pre;
  Word suf;
};

namespace {

std::string term_key(const std::vector<Term>& terms) {
  std::string key = "C";
  for (const auto& t : terms) {
    key += std::to_string(t.child.value);
    key += '*';
    key += t.repeat.str();
    key += ',';
  }
  return key;
}

Word take_first(const Word& w, std::size_t n) {
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(n, w.size())));
}

Word take_last(const Word& w, std::size_t n) {
  const std::size_t k = std::min(n, w.size());
  return Word(w.end() - static_cast<std::ptrdiff_t>(k), w.end());
}

}  // namespace

SlpStore::SlpStore(std::size_t window, std::uint64_t materialization_budget)
    : window_(window), budget_(materialization_budget) {
  if (window_ < 2) fail(ErrorCode::invalid_parameter, "window size must be at least 2");
}

SlpStore::~SlpStore() = default;

const SlpStore::Node& SlpStore::node(NodeId id) const {
  if (id.value >= nodes_.size()) {
    fail(ErrorCode::index_out_of_range, "unknown node id " + std::to_string(id.value));
  }
  return nodes_[id.value];
}

NodeId SlpStore::intern(Node n, const std::string& key) {
  if (auto it = interned_.find(key); it != interned_.end()) return it->second;
  const NodeId id{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back(std::move(n));
  interned_.emplace(key, id);
  return id;
}

NodeId SlpStore::atom(Symbol s) {
  Node n{NodeKind::atom, s, {}, {}, BigInt(1)};
  return intern(std::move(n), s == Symbol::zero ? "A0" : "A1");
}

NodeId SlpStore::concat(std::vector<Term> terms) {
  if (terms.empty()) fail(ErrorCode::invalid_parameter, "concat needs at least one term");
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    node(t.child);
    if (t.repeat < 1) fail(ErrorCode::invalid_parameter, "repeat counts must be positive");
    if (!merged.empty() && merged.back().child == t.child) {
      merged.back().repeat += t.repeat;
    } else {
      merged.push_back(std::move(t));
    }
  }
  if (merged.size() == 1 && merged.front().repeat == 1) return merged.front().child;
  Node n{NodeKind::concat, Symbol::zero, {}, {}, BigInt(0)};
  n.offsets.reserve(merged.size());
  for (const auto& t : merged) {
    n.offsets.push_back(n.length);
    n.length += nodes_[t.child.value].length * t.repeat;
  }
  const auto key = term_key(merged);
  n.terms = std::move(merged);
  return intern(std::move(n), key);
}

NodeId SlpStore::power(NodeId child, const BigInt& repeat) { return concat({{child, repeat}}); }

NodeId SlpStore::from_word(std::span<const Symbol> word) {
  if (word.empty()) fail(ErrorCode::invalid_parameter, "cannot build a node for the empty word");
  std::vector<Term> terms;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    terms.push_back({atom(word[i]), BigInt(j - i)});
    i = j;
  }
  return concat(std::move(terms));
}

NodeId SlpStore::slice(NodeId id, const BigInt& start, const BigInt& len) {
  const Node& n = node(id);
  if (start < 0 || len < 1 || start + len > n.length) {
    fail(ErrorCode::index_out_of_range, "slice [" + start.str() + ", +" + len.str() +
                                            ") outside a word of length " + n.length.str());
  }
  if (start == 0 && len == n.length) return id;
  // Copy the terms: recursive slicing may grow nodes_ and invalidate `n`.
  const std::vector<Term> terms = n.terms;
  const std::vector<BigInt> offsets = n.offsets;
  const BigInt end = start + len;
  std::vector<Term> out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const BigInt child_len = nodes_[terms[t].child.value].length;
    const BigInt lo = offsets[t];
    const BigInt hi = lo + child_len * terms[t].repeat;
    if (hi <= start) continue;
    if (lo >= end) break;
    const BigInt ls = (start > lo ? start : lo) - lo;
    const BigInt le = (end < hi ? end : hi) - lo;
    BigInt first = ls / child_len;
    BigInt last = (le - 1) / child_len;
    const NodeId child = terms[t].child;
    if (first == last) {
      out.push_back({slice(child, ls - first * child_len, le - ls), BigInt(1)});
      continue;
    }
    const BigInt head = ls % child_len;
    const BigInt tail = le % child_len;
    if (head != 0) {
      out.push_back({slice(child, head, child_len - head), BigInt(1)});
      ++first;
    }
    std::optional<NodeId> tail_node;
    if (tail != 0) {
      tail_node = slice(child, BigInt(0), tail);
      --last;
    }
    if (last >= first) out.push_back({child, last - first + 1});
    if (tail_node) out.push_back({*tail_node, BigInt(1)});
  }
  return concat(std::move(out));
}

NodeKind SlpStore::kind(NodeId id) const { return node(id).kind; }

Symbol SlpStore::atom_symbol(NodeId id) const {
  const Node& n = node(id);
  if (n.kind != NodeKind::atom) fail(ErrorCode::invalid_parameter, "node is not an atom");
  return n.symbol;
}

std::span<const Term> SlpStore::terms(NodeId id) const { return node(id).terms; }

const BigInt& SlpStore::length(NodeId id) const { return node(id).length; }

Symbol SlpStore::char_at(NodeId id, const BigInt& index) const {
  const Node* n = &node(id);
  if (index < 0 || index >= n->length) {
    fail(ErrorCode::index_out_of_range,
         "index " + index.str() + " outside a word of length " + n->length.str());
  }
  BigInt i = index;
  while (n->kind == NodeKind::concat) {
    const auto it = std::upper_bound(n->offsets.begin(), n->offsets.end(), i);
    const auto t = static_cast<std::size_t>(it - n->offsets.begin()) - 1;
    const Node& child = nodes_[n->terms[t].child.value];
    i = (i - n->offsets[t]) % child.length;
    n = &child;
  }
  return n->symbol;
}

void SlpStore::extract(NodeId id, const BigInt& start, std::size_t len, Word& out) const {
  const Node& n = nodes_[id.value];
  if (n.kind == NodeKind::atom) {
    out.push_back(n.symbol);
    return;
  }
  auto t = static_cast<std::size_t>(
               std::upper_bound(n.offsets.begin(), n.offsets.end(), start) - n.offsets.begin()) - 1;
  BigInt local = start - n.offsets[t];
  std::size_t remaining = len;
  while (remaining > 0 && t < n.terms.size()) {
    const Node& child = nodes_[n.terms[t].child.value];
    BigInt copy = local / child.length;
    BigInt within = local % child.length;
    if (child.kind == NodeKind::atom) {
      const BigInt avail = n.terms[t].repeat - copy;
      const std::size_t take = avail < remaining ? static_cast<std::size_t>(avail) : remaining;
      out.insert(out.end(), take, child.symbol);
      remaining -= take;
    } else {
      while (remaining > 0 && copy < n.terms[t].repeat) {
        const BigInt avail = child.length - within;
        const std::size_t take = avail < remaining ? static_cast<std::size_t>(avail) : remaining;
        extract(n.terms[t].child, within, take, out);
        remaining -= take;
        within = 0;
        ++copy;
      }
    }
    local = 0;
    ++t;
  }
}

Word SlpStore::window(NodeId id, const BigInt& start, std::size_t len) const {
  const Node& n = node(id);
  if (start < 0 || start + len > n.length) {
    fail(ErrorCode::index_out_of_range, "window [" + start.str() + ", +" + std::to_string(len) +
                                            ") outside a word of length " + n.length.str());
  }
  if (len > budget_) {
    fail(ErrorCode::budget_exceeded, "window of " + std::to_string(len) +
                                         " symbols exceeds the materialization budget");
  }
  Word out;
  out.reserve(len);
  if (len > 0) extract(id, start, len, out);
  return out;
}

Word SlpStore::materialize(NodeId id) const {
  const BigInt& len = node(id).length;
  if (len > budget_) {
    fail(ErrorCode::budget_exceeded,
         "word of length " + len.str() + " exceeds the materialization budget");
  }
  return window(id, BigInt(0), static_cast<std::size_t>(len));
}

const SlpStore::Snippets& SlpStore::snippets(NodeId id) const {
  const Node& n = node(id);
  std::lock_guard lock(snippet_mutex_);
  if (auto it = snippet_cache_.find(id.value); it != snippet_cache_.end()) return it->second;
  const std::size_t k = n.length < window_ - 1 ? static_cast<std::size_t>(n.length) : window_ - 1;
  Snippets s;
  s.prefix.reserve(k);
  extract(id, BigInt(0), k, s.prefix);
  s.suffix.reserve(k);
  extract(id, n.length - k, k, s.suffix);
  return snippet_cache_.emplace(id.value, std::move(s)).first->second;
}

const Word& SlpStore::prefix(NodeId id) const { return snippets(id).prefix; }

const Word& SlpStore::suffix(NodeId id) const { return snippets(id).suffix; }

SlpStore::Summary SlpStore::leaf_summary(PatternMemo& memo, NodeId id) const {
  const auto& snip = snippets(id);
  return {count_node(memo, id), nodes_[id.value].length, take_first(snip.prefix, memo.keep),
          take_last(snip.suffix, memo.keep)};
}

SlpStore::Summary SlpStore::merge(const PatternMemo& memo, const Summary& lhs,
                                  const Summary& rhs) const {
  Summary out;
  out.count = lhs.count + rhs.count + memo.matcher.count_straddling(lhs.suf, rhs.pre);
  out.length = lhs.length + rhs.length;
  // A snippet shorter than `keep` is the whole operand.
  out.pre = lhs.pre.size() >= memo.keep ? lhs.pre : take_first(camshift::concat(lhs.pre, rhs.pre), memo.keep);
  out.suf = rhs.suf.size() >= memo.keep ? rhs.suf : take_last(camshift::concat(lhs.suf, rhs.suf), memo.keep);
  return out;
}

SlpStore::Summary SlpStore::power_summary(const PatternMemo& memo, Summary base,
                                          BigInt repeat) const {
  std::optional<Summary> acc;
  // Square short operands until every junction sees a full-width context.
  while (base.length < memo.keep && repeat > 1) {
    if (repeat % 2 == 1) acc = acc ? merge(memo, *acc, base) : base;
    base = merge(memo, base, base);
    repeat /= 2;
  }
  Summary tail;
  if (repeat == 1) {
    tail = std::move(base);
  } else {
    const BigInt cross = memo.matcher.count_straddling(base.suf, base.pre);
    tail.count = repeat * base.count + (repeat - 1) * cross;
    tail.length = repeat * base.length;
    tail.pre = std::move(base.pre);
    tail.suf = std::move(base.suf);
  }
  return acc ? merge(memo, *acc, tail) : tail;
}

BigInt SlpStore::count_node(PatternMemo& memo, NodeId id) const {
  const Node& n = nodes_[id.value];
  if (n.length < memo.matcher.size()) return 0;
  if (n.kind == NodeKind::atom) return memo.matcher.count_in(std::span<const Symbol>(&n.symbol, 1));
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = memo.counts.find(id.value); it != memo.counts.end()) return it->second;
  }
  std::optional<Summary> acc;
  for (const auto& t : n.terms) {
    Summary part = power_summary(memo, leaf_summary(memo, t.child), t.repeat);
    acc = acc ? merge(memo, *acc, part) : std::move(part);
  }
  std::lock_guard lock(memo_mutex_);
  memo.counts.emplace(id.value, acc->count);
  return acc->count;
}

SlpStore::PatternMemo& SlpStore::memo_for(std::span<const Symbol> pattern) const {
  if (pattern.empty()) fail(ErrorCode::empty_pattern, "pattern must be non-empty");
  if (pattern.size() > window_) {
    fail(ErrorCode::pattern_too_long, "pattern of length " + std::to_string(pattern.size()) +
                                          " exceeds window " + std::to_string(window_));
  }
  std::lock_guard lock(memo_mutex_);
  std::string key(pattern.size(), '\0');
  for (std::size_t i = 0; i < pattern.size(); ++i) key[i] = to_char(pattern[i]);
  auto& slot = memo_[key];
  if (!slot) slot = std::make_unique<PatternMemo>(pattern);
  return *slot;
}

BigInt SlpStore::count_occurrences(std::span<const Symbol> pattern, NodeId id) const {
  node(id);
  return count_node(memo_for(pattern), id);
}

BigInt SlpStore::count_in_power(std::span<const Symbol> pattern, NodeId id,
                                const BigInt& repeat) const {
  node(id);
  if (repeat < 1) fail(ErrorCode::invalid_parameter, "repeat counts must be positive");
  auto& memo = memo_for(pattern);
  return power_summary(memo, leaf_summary(memo, id), repeat).count;
}

nlohmann::json SlpStore::export_nodes(std::span<const NodeId> roots,
                                      std::vector<std::uint32_t>& root_ids) const {
  std::unordered_map<std::uint32_t, std::uint32_t> renumber;
  nlohmann::json nodes = nlohmann::json::array();
  std::function<std::uint32_t(NodeId)> visit = [&](NodeId id) -> std::uint32_t {
    if (auto it = renumber.find(id.value); it != renumber.end()) return it->second;
    const Node& n = node(id);
    nlohmann::json entry;
    if (n.kind == NodeKind::atom) {
      entry = {{"kind", "atom"}, {"symbol", n.symbol == Symbol::zero ? 0 : 1}};
    } else {
      nlohmann::json children = nlohmann::json::array();
      for (const auto& t : n.terms) children.push_back({visit(t.child), t.repeat.str()});
      entry = {{"kind", "concat"}, {"children", std::move(children)}};
    }
    const auto fresh = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back(std::move(entry));
    renumber.emplace(id.value, fresh);
    return fresh;
  };
  root_ids.clear();
  for (NodeId r : roots) root_ids.push_back(visit(r));
  return nodes;
}

std::vector<NodeId> SlpStore::import_nodes(const nlohmann::json& nodes) {
  if (!nodes.is_array()) fail(ErrorCode::malformed_input, "slp nodes must be an array");
  std::vector<NodeId> ids;
  ids.reserve(nodes.size());
  for (const auto& entry : nodes) {
    if (!entry.is_object() || !entry.contains("kind") || !entry["kind"].is_string()) {
      fail(ErrorCode::malformed_input, "slp node without a kind");
    }
    const auto kind = entry["kind"].get<std::string>();
    if (kind == "atom") {
      const auto& s = entry.value("symbol", nlohmann::json());
      if (!s.is_number_integer() || (s.get<int>() != 0 && s.get<int>() != 1)) {
        fail(ErrorCode::malformed_input, "atom symbol must be 0 or 1");
      }
      ids.push_back(atom(s.get<int>() == 0 ? Symbol::zero : Symbol::one));
    } else if (kind == "concat") {
      const auto& children = entry.value("children", nlohmann::json());
      if (!children.is_array() || children.empty()) {
        fail(ErrorCode::malformed_input, "concat node needs a non-empty children array");
      }
      std::vector<Term> terms;
      for (const auto& c : children) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() || !c[1].is_string()) {
          fail(ErrorCode::malformed_input, "concat child must be [id, \"repeat\"]");
        }
        const auto child = c[0].get<std::size_t>();
        if (child >= ids.size()) {
          fail(ErrorCode::malformed_input, "concat child refers to a later node");
        }
        BigInt rep = parse_decimal(c[1].get<std::string>());
        if (rep < 1) fail(ErrorCode::malformed_input, "repeat counts must be positive");
        terms.push_back({ids[child], std::move(rep)});
      }
      ids.push_back(concat(std::move(terms)));
    } else {
      fail(ErrorCode::malformed_input, "unknown slp node kind '" + kind + "'");
    }
  }
  return ids;
}

nlohmann::json SlpStore::to_json(NodeId root) const {
  std::vector<std::uint32_t> root_ids;
  const NodeId roots[] = {root};
  auto nodes = export_nodes(roots, root_ids);
  return {{"nodes", std::move(nodes)}, {"root", root_ids.front()}};
}

NodeId SlpStore::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("root") ||
      !j["root"].is_number_unsigned()) {
    fail(ErrorCode::malformed_input, "slp document needs 'nodes' and 'root'");
  }
  const auto ids = import_nodes(j["nodes"]);
  const auto root = j["root"].get<std::size_t>();
  if (root >= ids.size()) fail(ErrorCode::malformed_input, "slp root out of range");
  return ids[root];
}

}  // namespace camshift::slp
