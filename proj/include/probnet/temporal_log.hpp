#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "probnet/graph.hpp"

namespace probnet {

/// One input record before ingestion: a directed message with a timestamp.
struct RawTransaction {
  std::string src;
  std::string dst;
  std::int64_t timestamp = 0;
};

/// One retained message; endpoints are registry ids in canonical order u < v
/// (direction is discarded, all measures are undirected).
struct Transaction {
  NodeId u;
  NodeId v;
  std::int64_t timestamp;
};

// Time-ordered record of messages between node pairs, plus the node name
// registry. Immutable after construction; filters share the registry so ids
// stay comparable across time slices of the same log.
class TransactionLog {
 public:
  TransactionLog() : names_(std::make_shared<const std::vector<std::string>>()) {}

  std::span<const Transaction> transactions() const noexcept { return transactions_; }
  std::size_t size() const noexcept { return transactions_.size(); }
  bool empty() const noexcept { return transactions_.empty(); }

  /// Registry ids with at least one retained transaction, ascending.
  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::string_view name(NodeId id) const { return (*names_)[id]; }

  std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }

  /// Largest retained timestamp; only meaningful when !empty().
  std::int64_t latest_timestamp() const noexcept {
    return transactions_.empty() ? 0 : transactions_.back().timestamp;
  }

  /// Sub-log with every transaction at timestamp <= t (inclusive).
  TransactionLog up_to(std::int64_t t) const {
    TransactionLog out;
    out.names_ = names_;
    out.dropped_self_loops_ = dropped_self_loops_;
    const auto end = std::upper_bound(
        transactions_.begin(), transactions_.end(), t,
        [](std::int64_t value, const Transaction& tx) { return value < tx.timestamp; });
    out.transactions_.assign(transactions_.begin(), end);
    out.recompute_nodes();
    return out;
  }

  /// Sub-log with transactions in [t - delta, t], both bounds inclusive.
  TransactionLog window(std::int64_t t, std::int64_t delta) const {
    if (delta < 0) throw std::invalid_argument("window length must be non-negative");
    TransactionLog out;
    out.names_ = names_;
    out.dropped_self_loops_ = dropped_self_loops_;
    for (const Transaction& tx : transactions_) {
      if (tx.timestamp > t) break;
      if (t - tx.timestamp <= delta) out.transactions_.push_back(tx);
    }
    out.recompute_nodes();
    return out;
  }

  // Structural equality: same message sequence (as unordered name pairs with
  // timestamps) and same node name set. Registry id assignment and ingestion
  // bookkeeping such as the dropped self-loop count do not participate.
  friend bool operator==(const TransactionLog& a, const TransactionLog& b) {
    if (a.transactions_.size() != b.transactions_.size()) return false;
    for (std::size_t i = 0; i < a.transactions_.size(); ++i) {
      const Transaction& ta = a.transactions_[i];
      const Transaction& tb = b.transactions_[i];
      if (ta.timestamp != tb.timestamp) return false;
      auto lo_a = a.name(ta.u), hi_a = a.name(ta.v);
      if (hi_a < lo_a) std::swap(lo_a, hi_a);
      auto lo_b = b.name(tb.u), hi_b = b.name(tb.v);
      if (hi_b < lo_b) std::swap(lo_b, hi_b);
      if (lo_a != lo_b || hi_a != hi_b) return false;
    }
    auto sorted_names = [](const TransactionLog& log) {
      std::vector<std::string_view> out;
      out.reserve(log.nodes_.size());
      for (NodeId id : log.nodes_) out.push_back(log.name(id));
      std::sort(out.begin(), out.end());
      return out;
    };
    return sorted_names(a) == sorted_names(b);
  }

 private:
  friend TransactionLog ingest(std::span<const RawTransaction> records);

  void recompute_nodes() {
    nodes_.clear();
    nodes_.reserve(transactions_.size() * 2);
    for (const Transaction& tx : transactions_) {
      nodes_.push_back(tx.u);
      nodes_.push_back(tx.v);
    }
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  }

  std::shared_ptr<const std::vector<std::string>> names_;
  std::vector<Transaction> transactions_;
  std::vector<NodeId> nodes_;
  std::size_t dropped_self_loops_ = 0;
};

namespace detail {

inline bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') return false;
  return true;
}

}  // namespace detail

// Builds a log from raw records: validates identifiers and timestamps, drops
// (and counts) self-loops, canonicalizes pair order, and stable-sorts by
// timestamp so equal-time messages keep their input order.
inline TransactionLog ingest(std::span<const RawTransaction> records) {
  auto names = std::vector<std::string>{};
  std::unordered_map<std::string, NodeId> index;
  TransactionLog log;
  auto intern = [&](const std::string& name) {
    const auto [it, inserted] = index.try_emplace(name, static_cast<NodeId>(names.size()));
    if (inserted) names.push_back(name);
    return it->second;
  };
  log.transactions_.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RawTransaction& r = records[i];
    if (!detail::valid_identifier(r.src) || !detail::valid_identifier(r.dst))
      throw std::invalid_argument("record " + std::to_string(i) +
                                  ": node identifier is empty or contains ',', '\"' or a "
                                  "line break");
    if (r.timestamp < 0)
      throw std::invalid_argument("record " + std::to_string(i) + ": negative timestamp");
    if (r.src == r.dst) {
      ++log.dropped_self_loops_;
      continue;
    }
    NodeId a = intern(r.src);
    NodeId b = intern(r.dst);
    if (a > b) std::swap(a, b);
    log.transactions_.push_back({a, b, r.timestamp});
  }
  std::stable_sort(log.transactions_.begin(), log.transactions_.end(),
                   [](const Transaction& x, const Transaction& y) {
                     return x.timestamp < y.timestamp;
                   });
  log.names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  log.recompute_nodes();
  return log;
}

/// Malformed CSV input; carries the 1-based line number.
struct CsvParseError : std::runtime_error {
  CsvParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_number(line) {}
  std::size_t line_number;
};

// Reads the transaction format: header `src,dst,timestamp`, one message per
// row, `#` comment lines and blank lines skipped, timestamps in integer epoch
// seconds. A stream with no data rows yields a valid empty log.
inline TransactionLog read_transaction_csv(std::istream& in) {
  std::vector<RawTransaction> records;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xef\xbb\xbf")) line.erase(0, 3);
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "src,dst,timestamp")
        throw CsvParseError(line_no, "expected header src,dst,timestamp");
      header_seen = true;
      continue;
    }
    const auto first = line.find(',');
    const auto second = first == std::string::npos ? std::string::npos : line.find(',', first + 1);
    if (first == std::string::npos || second == std::string::npos ||
        line.find(',', second + 1) != std::string::npos)
      throw CsvParseError(line_no, "expected 3 comma-separated fields");
    RawTransaction r;
    r.src = line.substr(0, first);
    r.dst = line.substr(first + 1, second - first - 1);
    const char* ts_begin = line.data() + second + 1;
    const char* ts_end = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(ts_begin, ts_end, r.timestamp);
    if (ec != std::errc{} || ptr != ts_end)
      throw CsvParseError(line_no, "timestamp is not an integer");
    if (r.timestamp < 0) throw CsvParseError(line_no, "negative timestamp");
    if (!detail::valid_identifier(r.src) || !detail::valid_identifier(r.dst))
      throw CsvParseError(line_no, "node identifier is empty or contains a forbidden character");
    records.push_back(std::move(r));
  }
  return ingest(records);
}

inline TransactionLog read_transaction_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_transaction_csv(in);
}

// Writes the same format back out; endpoints of each pair are emitted in
// lexicographic order so a round trip reproduces the log structurally.
inline void write_transaction_csv(const TransactionLog& log, std::ostream& out) {
  out << "src,dst,timestamp\n";
  for (const Transaction& tx : log.transactions()) {
    auto lo = log.name(tx.u), hi = log.name(tx.v);
    if (hi < lo) std::swap(lo, hi);
    out << lo << ',' << hi << ',' << tx.timestamp << '\n';
  }
  if (!out) throw std::runtime_error("transaction log write failed");
}

inline void write_transaction_csv(const TransactionLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_transaction_csv(log, out);
}

}  // namespace probnet
