#include <doctest.h>

#include <random>
#include <sstream>

#include "probnet/temporal_log.hpp"
#include "support/synthetic.hpp"

using namespace probnet;
using probnet::testing::make_log;

TEST_SUITE("temporal_log") {

TEST_CASE("ingest sorts by timestamp and collects nodes") {
  const TransactionLog log = make_log({{"a", "b", 100}, {"b", "a", 50}});
  REQUIRE(log.size() == 2);
  CHECK(log.transactions()[0].timestamp == 50);
  CHECK(log.transactions()[1].timestamp == 100);
  REQUIRE(log.node_count() == 2);
  CHECK(log.name(log.nodes()[0]) == "a");
  CHECK(log.name(log.nodes()[1]) == "b");
}

TEST_CASE("ingest drops and counts self-loops") {
  const TransactionLog log = make_log({{"a", "a", 10}});
  CHECK(log.empty());
  CHECK(log.dropped_self_loops() == 1);
  CHECK(log.node_count() == 0);
}

TEST_CASE("ingest keeps duplicate messages and is stable on timestamp ties") {
  const TransactionLog log = make_log({{"a", "b", 7}, {"c", "d", 7}, {"a", "b", 7}});
  REQUIRE(log.size() == 3);
  CHECK(log.name(log.transactions()[0].u) == "a");
  CHECK(log.name(log.transactions()[1].u) == "c");
  CHECK(log.name(log.transactions()[2].u) == "a");
}

TEST_CASE("ingest stores pairs without direction") {
  const TransactionLog log = make_log({{"b", "a", 1}, {"a", "b", 2}});
  const Transaction& t0 = log.transactions()[0];
  const Transaction& t1 = log.transactions()[1];
  CHECK(t0.u == t1.u);
  CHECK(t0.v == t1.v);
}

TEST_CASE("ingest rejects bad records") {
  CHECK_THROWS_AS(make_log({{"", "b", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_log({{"a", "b", -1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_log({{"a,b", "c", 1}}), std::invalid_argument);
  CHECK(make_log({}).empty());
}

TEST_CASE("up_to filters inclusively") {
  const TransactionLog log = make_log({{"a", "b", 50}, {"b", "c", 100}});
  CHECK(log.up_to(75).size() == 1);
  CHECK(log.up_to(100).size() == 2);
  CHECK(log.up_to(0).empty());
  SUBCASE("node set is recomputed") {
    const TransactionLog early = log.up_to(75);
    REQUIRE(early.node_count() == 2);
    CHECK(early.name(early.nodes()[0]) == "a");
    CHECK(early.name(early.nodes()[1]) == "b");
  }
}

TEST_CASE("up_to composes as a min of bounds") {
  const TransactionLog log =
      make_log({{"a", "b", 10}, {"b", "c", 20}, {"c", "d", 30}, {"d", "a", 40}});
  CHECK(log.up_to(25).up_to(35) == log.up_to(25));
  CHECK(log.up_to(35).up_to(25) == log.up_to(25));
}

TEST_CASE("window keeps both bounds inclusive") {
  const TransactionLog log = make_log({{"a", "b", 50}, {"b", "c", 100}, {"c", "d", 200}});
  const TransactionLog w = log.window(200, 100);
  REQUIRE(w.size() == 2);
  CHECK(w.transactions()[0].timestamp == 100);
  CHECK(w.transactions()[1].timestamp == 200);
}

TEST_CASE("window with zero length keeps only exact matches") {
  const TransactionLog log = make_log({{"a", "b", 50}, {"b", "c", 100}});
  const TransactionLog w = log.window(100, 0);
  REQUIRE(w.size() == 1);
  CHECK(w.transactions()[0].timestamp == 100);
}

TEST_CASE("window rejects negative lengths and matches up_to when unbounded") {
  const TransactionLog log = make_log({{"a", "b", 50}, {"b", "c", 100}, {"a", "c", 150}});
  CHECK_THROWS_AS(log.window(100, -1), std::invalid_argument);
  CHECK(log.window(120, std::numeric_limits<std::int64_t>::max()) == log.up_to(120));
}

TEST_CASE("csv reader parses header, comments and CRLF") {
  std::istringstream in(
      "# a comment\n"
      "src,dst,timestamp\r\n"
      "a,b,100\r\n"
      "\n"
      "# another comment\n"
      "b,c,50\n");
  const TransactionLog log = read_transaction_csv(in);
  REQUIRE(log.size() == 2);
  CHECK(log.transactions()[0].timestamp == 50);
  CHECK(log.node_count() == 3);
}

TEST_CASE("csv reader reports the offending line") {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_transaction_csv(in);
    } catch (const CsvParseError& e) {
      return e.line_number;
    }
    return std::size_t{0};
  };
  CHECK(line_of("src,dst,timestamp\na,b,1\na,b\n") == 3);
  CHECK(line_of("src,dst,timestamp\na,b,oops\n") == 2);
  CHECK(line_of("src,dst,timestamp\na,b,-5\n") == 2);
  CHECK(line_of("not,a,header\n") == 1);
}

TEST_CASE("csv reader accepts empty input as an empty log") {
  std::istringstream in("");
  CHECK(read_transaction_csv(in).empty());
  std::istringstream comments_only("# nothing here\n");
  CHECK(read_transaction_csv(comments_only).empty());
}

TEST_CASE("ingestion round-trips through the csv writer") {
  std::mt19937_64 rng(20240);
  for (int round = 0; round < 20; ++round) {
    std::vector<RawTransaction> records;
    const int n = 2 + static_cast<int>(rng() % 8);
    const int count = static_cast<int>(rng() % 40);
    for (int i = 0; i < count; ++i) {
      const auto a = "p" + std::to_string(rng() % n);
      const auto b = "p" + std::to_string(rng() % n);
      records.push_back({a, b, static_cast<std::int64_t>(rng() % 1000)});
    }
    const TransactionLog log = ingest(records);
    std::ostringstream out;
    write_transaction_csv(log, out);
    std::istringstream in(out.str());
    CHECK(read_transaction_csv(in) == log);
  }
}

}  // TEST_SUITE
