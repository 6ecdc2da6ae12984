#include <catch2/catch.hpp>

#include <map>
#include <random>

#include "movemine/mine_itemset.hpp"
#include "oracles.hpp"

using namespace movemine;

namespace {

std::map<std::string, int> as_map(const std::vector<Pattern>& ps) {
  std::map<std::string, int> m;
  for (const auto& p : ps) m[p.symbols] = p.support_count;
  return m;
}

}  // namespace

TEST_CASE("to_transaction collapses repeats into sorted distinct symbols") {
  CHECK(to_transaction("ijfeikhddb") == "bdefhijk");
  CHECK(to_transaction("aaaa") == "a");
  CHECK(to_transaction("abc") == "abc");
  CHECK(to_transaction("VaA") == "AVa");  // uppercase sorts before lowercase
  CHECK_THROWS_WITH(to_transaction(""), Catch::Contains("empty-input"));
}

TEST_CASE("to_transactions keeps one transaction per sequence") {
  auto ts = to_transactions({"abab", "ba", "c"});
  REQUIRE(ts.size() == 3);
  CHECK(ts[0] == "ab");
  CHECK(ts[1] == "ab");  // not deduplicated across sequences
  CHECK(ts[2] == "c");
  CHECK_THROWS_WITH(to_transactions({}), Catch::Contains("empty-input"));
}

TEST_CASE("closed itemsets keep subsets only at higher support") {
  // {a,b}, {a,b}, {a}; threshold 2
  auto out = mine_closed_itemsets({"ab", "ab", "a"}, {.min_support = 0.6});
  auto m = as_map(out);
  REQUIRE(m.size() == 2);
  CHECK(m.at("ab") == 2);
  CHECK(m.at("a") == 3);
}

TEST_CASE("a single transaction yields exactly its own item set") {
  auto out = mine_closed_itemsets({"xy"}, {.min_support = 1.0});
  REQUIRE(out.size() == 1);
  CHECK(out[0].symbols == "xy");
  CHECK(out[0].support_count == 1);
  CHECK(out[0].kind == PatternKind::Itemset);
}

TEST_CASE("a threshold above every item frequency yields nothing") {
  auto out = mine_closed_itemsets({"ab", "cd", "ef"}, {.min_support = 0.7});
  CHECK(out.empty());
  CHECK_THROWS_WITH(mine_closed_itemsets({}, {}), Catch::Contains("empty-input"));
}

TEST_CASE("rendered itemsets are strictly ascending and duplicate-free") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 30; ++round) {
    std::vector<std::string> seqs;
    int n = 1 + int(rng() % 10);
    for (int i = 0; i < n; ++i)
      seqs.push_back(oracle::random_string(rng, 10, 6, 'a', 1));
    auto out = mine_closed_itemsets(to_transactions(seqs), {.min_support = 0.2});
    for (const auto& p : out)
      for (size_t i = 1; i < p.symbols.size(); ++i)
        CHECK(p.symbols[i - 1] < p.symbols[i]);
  }
}

TEST_CASE("mined closed itemsets equal the exhaustive lattice scan") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 300; ++round) {
    int n = 1 + int(rng() % 12);
    int alphabet = 1 + int(rng() % 8);
    std::vector<std::string> transactions;
    for (int i = 0; i < n; ++i)
      transactions.push_back(
          to_transaction(oracle::random_string(rng, 8, alphabet, 'a', 1)));
    MinerConfig cfg;
    cfg.max_len = 1 + int(rng() % 8);
    int threshold = 1 + int(rng() % n);
    cfg.min_support = double(threshold) / double(n);
    REQUIRE(support_threshold(cfg, transactions.size()) == threshold);

    auto expected = oracle::closed_itemsets(transactions, threshold, cfg.max_len);
    auto got = mine_closed_itemsets(transactions, cfg);
    REQUIRE(as_map(got) == as_map(expected));
  }
}

TEST_CASE("every frequent itemset maps to one equal-support closed superset") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 60; ++round) {
    int n = 1 + int(rng() % 10);
    std::vector<std::string> transactions;
    for (int i = 0; i < n; ++i)
      transactions.push_back(
          to_transaction(oracle::random_string(rng, 8, 6, 'a', 1)));
    int threshold = 1 + int(rng() % n);
    MinerConfig cfg;
    cfg.min_support = double(threshold) / double(n);
    cfg.max_len = 20;

    auto closed = mine_closed_itemsets(transactions, cfg);
    for (const auto& [itemset, supp] : oracle::frequent_itemsets(transactions, threshold)) {
      int matches = 0;
      for (const auto& c : closed) {
        if (c.support_count != supp) continue;
        bool superset = true;
        for (char item : itemset)
          if (c.symbols.find(item) == std::string::npos) superset = false;
        if (superset) ++matches;
      }
      CHECK(matches == 1);
    }
  }
}
