#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bookex/bookex.hpp"
#include "bookex_cli.hpp"
#include "support/oracles.hpp"

using namespace bookex;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  const int code = cli::run(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(CliConstruct, Book) {
  const Result r = run({"construct", "--family", "book", "--r", "3", "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 1u);
  const Graph g = decode_graph6(ls[0]);
  EXPECT_EQ(g.order(), 5u);
  EXPECT_EQ(g.edge_count(), 9u);
}

TEST(CliConstruct, G3) {
  const Result r = run({"construct", "--family", "g3", "--n", "11", "--r", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 1u);
  const Graph g = decode_graph6(ls[0]);
  EXPECT_EQ(g.edge_count(), 38u);
  EXPECT_TRUE(is_nonpartite_book_free(g, 3, 1));
}

TEST(CliConstruct, C5Blowup) {
  const Result r = run({"construct", "--family", "c5blowup", "--profile", "1,1,1,1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(is_isomorphic(decode_graph6(lines(r.out).at(0)), oracle::cycle(5)));
}

TEST(CliConstruct, DeduplicatedAndSorted) {
  const Result dedup = run({"construct", "--family", "c53", "--n", "7"});
  const Result raw = run({"construct", "--family", "c53", "--n", "7", "--raw"});
  EXPECT_EQ(lines(dedup.out).size(), 1u);
  EXPECT_EQ(lines(raw.out).size(), 2u);

  const Result g2 = run({"construct", "--family", "g2", "--n", "12", "--r", "3"});
  std::vector<CanonicalForm> forms;
  for (const auto& l : lines(g2.out)) forms.push_back(canonical_form(decode_graph6(l)));
  EXPECT_TRUE(std::is_sorted(forms.begin(), forms.end()));
  EXPECT_EQ(forms, canonical_set(family_g2(CaseParams(12, 3, 1))));
}

TEST(CliConstruct, OtherFamilies) {
  EXPECT_EQ(decode_graph6(lines(run({"construct", "--family", "turan", "--n", "10", "--r", "3"}).out).at(0)).edge_count(), 33u);
  const Result ks = run({"construct", "--family", "ks", "--parts", "4,4,4", "--s", "2"});
  ASSERT_EQ(ks.code, 0) << ks.err;
  EXPECT_EQ(decode_graph6(lines(ks.out).at(0)), near_complete_ks(PartitionSpec({4, 4, 4}), 2));
  EXPECT_EQ(lines(run({"construct", "--family", "c51", "--n", "8"}).out).size(), family_c5_1(8).size());
}

TEST(CliConstruct, UsageErrorsNameConstraint) {
  Result r = run({"construct", "--family", "g1", "--n", "8", "--r", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("q >= 3"), std::string::npos) << r.err;

  r = run({"construct", "--family", "c5blowup", "--profile", "1,1,1"});
  EXPECT_EQ(r.code, 2);
  r = run({"construct", "--family", "book", "--r", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--k"), std::string::npos);
  r = run({"construct", "--family", "nosuch"});
  EXPECT_EQ(r.code, 2);
  r = run({"construct", "--family", "ks", "--parts", "3,3", "--s", "1"});
  EXPECT_EQ(r.code, 2);
  r = run({});
  EXPECT_EQ(r.code, 2);
}

TEST(CliEval, Examples) {
  Result r = run({"eval", "--n", "12", "--r", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "value=45 n=12 r=3 k=1 q=4 p=0 case=G1_G2 families=G1,G2 mode=theorem1\n");

  r = run({"eval", "--n", "11", "--r", "3"});
  EXPECT_EQ(r.out, "value=38 n=11 r=3 k=1 q=3 p=2 case=G3_only families=G3 mode=theorem1\n");

  r = run({"eval", "--n", "8", "--r", "3", "--mode", "theorem14"});
  EXPECT_EQ(r.out, "value=20 n=8 r=3 k=1 q=2 p=2 case=SMALL_Q_C5_JOIN families=C5vT mode=theorem14\n");
}

TEST(CliEval, DomainErrors) {
  EXPECT_EQ(run({"eval", "--n", "8", "--r", "3"}).code, 1);
  EXPECT_EQ(run({"eval", "--n", "5", "--r", "3"}).code, 1);
  EXPECT_EQ(run({"eval", "--n", "12", "--r", "2"}).code, 1);
  EXPECT_EQ(run({"eval", "--n", "12"}).code, 2);
  EXPECT_EQ(run({"eval", "--n", "12", "--r", "3", "--mode", "other"}).code, 2);
}

TEST(CliCheck, Examples) {
  const std::string input = encode_graph6(c5_join_turan(7, 3)) + "\n" + encode_graph6(turan_graph(9, 3)) + "\n";
  Result r = run({"check", "--input", "-", "--r", "3", "--k", "1", "--witness"}, input);
  ASSERT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "line=1 order=7 size=15 colorable=false book=false candidate=true");
  EXPECT_NE(ls[1].find("colorable=true"), std::string::npos);
  EXPECT_NE(ls[1].find("candidate=false"), std::string::npos);
  EXPECT_NE(ls[1].find("coloring="), std::string::npos);

  r = run({"check", "--input", "-", "--r", "3", "--k", "2", "--witness"}, encode_graph6(complete_graph(5)) + "\n");
  ls = lines(r.out);
  ASSERT_EQ(ls.size(), 1u);
  EXPECT_NE(ls[0].find("book=true"), std::string::npos);
  EXPECT_NE(ls[0].find("candidate=false"), std::string::npos);
  EXPECT_NE(ls[0].find("book_clique=0,1,2 book_pages=3,4"), std::string::npos) << ls[0];
}

TEST(CliCheck, WitnessesAreValid) {
  std::mt19937_64 rng(21);
  std::string input;
  std::vector<Graph> graphs;
  for (int i = 0; i < 40; ++i) {
    graphs.push_back(oracle::random_graph(rng, 4 + rng() % 8, 0.6));
    input += encode_graph6(graphs.back()) + "\n";
  }
  const Result r = run({"check", "--input", "-", "--r", "3", "--k", "2", "--witness"}, input);
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), graphs.size());
  auto field = [](const std::string& l, const std::string& key) -> std::string {
    const auto at = l.find(" " + key + "=");
    if (at == std::string::npos) return {};
    const auto start = at + key.size() + 2;
    return l.substr(start, l.find(' ', start) - start);
  };
  auto numbers = [](const std::string& csv) {
    std::vector<std::size_t> out;
    std::istringstream is(csv);
    for (std::string x; std::getline(is, x, ',');) out.push_back(std::stoul(x));
    return out;
  };
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const std::string col = field(ls[i], "coloring");
    if (!col.empty()) { EXPECT_TRUE(is_proper_coloring(graphs[i], {numbers(col)}, 3)); }
    const std::string clique = field(ls[i], "book_clique");
    if (!clique.empty()) {
      const BookWitness w{VertexSet::from(graphs[i].order(), numbers(clique)),
                          VertexSet::from(graphs[i].order(), numbers(field(ls[i], "book_pages")))};
      EXPECT_TRUE(is_valid_book_witness(graphs[i], w, 3, 2));
    }
  }
}

TEST(CliCheck, MalformedLineNamed) {
  const Result r = run({"check", "--input", "-", "--r", "3", "--k", "1"}, "A_\nD\x01" "c\n");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(CliCheck, ReadsFile) {
  const auto path = std::filesystem::temp_directory_path() / "bookex_cli_check.g6";
  {
    std::ofstream f(path);
    f << ">>graph6<<" << encode_graph6(complete_graph(4)) << "\n";
  }
  const Result r = run({"check", "--input", path.string(), "--r", "3", "--k", "1"});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "line=1 order=4 size=6 colorable=false book=true candidate=false\n");
  EXPECT_EQ(run({"check", "--input", "/nonexistent/x.g6", "--r", "3", "--k", "1"}).code, 1);
}

TEST(CliSearch, Enumerate) {
  const Result r = run({"search", "--n", "7", "--r", "3", "--k", "1", "--method", "enumerate", "--emit", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "n=7 r=3 k=1 q=2 p=1 method=enumerate optimum=15 classes=1 exhaustive=true");
  EXPECT_TRUE(is_isomorphic(decode_graph6(ls[1]), c5_join_turan(7, 3)));
  EXPECT_NE(r.err.find("nodes="), std::string::npos);
}

TEST(CliSearch, BranchBoundLowerBound) {
  const Result r = run({"search", "--n", "9", "--r", "3", "--k", "2", "--method", "bb"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n=9 r=3 k=2 q=3 p=0 method=bb optimum=", 0), 0u) << r.out;
}

TEST(CliSearch, BudgetExhaustionIsNotAnError) {
  const Result r = run({"search", "--n", "9", "--r", "3", "--k", "2", "--method", "bb", "--node-limit", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("optimum=25"), std::string::npos);
  EXPECT_NE(r.out.find("exhaustive=false"), std::string::npos);
}

TEST(CliSearch, ByteIdenticalAcrossWorkers) {
  for (const auto& params : {std::vector<std::string>{"--n", "7", "--r", "3", "--k", "1"},
                             std::vector<std::string>{"--n", "9", "--r", "3", "--k", "2"}}) {
    std::string first;
    for (const char* workers : {"1", "2", "4"}) {
      std::vector<std::string> args{"search"};
      args.insert(args.end(), params.begin(), params.end());
      args.insert(args.end(), {"--method", "bb", "--workers", workers, "--emit", "-"});
      const Result r = run(args);
      ASSERT_EQ(r.code, 0) << r.err;
      if (first.empty()) first = r.out;
      EXPECT_EQ(r.out, first);
    }
  }
}

TEST(CliSearch, UsageErrors) {
  EXPECT_EQ(run({"search", "--n", "7", "--r", "3", "--k", "1", "--method", "magic"}).code, 2);
  EXPECT_EQ(run({"search", "--n", "7", "--r", "3", "--k", "1", "--method", "bb", "--workers", "0"}).code, 2);
  EXPECT_EQ(run({"search", "--n", "30", "--r", "3", "--k", "1", "--method", "bb"}).code, 1);
}

TEST(CliVerify, SmallOrders) {
  const Result r = run({"verify", "--r", "3", "--k", "1", "--n-from", "7", "--n-to", "8", "--mode", "theorem14"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "n=7 r=3 k=1 q=2 p=1 formula=15 family_opt=15 oracle=15 exhaustive=true verdict=AGREE\n"
            "n=8 r=3 k=1 q=2 p=2 formula=20 family_opt=20 oracle=20 exhaustive=true verdict=AGREE\n");
}

TEST(CliVerify, DisagreementOnlyFailsWhenStrict) {
  const std::vector<std::string> base{"verify", "--r", "3", "--k", "1", "--n-from", "6", "--n-to", "6", "--mode", "theorem14"};
  const Result lax = run(base);
  EXPECT_EQ(lax.code, 0);
  EXPECT_NE(lax.out.find("formula=11 family_opt=10 oracle=10"), std::string::npos);
  EXPECT_NE(lax.out.find("verdict=DISAGREE"), std::string::npos);
  auto strict = base;
  strict.push_back("--strict");
  EXPECT_EQ(run(strict).code, 1);
}

TEST(CliVerify, LargeOrdersOptimizerOnly) {
  const Result r = run({"verify", "--r", "4", "--k", "1", "--n-from", "40", "--n-to", "44"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 5u);
  for (const auto& l : ls) {
    EXPECT_NE(l.find("verdict=AGREE"), std::string::npos) << l;
    EXPECT_NE(l.find("oracle=NA"), std::string::npos) << l;
  }
}

TEST(CliVerify, EmptyRangeIsUsageError) {
  EXPECT_EQ(run({"verify", "--r", "3", "--k", "1", "--n-from", "9", "--n-to", "8"}).code, 2);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"construct", "--family", "g2", "--n", "14", "--r", "4"};
  EXPECT_EQ(run(args).out, run(args).out);
}
