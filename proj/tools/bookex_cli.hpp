#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bookex/bookex.hpp"

namespace bookex::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string join_list(const std::vector<Vertex>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

inline TheoremMode parse_mode(const std::string& mode) {
  if (mode == "theorem1") return TheoremMode::theorem1;
  if (mode == "theorem14") return TheoremMode::theorem14;
  throw UsageError("unknown mode '" + mode + "' (expected theorem1 or theorem14)");
}

template <typename T>
const T& require(const std::optional<T>& v, const std::string& flag, const std::string& family) {
  if (!v) throw UsageError("--family " + family + " requires " + flag);
  return *v;
}

struct ConstructArgs {
  std::string family;
  std::optional<std::size_t> n, r, k, s;
  std::vector<std::size_t> profile, parts;
  bool raw = false;
};

inline std::vector<Graph> construct(const ConstructArgs& a) {
  const FamilyOutput mode = a.raw ? FamilyOutput::raw : FamilyOutput::isomorphism_classes;
  const std::string& f = a.family;
  try {
    if (f == "turan") return {turan_graph(require(a.n, "--n", f), require(a.r, "--r", f))};
    if (f == "c5blowup") {
      if (a.profile.size() != 5) throw UsageError("--family c5blowup requires --profile with exactly 5 sizes");
      return {c5_blowup({{a.profile[0], a.profile[1], a.profile[2], a.profile[3], a.profile[4]}})};
    }
    if (f == "c51") return family_c5_1(require(a.n, "--n", f), mode);
    if (f == "c52") return family_c5_2(require(a.n, "--n", f), mode);
    if (f == "c53") return family_c5_3(require(a.n, "--n", f), mode);
    if (f == "g1" || f == "g2" || f == "g3") {
      const CaseParams params(require(a.n, "--n", f), require(a.r, "--r", f), a.k.value_or(1));
      if (f == "g1") return family_g1(params, mode);
      if (f == "g2") return family_g2(params, mode);
      return family_g3(params, mode);
    }
    if (f == "book") return {generalized_book(require(a.r, "--r", f), require(a.k, "--k", f))};
    if (f == "ks") {
      if (a.parts.empty()) throw UsageError("--family ks requires --parts");
      const PartitionSpec spec(a.parts);
      if (a.r && *a.r != spec.part_count()) throw UsageError("--r must equal the number of --parts");
      return {near_complete_ks(spec, require(a.s, "--s", f))};
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown family '" + f + "'");
}

inline int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  std::vector<Graph> graphs = construct(a);
  if (!a.raw) {
    std::vector<std::pair<CanonicalForm, Graph>> keyed;
    for (auto& g : graphs) keyed.emplace_back(canonical_form(g), std::move(g));
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    graphs.clear();
    for (auto& [form, g] : keyed) graphs.push_back(std::move(g));
  }
  for (const Graph& g : graphs) out << encode_graph6(g) << '\n';
  return kOk;
}

inline int cmd_eval(std::size_t n, std::size_t r, std::size_t k, const std::string& mode_name, std::ostream& out) {
  const TheoremMode mode = parse_mode(mode_name);
  const CaseParams params(n, r, k);
  const ExtremalCase c = extremal_case(params, mode);
  std::string fams;
  for (std::size_t i = 0; i < c.families.size(); ++i) fams += (i ? "," : "") + std::string(to_string(c.families[i]));
  out << "value=" << ex_nonpartite_value(params) << " n=" << n << " r=" << r << " k=" << k << " q=" << params.q()
      << " p=" << params.p() << " case=" << to_string(c.label) << " families=" << fams << " mode=" << to_string(mode) << '\n';
  return kOk;
}

inline int cmd_check(const std::string& input, std::size_t r, std::size_t k, bool witness, std::istream& in, std::ostream& out) {
  if (r < 3 || k < 1) throw UsageError("check requires --r >= 3 and --k >= 1");
  std::ifstream file;
  std::istream* src = &in;
  if (input != "-") {
    file.open(input);
    if (!file) throw std::runtime_error("cannot open " + input);
    src = &file;
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(*src, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Graph g;
    try {
      g = decode_graph6(line);
    } catch (const Graph6Error& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    const auto coloring = is_r_colorable(g, r);
    const auto book = contains_generalized_book(g, r, k);
    out << "line=" << line_no << " order=" << g.order() << " size=" << g.edge_count()
        << " colorable=" << (coloring ? "true" : "false") << " book=" << (book ? "true" : "false")
        << " candidate=" << (!coloring && !book ? "true" : "false");
    if (witness) {
      if (coloring) out << " coloring=" << join_list(coloring->colors);
      if (book) out << " book_clique=" << join_list(book->clique.members()) << " book_pages=" << join_list(book->pages.members());
    }
    out << '\n';
  }
  return kOk;
}

inline SearchBudget make_budget(std::size_t workers, double time_limit_s, std::uint64_t node_limit) {
  SearchBudget b;
  b.workers = workers;
  if (time_limit_s > 0) b.time_limit = std::chrono::milliseconds(static_cast<long long>(time_limit_s * 1000.0));
  if (node_limit > 0) b.node_limit = node_limit;
  b.validate();
  return b;
}

inline int cmd_search(std::size_t n, std::size_t r, std::size_t k, const std::string& method, const SearchBudget& budget,
                      const std::string& emit, std::ostream& out, std::ostream& err) {
  ExtremalReport rep;
  if (method == "enumerate") {
    rep = enumerate_extremal(n, r, k, budget);
  } else if (method == "bb") {
    rep = branch_bound_extremal(n, r, k, budget);
  } else {
    throw UsageError("unknown method '" + method + "' (expected enumerate or bb)");
  }
  out << format_report(rep) << '\n';
  err << "stats " << format_stats(rep) << '\n';
  if (!emit.empty()) {
    std::ofstream file;
    std::ostream* dst = &out;
    if (emit != "-") {
      file.open(emit);
      if (!file) throw std::runtime_error("cannot write " + emit);
      dst = &file;
    }
    for (const auto& f : rep.extremal) *dst << f.bytes() << '\n';
  }
  return kOk;
}

inline int cmd_verify(std::size_t r, std::size_t k, std::size_t from, std::size_t to, const std::string& mode, bool strict,
                      const VerifyOptions& base, std::ostream& out) {
  if (from > to) throw UsageError("--n-from must not exceed --n-to");
  VerifyOptions opts = base;
  opts.mode = parse_mode(mode);
  bool disagree = false;
  for (std::size_t n = from; n <= to; ++n) {
    const VerifyRecord rec = verify_order(n, r, k, opts);
    out << format_record(rec) << '\n';
    out.flush();
    disagree = disagree || rec.verdict == Verdict::DISAGREE;
  }
  return strict && disagree ? kDomainError : kOk;
}

}  // namespace detail

/// Runs the command line; never exits the process.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  CLI::App app{"Non-r-partite Turan numbers of generalized book graphs"};
  app.require_subcommand(1);

  detail::ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Emit graph6 lines for a named construction");
  construct->add_option("--family", ca.family, "turan|c5blowup|c51|c52|c53|g1|g2|g3|book|ks")
      ->required()
      ->check(CLI::IsMember({"turan", "c5blowup", "c51", "c52", "c53", "g1", "g2", "g3", "book", "ks"}));
  construct->add_option("--n", ca.n, "order");
  construct->add_option("--r", ca.r, "clique parameter r");
  construct->add_option("--k", ca.k, "page count k");
  construct->add_option("--s", ca.s, "split for the ks construction");
  construct->add_option("--profile", ca.profile, "n1,n2,n3,n4,n5")->delimiter(',');
  construct->add_option("--parts", ca.parts, "t1,...,tr")->delimiter(',');
  construct->add_flag("--raw", ca.raw, "keep isomorphic duplicates in parameter order");

  std::size_t n = 0, r = 0, k = 1;
  std::string mode = "theorem1";
  auto* eval = app.add_subcommand("eval", "Evaluate the closed form and the extremal case");
  eval->add_option("--n", n)->required();
  eval->add_option("--r", r)->required();
  eval->add_option("--k", k);
  eval->add_option("--mode", mode)->check(CLI::IsMember({"theorem1", "theorem14"}));

  std::string input;
  bool witness = false;
  auto* check = app.add_subcommand("check", "Test graph6 input against the candidacy predicate");
  check->add_option("--input", input, "graph6 file, or - for stdin")->required();
  check->add_option("--r", r)->required();
  check->add_option("--k", k)->required();
  check->add_flag("--witness", witness, "print a colouring or an embedded book");

  std::string method, emit;
  std::size_t workers = 1;
  double time_limit = 0;
  std::uint64_t node_limit = 0;
  auto* search = app.add_subcommand("search", "Exact search for the extremal number");
  search->add_option("--n", n)->required();
  search->add_option("--r", r)->required();
  search->add_option("--k", k)->required();
  search->add_option("--method", method)->required()->check(CLI::IsMember({"enumerate", "bb"}));
  search->add_option("--workers", workers)->check(CLI::PositiveNumber);
  search->add_option("--time-limit", time_limit, "seconds")->check(CLI::NonNegativeNumber);
  search->add_option("--node-limit", node_limit);
  search->add_option("--emit", emit, "write extremal graphs as graph6 (- for stdout)");

  std::size_t from = 0, to = 0;
  bool strict = false;
  VerifyOptions vopts;
  auto* verify = app.add_subcommand("verify", "Compare formula, family optimizer and search oracle per order");
  verify->add_option("--r", r)->required();
  verify->add_option("--k", k)->required();
  verify->add_option("--n-from", from)->required();
  verify->add_option("--n-to", to)->required();
  verify->add_option("--mode", mode)->check(CLI::IsMember({"theorem1", "theorem14"}));
  verify->add_flag("--strict", strict, "exit 1 if any row disagrees");
  verify->add_option("--workers", workers)->check(CLI::PositiveNumber);
  verify->add_option("--time-limit", time_limit, "seconds per search")->check(CLI::NonNegativeNumber);
  verify->add_option("--max-enumeration-order", vopts.max_enumeration_order);
  verify->add_option("--max-search-order", vopts.max_search_order);

  std::vector<std::string> argv_store{"bookex"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (construct->parsed()) return detail::cmd_construct(ca, out);
    if (eval->parsed()) return detail::cmd_eval(n, r, k, mode, out);
    if (check->parsed()) return detail::cmd_check(input, r, k, witness, in, out);
    if (search->parsed()) {
      return detail::cmd_search(n, r, k, method, detail::make_budget(workers, time_limit, node_limit), emit, out, err);
    }
    if (verify->parsed()) {
      vopts.budget = detail::make_budget(workers, time_limit, 0);
      return detail::cmd_verify(r, k, from, to, mode, strict, vopts, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace bookex::cli
