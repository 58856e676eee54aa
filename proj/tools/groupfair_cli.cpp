// groupfair command-line front end.
// Exit codes: 0 success or found, 2 certified non-existence, 1 errors.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "groupfair/algorithms.hpp"
#include "groupfair/binary_solver.hpp"
#include "groupfair/corpus.hpp"
#include "groupfair/fairness.hpp"
#include "groupfair/fuzz.hpp"
#include "groupfair/io.hpp"
#include "groupfair/kneser.hpp"
#include "groupfair/oracle.hpp"
#include "groupfair/reduction.hpp"

using namespace groupfair;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNone = 2;

// Internal consistency failure: an algorithm produced output its own
// checker rejects.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

void verify(bool ok, const std::string& what) {
  if (!ok) throw VerificationError("verification failed: " + what);
}

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  const bool leafy_array = j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_object(); });
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, rows);
  } else if (j.is_array() && !leafy_array) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(path, scalar(j));
  }
}

void print_table(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) std::cout << k << std::string(w - k.size() + 2, ' ') << v << '\n';
}

struct Context {
  std::string format = "json";
  std::string command;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(Json result) const {
    Json report;
    report["command"] = command;
    for (auto& [k, v] : result.items()) report[k] = v;
    report["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (format == "table") {
      print_table(report);
    } else {
      std::cout << report.dump(2) << '\n';
    }
  }
};

Json digest(const Instance& inst) {
  Json d;
  d["m"] = inst.num_goods;
  d["n"] = inst.num_agents();
  d[inst.has_fixed_groups() ? "fixed_group_sizes" : "variable_group_sizes"] = inst.group_sizes();
  return d;
}

SearchOptions search_options(int jobs, bool serial) {
  SearchOptions o;
  o.execution = serial ? Execution::serial : Execution::parallel;
  o.jobs = jobs;
  return o;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw DataError("expected a comma-separated list of integers, got \"" + s + "\"");
    }
  }
  return out;
}

std::vector<int> line_order(const std::string& spec, int m) {
  if (spec.empty()) return identity_order(m);
  auto order = parse_int_list(spec);
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != identity_order(m)) throw DataError("--order must be a permutation of 0..m-1");
  return order;
}

// Corpus documents carry their instance under "instance" and defaults under "search".
Instance load_instance(const std::string& path, Json* search = nullptr) {
  auto doc = read_json_file(path);
  if (doc.is_object() && doc.contains("instance")) {
    if (search && doc.contains("search")) *search = doc["search"];
    return instance_from_json(doc["instance"]);
  }
  return instance_from_json(doc);
}

// ---- check

struct CheckArgs {
  std::string instance, allocation, notion = "ef1";
  int c = 1;
};

int run_check(const Context& ctx, const CheckArgs& a) {
  auto inst = load_instance(a.instance);
  auto doc = read_json_file(a.allocation);
  auto alloc = allocation_from_json(doc, inst.num_goods);
  const Notion notion = parse_notion(a.notion, a.c);
  FairnessReport report;
  std::optional<AgentPartition> part;
  if (inst.has_fixed_groups()) {
    if (alloc.num_groups() != inst.num_groups()) throw DataError("allocation has the wrong number of bundles");
    report = is_fair(inst, alloc, notion);
  } else {
    if (!doc.is_object() || !doc.contains("partition")) throw DataError("variable groups need a \"partition\"");
    part = partition_from_json(doc["partition"], inst.num_groups());
    report = is_fair(inst, alloc, *part, notion);
  }
  Json out;
  out["instance"] = digest(inst);
  out["result"] = allocation_document(alloc, part, notion, report);
  out["balanced_goods"] = is_balanced(alloc);
  ctx.emit(out);
  return kExitOk;
}

// ---- solve

struct SolveArgs {
  std::string instance, algo, order;
  bool trace = false;
  int jobs = 0;
};

int run_solve(const Context& ctx, const SolveArgs& a) {
  auto inst = load_instance(a.instance);
  const int m = inst.num_goods;
  Json out;
  out["instance"] = digest(inst);
  out["algorithm"] = a.algo;
  Allocation alloc;
  std::optional<AgentPartition> part;
  Notion notion = Notion::ef1();
  FairnessReport report;

  if (a.algo == "exact1") {
    if (inst.num_agents() != 2) throw DataError("exact1 needs exactly two agents");
    auto p = exact1_partition(inst.agents[0], inst.agents[1], m);
    alloc.bundles = {p.first, p.second};
    const bool ok = is_exact1(inst.agents[0], p.first, p.second) && is_exact1(inst.agents[1], p.first, p.second);
    verify(ok && is_balanced(alloc), "exact1 output");
    Json r;
    r["bundles"] = to_json(alloc);
    r["exact1_for_both"] = ok;
    out["result"] = r;
    ctx.emit(out);
    return kExitOk;
  }
  if (a.algo == "ef1-21") {
    alloc = ef1_two_one(inst);
    report = is_fair(inst, alloc, notion);
  } else if (a.algo == "binary") {
    auto res = solve_ef1_binary(inst, search_options(a.jobs, false));
    if (a.trace) out["trace"] = to_json(res.trace);
    out["reduction_complete"] = res.reduction_complete;
    out["fallback_used"] = !res.reduction_complete;
    if (!res.allocation) {
      out["result"] = {{"outcome", "exhausted"}, {"examined", res.certificate->examined()}};
      ctx.emit(out);
      return kExitNone;
    }
    alloc = *res.allocation;
    report = is_fair(inst, alloc, notion);
  } else if (a.algo == "cutchoose" || a.algo == "knife" || a.algo == "prop" || a.algo == "roundrobin") {
    const auto order = line_order(a.order, m);
    if (a.algo == "roundrobin") {
      alloc = round_robin(inst.agents, m);
      part = AgentPartition{identity_order(inst.num_agents()), inst.num_agents()};
      report = is_fair(inst.agents, alloc, *part, notion);
      verify(is_balanced(alloc), "round-robin bundle sizes");
    } else {
      VariableOutcome res;
      if (a.algo == "knife") {
        res = rotating_knife(inst.agents, order);
        verify(is_balanced(res.partition) && is_balanced(res.allocation), "knife balancedness");
      } else {
        const auto sizes = inst.variable().sizes;
        if (a.algo == "cutchoose") {
          if (sizes.size() != 2) throw DataError("cutchoose needs two variable groups");
          res = cut_and_choose_ef1(inst.agents, sizes[0], sizes[1], order);
        } else {
          res = proportional_k_groups(inst.agents, sizes, order);
        }
        verify(res.partition.sizes() == sizes, "group sizes");
      }
      alloc = res.allocation;
      part = res.partition;
      if (a.algo == "prop") {
        const int k = inst.num_groups();
        notion = Notion::prop(k);
        report = is_fair(inst.agents, alloc, *part, notion);
        // The guarantee is the relaxed bound, not full Prop(k).
        bool bound = true;
        for (AgentId j = 0; j < inst.num_agents(); ++j) {
          bound = bound && meets_proportional_bound(inst.agents[j], alloc.bundles[part->group_of[j]], k, m);
        }
        verify(bound, "proportionality bound");
        out["bound_met"] = bound;
      } else {
        report = is_fair(inst.agents, alloc, *part, notion);
      }
    }
  } else {
    throw DataError("unknown algorithm: " + a.algo);
  }
  if (notion.tag != Notion::Tag::prop) verify(report.overall, a.algo + " output is not " + to_string(notion));
  out["result"] = allocation_document(alloc, part, notion, report);
  ctx.emit(out);
  return kExitOk;
}

// ---- search

struct SearchArgs {
  std::string instance, notion, partition;
  int c = 1, jobs = 0;
  bool balanced_goods = false, balanced_agents = false, serial = false;
};

int run_search(const Context& ctx, const SearchArgs& a) {
  Json defaults;
  auto inst = load_instance(a.instance, &defaults);
  SearchConstraints cons = defaults.is_object() ? constraints_from_json(defaults) : SearchConstraints{};
  if (!a.notion.empty()) cons.notion = parse_notion(a.notion, a.c);
  cons.balanced_allocation = cons.balanced_allocation || a.balanced_goods;
  cons.balanced_partition = cons.balanced_partition || a.balanced_agents;
  if (!a.partition.empty()) {
    const auto groups = parse_int_list(a.partition);
    cons.fixed_partition = AgentPartition{groups, inst.num_groups()};
  }
  auto cert = find_fair(inst, cons, search_options(a.jobs, a.serial));
  Json out;
  out["instance"] = digest(inst);
  out["constraints"] = to_json(cons);
  out["search_space"] = search_space_size(inst, cons);
  if (!cert.found()) {
    out["result"] = {{"outcome", "exhausted"}, {"examined", cert.examined()}};
    ctx.emit(out);
    return kExitNone;
  }
  const auto& w = cert.witness();
  const AgentPartition part = w.partition ? *w.partition : partition_of(inst.fixed(), inst.num_agents());
  auto report = is_fair(inst, w.allocation, part, cons.notion);
  verify(report.overall, "search witness");
  if (cons.balanced_allocation) verify(is_balanced(w.allocation), "witness bundle sizes");
  if (cons.balanced_partition) verify(is_balanced(part), "witness group sizes");
  Json r = allocation_document(w.allocation, w.partition, cons.notion, report);
  r["outcome"] = "found";
  r["index"] = w.index;
  out["result"] = r;
  ctx.emit(out);
  return kExitOk;
}

// ---- corpus

struct CorpusArgs {
  bool run_all = false;
  std::string name, export_dir;
  int jobs = 0;
};

int run_corpus(const Context& ctx, const CorpusArgs& a) {
  if (!a.export_dir.empty()) {
    std::filesystem::create_directories(a.export_dir);
    Json written = Json::array();
    for (const auto& e : corpus()) {
      const auto path = (std::filesystem::path(a.export_dir) / (e.name + ".json")).string();
      write_text_file(path, to_json(e).dump(2) + "\n");
      written.push_back(path);
    }
    ctx.emit(Json{{"exported", written}});
    return kExitOk;
  }
  std::vector<CorpusEntry> entries;
  if (!a.name.empty()) {
    entries.push_back(corpus_entry(a.name));
  } else if (a.run_all) {
    entries = corpus();
  } else {
    Json names = Json::array();
    for (const auto& e : corpus()) names.push_back({{"name", e.name}, {"description", e.description}});
    ctx.emit(Json{{"entries", names}});
    return kExitOk;
  }
  bool all = true;
  std::vector<CorpusOutcome> outcomes;
  for (const auto& e : entries) {
    outcomes.push_back(run_corpus_entry(e, search_options(a.jobs, false)));
    all = all && outcomes.back().pass;
  }
  if (ctx.format == "table") {
    size_t w = 4;
    for (const auto& o : outcomes) w = std::max(w, o.name.size());
    for (const auto& o : outcomes) {
      std::printf("%-*s  %s  %8.3fs  %s\n", static_cast<int>(w), o.name.c_str(), o.pass ? "PASS" : "FAIL", o.seconds,
                  o.detail.c_str());
    }
  } else {
    Json rows = Json::array();
    for (const auto& o : outcomes) {
      rows.push_back({{"name", o.name}, {"pass", o.pass}, {"detail", o.detail}, {"seconds", o.seconds}});
    }
    ctx.emit(Json{{"entries", rows}, {"all_pass", all}});
  }
  return all ? kExitOk : kExitError;
}

// ---- kneser

struct KneserArgs {
  int b = 4, r = 2, s = 2;
  std::string chi = "exact", dimacs, split, out;
  bool tightness = false;
  int jobs = 0;
};

int run_kneser(const Context& ctx, const KneserArgs& a) {
  KneserGraph g(a.b, a.r, a.s);
  if (a.chi != "exact" && a.chi != "bounds") throw DataError("--chi must be exact or bounds");
  auto bounds = chromatic_number(g, a.chi == "exact" ? ChiMode::exact : ChiMode::bounds);
  verify(is_proper(g, bounds.coloring) && bounds.coloring.num_colors == bounds.upper, "coloring");
  Json out;
  out["graph"] = {{"b", a.b}, {"r", a.r}, {"s", a.s}, {"vertices", g.num_vertices()}, {"edges", g.num_edges()}};
  Json chi;
  chi["mode"] = a.chi;
  chi["lower"] = bounds.lower;
  chi["upper"] = bounds.upper;
  chi["degree_bound"] = bounds.degree_bound;
  if (a.chi == "exact") chi["nodes"] = bounds.nodes;
  Json classes = Json::array();
  for (int c = 0; c < bounds.coloring.num_colors; ++c) {
    Json cls = Json::array();
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (bounds.coloring.colors[v] == c) cls.push_back(bundle_goods(g.vertex(v)));
    }
    classes.push_back(cls);
  }
  chi["color_classes"] = classes;
  out["chromatic"] = chi;
  if (!a.dimacs.empty()) {
    write_text_file(a.dimacs, to_dimacs(g));
    out["dimacs"] = a.dimacs;
  }
  int code = kExitOk;
  if (a.tightness) {
    const int colors = bounds.coloring.num_colors;
    int n1 = (colors + 1) / 2, n2 = colors / 2;
    if (!a.split.empty()) {
      auto s = parse_int_list(a.split);
      if (s.size() != 2) throw DataError("--split expects n1,n2");
      n1 = s[0];
      n2 = s[1];
    }
    auto inst = tightness_instance(g, bounds.coloring, n1, n2);
    SearchConstraints cons;
    cons.balanced_allocation = true;
    auto cert = find_fair(inst, cons, search_options(a.jobs, false));
    Json t;
    t["split"] = {n1, n2};
    t["balanced_ef1_exists"] = cert.found();
    if (!cert.found()) t["examined"] = cert.examined();
    if (!a.out.empty()) {
      write_text_file(a.out, to_json(inst).dump(2) + "\n");
      t["written"] = a.out;
    } else {
      t["instance"] = to_json(inst);
    }
    out["tightness"] = t;
    verify(!cert.found(), "tightness instance admits a balanced EF1 allocation");
  }
  ctx.emit(out);
  return code;
}

// ---- reduce

int run_reduce(const Context& ctx, const std::string& formula, const std::string& out_path) {
  std::ifstream in(formula);
  if (!in) throw DataError("cannot read " + formula);
  auto f = parse_monotone_dimacs(in);
  auto inst = formula_to_instance(f);
  const auto doc = to_json(inst);
  if (out_path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
  }
  write_text_file(out_path, doc.dump(2) + "\n");
  Json out;
  out["formula"] = {{"variables", f.num_vars}, {"clauses", f.clauses.size()}};
  out["instance"] = digest(inst);
  out["written"] = out_path;
  ctx.emit(out);
  return kExitOk;
}

// ---- fuzz

struct FuzzArgs {
  std::string suite = "all";
  int count = 0, jobs = 0;
  std::uint64_t seed = 1;
};

int run_fuzz(const Context& ctx, const FuzzArgs& a) {
  std::vector<std::string> names = a.suite == "all" ? suite_names() : std::vector<std::string>{a.suite};
  bool all = true;
  Json rows = Json::array();
  for (const auto& name : names) {
    const int count = a.count > 0 ? a.count : default_count(name);
    auto r = run_suite(name, count, a.seed, search_options(a.jobs, false));
    all = all && r.ok();
    Json row = {{"suite", r.name}, {"seed", r.seed},     {"count", r.count},
                {"passed", r.passed}, {"failed", r.failed}, {"seconds", r.seconds}};
    if (!r.counters.empty()) row["counters"] = r.counters;
    if (!r.failures.empty()) row["failures"] = r.failures;
    rows.push_back(row);
  }
  if (ctx.format == "table") {
    for (const auto& row : rows) {
      std::printf("%-13s seed=%-6llu %s  %d/%d  %.2fs\n", row["suite"].get<std::string>().c_str(),
                  static_cast<unsigned long long>(row["seed"].get<std::uint64_t>()),
                  row["failed"].get<int>() == 0 ? "PASS" : "FAIL", row["passed"].get<int>(), row["count"].get<int>(),
                  row["seconds"].get<double>());
      if (row.contains("failures")) {
        for (const auto& f : row["failures"]) std::printf("    %s\n", f.get<std::string>().c_str());
      }
    }
  } else {
    ctx.emit(Json{{"suites", rows}, {"all_pass", all}});
  }
  return all ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group fair division toolkit"};
  app.require_subcommand(1);
  Context ctx;
  app.add_option("--format", ctx.format, "Report format")->check(CLI::IsMember({"json", "table"}));

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Check an allocation against a fairness notion");
  c->add_option("--instance", check.instance)->required()->check(CLI::ExistingFile);
  c->add_option("--allocation", check.allocation)->required()->check(CLI::ExistingFile);
  c->add_option("--notion", check.notion, "ef, ef1, efc, efx, efx0, prop");
  c->add_option("--c", check.c, "Parameter for efc and prop");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run a constructive algorithm");
  s->add_option("--instance", solve.instance)->required()->check(CLI::ExistingFile);
  s->add_option("--algo", solve.algo)
      ->required()
      ->check(CLI::IsMember({"exact1", "ef1-21", "cutchoose", "knife", "prop", "roundrobin", "binary"}));
  s->add_option("--order", solve.order, "Comma-separated good order for line and circle algorithms");
  s->add_flag("--trace", solve.trace, "Include the reduction trace (binary)");
  s->add_option("--jobs", solve.jobs);

  SearchArgs search;
  auto* se = app.add_subcommand("search", "Exhaustive search for a fair allocation");
  se->add_option("--instance", search.instance)->required()->check(CLI::ExistingFile);
  se->add_option("--notion", search.notion);
  se->add_option("--c", search.c);
  se->add_flag("--balanced-goods", search.balanced_goods);
  se->add_flag("--balanced-agents", search.balanced_agents);
  se->add_option("--partition", search.partition, "Fixed group of each agent, comma-separated");
  se->add_option("--jobs", search.jobs, "Worker threads, 0 for all processors")->check(CLI::NonNegativeNumber);
  se->add_flag("--serial", search.serial, "Use the serial reference scan");

  CorpusArgs corp;
  auto* co = app.add_subcommand("corpus", "Run or export the impossibility corpus");
  co->add_flag("--run-all", corp.run_all);
  co->add_option("--name", corp.name);
  co->add_option("--export", corp.export_dir, "Directory for instance documents");
  co->add_option("--jobs", corp.jobs);

  KneserArgs kn;
  auto* k = app.add_subcommand("kneser", "Generalized Kneser graph coloring and tightness instances");
  k->add_option("--b", kn.b);
  k->add_option("--r", kn.r);
  k->add_option("--s", kn.s);
  k->add_option("--chi", kn.chi)->check(CLI::IsMember({"exact", "bounds"}));
  k->add_option("--dimacs", kn.dimacs, "Write the graph in DIMACS edge format");
  k->add_flag("--tightness", kn.tightness);
  k->add_option("--split", kn.split, "n1,n2");
  k->add_option("--out", kn.out, "Write the tightness instance here");
  k->add_option("--jobs", kn.jobs);

  std::string formula, reduce_out;
  auto* re = app.add_subcommand("reduce", "Monotone 3-SAT formula to a binary EF1 instance");
  re->add_option("--formula", formula)->required()->check(CLI::ExistingFile);
  re->add_option("--out", reduce_out);

  FuzzArgs fz;
  auto* f = app.add_subcommand("fuzz", "Seeded property suites");
  f->add_option("--suite", fz.suite, "Suite name or all");
  f->add_option("--count", fz.count, "Cases per suite, 0 for the default")->check(CLI::NonNegativeNumber);
  f->add_option("--seed", fz.seed);
  f->add_option("--jobs", fz.jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  for (int i = 0; i < argc; ++i) ctx.command += (i ? " " : "") + std::string(argv[i]);
  try {
    if (*c) return run_check(ctx, check);
    if (*s) return run_solve(ctx, solve);
    if (*se) return run_search(ctx, search);
    if (*co) return run_corpus(ctx, corp);
    if (*k) return run_kneser(ctx, kn);
    if (*re) return run_reduce(ctx, formula, reduce_out);
    if (*f) return run_fuzz(ctx, fz);
  } catch (const TooLargeError& e) {
    std::cerr << "error: " << e.what() << " (bound " << e.bound() << ")\n";
  } catch (const UnsupportedError& e) {
    std::cerr << "error: unsupported: " << e.what() << '\n';
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
  }
  return kExitError;
}
