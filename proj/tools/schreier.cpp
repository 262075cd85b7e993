// Command-line front end. Exit status: 0 on success (member, certificate
// found, check passed), 1 on a logical negative, 2 on bad usage or input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "schreier/serialize.hpp"
#include "schreier/schreier.hpp"
#include "schreier/selfcheck.hpp"

using nlohmann::json;
using namespace schreier;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::string scheme = "paper";

  std::string family, hereditary, closure_of, set, window, ground, coloring, ordinal, other;
  std::string op = "normalize", certificate_path, criteria, sigma;
  std::uint32_t at = 0, target = 0, depth = 0, upto = 0, steps = 16, coefficient = 1;
  std::uint32_t horizon = 0, limit = 0;
  bool star = false, down = false, brute = false, stream = false, assume_dense = false;
  std::string xi, xi2;
};

Window window_of(const Options& o) {
  if (o.window.empty()) throw UsageError("--window is required");
  return parse_window(o.window, o.ground);
}

Coloring coloring_of(const Options& o) {
  if (o.coloring == "hash") return hash_coloring(o.seed);
  return make_coloring(o.coloring);
}

int emit_sets(const Options& o, json head, const std::vector<FiniteSet>& sets) {
  if (o.json) {
    head["members"] = sets;
    std::cout << head.dump() << "\n";
  } else {
    for (const auto& s : sets) std::cout << to_string(s) << "\n";
  }
  return 0;
}

int emit_certificate(const Options& o, const std::optional<Certificate>& cert,
                     const std::string& none) {
  if (!cert) {
    if (o.json)
      std::cout << json{{"found", false}, {"reason", none}}.dump() << "\n";
    else
      std::cout << none << "\n";
    return 1;
  }
  if (o.json) {
    std::cout << json(*cert).dump() << "\n";
  } else {
    std::cout << to_string(cert->kind) << " L=" << to_string(cert->witness);
    if (cert->kind == CertificateKind::kHomogeneous) std::cout << " color=" << cert->color;
    std::cout << " (" << cert->checked << " sets checked, transcript " << cert->transcript << ")\n";
  }
  return 0;
}

// Family selected by --family, or its initial-segment / subset closure.
Family family_of(const Options& o) {
  FamilySpec spec = parse_family(o.family);
  if (o.down) return make_family(FamilySpec::down(spec));
  Family f = make_family(spec);
  if (!o.star) return f;
  Family star = f;
  star.name = f.name + "^*";
  star.contains = f.contains_prefix;
  if (f.automaton) {
    auto walk = std::make_shared<PrefixAutomaton>(*f.automaton);
    walk->accepting = [](StateId) { return true; };
    walk->min_more = nullptr;
    star.automaton = walk;
  }
  return star;
}

int cmd_member(const Options& o) {
  FiniteSet s = parse_set(o.set);
  Family f = family_of(o);
  bool in = f.contains(s);
  if (o.json)
    std::cout << json{{"family", f.name}, {"set", s}, {"member", in}}.dump() << "\n";
  else
    std::cout << (in ? "true" : "false") << "\n";
  return in ? 0 : 1;
}

int cmd_enum(const Options& o) {
  Window w = window_of(o);
  Family f = family_of(o);
  std::vector<FiniteSet> out;
  for_each_member(f, w, [&](SetView s) {
    out.emplace_back(s);
    return o.limit == 0 || out.size() < o.limit;
  });
  std::sort(out.begin(), out.end(), LengthLex{});
  return emit_sets(o, {{"family", f.name}, {"window", w}}, out);
}

int cmd_section(const Options& o) {
  if (o.at == 0) throw UsageError("--at must be at least 1");
  Window w = window_of(o);
  auto members = section(parse_family(o.family), o.at, w);
  return emit_sets(o, {{"family", o.family}, {"at", o.at}, {"window", w}}, members);
}

int cmd_canon(const Options& o) {
  FamilySpec spec = parse_family(o.family);
  FiniteSet A = parse_set(o.set);
  CanonicalRep rep = canonical_rep(spec, A);
  Trichotomy t = trichotomy(spec, A);
  if (o.json) {
    json j = rep;
    j["family"] = o.family;
    j["trichotomy"] = t.kind == TrichotomyKind::kExtendsMember ? "extends-member" : "proper-prefix";
    if (t.kind == TrichotomyKind::kExtendsMember) j["member_prefix"] = t.witness;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "type " << rep.type() << ":";
    for (const auto& b : rep.blocks) std::cout << " " << to_string(b);
    std::cout << " | tail " << to_string(rep.tail) << "\n";
  }
  return 0;
}

int cmd_rank(const Options& o) {
  if (o.brute) {
    Family f = family_of(o);
    RankTable t = brute_derivative(f, window_of(o), o.steps, o.horizon);
    if (o.json) {
      json j = t;
      j["family"] = f.name;
      std::cout << j.dump() << "\n";
    } else {
      for (const auto& [s, r] : t.rank) std::cout << to_string(s) << " " << r << "\n";
      std::cout << "index " << (t.index ? std::to_string(*t.index) : "unknown") << "\n";
    }
    return t.index ? 0 : 1;
  }
  FiniteSet s = parse_set(o.set);
  FamilySpec spec = parse_family(o.family);
  if (spec.kind == FamilyKind::kDown) spec = *spec.inner;
  Ordinal r = symbolic_rank(spec, s);
  if (o.json)
    std::cout << json{{"family", o.family}, {"set", s}, {"rank", r}}.dump() << "\n";
  else
    std::cout << to_string(r) << "\n";
  return 0;
}

int cmd_index(const Options& o) {
  FamilySpec spec = !o.closure_of.empty() ? FamilySpec::down(parse_family(o.closure_of))
                                          : parse_family(o.family);
  Ordinal sym = symbolic_index(spec);
  json j{{"family", to_string(spec)}, {"index", sym}};
  std::optional<std::uint32_t> brute;
  if (o.brute) {
    RankTable t = brute_derivative(make_family(spec), window_of(o), o.steps, o.horizon);
    brute = t.index;
    j["brute_index"] = t.index ? json(*t.index) : json();
  }
  if (o.json) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << to_string(sym);
    if (o.brute) std::cout << " (brute force: " << (brute ? std::to_string(*brute) : "unknown") << ")";
    std::cout << "\n";
  }
  return 0;
}

int cmd_fundseq(const Options& o) {
  Ordinal x = parse_ordinal(o.ordinal);
  std::vector<std::pair<std::uint32_t, Ordinal>> terms;
  if (o.upto) {
    for (std::uint32_t n = 1; n <= o.upto; ++n) terms.emplace_back(n, fundamental(x, n));
  } else {
    if (o.at == 0) throw UsageError("--at or --upto is required");
    terms.emplace_back(o.at, fundamental(x, o.at));
  }
  if (o.json) {
    json seq = json::array();
    for (const auto& [n, v] : terms) seq.push_back({{"at", n}, {"value", v}});
    std::cout << json{{"ordinal", x}, {"sequence", seq}}.dump() << "\n";
  } else if (terms.size() == 1) {
    std::cout << to_string(terms[0].second) << "\n";
  } else {
    for (const auto& [n, v] : terms) std::cout << n << " " << to_string(v) << "\n";
  }
  return 0;
}

int cmd_ord(const Options& o) {
  Ordinal x = parse_ordinal(o.ordinal);
  auto y = [&] {
    if (o.other.empty()) throw UsageError("--op " + o.op + " needs --with");
    return parse_ordinal(o.other);
  };
  json result;
  std::string plain;
  if (o.op == "normalize") {
    result = x;
    plain = to_string(x);
  } else if (o.op == "classify") {
    auto c = classify(x);
    const char* kind = c.kind == OrdinalKind::kZero        ? "zero"
                       : c.kind == OrdinalKind::kSuccessor ? "successor"
                                                           : "limit";
    result = {{"kind", kind}};
    plain = kind;
    if (c.kind == OrdinalKind::kSuccessor) {
      result["predecessor"] = c.predecessor;
      plain += " " + to_string(c.predecessor);
    }
  } else if (o.op == "compare") {
    auto c = compare(x, y());
    plain = c < 0 ? "less" : c > 0 ? "greater" : "equal";
    result = plain;
  } else if (o.op == "add") {
    result = add(x, y());
    plain = result.get<std::string>();
  } else if (o.op == "power") {
    result = omega_power(x);
    plain = result.get<std::string>();
  } else if (o.op == "times") {
    result = nat_multiple(x, o.coefficient);
    plain = result.get<std::string>();
  } else {
    throw UsageError("unknown --op " + o.op);
  }
  if (o.json)
    std::cout << json{{"op", o.op}, {"result", result}}.dump() << "\n";
  else
    std::cout << plain << "\n";
  return 0;
}

int cmd_homogenize(const Options& o) {
  FamilySpec spec = parse_family(o.family);
  Coloring c = coloring_of(o);
  Window w = window_of(o);
  if (!o.stream) {
    if (o.target == 0) throw UsageError("--target must be at least 1");
    return emit_certificate(o, homogenize(spec, c, w, o.target), "window exhausted");
  }
  auto M = w.elements();
  StreamBudget budget;
  budget.horizon = M.size();
  if (o.target) budget.max_prefix = o.target;
  StreamResult r = homogenize_stream(
      spec, c, [&](std::size_t i) { return M[i]; }, majority_strategy, budget);
  if (r.status == StreamStatus::kBudgetExhausted) {
    std::cout << (o.json ? json{{"found", false}, {"reason", "budget exhausted"}}.dump()
                         : "budget exhausted")
              << "\n";
    return 1;
  }
  if (o.json) {
    json picks = json::array();
    for (auto [m, col] : r.picks) picks.push_back({m, col});
    std::cout << json{{"prefix", r.prefix}, {"color", r.color}, {"picks", picks},
                      {"certificate", *r.certificate}}
                     .dump()
              << "\n";
    return 0;
  }
  std::cout << "prefix " << to_string(r.prefix) << " color " << r.color << "\n";
  return emit_certificate(o, r.certificate, "");
}

int cmd_sperner(const Options& o) {
  if (o.target == 0) throw UsageError("--target must be at least 1");
  return emit_certificate(o, sperner_refine(parse_family(o.family), window_of(o), o.target),
                          "window exhausted");
}

int cmd_dichotomy(const Options& o) {
  Window w = window_of(o);
  std::uint32_t target = o.target ? o.target : static_cast<std::uint32_t>(w.elements().size());
  auto certs = hereditary_dichotomy(parse_family(o.hereditary), parse_family(o.family), w, target);
  if (certs.empty()) return emit_certificate(o, std::nullopt, "window exhausted");
  if (o.json) {
    std::cout << json(certs).dump() << "\n";
    return 0;
  }
  for (const auto& c : certs) emit_certificate(o, c, "");
  return 0;
}

int cmd_separate(const Options& o) {
  Window w = window_of(o);
  std::uint32_t target = o.target ? o.target : static_cast<std::uint32_t>(w.elements().size());
  return emit_certificate(o, rank_separation(parse_ordinal(o.xi), parse_ordinal(o.xi2), w, target),
                          "window exhausted");
}

int cmd_chain(const Options& o) {
  if (o.depth == 0) throw UsageError("--depth must be at least 1");
  return emit_certificate(o, detect_chain(parse_family(o.hereditary), window_of(o), o.depth),
                          "no chain of that depth in the window");
}

int cmd_transfer(const Options& o) {
  Ordinal xi = parse_ordinal(o.xi);
  Window w = window_of(o);
  if (o.hereditary.empty()) {
    if (o.assume_dense) throw UsageError("--assume-dense needs --hereditary");
    return emit_certificate(o, schreier_transfer(xi, w, o.target), "window exhausted");
  }
  FamilySpec h = parse_family(o.hereditary);
  std::uint32_t target = o.target ? o.target : static_cast<std::uint32_t>(w.elements().size());
  if (o.assume_dense)
    return emit_certificate(o, assume_dense_transfer(h, xi, w, target),
                            "window exhausted or density assumption contradicted");
  std::optional<Ordinal> sigma;
  if (!o.sigma.empty()) sigma = parse_ordinal(o.sigma);
  return emit_certificate(o, large_index_transfer(h, xi, w, target, sigma), "window exhausted");
}

int cmd_check(const Options& o) {
  std::vector<int> ids;
  if (!o.criteria.empty())
    for (Element x : detail::parse_element_list(o.criteria)) ids.push_back(static_cast<int>(x));
  std::ostringstream sink;
  auto reports = selfcheck::run(ids, o.json ? static_cast<std::ostream&>(sink) : std::cout);
  bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.outcome.passed; });
  if (o.json) {
    json out = json::array();
    for (const auto& r : reports)
      out.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.outcome.passed},
                     {"detail", r.outcome.detail}, {"seconds", r.seconds}});
    std::cout << json{{"passed", all}, {"criteria", out}}.dump() << "\n";
  }
  return all ? 0 : 1;
}

int cmd_verify(const Options& o) {
  std::string text;
  if (o.certificate_path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(o.certificate_path);
    if (!in) throw UsageError("cannot read " + o.certificate_path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  Certificate c;
  try {
    c = json::parse(text).get<Certificate>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad certificate: ") + e.what());
  }
  CheckResult r = check_certificate(c);
  if (o.json)
    std::cout << json(r).dump() << "\n";
  else
    std::cout << (r.ok() ? "valid" : "invalid: " + r.reason) << " (" << r.checked
              << " sets checked)\n";
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform families, Schreier families and their Ramsey dichotomies"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "JSON output");
  app.add_option("--seed", o.seed, "seed for the `hash` coloring");
  app.add_option("--scheme", o.scheme, "fundamental-sequence scheme")->check(CLI::IsMember({"paper"}));

  auto family = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--family", o.family, "family literal: A:<ord>, B:<ord>, F:<ord>, exL, exR, "
                                                     "ex112, all, down:<family>");
    if (required) opt->required();
  };
  auto window = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--window", o.window, "lo..hi");
    if (required) opt->required();
    sub->add_option("--ground", o.ground, "explicit ground set inside the window, e.g. {2,4,6}");
  };
  auto closures = [&](CLI::App* sub) {
    sub->add_flag("--star", o.star, "use the initial-segment closure");
    sub->add_flag("--down", o.down, "use the subset closure");
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> verbs;
  auto verb = [&](const char* name, const char* help, int (*run)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    verbs.emplace_back(sub, run);
    return sub;
  };

  auto* member = verb("member", "membership of one set", cmd_member);
  family(member);
  member->add_option("--set", o.set, "set literal, e.g. {3,5,9}")->required();
  closures(member);

  auto* en = verb("enum", "members inside a window", cmd_enum);
  family(en);
  window(en);
  closures(en);
  en->add_option("--limit", o.limit, "stop after this many members");

  auto* sec = verb("section", "the section at m inside a window", cmd_section);
  family(sec);
  sec->add_option("--at", o.at, "m")->required();
  window(sec);

  auto* canon = verb("canon", "canonical representation", cmd_canon);
  family(canon);
  canon->add_option("--set", o.set, "set literal")->required();

  auto* rank = verb("rank", "strong Cantor-Bendixson rank", cmd_rank);
  family(rank);
  rank->add_option("--set", o.set, "set whose symbolic rank to print");
  rank->add_flag("--brute", o.brute, "brute-force rank table on --window");
  window(rank, false);
  closures(rank);
  rank->add_option("--steps", o.steps, "derivative steps for --brute");
  rank->add_option("--horizon", o.horizon, "probe point for --brute (default: window end)");

  auto* index = verb("index", "strong Cantor-Bendixson index", cmd_index);
  family(index, false);
  index->add_option("--family-closure", o.closure_of, "index of the subset closure of this family");
  index->add_flag("--brute", o.brute, "also compute it by brute force on --window");
  window(index, false);
  index->add_option("--steps", o.steps, "derivative steps for --brute");
  index->add_option("--horizon", o.horizon, "probe point for --brute (default: window end)");

  auto* fund = verb("fundseq", "fundamental sequence of a limit ordinal", cmd_fundseq);
  fund->add_option("--ordinal", o.ordinal, "limit ordinal, e.g. w^w")->required();
  fund->add_option("--at", o.at, "n");
  fund->add_option("--upto", o.upto, "print x_1 .. x_n");

  auto* ord = verb("ord", "ordinal arithmetic", cmd_ord);
  ord->add_option("--ordinal", o.ordinal, "ordinal in Cantor normal form")->required();
  ord->add_option("--op", o.op)->check(
      CLI::IsMember({"normalize", "classify", "compare", "add", "power", "times"}));
  ord->add_option("--with", o.other, "second operand of compare/add");
  ord->add_option("--times", o.coefficient, "coefficient for --op times");

  auto* homo = verb("homogenize", "homogeneous set for a coloring", cmd_homogenize);
  family(homo);
  homo->add_option("--coloring", o.coloring,
                   "parity-sum, span-threshold, hash (uses --seed), hash:<seed>[:<colors>], "
                   "external:<command>")
      ->required();
  window(homo);
  homo->add_option("--target", o.target, "size of L (required without --stream; with it, a prefix cap)");
  homo->add_flag("--stream", o.stream, "follow the recursion over the window as a stream");

  auto* sp = verb("sperner", "set on which the family is Sperner", cmd_sperner);
  family(sp);
  window(sp);
  sp->add_option("--target", o.target, "size of L")->required();

  auto* dich = verb("dichotomy", "hereditary dichotomy", cmd_dichotomy);
  dich->add_option("--hereditary", o.hereditary, "hereditary family literal")->required();
  family(dich);
  window(dich);
  dich->add_option("--target", o.target, "size of L (default: the whole window)");

  auto* sep = verb("separate", "separate A:xi1 from A:xi2", cmd_separate);
  sep->add_option("--xi1", o.xi, "smaller ordinal")->required();
  sep->add_option("--xi2", o.xi2, "larger ordinal")->required();
  window(sep);
  sep->add_option("--target", o.target, "size of L (default: the whole window)");

  auto* chain = verb("chain", "initial-segment chain inside a hereditary family", cmd_chain);
  chain->add_option("--hereditary", o.hereditary, "hereditary family literal")->required();
  window(chain);
  chain->add_option("--depth", o.depth, "chain length")->required();

  auto* tr = verb("transfer", "F_xi spread into a set", cmd_transfer);
  tr->add_option("--xi", o.xi, "ordinal of the Schreier family")->required();
  window(tr);
  tr->add_option("--target", o.target, "size of the ambient set (default: the whole window)");
  tr->add_option("--hereditary", o.hereditary, "transfer into this hereditary family");
  tr->add_option("--sigma", o.sigma, "index of --hereditary if it has no symbolic one");
  tr->add_flag("--assume-dense", o.assume_dense,
               "assume every infinite set carries a B_xi member of --hereditary");

  auto* check = verb("check", "run the acceptance criteria", cmd_check);
  check->add_option("--criteria", o.criteria, "comma-separated ids (default: all)");

  auto* verify = verb("verify", "re-check a certificate", cmd_verify);
  verify->add_option("certificate", o.certificate_path, "JSON file, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto& [sub, run] : verbs)
      if (sub->parsed()) return run(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
