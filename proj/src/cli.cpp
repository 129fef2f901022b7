#include "rubber/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rubber/cache.hpp"
#include "rubber/chambers.hpp"
#include "rubber/recursion.hpp"
#include "rubber/strata.hpp"
#include "rubber/verify.hpp"

namespace rubber::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitVerificationFailure = 2;
constexpr int kExitInternalError = 3;

std::vector<long long> parse_vector(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    long long v = std::stoll(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty vector");
  return out;
}

const char* datum_error_code(DatumErrorKind kind) {
  switch (kind) {
    case DatumErrorKind::TooFewEntries: return "too_few_entries";
    case DatumErrorKind::NonzeroTotal: return "nonzero_total";
    case DatumErrorKind::ZeroEntry: return "zero_entry";
    case DatumErrorKind::VanishingSubsetSum: return "vanishing_subset_sum";
    case DatumErrorKind::BoundExceeded: return "bound_exceeded";
  }
  return "invalid";
}

struct Options {
  std::string command;
  std::string x_str, y_str;
  int max_n = 19;
  int order = 0;  // 0 = pick automatically
  std::string format = "json";
  std::string cache_dir;
  int jobs = 1;
  std::string suite = "all";
  int tree_bound = trees::kDefaultTreeBound;
  bool per_tree = false;
};

std::optional<cache::ResultCache> open_cache(const Options& opt) {
  std::string dir = opt.cache_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("RUBBERMAP_CACHE_DIR")) dir = env;
  }
  if (dir.empty()) return std::nullopt;
  return cache::ResultCache(dir);
}

json rat_json(const Rat& r) {
  return {{"numerator", to_string(Int(r.get_num()))}, {"denominator", to_string(Int(r.get_den()))}};
}

json class_json(const GClass& g) {
  json coeffs = json::array();
  if (g.is_zero())
    coeffs.push_back("0");
  else
    for (const Int& c : g.coeffs()) coeffs.push_back(to_string(c));
  return coeffs;
}

json signature_json(const RamificationDatum& x) {
  auto sig = chambers::signature(x);
  auto subsets = chambers::canonical_subsets(x.n());
  json out = json::array();
  for (size_t i = 0; i < subsets.size(); ++i) {
    json idx = json::array();
    for (int b = 0; b < x.n(); ++b)
      if (subsets[i] >> b & 1) idx.push_back(b + 1);
    out.push_back({{"subset", std::move(idx)}, {"sign", sig.positive[i] ? "+" : "-"}});
  }
  return out;
}

class CommandError : public std::runtime_error {
 public:
  CommandError(int exit_code, std::string code, std::string message, json extra = json::object())
      : std::runtime_error(message), exit_code(exit_code), code(std::move(code)), extra(std::move(extra)) {}
  int exit_code;
  std::string code;
  json extra;
};

RamificationDatum parse_datum(const std::string& s) {
  std::vector<long long> v;
  try {
    v = parse_vector(s);
  } catch (const std::exception& e) {
    throw CommandError(kExitInvalidInput, "bad_arguments", e.what());
  }
  try {
    return chambers::validate(v);
  } catch (const DatumError& e) {
    json extra;
    if (!e.witness.empty()) extra["witness"] = e.witness;
    throw CommandError(kExitInvalidInput, datum_error_code(e.kind), e.what(), std::move(extra));
  }
}

// command implementations; each returns (result json, csv text)

std::pair<json, std::string> cmd_table(const Options& opt) {
  int order = opt.order > 0 ? opt.order : std::max(recursion::kDefaultOrder, opt.max_n);
  if (order < opt.max_n)
    throw CommandError(kExitInvalidInput, "bad_arguments", "order must be at least max-n");
  auto store = open_cache(opt);
  std::optional<recursion::EulerTable> table;
  if (store) table = store->load_table(opt.max_n, order);
  bool cached = table.has_value();
  if (!table) {
    table = recursion::chi_table(opt.max_n, order);
    if (store) store->store_table(*table, order);
  }
  series::TruncatedSeries mu = recursion::chi_mbar0_series(std::max(opt.max_n, 2));
  json rows = json::array();
  std::string csv = "n,chi_mbar_n,chi_m0_next\n";
  for (int n = 2; n <= opt.max_n; ++n) {
    Int chi = table->row_sum(n);
    Rat c3 = Rat(factorial(static_cast<unsigned>(n))) * mu.coeff(n);
    Int chi0 = c3.get_num();
    rows.push_back({{"n", n}, {"chi_mbar_n", to_string(chi)}, {"chi_m0_next", to_string(chi0)}});
    csv += std::to_string(n) + "," + to_string(chi) + "," + to_string(chi0) + "\n";
  }
  json result = {{"rows", std::move(rows)}, {"order", order}, {"from_cache", cached}};
  return {std::move(result), std::move(csv)};
}

std::pair<json, std::string> cmd_euler(const Options& opt) {
  RamificationDatum x = parse_datum(opt.x_str);
  if (x.n() > opt.tree_bound)
    throw CommandError(kExitInvalidInput, "bound_exceeded", "datum too long for tree enumeration");
  Int chi = strata::euler_char(x, opt.tree_bound);
  json result = {{"euler_characteristic", to_string(chi)}};
  return {std::move(result), "euler_characteristic\n" + to_string(chi) + "\n"};
}

std::pair<json, std::string> cmd_class(const Options& opt) {
  RamificationDatum x = parse_datum(opt.x_str);
  if (x.n() > opt.tree_bound)
    throw CommandError(kExitInvalidInput, "bound_exceeded", "datum too long for tree enumeration");
  auto store = open_cache(opt);
  std::optional<GClass> g;
  if (store) g = store->load_class(x);
  bool cached = g.has_value();
  if (!g) {
    g = strata::total_class(x, opt.jobs, opt.tree_bound);
    if (store) store->store_class(x, *g);
  }
  json result = {{"coefficients", class_json(*g)},
                 {"euler_characteristic", to_string(g->eval(1))},
                 {"from_cache", cached}};
  if (opt.per_tree) {
    json strata_rows = json::array();
    for (const auto& t : trees::enumerate_stable_trees(x.n(), opt.tree_bound)) {
      GClass s = strata::stratum_class(t, x);
      if (s.is_zero()) continue;
      strata_rows.push_back({{"tree", t.encode()}, {"coefficients", class_json(s)}});
    }
    result["strata"] = std::move(strata_rows);
  }
  std::string csv = "degree,coefficient\n";
  if (g->is_zero())
    csv += "0,0\n";
  else
    for (size_t i = 0; i < g->coeffs().size(); ++i)
      csv += std::to_string(i) + "," + to_string(g->coeffs()[i]) + "\n";
  return {std::move(result), std::move(csv)};
}

std::pair<json, std::string> cmd_chamber(const Options& opt) {
  RamificationDatum x = parse_datum(opt.x_str);
  json sig = signature_json(x);
  std::string csv = "subset,sign\n";
  for (const auto& entry : sig) {
    std::string subset;
    for (const auto& idx : entry["subset"]) {
      if (!subset.empty()) subset += ' ';
      subset += std::to_string(idx.get<int>());
    }
    csv += subset + "," + entry["sign"].get<std::string>() + "\n";
  }
  json result = {{"valid", true}, {"n", x.n()}, {"signature", std::move(sig)}};
  return {std::move(result), std::move(csv)};
}

std::pair<json, std::string> cmd_wallcross(const Options& opt) {
  RamificationDatum x = parse_datum(opt.x_str);
  RamificationDatum y = parse_datum(opt.y_str);
  if (x.n() != y.n())
    throw CommandError(kExitInvalidInput, "bad_arguments", "x and y must have the same length");
  if (x.n() > opt.tree_bound)
    throw CommandError(kExitInvalidInput, "bound_exceeded", "datum too long for tree enumeration");
  GClass diff = chambers::wallcross(x, y, opt.tree_bound);
  json result = {{"coefficients", class_json(diff)},
                 {"euler_difference", to_string(diff.eval(1))},
                 {"same_chamber", chambers::same_chamber(x, y)}};
  std::string csv = "degree,coefficient\n";
  if (diff.is_zero())
    csv += "0,0\n";
  else
    for (size_t i = 0; i < diff.coeffs().size(); ++i)
      csv += std::to_string(i) + "," + to_string(diff.coeffs()[i]) + "\n";
  return {std::move(result), std::move(csv)};
}

std::pair<json, std::string> cmd_ratio(const Options& opt) {
  auto ratios = chambers::ratio_trend(opt.max_n);
  json rows = json::array();
  std::string csv = "n,numerator,denominator\n";
  for (size_t i = 0; i < ratios.size(); ++i) {
    int n = static_cast<int>(i) + 2;
    rows.push_back({{"n", n}, {"ratio", rat_json(ratios[i])}});
    csv += std::to_string(n) + "," + to_string(Int(ratios[i].get_num())) + "," +
           to_string(Int(ratios[i].get_den())) + "\n";
  }
  return {json{{"ratios", std::move(rows)}}, std::move(csv)};
}

std::pair<json, std::string> cmd_verify(const Options& opt, int& exit_code) {
  std::vector<verify::CheckResult> results;
  if (opt.suite == "all")
    results = verify::verify_all(opt.max_n);
  else if (opt.suite == "recursion")
    results = verify::verify_recursion(opt.max_n);
  else if (opt.suite == "strata")
    results = verify::verify_strata(opt.max_n);
  else if (opt.suite == "chambers")
    results = verify::verify_chambers(opt.max_n);
  else if (opt.suite == "oracle")
    results = verify::verify_oracle(opt.max_n);
  else
    throw CommandError(kExitInvalidInput, "bad_arguments", "unknown suite '" + opt.suite + "'");
  json rows = json::array();
  std::string csv = "check,pass\n";
  for (const auto& r : results) {
    rows.push_back({{"check", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    csv += r.name + "," + (r.pass ? "true" : "false") + "\n";
  }
  bool ok = verify::all_passed(results);
  if (!ok) exit_code = kExitVerificationFailure;
  return {json{{"checks", std::move(rows)}, {"all_passed", ok}}, std::move(csv)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"exact Euler characteristics and motivic classes of genus-zero rubber map spaces"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--jobs", opt.jobs, "worker threads for class sums");
    sub->add_option("--cache-dir", opt.cache_dir, "cache directory (or RUBBERMAP_CACHE_DIR)");
    sub->add_option("--tree-bound", opt.tree_bound, "tree enumeration feasibility bound");
  };

  CLI::App* table = app.add_subcommand("table", "Euler characteristic table");
  table->add_option("--max-n", opt.max_n, "largest n")->default_val(19);
  table->add_option("--order", opt.order, "series truncation order");
  add_common(table);

  CLI::App* euler = app.add_subcommand("euler", "Euler characteristic of one space");
  euler->add_option("--x", opt.x_str, "ramification datum, comma separated")->required();
  add_common(euler);

  CLI::App* cls = app.add_subcommand("class", "Grothendieck-ring class of one space");
  cls->add_option("--x", opt.x_str, "ramification datum, comma separated")->required();
  cls->add_flag("--per-tree", opt.per_tree, "include the per-stratum breakdown keyed by tree encoding");
  add_common(cls);

  CLI::App* chamber = app.add_subcommand("chamber", "validate a datum and print its chamber signature");
  chamber->add_option("--x", opt.x_str, "ramification datum, comma separated")->required();
  add_common(chamber);

  CLI::App* wallcross = app.add_subcommand("wallcross", "class difference of two data");
  wallcross->add_option("--x", opt.x_str, "first datum")->required();
  wallcross->add_option("--y", opt.y_str, "second datum")->required();
  add_common(wallcross);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the cross-validation suites");
  verify_cmd->add_option("--suite", opt.suite, "all, recursion, strata, chambers or oracle")
      ->default_val("all");
  verify_cmd->add_option("--max-n", opt.max_n, "largest datum length exercised")->default_val(6);
  add_common(verify_cmd);

  CLI::App* ratio = app.add_subcommand("ratio", "growth ratios of the two Euler columns");
  ratio->add_option("--max-n", opt.max_n, "largest n")->default_val(19);
  add_common(ratio);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << std::flush;
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    json j = {{"error", {{"code", "bad_arguments"}, {"message", e.what()}}}};
    out << j.dump(1) << "\n";
    return kExitInvalidInput;
  }

  CLI::App* active = app.get_subcommands().front();
  opt.command = active->get_name();

  auto started = std::chrono::steady_clock::now();
  int exit_code = kExitOk;
  json result;
  std::string csv;
  try {
    if (opt.command == "table") std::tie(result, csv) = cmd_table(opt);
    else if (opt.command == "euler") std::tie(result, csv) = cmd_euler(opt);
    else if (opt.command == "class") std::tie(result, csv) = cmd_class(opt);
    else if (opt.command == "chamber") std::tie(result, csv) = cmd_chamber(opt);
    else if (opt.command == "wallcross") std::tie(result, csv) = cmd_wallcross(opt);
    else if (opt.command == "verify") std::tie(result, csv) = cmd_verify(opt, exit_code);
    else if (opt.command == "ratio") std::tie(result, csv) = cmd_ratio(opt);
  } catch (const CommandError& e) {
    json j = {{"command", opt.command},
              {"error", {{"code", e.code}, {"message", e.what()}}}};
    for (auto& [k, v] : e.extra.items()) j["error"][k] = v;
    out << j.dump(1) << "\n";
    return e.exit_code;
  } catch (const DatumError& e) {
    json j = {{"command", opt.command},
              {"error", {{"code", datum_error_code(e.kind)}, {"message", e.what()}}}};
    if (!e.witness.empty()) j["error"]["witness"] = e.witness;
    out << j.dump(1) << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    // every reachable invalid_argument is a violated usage bound
    json j = {{"command", opt.command},
              {"error", {{"code", "bound_exceeded"}, {"message", e.what()}}}};
    out << j.dump(1) << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    json j = {{"command", opt.command}, {"error", {{"code", "internal"}, {"message", e.what()}}}};
    out << j.dump(1) << "\n";
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();

  if (opt.format == "csv") {
    out << csv;
  } else {
    json input = json::object();
    if (!opt.x_str.empty()) input["x"] = opt.x_str;
    if (!opt.y_str.empty()) input["y"] = opt.y_str;
    if (opt.command == "table" || opt.command == "ratio" || opt.command == "verify")
      input["max_n"] = opt.max_n;
    json envelope = {{"command", opt.command},
                     {"input", std::move(input)},
                     {"result", std::move(result)},
                     {"timing_ms", elapsed}};
    out << envelope.dump(1) << "\n";
  }
  return exit_code;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace rubber::cli
