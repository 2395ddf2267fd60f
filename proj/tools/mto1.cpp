#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mto1/families.hpp"
#include "mto1/inverse.hpp"
#include "mto1/oracle.hpp"
#include "mto1/reduction.hpp"
#include "mto1/sweep.hpp"

using namespace mto1;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct Options {
  std::uint32_t p = 0;
  unsigned n = 0;
  std::vector<std::string> families;
  std::string budget = "auto";
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string spec;
  std::string config;
  std::uint32_t m = 0;
  unsigned threads = 0;
};

// Coefficient vector, plus the xi-exponent for nonzero elements.
json render(const GaloisField& F, std::uint32_t x) {
  json j{{"coeffs", F.coeffs(x)}};
  if (x != 0) j["xi_pow"] = F.log(x);
  return j;
}

ElementRenderer renderer(const GaloisField& F) {
  return [&F](std::uint32_t x) { return render(F, x); };
}

json read_json_file(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, "'" + path + "' is not valid JSON: " + e.what());
  }
}

// Config keys fill in whatever was not given on the command line.
void apply_config(CLI::App& sub, Options& o) {
  if (o.config.empty()) return;
  const json cfg = read_json_file(o.config);
  if (!cfg.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
  auto unset = [&](const char* name) {
    try {
      return sub.get_option(name)->count() == 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  try {
    if (cfg.contains("p") && unset("-p")) o.p = cfg.at("p").get<std::uint32_t>();
    if (cfg.contains("n") && unset("-n")) o.n = cfg.at("n").get<unsigned>();
    if (cfg.contains("families") && unset("--family")) o.families = cfg.at("families").get<std::vector<std::string>>();
    if (cfg.contains("family") && unset("--family")) o.families = {cfg.at("family").get<std::string>()};
    if (cfg.contains("budget") && unset("--budget")) {
      const auto& b = cfg.at("budget");
      o.budget = b.is_number() ? std::to_string(b.get<std::uint64_t>()) : b.get<std::string>();
    }
    if (cfg.contains("seed") && unset("--seed")) o.seed = cfg.at("seed").get<std::uint64_t>();
    if (cfg.contains("out") && unset("--out")) o.out = cfg.at("out").get<std::string>();
    if (cfg.contains("format") && unset("--format")) o.format = cfg.at("format").get<std::string>();
    if (cfg.contains("m") && unset("-m")) o.m = cfg.at("m").get<std::uint32_t>();
    if (cfg.contains("threads") && unset("--threads")) o.threads = cfg.at("threads").get<unsigned>();
    if (cfg.contains("spec") && unset("--spec")) {
      const auto& s = cfg.at("spec");
      o.spec = s.is_string() ? s.get<std::string>() : s.dump();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config: ") + e.what());
  }
  if (o.format != "json" && o.format != "csv") throw Error(ErrorCode::InvalidConfig, "format must be json or csv");
}

MapSpec load_spec(const std::string& spec) {
  if (spec.empty()) throw Error(ErrorCode::InvalidConfig, "--spec is required");
  const std::string trimmed = spec.substr(spec.find_first_not_of(" \t\n"));
  const json j = trimmed.front() == '{' ? json::parse(trimmed, nullptr, false) : read_json_file(spec);
  if (j.is_discarded()) throw Error(ErrorCode::InvalidConfig, "inline spec is not valid JSON");
  return spec_from_json(j);
}

void emit(const Options& o, const std::string& command, const std::string& body) {
  std::string path = o.out;
  const char* dir = std::getenv("MTO1_OUTPUT_DIR");
  if (path.empty() && dir && *dir) path = "mto1-" + command + "." + o.format;
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::filesystem::path target(path);
  if (target.is_relative() && dir && *dir) target = std::filesystem::path(dir) / target;
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write '" + target.string() + "'");
  out << body;
}

void emit_json(const Options& o, const std::string& command, const json& j) { emit(o, command, j.dump(2) + "\n"); }

int cmd_field_info(const Options& o) {
  const auto ctx = FieldCtx::build(o.p, o.n);
  const GaloisField& E = ctx->ext();
  json j = ctx->to_json();
  j["q"] = ctx->q();
  j["q2"] = ctx->q2();
  j["order_base"] = ctx->q() - 1;
  j["order_ext"] = ctx->q2() - 1;
  j["xi_order"] = E.group_order();
  j["base_generator"] = render(E, ctx->xi_pow(ctx->q() + 1).index());
  j["base_embedding"] = render(E, ctx->embed(ctx->e1(ctx->base().generator())).index());
  emit_json(o, "field-info", j);
  return kOk;
}

int cmd_classify(const Options& o) {
  const MapSpec spec = load_spec(o.spec);
  const auto& ctx = *spec.ctx;
  const std::uint32_t q = ctx.q();
  if (o.m != 0 && (o.m < 1 || o.m > q)) {
    throw Error(ErrorCode::MOutOfRange, "m = " + std::to_string(o.m) + " outside [1, " + std::to_string(q) + "]");
  }
  const auto dc = derive(spec);
  const auto htab = h_table(spec);
  const auto f = build_f(spec, &htab);
  const auto g = build_g(spec, dc, &htab);
  const auto cf = classify(f);
  const auto cg = classify(g);
  const bool commute = check_commute(spec, dc);

  std::vector<std::uint32_t> ms;
  for (std::uint32_t m = 1; m <= q; ++m) {
    if (o.m == 0 || o.m == m) ms.push_back(m);
  }
  bool reduction_agrees = true;
  json red = json::array();
  for (auto m : ms) {
    const auto r = reduce_classify(spec, dc, m, g);
    reduction_agrees = reduction_agrees && r.m_to_1 == cf.contains(m);
    red.push_back({{"m", m}, {"m_to_1", r.m_to_1}, {"divides_q", r.divides}, {"g_m_to_1", r.g_m_to_1}});
  }

  json out{{"spec", spec_to_json(spec)},
           {"derived", {{"A", render(ctx.ext(), dc.A.index())}, {"B", render(ctx.ext(), dc.B.index())}, {"k", dc.k}}},
           {"f", mto1::to_json(cf, renderer(ctx.ext()))},
           {"g", mto1::to_json(cg, renderer(ctx.base()))},
           {"g_poly", coeffs_json(interpolate(ctx.base(), g))},
           {"commute", commute},
           {"reduction", red}};
  bool theorem_agrees = true;
  if (spec.is_family()) {
    const auto pred = evaluate_family(spec, dc);
    json verdicts = json::array();
    for (auto m : ms) {
      const auto v = predict(pred, q, m);
      if (v.status != Verdict::Status::OutOfTheoremScope) {
        theorem_agrees = theorem_agrees && v.is_m_to_1() == cf.contains(m);
      }
      verdicts.push_back(to_json(v));
    }
    json fired = json::array();
    for (const auto& c : pred.fired) fired.push_back({{"m", c.m}, {"clause", c.label}});
    json th{{"family", family_display(spec.family())},
            {"exponent", family_exponent(spec.family(), ctx)},
            {"constants", to_json(pred.constants)},
            {"fired", fired},
            {"verdicts", verdicts}};
    if (pred.out_of_scope) th["out_of_scope"] = *pred.out_of_scope;
    out["theorem"] = th;
  }
  out["agreement"] = {{"reduction", reduction_agrees}, {"theorem", theorem_agrees}};
  emit_json(o, "classify", out);
  return commute && reduction_agrees && theorem_agrees ? kOk : kMismatch;
}

std::vector<FamilyTag> parse_family_list(const Options& o, const FieldCtx& ctx, std::vector<bool>& explicit_param) {
  std::vector<FamilyTag> tags;
  std::vector<std::string> names = o.families;
  if (names.empty()) throw Error(ErrorCode::InvalidConfig, "--family is required");
  if (names.size() == 1 && names[0] == "all") {
    names.clear();
    for (auto kind : kAllFamilies) {
      if (!family_field_violation(kind, ctx)) names.emplace_back(family_name(kind));
    }
  }
  for (const auto& raw : names) {
    const auto colon = raw.find(':');
    const std::string name = raw.substr(0, colon);
    const auto kind = parse_family(name);
    if (!kind) throw Error(ErrorCode::InvalidConfig, "unknown family '" + name + "'");
    FamilyTag tag{*kind, 0};
    bool has = colon != std::string::npos;
    if (has) {
      try {
        tag.param = static_cast<unsigned>(std::stoul(raw.substr(colon + 1)));
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidConfig, "bad family parameter in '" + raw + "'");
      }
    }
    tags.push_back(tag);
    explicit_param.push_back(has);
  }
  return tags;
}

SweepOptions sweep_options(const Options& o) {
  SweepOptions s;
  s.seed = o.seed;
  s.threads = o.threads;
  s.collect_rows = o.format == "csv";
  if (o.budget == "auto") {
    s.mode = BudgetMode::Auto;
  } else if (o.budget == "exhaustive") {
    s.mode = BudgetMode::Exhaustive;
  } else {
    try {
      std::size_t used = 0;
      s.samples = std::stoull(o.budget, &used);
      if (used != o.budget.size() || s.samples == 0) throw std::invalid_argument("budget");
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, "budget must be auto, exhaustive or a positive sample count");
    }
    s.mode = BudgetMode::Sampled;
  }
  return s;
}

int cmd_verify(const Options& o) {
  const auto ctx = FieldCtx::build(o.p, o.n);
  std::vector<bool> explicit_param;
  const auto tags = parse_family_list(o, *ctx, explicit_param);
  const SweepOptions base = sweep_options(o);
  bool ok = true;
  json reports = json::array();
  std::string csv = "family," + csv_header() + "\n";
  for (std::size_t i = 0; i < tags.size(); ++i) {
    SweepOptions so = base;
    if (explicit_param[i]) so.param = tags[i].param;
    const auto rep = verify_family(ctx, tags[i].kind, so);
    ok = ok && rep.ok();
    reports.push_back(to_json(rep));
    if (o.format == "csv") {
      const std::string name(family_name(tags[i].kind));
      for (const auto& row : rep.rows) csv += name + "," + row + "\n";
    }
  }
  if (o.format == "csv") {
    emit(o, "verify", csv);
  } else {
    emit_json(o, "verify", json{{"field", ctx->to_json()}, {"ok", ok}, {"reports", reports}});
  }
  return ok ? kOk : kMismatch;
}

json poly_json(const GaloisField& F, const std::vector<std::uint32_t>& table) {
  json coeffs = json::array();
  for (auto c : interpolate(F, table).c) coeffs.push_back(render(F, c));
  return coeffs;
}

int cmd_invert(const Options& o) {
  const MapSpec spec = load_spec(o.spec);
  const auto r = invert_f(spec);
  emit_json(o, "invert", json{{"spec", spec_to_json(spec)},
                              {"kind", "inverse"},
                              {"g_route", r.g_route},
                              {"poly_coeffs", poly_json(spec.ctx->ext(), r.table)},
                              {"verified", r.verified}});
  return kOk;
}

int cmd_involute(const Options& o) {
  const MapSpec spec = load_spec(o.spec);
  const auto cf = classify(build_f(spec));
  if (!cf.contains(2)) {
    json err{{"error", error_code_name(ErrorCode::NotTwoToOne)},
             {"message", "f is not 2-to-1"},
             {"oracle_valid_ms", cf.valid_ms}};
    std::cerr << err.dump() << "\n";
    return kUsage;
  }
  const auto r = involution_of_f(spec);
  json j{{"spec", spec_to_json(spec)},
         {"kind", "involution"},
         {"route", r.route},
         {"poly_coeffs", poly_json(spec.ctx->ext(), r.table)},
         {"verified", r.verified},
         {"fixed_point_free", r.verified}};
  if (r.alpha) j["alpha"] = render(spec.ctx->base(), *r.alpha);
  emit_json(o, "involute", j);
  return kOk;
}

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Output file (stdout if omitted)");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", o.config, "JSON file whose keys mirror the flags");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"m-to-1 maps h(ax^q + bx + c) + ux^q + vx over F_{q^2}"};
  app.require_subcommand(1);
  Options o;

  auto* info = app.add_subcommand("field-info", "Describe the tower F_p < F_q < F_{q^2}");
  info->add_option("-p", o.p, "Characteristic");
  info->add_option("-n", o.n, "Degree of F_q over F_p");
  add_output(info, o);

  auto* cls = app.add_subcommand("classify", "Classify one map with the oracle, the reduction and the theorem");
  cls->add_option("--spec", o.spec, "Map spec: JSON file, '-' for stdin, or inline JSON");
  cls->add_option("-m", o.m, "Only report this m");
  add_output(cls, o);

  auto* ver = app.add_subcommand("verify", "Sweep family theorems against the oracle");
  ver->add_option("-p", o.p, "Characteristic");
  ver->add_option("-n", o.n, "Degree of F_q over F_p");
  ver->add_option("--family", o.families, "Family name, NAME:param, or 'all'")->delimiter(',');
  ver->add_option("--budget", o.budget, "auto, exhaustive, or a sample count");
  ver->add_option("--seed", o.seed, "Seed for sampled sweeps");
  ver->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
  add_output(ver, o);

  auto* inv = app.add_subcommand("invert", "Compositional inverse of a 1-to-1 map");
  inv->add_option("--spec", o.spec, "Map spec: JSON file, '-' for stdin, or inline JSON");
  add_output(inv, o);

  auto* invo = app.add_subcommand("involute", "Involution built from a 2-to-1 map");
  invo->add_option("--spec", o.spec, "Map spec: JSON file, '-' for stdin, or inline JSON");
  add_output(invo, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config(*sub, o);
    if (sub == info) return cmd_field_info(o);
    if (sub == cls) return cmd_classify(o);
    if (sub == ver) return cmd_verify(o);
    if (sub == inv) return cmd_invert(o);
    if (sub == invo) return cmd_involute(o);
  } catch (const Error& e) {
    std::cerr << json{{"error", error_code_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return kUsage;
  }
  return kUsage;
}
