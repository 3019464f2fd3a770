#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "flatsig/certificate.hpp"
#include "flatsig/constructions.hpp"
#include "flatsig/errors.hpp"
#include "flatsig/planner.hpp"

using namespace flatsig;
using nlohmann::json;

namespace {

constexpr int kExitUnachievable = 2;
constexpr int kExitVerify = 3;
constexpr int kExitIllConditioned = 4;

std::pair<int, int> parse_surface(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::InvalidInput, "surface must be g,n");
  return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << j.dump(2) << "\n";
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("certificate is not JSON: ") + e.what());
  }
  try {
    return Certificate::from_json(j);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed certificate: ") + e.what());
  }
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnachievableValue: return kExitUnachievable;
    case ErrorCode::IllConditioned: return kExitIllConditioned;
    default: return 1;
  }
}

struct SweepRow {
  int g, n, m;
  std::string formula, oracle, verdict;
};

SweepRow sweep_cell(BoundaryMode mode, int g, int n, int m, int p, int q, bool with_oracle,
                    unsigned seed, bool in_set) {
  SweepRow row{g, n, m, "", "", ""};
  PlanTarget t{g, n, m, mode, p, q};
  try {
    auto cert = certify(t, false, seed);
    auto v = verify(cert, with_oracle, seed);
    int formula = 0;
    for (const auto& r : v.reports) formula += r.signature_formula;
    row.formula = std::to_string(formula);
    if (with_oracle && v.oracle_skipped == 0) {
      int o = 0;
      for (const auto& r : v.oracle) o += r.signature;
      row.oracle = std::to_string(o);
    }
    row.verdict = (v.ok && in_set) ? "pass" : "fail";
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnachievableValue && !in_set)
      row.verdict = "refused";
    else
      row.verdict = std::string("fail:") + to_string(e.code());
  }
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signatures of flat symplectic and unitary bundles over surfaces"};
  app.require_subcommand(1);

  std::string family = "paraelliptic", surface = "0,3", out_path, cert_path;
  std::vector<std::string> surfaces;
  int m = 0, p = 1, q = 0;
  bool with_oracle = false, all_m = false;
  unsigned seed = 0;

  auto* construct = app.add_subcommand("construct", "Plan, build and certify a representation");
  construct->add_option("--family,--mode", family, "Boundary mode")->capture_default_str();
  construct->add_option("--surface", surface, "Genus and boundary count as g,n")->capture_default_str();
  construct->add_option("--m", m, "Target signature")->required();
  construct->add_option("--p", p, "Rank p");
  construct->add_option("--q", q, "Rank q");
  construct->add_option("-o,--output", out_path, "Certificate path (stdout if omitted)");
  construct->add_flag("--oracle", with_oracle, "Also run the cohomology oracle");
  construct->add_option("--seed", seed, "Oracle seed");

  auto* invariants = app.add_subcommand("invariants", "Invariant reports for a certificate");
  invariants->add_option("certificate", cert_path)->required();
  invariants->add_flag("--oracle", with_oracle, "Also run the cohomology oracle");
  invariants->add_option("--seed", seed, "Oracle seed");

  auto* verify_cmd = app.add_subcommand("verify", "Recheck a certificate from its matrices");
  verify_cmd->add_option("certificate", cert_path)->required();
  verify_cmd->add_flag("--oracle", with_oracle, "Also run the cohomology oracle");
  verify_cmd->add_option("--seed", seed, "Oracle seed");

  auto* values = app.add_subcommand("values", "Achievable signature values");
  values->add_option("--family", family)->capture_default_str();
  values->add_option("--surface", surface)->capture_default_str();
  values->add_option("--p", p);
  values->add_option("--q", q);

  auto* catalog_cmd = app.add_subcommand("catalog", "List building blocks and their labels");

  auto* sweep = app.add_subcommand("sweep", "CSV of planner results over a grid");
  sweep->add_option("--family,--mode", family)->capture_default_str();
  sweep->add_option("--surface", surfaces, "Repeatable g,n (default: desk grid)");
  sweep->add_option("--p", p);
  sweep->add_option("--q", q);
  sweep->add_flag("--oracle", with_oracle, "Compare against the cohomology oracle");
  sweep->add_flag("--all-m", all_m, "Also try values outside the achievable set");
  sweep->add_option("--seed", seed);
  sweep->add_option("-o,--output", out_path, "CSV path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct) {
      auto [g, n] = parse_surface(surface);
      auto cert = certify(PlanTarget{g, n, m, parse_mode(family), p, q}, with_oracle, seed);
      emit(cert.to_json(), out_path);
      return 0;
    }
    if (*invariants || *verify_cmd) {
      auto cert = load_certificate(cert_path);
      auto v = verify(cert, with_oracle, seed);
      json reports = json::array();
      for (const auto& r : v.reports) reports.push_back(to_json(r));
      if (*invariants) {
        std::cout << reports.dump(2) << "\n";
        return v.ok ? 0 : kExitVerify;
      }
      json verdict = {{"verdict", v.ok ? "pass" : "fail"}, {"failures", v.failures},
                      {"invariants", reports}};
      if (with_oracle) {
        json o = json::array();
        for (const auto& r : v.oracle) o.push_back(to_json(r));
        verdict["oracle"] = o;
        verdict["oracle_skipped"] = v.oracle_skipped;
      }
      std::cout << verdict.dump(2) << "\n";
      return v.ok ? 0 : kExitVerify;
    }
    if (*values) {
      auto [g, n] = parse_surface(surface);
      auto vs = value_set(ValueSetSpec{parse_family(family), p, q, g, n});
      std::ostringstream s;
      s << "{";
      for (std::size_t i = 0; i < vs.size(); ++i) s << (i ? "," : "") << vs[i];
      s << "}";
      std::cout << s.str() << "\n";
      return 0;
    }
    if (*catalog_cmd) {
      json list = json::array();
      for (const auto& e : catalog()) {
        BlockSpec spec{e.kind, {}, false};
        json d = json::object();
        for (const auto& [k, v] : e.defaults) d[k] = format_rational(v);
        list.push_back({{"kind", e.kind}, {"summary", e.summary}, {"defaults", d},
                        {"signature", block_label(with_defaults(spec))}});
      }
      std::cout << list.dump(2) << "\n";
      return 0;
    }
    if (*sweep) {
      if (surfaces.empty()) surfaces = {"0,3", "0,4", "1,1", "1,2", "2,1"};
      BoundaryMode mode = parse_mode(family);
      std::ostringstream csv;
      csv << "g,n,m,family,sign_formula,sign_oracle,verdict\n";
      bool all_ok = true;
      for (const auto& s : surfaces) {
        auto [g, n] = parse_surface(s);
        auto vs = value_set(mode_value_spec(mode, g, n, p, q));
        std::vector<int> ms = vs;
        if (all_m && !vs.empty()) {
          ms.clear();
          for (int k = vs.front(); k <= vs.back(); ++k) ms.push_back(k);
        }
        for (int k : ms) {
          bool in_set = std::binary_search(vs.begin(), vs.end(), k);
          auto row = sweep_cell(mode, g, n, k, p, q, with_oracle, seed, in_set);
          if (row.verdict != "pass" && row.verdict != "refused") all_ok = false;
          csv << row.g << "," << row.n << "," << row.m << "," << mode_name(mode) << ","
              << row.formula << "," << row.oracle << "," << row.verdict << "\n";
        }
      }
      if (out_path.empty() || out_path == "-") {
        std::cout << csv.str();
      } else {
        std::ofstream(out_path) << csv.str();
      }
      return all_ok ? 0 : kExitVerify;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == ErrorCode::InvalidInput && (*verify_cmd || *invariants)) return kExitVerify;
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
