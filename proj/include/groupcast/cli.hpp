#pragma once

// Job runner behind the command-line tool. Kept free of argument parsing so the
// commands can be driven from tests with in-memory streams.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cutset.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "network.hpp"
#include "regions.hpp"
#include "verify.hpp"

namespace groupcast {

enum class ExitCode : int { ok = 0, check_failed = 1, schema = 2, capability = 3 };

struct JobSpec {
  std::string command;                 // region | vertices | verify | fme | example-k4 | campaign
  std::optional<nlohmann::json> net;   // inline network, or loaded from net_path
  std::optional<nlohmann::json> valuation;
  std::string net_path, valuation_path;
  std::string kind;                    // region kind, or campaign kind
  std::string out;                     // file for region/vertices/fme, directory for verify/campaign
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  int count = 50;
  int kmin = 3, kmax = 3;
  bool check_intermediates = false;
};

inline const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> cmds{"region", "vertices", "verify", "fme", "example-k4", "campaign"};
  return cmds;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Accepts {"command":..., "net": "path" | {...}, "valuation": "path" | {...}, "kind", "out",
// "seed", "jobs", "count", "kmin", "kmax", "check_intermediates"}.
inline JobSpec job_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("job must be a JSON object");
  try {
    JobSpec job;
    job.command = j.at("command").get<std::string>();
    auto source = [&](const char* key, std::optional<nlohmann::json>& inline_value, std::string& path) {
      if (!j.contains(key)) return;
      const auto& v = j.at(key);
      if (v.is_string()) {
        path = v.get<std::string>();
      } else if (v.is_object()) {
        inline_value = v;
      } else {
        throw SchemaError(std::string("'") + key + "' must be a path or an object");
      }
    };
    source("net", job.net, job.net_path);
    source("valuation", job.valuation, job.valuation_path);
    job.kind = j.value("kind", std::string{});
    job.out = j.value("out", std::string{});
    job.seed = j.value("seed", std::uint64_t{0});
    job.jobs = j.value("jobs", 1U);
    job.count = j.value("count", 50);
    job.kmin = j.value("kmin", 3);
    job.kmax = j.value("kmax", job.kmin);
    job.check_intermediates = j.value("check_intermediates", false);
    return job;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("job JSON: ") + e.what());
  }
}

struct RunContext {
  std::ostream& out = std::cout;
  std::ostream& err = std::cerr;
  std::function<void(const std::string&)> info = [](const std::string&) {};
  std::function<void(const std::string&)> debug = [](const std::string&) {};
};

namespace detail {

inline std::optional<CombinationNetwork> job_network(const JobSpec& job, const RunContext& ctx) {
  std::optional<nlohmann::json> j = job.net;
  if (!j && !job.net_path.empty()) j = read_json_file(job.net_path);
  if (!j) return std::nullopt;
  std::vector<std::string> warnings;
  auto net = network_from_json(*j, &warnings);
  for (const auto& w : warnings) ctx.err << "warning: " << w << "\n";
  return net;
}

inline std::optional<InfoValuation> job_valuation(const JobSpec& job) {
  std::optional<nlohmann::json> j = job.valuation;
  if (!j && !job.valuation_path.empty()) j = read_json_file(job.valuation_path);
  if (!j) return std::nullopt;
  return valuation_from_json(*j);
}

// Valuation kinds fall back to the combination-network atoms when only --net is given.
inline InfoValuation valuation_for(const JobSpec& job, const RunContext& ctx) {
  if (auto v = job_valuation(job)) return *v;
  if (auto net = job_network(job, ctx)) return evaluate_optimal_distribution(*net);
  throw SchemaError("'" + job.command + "' needs --valuation or --net");
}

inline CombinationNetwork network_for(const JobSpec& job, const RunContext& ctx) {
  if (auto net = job_network(job, ctx)) return *net;
  throw SchemaError("'" + job.command + "' needs --net");
}

inline HPolytope build_region(const JobSpec& job, const RunContext& ctx) {
  const auto kind = parse_region_kind(job.kind.empty() ? "theorem2" : job.kind);
  if (kind_takes_valuation(kind)) {
    const auto v = valuation_for(job, ctx);
    switch (kind) {
      case RegionKind::theorem1: return theorem1_region(v);
      case RegionKind::split_rate_9d: return split_rate_region(v);
      case RegionKind::theorem3: return theorem3_region(v);
      default: return binning_split_region(v);
    }
  }
  if (kind == RegionKind::example_k4) {
    auto net = job_network(job, ctx).value_or(CombinationNetwork::uniform(4, 1));
    if (net.K() != 4) throw SchemaError("example-k4 region needs a K=4 network");
    return theorem2_region(net);
  }
  const auto net = network_for(job, ctx);
  switch (kind) {
    case RegionKind::corollary1: return corollary1_region(net);
    case RegionKind::theorem2: return theorem2_region(net);
    case RegionKind::three_degraded: return degraded_region(net, Degraded::three);
    case RegionKind::two_degraded: return degraded_region(net, Degraded::two);
    default: return outer_region(net);
  }
}

inline void write_text(const std::string& path, const std::string& text, const RunContext& ctx) {
  if (path.empty() || path == "-") {
    ctx.out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw SchemaError("cannot write '" + path + "'");
  f << text;
}

// Reports and the CSV summary go into `dir` (created if needed); without a
// directory the reports are printed.
inline void write_reports(const std::string& dir, const nlohmann::json& doc,
                          const std::vector<VerificationReport>& reports, const RunContext& ctx) {
  if (dir.empty() || dir == "-") {
    ctx.out << doc.dump(2) << "\n";
    return;
  }
  std::filesystem::create_directories(dir);
  write_text((std::filesystem::path(dir) / "report.json").string(), doc.dump(2) + "\n", ctx);
  write_text((std::filesystem::path(dir) / "summary.csv").string(), csv_summary(reports), ctx);
}

inline void print_failures(const std::vector<VerificationReport>& reports, const RunContext& ctx) {
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      if (c.pass) continue;
      ctx.err << "FAIL " << r.kind << " K=" << r.K;
      if (r.seed) ctx.err << " seed=" << *r.seed;
      ctx.err << " " << c.name;
      if (!c.detail.empty()) ctx.err << ": " << c.detail;
      ctx.err << "\n";
      if (c.witness) {
        ctx.err << "  witness " << point_to_json(c.witness->variables, c.witness->point).dump() << " violates "
                << c.witness->violated_row << " (" << to_string(c.witness->lhs) << " > "
                << to_string(c.witness->rhs) << ")\n";
      }
    }
  }
}

inline ExitCode verdict(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass()) return ExitCode::check_failed;
  }
  return ExitCode::ok;
}

inline ExitCode run_region(const JobSpec& job, const RunContext& ctx) {
  const auto poly = minimize(build_region(job, ctx));
  ctx.info("region " + (job.kind.empty() ? std::string("theorem2") : job.kind) + ": " +
           std::to_string(poly.rows.size()) + " rows");
  write_text(job.out, to_json(poly).dump(2) + "\n", ctx);
  return ExitCode::ok;
}

inline ExitCode run_vertices(const JobSpec& job, const RunContext& ctx) {
  const auto poly = minimize(build_region(job, ctx));
  const auto verts = enumerate_vertices(poly);
  const nlohmann::json doc{{"variables", poly.variables}, {"vertices", vertices_to_json(verts)}};
  write_text(job.out, doc.dump(2) + "\n", ctx);
  return ExitCode::ok;
}

inline ExitCode run_verify(const JobSpec& job, const RunContext& ctx) {
  std::vector<VerificationReport> reports;
  if (auto v = job_valuation(job)) {
    reports.push_back(verify_binning_reduction(*v));
    reports.push_back(fme_pipeline(*v, job.check_intermediates));
  } else {
    const auto net = network_for(job, ctx);
    reports.push_back(verify_capacity(net));
    if (net.K() >= 3) reports.push_back(verify_degraded_specializations(net));
  }
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : reports) doc.push_back(to_json(r));
  write_reports(job.out, doc, reports, ctx);
  print_failures(reports, ctx);
  return verdict(reports);
}

inline ExitCode run_fme(const JobSpec& job, const RunContext& ctx) {
  const auto v = valuation_for(job, ctx);
  const auto order = split_elimination_order(v.K);
  const auto trace = fme_trace(v);
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t s = 0; s < trace.states.size(); ++s) {
    steps.push_back({{"step", s + 1}, {"eliminated", order[s]}, {"hrep", to_json(trace.states[s])}});
  }
  const auto rep = fme_pipeline(v, job.check_intermediates);
  const nlohmann::json doc{{"valuation", to_json(v)}, {"steps", steps}, {"report", to_json(rep)}};
  write_text(job.out, doc.dump(2) + "\n", ctx);
  print_failures({rep}, ctx);
  return verdict({rep});
}

inline ExitCode run_example_k4(const JobSpec&, const RunContext& ctx) {
  const auto m = match_example_k4();
  for (std::size_t t = 0; t < m.lines.size(); ++t) {
    ctx.out << m.lines[t] << "  (unit capacities: <= " << to_string(m.unit_rhs[t]) << ")\n";
  }
  ctx.out << m.matched << "/" << m.expected << " rows matched\n";
  return m.matched == m.expected && m.generated == m.expected ? ExitCode::ok : ExitCode::check_failed;
}

inline ExitCode run_campaign_job(const JobSpec& job, const RunContext& ctx) {
  CampaignSpec spec;
  spec.kind = parse_campaign_kind(job.kind.empty() ? "capacity" : job.kind);
  spec.kmin = job.kmin;
  spec.kmax = job.kmax;
  spec.count = job.count;
  spec.seed = job.seed;
  spec.jobs = job.jobs;
  spec.check_intermediates = job.check_intermediates;
  if (spec.count < 0) throw SchemaError("--count must be nonnegative");
  ctx.info("campaign " + (job.kind.empty() ? std::string("capacity") : job.kind) + " K=" +
           std::to_string(spec.kmin) + ".." + std::to_string(spec.kmax) + " count=" + std::to_string(spec.count) +
           " seed=" + std::to_string(spec.seed));
  const auto reports = run_campaign(spec, [&](std::size_t i, const VerificationReport& r) {
    ctx.debug("instance " + std::to_string(i) + " K=" + std::to_string(r.K) + (r.pass() ? " pass" : " FAIL"));
  });
  std::size_t passed = 0;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : reports) {
    passed += r.pass() ? 1 : 0;
    list.push_back(to_json(r));
  }
  const nlohmann::json doc{{"kind", job.kind.empty() ? "capacity" : job.kind},
                           {"seed", spec.seed},
                           {"kmin", spec.kmin},
                           {"kmax", spec.kmax},
                           {"count", spec.count},
                           {"passed", passed},
                           {"reports", list}};
  if (!job.out.empty() && job.out != "-") write_reports(job.out, doc, reports, ctx);
  ctx.out << passed << "/" << reports.size() << " instances passed (seed " << spec.seed << ")\n";
  print_failures(reports, ctx);
  return verdict(reports);
}

}  // namespace detail

// Maps the error hierarchy onto exit codes; anything else propagates.
inline ExitCode run(const JobSpec& job, const RunContext& ctx = {}) {
  try {
    if (job.command == "region") return detail::run_region(job, ctx);
    if (job.command == "vertices") return detail::run_vertices(job, ctx);
    if (job.command == "verify") return detail::run_verify(job, ctx);
    if (job.command == "fme") return detail::run_fme(job, ctx);
    if (job.command == "example-k4") return detail::run_example_k4(job, ctx);
    if (job.command == "campaign") return detail::run_campaign_job(job, ctx);
    throw SchemaError("unknown command '" + job.command + "'");
  } catch (const CapabilityError& e) {
    ctx.err << "error: " << e.what() << "\n";
    return ExitCode::capability;
  } catch (const SchemaError& e) {
    ctx.err << "error: " << e.what() << "\n";
    return ExitCode::schema;
  } catch (const DomainError& e) {
    ctx.err << "error: " << e.what() << "\n";
    return ExitCode::schema;
  }
}

}  // namespace groupcast
