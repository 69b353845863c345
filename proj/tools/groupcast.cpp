#include <cstdlib>
#include <iostream>
#include <string>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <groupcast/cli.hpp>

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("groupcast");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("GROUPCAST_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    if (level != "error") spdlog::warn("GROUPCAST_LOG='{}' not recognised, using error", level);
    spdlog::set_level(spdlog::level::err);
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Exact polyhedral checks for the K-user combination network with the diamond message set"};
  app.require_subcommand(0, 1);

  groupcast::JobSpec job;
  std::string job_path;
  app.add_option("--job", job_path, "JSON job description (replaces the subcommand)");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--net", job.net_path, "network JSON");
    cmd->add_option("--valuation", job.valuation_path, "information-atom valuation JSON");
    cmd->add_option("--out", job.out, "output file (region, vertices, fme) or directory (verify, campaign)");
    cmd->add_flag("--check-intermediates", job.check_intermediates, "compare against the reference intermediate systems");
  };

  auto* region = app.add_subcommand("region", "minimized H-representation of a region");
  add_common(region);
  region->add_option("--kind", job.kind, "theorem1, split9, corollary1, theorem2, three-degraded, two-degraded, "
                                         "theorem3, binning11, example-k4, outer")
      ->default_str("theorem2");

  auto* vertices = app.add_subcommand("vertices", "vertex list of a region (dimension <= 6)");
  add_common(vertices);
  vertices->add_option("--kind", job.kind, "region kind")->default_str("theorem2");

  auto* verify = app.add_subcommand("verify", "verify one network or valuation");
  add_common(verify);

  auto* fme = app.add_subcommand("fme", "five-step projection with per-step H-representations");
  add_common(fme);

  app.add_subcommand("example-k4", "match the four-receiver example row by row");

  auto* campaign = app.add_subcommand("campaign", "seeded random verification campaign");
  add_common(campaign);
  campaign->add_option("--kind", job.kind, "capacity, fme, binning or degraded")->default_str("capacity");
  campaign->add_option("--seed", job.seed, "base seed")->default_val(0);
  campaign->add_option("--jobs", job.jobs, "worker threads")->default_val(1)->check(CLI::PositiveNumber);
  campaign->add_option("--count", job.count, "instances per K")->default_val(50);
  campaign->add_option("--kmin", job.kmin, "smallest K")->default_val(3);
  campaign->add_option("--kmax", job.kmax, "largest K (defaults to --kmin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(groupcast::ExitCode::schema);
  }

  groupcast::RunContext ctx{std::cout, std::cerr, [](const std::string& m) { spdlog::info("{}", m); },
                            [](const std::string& m) { spdlog::debug("{}", m); }};
  if (!job_path.empty()) {
    try {
      job = groupcast::job_from_json(groupcast::read_json_file(job_path));
    } catch (const groupcast::SchemaError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return static_cast<int>(groupcast::ExitCode::schema);
    }
  } else {
    const auto subs = app.get_subcommands();
    if (subs.empty()) {
      std::cerr << app.help();
      return static_cast<int>(groupcast::ExitCode::schema);
    }
    job.command = subs.front()->get_name();
    if (job.command == "campaign" && campaign->count("--kmax") == 0) job.kmax = job.kmin;
  }

  const auto code = groupcast::run(job, ctx);
  spdlog::info("exit {}", static_cast<int>(code));
  return static_cast<int>(code);
}
