// One line per acceptance criterion: PASS/FAIL, wall time, and the limit.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>

#include "example_k4_oracle.hpp"
#include "test_util.hpp"

using namespace groupcast;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned workers() { return std::max(1U, std::thread::hardware_concurrency()); }

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = s < limit_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("criterion %d %-28s %s  %.2fs (limit %.0fs)  %s%s\n", id, title, ok ? "PASS" : "FAIL", s, limit_s,
              o.detail.c_str(), in_time ? "" : "  [over time limit]");
  std::fflush(stdout);
}

std::size_t count_passing(const std::vector<VerificationReport>& reports) {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.pass() ? 1 : 0;
  return n;
}

std::vector<VerificationReport> campaign(CampaignKind kind, int kmin, int kmax, int count, bool intermediates) {
  CampaignSpec spec;
  spec.kind = kind;
  spec.kmin = kmin;
  spec.kmax = kmax;
  spec.count = count;
  spec.seed = 0;
  spec.jobs = workers();
  spec.check_intermediates = intermediates;
  return run_campaign(spec);
}

}  // namespace

int main() {
  criterion(1, "example-k4 golden", 1, [] {
    const auto sym = theorem2_symbolic(4);
    const auto matched = match_against_oracle(sym);
    const auto m = match_example_k4();
    const bool ok = matched == 9 && sym.rows.size() == 9 && m.unit_rhs == example_k4_unit_rhs();
    return Outcome{ok, std::to_string(matched) + "/9 rows matched, " + std::to_string(sym.rows.size()) +
                           " generated"};
  });

  criterion(2, "capacity equality K=3..6", 300, [] {
    const auto reports = campaign(CampaignKind::capacity, 3, 6, 50, false);
    bool redundant = true;
    for (const auto& r : reports) {
      const auto* c = r.find("redundant-families");
      redundant = redundant && c && c->pass;
    }
    const auto n = count_passing(reports);
    return Outcome{n == reports.size() && reports.size() == 200 && redundant,
                   std::to_string(n) + "/" + std::to_string(reports.size()) + " networks"};
  });

  criterion(3, "fme reproduction K=3..5", 600, [] {
    const auto reports = campaign(CampaignKind::fme, 3, 5, 50, true);
    std::size_t checks = 0;
    for (const auto& r : reports) checks += r.checks.size();
    const auto n = count_passing(reports);
    return Outcome{n == reports.size() && reports.size() == 150,
                   std::to_string(n) + "/" + std::to_string(reports.size()) + " valuations, " +
                       std::to_string(checks) + " checks"};
  });

  criterion(4, "binning reduction", 60, [] {
    std::vector<InfoValuation> vals;
    Rng rng(derive_seed(0, 4));
    for (int i = 0; i < 100; ++i) vals.push_back(random_valuation(3 + i % 3, rng));
    const std::size_t arbitrary = vals.size();
    // the valuations of the capacity and fme campaigns
    for (int K = 3; K <= 6; ++K) {
      for (int i = 0; i < 50; ++i) {
        Rng r(instance_seed(0, K, i));
        vals.push_back(evaluate_optimal_distribution(random_network(K, r)));
      }
    }
    std::size_t ok = 0;
    bool certs = true;
    for (const auto& v : vals) {
      const auto rep = verify_binning_reduction(v);
      ok += rep.pass() ? 1 : 0;
      const auto* c = rep.find("certificates");
      certs = certs && c && c->pass && c->certificate.size() == 1 + 2 * static_cast<std::size_t>(v.K - 2) +
                                                                      static_cast<std::size_t>((v.K - 2) * (v.K - 2));
    }
    return Outcome{ok == vals.size() && certs, std::to_string(ok) + "/" + std::to_string(vals.size()) +
                                                   " valuations (" + std::to_string(arbitrary) + " arbitrary)"};
  });

  criterion(5, "extremal inequalities", 60, [] {
    Rng rng(derive_seed(0, 5));
    std::size_t functions = 0, evaluations = 0, bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const int K = 3 + i % 5;
      const auto fn = i % 2 == 0 ? coverage_fn(K, rng)
                                 : truncated_cardinality_fn(K, static_cast<int>(uniform_int(rng, 0, 1 << K)));
      ++functions;
      for (int j = 1; j <= K - 2; ++j) {
        for (int w = 0; w <= 2; ++w) {
          ++evaluations;
          if (!check_extremal_inequality(fn, w, j)) ++bad;
        }
      }
    }
    std::size_t modular = 0, loose = 0;
    for (int i = 0; i < 100; ++i) {
      const int K = 3 + i % 5;
      const auto fn = modular_capacity_fn(random_network(K, rng));
      for (int j = 1; j <= K - 2; ++j) {
        for (int w = 0; w <= 2; ++w) {
          ++modular;
          if (!evaluate_extremal(fn, w, j).tight) ++loose;
        }
      }
    }
    return Outcome{bad == 0 && loose == 0, std::to_string(functions) + " submodular functions, " +
                                               std::to_string(evaluations) + " evaluations, " +
                                               std::to_string(modular) + " modular equalities"};
  });

  criterion(6, "lattice identities K=2..8", 30, [] {
    bool ok = true;
    for (int K = 2; K <= 8; ++K) ok = ok && check_lattice_identities(K);
    return Outcome{ok, "K=2..8"};
  });

  criterion(7, "grid oracle K=3", 120, [] {
    std::size_t ok = 0, points = 0;
    for (int i = 0; i < 100; ++i) {
      Rng rng(instance_seed(0, 3, i) ^ 0x7);
      const auto c = grid_oracle_check(random_integer_network(3, 3, rng));
      ok += c.pass ? 1 : 0;
      points += static_cast<std::size_t>(std::stoul(c.detail));
    }
    return Outcome{ok == 100, std::to_string(ok) + "/100 networks, " + std::to_string(points) + " lattice points"};
  });

  std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
  return failures == 0 ? 0 : 1;
}
