// Acceptance run: one line per criterion, exit status 1 if any fails.
// Every scenario is run twice; criterion 11 compares the two report texts.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "sepwidth/cli/commands.hpp"
#include "sepwidth/common/errors.hpp"
#include "sepwidth/foam/sweep.hpp"

using namespace sepwidth;
using namespace sepwidth::cli;

namespace {

struct Run {
  std::string name;
  std::function<Report()> fn;
  std::vector<Report> reports;
  std::string error;
  double seconds = 0;
};

bool checks_pass(const Report& r, const std::string& prefix, const std::string& suffix = "") {
  bool any = false;
  for (const auto& c : r.checks()) {
    if (c.role != Role::kHard) continue;
    if (c.name.rfind(prefix, 0) != 0) continue;
    if (!suffix.empty() && (c.name.size() < suffix.size() ||
                            c.name.compare(c.name.size() - suffix.size(), suffix.size(), suffix) != 0)) {
      continue;
    }
    any = true;
    if (!c.pass()) return false;
  }
  return any;
}

double value_of(const Report& r, const std::string& check) {
  const auto* c = r.find_check(check);
  return c ? c->value : std::nan("");
}

int failures = 0;

void line(int k, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("criterion %2d: %s  %s\n", k, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

}  // namespace

int main() {
  const std::uint64_t seed = 1;
  std::vector<Run> runs;
  runs.push_back({"lemmas", [&] { return run_lemmas({0, 100, seed}); }, {}, {}, 0});
  runs.push_back({"foam-sweep", [&] { return run_foam_sweep({0, 200000, seed}); }, {}, {}, 0});
  runs.push_back({"foam-union-2", [&] {
                    FoamUnionConfig c;
                    c.n = 2, c.res = 256, c.seeds = 200, c.seed = seed;
                    return run_foam_union(c);
                  }, {}, {}, 0});
  runs.push_back({"foam-union-3", [&] {
                    FoamUnionConfig c;
                    c.n = 3, c.res = 96, c.seeds = 20, c.seed = seed, c.measure_report_only = true;
                    return run_foam_union(c);
                  }, {}, {}, 0});
  runs.push_back({"kinematic", [&] { return run_kinematic({100, 20000, seed}); }, {}, {}, 0});
  runs.push_back({"avoid", [&] { return run_avoid({50, seed}); }, {}, {}, 0});
  runs.push_back({"tower", [&] {
                    TowerConfig c;
                    c.seed = seed;
                    return run_tower(c);
                  }, {}, {}, 0});
  runs.push_back({"width-highcodim", [&] {
                    HighCodimConfig c;
                    c.seed = seed;
                    return run_width_highcodim(c);
                  }, {}, {}, 0});
  runs.push_back({"width-codim1", [&] {
                    Codim1Config c;
                    c.seed = seed;
                    return run_width_codim1(c);
                  }, {}, {}, 0});
  runs.push_back({"essential-curve", [&] {
                    EssentialConfig c;
                    c.seed = seed;
                    return run_essential_curve(c);
                  }, {}, {}, 0});

  for (auto& run : runs) {
    for (int rep = 0; rep < 2; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        run.reports.push_back(run.fn());
      } catch (const std::exception& e) {
        run.error = e.what();
        break;
      }
      if (rep == 0) run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    std::fprintf(stderr, "%s: %.1f s\n", run.name.c_str(), run.seconds);
  }
  auto get = [&](const std::string& name) -> const Run& {
    for (const auto& r : runs) {
      if (r.name == name) return r;
    }
    throw Error("no run " + name);
  };
  auto usable = [&](const Run& r, int k) {
    if (!r.error.empty() || r.reports.empty()) {
      line(k, false, r.name + " raised: " + r.error);
      return false;
    }
    return true;
  };

  const auto& lem = get("lemmas");
  if (usable(lem, 1)) {
    const auto& r = lem.reports[0];
    line(1, checks_pass(r, "n", "_identity") && lem.seconds < 120,
         "squared-average identities N=1..5, 100 trials, " + fmt("%.2f s", lem.seconds));
  }
  if (usable(lem, 2)) {
    const auto& r = lem.reports[0];
    line(2, checks_pass(r, "n", "_excess"), "abs_dot, projection and |det| averages within 1e-12 of their bounds");
  }

  const auto& sw = get("foam-sweep");
  if (usable(sw, 3)) {
    const auto& r = sw.reports[0];
    // Reference value 2 pi sqrt 2 = 8.8858 for N = 2.
    const bool ref = std::abs(foam::foam_bound(2) - 8.8858) < 5e-5;
    line(3, checks_pass(r, "n") && ref && sw.seconds < 600,
         "min ratio N=1..4 vs 2 pi sqrt N; N=2 min " + fmt("%.4f", value_of(r, "n2.min_ratio")) + " vs " +
             fmt("%.4f", foam::foam_bound(2)) + ", " + fmt("%.1f s", sw.seconds));
  }

  const auto& u2 = get("foam-union-2");
  const auto& u3 = get("foam-union-3");
  if (usable(u2, 4) && usable(u3, 4)) {
    const auto& a = u2.reports[0];
    const auto& b = u3.reports[0];
    line(4, a.ok() && b.ok(),
         "N=2 R=256 200 seeds boundary mean " + fmt("%.4f", value_of(a, "boundary_mean")) +
             "; N=3 R=96 20 seeds boundary mean " + fmt("%.4f", value_of(b, "boundary_mean")) + " (report-only)");
  }

  const auto& kin = get("kinematic");
  if (usable(kin, 5)) {
    const auto& r = kin.reports[0];
    line(5, r.ok() && kin.seconds < 300,
         "max |z| length " + fmt("%.2f", value_of(r, "length_oracle_max_z")) + ", count " +
             fmt("%.2f", value_of(r, "count_oracle_max_z")) + ", " + fmt("%.1f s", kin.seconds));
  }

  const auto& av = get("avoid");
  if (usable(av, 6)) {
    const auto& r = av.reports[0];
    line(6, r.ok(), "50 meshes, found fraction " + fmt("%.2f", value_of(r, "found_fraction")) +
                        ", recounted hits " + fmt("%.0f", value_of(r, "recount_hits")));
  }

  const auto& tw = get("tower");
  if (usable(tw, 7)) {
    const auto& r = tw.reports[0];
    line(7, checks_pass(r, "nerve."),
         "10^4 queries, sup displacement " + fmt("%.4f", value_of(r, "nerve.sup_displacement")));
  }

  const auto& hc = get("width-highcodim");
  if (usable(hc, 8)) {
    const auto& r = hc.reports[0];
    line(8, r.ok(), "success rate " + fmt("%.2f", value_of(r, "success_rate")) + " (report-only below 0.9), sup " +
                        fmt("%.4f", value_of(r, "max_sup_displacement")));
  }

  const auto& c1 = get("width-codim1");
  if (usable(c1, 9)) {
    const auto& r = c1.reports[0];
    line(9, r.ok() && c1.seconds < 900,
         "100 meshes, max sup/l " + fmt("%.4f", value_of(r, "max_sup_over_l")) + ", pair hits " +
             fmt("%.0f", value_of(r, "pair_hits")) + ", " + fmt("%.1f s", c1.seconds));
  }

  const auto& es = get("essential-curve");
  if (usable(es, 10)) {
    const auto& r = es.reports[0];
    line(10, r.ok() && es.seconds < 300, "torus at area 1/3 - 1e-3, cycle found and rank-verified");
  }

  bool same = true;
  std::string diff;
  for (const auto& run : runs) {
    if (run.reports.size() != 2 || run.reports[0].text() != run.reports[1].text()) {
      same = false;
      diff += " " + run.name;
    }
  }
  line(11, same, same ? "all reports byte-identical on rerun" : "differs:" + diff);
  return failures == 0 ? 0 : 1;
}
