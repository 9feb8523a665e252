// One PASS/FAIL line per acceptance criterion. Tolerances are stated here
// and applied to the measured residuals, independent of the suite defaults.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "xtc/verify.hpp"

using namespace xtc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Mode {
  const char* name;
  DerivativeMode mode;
};
constexpr Mode kModes[] = {{"fd2", DerivativeMode::fd2}, {"analytic", DerivativeMode::analytic}};

struct Gate {
  std::vector<std::string> notes;
  bool ok = true;

  // Residual of the named record in its own metric, or of the chosen metric.
  void at_most(const VerificationReport& r, const std::string& id, double tol, const char* metric = nullptr) {
    const CheckRecord* c = r.find(id);
    if (!c) {
      fail(id + " missing");
      return;
    }
    double v = c->measured();
    if (metric) v = std::string(metric) == "abs" ? c->abs : c->rel;
    if (!(v <= tol)) fail(id + " = " + fmt(v) + " > " + fmt(tol));
  }
  void prefix_at_most(const VerificationReport& r, const std::string& prefix, const std::string& suffix, double tol,
                      int expected) {
    int found = 0;
    for (const auto& c : r.checks) {
      if (c.id.rfind(prefix, 0) != 0 || c.id.size() < suffix.size() ||
          c.id.compare(c.id.size() - suffix.size(), suffix.size(), suffix) != 0)
        continue;
      ++found;
      at_most(r, c.id, tol);
    }
    if (found < expected) fail(prefix + "*" + suffix + ": " + std::to_string(found) + " records");
  }
  void passes(const VerificationReport& r, const std::string& id) {
    const CheckRecord* c = r.find(id);
    if (!c || !c->pass) fail(id + " did not pass");
  }
  void expect(bool condition, const std::string& what) {
    if (!condition) fail(what);
  }
  void fail(const std::string& why) {
    ok = false;
    notes.push_back(why);
  }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }
};

VerificationReport run(const std::string& suite, DerivativeMode mode, const std::string& geometry = {}) {
  SuiteConfig c;
  c.suite = suite;
  c.geometry = geometry;
  c.derivatives.mode = mode;
  return run_suite(c);
}

int report(int number, const std::string& title, const std::function<void(Gate&)>& body) {
  Gate g;
  try {
    body(g);
  } catch (const std::exception& e) {
    g.fail(std::string("exception: ") + e.what());
  }
  std::printf("%s criterion %d: %s", g.ok ? "PASS" : "FAIL", number, title.c_str());
  for (const auto& n : g.notes) std::printf(" | %s", n.c_str());
  std::printf("\n");
  std::fflush(stdout);
  return g.ok ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;

  failures += report(1, "tensor algebra identities <= 1e-12 in under 5 s", [](Gate& g) {
    const auto start = std::chrono::steady_clock::now();
    const VerificationReport r = run("tensor-algebra", DerivativeMode::fd2);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const char* id : {"algebra.insertion_commutation", "algebra.contraction_associativity",
                           "algebra.bigcirc_associativity", "algebra.frobenius_projection"})
      g.at_most(r, id, 1e-12);
    g.expect(secs < 5.0, "runtime " + Gate::fmt(secs) + " s");
  });

  failures += report(2, "recursive projection equals the brute-force oracle <= 1e-12", [](Gate& g) {
    const VerificationReport r = run("projection", DerivativeMode::fd2);
    g.prefix_at_most(r, "projection.", ".brute_force", 1e-12, 3);
  });

  failures += report(3, "curl of (-y, x, 0) on z = 0 equals 2", [](Gate& g) {
    for (const Mode& m : kModes) {
      const VerificationReport r = run("curl", m.mode, "plane_disk");
      const CheckRecord* c = r.find("curl.plane_disk.rotation");
      g.expect(c && c->lhs.size() == 1 && c->lhs[0] == c->lhs[0], "curl record");
      if (c && !c->lhs.empty())
        g.expect(std::abs(c->lhs[0] - 2.0) <= (m.mode == DerivativeMode::analytic ? 1e-12 : 1e-8),
                 std::string(m.name) + " curl = " + Gate::fmt(c->lhs[0]));
    }
  });

  failures += report(4, "Stokes: hemisphere e_z terms, helix path, disk circulation", [](Gate& g) {
    for (const Mode& m : kModes) {
      const VerificationReport r = run("stokes", m.mode);
      const CheckRecord* b = r.find("stokes.hemisphere.e_z_boundary");
      const CheckRecord* k = r.find("stokes.hemisphere.e_z_curvature");
      g.expect(b && std::abs(b->lhs[0] + 2.0 * kPi) <= 1e-6 * 2.0 * kPi, "boundary term");
      g.expect(k && std::abs(k->lhs[0] - 2.0 * kPi) <= 1e-6 * 2.0 * kPi, "curvature term");
      g.at_most(r, "stokes.hemisphere.e_z_total", 1e-6, "abs");
      for (int q = 0; q <= 2; ++q) g.at_most(r, "stokes.helix_segment.path_ftc_rank" + std::to_string(q), 1e-6);
      g.at_most(r, "stokes.helix_segment.rank1", 1e-6);
      g.at_most(r, "stokes.plane_disk.circulation", 1e-6, "abs");
      const VerificationReport c = run("curl", m.mode, "plane_disk");
      g.at_most(c, "curl.plane_disk.circulation_rank1", 1e-6);
    }
  });

  failures += report(5, "mean curvature on spheres R = 1, 2 and the codimension-2 circle", [](Gate& g) {
    for (const Mode& m : kModes) {
      const double tol = m.mode == DerivativeMode::analytic ? 1e-9 : 1e-5;
      const VerificationReport r = run("differential-identities", m.mode);
      for (const char* id : {"differential.sphere.mean_curvature", "differential.sphere_R2.mean_curvature",
                             "differential.circle3d.mean_curvature"})
        g.at_most(r, id, tol, "rel");
    }
  });

  failures += report(6, "Laplacians and the manufactured weak form", [](Gate& g) {
    for (const Mode& m : kModes) {
      const VerificationReport r = run("laplacian", m.mode);
      g.at_most(r, "laplacian.sphere.coordinates", 1e-4, "rel");
      g.at_most(r, "laplacian.sphere.covariant_rotation", 1e-3, "rel");
      g.at_most(r, "laplacian.sphere.weak_form", 1e-4, "abs");
    }
  });

  failures += report(7, "Euler: steady rotation, momentum, force balance, divergence form", [](Gate& g) {
    for (const Mode& m : kModes) {
      const VerificationReport r = run("euler", m.mode);
      for (const char* id : {"euler.sphere.momentum", "euler.sphere.divergence", "euler.sphere.divergence_form"})
        g.at_most(r, id, 1e-5);
      g.at_most(r, "euler.sphere.extrinsic_momentum", 1e-8);
      const CheckRecord* fb = r.find("euler.sphere.force_balance");
      g.expect(fb && fb->abs <= 1e-6 * 1.5 * 1.5 * 4.0 * kPi, "force balance");
      g.at_most(r, "euler.sphere.form_identity", 1e-5);
    }
  });

  failures += report(8, "stress: torque identities, contrapositive, constrained family", [](Gate& g) {
    for (const Mode& m : kModes) {
      const VerificationReport r = run("stress", m.mode);
      g.prefix_at_most(r, "stress.hemisphere.generator_identity_", "", 1e-5, 3);
      g.prefix_at_most(r, "stress.hemisphere.torque_equivalence_", "", 1e-5, 3);
      g.at_most(r, "stress.hemisphere.contrapositive_normal", 1e-8, "abs");
      g.passes(r, "stress.hemisphere.contrapositive_nonzero");
      const CheckRecord* nz = r.find("stress.hemisphere.contrapositive_nonzero");
      g.expect(nz && nz->abs > 0.0, "contrapositive terms vanish");
      g.at_most(r, "stress.frames.constrained_family", 1e-10);
    }
  });

  failures += report(9, "evolving: Reynolds, commutators, projector rate, Dirichlet rate", [](Gate& g) {
    for (const Mode& m : kModes) {
      const VerificationReport r = run("evolving", m.mode);
      g.at_most(r, "evolving.expanding_sphere.reynolds_area", 1e-6, "rel");
      g.prefix_at_most(r, "evolving.", ".commutators", 1e-4, 3);
      g.prefix_at_most(r, "evolving.", ".projected_rate", 1e-6, 3);
      g.at_most(r, "evolving.expanding_sphere.dirichlet_rate_rank0", 1e-4, "rel");
      g.at_most(r, "evolving.expanding_sphere.dirichlet_rate_rank2_ez", 1e-3);
      g.at_most(r, "evolving.expanding_sphere.dirichlet_rate_rank2_xx", 1e-3, "rel");
    }
  });

  failures += report(10, "verify --suite all exits 0 in under 2 minutes", [](Gate& g) {
    const std::string cmd = std::string(XTC_BINARY) + " verify --suite all --out /dev/null 2>/dev/null";
    const auto start = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    g.expect(code == 0, "exit code " + std::to_string(code));
    g.expect(secs < 120.0, "runtime " + Gate::fmt(secs) + " s");
    std::printf("     verify --suite all: %.2f s\n", secs);
  });

  return failures == 0 ? 0 : 1;
}
