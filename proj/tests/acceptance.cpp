// Acceptance gate: one criterion per command-line tag, one PASS/FAIL line
// each. Run without arguments (or with "all") to execute every criterion.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lcav/analytics.hpp"
#include "lcav/io.hpp"
#include "lcav/util.hpp"
#include "lcav/sweep.hpp"
#include "lcav/validation.hpp"
#include "support/oracles.hpp"

using namespace lcav;

namespace {

std::string g_cli_path;  // path to the lcav binary, used by criterion 10

struct Tracker {
  double max_herm = 0.0;
  double pop_lo = 0.0, pop_hi = 1.0;
  double max_leak = 0.0;
  void absorb(const EvolutionResult& r) {
    max_herm = std::max(max_herm, r.max_hermiticity_defect);
    pop_lo = std::min(pop_lo, r.min_population);
    pop_hi = std::max(pop_hi, r.max_population);
    max_leak = std::max(
        max_leak, std::max(std::abs(1.0 - r.min_trace), std::abs(r.max_trace - 1.0)));
  }
};

SimulationConfig single_photon(double kappa) {
  SimulationConfig cfg;
  cfg.field1 = parse_field_spec("fock:n=1");
  cfg.field2 = parse_field_spec("fock:n=0");
  cfg.kappa = kappa;
  return cfg;
}

// --- criterion 1: dense superoperator equivalence, D = 27 ------------------

bool criterion1(std::string& detail) {
  const int kmax = 2, mmax = 2;
  double worst = 0.0;
  for (double kappa : {0.0, 0.3, 1.5}) {
    const oracle::Mat L = oracle::dense_superoperator(kmax, mmax, kappa);
    DensityMatrix dm(kmax, mmax);
    // A dense non-Hermitian probe exercises every stencil path.
    const std::size_t d = dm.dim();
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        dm.at(r, c) = cplx{std::sin(1.0 + 3.0 * double(r * d + c)),
                           std::cos(2.0 + 5.0 * double(r * d + c))};
    const DensityMatrix out = apply_liouvillian(dm, kappa);
    for (std::size_t i = 0; i < L.rows; ++i) {
      cplx acc{};
      for (std::size_t j = 0; j < L.cols; ++j)
        acc += L.at(i, j) * dm.data()[j];
      worst = std::max(worst, std::abs(acc - out.data()[i]));
    }
  }
  std::ostringstream os;
  os << "max deviation " << worst;
  detail = os.str();
  return worst <= 1e-12;
}

// --- criterion 2: lossless single-photon Rabi dynamics ----------------------

bool criterion2(std::string& detail) {
  SimulationConfig cfg = single_photon(0.0);
  cfg.dt = 0.005;
  cfg.t_max = 50.0;
  const EvolutionResult res = evolve(cfg);

  auto sample_near = [&](double t_star) {
    const auto& s = res.trace.samples;
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (std::abs(s[i].t - t_star) < std::abs(s[best].t - t_star)) best = i;
    return s[best];
  };

  const double pi = std::acos(-1.0);
  const TraceSample s2 = sample_near(pi / std::sqrt(2.0));
  const TraceSample s3 = sample_near(pi / (2.0 * std::sqrt(2.0)));
  const double err2 = std::abs(s2.o2 - oracle::rabi_O2(s2.t));
  const double err3 = std::abs(s3.o3 - oracle::rabi_O3(s3.t));
  const double leak = res.max_trace - res.min_trace;

  std::ostringstream os;
  os << "O2 peak " << s2.o2 << " (oracle err " << err2 << "), O3 half "
     << s3.o3 << " (oracle err " << err3 << "), trace spread " << leak;
  detail = os.str();
  return oracle::rabi_O2(pi / std::sqrt(2.0)) == 1.0 &&
         std::abs(oracle::rabi_O3(pi / (2.0 * std::sqrt(2.0))) - 0.5) <
             1e-15 &&
         err2 <= 1e-6 && err3 <= 1e-6 && leak < 1e-9;
}

// --- criterion 3: single-photon steady states vs the closed form ------------

bool criterion3(std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  const double ref01 = single_photon_steady_states(0.1).first;
  ok = ok && std::abs(ref01 - 0.501168) < 1e-6;
  os << "closed form at 0.1 = " << ref01;
  for (double kappa : {0.05, 0.1, 0.2, 0.5}) {
    SimulationConfig cfg = single_photon(kappa);
    cfg.record_every = 10;
    const SteadyStateResult st = detect_steady_state(cfg);
    const double expect = single_photon_steady_states(kappa).first;
    os << "; k=" << kappa << ": O1_st " << st.O1_st << " vs " << expect;
    ok = ok && st.converged && std::abs(st.O1_st - expect) <= 0.02 &&
         std::abs(st.O1_st + st.O2_st - 1.0) <= 1e-4;
  }
  detail = os.str();
  return ok;
}

// --- criterion 4: two-photon p_N, quadrature and closed form ----------------

bool criterion4(std::string& detail) {
  bool ok = true;
  std::ostringstream os;

  // Transcription guard: the double integral reproduces the closed form.
  double worst_guard = 0.0;
  for (double kappa : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0})
    worst_guard = std::max(worst_guard,
                           std::abs(pN_from_p211_double_integral(kappa, 1e-7) -
                                    two_photon_pN_closed_form(kappa).value));
  ok = ok && worst_guard <= 1e-4;
  const double limit = two_photon_pN_closed_form(1e-9).value;
  ok = ok && std::abs(limit - 0.185185) < 1e-6;
  os << "quadrature guard " << worst_guard << ", limit " << limit;

  for (double kappa : {0.25, 0.5, 1.0}) {
    SimulationConfig cfg;
    cfg.kappa = kappa;
    cfg.record_every = 4;
    const TwoPhotonSplit split = extract_pN_pI(cfg);
    const double closed = two_photon_pN_closed_form(kappa).value;
    os << "; k=" << kappa << ": p_N " << split.p_N << " vs " << closed;
    ok = ok && std::abs(split.p_N - closed) <= 0.01;
  }
  detail = os.str();
  return ok;
}

// --- criterion 5: two-photon steady-state orderings --------------------------

bool criterion5(std::string& detail) {
  SimulationConfig lo;
  lo.kappa = 0.2;
  lo.record_every = 4;
  const TwoPhotonSplit a = extract_pN_pI(lo);

  SimulationConfig hi;
  hi.kappa = 3.0;
  hi.record_every = 4;
  const TwoPhotonSplit b = extract_pN_pI(hi);

  std::ostringstream os;
  os << "k=0.2: O1_st " << a.O1_st << ", O2_st " << a.O2_st << ", p_I "
     << a.p_I << "; k=3: O1_st " << b.O1_st << ", O2_st " << b.O2_st;
  detail = os.str();
  return a.O2_st > a.O1_st && std::abs(a.p_I - a.O1_st) <= 0.05 &&
         b.O1_st > b.O2_st;
}

// --- criterion 6: collapse/revival and lossy steady state, <n> = 10 ---------

bool criterion6(std::string& detail, Tracker& tracker) {
  SimulationConfig cfg;
  // The default bound (kmax = 27) leaves a 2.3e-6 deficit for <n> = 10,
  // just over the 1e-6 budget; one more Fock level settles it.
  cfg.field1 = parse_field_spec("coherent:alpha=3.16227766016838,kmax=28");
  cfg.field2 = parse_field_spec("fock:n=0");
  cfg.kappa = 0.0;
  cfg.t_max = 50.0;
  cfg.record_every = 4;
  const EvolutionResult a = evolve(cfg);
  tracker.absorb(a);

  auto window_stats = [&](double t0, double t1, double& lo, double& hi,
                          double& var) {
    lo = 1.0;
    hi = 0.0;
    double sum = 0.0, sum2 = 0.0;
    long n = 0;
    for (const TraceSample& s : a.trace.samples) {
      if (s.t < t0 || s.t > t1) continue;
      lo = std::min(lo, s.o1);
      hi = std::max(hi, s.o1);
      sum += s.o1;
      sum2 += s.o1 * s.o1;
      ++n;
    }
    var = n > 0 ? sum2 / n - (sum / n) * (sum / n) : 0.0;
  };

  double lo0, hi0, var0, lop, hip, varp, lor, hir, varr;
  window_stats(0.0, 4.0, lo0, hi0, var0);    // initial oscillations
  window_stats(6.0, 12.0, lop, hip, varp);   // collapsed plateau
  window_stats(16.0, 24.0, lor, hir, varr);  // revival around 2 pi sqrt(<n>)
  const double init_amp = hi0 - lo0;
  const double plateau_amp = hip - lop;
  const double revival_amp = hir - lor;
  double o2max = 0.0;
  for (const TraceSample& s : a.trace.samples) o2max = std::max(o2max, s.o2);

  const bool part_a = plateau_amp < 0.1 * init_amp &&
                      revival_amp > 2.0 * plateau_amp && o2max < a.trace.samples[0].o1;

  cfg.kappa = 0.3;
  cfg.t_max = -1.0;
  cfg.record_every = 20;
  const EvolutionResult b = run_steady(cfg);
  tracker.absorb(b);
  const bool part_b = b.steady.converged && b.steady.O2_st > 0.5 &&
                      b.steady.O1_st < 0.5 && b.steady.O3 < 1e-4;

  std::ostringstream os;
  os << "initial amp " << init_amp << ", plateau amp " << plateau_amp
     << ", revival amp " << revival_amp << ", O2 max " << o2max
     << "; lossy: O1_st " << b.steady.O1_st << ", O2_st " << b.steady.O2_st
     << ", O3 " << b.steady.O3;
  detail = os.str();
  return part_a && part_b;
}

// --- criterion 7: steady-state sweep over field statistics ------------------

bool criterion7(std::string& detail) {
  const double r10 = std::asinh(std::sqrt(10.0));  // <n> = 10 squeezed vacuum
  std::ostringstream rspec;
  rspec << "squeezed:r=" << fmt_double(r10) << ",theta=0,kmax=60";

  SweepSpec spec;
  spec.kappa_grid = SweepSpec::log_grid(0.05, 5.0, 12);
  spec.field2 = parse_field_spec("fock:n=0");
  spec.base.dt = 0.02;
  spec.base.record_every = 10;
  // The squeezed tail decays like (10/11)^k, so a deficit below 1e-2 would
  // need kmax > 80 and an intractably large excitation sector. Admit the
  // kmax=60 truncation (deficit 1.5e-2, renormalized mean photon number 8.9)
  // and renormalize; the qualitative orderings probed here are set by the
  // low-photon weights, which the truncation leaves untouched.
  spec.base.eps_trunc = 0.02;
  spec.base.renormalize = true;

  std::vector<FieldSpec> all = {parse_field_spec("fock:n=10"),
                                parse_field_spec("coherent:alpha=3.16227766016838"),
                                parse_field_spec(rspec.str())};
  const std::vector<std::string> names = {"fock", "coherent", "squeezed"};
  std::vector<std::vector<double>> o2(3);

  std::ostringstream os;
  bool ok = true;
  for (std::size_t v = 0; v < all.size(); ++v) {
    SweepSpec one = spec;
    one.field1_variants = {all[v]};
    const SweepTable table = run_sweep(one);
    o2[v].resize(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      ok = ok && table.rows[i].converged;
      o2[v][i] = table.rows[i].O2_st;
    }
    os << names[v] << ": O2_st(0.05) " << o2[v].front() << ", O2_st(5) "
       << o2[v].back() << "; ";
    // Every variant decays towards large kappa. With <n>=10 the transfer
    // does not drop to the single-photon level at kappa=5: each photon is
    // an independent chance to lock the system into the level-2 dark state,
    // so O2_st ~ 1-(1-p1)^10 ~ 0.45 even though the single-photon p1 is
    // only 0.07 there. Half transfer is the loss-dominated bound.
    ok = ok && o2[v].back() < 0.5 && o2[v].back() < o2[v].front();
    if (names[v] == "squeezed")
      for (double val : o2[v]) ok = ok && val < 0.5;
  }
  // Coherent below Fock at the two largest kappa points.
  const std::size_t n = o2[0].size();
  ok = ok && o2[1][n - 1] < o2[0][n - 1] && o2[1][n - 2] < o2[0][n - 2];
  detail = os.str();
  return ok;
}

// --- criterion 8: RK4 convergence order --------------------------------------

bool criterion8(std::string& detail) {
  const int kmax = 2, mmax = 2;
  const double kappa = 0.3, t_end = 1.0;
  AmplitudeVector psi = coherent_amplitudes(cplx{0.8, 0.0}, kmax, 0.5);
  psi = psi.renormalized();
  const DensityMatrix dm0 =
      initial_density_matrix(psi, fock_amplitudes(1, mmax), kmax, mmax);
  const oracle::Mat L = oracle::dense_superoperator(kmax, mmax, kappa);
  const std::vector<cplx> exact = oracle::expm_apply(L, t_end, dm0.data());

  std::vector<double> errs;
  for (double dt : {0.02, 0.01, 0.005}) {
    DensityMatrix dm = dm0;
    const long n = std::lround(t_end / dt);
    for (long i = 0; i < n; ++i) dm = rk4_step(dm, dt, kappa);
    double err = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i)
      err = std::max(err, std::abs(dm.data()[i] - exact[i]));
    errs.push_back(err);
  }
  const double order1 = std::log2(errs[0] / errs[1]);
  const double order2 = std::log2(errs[1] / errs[2]);
  std::ostringstream os;
  os << "errors " << errs[0] << " / " << errs[1] << " / " << errs[2]
     << ", observed orders " << order1 << ", " << order2;
  detail = os.str();
  return order1 >= 3.7 && order2 >= 3.7;
}

// --- criterion 9: structural invariants --------------------------------------

bool criterion9(std::string& detail) {
  Tracker tracker;

  SimulationConfig rabi = single_photon(0.0);
  rabi.t_max = 50.0;
  rabi.record_every = 10;
  tracker.absorb(evolve(rabi));

  SimulationConfig lossy = single_photon(0.5);
  lossy.record_every = 10;
  tracker.absorb(run_steady(lossy));

  SimulationConfig twophoton;
  twophoton.field1 = parse_field_spec("fock:n=2");
  twophoton.field2 = parse_field_spec("fock:n=0");
  twophoton.kappa = 0.3;
  twophoton.record_every = 10;
  tracker.absorb(run_steady(twophoton));

  const int limit = 3;
  const auto brute = classify_all_stencil(limit);
  const Basis basis(limit, limit);
  bool classifier_ok = true;
  for (std::size_t r = 0; r < basis.dim(); ++r)
    for (std::size_t c = 0; c < basis.dim(); ++c)
      classifier_ok =
          classifier_ok && classify_element(basis.unflat(r), basis.unflat(c)) ==
                               brute[r * basis.dim() + c];

  std::ostringstream os;
  os << "max hermiticity defect " << tracker.max_herm << ", populations ["
     << tracker.pop_lo << ", " << tracker.pop_hi << "], max trace leak "
     << tracker.max_leak << ", classifier "
     << (classifier_ok ? "exact" : "MISMATCH");
  detail = os.str();
  return tracker.max_herm < 1e-10 && tracker.pop_lo >= -1e-8 &&
         tracker.pop_hi <= 1.0 + 1e-8 && tracker.max_leak < 1e-4 &&
         classifier_ok;
}

// --- criterion 10: byte-identical reruns -------------------------------------

bool criterion10(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "no CLI path given (pass it as the second argument)";
    return false;
  }
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const std::string args =
      " evolve --field1 fock:n=1 --field2 fock:n=0 --kappa 0.4 --tmax 5"
      " --record-every 10 --out ";
  for (const char* dir : {"det_run_a", "det_run_b"}) {
    const std::string cmd = g_cli_path + args + dir + " > /dev/null";
    if (std::system(cmd.c_str()) != 0) {
      detail = "CLI run failed";
      return false;
    }
  }
  const std::string a = slurp("det_run_a/trace.csv");
  const std::string b = slurp("det_run_b/trace.csv");
  std::ostringstream os;
  os << a.size() << " bytes, reruns " << (a == b ? "identical" : "DIFFER");
  detail = os.str();
  return !a.empty() && a == b;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  if (argc > 2) g_cli_path = argv[2];

  struct Entry {
    std::string tag;
    std::string title;
  };
  const std::vector<Entry> entries = {
      {"1", "dense superoperator equivalence (D = 27)"},
      {"2", "lossless single-photon Rabi dynamics"},
      {"3", "single-photon steady states vs closed form"},
      {"4", "two-photon p_N quadrature vs closed form"},
      {"5", "two-photon steady-state orderings"},
      {"6", "coherent <n>=10 collapse/revival and lossy steady state"},
      {"7", "steady-state sweep over field statistics"},
      {"8", "RK4 convergence order"},
      {"9", "structural invariants"},
      {"10", "byte-identical reruns"},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    if (which != "all" && which != e.tag) continue;
    std::string detail;
    bool pass = false;
    Tracker tracker;
    try {
      if (e.tag == "1") pass = criterion1(detail);
      else if (e.tag == "2") pass = criterion2(detail);
      else if (e.tag == "3") pass = criterion3(detail);
      else if (e.tag == "4") pass = criterion4(detail);
      else if (e.tag == "5") pass = criterion5(detail);
      else if (e.tag == "6") pass = criterion6(detail, tracker);
      else if (e.tag == "7") pass = criterion7(detail);
      else if (e.tag == "8") pass = criterion8(detail);
      else if (e.tag == "9") pass = criterion9(detail);
      else if (e.tag == "10") pass = criterion10(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
      pass = false;
    }
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << e.tag << ": "
              << e.title << " [" << detail << "]" << std::endl;
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
