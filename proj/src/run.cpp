#include "msl/run.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

namespace msl {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json matrix_json(const Matrix& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.push_back({a(i, j).real(), a(i, j).imag()});
  return out;
}

struct Pipeline {
  SelfAdjointProblem prob;
  CanonicalForm canon;
  OmegaBlocks omega;
  AsymptoticConstants constants;
};

Pipeline build_pipeline(const RunConfig& cfg) {
  Pipeline p{cfg.resolveProblem(), {}, {}, {}};
  require_valid(p.prob);
  p.canon = canonicalize(p.prob);
  p.omega = mean_matrix(p.canon.problem);
  p.constants = asymptotic_constants(p.canon.problem, p.omega);
  return p;
}

std::ofstream open_out(const std::string& dir, const std::string& name,
                       std::vector<std::string>& files) {
  fs::create_directories(dir);
  std::string path = (fs::path(dir) / name).string();
  std::ofstream out(path);
  if (!out) throw ComputationError("cannot write " + path);
  out << std::setprecision(17) << std::scientific;
  files.push_back(path);
  return out;
}

// predicted z per k slot; for graphs the P(z)-route values are reported
std::vector<double> z_predictions(const RunConfig& cfg, const Pipeline& pl) {
  std::vector<double> z(pl.prob.m);
  if (cfg.graph) {
    GraphPrediction pred = graph_constants(*cfg.graph);
    bool delta = cfg.graph->coupling == Coupling::Delta;
    for (int k = 1; k <= pl.prob.m; ++k) {
      if (delta)
        z[k - 1] = k == 1 ? pred.vertexZ : pred.polyRoots[k - 2];
      else
        z[k - 1] = k == pl.prob.m ? pred.vertexZ : pred.polyRoots[k - 1];
    }
  } else {
    for (int k = 1; k <= pl.prob.m; ++k) z[k - 1] = pl.constants.z(k);
  }
  return z;
}

void write_constants_json(const RunConfig& cfg, const Pipeline& pl,
                          std::vector<std::string>& files) {
  json j;
  j["m"] = pl.prob.m;
  j["p"] = pl.prob.p;
  j["z_half"] = pl.constants.zHalf;
  j["z_int"] = pl.constants.zInt;
  j["cluster_tolerance"] = pl.constants.clusterTol;
  json cl = json::array();
  for (const auto& c : pl.constants.clusters)
    cl.push_back({{"id", c.id},
                  {"half_band", c.halfBand},
                  {"z", c.z},
                  {"members", c.members}});
  j["clusters"] = cl;
  json As = json::array();
  for (int s : pl.constants.representatives())
    As.push_back({{"s", s}, {"A", matrix_json(pl.constants.Amats[s - 1])}});
  j["A"] = As;
  j["U"] = matrix_json(pl.canon.U);
  j["h"] = matrix_json(pl.canon.hBlock);
  auto out = open_out(cfg.outDir, "constants.json", files);
  out << j.dump(2) << "\n";
}

LocateOptions locate_options(const RunConfig& cfg) {
  LocateOptions lo;
  lo.integ = cfg.integ;
  lo.workers = cfg.workers;
  return lo;
}

// A^(s) conjugated into the coordinates the weight sums are computed in
std::vector<Matrix> amats_original(const Pipeline& pl) {
  std::vector<Matrix> out;
  for (const auto& a : pl.constants.Amats) out.push_back(pl.canon.U * a * pl.canon.U.adjoint());
  return out;
}

}  // namespace

RunArtifacts run_spectrum(const RunConfig& cfg) {
  RunArtifacts art;
  Pipeline pl = build_pipeline(cfg);
  EigenvalueTable table = locate_spectrum(pl.prob, cfg.maxBand, locate_options(cfg), pl.constants);
  RemainderDiagnostics rd = remainders(table, pl.constants);
  std::vector<double> zpred = z_predictions(cfg, pl);

  if (cfg.format == "csv") {
    auto out = open_out(cfg.outDir, "eigenvalues.csv", art.files);
    out << "# eigenvalue table; rho = sign(lambda) sqrt(|lambda|); z_pred is the predicted\n"
        << "# correction constant for slot k; kappa = n (rho - base - z/(pi base))\n"
        << "n,k,lambda,rho,cluster_id,z_pred,kappa\n";
    for (const auto& e : table.entries)
      out << e.n << "," << e.k << "," << e.lambda << "," << e.rho << "," << e.clusterId << ","
          << zpred[e.k - 1] << "," << rd.kappa(e.n - 1, e.k - 1) << "\n";
    auto rout = open_out(cfg.outDir, "remainders.csv", art.files);
    rout << "# cumulative l2 sums of kappa^2 per k slot and in total; tail ratio = "
            "(P(N)-P(N/2))/P(N)\n"
         << "n";
    for (int k = 1; k <= table.m; ++k) rout << ",partial_l2_k" << k;
    rout << ",partial_l2_total\n";
    for (int n = 1; n <= table.maxN; ++n) {
      rout << n;
      for (int k = 1; k <= table.m; ++k) rout << "," << rd.partialL2(n - 1, k - 1);
      rout << "," << rd.partialL2Total(n - 1) << "\n";
    }
  } else {
    json j;
    json rows = json::array();
    for (const auto& e : table.entries)
      rows.push_back({{"n", e.n},
                      {"k", e.k},
                      {"lambda", e.lambda},
                      {"rho", e.rho},
                      {"cluster_id", e.clusterId},
                      {"z_pred", zpred[e.k - 1]},
                      {"kappa", rd.kappa(e.n - 1, e.k - 1)}});
    j["eigenvalues"] = rows;
    std::vector<double> l2(rd.partialL2Total.data(), rd.partialL2Total.data() + table.maxN);
    j["partial_l2_total"] = l2;
    j["tail_ratios"] = rd.tailRatios;
    auto out = open_out(cfg.outDir, "eigenvalues.json", art.files);
    out << j.dump(2) << "\n";
  }
  write_constants_json(cfg, pl, art.files);

  RunConfig echo = cfg;
  auto pout = open_out(cfg.outDir, "problem.json", art.files);
  pout << serialize_config(echo) << "\n";
  return art;
}

RunArtifacts run_weights(const RunConfig& cfg) {
  RunArtifacts art;
  Pipeline pl = build_pipeline(cfg);
  EigenvalueTable table = locate_spectrum(pl.prob, cfg.maxBand, locate_options(cfg), pl.constants);

  WeightSums sums;
  for (int n = 1; n <= cfg.maxBand; ++n) {
    try {
      WeightSums one = weight_sums(pl.prob, table, pl.constants, n, n, cfg.quad, cfg.workers);
      sums.bands.push_back(std::move(one.bands[0]));
    } catch (const ComputationError& e) {
      art.warnings.push_back("band " + std::to_string(n) + " skipped: " + e.what());
    }
  }
  if (sums.bands.empty()) throw ComputationError("run_weights: no band produced a weight sum");

  std::vector<Matrix> Aorig = amats_original(pl);
  DeviationReport dev =
      weight_asymptotics_check(sums, pl.constants, pl.prob.T, pl.prob.Tperp(), &Aorig);

  json jw;
  jw["bands"] = json::array();
  for (const auto& b : sums.bands) {
    json jb;
    jb["n"] = b.n;
    jb["alpha_I"] = matrix_json(b.bandI);
    jb["alpha_II"] = matrix_json(b.bandII);
    json pc = json::array();
    for (const auto& [id, a] : b.perCluster) pc.push_back({{"cluster_id", id}, {"alpha", matrix_json(a)}});
    jb["per_cluster"] = pc;
    jw["bands"].push_back(jb);
  }
  jw["warnings"] = art.warnings;
  {
    auto out = open_out(cfg.outDir, "weights.json", art.files);
    out << jw.dump(2) << "\n";
  }

  {
    auto out = open_out(cfg.outDir, "deviations.csv", art.files);
    out << "# d_s<N> = ||pi/(2 base^2) alpha_n^(s) - A^(s)||_F per cluster id; e_I, e_II are the\n"
        << "# band deviations scaled by n; values below the reporting floor (" << std::defaultfloat
        << kClusterDeviationFloor << " clusters, " << kBandDeviationFloor
        << " bands) carry no trend information\n"
        << std::scientific << "n";
    for (const auto& [id, s] : dev.perCluster) out << ",d_s" << id;
    out << ",e_I,e_II\n";
    for (size_t i = 0; i < dev.bandI.n.size(); ++i) {
      out << dev.bandI.n[i];
      for (const auto& [id, s] : dev.perCluster) out << "," << s.value[i];
      out << "," << dev.bandI.value[i] << "," << dev.bandII.value[i] << "\n";
    }
    out << "# slopes:";
    for (const auto& [id, s] : dev.perCluster)
      out << " d_s" << id << "=" << (s.belowFloor ? std::string("below-floor")
                                                  : std::to_string(s.slope));
    out << " e_I=" << (dev.bandI.belowFloor ? std::string("below-floor")
                                            : std::to_string(dev.bandI.slope))
        << " e_II=" << (dev.bandII.belowFloor ? std::string("below-floor")
                                              : std::to_string(dev.bandII.slope))
        << "\n";
  }

  {
    DataConstants data = estimate_constants_from_data(table, sums, pl.constants);
    ReconstructionResult rec = reconstruct_blocks(data, pl.constants);
    Matrix h = pl.canon.hBlock;
    Matrix directHalf = pl.omega.omega11 - h;
    Matrix directInt = pl.omega.omega22;
    json jr;
    jr["recovered_half_block"] = matrix_json(rec.halfBlock);
    jr["recovered_int_block"] = matrix_json(rec.intBlock);
    jr["direct_half_block"] = matrix_json(directHalf);
    jr["direct_int_block"] = matrix_json(directInt);
    jr["max_abs_deviation"] =
        std::max((rec.halfBlock - directHalf).cwiseAbs().maxCoeff(),
                 (rec.intBlock - directInt).cwiseAbs().maxCoeff());
    jr["z_hat"] = data.zHat;
    auto out = open_out(cfg.outDir, "reconstruction.json", art.files);
    out << jr.dump(2) << "\n";
  }
  return art;
}

namespace {

struct VerifyContext {
  const RunConfig& cfg;
  Pipeline pl;
  EigenvalueTable table;
  WeightSums sums;
  int nW0 = 0;  // first band with weight sums
};

void check(VerifySummary& sum, std::ostream* progress, const std::string& id, bool pass,
           const std::string& detail) {
  sum.criteria.push_back({id, pass, detail});
  if (!pass && sum.firstFailure.empty()) sum.firstFailure = id;
  if (progress)
    (*progress) << (pass ? "PASS " : "FAIL ") << id << ": " << detail << "\n" << std::flush;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

bool series_decays(const SeriesDiagnostic& s, double slopeBound) {
  return s.belowFloor || s.slope <= slopeBound;
}

}  // namespace

VerifySummary run_verify(const RunConfig& cfg, std::ostream* progress) {
  VerifySummary sum;
  VerifyContext ctx{cfg, build_pipeline(cfg), {}, {}, 0};
  const SelfAdjointProblem& prob = ctx.pl.prob;
  const int N = cfg.maxBand;

  {
    ValidationReport rep = validate_problem(prob);
    check(sum, progress, "validate", rep.pass, rep.summary());
    if (!rep.pass) {
      sum.pass = false;
      return sum;
    }
  }

  // spectrum with winding verification; monotone labels are structural
  ctx.table = locate_spectrum(prob, N, locate_options(cfg), ctx.pl.constants);
  {
    bool mono = true;
    for (size_t i = 1; i < ctx.table.entries.size(); ++i)
      mono = mono && ctx.table.entries[i - 1].lambda <= ctx.table.entries[i].lambda + 1e-12;
    check(sum, progress, "spectrum-bands", mono && static_cast<int>(ctx.table.entries.size()) == N * prob.m,
          "located " + std::to_string(ctx.table.entries.size()) + " eigenvalues in " +
              std::to_string(N) + " bands, winding-verified");
  }

  {
    auto guesses = initial_guesses(prob, N, &ctx.pl.constants);
    int n0 = 0;
    for (const auto& g : guesses) {
      double rho = ctx.table.at(g.n, g.k).rho;
      if (std::abs(rho - g.rho0) > 0.25) n0 = std::max(n0, g.n + 1);
    }
    check(sum, progress, "guess-proximity", n0 <= std::max(1, N / 2),
          "rho within 1/4 of refined guesses for n >= " + std::to_string(std::max(1, n0)));
  }

  {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> ure(0.5, std::pow(N + 0.25, 2.0) * 0.9);
    double worst = 0.0;
    for (int i = 0; i < 12; ++i) {
      PropagatorValue pv = propagate(prob, Complex(ure(rng), 0.0), cfg.integ);
      worst = std::max(worst,
                       (pv.C.adjoint() * pv.Sp - pv.Cp.adjoint() * pv.S -
                        Matrix::Identity(prob.m, prob.m))
                           .cwiseAbs()
                           .maxCoeff());
    }
    check(sum, progress, "wronskian", worst <= 1e-8, "max deviation " + fmt(worst));
  }

  {
    std::mt19937_64 rng(54321);
    std::uniform_real_distribution<double> ure(0.5, std::pow(N + 0.25, 2.0) * 0.9);
    std::uniform_real_distribution<double> uim(0.3, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 12; ++i) {
      Complex lam(ure(rng), uim(rng) * (i % 2 ? 1.0 : -1.0));
      Matrix M1 = *weyl(prob, lam, cfg.integ).M;
      Matrix M2 = *weyl(prob, std::conj(lam), cfg.integ).M;
      worst = std::max(worst, (M2.adjoint() - M1).norm() / (1.0 + M1.norm()));
    }
    check(sum, progress, "weyl-symmetry", worst <= 1e-7, "max scaled deviation " + fmt(worst));
  }

  if (N >= 8) {
    RemainderDiagnostics rd = remainders(ctx.table, ctx.pl.constants);
    bool ok = rd.tailRatioTotal < 0.35 || rd.partialL2Total(N - 1) < 1e-12;
    check(sum, progress, "kappa-plateau", ok,
          "l2 tail ratio " + fmt(rd.tailRatioTotal) + ", total " +
              fmt(rd.partialL2Total(N - 1)));
  }

  // weight sums over the widest range the table supports
  ctx.nW0 = std::min(3, N);
  for (int n = ctx.nW0; n <= N; ++n) {
    try {
      WeightSums one = weight_sums(prob, ctx.table, ctx.pl.constants, n, n, cfg.quad, cfg.workers);
      ctx.sums.bands.push_back(std::move(one.bands[0]));
    } catch (const ComputationError&) {
      if (ctx.sums.bands.empty()) ++ctx.nW0;
    }
  }

  {
    bool herm = true, psd = true, rank = true;
    double worstH = 0.0;
    for (const auto& b : ctx.sums.bands) {
      for (const auto& [id, a] : b.perCluster) {
        double scale = a.norm();
        worstH = std::max(worstH, hermitian_deviation(a) / (1e-300 + scale));
        herm = herm && hermitian_deviation(a) <= 1e-7 * scale;
        auto [ev, evec] = eigh(hermitized(a), 1e-4);
        psd = psd && ev(0) >= -1e-7 * scale;
        int sz = 0;
        for (const auto& c : ctx.pl.constants.clusters)
          if (c.id == id) sz = c.size();
        int numRank = 0;
        for (int i = 0; i < ev.size(); ++i) numRank += ev(i) > 1e-6 * scale ? 1 : 0;
        rank = rank && numRank <= sz && (b.n < 5 || numRank == sz);
      }
    }
    check(sum, progress, "alpha-hermitian-psd-rank", herm && psd && rank,
          "worst Hermitian deviation " + fmt(worstH) + ", rank bound " +
              (rank ? "holds" : "violated"));
  }

  {
    std::vector<Matrix> Aorig = amats_original(ctx.pl);
    DeviationReport dev =
        weight_asymptotics_check(ctx.sums, ctx.pl.constants, prob.T, prob.Tperp(), &Aorig);
    bool clusters = true;
    std::string det;
    for (const auto& [id, s] : dev.perCluster) {
      bool ok = series_decays(s, -0.5);
      clusters = clusters && ok;
      det += "d_s" + std::to_string(id) + (s.belowFloor ? "=floor" : "~n^" + fmt(s.slope)) + " ";
    }
    bool bands = series_decays(dev.bandI, 0.1) && series_decays(dev.bandII, 0.1);
    det += "e_I" + std::string(dev.bandI.belowFloor ? "=floor" : "~n^" + fmt(dev.bandI.slope));
    det += " e_II" + std::string(dev.bandII.belowFloor ? "=floor" : "~n^" + fmt(dev.bandII.slope));
    check(sum, progress, "weight-deviations", clusters && bands, det);
  }

  {
    DataConstants data = estimate_constants_from_data(ctx.table, ctx.sums, ctx.pl.constants);
    ReconstructionResult rec = reconstruct_blocks(data, ctx.pl.constants);
    Matrix dHalf = rec.halfBlock - (ctx.pl.omega.omega11 - ctx.pl.canon.hBlock);
    Matrix dInt = rec.intBlock - ctx.pl.omega.omega22;
    double dev = std::max(dHalf.cwiseAbs().maxCoeff(), dInt.cwiseAbs().maxCoeff());
    double tol = std::max(5e-2, 2.0 / N);
    check(sum, progress, "reconstruction", dev <= tol,
          "max block deviation " + fmt(dev) + " (tol " + fmt(tol) + ")");
  }

  {
    LocateOptions tight = locate_options(cfg);
    tight.integ.tolerance = 1e-12;
    int Ninv = std::min(4, N);
    EigenvalueTable t1 = locate_spectrum(prob, Ninv, tight, ctx.pl.constants);
    EigenvalueTable t2 = locate_spectrum(ctx.pl.canon.problem, Ninv, tight, ctx.pl.constants);
    double worst = 0.0;
    for (size_t i = 0; i < t1.entries.size(); ++i)
      worst = std::max(worst, std::abs(t1.entries[i].lambda - t2.entries[i].lambda));
    check(sum, progress, "unitary-invariance", worst <= 1e-9,
          "max |lambda - lambda_canonical| = " + fmt(worst));
  }

  {
    int n = std::min(6, N);
    auto groups = cluster_groups(ctx.table, ctx.pl.constants, n);
    double worst = 0.0;
    for (auto g : groups) {
      Matrix a1 = weight_sum(prob, g, cfg.quad);
      g.radius *= 0.5;
      Matrix a2 = weight_sum(prob, g, cfg.quad);
      worst = std::max(worst, (a1 - a2).norm() / (1.0 + a1.norm()));
    }
    check(sum, progress, "contour-independence", worst <= 1e-7,
          "max relative change under radius halving " + fmt(worst));
  }

  {
    FDConfig fdc;
    int bands = std::min(5, N);
    std::vector<double> fd = fd_spectrum(ctx.pl.canon.problem, fdc, bands * prob.m);
    double worst = 0.0;
    for (int i = 0; i < bands * prob.m; ++i)
      worst = std::max(worst, std::abs(fd[i] - ctx.table.entries[i].lambda));
    check(sum, progress, "oracle-fd", worst <= 1e-3,
          "max |lambda_fd - lambda| = " + fmt(worst) + " over " + std::to_string(bands) +
              " bands at N_g = " + std::to_string(fdc.gridPoints));
  }

  {
    double worst = 0.0;
    int tested = 0;
    for (int n = std::max(3, ctx.nW0); n <= std::min(5, N); ++n) {
      for (const auto& g : cluster_groups(ctx.table, ctx.pl.constants, n)) {
        if (g.multiplicity != 1 || g.radius < 0.05) continue;
        const auto& e = ctx.table.at(g.members[0].first, g.members[0].second);
        ResidueEstimate est = residue_by_limit(prob, e.lambda, 0.0, cfg.integ);
        if (!est.conclusive) continue;
        Matrix byContour = weight_sum(prob, g, cfg.quad);
        worst = std::max(worst, (est.value - byContour).norm() / (1.0 + byContour.norm()));
        ++tested;
      }
    }
    check(sum, progress, "oracle-residue", tested > 0 && worst <= 1e-6,
          "max relative disagreement " + fmt(worst) + " over " + std::to_string(tested) +
              " isolated poles");
  }

  if (cfg.graph) {
    WeightQuadratureOptions wq = cfg.quad;
    GraphReport rep = verify_graph_theorems(*cfg.graph, N, locate_options(cfg), wq);
    check(sum, progress, "graph-two-route", rep.zAgreement <= 1e-10,
          "P(z) roots vs omega-block eigenvalues agree to " + fmt(rep.zAgreement));
    bool decay = series_decays(rep.vertexClusterDev, -0.5) &&
                 series_decays(rep.oppositeBandDev, 0.1) &&
                 (rep.rhoHalfResidualNHalf.belowFloor || rep.rhoHalfResidualNHalf.l2Tail < 0.5);
    for (const auto& [id, s] : rep.interiorClusterDev) decay = decay && series_decays(s, -0.5);
    check(sum, progress, "graph-asymptotics", decay,
          "vertex dev" +
              std::string(rep.vertexClusterDev.belowFloor ? "=floor"
                                                          : "~n^" + fmt(rep.vertexClusterDev.slope)) +
              ", opposite band " +
              (rep.oppositeBandDev.belowFloor ? "=floor" : "~n^" + fmt(rep.oppositeBandDev.slope)));
  }

  if (cfg.compareProblem) {
    ComparisonReport rep = compare_problems(prob, *cfg.compareProblem, N, locate_options(cfg));
    // negative control: the block conditions are violated, so n (rho - rhoHat)
    // must NOT decay; compare the trailing quarter against the constant-shift
    // prediction c/2
    Matrix dOm = hermitized(prob.Q.halfIntegral()) - hermitized(cfg.compareProblem->Q.halfIntegral());
    double shift = dOm.cwiseAbs().maxCoeff() * 2.0 / kPi;  // constant-shift magnitude estimate
    double tail = 0.0;
    int cnt = 0;
    for (int n = 3 * N / 4; n <= N; ++n)
      for (int k = 1; k <= prob.m; ++k) {
        tail += std::abs(rep.scaledRhoDiff(n - 1, k - 1));
        ++cnt;
      }
    tail /= std::max(1, cnt);
    bool nondecay = !rep.conditionsHold && tail > 0.25 * (shift / 2.0);
    check(sum, progress, "negative-compare", nondecay,
          "conditions hold = " + std::string(rep.conditionsHold ? "true" : "false") +
              ", trailing mean |n d rho| = " + fmt(tail) + " (expected-fail-pass)");

    DataConstants data = estimate_constants_from_data(ctx.table, ctx.sums, ctx.pl.constants);
    ReconstructionResult honest = reconstruct_blocks(data, ctx.pl.constants);
    double honestDev =
        std::max((honest.halfBlock - (ctx.pl.omega.omega11 - ctx.pl.canon.hBlock)).cwiseAbs().maxCoeff(),
                 (honest.intBlock - ctx.pl.omega.omega22).cwiseAbs().maxCoeff());
    DataConstants shuffled = data;
    std::rotate(shuffled.aHat.begin(), shuffled.aHat.begin() + 1, shuffled.aHat.end());
    ReconstructionResult bad = reconstruct_blocks(shuffled, ctx.pl.constants);
    double badDev =
        std::max((bad.halfBlock - (ctx.pl.omega.omega11 - ctx.pl.canon.hBlock)).cwiseAbs().maxCoeff(),
                 (bad.intBlock - ctx.pl.omega.omega22).cwiseAbs().maxCoeff());
    check(sum, progress, "negative-shuffle", badDev > 10.0 * std::max(honestDev, 1e-6),
          "honest " + fmt(honestDev) + " vs shuffled " + fmt(badDev) + " (expected-fail-pass)");
  }

  sum.pass = true;
  for (const auto& c : sum.criteria) sum.pass = sum.pass && c.pass;

  json j;
  j["pass"] = sum.pass;
  json arr = json::array();
  for (const auto& c : sum.criteria)
    arr.push_back({{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
  j["criteria"] = arr;
  if (!cfg.presetName.empty()) j["preset"] = cfg.presetName;
  std::vector<std::string> files;
  auto out = open_out(cfg.outDir, "verify.json", files);
  out << j.dump(2) << "\n";
  return sum;
}

}  // namespace msl
