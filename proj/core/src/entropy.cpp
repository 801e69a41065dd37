#include "nldp/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nldp/error.hpp"
#include "nldp/presets.hpp"

namespace nldp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAdmissibleTol = 1e-10;

double cos4_bump_derivative(double x, double center, double w) {
  const double s = (x - center) / w;
  if (std::abs(s) >= 1.0) return 0.0;
  const double c = std::cos(0.5 * kPi * s), sn = std::sin(0.5 * kPi * s);
  return -4.0 * c * c * c * sn * 0.5 * kPi / w;
}

double eta(EntropySign s, double x) { return s == EntropySign::Plus ? std::max(x, 0.0) : std::max(-x, 0.0); }
double sgn(EntropySign s, double x) {
  if (s == EntropySign::Plus) return x > 0.0 ? 1.0 : 0.0;
  return x < 0.0 ? -1.0 : 0.0;
}

// Lattice points (on the grid's cell-centre lattice) that can carry phi or L^{<r}[phi].
struct LatticePoint {
  Point x;
  long grid_index;  // -1 outside the stored grid
  bool inside_domain;
  double psi;
  double inner_psi;  // L^{<r}[psi]
};

}  // namespace

TestFunctionFamily default_test_family(const ProblemSpec& spec, const DataRange& range) {
  TestFunctionFamily fam;
  const int d = spec.dim();
  const Point lo = spec.domain.box_lo(), hi = spec.domain.box_hi();
  const double T = spec.T;

  struct Profile {
    std::string name;
    std::function<double(double)> f, df;
  };
  const std::vector<Profile> profiles = {
      {"cos2", [T](double t) { const double c = std::cos(0.5 * kPi * t / T); return c * c; },
       [T](double t) { return -0.5 * kPi / T * std::sin(kPi * t / T); }},
      {"sin2", [T](double t) { const double s = std::sin(kPi * t / T); return s * s; },
       [T](double t) { return kPi / T * std::sin(2.0 * kPi * t / T); }},
      {"cubic", [T](double t) { const double s = 1.0 - t / T; return s * s * s; },
       [T](double t) { const double s = 1.0 - t / T; return -3.0 * s * s / T; }},
  };
  const double scales[3] = {0.125, 0.25, 0.5};
  const double centres[3] = {0.25, 0.5, 0.75};
  for (double sc : scales) {
    for (double ce : centres) {
      Point c{0.0, 0.0}, w{1.0, 1.0};
      for (int a = 0; a < d; ++a) {
        const double L = hi[a] - lo[a];
        c[a] = lo[a] + ce * L;
        w[a] = sc * L;
      }
      auto psi = [c, w, d](const Point& x) {
        double v = 1.0;
        for (int a = 0; a < d; ++a) v *= cos4_bump(x[a], c[a], w[a]);
        return v;
      };
      auto grad = [c, w, d](const Point& x) {
        Point g{0.0, 0.0};
        for (int a = 0; a < d; ++a) {
          double v = cos4_bump_derivative(x[a], c[a], w[a]);
          for (int o = 0; o < d; ++o)
            if (o != a) v *= cos4_bump(x[o], c[o], w[o]);
          g[a] = v;
        }
        return g;
      };
      for (const auto& p : profiles) {
        std::ostringstream os;
        os << "bump(w=" << sc << ",c=" << ce << ")*" << p.name;
        TestFunction tf;
        tf.label = os.str();
        tf.psi = psi;
        tf.grad_psi = grad;
        tf.theta = p.f;
        tf.theta_dt = p.df;
        for (int a = 0; a < d; ++a) {
          tf.support_lo[a] = c[a] - w[a];
          tf.support_hi[a] = c[a] + w[a];
        }
        fam.phis.push_back(std::move(tf));
      }
    }
  }
  const double m = range.lo, M = range.hi;
  const double delta = M > m ? M - m : 1.0;
  fam.levels = {m - 0.1 * delta};
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) fam.levels.push_back(m + q * delta);
  fam.levels.push_back(M + 0.1 * delta);
  return fam;
}

EntropyResidualReport entropy_residual(const Trajectory& traj, const ProblemSpec& spec, const StencilWeights& stencil,
                                       const TestFunctionFamily& family, const std::vector<double>& r_list) {
  const Grid& g = traj.grid;
  require(stencil.dim == g.dim && std::abs(stencil.dx - g.dx) <= 1e-14 * g.dx, Errc::ShapeMismatch,
          "stencil does not match the trajectory grid");
  const int d = g.dim;
  const double vol = g.cell_volume();
  const double dt = traj.dt;
  const std::size_t N = traj.steps();
  const auto& b = spec.diffusion;
  const double lip_f = spec.flux.lipschitz(traj.range.lo, traj.range.hi);
  require(!traj.times.empty() && std::abs(traj.times.back() - spec.T) <= 1e-9 * spec.T, Errc::InvalidArgument,
          "the test functions vanish at the problem's T, so the trajectory must reach it");

  std::vector<std::size_t> interior, exterior;
  for (std::size_t k = 0; k < g.size(); ++k) (traj.interior[k] ? interior : exterior).push_back(k);

  std::vector<std::vector<double>> bu(N + 1, std::vector<double>(g.size()));
  std::vector<double> far(N + 1, 0.0);
  for (std::size_t n = 0; n <= N; ++n) {
    for (std::size_t k = 0; k < g.size(); ++k) bu[n][k] = b(traj.u[n][k]);
    for (std::size_t k : exterior) far[n] += bu[n][k];
    if (!exterior.empty()) far[n] /= static_cast<double>(exterior.size());
  }

  const auto nodes = spec.domain.boundary_nodes(g.dx);
  std::vector<std::vector<double>> ext_nodes(N, std::vector<double>(nodes.size()));
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t q = 0; q < nodes.size(); ++q) ext_nodes[n][q] = spec.extension(traj.times[n], nodes[q].x);

  EntropyResidualReport rep;
  rep.worst_residual = -INFINITY;

  for (double r : r_list) {
    require(r >= stencil.r * (1.0 - 1e-12), Errc::InvalidArgument, "entropy radius below the stencil's splitting radius");
    const StencilSplit split = split_stencil(stencil, r);
    const StencilKernel outer(split.outer, g);
    std::vector<std::vector<double>> outer_l(N, std::vector<double>(g.size(), 0.0));
    for (std::size_t n = 0; n < N; ++n)
      for (std::size_t k : interior) outer_l[n][k] = outer.apply(bu[n].data(), k, far[n]);
    const int inner_reach = split.inner.reach();

    for (const TestFunction& phi : family.phis) {
      // Lattice covering the grid and the support of phi dilated by the inner reach.
      int lo_idx[2] = {0, 0}, hi_idx[2] = {g.n[0], g.n[1]};
      for (int a = 0; a < d; ++a) {
        const int slo = static_cast<int>(std::floor((phi.support_lo[a] - g.lo[a]) / g.dx)) - inner_reach - 1;
        const int shi = static_cast<int>(std::ceil((phi.support_hi[a] - g.lo[a]) / g.dx)) + inner_reach + 1;
        lo_idx[a] = std::min(lo_idx[a], slo);
        hi_idx[a] = std::max(hi_idx[a], shi);
      }
      std::vector<LatticePoint> lattice;
      for (int j = lo_idx[1]; j < hi_idx[1]; ++j) {
        for (int i = lo_idx[0]; i < hi_idx[0]; ++i) {
          const Point x = g.center(i, j);
          const double ps = phi.psi(x);
          const double lp = apply_stencil_at(phi.psi, x, split.inner, 0.0);
          if (ps == 0.0 && lp == 0.0) continue;
          const long gi = g.contains(i, j) ? static_cast<long>(g.flat(i, j)) : -1L;
          const bool in = gi >= 0 && traj.interior[static_cast<std::size_t>(gi)];
          lattice.push_back({x, gi, in, ps, lp});
        }
      }
      // b(u) on the lattice: stored values on the grid, the extension outside.
      std::vector<std::vector<double>> bl(N, std::vector<double>(lattice.size()));
      std::vector<std::vector<double>> bext(N, std::vector<double>(lattice.size()));
      for (std::size_t n = 0; n < N; ++n)
        for (std::size_t p = 0; p < lattice.size(); ++p) {
          const auto& lp = lattice[p];
          const double e = lp.grid_index >= 0 && !lp.inside_domain ? traj.u[n][static_cast<std::size_t>(lp.grid_index)]
                                                                   : spec.extension(traj.times[n], lp.x);
          bext[n][p] = b(e);
          bl[n][p] = lp.grid_index >= 0 ? bu[n][static_cast<std::size_t>(lp.grid_index)] : bext[n][p];
        }
      std::vector<double> psi_i(interior.size());
      std::vector<Point> grad_i(interior.size());
      for (std::size_t q = 0; q < interior.size(); ++q) {
        const Point x = g.center(interior[q]);
        psi_i[q] = phi.psi(x);
        grad_i[q] = phi.grad_psi(x);
      }
      std::vector<double> psi_nodes(nodes.size());
      for (std::size_t q = 0; q < nodes.size(); ++q) psi_nodes[q] = phi.psi(nodes[q].x);

      for (double k : family.levels) {
        const double bk = b(k);
        std::vector<double> fk(static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) fk[static_cast<std::size_t>(a)] = spec.flux.component(a, k);
        for (EntropySign s : {EntropySign::Plus, EntropySign::Minus}) {
          EntropyTerm term;
          term.phi = phi.label;
          term.k = k;
          term.sign = s;
          term.r = r;

          double worst_adm = 0.0;
          for (std::size_t n = 0; n < N && worst_adm <= kAdmissibleTol; ++n) {
            const double th = phi.theta(traj.times[n]);
            for (std::size_t p = 0; p < lattice.size(); ++p)
              if (!lattice[p].inside_domain)
                worst_adm = std::max(worst_adm, eta(s, bext[n][p] - bk) * th * lattice[p].psi);
          }
          term.admissible = worst_adm <= kAdmissibleTol;
          if (!term.admissible) {
            ++rep.skipped;
            rep.terms.push_back(term);
            continue;
          }

          double tt = 0.0, ft = 0.0, ot = 0.0, it = 0.0, bt = 0.0;
          for (std::size_t n = 0; n < N; ++n) {
            const double t = traj.times[n];
            const double th = phi.theta(t), thd = phi.theta_dt(t + 0.5 * dt);
            const Field& un = traj.u[n];
            const Field& un1 = traj.u[n + 1];
            for (std::size_t q = 0; q < interior.size(); ++q) {
              const std::size_t c = interior[q];
              tt += eta(s, un1[c] - k) * thd * psi_i[q];
              const double sg = sgn(s, un[c] - k);
              if (sg != 0.0) {
                double fd = 0.0;
                for (int a = 0; a < d; ++a) fd += (spec.flux.component(a, un[c]) - fk[static_cast<std::size_t>(a)]) * grad_i[q][a];
                ft += sg * fd * th;
                ot += outer_l[n][c] * sg * th * psi_i[q];
              }
            }
            for (std::size_t p = 0; p < lattice.size(); ++p) it += eta(s, bl[n][p] - bk) * th * lattice[p].inner_psi;
            for (std::size_t q = 0; q < nodes.size(); ++q) bt += eta(s, ext_nodes[n][q] - k) * th * psi_nodes[q] * nodes[q].weight;
          }
          term.time_term = -tt * dt * vol;
          term.flux_term = -ft * dt * vol;
          term.outer_term = -ot * dt * vol;
          term.inner_term = -it * dt * vol;
          double init = 0.0;
          const double th0 = phi.theta(0.0);
          for (std::size_t q = 0; q < interior.size(); ++q) init += eta(s, traj.u[0][interior[q]] - k) * th0 * psi_i[q];
          term.initial_term = init * vol;
          term.boundary_term = lip_f * bt * dt;
          term.residual = term.time_term + term.flux_term + term.outer_term + term.inner_term - term.initial_term -
                          term.boundary_term;
          ++rep.admissible;
          rep.worst_residual = std::max(rep.worst_residual, term.residual);
          rep.terms.push_back(term);
        }
      }
    }
  }
  if (rep.admissible == 0) rep.worst_residual = 0.0;
  return rep;
}

EntropySweep entropy_refinement(const ProblemSpec& spec, const LevyMeasure& mu, const SchemeConfig& cfg,
                                double dx_coarse) {
  EntropySweep sw;
  const std::vector<double> radii = {dx_coarse, 4.0 * dx_coarse, 16.0 * dx_coarse};
  Trajectory trajs[2];
  StencilWeights stencils[2];
  for (int i = 0; i < 2; ++i) {
    SchemeConfig c = cfg;
    c.dx = i == 0 ? dx_coarse : 0.5 * dx_coarse;
    c.r = c.dx;
    c.Z = std::max(cfg.Z, 16.0 * dx_coarse);
    stencils[i] = build_scheme_stencil(mu, c);
    trajs[i] = Scheme(spec, stencils[i], c).solve();
  }
  const TestFunctionFamily fam = default_test_family(spec, trajs[0].range);
  sw.coarse = entropy_residual(trajs[0], spec, stencils[0], fam, radii);
  sw.fine = entropy_residual(trajs[1], spec, stencils[1], fam, radii);
  sw.h_coarse = trajs[0].grid.dx + trajs[0].dt;
  sw.h_fine = trajs[1].grid.dx + trajs[1].dt;

  double diff = 0.0;
  for (std::size_t i = 0; i < sw.coarse.terms.size(); ++i) {
    const auto& a = sw.coarse.terms[i];
    const auto& f = sw.fine.terms[i];
    if (a.admissible && f.admissible) diff = std::max(diff, std::abs(a.residual - f.residual));
  }
  sw.constant = diff / (sw.h_coarse - sw.h_fine);
  sw.eps_coarse = sw.constant * sw.h_coarse;
  sw.eps_fine = sw.constant * sw.h_fine;
  sw.worst_margin = INFINITY;
  for (const auto& t : sw.coarse.terms)
    if (t.admissible) sw.worst_margin = std::min(sw.worst_margin, sw.eps_coarse - t.residual);
  for (const auto& t : sw.fine.terms)
    if (t.admissible) sw.worst_margin = std::min(sw.worst_margin, sw.eps_fine - t.residual);
  sw.pass = sw.worst_margin >= 0.0;
  return sw;
}

}  // namespace nldp
