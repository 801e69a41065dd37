#include "nldp/scheme.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "nldp/error.hpp"

namespace nldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int halo_for(const StencilWeights& s, double Z) {
  return std::max({halo_cells_for(Z, s.dx), s.reach(), 1});
}

}  // namespace

Field gamma_field(const Trajectory& traj, const ProblemSpec& spec, std::size_t n) {
  require(n < traj.u.size(), Errc::InvalidArgument, "trajectory index out of range");
  const Field& u = traj.u[n];
  const double t = traj.times[n];
  Field g(u.grid, 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!traj.interior[k]) continue;
    g[k] = spec.diffusion(u[k]) - spec.diffusion(spec.extension(t, u.grid.center(k)));
  }
  return g;
}

double cfl_max_dt(int dim, double dx, double lip_f, double lip_b, const StencilWeights& s) {
  require(dx > 0.0 && std::isfinite(dx), Errc::DegenerateGrid, "dx must be positive");
  const double rate = 2.0 * dim * lip_f / dx + lip_b * (s.weight_sum + s.tail);
  return rate > 0.0 ? 1.0 / rate : kInf;
}

double cfl_max_dt(const Discretization& disc, const StencilWeights& s) {
  return cfl_max_dt(disc.grid.dim, disc.grid.dx, disc.lip_f, disc.lip_b, s);
}

StencilWeights build_scheme_stencil(const LevyMeasure& mu, const SchemeConfig& cfg) {
  const double r = cfg.r > 0.0 ? cfg.r : cfg.dx;
  const StencilWeights s = build_stencil(mu, cfg.dx, r, std::max(cfg.Z, r));
  return cfg.tail == TailPolicy::Drop ? without_tail(s) : s;
}

double drop_tail_error_bound(const LevyMeasure& mu, const SchemeConfig& cfg, const DiffusionFn& b, const DataRange& range) {
  const double r = cfg.r > 0.0 ? cfg.r : cfg.dx;
  const double tail = shell_mass(mu, std::max(cfg.Z, r), INFINITY);
  // b is nondecreasing, so its sup modulus on the range sits at an endpoint.
  return 2.0 * std::max(std::abs(b(range.lo)), std::abs(b(range.hi))) * tail;
}

Scheme::Scheme(const ProblemSpec& spec, const StencilWeights& stencil, const SchemeConfig& cfg)
    : spec_(spec),
      stencil_(stencil),
      cfg_(cfg),
      disc_(discretize(spec, cfg.dx, halo_for(stencil, stencil.Z), stencil.reach())),
      kernel_(stencil, disc_.grid) {
  require(stencil.dim == spec.dim(), Errc::ShapeMismatch, "stencil and problem dimensions differ");
  require(std::abs(stencil.dx - cfg.dx) <= 1e-14 * cfg.dx, Errc::ShapeMismatch, "stencil spacing differs from dx");
  require(cfg.cadence >= 1, Errc::InvalidArgument, "cadence must be >= 1");
  T_ = cfg.T > 0.0 ? cfg.T : spec.T;
  require(T_ > 0.0 && T_ <= spec.T * (1.0 + 1e-12), Errc::OutOfTimeRange, "horizon exceeds the problem's T");
  dt_max_ = cfl_max_dt(disc_, stencil_);
  double request = cfg.auto_cfl ? dt_max_ : cfg.dt;
  if (!std::isfinite(request)) request = T_;
  require(request > 0.0, Errc::InvalidArgument, "time step must be positive");
  if (!cfg.auto_cfl && request > dt_max_ * (1.0 + 1e-12) && !cfg.allow_cfl_violation) {
    std::ostringstream os;
    os << "dt=" << request << " exceeds the monotone bound " << dt_max_;
    fail(Errc::CflViolation, os.str());
  }
  steps_ = std::max(1, static_cast<int>(std::ceil(T_ / request * (1.0 - 1e-12))));
  dt_ = T_ / steps_;
}

Field Scheme::nonlocal_term(const Field& u) const {
  const Grid& g = disc_.grid;
  std::vector<double> bv(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) bv[k] = spec_.diffusion(u[k]);
  double far = 0.0;
  for (std::size_t k : disc_.exterior_cells) far += bv[k];
  if (!disc_.exterior_cells.empty()) far /= static_cast<double>(disc_.exterior_cells.size());
  Field out(g, 0.0);
  for (std::size_t k : disc_.interior_cells) out[k] = kernel_.apply(bv.data(), k, far);
  return out;
}

Field Scheme::advance(const Field& u, double t, double dt, const Field* source, StepBalance* balance) const {
  const Grid& g = disc_.grid;
  require(u.grid == g, Errc::ShapeMismatch, "field does not live on the scheme grid");
  if (dt > dt_max_ * (1.0 + 1e-12) && !cfg_.allow_cfl_violation) {
    std::ostringstream os;
    os << "dt=" << dt << " exceeds the monotone bound " << dt_max_;
    fail(Errc::CflViolation, os.str());
  }
  const int d = g.dim;
  const double lambda = dt / g.dx;
  const std::size_t N = g.size();
  const std::ptrdiff_t stride[2] = {1, g.n[0]};

  // Monotone flux splitting per axis, evaluated once per cell.
  std::vector<double> fp[2], fm[2];
  const bool eo = cfg_.flux == NumericalFlux::EngquistOsher;
  for (int a = 0; a < d; ++a) {
    const double dir = spec_.flux.direction[a];
    fp[a].resize(N);
    fm[a].resize(N);
    for (std::size_t k = 0; k < N; ++k) {
      if (eo) {
        const double inc = spec_.flux.g.increasing_part(u[k]), dec = spec_.flux.g.decreasing_part(u[k]);
        fp[a][k] = dir >= 0.0 ? dir * inc : dir * dec;
        fm[a][k] = dir >= 0.0 ? dir * dec : dir * inc;
      } else {
        fp[a][k] = spec_.flux.component(a, u[k]);
      }
    }
  }
  const double lf = disc_.lip_f;
  auto face_flux = [&](int a, std::size_t left, std::size_t right) {
    if (eo) return fp[a][left] + fm[a][right];
    return 0.5 * (fp[a][left] + fp[a][right]) - 0.5 * lf * (u[right] - u[left]);
  };

  std::vector<double> bv;
  double far = 0.0;
  if (!source) {
    bv.resize(N);
    for (std::size_t k = 0; k < N; ++k) bv[k] = spec_.diffusion(u[k]);
    for (std::size_t k : disc_.exterior_cells) far += bv[k];
    if (!disc_.exterior_cells.empty()) far /= static_cast<double>(disc_.exterior_cells.size());
  }

  Field out(g, 0.0);
  for (std::size_t k : disc_.interior_cells) {
    double div = 0.0;
    for (int a = 0; a < d; ++a) {
      const std::size_t kp = k + stride[a], km = k - stride[a];
      div += face_flux(a, k, kp) - face_flux(a, km, k);
    }
    const double nonlocal = source ? (*source)[k] : kernel_.apply(bv.data(), k, far);
    const double v = u[k] - lambda * div + dt * nonlocal;
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "non-finite value at cell " << k << " and t=" << t;
      fail(Errc::NonfiniteValue, os.str());
    }
    out[k] = v;
  }
  const double t_next = t + dt;
  for (std::size_t k : disc_.exterior_cells) out[k] = spec_.extension(std::min(t_next, spec_.T), g.center(k));

  if (balance) {
    const double vol = g.cell_volume();
    StepBalance b;
    for (std::size_t k : disc_.interior_cells) b.mass_change += (out[k] - u[k]) * vol;
    // Faces between an interior and an exterior cell, oriented outward.
    for (std::size_t k : disc_.interior_cells) {
      for (int a = 0; a < d; ++a) {
        const std::size_t kp = k + stride[a], km = k - stride[a];
        if (!disc_.interior[kp]) b.boundary_flux += face_flux(a, k, kp);
        if (!disc_.interior[km]) b.boundary_flux -= face_flux(a, km, k);
      }
    }
    b.boundary_flux *= dt * vol / g.dx;
    if (!source) {
      for (std::size_t k : disc_.interior_cells) {
        const auto c = g.ij(k);
        for (const auto& e : stencil_.entries) {
          const std::size_t q = g.flat(c[0] + e.offset[0], c[1] + e.offset[1]);
          if (!disc_.interior[q]) b.exchange += e.weight * (bv[q] - bv[k]);
        }
        b.tail += stencil_.tail * (far - bv[k]);
      }
    } else {
      for (std::size_t k : disc_.interior_cells) b.exchange += (*source)[k];
    }
    b.exchange *= dt * vol;
    b.tail *= dt * vol;
    *balance = b;
  }
  return out;
}

Field Scheme::step(const Field& u, double t, double dt, StepBalance* balance) const {
  return advance(u, t, dt, nullptr, balance);
}

Field Scheme::step_with_source(const Field& u, double t, double dt, const Field& source) const {
  require(source.grid == disc_.grid, Errc::ShapeMismatch, "source does not live on the scheme grid");
  return advance(u, t, dt, &source, nullptr);
}

Trajectory Scheme::make_trajectory() const {
  Trajectory tr;
  tr.grid = disc_.grid;
  tr.interior = disc_.interior;
  tr.dt = dt_;
  tr.dt_max = dt_max_;
  tr.cfl_ratio = std::isfinite(dt_max_) ? dt_ / dt_max_ : 0.0;
  tr.range = disc_.range;
  tr.cadence = cfg_.cadence;
  tr.times.reserve(static_cast<std::size_t>(steps_) + 1);
  tr.u.reserve(static_cast<std::size_t>(steps_) + 1);
  return tr;
}

Trajectory Scheme::solve() const {
  const auto start = std::chrono::steady_clock::now();
  Trajectory tr = make_trajectory();
  Field u = initial();
  tr.times.push_back(0.0);
  tr.u.push_back(u);
  tr.balance.reserve(static_cast<std::size_t>(steps_));
  for (int n = 0; n < steps_; ++n) {
    const double t = n * dt_;
    StepBalance bal;
    u = step(u, t, dt_, &bal);
    for (std::size_t k : disc_.exterior_cells) tr.range.include(u[k]);
    tr.balance.push_back(bal);
    tr.times.push_back((n + 1) * dt_);
    tr.u.push_back(u);
  }
  tr.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return tr;
}

Field step(const Field& u, const ProblemSpec& spec, const StencilWeights& stencil, const SchemeConfig& cfg, double t) {
  Scheme s(spec, stencil, cfg);
  return s.step(u, t, s.dt());
}

Trajectory solve(const ProblemSpec& spec, const StencilWeights& stencil, const SchemeConfig& cfg) {
  return Scheme(spec, stencil, cfg).solve();
}

namespace {

void require_comparable(const Trajectory& a, const Trajectory& b) {
  require(a.grid == b.grid && a.interior == b.interior, Errc::ConfigMismatch, "trajectories live on different grids");
  require(a.times.size() == b.times.size() && a.dt == b.dt, Errc::ConfigMismatch,
          "trajectories use different time steps");
}

}  // namespace

double l1_distance_q(const Trajectory& a, const Trajectory& b) {
  require_comparable(a, b);
  const double vol = a.grid.cell_volume();
  double sum = 0.0;
  for (std::size_t n = 0; n + 1 < a.u.size(); ++n)
    for (std::size_t k = 0; k < a.grid.size(); ++k)
      if (a.interior[k]) sum += std::abs(a.u[n][k] - b.u[n][k]);
  return sum * vol * a.dt;
}

double l2_b_distance_q(const Trajectory& a, const Trajectory& b, const DiffusionFn& diffusion) {
  require_comparable(a, b);
  const double vol = a.grid.cell_volume();
  double sum = 0.0;
  for (std::size_t n = 0; n + 1 < a.u.size(); ++n)
    for (std::size_t k = 0; k < a.grid.size(); ++k)
      if (a.interior[k]) {
        const double d = diffusion(a.u[n][k]) - diffusion(b.u[n][k]);
        sum += d * d;
      }
  return std::sqrt(sum * vol * a.dt);
}

double sup_l1_distance(const Trajectory& a, const Trajectory& b) {
  require_comparable(a, b);
  const double vol = a.grid.cell_volume();
  double best = 0.0;
  for (std::size_t n = 0; n < a.u.size(); ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.grid.size(); ++k)
      if (a.interior[k]) s += std::abs(a.u[n][k] - b.u[n][k]);
    best = std::max(best, s * vol);
  }
  return best;
}

PicardResult picard_solve(const ProblemSpec& spec, const LevyMeasure& mu_finite, const SchemeConfig& cfg, int k_max,
                          double tol) {
  require(k_max >= 1 && tol >= 0.0, Errc::InvalidArgument, "picard needs k_max >= 1 and tol >= 0");
  const MomentReport rep = validate_measure(mu_finite);
  require(rep.finite_mass(), Errc::InvalidArgument, "picard iteration needs a measure of finite total mass");

  const StencilWeights stencil = build_scheme_stencil(mu_finite, cfg);
  const Scheme scheme(spec, stencil, cfg);
  const auto& disc = scheme.disc();
  const int steps = scheme.steps();
  const double dt = scheme.dt();

  PicardResult res;
  res.stencil_mass = stencil.weight_sum + stencil.tail;

  // u_0: zero inside, extension on the halo.
  Trajectory prev = scheme.solve();
  for (std::size_t n = 0; n < prev.u.size(); ++n)
    for (std::size_t k : disc.interior_cells) prev.u[n][k] = 0.0;
  prev.balance.clear();

  const auto start = std::chrono::steady_clock::now();
  for (int it = 0; it < k_max; ++it) {
    Trajectory next = prev;
    Field u = scheme.initial();
    next.u[0] = u;
    for (int n = 0; n < steps; ++n) {
      const Field src = scheme.nonlocal_term(prev.u[static_cast<std::size_t>(n)]);
      u = scheme.step_with_source(u, n * dt, dt, src);
      next.u[static_cast<std::size_t>(n) + 1] = u;
    }
    const double gap = sup_l1_distance(next, prev);
    res.gaps.push_back(gap);
    prev = std::move(next);
    res.iterations = it + 1;
    if (gap <= tol) {
      res.converged = true;
      break;
    }
  }
  prev.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.trajectory = std::move(prev);
  if (!res.converged) {
    std::ostringstream os;
    os << "picard gap " << res.gaps.back() << " above tol " << tol << " after " << k_max << " iterations";
    fail(Errc::NoConvergence, os.str());
  }
  return res;
}

namespace {

// Runs every stencil with one common step: the smallest monotone bound of the family.
std::vector<Trajectory> run_family(const ProblemSpec& spec, const std::vector<StencilWeights>& stencils,
                                   const SchemeConfig& cfg, double& dt_out) {
  double dt = kInf;
  const double T = cfg.T > 0.0 ? cfg.T : spec.T;
  for (const auto& s : stencils) {
    const Scheme probe(spec, s, cfg);
    dt = std::min(dt, probe.dt());
  }
  if (!std::isfinite(dt)) dt = T;
  SchemeConfig c = cfg;
  c.auto_cfl = false;
  c.dt = dt;
  std::vector<Trajectory> out;
  out.reserve(stencils.size());
  for (const auto& s : stencils) out.push_back(Scheme(spec, s, c).solve());
  dt_out = out.front().dt;
  return out;
}

}  // namespace

ChainResult vanishing_viscosity_run(const ProblemSpec& spec, double alpha, const std::vector<int>& n_list,
                                    const SchemeConfig& cfg) {
  require(alpha > 0.0 && alpha < 2.0, Errc::InvalidArgument, "alpha must lie in (0, 2)");
  require(!n_list.empty(), Errc::InvalidArgument, "n_list is empty");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    require(n_list[i] > n_list[i - 1], Errc::InvalidArgument, "n_list must increase");

  ProblemSpec hyperbolic = spec;
  hyperbolic.diffusion = DiffusionFn::zero();

  std::vector<StencilWeights> stencils;
  for (int n : n_list) {
    require(n >= 1, Errc::InvalidArgument, "viscosity index must be >= 1");
    const auto mu = LevyMeasure::scaled(1.0 / n, LevyMeasure::fractional(alpha, spec.dim()));
    stencils.push_back(build_scheme_stencil(mu, cfg));
  }
  // The b = 0 run shares the viscous stencils' step so the distances compare like with like.
  double dt = kInf;
  for (const auto& s : stencils) dt = std::min(dt, Scheme(spec, s, cfg).dt());
  dt = std::min(dt, Scheme(hyperbolic, stencils.front(), cfg).dt());
  SchemeConfig c = cfg;
  c.auto_cfl = false;
  c.dt = dt;

  ChainResult res;
  res.reference.label = "b=0";
  res.reference.stencil = stencils.front();
  res.reference.traj = Scheme(hyperbolic, stencils.front(), c).solve();
  res.dt = res.reference.traj.dt;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    ChainRun run;
    run.label = "n=" + std::to_string(n_list[i]);
    run.stencil = stencils[i];
    run.traj = Scheme(spec, stencils[i], c).solve();
    run.l1_distance = l1_distance_q(run.traj, res.reference.traj);
    run.l2_b_distance = l2_b_distance_q(run.traj, res.reference.traj, spec.diffusion);
    res.runs.push_back(std::move(run));
  }
  return res;
}

ChainResult stability_run(const ProblemSpec& spec, const std::vector<LevyMeasure>& mus, const LevyMeasure& mu_limit,
                          const SchemeConfig& cfg, const std::vector<std::string>& labels) {
  require(!mus.empty(), Errc::InvalidArgument, "measure list is empty");
  require(labels.empty() || labels.size() == mus.size(), Errc::InvalidArgument, "one label per measure");
  std::vector<StencilWeights> stencils;
  for (const auto& mu : mus) stencils.push_back(build_scheme_stencil(mu, cfg));
  stencils.push_back(build_scheme_stencil(mu_limit, cfg));

  ChainResult res;
  std::vector<Trajectory> trajs = run_family(spec, stencils, cfg, res.dt);
  res.reference.label = "limit";
  res.reference.stencil = stencils.back();
  res.reference.traj = std::move(trajs.back());
  for (std::size_t i = 0; i < mus.size(); ++i) {
    ChainRun run;
    run.label = labels.empty() ? "mu_" + std::to_string(i) : labels[i];
    run.stencil = stencils[i];
    run.traj = std::move(trajs[i]);
    run.l1_distance = l1_distance_q(run.traj, res.reference.traj);
    run.l2_b_distance = l2_b_distance_q(run.traj, res.reference.traj, spec.diffusion);
    run.measure_distance = weighted_tv_distance(mus[i], mu_limit);
    res.runs.push_back(std::move(run));
  }
  return res;
}

}  // namespace nldp
