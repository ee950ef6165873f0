#include "taskmech/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "taskmech/agent.hpp"

namespace taskmech {

namespace {

// Per-node quantities that never change across iterations.
struct NodeCache {
    std::vector<double> theta;
    std::vector<double> f;
    std::vector<double> inv_hazard;
    double dtheta;
};

NodeCache build_cache(const TypeGrid& grid, const TypeDistribution& dist) {
    NodeCache c;
    c.dtheta = grid.spacing();
    const auto n = static_cast<std::size_t>(grid.size());
    c.theta.resize(n);
    c.f.resize(n);
    c.inv_hazard.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.theta[i] = grid.node(static_cast<int>(i));
        c.f[i] = dist.density(c.theta[i]);
        c.inv_hazard[i] = dist.inverse_hazard(c.theta[i]);
    }
    return c;
}

// chi and all pi-derived values follow from the agent first-order condition
// pi'(chi) = (p - alpha)/theta with two pow calls per node.
struct PointEval {
    double chi, pi_val, pi_marg, g_val, g_marg, dchi_dalpha;
};

PointEval eval_point(const Models& m, double theta, double alpha) {
    const double p = m.market.p;
    const double z1 = m.pi.z1(), q1 = m.g.q1();
    PointEval e;
    e.pi_marg = (p - alpha) / theta;
    e.chi = m.pi.inverse_marginal(e.pi_marg);
    e.pi_val = e.pi_marg * e.chi / (1.0 - z1);
    const double curvature = -z1 * e.pi_marg / e.chi;  // pi''(chi)
    e.dchi_dalpha = -1.0 / (theta * curvature);
    e.g_marg = std::pow(e.chi, -q1);
    e.g_val = e.g_marg * e.chi / (1.0 - q1);
    return e;
}

double node_vsp(const Models& m, const NodeCache& c, std::size_t i, double alpha) {
    const PointEval e = eval_point(m, c.theta[i], alpha);
    return (e.g_val - e.pi_val * c.inv_hazard[i] + c.theta[i] * e.pi_val -
            m.market.p * e.chi) *
           c.f[i];
}

double node_vsp_slope(const Models& m, const NodeCache& c, std::size_t i, double alpha) {
    const PointEval e = eval_point(m, c.theta[i], alpha);
    return c.f[i] * (e.g_marg - e.pi_marg * c.inv_hazard[i] - alpha) * e.dchi_dalpha;
}

double objective_of(const Models& m, const NodeCache& c,
                    const std::vector<double>& alpha) {
    std::vector<double> y(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) y[i] = node_vsp(m, c, i, alpha[i]);
    return detail::trapezoid(y, c.dtheta);
}

std::vector<double> forward_state(std::span<const double> u, double alpha0, double dtheta,
                                  double p, double margin) {
    std::vector<double> alpha(u.size());
    double sum = alpha0, comp = 0.0;
    alpha[0] = alpha0;
    const double ceiling = p - margin;
    if (alpha0 >= ceiling) throw AlphaExceedsCost("alpha0 already at the cost ceiling");
    for (std::size_t i = 1; i < u.size(); ++i) {
        double term = 0.5 * dtheta * (u[i - 1] + u[i]) - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
        alpha[i] = sum;
        if (alpha[i] >= ceiling) {
            std::ostringstream msg;
            msg << "alpha reaches " << alpha[i] << " >= p - margin at node " << i;
            throw AlphaExceedsCost(msg.str());
        }
    }
    return alpha;
}

std::vector<double> backward_costate(const Models& m, const NodeCache& c,
                                     const std::vector<double>& alpha) {
    const std::size_t n = alpha.size();
    std::vector<double> slope(n);
    for (std::size_t i = 0; i < n; ++i) slope[i] = node_vsp_slope(m, c, i, alpha[i]);
    std::vector<double> lam(n);
    lam[n - 1] = 0.0;
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = n - 1; i-- > 0;) {
        double term = 0.5 * c.dtheta * (slope[i] + slope[i + 1]) - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
        lam[i] = -sum;
    }
    return lam;
}

double gamma_at(const SolverConfig& cfg, int iter0) {
    if (cfg.gamma_schedule == GammaSchedule::Diminishing)
        return cfg.gamma0 / (1.0 + iter0 / 100.0);
    return cfg.gamma0;
}

}  // namespace

std::vector<double> integrate_state(std::span<const double> u, double alpha0,
                                    const TypeGrid& grid, double p, double margin) {
    if (static_cast<int>(u.size()) != grid.size())
        throw std::invalid_argument("control length does not match the grid");
    if (margin < 0.0) margin = 1e-6 * p;
    return forward_state(u, alpha0, grid.spacing(), p, margin);
}

double virtual_surplus_slope(double theta_hat, double alpha, const Models& models,
                             const TypeDistribution& dist) {
    const double p = models.market.p;
    const double chi = best_participation(models.pi, p, theta_hat, alpha);
    const double dchi_dalpha = -1.0 / (theta_hat * models.pi.curvature(chi));
    const double bracket = models.g.marginal(chi) -
                           models.pi.marginal(chi) * dist.inverse_hazard(theta_hat) -
                           alpha;
    return dist.density(theta_hat) * bracket * dchi_dalpha;
}

std::vector<double> integrate_costate(std::span<const double> alpha, const TypeGrid& grid,
                                      const Models& models, const TypeDistribution& dist) {
    if (static_cast<int>(alpha.size()) != grid.size())
        throw std::invalid_argument("alpha length does not match the grid");
    for (double a : alpha)
        if (a >= models.market.p)
            throw UnboundedResponse("alpha reaches marginal cost inside costate sweep");
    const NodeCache cache = build_cache(grid, dist);
    return backward_costate(models, cache, std::vector<double>(alpha.begin(), alpha.end()));
}

std::vector<double> gradient_projection_step(std::span<const double> u,
                                             std::span<const double> lam, double gamma,
                                             double u_bar) {
    if (u.size() != lam.size())
        throw std::invalid_argument("control and costate lengths differ");
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = std::clamp(u[i] - gamma * lam[i], 0.0, u_bar);
    return out;
}

SolveResult solve(const SolverConfig& config, const Models& models,
                  const TypeDistribution& dist) {
    const double p = models.market.p;
    if (config.alpha0 < 0.0 || config.alpha0 >= p)
        throw std::invalid_argument("alpha0 must lie in [0, p)");
    if (!(config.gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be positive");
    if (!(config.tol_u > 0.0)) throw std::invalid_argument("tol_u must be positive");
    if (config.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");

    const TypeGrid grid(dist.lo(), dist.hi(), config.n_grid);
    {
        const auto violations = validate_assumptions(dist, models.pi, models.g, grid);
        if (!violations.empty()) {
            std::ostringstream msg;
            msg << "model assumptions violated (" << violations.size()
                << " findings); first: " << violations.front().detail << " at "
                << violations.front().location;
            throw std::invalid_argument(msg.str());
        }
    }

    const double u_bar =
        config.u_bar ? *config.u_bar
                     : 10.0 * (p - config.alpha0) / (dist.hi() - dist.lo());
    if (!(u_bar > 0.0)) throw std::invalid_argument("u_bar must be positive");

    const auto n = static_cast<std::size_t>(grid.size());
    std::vector<double> u;
    if (config.u_init.empty()) {
        u.assign(n, config.u_init_scalar);
    } else {
        if (config.u_init.size() != n)
            throw std::invalid_argument("per-node u_init length does not match n_grid");
        u = config.u_init;
    }
    for (double& v : u) v = std::clamp(v, 0.0, u_bar);

    const NodeCache cache = build_cache(grid, dist);
    const double margin = 1e-6 * p;
    const std::set<int> snapshot_at(config.snapshot_iters.begin(),
                                    config.snapshot_iters.end());

    SolveResult result;
    SolveTrace& trace = result.trace;
    bool converged = false;

    double best_objective = -std::numeric_limits<double>::infinity();
    std::vector<double> best_u = u;

    int iter = 0;
    std::vector<double> alpha;
    while (iter < config.max_iters) {
        ++iter;
        alpha = forward_state(u, config.alpha0, cache.dtheta, p, margin);
        const double obj = objective_of(models, cache, alpha);
        if (obj > best_objective) {
            best_objective = obj;
            best_u = u;
        }
        if (snapshot_at.count(iter)) trace.alpha_snapshots.emplace_back(iter, alpha);

        const std::vector<double> lam = backward_costate(models, cache, alpha);
        const double gamma = gamma_at(config, iter - 1);

        double du = 0.0, lo = u_bar, hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double next = std::clamp(u[i] - gamma * lam[i], 0.0, u_bar);
            du = std::max(du, std::abs(next - u[i]));
            u[i] = next;
            lo = std::min(lo, next);
            hi = std::max(hi, next);
        }
        trace.objective.push_back(obj);
        trace.du_sup.push_back(du);
        trace.u_min.push_back(lo);
        trace.u_max.push_back(hi);

        if (du <= config.tol_u) {
            converged = true;
            break;
        }
    }
    trace.iterations = iter;
    result.converged = converged;

    // Post-budget, fall back to the best iterate seen if the final control
    // does not improve on it.
    std::vector<double> final_u = u;
    std::vector<double> final_alpha = forward_state(final_u, config.alpha0, cache.dtheta, p, margin);
    double final_objective = objective_of(models, cache, final_alpha);
    if (!converged && best_objective > final_objective) {
        final_u = best_u;
        final_alpha = forward_state(final_u, config.alpha0, cache.dtheta, p, margin);
    }

    result.control = std::move(final_u);
    result.schedule.grid = grid;
    result.schedule.alpha = std::move(final_alpha);
    result.schedule.beta = compute_beta(grid, result.schedule.alpha, models.pi, p);
    result.profit = expected_profit(result.schedule, models, dist);
    return result;
}

Alpha0Result optimize_alpha0(const SolverConfig& config, const Models& models,
                             const TypeDistribution& dist, double lo, double hi) {
    const double p = models.market.p;
    if (lo < 0.0 || hi < lo || hi >= p)
        throw std::invalid_argument("alpha0 search interval must lie inside [0, p)");

    constexpr int kMaxEvaluations = 40;
    const double tol = 1e-3 * p;

    Alpha0Result out;
    out.profit = -std::numeric_limits<double>::infinity();

    auto evaluate = [&](double a0) -> double {
        if (static_cast<int>(out.evaluations.size()) >= kMaxEvaluations)
            return -std::numeric_limits<double>::infinity();
        SolverConfig c = config;
        c.alpha0 = a0;
        try {
            SolveResult r = solve(c, models, dist);
            out.evaluations.push_back({a0, r.profit.direct, r.converged});
            // Ties keep the earlier (smaller) alpha0.
            if (r.profit.direct > out.profit) {
                out.profit = r.profit.direct;
                out.alpha0 = a0;
                out.best = std::move(r);
            }
            return out.evaluations.back().profit;
        } catch (const Error&) {
            out.evaluations.push_back(
                {a0, std::numeric_limits<double>::quiet_NaN(), false});
            return -std::numeric_limits<double>::infinity();
        }
    };

    evaluate(lo);
    if (hi > lo) evaluate(hi);
    if (hi - lo <= tol) {
        if (!std::isfinite(out.profit)) throw Error("every alpha0 candidate failed");
        return out;
    }

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = evaluate(c);
    double fd = evaluate(d);
    while (b - a > tol && static_cast<int>(out.evaluations.size()) < kMaxEvaluations) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = evaluate(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = evaluate(d);
        }
    }
    if (!std::isfinite(out.profit)) throw Error("every alpha0 candidate failed");
    return out;
}

}  // namespace taskmech
