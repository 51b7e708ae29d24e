"""Exact per-route daily charging-cost minimization and its brute-force oracle.

The problem: given an ordered list of charging sites with energy prices and
the battery drain of each segment between them, decide where to charge
(binary per site) and how much (continuous), so that the battery stays
within its bounds at every intermediate point, every charge respects the
worst-case-neighbor minimum and the power cap, the terminal level is met,
and total cost is minimal.

``solve`` is a branch-and-bound over the binary stop decisions whose
continuous subproblems are handled by an exact cheapest-first fill over
cumulative-purchase windows. ``oracle_solve`` independently enumerates all
stop subsets and solves each continuous subproblem as a small linear
program; it exists to verify ``solve`` and is limited to small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import InfeasibleChargingError, MissingTariffError
from .network import Route
from .vehicle import VehicleSpec, segment_discharge

MAX_SITES = 10000
ORACLE_MAX_SEGMENTS = 12

_FEAS_EPS = 1e-9


def _tie_tol(cost: float) -> float:
    return 1e-9 * max(1.0, abs(cost))


def _tiny(cost: float) -> float:
    return 1e-12 * max(1.0, abs(cost))


@dataclass(frozen=True)
class ChargeInstance:
    """One route-day charging problem: site prices, segment drains, vehicle."""

    prices_usd_per_mwh: tuple[float, ...]
    seg_energy_kwh: tuple[float, ...]
    spec: VehicleSpec

    def __post_init__(self):
        if len(self.prices_usd_per_mwh) != len(self.seg_energy_kwh) + 1:
            raise ValueError(
                f"need one more site than segments, got {len(self.prices_usd_per_mwh)} "
                f"sites for {len(self.seg_energy_kwh)} segments")
        if any(p < 0 for p in self.prices_usd_per_mwh):
            raise ValueError("site prices must be >= 0")
        if any(e < 0 for e in self.seg_energy_kwh):
            raise ValueError("segment energies must be >= 0")

    @property
    def n_sites(self) -> int:
        return len(self.prices_usd_per_mwh)


@dataclass(frozen=True)
class ChargePlan:
    """Solver output: stop decisions, grid-side charge energies and cost.

    ``soc_trace`` alternates post-charge and post-segment battery levels:
    [after site 0, after segment 0, after site 1, ..., after site K].
    """

    x: tuple[int, ...]
    e_plus_kwh: tuple[float, ...]
    p_plus_kw: tuple[float, ...]
    total_cost_usd: float
    soc_trace: tuple[float, ...]

    @property
    def charged_kwh(self) -> float:
        return sum(self.e_plus_kwh)


def _formulate(instance: ChargeInstance):
    """Battery-side arrays: per-unit prices, charge floors/caps, cumulative windows.

    With g_k the battery-side energy added at site k and S_k its prefix sum,
    feasibility is A_k <= S_k <= B_k for every k, plus per-site bounds.
    """
    spec = instance.spec
    n = instance.n_sites
    drains = [e / spec.eta_discharge for e in instance.seg_energy_kwh]
    cum = np.concatenate([[0.0], np.cumsum(drains)])

    floors = np.full(n, spec.battery_min_kwh)
    if n > 1:
        floors[:-1] += np.maximum(np.concatenate([[0.0], drains[:-1]]), drains)
        floors[-1] += drains[-1]

    cap = min(spec.battery_max_kwh,
              spec.eta_charge * spec.charge_power_max_kw * spec.charge_dwell_h)
    caps = np.full(n, cap)

    lower = np.empty(n)
    lower[: n - 1] = spec.battery_min_kwh - spec.soc_initial_kwh + cum[1:n]
    lower[n - 1] = spec.soc_terminal_kwh - spec.soc_initial_kwh + cum[n - 1]
    upper = spec.battery_max_kwh - spec.soc_initial_kwh + cum[:n]

    price_g = np.array(instance.prices_usd_per_mwh) / spec.eta_charge / 1000.0
    return price_g, floors, caps, lower, upper, drains


def _first_infeasible_prefix(lower, upper, caps) -> int | None:
    """Index of the first cumulative requirement unreachable even when
    charging the maximum at every site (floors ignored); None if none."""
    reach = 0.0
    for k in range(len(lower)):
        reach = min(upper[k], reach + caps[k])
        if reach < lower[k] - _FEAS_EPS:
            return k
    return None


def _chain_fill(price_g, lo, hi, lower, upper):
    """Exact min-cost charge amounts for fixed per-site bounds.

    Buys the mandatory lower bounds first, then walks the cumulative
    requirements in order, covering each deficit from the cheapest
    already-passed site with remaining headroom (site cap and every
    downstream cumulative ceiling). Returns (g, None) on success or
    (None, k) naming the first unmeetable requirement.
    """
    n = len(price_g)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    bad = np.nonzero(lo > hi + _FEAS_EPS)[0]
    if bad.size:
        return None, int(bad[0])
    g = lo.copy()
    prefix = np.cumsum(g)
    over = np.nonzero(prefix > upper + _FEAS_EPS)[0]
    if over.size:
        return None, int(over[0])

    order = np.lexsort((np.arange(n), price_g))
    requirements = np.nonzero(lower - prefix > _FEAS_EPS)[0]
    for k in requirements:
        deficit = lower[k] - prefix[k]
        if deficit <= _FEAS_EPS:
            continue
        for j in order:
            if j > k:
                continue
            room = hi[j] - g[j]
            if room <= 1e-15:
                continue
            headroom = np.min(upper[j:] - prefix[j:])
            buy = min(room, headroom, deficit)
            if buy <= 0.0:
                continue
            g[j] += buy
            prefix[j:] += buy
            deficit -= buy
            if deficit <= _FEAS_EPS:
                break
        if deficit > _FEAS_EPS:
            return None, int(k)
    return g, None


_FREE, _OFF, _ON = -1, 0, 1


def _branch_and_bound(price_g, floors, caps, lower, upper, state0,
                      budget: float | None = None, first_hit: bool = False):
    """DFS branch-and-bound over stop decisions.

    Relaxation at a node drops the charge floor for undecided sites; an
    integral relaxation solution is optimal for its subtree. With
    ``first_hit`` the search returns the first plan within ``budget``.
    Returns (cost, x, g) or None.
    """
    n = len(price_g)
    best_cost = math.inf
    best = None
    stack = [tuple(state0)]
    while stack:
        st = stack.pop()
        lo = [floors[j] if st[j] == _ON else 0.0 for j in range(n)]
        hi = [caps[j] if st[j] != _OFF else 0.0 for j in range(n)]
        g, _bad = _chain_fill(price_g, lo, hi, lower, upper)
        if g is None:
            continue
        bound = sum(p * q for p, q in zip(price_g, g))
        if budget is not None and bound > budget:
            continue
        if best is not None and bound >= best_cost - _tiny(best_cost):
            continue
        branch_j = None
        for j in range(n):
            if st[j] == _FREE and _FEAS_EPS < g[j] < floors[j] - _FEAS_EPS:
                branch_j = j
                break
        if branch_j is None:
            x = tuple(1 if (st[j] == _ON or (st[j] == _FREE and g[j] > _FEAS_EPS)) else 0
                      for j in range(n))
            if first_hit:
                return bound, x, g
            if best is None or bound < best_cost - _tiny(best_cost):
                best_cost, best = bound, (bound, x, g)
            continue
        on = list(st)
        on[branch_j] = _ON
        off = list(st)
        off[branch_j] = _OFF
        stack.append(tuple(on))
        stack.append(tuple(off))
    return best


def _build_plan(instance: ChargeInstance, x, g_battery, drains) -> ChargePlan:
    spec = instance.spec
    e_plus = tuple(g / spec.eta_charge if keep else 0.0
                   for g, keep in zip(g_battery, x))
    p_plus = tuple(e / spec.charge_dwell_h for e in e_plus)
    cost = sum(lam * e for lam, e in zip(instance.prices_usd_per_mwh, e_plus)) / 1000.0
    trace = []
    soc = spec.soc_initial_kwh + e_plus[0] * spec.eta_charge
    trace.append(soc)
    for k, drain in enumerate(drains):
        soc -= drain
        trace.append(soc)
        soc += e_plus[k + 1] * spec.eta_charge
        trace.append(soc)
    return ChargePlan(x=tuple(int(v) for v in x), e_plus_kwh=e_plus,
                      p_plus_kw=p_plus, total_cost_usd=cost, soc_trace=tuple(trace))


def solve(instance: ChargeInstance) -> ChargePlan:
    """Cost-minimal charging plan for one route-day, or InfeasibleChargingError.

    Among cost-optimal plans, returns the one with the lexicographically
    smallest stop vector; charge amounts never exceed what feasibility
    requires. Deterministic: no randomness, fixed tie-breaking.
    """
    if instance.n_sites > MAX_SITES:
        raise ValueError(f"instance has {instance.n_sites} sites, max {MAX_SITES}")
    price_g, floors, caps, lower, upper, drains = _formulate(instance)
    n = instance.n_sites

    bad = _first_infeasible_prefix(lower, upper, caps)
    if bad is not None:
        if bad == n - 1:
            raise InfeasibleChargingError(
                f"terminal battery level unreachable even charging the maximum "
                f"at every site (requirement at site {bad})", prefix_index=bad)
        raise InfeasibleChargingError(
            f"battery cannot stay above its minimum entering site {bad + 1} "
            f"even charging the maximum at every prior site", prefix_index=bad + 1)

    state0 = [_OFF if floors[j] > caps[j] + _FEAS_EPS else _FREE for j in range(n)]
    best = _branch_and_bound(price_g, floors, caps, lower, upper, state0)
    if best is None:
        raise InfeasibleChargingError(
            "no combination of charging stops satisfies the minimum-charge "
            "floors within battery bounds", prefix_index=None)
    best_cost = best[0]
    budget = best_cost + _tie_tol(best_cost)

    x_final: list[int] = []
    for k in range(n):
        if state0[k] == _OFF:
            x_final.append(0)
            continue
        trial = [*(x_final[j] for j in range(k)), _OFF, *state0[k + 1:]]
        hit = _branch_and_bound(price_g, floors, caps, lower, upper, trial,
                                budget=budget, first_hit=True)
        x_final.append(0 if hit is not None else 1)

    lo = [floors[j] if x_final[j] else 0.0 for j in range(n)]
    hi = [caps[j] if x_final[j] else 0.0 for j in range(n)]
    g, _ = _chain_fill(price_g, lo, hi, lower, upper)
    if g is None:  # pragma: no cover - refinement preserves feasibility
        raise InfeasibleChargingError("internal: refined stop vector infeasible")
    return _build_plan(instance, x_final, g, drains)


def solve_day(route: Route, spec: VehicleSpec, load_tons: float) -> ChargePlan:
    """Build the charging instance for one route at one load and solve it."""
    prices = []
    for site in route.sites:
        if site.price_usd_per_mwh is None:
            raise MissingTariffError(
                f"route {route.route_id}: site {site.index} has no energy price")
        prices.append(site.price_usd_per_mwh)
    energies = tuple(segment_discharge(spec, seg, load_tons).energy_kwh
                     for seg in route.segments)
    instance = ChargeInstance(prices_usd_per_mwh=tuple(prices),
                              seg_energy_kwh=energies, spec=spec)
    try:
        return solve(instance)
    except InfeasibleChargingError as exc:
        raise InfeasibleChargingError(str(exc), prefix_index=exc.prefix_index,
                                      route_id=route.route_id) from exc


def oracle_solve(instance: ChargeInstance) -> ChargePlan:
    """Global optimum by enumerating every subset of charging stops.

    Each subset's continuous subproblem is solved as a linear program over
    cumulative purchases. Refuses instances with more than
    ORACLE_MAX_SEGMENTS segments.
    """
    spec = instance.spec
    n = instance.n_sites
    if n - 1 > ORACLE_MAX_SEGMENTS:
        raise ValueError(
            f"oracle_solve limited to {ORACLE_MAX_SEGMENTS} segments, got {n - 1}")

    # Independent formulation from first principles: battery-side bookkeeping.
    drains = [e / spec.eta_discharge for e in instance.seg_energy_kwh]
    consumed = np.concatenate([[0.0], np.cumsum(drains)])
    e0, e_min, e_max = spec.soc_initial_kwh, spec.battery_min_kwh, spec.battery_max_kwh
    e_term = spec.soc_terminal_kwh
    cap = min(e_max, spec.eta_charge * spec.charge_power_max_kw * spec.charge_dwell_h)
    floors = np.empty(n)
    for k in range(n):
        around = [drains[k - 1]] if k > 0 else []
        if k < n - 1:
            around.append(drains[k])
        floors[k] = e_min + (max(around) if around else 0.0)
    need = np.empty(n)
    need[: n - 1] = e_min - e0 + consumed[1:n]
    need[n - 1] = e_term - e0 + consumed[n - 1]
    ceil = e_max - e0 + consumed[:n]
    price = np.array(instance.prices_usd_per_mwh) / spec.eta_charge / 1000.0

    tri = np.tril(np.ones((n, n)))
    a_ub = np.vstack([tri, -tri])
    b_ub = np.concatenate([ceil, -need])
    need_total = max(0.0, float(need.max()))

    def subset_reaches_end(mask: int) -> bool:
        soc = e0
        for k in range(n):
            if mask >> k & 1:
                soc = min(e_max, soc + cap)
            if k < n - 1:
                soc -= drains[k]
                if soc < e_min - _FEAS_EPS:
                    return False
        return soc >= e_term - _FEAS_EPS

    masks = []
    for mask in range(1 << n):
        members = [j for j in range(n) if mask >> j & 1]
        if need_total > 0.0 and not members:
            continue
        lb = need_total * min((price[j] for j in members), default=0.0)
        masks.append((lb, mask))
    masks.sort()

    best_cost = math.inf
    best_mask = None
    best_g = None
    for lb, mask in masks:
        if best_mask is not None and lb > best_cost + _tie_tol(best_cost):
            break
        if not subset_reaches_end(mask):
            continue
        bounds = [(floors[j], cap) if mask >> j & 1 else (0.0, 0.0) for j in range(n)]
        res = linprog(price, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
        if res.status != 0:
            continue
        cost = float(res.fun)
        if best_mask is None or cost < best_cost - _tie_tol(best_cost):
            best_cost, best_mask, best_g = cost, mask, res.x
        elif abs(cost - best_cost) <= _tie_tol(best_cost):
            x_new = tuple(mask >> j & 1 for j in range(n))
            x_old = tuple(best_mask >> j & 1 for j in range(n))
            if x_new < x_old:
                best_cost, best_mask, best_g = cost, mask, res.x

    if best_mask is None:
        raise InfeasibleChargingError(
            "exhaustive enumeration found no feasible charging plan")

    # Among cost-optimal charge vectors for the winning stops, minimize total charge.
    bounds = [(floors[j], cap) if best_mask >> j & 1 else (0.0, 0.0) for j in range(n)]
    a_cost = np.vstack([a_ub, price])
    b_cost = np.concatenate([b_ub, [best_cost + _tiny(best_cost)]])
    res2 = linprog(np.ones(n), A_ub=a_cost, b_ub=b_cost, bounds=bounds, method="highs")
    g = res2.x if res2.status == 0 else best_g
    x = tuple(best_mask >> j & 1 for j in range(n))
    g = [float(v) if keep else 0.0 for v, keep in zip(g, x)]
    return _build_plan(instance, x, g, drains)


def check_plan(instance: ChargeInstance, plan: ChargePlan, tol: float = 1e-9) -> list[str]:
    """Machine-check every plan invariant; returns a list of violations."""
    spec = instance.spec
    n = instance.n_sites
    problems = []
    scale = max(1.0, spec.battery_max_kwh)
    etol = tol * scale

    if len(plan.x) != n or len(plan.e_plus_kwh) != n or len(plan.p_plus_kw) != n:
        return [f"plan arrays must have {n} entries"]
    if len(plan.soc_trace) != 2 * (n - 1) + 1:
        problems.append(f"soc_trace must have {2 * (n - 1) + 1} entries, "
                        f"got {len(plan.soc_trace)}")

    drains = [e / spec.eta_discharge for e in instance.seg_energy_kwh]
    for k in range(n):
        x_k, e_k = plan.x[k], plan.e_plus_kwh[k]
        if x_k not in (0, 1):
            problems.append(f"x[{k}]={x_k} not binary")
        if x_k == 0 and e_k != 0.0:
            problems.append(f"x[{k}]=0 but e_plus[{k}]={e_k}")
        if e_k > etol and x_k != 1:
            problems.append(f"e_plus[{k}]={e_k} > 0 but x[{k}]=0")
        around = [drains[k - 1]] if k > 0 else []
        if k < n - 1:
            around.append(drains[k])
        worst = max(around) if around else 0.0
        gated_lo = x_k * (spec.battery_min_kwh + worst)
        gated_hi = x_k * spec.battery_max_kwh
        charged = e_k * spec.eta_charge
        if charged < gated_lo - etol:
            problems.append(f"site {k}: charge {charged} below gated floor {gated_lo}")
        if charged > gated_hi + etol:
            problems.append(f"site {k}: charge {charged} above gated cap {gated_hi}")
        if abs(plan.p_plus_kw[k] - e_k / spec.charge_dwell_h) > etol:
            problems.append(f"site {k}: p_plus inconsistent with dwell time")
        if plan.p_plus_kw[k] > spec.charge_power_max_kw + etol:
            problems.append(f"site {k}: p_plus {plan.p_plus_kw[k]} exceeds cap")

    soc = spec.soc_initial_kwh
    idx = 0
    for k in range(n):
        soc += plan.e_plus_kwh[k] * spec.eta_charge
        if idx < len(plan.soc_trace) and abs(plan.soc_trace[idx] - soc) > etol:
            problems.append(f"soc_trace[{idx}] disagrees with recomputation")
        if not (spec.battery_min_kwh - etol <= soc <= spec.battery_max_kwh + etol):
            problems.append(f"post-charge SOC {soc} out of bounds at site {k}")
        idx += 1
        if k < n - 1:
            soc -= drains[k]
            if idx < len(plan.soc_trace) and abs(plan.soc_trace[idx] - soc) > etol:
                problems.append(f"soc_trace[{idx}] disagrees with recomputation")
            if not (spec.battery_min_kwh - etol <= soc <= spec.battery_max_kwh + etol):
                problems.append(f"SOC {soc} out of bounds after segment {k}")
            idx += 1
    if soc < spec.soc_terminal_kwh - etol:
        problems.append(f"terminal SOC {soc} below required {spec.soc_terminal_kwh}")

    cost = sum(lam * e for lam, e in
               zip(instance.prices_usd_per_mwh, plan.e_plus_kwh)) / 1000.0
    if abs(cost - plan.total_cost_usd) > tol * max(1.0, abs(cost)):
        problems.append(f"total_cost {plan.total_cost_usd} != recomputed {cost}")
    return problems


def instance_to_dict(instance: ChargeInstance) -> dict:
    spec = instance.spec
    return {
        "prices_usd_per_mwh": list(instance.prices_usd_per_mwh),
        "seg_energy_kwh": list(instance.seg_energy_kwh),
        "spec": {
            "eta_charge": spec.eta_charge,
            "eta_discharge": spec.eta_discharge,
            "eta_wheel_kwh_per_mile": spec.eta_wheel_kwh_per_mile,
            "battery_max_kwh": spec.battery_max_kwh,
            "battery_min_kwh": spec.battery_min_kwh,
            "charge_power_max_kw": spec.charge_power_max_kw,
            "charge_power_min_kw": spec.charge_power_min_kw,
            "soc_initial_kwh": spec.soc_initial_kwh,
            "soc_terminal_kwh": spec.soc_terminal_kwh,
            "capacity_tons": spec.capacity_tons,
            "charge_dwell_h": spec.charge_dwell_h,
            "diesel_mpg": spec.diesel_mpg,
            "diesel_kgco2_per_gal": spec.diesel_kgco2_per_gal,
        },
    }


def instance_from_dict(payload: dict) -> ChargeInstance:
    return ChargeInstance(
        prices_usd_per_mwh=tuple(payload["prices_usd_per_mwh"]),
        seg_energy_kwh=tuple(payload["seg_energy_kwh"]),
        spec=VehicleSpec(**payload["spec"]),
    )


def plan_to_dict(plan: ChargePlan) -> dict:
    return {
        "x": list(plan.x),
        "e_plus_kwh": list(plan.e_plus_kwh),
        "p_plus_kw": list(plan.p_plus_kw),
        "total_cost_usd": plan.total_cost_usd,
        "soc_trace": list(plan.soc_trace),
    }


def random_instance(rng: np.random.Generator, max_segments: int = 10,
                    tied_prices: bool = False) -> ChargeInstance:
    """Draw a randomized instance for solver/oracle comparison runs.

    Parameters are biased so that a healthy majority of draws are feasible;
    infeasible draws are kept by callers to compare verdicts.
    """
    n_seg = int(rng.integers(1, max_segments + 1))
    e_max = float(rng.uniform(200.0, 800.0))
    e_min = float(rng.uniform(0.0, 0.2 * e_max))
    e0 = float(rng.uniform(e_min + 0.5 * (e_max - e_min), e_max))
    e_term = float(rng.uniform(e_min, e_max))
    eta_c = float(rng.uniform(0.85, 1.0))
    eta_d = float(rng.uniform(0.85, 1.0))
    p_max = float(rng.uniform(200.0, 1200.0))
    dwell = float(rng.uniform(0.3, 1.5))
    spec = VehicleSpec(eta_charge=eta_c, eta_discharge=eta_d,
                       battery_max_kwh=e_max, battery_min_kwh=e_min,
                       soc_initial_kwh=e0, soc_terminal_kwh=e_term,
                       charge_power_max_kw=p_max, charge_dwell_h=dwell)
    window = e_max - e_min
    seg = tuple(float(rng.uniform(0.02, 0.6) * window * eta_d) for _ in range(n_seg))
    if tied_prices:
        levels = rng.uniform(20.0, 200.0, size=max(1, n_seg // 2))
        prices = tuple(float(rng.choice(levels)) for _ in range(n_seg + 1))
    else:
        prices = tuple(float(rng.uniform(20.0, 200.0)) for _ in range(n_seg + 1))
    return ChargeInstance(prices_usd_per_mwh=prices, seg_energy_kwh=seg, spec=spec)
