"""Seeded oracle cross-checks exposed as ``relsteer verify``."""

from dataclasses import dataclass
import math

import numpy as np

from . import channels, qstate, steering
from .errors import NotPositive


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    cases: int

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.name:<22} max deviation {self.max_deviation:.3e} "
                f"(tol {self.tolerance:.0e}, {self.cases} cases)")


def _result(name, devs, tol):
    worst = max(devs) if devs else 0.0
    ok = bool(devs) and (worst <= tol) and all(math.isfinite(d) for d in devs)
    return SuiteResult(name, ok, float(worst), tol, len(devs))


def _random_acc(rng):
    return channels.AccelerationParams(*rng.uniform(0.0, channels.R_MAX, 2))


def suite_kraus(rng, n, unruh=channels.unruh_apply):
    devs = []
    for _ in range(n):
        rho, acc = qstate.random_state(rng), _random_acc(rng)
        devs.append(np.max(np.abs(np.asarray(unruh(rho, acc)) - np.asarray(channels.unruh_apply_kraus(rho, acc)))))
    return _result("kraus_vs_explicit", devs, 1e-12)


def suite_cptp(rng, n, unruh=channels.unruh_apply):
    trace_devs, min_eig = [], 0.0
    for _ in range(n):
        rho, acc = qstate.random_state(rng), _random_acc(rng)
        for out in (unruh(rho, acc), channels.unruh_apply_kraus(rho, acc)):
            a = np.asarray(out)
            trace_devs.append(abs(np.trace(a) - 1.0))
            min_eig = min(min_eig, qstate.eigenvalues_hermitian4(a)[-1])
    res = _result("cptp", trace_devs, 1e-12)
    if min_eig < qstate.PSD_TOL:
        res = SuiteResult(res.name, False, max(res.max_deviation, -min_eig), res.tolerance, res.cases)
    return res


def _werner_grid(k=20):
    cs = np.linspace(-1.0, 1.0, k)
    for c11 in cs:
        for c22 in cs:
            for c33 in cs:
                yield float(c11), float(c22), float(c33)


def suite_closed_form(k=20, unruh=channels.unruh_apply):
    devs = []
    rs = np.linspace(0.0, channels.R_MAX, k)
    for idx, (c11, c22, c33) in enumerate(_werner_grid(k)):
        w = qstate.WernerParams(c11, c22, c33)
        try:
            base = qstate.werner(w)
        except NotPositive:
            continue
        acc = channels.AccelerationParams(rs[idx % k], rs[(idx // k) % k])
        devs.append(np.max(np.abs(np.asarray(channels.accelerated_werner(w, acc)) - np.asarray(unruh(base, acc)))))
    for q in np.linspace(0.0, 1.0, k):
        f = qstate.PureFamilyParams(float(q))
        base = qstate.generic_pure(f)
        for ra in rs:
            for rb in rs:
                acc = channels.AccelerationParams(ra, rb)
                devs.append(np.max(np.abs(np.asarray(channels.accelerated_generic_pure(f, acc)) - np.asarray(unruh(base, acc)))))
    return _result("closed_form_vs_channel", devs, 1e-12)


def suite_p_vs_4p(rng, n):
    devs = []
    for _ in range(n):
        rho = qstate.random_state(rng)
        P = steering.closed_form_P(rho)
        for ax in steering.AXES:
            d = steering.pauli_distribution(rho, ax)
            devs.append(np.max(np.abs(P["ab"][ax] - 4 * steering.reorder_joint(d))))
            devs.append(np.max(np.abs(P["a"][ax] - 2 * steering.reorder_marginal(d.marginal_a, ax))))
            devs.append(np.max(np.abs(P["b"][ax] - 2 * steering.reorder_marginal(d.marginal_b, ax))))
    return _result("P_vs_4p", devs, 1e-10)


def suite_identity(rng, n):
    devs = []
    for _ in range(n):
        rho = qstate.random_state(rng)
        for d in steering.DIRECTIONS:
            devs.append(abs(steering.steering_I(rho, d) - (6 - 2 * steering.conditional_entropy_sum(rho, d))))
    return _result("I_identity", devs, 1e-9)


def suite_werner_symmetry(rng, n, unruh=channels.unruh_apply):
    devs = []
    while len(devs) < n:
        c = rng.uniform(-1.0, 1.0, 3)
        try:
            base = qstate.werner(qstate.WernerParams(*c))
        except NotPositive:
            continue
        r = rng.uniform(0.0, channels.R_MAX)
        alpha = rng.uniform(0.05, 0.95)
        out, _ = channels.filter_apply(unruh(base, channels.AccelerationParams(r, r)),
                                       channels.FilterParams.equal(alpha))
        rep = steering.steerability_report(out)
        devs.append(abs(rep.I_ab - rep.I_ba))
    return _result("werner_symmetry", devs, 1e-9)


def verify(seed=2024, n=1000, grid=20, unruh=channels.unruh_apply):
    """Run every cross-check; ``unruh`` can be swapped to test a mutated channel."""
    rng = np.random.default_rng(seed)
    return [
        suite_kraus(rng, n, unruh),
        suite_cptp(rng, n, unruh),
        suite_closed_form(grid, unruh),
        suite_p_vs_4p(rng, n),
        suite_identity(rng, n),
        suite_werner_symmetry(rng, max(50, n // 10), unruh),
    ]


def format_report(results):
    lines = [r.line() for r in results]
    overall = "all suites passed" if all(r.passed for r in results) else "VERIFICATION FAILED"
    worst = max(r.max_deviation for r in results)
    lines.append(f"{overall}; largest deviation {worst:.3e}")
    return "\n".join(lines)
