"""Command-line harness: deterministic sweeps, identity checks, corollary audit.

Subcommands
-----------
verify-hadamard   random-witness soundness sweep of the two-node inequality
verify-bullen     same for the three-node inequality
check-identities  closed-form panel moments vs the quadrature oracle
audit-corollaries shortcut coefficients vs the assembled oracle bound
sweep             gap/bound/ratio table over a parameter grid

Determinism: every random draw comes from numpy PCG64 seeded through
SeedSequence(entropy=seed, spawn_key=(trial,)), one splittable stream per
trial, so trial order and concurrency cannot change the draws.  Reports
serialize with fixed key order and round-trip-exact float text; identical
run configurations produce byte-identical files.  Wall-clock duration is
echoed to stderr only, never into the report bytes.

Exit codes: 0 all checks pass, 1 mathematical violation or residual
breach, 2 I/O or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__, bounds, corpus, engine
from .bounds import BullenConfig, HadamardConfig
from .quadrature import (ALPHA_MAX, ALPHA_MIN, DomainError, Interval, Order,
                         abs_moment_quadrature)

__all__ = [
    "RunConfig",
    "VerificationReport",
    "cmd_audit_corollaries",
    "cmd_check_identities",
    "cmd_sweep",
    "cmd_verify_bullen",
    "cmd_verify_hadamard",
    "main",
]

SCHEMA_VERSION = 1
RESIDUAL_LIMIT = 1e-8
CONTINUITY_LIMIT = 1e-6
# Every Nth trial is re-evaluated through the quadrature path to measure
# the oracle residual without letting quadrature dominate the runtime.
ORACLE_CHECK_STRIDE = 10

SWEEP_LAMBDAS = (0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0)
SWEEP_DELTAS = (0.5, 0.625, 0.75, 0.875, 1.0)
SWEEP_ETAS = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class RunConfig:
    """Harness run parameters.

    ``m_max`` bounds the witness slopes and is API-level only (no CLI
    flag); it exists so constant-witness runs (m_max = 0) are expressible.
    """

    seed: int = 42
    trials: int = 1000
    alpha_grid: tuple = (0.5, 1.0, 1.5, 2.0)
    interval: Interval = field(default_factory=lambda: Interval(0.0, 1.0))
    output_path: str | None = None
    fmt: str = "json"
    m_max: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "alpha_grid", tuple(float(a) for a in self.alpha_grid))
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not self.alpha_grid:
            raise DomainError("alpha_grid must be nonempty")
        for a in self.alpha_grid:
            if not (ALPHA_MIN < a <= ALPHA_MAX):
                raise DomainError(f"alpha {a} outside ({ALPHA_MIN}, {ALPHA_MAX}]")
        if self.fmt not in ("json", "csv"):
            raise DomainError(f"format must be 'json' or 'csv', got {self.fmt!r}")
        if self.m_max < 0.0:
            raise DomainError(f"m_max must be >= 0, got {self.m_max}")


def _f17(value) -> str:
    """Fixed float text: 17 significant digits, '.' decimal (round-trip exact)."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


@dataclass
class VerificationReport:
    """Harness output: run metadata, per-record results, aggregates, errata.

    ``duration_seconds`` is console diagnostics only and is excluded from
    the serialized bytes so reports stay byte-identical across runs.
    """

    command: str
    run: RunConfig
    columns: tuple
    records: list
    aggregate: dict
    errata: list
    duration_seconds: float = 0.0

    @property
    def violations(self) -> int:
        return int(self.aggregate.get("violations", 0))

    def _header(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool": "fracbound",
            "tool_version": __version__,
            "command": self.command,
            "run": {
                "seed": self.run.seed,
                "trials": self.run.trials,
                "alpha_grid": list(self.run.alpha_grid),
                "interval": [self.run.interval.a, self.run.interval.b],
                "format": self.run.fmt,
                "m_max": self.run.m_max,
            },
        }

    def to_json_bytes(self) -> bytes:
        doc = self._header()
        doc["aggregate"] = self.aggregate
        doc["records"] = [{c: r[c] for c in self.columns if c in r} for r in self.records]
        doc["errata"] = self.errata
        return (json.dumps(doc, indent=1) + "\n").encode("utf-8")

    def to_csv_bytes(self) -> bytes:
        lines = []
        hdr = self._header()
        run = hdr["run"]
        lines.append(f"# schema_version={hdr['schema_version']}")
        lines.append(f"# tool=fracbound {__version__}")
        lines.append(f"# command={self.command}")
        lines.append("# seed=%d trials=%d alpha_grid=%s interval=%s,%s m_max=%s" % (
            run["seed"], run["trials"],
            ";".join(_f17(a) for a in run["alpha_grid"]),
            _f17(run["interval"][0]), _f17(run["interval"][1]), _f17(run["m_max"])))
        lines.append(",".join(self.columns))
        for rec in self.records:
            lines.append(",".join(_f17(rec[c]) if c in rec else "" for c in self.columns))
        for key in self.aggregate:
            lines.append(f"# aggregate {key}={_f17(self.aggregate[key])}")
        for ent in self.errata:
            params = ";".join(f"{k}={_f17(v)}" for k, v in ent["witness_params"].items())
            lines.append("# erratum %s deviation=%s %s" % (
                ent["formula_id"], _f17(ent["max_abs_deviation"]), params))
        return ("\n".join(lines) + "\n").encode("utf-8")

    def to_bytes(self) -> bytes:
        return self.to_json_bytes() if self.run.fmt == "json" else self.to_csv_bytes()


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
    return np.random.Generator(np.random.PCG64(seq))


def _witness_for_trial(rng: np.random.Generator, run: RunConfig) -> corpus.LipschitzWitness:
    wseed = int(rng.integers(0, 2 ** 63))
    return corpus.random_lipschitz(wseed, run.interval, m_max=run.m_max)


def _relative_residual(got: float, want: float) -> float:
    return abs(got - want) / max(1.0, abs(want))


def _soundness_sweep(command: str, run: RunConfig) -> VerificationReport:
    t0 = time.perf_counter()
    is_bullen = command == "verify-bullen"
    a, b = run.interval.a, run.interval.b
    records = []
    violations = 0
    max_ratio = 0.0
    max_resid = 0.0
    resid_breaches = 0
    checks = 0
    for trial in range(run.trials):
        rng = _trial_rng(run.seed, trial)
        witness = _witness_for_trial(rng, run)
        if is_bullen:
            lam, eta, mu = (float(w) for w in rng.dirichlet((1.0, 1.0, 1.0)))
            x, y, z = sorted(float(u) for u in rng.uniform(a, b, 3))
        else:
            lam = float(rng.uniform())
            x, y = sorted(float(u) for u in rng.uniform(a, b, 2))
        for alpha in run.alpha_grid:
            if is_bullen:
                cfg = BullenConfig(run.interval, Order(alpha), lam, eta, mu, x, y, z)
                gap = engine.bullen_gap(cfg, witness)
                bound = engine.bullen_bound(cfg, witness.constant)
            else:
                cfg = HadamardConfig(run.interval, Order(alpha), lam, x, y)
                gap = engine.hadamard_gap(cfg, witness)
                bound = engine.hadamard_bound(cfg, witness.constant)
            res = engine.verify(gap, bound)
            if not res.passed:
                violations += 1
            if math.isfinite(res.ratio):
                max_ratio = max(max_ratio, res.ratio)
            rec = {"trial": trial, "alpha": alpha, "lam": lam, "x": x, "y": y,
                   "m": witness.constant, "gap": gap, "bound": bound,
                   "ratio": res.ratio, "passed": res.passed, "method": res.method}
            if is_bullen:
                rec.update({"eta": eta, "mu": mu, "z": z})
            if trial % ORACLE_CHECK_STRIDE == 0:
                if is_bullen:
                    gq = engine.bullen_gap(cfg, witness, method="quadrature")
                else:
                    gq = engine.hadamard_gap(cfg, witness, method="quadrature")
                resid = _relative_residual(gap, gq)
                rec["oracle_residual"] = resid
                max_resid = max(max_resid, resid)
                resid_breaches += resid > RESIDUAL_LIMIT
                checks += 1
            records.append(rec)
    aggregate = {
        "evaluations": len(records),
        "violations": violations,
        "max_ratio": max_ratio,
        "oracle_checks": checks,
        "max_oracle_residual": max_resid,
        "oracle_residual_breaches": resid_breaches,
    }
    if is_bullen:
        columns = ("trial", "alpha", "lam", "eta", "mu", "x", "y", "z", "m", "gap",
                   "bound", "ratio", "passed", "method", "oracle_residual")
    else:
        columns = ("trial", "alpha", "lam", "x", "y", "m", "gap", "bound", "ratio",
                   "passed", "method", "oracle_residual")
    return VerificationReport(command, run, columns, records, aggregate, [],
                              time.perf_counter() - t0)


def cmd_verify_hadamard(run: RunConfig) -> VerificationReport:
    """Soundness sweep of the two-node inequality over random witnesses."""
    return _soundness_sweep("verify-hadamard", run)


def cmd_verify_bullen(run: RunConfig) -> VerificationReport:
    """Soundness sweep of the three-node inequality; weights drawn uniformly
    on the simplex, nodes as sorted uniforms."""
    return _soundness_sweep("verify-bullen", run)


# --------------------------------------------------------------------------
# check-identities
# --------------------------------------------------------------------------

def _two_node_sample(case: int, rng, a: float, b: float):
    lam = float(rng.uniform(0.15, 0.85))
    v = a + lam * (b - a)
    if case == 1:
        x, y = sorted(float(u) for u in rng.uniform(v, b, 2))
    elif case == 2:
        x = float(rng.uniform(a, v))
        y = float(rng.uniform(v, b))
    else:
        x, y = sorted(float(u) for u in rng.uniform(a, v, 2))
    return lam, v, x, y


def _three_node_sample(case: int, k: int, rng, a: float, b: float):
    # Panel widths leave room to place nodes inside every panel.
    span = b - a
    lam = float(rng.uniform(0.15, 0.35))
    eta = float(rng.uniform(0.2, 0.4))
    v1 = a + lam * span
    v2 = a + (lam + eta) * span
    u = lambda lo, hi: float(rng.uniform(lo, hi))
    if case == 1:
        # alternate between the two grouped orderings
        if k % 2 == 0:
            x, y = sorted((u(v2, b), u(v2, b)))
        else:
            x, y = u(v1, v2), u(v2, b)
        z = u(y, b)
    elif case == 2:
        x, y = sorted((u(v1, v2), u(v1, v2)))
        z = u(v2, b)
    elif case == 3:
        x, y, z = sorted((u(v1, v2), u(v1, v2), u(v1, v2)))
    elif case == 4:
        x = u(a, v1)
        y, z = sorted((u(v2, b), u(v2, b)))
    elif case == 5:
        x, y, z = u(a, v1), u(v1, v2), u(v2, b)
    elif case == 6:
        x = u(a, v1)
        y, z = sorted((u(v1, v2), u(v1, v2)))
    elif case == 7:
        x, y = sorted((u(a, v1), u(a, v1)))
        z = u(v2, b)
    else:
        x, y = sorted((u(a, v1), u(a, v1)))
        if k % 2 == 0:
            z = u(v1, v2)
        else:
            x, y, z = sorted((x, y, u(a, v1)))
    return lam, eta, v1, v2, x, y, z


def _continuity_probes(run: RunConfig, alpha: float, eps: float):
    """Yield (boundary_tag, value_below, value_above) for each case split."""
    itv = run.interval
    a, b = itv.a, itv.b
    span = b - a
    order = Order(alpha)

    def had(lam, x, y):
        return bounds.v_hadamard(HadamardConfig(itv, order, lam, x, y)).total

    def bul(lam, eta, x, y, z):
        return bounds.v_bullen(
            BullenConfig(itv, order, lam, eta, 1.0 - lam - eta, x, y, z)).total

    lam = 0.4
    v = a + lam * span
    yield "two_node_x_at_V", had(lam, v - eps, a + 0.8 * span), had(lam, v + eps, a + 0.8 * span)
    lam = 0.6
    v = a + lam * span
    yield "two_node_y_at_V", had(lam, a + 0.2 * span, v - eps), had(lam, a + 0.2 * span, v + eps)

    lam, eta = 0.3, 0.4
    v1 = a + lam * span
    v2 = a + (lam + eta) * span
    ymid = (v1 + v2) / 2.0
    zmid = (v2 + b) / 2.0
    xlow = a + 0.1 * span
    yield "three_node_x_at_V1", bul(lam, eta, v1 - eps, ymid, zmid), bul(lam, eta, v1 + eps, ymid, zmid)
    yield "three_node_y_at_V1", bul(lam, eta, xlow, v1 - eps, zmid), bul(lam, eta, xlow, v1 + eps, zmid)
    yield "three_node_y_at_V2", bul(lam, eta, xlow, v2 - eps, zmid), bul(lam, eta, xlow, v2 + eps, zmid)
    yield "three_node_z_at_V2", bul(lam, eta, xlow, ymid, v2 - eps), bul(lam, eta, xlow, ymid, v2 + eps)


def cmd_check_identities(run: RunConfig, per_case: int | None = None) -> VerificationReport:
    """Validate every closed-form panel moment against the quadrature oracle.

    Samples per_case configurations for each of the 3 two-node and 8
    three-node orderings at every grid order; per_case defaults to
    whatever brings the total to at least 500 samples.  Reports the worst
    relative residual and probes value continuity across each case
    boundary at +-1e-9 offsets.
    """
    t0 = time.perf_counter()
    if per_case is None:
        per_case = max(12, -(-500 // (11 * len(run.alpha_grid))))
    a, b = run.interval.a, run.interval.b
    records = []
    max_resid = 0.0
    resid_breaches = 0
    samples = 0
    for alpha in run.alpha_grid:
        order = Order(alpha)
        for case in range(1, 4):
            for k in range(per_case):
                rng = _trial_rng(run.seed, 10_000 + 1_000 * case + k)
                lam, v, x, y = _two_node_sample(case, rng, a, b)
                moments = (
                    ("left", bounds.abs_moment_left_closed(x, a, v, order),
                     abs_moment_quadrature(x, a, v, a, "left", order)),
                    ("right", bounds.abs_moment_right_closed(y, v, b, order),
                     abs_moment_quadrature(y, v, b, b, "right", order)),
                )
                samples += 1
                for panel, closed, quad in moments:
                    resid = _relative_residual(closed, quad)
                    max_resid = max(max_resid, resid)
                    resid_breaches += resid > RESIDUAL_LIMIT
                    records.append({"kind": "moment", "case": f"two_node_case{case}",
                                    "alpha": alpha, "panel": panel, "closed": closed,
                                    "quad": quad, "residual": resid})
        for case in range(1, 9):
            for k in range(per_case):
                rng = _trial_rng(run.seed, 20_000 + 1_000 * case + k)
                lam, eta, v1, v2, x, y, z = _three_node_sample(case, k, rng, a, b)
                moments = (
                    ("left", bounds.abs_moment_left_closed(x, a, v1, order),
                     abs_moment_quadrature(x, a, v1, a, "left", order)),
                    ("mid", bounds.abs_moment_mid_closed(y, v1, v2, order),
                     abs_moment_quadrature(y, v1, v2, v2, "right", order)),
                    ("right", bounds.abs_moment_right_closed(z, v2, b, order),
                     abs_moment_quadrature(z, v2, b, b, "right", order)),
                )
                samples += 1
                for panel, closed, quad in moments:
                    resid = _relative_residual(closed, quad)
                    max_resid = max(max_resid, resid)
                    resid_breaches += resid > RESIDUAL_LIMIT
                    records.append({"kind": "moment", "case": f"three_node_case{case}",
                                    "alpha": alpha, "panel": panel, "closed": closed,
                                    "quad": quad, "residual": resid})

    eps = 1e-9 * max(1.0, b - a)
    max_delta = 0.0
    continuity_breaches = 0
    for alpha in run.alpha_grid:
        for tag, below, above in _continuity_probes(run, alpha, eps):
            delta = abs(above - below)
            limit = CONTINUITY_LIMIT * (1.0 + max(abs(below), abs(above)))
            normalized = delta / (1.0 + max(abs(below), abs(above)))
            max_delta = max(max_delta, normalized)
            continuity_breaches += delta > limit
            records.append({"kind": "continuity", "case": tag, "alpha": alpha,
                            "closed": below, "quad": above, "residual": normalized})

    aggregate = {
        "evaluations": samples,
        "violations": resid_breaches + continuity_breaches,
        "max_residual": max_resid,
        "residual_breaches": resid_breaches,
        "max_continuity_delta": max_delta,
        "continuity_breaches": continuity_breaches,
    }
    columns = ("kind", "case", "alpha", "panel", "closed", "quad", "residual")
    return VerificationReport("check-identities", run, columns, records, aggregate,
                              [], time.perf_counter() - t0)


# --------------------------------------------------------------------------
# audit-corollaries
# --------------------------------------------------------------------------

def _classical_mean(f: corpus.PiecewiseLinearFunction) -> float:
    one = Order(1.0)
    return corpus.exact_rl_left(f, one, f.b) / (f.b - f.a)


def cmd_audit_corollaries(run: RunConfig) -> VerificationReport:
    """Audit every shortcut coefficient against the assembled oracle bound
    and emit the erratum ledger.

    Coefficient audits run on the canonical interval [0, 1] (scale
    covariance extends them); mismatches are data, not failures, so the
    exit status is 0 regardless of ledger contents.
    """
    t0 = time.perf_counter()
    canonical = Interval(0.0, 1.0)
    records = []
    worst: dict = {}
    params = engine.CorollaryParams(
        witness_seeds=tuple(run.seed + k for k in (1, 2, 3)))
    for alpha in run.alpha_grid:
        findings = engine.corollary_suite(canonical, Order(alpha), params)
        for finding in findings:
            records.append(finding.as_record())
            if finding.erratum is not None:
                cur = worst.get(finding.formula_id)
                if cur is None or finding.erratum.max_abs_deviation > cur.max_abs_deviation:
                    worst[finding.formula_id] = finding.erratum

    # Classical (order 1) diagnostics for the two shortcut functionals.
    if any(a == 1.0 for a in run.alpha_grid):
        f = corpus.tent(canonical, 0.5)
        m = corpus.lipschitz_constant(f)
        mean = _classical_mean(f)
        mid = f(0.5)
        end = (f(0.0) + f(1.0)) / 2.0
        for formula_id, gap, coeff in (
                ("bullen_remark_classical_alpha1", abs(0.5 * (end + mid) - mean),
                 bounds.bullen_remark_coeff(1.0)),
                ("simpson_remark_classical_alpha1",
                 abs((f(0.0) + 4.0 * mid + f(1.0)) / 6.0 - mean),
                 bounds.simpson_remark_coeff(1.0))):
            res = engine.verify(gap, coeff * m)
            records.append({"formula_id": formula_id, "alpha": 1.0,
                            "printed_bound": coeff, "oracle_bound": coeff,
                            "deviation": 0.0, "gap": res.gap, "bound_used": res.bound,
                            "ratio": res.ratio, "passed": res.passed})

    errata = [worst[fid].as_record() for fid in sorted(worst)]
    aggregate = {
        "evaluations": len(records),
        "violations": 0,
        "erratum_formulas": len(errata),
        "max_erratum_deviation": max((e["max_abs_deviation"] for e in errata), default=0.0),
    }
    columns = ("formula_id", "alpha", "lam", "eta", "delta", "node_delta", "theta",
               "printed_bound", "oracle_bound", "deviation", "gap", "bound_used",
               "ratio", "passed")
    return VerificationReport("audit-corollaries", run, columns, records, aggregate,
                              errata, time.perf_counter() - t0)


# --------------------------------------------------------------------------
# sweep
# --------------------------------------------------------------------------

def cmd_sweep(run: RunConfig, functional: str, witness_path: str | None = None,
              lambdas: tuple = SWEEP_LAMBDAS, deltas: tuple = SWEEP_DELTAS,
              etas: tuple = SWEEP_ETAS) -> VerificationReport:
    """Emit (alpha, lam[, eta], delta, gap, bound, ratio) rows for plotting.

    The witness is loaded from the two-column text format when a path is
    given, else it is the tent centered on the interval midpoint (so the
    row lam = delta = 1/2 of the two-node sweep is the sharpness
    configuration with ratio 1).
    """
    t0 = time.perf_counter()
    if functional not in ("hadamard", "bullen"):
        raise DomainError(f"functional must be 'hadamard' or 'bullen', got {functional!r}")
    itv = run.interval
    a, b = itv.a, itv.b
    if witness_path is not None:
        with open(witness_path, "r", encoding="utf-8") as fh:
            f = corpus.from_text(fh.read())
        if not (f.a == a and f.b == b):
            raise DomainError(
                f"witness spans [{f.a}, {f.b}], run interval is [{a}, {b}]")
    else:
        f = corpus.tent(itv, (a + b) / 2.0)
    witness = corpus.LipschitzWitness(f, corpus.lipschitz_constant(f))
    records = []
    max_ratio = 0.0
    violations = 0
    for alpha in run.alpha_grid:
        order = Order(alpha)
        if functional == "hadamard":
            for lam in lambdas:
                for delta in deltas:
                    cfg = HadamardConfig(itv, order, lam,
                                         delta * a + (1.0 - delta) * b,
                                         (1.0 - delta) * a + delta * b)
                    gap = engine.hadamard_gap(cfg, witness)
                    bound = engine.hadamard_bound(cfg, witness.constant)
                    res = engine.verify(gap, bound)
                    violations += not res.passed
                    if math.isfinite(res.ratio):
                        max_ratio = max(max_ratio, res.ratio)
                    records.append({"alpha": alpha, "lam": lam, "delta": delta,
                                    "gap": gap, "bound": bound, "ratio": res.ratio})
        else:
            for lam in lambdas:
                for eta in etas:
                    if lam + eta > 1.0:
                        continue
                    for delta in deltas:
                        cfg = BullenConfig(itv, order, lam, eta, 1.0 - lam - eta,
                                           delta * a + (1.0 - delta) * b,
                                           (a + b) / 2.0,
                                           (1.0 - delta) * a + delta * b)
                        gap = engine.bullen_gap(cfg, witness)
                        bound = engine.bullen_bound(cfg, witness.constant)
                        res = engine.verify(gap, bound)
                        violations += not res.passed
                        if math.isfinite(res.ratio):
                            max_ratio = max(max_ratio, res.ratio)
                        records.append({"alpha": alpha, "lam": lam, "eta": eta,
                                        "delta": delta, "gap": gap, "bound": bound,
                                        "ratio": res.ratio})
    aggregate = {"evaluations": len(records), "violations": violations,
                 "max_ratio": max_ratio}
    if functional == "hadamard":
        columns = ("alpha", "lam", "delta", "gap", "bound", "ratio")
    else:
        columns = ("alpha", "lam", "eta", "delta", "gap", "bound", "ratio")
    return VerificationReport(f"sweep-{functional}", run, columns, records, aggregate,
                              [], time.perf_counter() - t0)


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def _parse_interval(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"--interval wants 'a,b', got {text!r}")
    return Interval(float(parts[0]), float(parts[1]))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracbound",
        description="Verify fractional-integral inequalities for Lipschitz functions.")
    parser.add_argument("--version", action="version", version=f"fracbound {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--alpha", type=float, action="append", default=None,
                       help="grid order; repeatable (default 0.5 1.0 1.5 2.0)")
        p.add_argument("--interval", type=str, default="0,1", metavar="A,B")
        p.add_argument("--out", type=str, default=None, metavar="PATH")
        p.add_argument("--format", type=str, default="json", choices=("json", "csv"))

    for name in ("verify-hadamard", "verify-bullen", "check-identities",
                 "audit-corollaries"):
        common(sub.add_parser(name))
    sweep = sub.add_parser("sweep")
    common(sweep)
    sweep.add_argument("functional", choices=("hadamard", "bullen"))
    sweep.add_argument("--witness", type=str, default=None, metavar="PATH",
                       help="two-column breakpoint/value text file")
    return parser


def _run_config(args) -> RunConfig:
    return RunConfig(
        seed=args.seed,
        trials=args.trials,
        alpha_grid=tuple(args.alpha) if args.alpha else (0.5, 1.0, 1.5, 2.0),
        interval=_parse_interval(args.interval),
        output_path=args.out,
        fmt=args.format,
    )


def _exit_code(report: VerificationReport) -> int:
    agg = report.aggregate
    if report.command in ("verify-hadamard", "verify-bullen"):
        bad = agg["violations"] or agg["oracle_residual_breaches"]
    elif report.command == "check-identities":
        bad = agg["residual_breaches"] or agg["continuity_breaches"]
    else:
        bad = 0
    return 1 if bad else 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        run = _run_config(args)
        if args.command == "verify-hadamard":
            report = cmd_verify_hadamard(run)
        elif args.command == "verify-bullen":
            report = cmd_verify_bullen(run)
        elif args.command == "check-identities":
            report = cmd_check_identities(run)
        elif args.command == "audit-corollaries":
            report = cmd_audit_corollaries(run)
        else:
            report = cmd_sweep(run, args.functional, args.witness)
    except (DomainError, ValueError, OSError) as exc:
        print(f"fracbound: configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        payload = report.to_bytes()
        if run.output_path is None:
            sys.stdout.buffer.write(payload)
            sys.stdout.buffer.flush()
        else:
            with open(run.output_path, "wb") as fh:
                fh.write(payload)
    except OSError as exc:
        print(f"fracbound: I/O error: {exc}", file=sys.stderr)
        return 2
    agg = report.aggregate
    print("fracbound %s: %d records, %d violations, %.2fs" % (
        report.command, agg.get("evaluations", len(report.records)),
        agg.get("violations", 0), report.duration_seconds), file=sys.stderr)
    return _exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
