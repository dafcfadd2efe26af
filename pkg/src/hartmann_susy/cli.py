"""Command-line front end.

    hartmann-susy spectrum     --eta 1 --sigma 1 --m 0 --depth 3
    hartmann-susy eigenfunction --nu-prime 0 --n-prime 1 --format csv
    hartmann-susy verify --suite all
    hartmann-susy partner --N 3

Exit codes: 0 success, 1 a check or tolerance failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import fullline, halfline, oracle
from .model import HartmannParams, QuantumNumberError, allowed_L_values, energy, energy_scaled, integer_gap
from .radial_forms import apply_ladder, evaluate, inner_product, normalize

ORACLE_TOL = 1e-4
SYMBOLIC_TOL = 1e-10
ORTHO_TOL = 1e-8
PARTNER_TOL = 1e-3

_NUMBER = {"type": "number"}
_NULLABLE_NUMBER = {"type": ["number", "null"]}

SPECTRUM_SCHEMA = {
    "type": "object",
    "required": ["command", "units", "gamma", "capital_m", "tolerance", "rows", "passed"],
    "properties": {
        "command": {"const": "spectrum"},
        "units": {"const": "atomic"},
        "gamma": _NUMBER,
        "capital_m": _NUMBER,
        "tolerance": _NUMBER,
        "passed": {"type": "boolean"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["N", "L", "energy_analytic", "energy_oracle", "delta_rel", "convergence", "passed"],
                "properties": {
                    "N": _NUMBER,
                    "L": _NUMBER,
                    "energy_analytic": _NUMBER,
                    "energy_oracle": _NULLABLE_NUMBER,
                    "delta_rel": _NULLABLE_NUMBER,
                    "convergence": _NULLABLE_NUMBER,
                    "passed": {"type": "boolean"},
                },
            },
        },
    },
}

EIGENFUNCTION_SCHEMA = {
    "type": "object",
    "required": ["command", "units", "gamma", "capital_m", "N", "L", "normalization_residual", "rows"],
    "properties": {
        "command": {"const": "eigenfunction"},
        "units": {"const": "atomic"},
        "N": _NUMBER,
        "L": _NUMBER,
        "normalization_residual": _NUMBER,
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["r", "u", "R"],
                "properties": {"r": _NUMBER, "u": _NUMBER, "R": _NUMBER},
            },
        },
    },
}

VERIFY_SCHEMA = {
    "type": "object",
    "required": ["command", "units", "suite", "checks", "passed"],
    "properties": {
        "command": {"const": "verify"},
        "units": {"const": "atomic"},
        "suite": {"enum": ["algebra", "halfline", "fullline", "all"]},
        "passed": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["suite", "name", "value", "tol", "passed"],
                "properties": {
                    "suite": {"type": "string"},
                    "name": {"type": "string"},
                    "value": _NUMBER,
                    "tol": _NUMBER,
                    "passed": {"type": "boolean"},
                },
            },
        },
    },
}

PARTNER_SCHEMA = {
    "type": "object",
    "required": ["command", "units", "N", "delta", "N_prime", "delta_prime", "energy_check", "bose", "fermi",
                 "missing_ground"],
    "properties": {
        "command": {"const": "partner"},
        "units": {"const": "atomic"},
        "energy_check": _NUMBER,
        "bose": {"type": "array"},
        "fermi": {"type": "array"},
    },
}


@dataclass(frozen=True)
class RunConfig:
    params: HartmannParams
    m: int
    depth: int
    fmt: str
    out: str | None
    tol: float | None
    grid_points: int | None
    grid_max: float | None
    capital_m_override: float | None = None

    @property
    def gamma(self) -> float:
        return self.params.gamma

    @property
    def capital_m(self) -> float:
        if self.capital_m_override is not None:
            return self.capital_m_override
        return self.params.capital_m(self.m)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        params = HartmannParams(args.eta, args.sigma)
        if args.depth < 1:
            raise ValueError("--depth must be >= 1")
        if args.tol is not None and not args.tol > 0:
            raise ValueError("--tol must be positive")
        if args.grid_points is not None and args.grid_points < 64:
            raise ValueError("--grid-points must be >= 64")
        if args.grid_max is not None and not args.grid_max > 0:
            raise ValueError("--grid-max must be positive")
        if args.capital_m is not None and not args.capital_m >= 0:
            raise ValueError("--capital-m must be >= 0")
        return cls(params, args.m, args.depth, args.format, args.out, args.tol, args.grid_points, args.grid_max,
                   args.capital_m)


# -- output -------------------------------------------------------------------


def _emit(config: RunConfig, payload: dict, columns: list[str], rows: list[dict], header: dict, text: str) -> None:
    if config.fmt == "json":
        body = json.dumps(payload, indent=2) + "\n"
    elif config.fmt == "csv":
        buf = io.StringIO()
        for key, value in header.items():
            buf.write(f"# {key}: {value}\n")
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in columns})
        body = buf.getvalue()
    else:
        body = text
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _fmt(x, spec=".10g"):
    return "-" if x is None else format(x, spec)


# -- spectrum -----------------------------------------------------------------


def _oracle_levels(config: RunConfig, L: float, n_states: int, n_max: float):
    grid = oracle.default_radial_grid(n_max, L, config.gamma, config.grid_points, config.grid_max)
    return oracle.solve_radial(L, config.gamma, grid, n_states)


def _cmd_spectrum(config: RunConfig) -> int:
    tol = config.tol if config.tol is not None else ORACLE_TOL
    report = halfline.spectrum(config.capital_m, config.depth, config.gamma)
    n_max = max(report.levels())
    by_L = {}
    for row in report.rows:
        by_L.setdefault(row.L, []).append(row)
    rows = []
    for L, group in by_L.items():
        group.sort(key=lambda r: r.N)
        try:
            res = _oracle_levels(config, L, len(group), n_max)
            values, changes = list(res.eigenvalues), list(res.changes)
        except oracle.NoBoundStatesError:
            values, changes = [], []
        for i, row in enumerate(group):
            e_fd = float(values[i]) if i < len(values) else None
            change = float(changes[i]) if i < len(changes) else None
            rel = None if e_fd is None else abs(e_fd - row.energy_analytic) / abs(row.energy_analytic)
            ok = rel is not None and rel <= tol and change < 0.1 * tol
            rows.append({
                "N": row.N,
                "L": row.L,
                "energy_analytic": row.energy_analytic,
                "energy_physical": energy(row.N, config.params),
                "energy_oracle": e_fd,
                "delta_rel": rel,
                "convergence": change,
                "passed": bool(ok),
            })
    rows.sort(key=lambda r: (r["N"], -r["L"]))
    passed = all(r["passed"] for r in rows)
    payload = {
        "command": "spectrum",
        "units": "atomic",
        "gamma": config.gamma,
        "capital_m": config.capital_m,
        "tolerance": tol,
        "rows": rows,
        "passed": passed,
    }
    header = {"command": "spectrum", "units": "atomic", "gamma": config.gamma,
              "capital_m": config.capital_m, "tolerance": tol}
    lines = [f"|M| = {config.capital_m:.10g}   gamma = {config.gamma:.10g}   (atomic units)",
             f"{'N':>12} {'L':>12} {'E_analytic':>16} {'E_oracle':>16} {'rel_delta':>10}  ok"]
    for r in rows:
        lines.append(f"{r['N']:>12.6g} {r['L']:>12.6g} {r['energy_analytic']:>16.10g} "
                     f"{_fmt(r['energy_oracle']):>16} {_fmt(r['delta_rel'], '.2e'):>10}  "
                     f"{'yes' if r['passed'] else 'NO'}")
    _emit(config, payload, ["N", "L", "energy_analytic", "energy_oracle", "delta_rel", "convergence", "passed"],
          rows, header, "\n".join(lines) + "\n")
    return 0 if passed else 1


# -- eigenfunction ------------------------------------------------------------


def _resolve_state(config: RunConfig, args) -> tuple[float, float]:
    cm = config.capital_m
    if args.L is not None:
        L = args.L
        integer_gap(L - cm)
    else:
        L = cm + args.nu_prime
    if args.N is not None:
        N = args.N
    else:
        N = L + 1 + args.n_prime
    if L < cm - 1e-9:
        raise QuantumNumberError(f"L={L} is below |M|={cm}")
    integer_gap(N - L - 1)
    if N - L - 1 < -1e-9:
        raise QuantumNumberError("need N >= L + 1")
    return N, L


def _cmd_eigenfunction(config: RunConfig, args) -> int:
    N, L = _resolve_state(config, args)
    u = halfline.build_eigenfunction(N, L, config.gamma)
    R = halfline.radial_R(N, L, config.gamma)
    resid = abs(inner_product(u, u) - 1.0)
    r_max = args.r_max if args.r_max is not None else max(10.0, 4.0 * N * N) / config.gamma
    if args.samples < 2:
        raise ValueError("--samples must be >= 2")
    r = np.linspace(r_max / args.samples, r_max, args.samples)
    uv, Rv = evaluate(u, r), evaluate(R, r)
    rows = [{"r": float(a), "u": float(b), "R": float(c)} for a, b, c in zip(r, uv, Rv)]
    payload = {
        "command": "eigenfunction",
        "units": "atomic",
        "gamma": config.gamma,
        "capital_m": config.capital_m,
        "N": N,
        "L": L,
        "energy": energy_scaled(N, config.gamma),
        "normalization_residual": resid,
        "form": {"s": u.s, "kappa": u.kappa, "coefficients": list(u.coefficients)},
        "rows": rows,
    }
    header = {"command": "eigenfunction", "units": "atomic", "gamma": config.gamma,
              "capital_m": config.capital_m, "N": N, "L": L, "normalization_residual": f"{resid:.3e}"}
    lines = [f"u_(N={N:.6g}, L={L:.6g})  gamma={config.gamma:.6g}  |<u,u>-1| = {resid:.3e}",
             f"{'r':>14} {'u(r)':>18} {'R(r)':>18}"]
    lines += [f"{row['r']:>14.8g} {row['u']:>18.10g} {row['R']:>18.10g}" for row in rows]
    _emit(config, payload, ["r", "u", "R"], rows, header, "\n".join(lines) + "\n")
    return 0


# -- verify -------------------------------------------------------------------


def _check(suite, name, value, tol):
    value = float(value)
    return {"suite": suite, "name": name, "value": value, "tol": tol, "passed": bool(value <= tol)}


def _tol(config: RunConfig, default: float) -> float:
    """``--tol`` replaces every symbolic tolerance; oracle tolerances stay fixed."""
    return default if config.tol is None else config.tol


def _algebra_checks(config: RunConfig, tol: float) -> list[dict]:
    L = config.capital_m
    rep = halfline.verify_susy_algebra(L, config.gamma)
    return [
        _check("algebra", "Q^2 = 0", rep.q_squared, 0.0),
        _check("algebra", "(Q^dagger)^2 = 0", rep.qdag_squared, 0.0),
        _check("algebra", "{Q,Q^dagger} = diag(A+A-, A-A+)", rep.anticommutator_defect, 0.0),
        _check("algebra", "||[Q,H_ss]|| / ||H_ss||", rep.commutator_rel, tol),
        _check("algebra", "A+A- vs shifted H_L: |order - 2|", abs(rep.observed_order - 2.0), 0.25),
    ]


def _halfline_checks(config: RunConfig, tol: float) -> list[dict]:
    g, cm = config.gamma, config.capital_m
    depth = max(config.depth, 4)
    Ns = [cm + 1 + k for k in range(depth)]
    checks = []
    annihil = 0.0
    for k in range(depth):
        L = cm + k
        psi = halfline.ground_state(L, g)
        annihil = max(annihil, apply_ladder(L, g, "-", psi).norm() / psi.norm())
    checks.append(_check("halfline", "annihilation ||A-psi0||/||psi0||", annihil, tol))
    r = np.linspace(1e-2, 50.0, 1000)
    ric = max(np.abs(halfline.ricatti_residual(cm + k, g, r)).max() for k in range(depth))
    checks.append(_check("halfline", "Ricatti residual", ric, tol))

    states = {(N, L): halfline.build_eigenfunction(N, L, g) for N in Ns for L in allowed_L_values(N, cm)}
    eig = inter = roundtrip = 0.0
    for (N, L), u in states.items():
        e = energy_scaled(N, g)
        res = halfline.apply_radial_hamiltonian(L, g, u) - e * u
        eig = max(eig, res.norm() / u.norm())
        if (N, L + 1) in states:
            lowered = apply_ladder(L, g, "-", u)
            overlap = abs(inner_product(normalize(lowered), states[(N, L + 1)]))
            inter = max(inter, 1.0 - overlap)
            back = apply_ladder(L, g, "+", lowered) - (e + halfline.shift(L, g)) * u
            roundtrip = max(roundtrip, back.norm() / u.norm())
    checks.append(_check("halfline", "eigen-residual ||H u - E u||/||u||", eig, tol))
    checks.append(_check("halfline", "intertwining 1 - |<A-u_NL, u_N(L+1)>|", inter, tol))
    checks.append(_check("halfline", "round trip A+A- u = (E + shift) u", roundtrip, tol))

    ortho = 0.0
    for (N, L), u in states.items():
        for (N2, L2), v in states.items():
            if L2 == L:
                ortho = max(ortho, abs(inner_product(u, v) - (1.0 if N2 == N else 0.0)))
    checks.append(_check("halfline", "orthonormality at fixed L", ortho, _tol(config, ORTHO_TOL)))
    spec = halfline.spectrum(cm, depth, g)
    spread = 0.0
    for N in spec.levels():
        es = {row.energy_analytic for row in spec.rows if row.N == N}
        spread = max(spread, 0.0 if len(es) == 1 else max(es) - min(es))
    checks.append(_check("halfline", "degeneracy: one energy per N", spread, 0.0))
    return checks


def _fullline_checks(config: RunConfig, tol: float) -> list[dict]:
    cm, delta = config.capital_m, config.params.delta
    x = np.linspace(-10.0, 5.0, 1000)
    Ns = [cm + 1 + k for k in range(max(config.depth, 3))]
    ric = 0.0
    for N in Ns:
        a, b = fullline.ricatti_residuals(N, x)
        ric = max(ric, np.abs(a).max(), np.abs(b).max())
    checks = [_check("fullline", "Ricatti residuals (W1 vs V1, V2)", ric, tol)]

    worst = 0.0
    for N in Ns:
        if N > 1:
            p = fullline.partner_map(N, delta)
            worst = max(worst, abs(p.delta_prime / p.n_prime - delta / N) / (delta / N))
    checks.append(_check("fullline", "partner map delta'/N' = delta/N (rel)", worst, _tol(config, 1e-15)))

    morse = 0.0
    for N in Ns:
        for L in allowed_L_values(N, cm):
            psi = fullline.transform_eigenfunction(halfline.build_eigenfunction(N, L, config.gamma), config.gamma)
            xs = np.linspace(-8.0, math.log(N * N) + 3.0, 1000)
            scale = np.abs(psi(xs)).max()
            morse = max(morse, np.abs(psi.morse_residual(N, L, xs)).max() / scale)
    checks.append(_check("fullline", "Morse equation residual (rel)", morse, _tol(config, 1e-8)))

    iso = 0.0
    for N in Ns:
        if N >= 2:
            try:
                rep = fullline.verify_partner_spectra(N, tol=PARTNER_TOL)
                iso = max(iso, rep.match.max_mismatch, rep.analytic_error)
            except (oracle.NonConvergenceError, oracle.SpectrumLengthError):
                iso = math.inf
    checks.append(_check("fullline", "isospectrality V1 (minus ground) vs V2", iso, PARTNER_TOL))
    return checks


def _cmd_verify(config: RunConfig, suite: str) -> int:
    tol = config.tol if config.tol is not None else SYMBOLIC_TOL
    checks = []
    if suite in ("algebra", "all"):
        checks += _algebra_checks(config, tol)
    if suite in ("halfline", "all"):
        checks += _halfline_checks(config, tol)
    if suite in ("fullline", "all"):
        checks += _fullline_checks(config, tol)
    passed = all(c["passed"] for c in checks)
    payload = {"command": "verify", "units": "atomic", "suite": suite, "gamma": config.gamma,
               "capital_m": config.capital_m, "checks": checks, "passed": passed}
    header = {"command": "verify", "units": "atomic", "suite": suite, "gamma": config.gamma,
              "capital_m": config.capital_m, "tolerance": tol}
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  [{c['suite']}] {c['name']}: "
             f"{c['value']:.3e} (tol {c['tol']:.1e})" for c in checks]
    failing = [c["name"] for c in checks if not c["passed"]]
    if failing:
        lines.append("failed: " + "; ".join(failing))
        print("failed checks: " + "; ".join(failing), file=sys.stderr)
    _emit(config, payload, ["suite", "name", "value", "tol", "passed"], checks, header, "\n".join(lines) + "\n")
    return 0 if passed else 1


# -- partner ------------------------------------------------------------------


def _cmd_partner(config: RunConfig, N: float | None) -> int:
    cm, delta = config.capital_m, config.params.delta
    if N is None:
        N = cm + 3
    integer_gap(N - cm)
    p = fullline.partner_map(N, delta)
    bose = [{"sector": "bose", "N": N, "L": L, "delta": delta,
             "susy_eigenvalue": fullline.morse_eigenvalue(L),
             "susy_eigenvalue_shifted": fullline.susy_eigenvalue(N, L),
             "energy_scaled": -(delta**2) / (2 * N**2)}
            for L in allowed_L_values(N, cm)]
    fermi_L = [row["L"] for row in bose[1:]]
    fermi = [{"sector": "fermi", "N": p.n_prime, "L": L, "delta": p.delta_prime,
              "susy_eigenvalue": fullline.morse_eigenvalue(L),
              "susy_eigenvalue_shifted": fullline.susy_eigenvalue(N, L),
              "energy_scaled": -(p.delta_prime**2) / (2 * p.n_prime**2)}
             for L in fermi_L]
    missing = {"N": N, "L": N - 1.0, "susy_eigenvalue_shifted": 0.0}
    payload = {"command": "partner", "units": "atomic", "capital_m": cm, "N": N, "delta": delta,
               "N_prime": p.n_prime, "delta_prime": p.delta_prime, "energy_check": p.energy_check,
               "bose": bose, "fermi": fermi, "missing_ground": missing}
    header = {"command": "partner", "units": "atomic", "capital_m": cm, "N": N, "delta": delta,
              "N_prime": p.n_prime, "delta_prime": p.delta_prime, "energy_check": p.energy_check}
    lines = [f"(N, delta) = ({N:.6g}, {delta:.6g})  ->  (N', delta') = ({p.n_prime:.6g}, {p.delta_prime:.6g})",
             f"delta'/N' - delta/N = {p.energy_check:.3e}",
             f"{'SUSY eigenvalue':>16}  {'bose (N, L, delta)':>30}  {'fermi (N, L, delta)':>30}"]
    fermi_by_L = {row["L"]: row for row in fermi}
    for row in bose:
        f = fermi_by_L.get(row["L"])
        right = "(no partner: ground state)" if f is None else f"({f['N']:.6g}, {f['L']:.6g}, {f['delta']:.6g})"
        lines.append(f"{row['susy_eigenvalue']:>16.6g}  "
                     f"{'(%.6g, %.6g, %.6g)' % (row['N'], row['L'], row['delta']):>30}  {right:>30}")
    _emit(config, payload,
          ["sector", "N", "L", "delta", "susy_eigenvalue", "susy_eigenvalue_shifted", "energy_scaled"],
          bose + fermi, header, "\n".join(lines) + "\n")
    return 0 if p.energy_check == 0.0 or abs(p.energy_check) <= 1e-15 * abs(delta / N) else 1


# -- entry point ----------------------------------------------------------------


def _global_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eta", type=float, default=1.0)
    common.add_argument("--sigma", type=float, default=1.0)
    common.add_argument("--m", type=int, default=0, help="magnetic quantum number")
    common.add_argument("--capital-m", type=float, default=None,
                        help="set |M| directly instead of sqrt(m^2 + eta^2 sigma^2); 0 is the hydrogen-like limit")
    common.add_argument("--depth", type=int, default=3, help="number of N levels")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--out", default=None, help="write to this file instead of stdout")
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance override (oracle rel. tol for spectrum, symbolic tol for verify)")
    common.add_argument("--grid-points", type=int, default=None)
    common.add_argument("--grid-max", type=float, default=None)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="hartmann-susy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="analytic vs finite-difference level table")

    p_ef = sub.add_parser("eigenfunction", parents=[common], help="tabulate u_NL and R_NL")
    p_ef.add_argument("--N", type=float, default=None)
    p_ef.add_argument("--L", type=float, default=None)
    p_ef.add_argument("--nu-prime", type=int, default=0, help="L = |M| + nu'")
    p_ef.add_argument("--n-prime", type=int, default=0, help="N = L + 1 + n'")
    p_ef.add_argument("--samples", type=int, default=200)
    p_ef.add_argument("--r-max", type=float, default=None)

    p_ver = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p_ver.add_argument("--suite", choices=["algebra", "halfline", "fullline", "all"], default="all")

    p_par = sub.add_parser("partner", parents=[common], help="full-line partner map table")
    p_par.add_argument("--N", type=float, default=None, help="level (default |M| + 3)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_args(args)
        if args.command == "spectrum":
            return _cmd_spectrum(config)
        if args.command == "eigenfunction":
            return _cmd_eigenfunction(config, args)
        if args.command == "verify":
            return _cmd_verify(config, args.suite)
        if args.command == "partner":
            return _cmd_partner(config, args.N)
    except (ValueError, QuantumNumberError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
