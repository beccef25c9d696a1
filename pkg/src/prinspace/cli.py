"""Command-line verification runner.

    prinspace character --module vacuum --max-charge 4 --max-weight 20
    prinspace exactness --max-weight 12 --format text
    prinspace all --jobs 4 --cache-dir .cache

Exit status: 0 when every check passes, 1 on a verification failure, 2 on a
usage error.  Reports are deterministic for a given configuration; wall
clock timing is only included with ``--timing``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from prinspace import __version__
from prinspace.cache import ComponentCache
from prinspace.checks import Check, first_failure
from prinspace.fock import (
    ALPHA,
    HALF_ALPHA,
    FockVector,
    basis_states,
    lattice_shift,
    o_operator,
    square_window,
    square_sum,
    x_alpha,
)
from prinspace.ideal import cross_check_hilbert, hilbert_series, verify_S_stability
from prinspace.principal import (
    LAMBDA0,
    LAMBDA1,
    character,
    dimension_table,
    series_check,
    verify_euler,
    verify_exactness,
    verify_shift_relation,
)
from prinspace.series import BivariateSeries, diff2_count, recursion_residual, rr_product, rr_sum

log = logging.getLogger("prinspace")

COMMANDS = ("character", "exactness", "recursion", "hilbert", "identities", "operators", "all")
MODULES = {"vacuum": LAMBDA0, "charged": LAMBDA1}
FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class RunConfig:
    command: str
    module_label: str = "vacuum"
    max_charge: int = 4
    max_weight: int = 20
    format: str = "json"
    out_path: str | None = None
    cache_dir: str | None = None
    jobs: int = 1
    timing: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.module_label not in MODULES:
            raise ValueError(f"unknown module {self.module_label!r}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.max_charge < 0 or self.max_weight < 0:
            raise ValueError("max-charge and max-weight must be nonnegative")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    @property
    def cap4(self) -> int:
        return 4 * self.max_weight

    def echo(self) -> dict:
        # output location and parallelism do not change the verdict, keep them out
        return {
            "module": self.module_label,
            "max_charge": self.max_charge,
            "max_weight": self.max_weight,
        }


@contextmanager
def _mapper(jobs: int):
    if jobs == 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield lambda fn, items: pool.map(fn, items, chunksize=1)


# ---------------------------------------------------------------------------
# per-command verifiers; each returns (checks, series, tables)


def _character(cfg: RunConfig, cache, mapper):
    label = MODULES[cfg.module_label]
    cap4 = cfg.cap4
    table = dimension_table(label, cfg.max_charge, cap4, cache, mapper)
    chi = BivariateSeries(cap4, {(c2, w4): d for _, c2, w4, d in table if d})
    expected = rr_sum(label, cap4, cfg.max_charge)
    if label == LAMBDA1:
        expected = expected.shift(1, 1)
    formula = series_check("character_formula", chi, expected)
    oracle_rows = []
    for _, c2, w4, d in table:
        r, s = c2 // 2, (w4 - label) // 4
        if label == LAMBDA0:
            want = diff2_count(s, r, 1)
        else:
            want = diff2_count(s, r, 2)
        oracle_rows.append({"charge2": c2, "weight4": w4, "dim": d, "oracle": want, "ok": d == want})
    checks = [formula, first_failure("partition_oracle", oracle_rows)]
    tables = {"dimensions": [dict(zip(("label", "charge2", "weight4", "dim"), row)) for row in table]}
    return checks, {"character": chi}, tables


def _exactness(cfg: RunConfig, cache, mapper):
    checks = [verify_exactness(cfg.cap4, None, cache, mapper)]
    return checks, {}, {}


def _recursion(cfg: RunConfig, cache, mapper):
    F = rr_sum(0, cfg.cap4)
    residual = recursion_residual(F)
    check = Check("recursion_residual", not residual, None if not residual else _first_term(residual))
    return [check], {"residual": residual}, {}


def _identities(cfg: RunConfig, cache, mapper):
    checks = []
    for a, residues in ((0, (1, 4)), (1, (2, 3))):
        sum_side = rr_sum(a, cfg.cap4).at_x_equal_one()
        checks.append(series_check(f"rogers_ramanujan_{a + 1}", sum_side, rr_product(residues, cfg.cap4)))
    return checks, {}, {}


def _hilbert(cfg: RunConfig, cache, mapper):
    chi0 = character(LAMBDA0, cfg.max_charge, cfg.cap4, cache, mapper)
    checks = [
        cross_check_hilbert(cfg.max_charge, cfg.cap4, chi0=chi0),
        verify_S_stability(cfg.max_charge, cfg.cap4),
    ]
    return checks, {"hilbert": hilbert_series(cfg.max_charge, cfg.cap4)}, {}


def _operators(cfg: RunConfig, cache, mapper):
    """Square-zero, the lattice shift relation and commutativity on small states."""
    weight4 = min(cfg.cap4, 24)
    lattice = [k for k in range(-6, 7) if k * k <= weight4]
    states = list(basis_states(weight4, lattice))
    vq = [s for s in states if s.k % 2 == 0]

    sq_rows = []
    for st in vq:
        v = FockVector.basis(*st)
        ok = all(square_sum(n, v).is_zero() for n in square_window(v))
        sq_rows.append({"state": str(st), "charge2": st.k, "weight4": st.bidegree.weight4, "ok": ok})

    shift_rows = []
    for st in states:
        v = FockVector.basis(*st)
        for mu in (HALF_ALPHA, ALPHA):
            pair = int(ALPHA.pairing(mu))
            ok = all(
                x_alpha(m, lattice_shift(mu, v)) == lattice_shift(mu, x_alpha(m + pair, v))
                for m in range(-6, 7)
            )
            shift_rows.append({"state": str(st), "mu_k": mu.k, "charge2": st.k, "weight4": st.bidegree.weight4, "ok": ok})

    comm_rows = []
    for st in vq:
        v = FockVector.basis(*st)
        ok = all(o_operator(x_alpha(m, v)) == x_alpha(m, o_operator(v)) for m in range(-5, 3))
        comm_rows.append({"state": str(st), "charge2": st.k, "weight4": st.bidegree.weight4, "ok": ok})

    where = ("state",)
    checks = [
        first_failure("square_zero", sq_rows, where=where),
        first_failure("lattice_shift_relation", shift_rows, where=where),
        first_failure("commutativity", comm_rows, where=where),
    ]
    return checks, {}, {}


def _all(cfg: RunConfig, cache, mapper):
    checks, series, tables = [], {}, {}
    for label in ("vacuum", "charged"):
        sub = RunConfig("character", label, cfg.max_charge, cfg.max_weight)
        c, s, t = _character(sub, cache, mapper)
        for chk in c:
            chk.name = f"{label}_{chk.name}"
        checks += c
        series[f"character_{label}"] = s["character"]
        tables[f"dimensions_{label}"] = t["dimensions"]
    checks.append(verify_shift_relation(cfg.max_charge, cfg.cap4, cache))
    checks += verify_euler(cfg.max_charge, cfg.cap4, cache, mapper)
    checks += _exactness(cfg, cache, mapper)[0]
    checks += _hilbert(cfg, cache, mapper)[0]
    checks += _operators(cfg, cache, mapper)[0]
    checks += _recursion(cfg, cache, mapper)[0]
    checks += _identities(cfg, cache, mapper)[0]
    return checks, series, tables


_DISPATCH = {
    "character": _character,
    "exactness": _exactness,
    "recursion": _recursion,
    "identities": _identities,
    "hilbert": _hilbert,
    "operators": _operators,
    "all": _all,
}


def _first_term(series: BivariateSeries) -> dict:
    bd, coeff = next(series.items())
    return {"charge2": bd.charge2, "weight4": bd.weight4, "coeff": str(coeff)}


# ---------------------------------------------------------------------------
# report rendering


def build_report(cfg: RunConfig, checks, series, tables, elapsed_ms) -> dict:
    return {
        "command": cfg.command,
        "config": cfg.echo(),
        "status": "pass" if all(c.passed for c in checks) else "fail",
        "checks": [c.to_dict() for c in checks],
        "series": {name: s.to_dict() for name, s in series.items()} or None,
        "tables": tables or None,
        "elapsed_ms": elapsed_ms,
        "version": __version__,
    }


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "text":
        return _render_text(report)
    return _render_csv(report)


def _render_text(report: dict) -> str:
    lines = [f"prinspace {report['version']} {report['command']} " + json.dumps(report["config"], sort_keys=True)]
    for chk in report["checks"]:
        where = "" if chk["counterexample"] is None else f"  first failure: {json.dumps(chk['counterexample'], sort_keys=True)}"
        lines.append(f"{chk['status'].upper():4}  {chk['name']}{where}")
    for name, data in (report["series"] or {}).items():
        lines.append(f"{name}: {BivariateSeries.from_dict(data)}")
    if report["elapsed_ms"] is not None:
        lines.append(f"elapsed_ms: {report['elapsed_ms']}")
    lines.append(f"overall: {report['status']}")
    return "\n".join(lines) + "\n"


def _render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    tables = report["tables"] or {}
    if tables:
        writer.writerow(["label", "charge2", "weight4", "dim"])
        for rows in tables.values():
            for row in rows:
                writer.writerow([row["label"], row["charge2"], row["weight4"], row["dim"]])
    else:
        writer.writerow(["check", "status", "counterexample"])
        for chk in report["checks"]:
            ce = "" if chk["counterexample"] is None else json.dumps(chk["counterexample"], sort_keys=True)
            writer.writerow([chk["name"], chk["status"], ce])
    return buf.getvalue()


def run(cfg: RunConfig) -> tuple[dict, int]:
    start = time.perf_counter()
    cache = ComponentCache(cfg.cache_dir)
    with _mapper(cfg.jobs) as mapper:
        checks, series, tables = _DISPATCH[cfg.command](cfg, cache, mapper)
    elapsed = round((time.perf_counter() - start) * 1000) if cfg.timing else None
    report = build_report(cfg, checks, series, tables, elapsed)
    return report, 0 if report["status"] == "pass" else 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prinspace", description="Verify principal-subspace identities exactly.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--module", dest="module_label", choices=sorted(MODULES), default="vacuum")
    parser.add_argument("--max-charge", type=int, default=4)
    parser.add_argument("--max-weight", type=int, default=20, help="weight cap in whole q units")
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--out", dest="out_path")
    parser.add_argument("--cache-dir")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identical output)")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    opts = vars(args)
    opts.pop("verbose")
    try:
        cfg = RunConfig(**opts)
    except ValueError as exc:
        parser.error(str(exc))
    report, code = run(cfg)
    text = render(report, cfg.format)
    if cfg.out_path:
        Path(cfg.out_path).write_text(text)
    else:
        sys.stdout.write(text)
    log.info("%s: %s", cfg.command, report["status"])
    return code


if __name__ == "__main__":
    sys.exit(main())
