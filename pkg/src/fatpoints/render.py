"""Human-readable tables and stable JSON for reports."""

from __future__ import annotations

from .fileio import dump_json


def _grid(rows: list[list]) -> str:
    cells = [[str(c) for c in r] for r in rows]
    width = max(len(r) for r in cells)
    cols = [max(len(r[j]) for r in cells if j < len(r)) for j in range(width)]
    lines = []
    for r in cells:
        lines.append(" | ".join(c.rjust(cols[j]) if j else c.ljust(cols[j]) for j, c in enumerate(r)).rstrip())
    return "\n".join(lines)


def _checks(checks: dict) -> list[str]:
    return [f"  [{'PASS' if ok else 'FAIL'}] {name}" for name, ok in checks.items()]


def _scalar_lines(report: dict, skip=()) -> list[str]:
    out = []
    for k, v in report.items():
        if k in skip or k in ("checks", "ok") or isinstance(v, dict):
            continue
        if isinstance(v, list) and v and isinstance(v[0], (list, dict)):
            continue
        out.append(f"{k}: {v}")
    return out


def render_due001(r: dict) -> str:
    lines = [f"d = {r['d']}: {r['points']} points on the conic x0*x2 = x1^2", ""]
    lines.append(_grid([
        ["t"] + r["t"],
        ["h¹(I_S(t))"] + r["h1_S"],
        ["Δ_S(t)"] + r["delta_S"],
    ]))
    lines.append("")
    ts = sorted(r["h1_2S"], key=int)
    lines.append(_grid([["t"] + ts, ["h¹(I_2S(t))"] + [r["h1_2S"][t] for t in ts]]))
    lines.append("")
    lines += _scalar_lines(r, skip=("t", "h1_S", "delta_S", "h1_2S", "d", "points"))
    lines.append("checks:")
    lines += _checks(r["checks"])
    return "\n".join(lines)


def render_ci_lemma(r: dict) -> str:
    ts = sorted(r["h1"], key=int)
    lines = [f"grid complete intersection of degrees a = {r['a']}, b = {r['b']} (deg W = {r['degree']})", ""]
    lines.append(_grid([["t"] + ts, ["h¹(I_W(t))"] + [r["h1"][t] for t in ts]]))
    if r["vacuous_top"]:
        lines.append(f"a+b-3 = {r['top']}: one-point-removed check is vacuous")
    else:
        lines.append(f"one-point-removed h¹ at t = {r['top']}: {r['one_point_removed_h1']}")
    lines.append("checks:")
    lines += _checks(r["checks"])
    return "\n".join(lines)


def render_due2(r: dict) -> str:
    c = r["c"]
    lines = [f"c = {c}, d = {r['d']} ({r['parity']})", ""]
    rows = [["i"] + list(range(1, c + 1)), ["x_i"] + r["xs"], ["y_i"] + r["ys"] + ["-"]]
    lines.append(_grid(rows))
    if r["steps"]:
        lines.append("")
        keys = ["i", "y", "w", "a", "a_squared", "f_a", "g_2i_plus_1", "g_a_minus_1"]
        lines.append(_grid([keys] + [[s[k] for k in keys] for s in r["steps"]]))
    lines.append("checks:")
    lines += _checks(r["checks"])
    if r.get("audit"):
        lines.append("audit (not part of the verdict):")
        lines += _checks(r["audit"])
    return "\n".join(lines)


def render_probe(r: dict) -> str:
    lines = [
        f"emptiness probe (EVIDENCE ONLY, not a proof): d = {r['d']}, y = {r['y']}",
        f"trials: {r['trials']}  seed: {r['seed']}  generator: {r['generator']}",
        f"found: {r['found']}",
    ]
    by = r.get("by_generator", {})
    if by:
        names = sorted(by)
        lines.append(_grid([["generator", "trials", "terracini", "minimal"]]
                           + [[g, by[g]["trials"], by[g]["terracini"], by[g]["minimal"]] for g in names]))
    for ce in r.get("counterexamples", []):
        lines.append(f"minimal set at trial {ce['trial']} ({ce['generator']}): {ce['points']}")
    return "\n".join(lines)


def render_generic(r: dict) -> str:
    lines = _scalar_lines(r)
    for k, v in r.items():
        if isinstance(v, dict) and k != "checks":
            lines.append(f"{k}:")
            lines += [f"  {kk}: {vv}" for kk, vv in v.items()]
    if "checks" in r:
        lines.append("checks:")
        lines += _checks(r["checks"])
    return "\n".join(lines)


RENDERERS = {
    "due001": render_due001,
    "ci-lemma": render_ci_lemma,
    "due2": render_due2,
    "probe": render_probe,
}


def render_report(report: dict, mode: str = "table", kind: str | None = None) -> str:
    if mode == "json":
        return dump_json(report)
    fn = RENDERERS.get(kind, render_generic)
    return fn(report) + "\n"
