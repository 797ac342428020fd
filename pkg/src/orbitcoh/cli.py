"""Command line front end: ``orbitcoh {classify,pages,gysin,coindex,involution}``.

Exit codes: 0 success, 1 internal error, 2 unsupported or invalid input,
3 when some surviving scenario matches no candidate algebra (the report is
still printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import InvalidParam, OrbitCohError
from .exact_sequences import (
    Composite,
    GysinInstance,
    char_class_zero_composite,
    enumerate_exact_profiles,
)
from .graded_rings import (
    UNBOUNDED,
    Presentation,
    compute_basis,
    nilpotency_order,
    parse_presentation,
    standard_space,
)
from .lens_geometry import (
    ActionParams,
    alpha,
    alpha_is_free_on,
    alpha_power,
    composite_is_z2p,
    grid_checks,
    parse_point,
    phase_grid,
    zp_act,
)
from .reconstruct import borsuk_bound
from .scenario_search import BranchReport, Scenario, SearchReport, classify, replay_paper_case
from .spectral import FiberAlgebra, Page, Window

EXIT_OK, EXIT_INTERNAL, EXIT_UNSUPPORTED, EXIT_NOMATCH = 0, 1, 2, 3

SUBCOMMANDS = ("classify", "pages", "gysin", "coindex", "involution")


def dispatch_by_p(p: int, m: int) -> tuple[str, int]:
    """Which mod-2 type ``L_p^{2m-1}`` has: a sphere, a projective space or a lens space."""
    if p < 2 or m < 1:
        raise InvalidParam(f"need p >= 2 and m >= 1, got p={p}, m={m}")
    if p % 2:
        return ("sphere", 2 * m - 1)
    if p % 4 == 2:
        return ("rp", 2 * m - 1)
    return ("lens", m)


def _int_list(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise InvalidParam(f"expected comma-separated integers, got {text!r}") from None


@dataclass
class RunConfig:
    subcommand: str
    fiber: str | None = None
    n: int | None = None
    m: int | None = None
    p: int | None = None
    presentation: str | None = None
    assume_trivial_action: bool = False
    case: str | None = None
    q: tuple[int, ...] | None = None
    denominator: int = 48
    point: str | None = None
    orbit: tuple[int, ...] | None = None
    space: tuple[int, ...] | None = None
    klass: str = "x"
    kmax: int | None = None
    json: bool = False

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise InvalidParam(f"unknown subcommand {self.subcommand!r}")
        if self.subcommand in ("classify", "pages"):
            groups = [self.fiber is not None, self.p is not None, self.presentation is not None]
            if self.case is not None and not any(groups):
                self.fiber = "lens"
                groups[0] = True
            if sum(groups) != 1:
                raise InvalidParam("give exactly one of --fiber, --p or --presentation")
            if self.fiber is not None:
                if self.fiber not in ("sphere", "rp", "lens"):
                    raise InvalidParam(f"unknown fiber {self.fiber!r}")
                need = "m" if self.fiber == "lens" else "n"
                if getattr(self, need) is None:
                    raise InvalidParam(f"--fiber {self.fiber} needs --{need}")
            if self.p is not None and self.m is None:
                raise InvalidParam("--p needs --m")
            if self.kmax is not None and self.kmax < 0:
                raise InvalidParam("--kmax must be non-negative")
        elif self.subcommand == "gysin":
            if self.orbit is None or self.space is None:
                raise InvalidParam("gysin needs --orbit and --space")
        elif self.subcommand == "coindex":
            if self.presentation is None:
                raise InvalidParam("coindex needs --presentation")
        elif self.subcommand == "involution":
            if self.p is None or self.m is None:
                raise InvalidParam("involution needs --p and --m")
            if self.q is None:
                self.q = (1,) * self.m
            if len(self.q) != self.m:
                raise InvalidParam(f"--q has {len(self.q)} entries but m={self.m}")
            if self.denominator < 1:
                raise InvalidParam("--denominator must be positive")

    # -- fibre selection ------------------------------------------------------

    def fiber_presentation(self) -> tuple[Presentation, dict[str, Any]]:
        info: dict[str, Any] = {}
        if self.presentation is not None:
            pres = parse_presentation(self.presentation)
            info["kind"] = "presentation"
        else:
            if self.p is not None:
                kind, param = dispatch_by_p(self.p, self.m)
                info.update(p=self.p, m=self.m)
            else:
                kind = self.fiber
                param = self.m if kind == "lens" else self.n
            pres = standard_space(kind, param)
            info["kind"] = kind
            info["m" if kind == "lens" else "n"] = param
        info["fiber"] = pres.to_text()
        return pres, info

    def window_for(self, pres: Presentation) -> Window | None:
        if self.kmax is None:
            return None
        top = FiberAlgebra(pres, assume_trivial_action=True).top
        return Window(self.kmax, top)


# -- rendering -------------------------------------------------------------------


def _table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)


def _match_json(sc: Scenario) -> list[dict[str, Any]]:
    out = []
    for c in sc.matches:
        entry: dict[str, Any] = {"family": c.family, "m": c.m}
        if c.lam is not None:
            entry["lambda"] = c.lam
        entry["coindex"] = sc.report.coindex
        entry["borsuk_bound"] = sc.report.borsuk_bound
        out.append(entry)
    return out


def _nil(v) -> Any:
    return "unbounded" if v is UNBOUNDED else v


def scenario_json(sc: Scenario) -> dict[str, Any]:
    out: dict[str, Any] = {
        "branch": sc.label,
        "status": sc.status,
        "totals": list(sc.totals) if sc.totals is not None else None,
        "matches": _match_json(sc),
    }
    if not sc.survived:
        out["reason"] = sc.reason
        out["witness"] = sc.witness
    else:
        out["x_nilpotency"] = _nil(sc.nilpotency)
    return out


def _scenarios_text(scenarios: Sequence[Scenario]) -> str:
    rows = []
    for i, sc in enumerate(scenarios):
        if sc.survived:
            found = ", ".join(c.name for c in sc.matches) or "no match"
            rows.append([i, sc.status, "", ",".join(map(str, sc.totals)), _nil(sc.nilpotency), found])
        else:
            rows.append([i, sc.status, sc.reason, "", "", ""])
    parts = [_table(["#", "status", "reason", "totals", "x-nil", "matches"], rows), ""]
    for i, sc in enumerate(scenarios):
        parts.append(f"[{i}] {sc.label}")
        if sc.witness:
            parts.append(f"    {sc.witness}")
        if sc.survived and sc.matches:
            parts.append(f"    co-index {sc.report.coindex}, no equivariant map S^n -> X for n >= {sc.report.borsuk_bound}")
        if sc.survived and not sc.matches and sc.report is not None:
            parts.extend("    " + line for line in sc.report.diagnostic.splitlines())
    return "\n".join(parts)


def _page_grid(page: Page, kshow: int) -> str:
    lmax = page.window.lmax
    headers = ["l\\k"] + [str(k) for k in range(kshow + 1)]
    rows = []
    for l in range(lmax, -1, -1):
        rows.append([l] + [page.dim(k, l) or "." for k in range(kshow + 1)])
    return _table(headers, rows)


def _page_json(page: Page) -> list[dict[str, Any]]:
    return [
        {"k": k, "l": l, "dim": d, "basis": page.basis_labels(k, l)}
        for (k, l), d in sorted(page.dims().items())
    ]


# -- subcommands -------------------------------------------------------------------


def _run_classify(cfg: RunConfig) -> tuple[int, str]:
    pres, info = cfg.fiber_presentation()
    report: SearchReport = classify(pres, window=cfg.window_for(pres), assume_trivial_action=cfg.assume_trivial_action)
    info["kmax"] = report.window.kmax
    code = EXIT_NOMATCH if report.has_unmatched else EXIT_OK
    if cfg.json:
        return code, _dump({"input": info, "scenarios": [scenario_json(s) for s in report.scenarios]})
    head = f"fibre {info['fiber']}  window k<={report.window.kmax}\n"
    head += f"{len(report.survivors)} surviving, {len(report.pruned)} pruned\n"
    return code, head + "\n" + _scenarios_text(report.scenarios)


def _run_pages(cfg: RunConfig) -> tuple[int, str]:
    if cfg.case is not None:
        if cfg.fiber not in (None, "lens") or cfg.m is None:
            raise InvalidParam("--case replays a lens-fibre branch and needs --m")
        pres, info = cfg.fiber_presentation()
        branch: BranchReport = replay_paper_case(cfg.case, cfg.m, cfg.window_for(pres))
        info["case"] = branch.case
        scenarios = branch.scenarios
    else:
        pres, info = cfg.fiber_presentation()
        scenarios = classify(pres, window=cfg.window_for(pres), assume_trivial_action=cfg.assume_trivial_action).scenarios
    if cfg.json:
        body = []
        for sc in scenarios:
            entry = scenario_json(sc)
            entry["pages"] = {str(p.r): _page_json(p) for p in sc.pages}
            body.append(entry)
        return EXIT_OK, _dump({"input": info, "scenarios": body})
    parts = []
    for i, sc in enumerate(scenarios):
        status = sc.status if sc.survived else f"{sc.status} ({sc.reason})"
        parts.append(f"[{i}] {sc.label}: {status}")
        seen = set()
        for page in sc.pages:
            key = tuple(sorted(page.dims().items()))
            if key in seen:
                continue
            seen.add(key)
            kshow = min(page.window.kmax, 2 * page.window.lmax + 3)
            parts.append(f"E_{page.r}")
            parts.append(_page_grid(page, kshow))
        if sc.witness:
            parts.append(f"    {sc.witness}")
        parts.append("")
    return EXIT_OK, "\n".join(parts)


def _run_gysin(cfg: RunConfig) -> tuple[int, str]:
    inst = GysinInstance.of(cfg.orbit, cfg.space)
    profiles = enumerate_exact_profiles(inst)
    square = [char_class_zero_composite(p, 1).value for p in profiles]
    if cfg.json:
        body = {
            "input": {"orbit": list(inst.orbit), "space": list(inst.space)},
            "profiles": [
                {"eta": list(p.eta), "transfer": list(p.transfer), "cup_v": list(p.cup_v), "v_squared": sq}
                for p, sq in zip(profiles, square)
            ],
        }
        return EXIT_OK, _dump(body)
    if not profiles:
        return EXIT_OK, "no exact rank profile"
    parts = []
    for p, sq in zip(profiles, square):
        rows = [[i, inst.orbit[i], inst.space[i], p.eta[i], p.transfer[i], p.cup_v[i]] for i in range(len(inst.orbit))]
        parts.append(_table(["i", "H^i(X/G)", "H^i(X)", "rank eta", "rank tau", "rank .v"], rows))
        zero = "forced zero" if sq == Composite.FORCED_ZERO.value else "not determined"
        parts.append(f"v^2: {zero}")
    return EXIT_OK, f"{len(profiles)} profile(s)\n" + "\n".join(parts)


def _run_coindex(cfg: RunConfig) -> tuple[int, str]:
    pres = parse_presentation(cfg.presentation)
    ring = compute_basis(pres)
    element = ring.element(cfg.klass)
    if element.degree != 1:
        raise InvalidParam(f"class {cfg.klass!r} has degree {element.degree}, expected 1")
    nil = nilpotency_order(element)
    if nil is UNBOUNDED:
        raise InvalidParam(f"{cfg.klass} is not nilpotent below the cap {pres.degree_cap}; raise the cap")
    ci = nil - 1
    body = {"presentation": pres.to_text(), "class": cfg.klass, "coindex": ci, "borsuk_bound": borsuk_bound(ci)}
    if cfg.json:
        return EXIT_OK, _dump(body)
    return EXIT_OK, (
        f"{pres.to_text()}\nco-index {ci}  (x^{ci} != 0, x^{nil} = 0)\n"
        f"no equivariant map S^n -> X for n >= {borsuk_bound(ci)}"
    )


def _run_involution(cfg: RunConfig) -> tuple[int, str]:
    params = ActionParams(cfg.p, cfg.q)
    params.check_alpha()
    grid = phase_grid(cfg.m, cfg.denominator)
    rep = grid_checks(grid, params)
    body: dict[str, Any] = {
        "input": {"p": cfg.p, "m": cfg.m, "q": list(cfg.q), "denominator": cfg.denominator},
        "points": rep.points,
        "alpha_squared_is_generator": rep.alpha_squared_is_generator,
        "alpha_free": rep.alpha_free,
        "alpha_order_2p": rep.alpha_order_2p,
    }
    ok = rep.passed
    if cfg.point is not None:
        pt = parse_point(cfg.point)
        free = alpha_is_free_on([pt], params)
        comp = composite_is_z2p([pt], params)
        body["point"] = {
            "point": str(pt),
            "alpha": str(alpha(pt, params)),
            "alpha_squared": str(alpha_power(pt, 2, params)),
            "generator": str(zp_act(pt, 1, params)),
            "free": bool(free),
            "z2p": bool(comp),
        }
        ok = ok and bool(free) and bool(comp)
    code = EXIT_OK if ok else EXIT_INTERNAL
    if cfg.json:
        return code, _dump(body)
    verdict = lambda b: "Pass" if b else "Fail"  # noqa: E731
    lines = [
        f"p={cfg.p} q={','.join(map(str, cfg.q))} grid 1/{cfg.denominator}: {rep.points} points",
        f"alpha^2 = generator of Z_p: {verdict(rep.alpha_squared_is_generator)}",
        f"alpha^(2p) = identity:      {verdict(rep.alpha_order_2p)}",
        f"freeness:                   {verdict(rep.alpha_free)}",
    ]
    if rep.first_fixed is not None:
        lines.append(f"first fixed orbit: {rep.first_fixed}")
    if "point" in body:
        for key, val in body["point"].items():
            lines.append(f"  {key}: {val}")
    return code, "\n".join(lines)


_RUNNERS = {
    "classify": _run_classify,
    "pages": _run_pages,
    "gysin": _run_gysin,
    "coindex": _run_coindex,
    "involution": _run_involution,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one subcommand; errors come back as a single ``error: ...`` line."""
    try:
        config.validate()
        return _RUNNERS[config.subcommand](config)
    except OrbitCohError as exc:
        return EXIT_UNSUPPORTED, f"error: {type(exc).__name__}: {_one_line(exc)}"
    except Exception as exc:  # pragma: no cover - last resort
        return EXIT_INTERNAL, f"error: internal: {type(exc).__name__}: {_one_line(exc)}"


def _one_line(exc: BaseException) -> str:
    return " ".join(str(exc).split())


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbitcoh", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def fiber_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--fiber", choices=("sphere", "rp", "lens"))
        p.add_argument("--n", type=int, help="dimension for sphere and rp fibres")
        p.add_argument("--m", type=int, help="lens parameter; the space has dimension 2m-1")
        p.add_argument("--p", type=int, help="order of the cyclic group; picks the fibre type")
        p.add_argument("--presentation", help="a ring in text form, e.g. 'ring F2[a:1]/(a^4) cap 3'")
        p.add_argument("--assume-trivial-action", action="store_true")
        p.add_argument("--kmax", type=int, help="override the window's largest base degree")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="search all differential patterns for a fibre")
    fiber_opts(p)
    p = sub.add_parser("pages", help="print the pages of each branch")
    fiber_opts(p)
    p.add_argument("--case", choices=("a", "b", "c"), help="replay one d_2 pattern on the lens fibre")
    p = sub.add_parser("gysin", help="rank profiles of the Smith-Gysin sequence")
    p.add_argument("--orbit", required=True, help="dims of H^i(X/G), comma separated")
    p.add_argument("--space", required=True, help="dims of H^i(X), comma separated")
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("coindex", help="co-index of a degree-one class")
    p.add_argument("--presentation", required=True)
    p.add_argument("--class", dest="klass", default="x")
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("involution", help="check the lifted involution on a lens space")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", help="odd entries coprime to p, comma separated (default all 1)")
    p.add_argument("--denominator", type=int, default=48)
    p.add_argument("--point", help="also check one point, e.g. 'zero,1/8'")
    p.add_argument("--json", action="store_true")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d = vars(ns)
    return RunConfig(
        subcommand=d["subcommand"],
        fiber=d.get("fiber"),
        n=d.get("n"),
        m=d.get("m"),
        p=d.get("p"),
        presentation=d.get("presentation"),
        assume_trivial_action=d.get("assume_trivial_action", False),
        case=d.get("case"),
        q=_int_list(d.get("q")),
        denominator=d.get("denominator", 48),
        point=d.get("point"),
        orbit=_int_list(d.get("orbit")),
        space=_int_list(d.get("space")),
        klass=d.get("klass", "x"),
        kmax=d.get("kmax"),
        json=d.get("json", False),
    )


def main(argv: Sequence[str] | None = None) -> int:
    ns = _parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except OrbitCohError as exc:
        print(f"error: {type(exc).__name__}: {_one_line(exc)}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    code, text = run(cfg)
    stream = sys.stderr if text.startswith("error:") else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
