"""Command-line entry point.

Subcommands: simulate, analyze, glue, periodize, reproduce.  All outputs
are deterministic given identical inputs and --seed.  Exit codes:
0 success, 1 property-check failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus, gluing as gl, nillab as nl, render, sysio
from .ca import apply_rule
from .groups import QuotientCtx, Zd
from .periodize import periodize
from .shifts import BudgetExceeded


EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


def build_parser():
    p = argparse.ArgumentParser(
        prog="shiftlab",
        description="symbolic dynamics and cellular automata workbench")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out-dir", default=".", help="artifact directory")
        sp.add_argument("--seed", type=int, default=0, help="sampling seed")
        sp.add_argument("--threads", type=int, default=1,
                        help="worker threads inside library calls")
        sp.add_argument("--render", choices=("pgm", "svg", "png", "none"),
                        default="pgm")

    sp = sub.add_parser("simulate", help="iterate a rule on a configuration")
    sp.add_argument("--system", required=True)
    sp.add_argument("--config", required=True)
    sp.add_argument("--steps", type=int, default=16)
    sp.add_argument("--rule", default=None, help="rule name inside the system file")
    common(sp)

    sp = sub.add_parser("analyze", help="run the nilpotency suite on a system")
    sp.add_argument("--system", required=True)
    sp.add_argument("--horizon", type=int, default=64)
    sp.add_argument("--radius", type=int, default=6)
    sp.add_argument("--rule", default=None)
    common(sp)

    sp = sub.add_parser("glue", help="realize a gluing schedule on a window")
    sp.add_argument("--system", required=True)
    sp.add_argument("--schedule", required=True,
                    help="JSON schedule: {R, entries: [...]} ")
    sp.add_argument("--window", default="0,0,19,19",
                    help="x_lo,y_lo,x_hi,y_hi")
    common(sp)

    sp = sub.add_parser("periodize", help="periodize a finite-support point")
    sp.add_argument("--system", required=True)
    sp.add_argument("--config", required=True)
    sp.add_argument("--direction", default="0,1",
                    help="basis vector of the periodization subgroup")
    sp.add_argument("--radius", type=int, default=1,
                    help="agreement window radius")
    common(sp)

    sp = sub.add_parser("reproduce", help="run a registered example bundle")
    sp.add_argument("name", choices=corpus.example_names())
    common(sp)

    return p


def _pick_rule(system, name):
    if not system.rules:
        raise sysio.FormatError("system file declares no rules")
    if name is None:
        name = sorted(system.rules)[0]
    if name not in system.rules:
        raise sysio.FormatError(f"no rule named {name!r} in system file")
    return system.rules[name]


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)
    return path


def cmd_simulate(args):
    system = sysio.load_system(args.system)
    rule = _pick_rule(system, args.rule)
    x = sysio.load_config(args.config, system)
    os.makedirs(args.out_dir, exist_ok=True)

    y = x
    snapshots = [sysio.config_to_obj(y)]
    for _ in range(args.steps):
        y = apply_rule(rule, y)
        snapshots.append(sysio.config_to_obj(y))
    out = {"steps": args.steps, "final": snapshots[-1],
           "final_is_zero": y.is_zero()}
    _write(os.path.join(args.out_dir, "simulate.json"), sysio.dumps(out))

    if args.render != "none" and isinstance(rule.ctx, Zd) and rule.ctx.d == 1:
        cells = set()
        for snap in (x, y):
            cells.update(g[0] for g in snap.support())
        if not cells:
            cells = {0}
        spread = max(abs(n[0]) for n in rule.neighborhood)
        lo = min(cells) - spread * args.steps - 1
        hi = max(cells) + spread * args.steps + 1
        window = [(i,) for i in range(lo, hi + 1)]
        rows = render.spacetime_rows(rule, x, args.steps, window)
        n = len(rule.alphabet)
        if args.render == "pgm":
            render.write_pgm(os.path.join(args.out_dir, "spacetime.pgm"), rows, n)
        elif args.render == "svg":
            render.write_svg(os.path.join(args.out_dir, "spacetime.svg"), rows, n)
        elif args.render == "png":
            render.write_spacetime_png(
                os.path.join(args.out_dir, "spacetime.png"), rows, n)
    print(f"simulate: {args.steps} steps, final support "
          f"{len(y.support())} cells")
    return EXIT_OK


def cmd_analyze(args):
    system = sysio.load_system(args.system)
    rule = _pick_rule(system, args.rule)
    os.makedirs(args.out_dir, exist_ok=True)
    report = {"rule": rule.name or "rule", "horizon": args.horizon,
              "radius": args.radius}

    if isinstance(rule.ctx, Zd) and rule.ctx.d == 1:
        res = nl.bounded_nilpotency(rule, 4)
        if res == nl.YES_ALL_ZERO:
            report["bounded_nilpotency"] = {"verdict": "YesAllZero"}
        else:
            report["bounded_nilpotency"] = {
                "verdict": "No", "witness_word": list(res.word)}

        cert = nl.spaceship_search(rule, system.shift,
                                   radius=min(args.radius, 3),
                                   horizon=min(args.horizon, 16))
        if cert is None:
            report["spaceship"] = None
        else:
            report["spaceship"] = {
                "period": cert.period,
                "translation": list(cert.translation),
                "seed": sysio.config_to_obj(cert.config),
                "verified": cert.verify(rule),
            }

        profile = nl.uniform_mortality_profile(rule, system.shift,
                                               r_max=args.radius,
                                               horizon=args.horizon)
        report["mortality_profile"] = {
            str(r): {"worst": v[0], "exhaustive": v[1], "alive": v[2]}
            for r, v in profile.entries.items()}
        # report artifacts: delimited table plus the rendered figure
        render.write_profile_csv(os.path.join(args.out_dir, "profile.csv"),
                                 profile)
        if args.render != "none":
            render.write_profile_png(os.path.join(args.out_dir, "profile.png"),
                                     profile)

        q = QuotientCtx(Zd(1), [[4]])
        fs = nl.finite_system_checks(rule, q, eps_window=[(0,)])
        report["finite_ring"] = {
            "modulus": 4,
            "weak_nilpotent": fs.weak_nilpotent,
            "nilpotent": fs.nilpotent,
            "nilpotency_bound": fs.nilpotency_bound,
            "holes_bound": fs.holes_bound,
        }
        if fs.weak_nilpotent:
            report["verdict"] = {"kind": "Nilpotent", "scope": "ring Z_4",
                                 "steps": fs.nilpotency_bound}
        elif report["spaceship"]:
            report["verdict"] = {"kind": "NotNilpotent",
                                 "witness": "spaceship"}
        else:
            report["verdict"] = {"kind": "Unknown", "horizon": args.horizon}
    else:
        report["note"] = "full analyze suite is one-dimensional; see reproduce"

    path = _write(os.path.join(args.out_dir, "analyze.json"),
                  sysio.dumps(report))
    print(f"analyze: report written to {path}")
    return EXIT_OK


def _parse_window(text):
    x_lo, y_lo, x_hi, y_hi = (int(v) for v in text.split(","))
    return gl.RectRegion(x_lo, x_hi, y_lo, y_hi)


def cmd_glue(args):
    system = sysio.load_system(args.system)
    with open(args.schedule) as fh:
        sched_obj = json.load(fh)
    entries = []
    for e in sched_obj.get("entries", []):
        if "pattern" in e:
            entries.append(gl.PatternPlacement(
                tuple(e.get("offset", (0, 0))),
                sysio.pattern_from_obj(e["pattern"], system.group)))
        elif "fill" in e:
            r = e["region"]
            entries.append(gl.RegionFill(
                gl.RectRegion(r.get("x_lo"), r.get("x_hi"),
                              r.get("y_lo"), r.get("y_hi")),
                e["fill"]))
        else:
            raise sysio.FormatError("schedule entry needs 'pattern' or 'fill'")
    schedule = gl.GluingSchedule(entries, int(sched_obj.get("R", 0)))
    window = _parse_window(args.window)
    os.makedirs(args.out_dir, exist_ok=True)
    pattern = gl.ordinal_glue(schedule, system.shift, window)
    out = {"window": [window.x_lo, window.y_lo, window.x_hi, window.y_hi],
           "pattern": sysio.pattern_to_obj(pattern, system.group)}
    _write(os.path.join(args.out_dir, "glued.json"), sysio.dumps(out))
    rows = render.pattern_rows(pattern, system.shift.alphabet,
                               list(window.iter_cells()))
    n = len(system.shift.alphabet)
    if args.render == "pgm":
        render.write_pgm(os.path.join(args.out_dir, "glued.pgm"), rows, n)
    elif args.render == "svg":
        render.write_svg(os.path.join(args.out_dir, "glued.svg"), rows, n)
    elif args.render == "png":
        render.write_spacetime_png(os.path.join(args.out_dir, "glued.png"),
                                   rows, n, title="glued window")
    print("glue: window realized")
    return EXIT_OK


def cmd_periodize(args):
    system = sysio.load_system(args.system)
    y = sysio.load_config(args.config, system)
    vec = tuple(int(v) for v in args.direction.split(","))
    if not isinstance(system.group, Zd):
        raise sysio.FormatError("periodize needs a Z^d system")
    direction = QuotientCtx(system.group, [list(vec)])
    window = [g for g in system.group.ball(args.radius)]
    os.makedirs(args.out_dir, exist_ok=True)
    res = periodize(y, direction, system.shift, window=window)
    out = {
        "lattice_basis": [list(r) for r in res.lattice.basis],
        "modulus": res.modulus,
        "point": sysio.config_to_obj(res.point),
        "report": {k: v for k, v in res.report.items()},
    }
    path = _write(os.path.join(args.out_dir, "periodize.json"),
                  sysio.dumps(out))
    ok = all(res.report[k] for k in ("periodic", "window_agrees",
                                     "shadow_contained"))
    print(f"periodize: report written to {path}")
    return EXIT_OK if ok else EXIT_PROPERTY_FAILURE


def _reproduce_artifacts(bundle, out_dir, render_kind):
    """Diagrams and certificates for a bundle's canonical sample orbit."""
    rules = [r for r in bundle.rules.values()
             if isinstance(r.ctx, Zd) and r.ctx.d == 1]
    if not rules or render_kind == "none":
        return
    rule = rules[0]
    from shiftlab.shifts import FiniteConfig
    seed = FiniteConfig(rule.ctx, rule.alphabet,
                        {(i,): rule.alphabet.symbols[1] for i in range(4)})
    steps = 12
    window = [(i,) for i in range(-steps - 1, 4 + steps + 2)]
    rows = render.spacetime_rows(rule, seed, steps, window)
    n = len(rule.alphabet)
    base = os.path.join(out_dir, f"{bundle.name}-spacetime")
    if render_kind == "svg":
        render.write_svg(base + ".svg", rows, n)
    elif render_kind == "png":
        render.write_spacetime_png(base + ".png", rows, n, title=bundle.name)
    else:
        render.write_pgm(base + ".pgm", rows, n)
    cert = nl.spaceship_search(rule, bundle.shift, radius=1, horizon=8)
    if cert is not None:
        _write(os.path.join(out_dir, f"{bundle.name}-certificate.json"),
               sysio.dumps({
                   "period": cert.period,
                   "translation": list(cert.translation),
                   "seed": sysio.config_to_obj(cert.config),
                   "verified": cert.verify(rule),
               }))


def cmd_reproduce(args):
    bundle = corpus.load_example(args.name)
    os.makedirs(args.out_dir, exist_ok=True)
    results = bundle.run_properties()
    rows = []
    failed = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] {args.name}: {name}")
        rows.append([args.name, name, status])
        if not ok:
            failed += 1
    render.write_report_csv(os.path.join(args.out_dir, f"{args.name}.csv"),
                            rows, ["bundle", "property", "status"])
    report = {"bundle": args.name,
              "results": [{"property": n, "ok": ok} for n, ok, _ in results]}
    _write(os.path.join(args.out_dir, f"{args.name}.json"),
           sysio.dumps(report))
    _reproduce_artifacts(bundle, args.out_dir, args.render)
    return EXIT_OK if failed == 0 else EXIT_PROPERTY_FAILURE


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "simulate": cmd_simulate,
        "analyze": cmd_analyze,
        "glue": cmd_glue,
        "periodize": cmd_periodize,
        "reproduce": cmd_reproduce,
    }
    try:
        return handlers[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (sysio.FormatError, FileNotFoundError, json.JSONDecodeError,
            KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
