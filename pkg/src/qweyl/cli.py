"""Batch command-line driver.

Every subcommand reads a run configuration from flags, performs either a
computation (series expansions, operator images) or a verification sweep
(involution, braid, kernel, equivariance, ...), and writes a single report
to stdout.  JSON reports follow the ``qweyl-report/1`` schema shipped next
to this module and are byte-identical for identical configurations, seed
included.  Exit status: 0 when every check passed, 1 when a check failed,
2 on configuration errors (no partial output in that case).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from .chari import chari_t, chari_t_poly, lambda_theta
from .classical import check_equivariance, format_y_mono, varpi_pi
from .laurent import (Mono, Poly, format_mono, format_poly, mono_from_json,
                      parse_expr, poly_to_json, y_mono)
from .qchar import t_elt
from .qdiff import iterated_sigma, sigma
from .rootsystem import build_cartan, weyl_from_word
from .screening import in_kernel, screen, theta_deform_linear_term
from .series import embed
from .weylaction import (ThetaContext, theta_on_pi, verify_braid,
                         verify_involution)

SCHEMA_ID = "qweyl-report/1"

COMMANDS = ("sigma", "iterated-sigma", "theta", "involution", "braid",
            "fixed-elements", "screen", "kernel", "deform-check",
            "classical", "equivariance", "chari", "lambda")


class ConfigError(Exception):
    pass


class RunConfig:
    __slots__ = ("cartan", "tname", "order", "words", "node", "base",
                 "expr", "fmt", "seed", "jobs")

    def __init__(self, cartan, tname, order, words, node, base, expr,
                 fmt, seed, jobs):
        self.cartan = cartan
        self.tname = tname
        self.order = order
        self.words = words
        self.node = node
        self.base = base
        self.expr = expr
        self.fmt = fmt
        self.seed = seed
        self.jobs = jobs

    @property
    def w_text(self) -> str:
        return ";".join(w.word_str() for w in self.words)


# -- sampling (shared with the acceptance suite) ----------------------------

def sample_monos(cartan, seed: int, count: int, span: int = 4):
    """Deterministic monomial sample; same seed, same list."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        pairs: dict = {}
        for _ in range(rng.randint(1, 3)):
            key = (rng.randint(1, cartan.rank), rng.randint(-span, span))
            pairs[key] = pairs.get(key, 0) + rng.choice([-2, -1, 1, 1, 2])
        out.append(Mono(pairs.items()))
    return out


def sample_polys(cartan, seed: int, count: int, degree: int = 3, span: int = 4):
    """Deterministic polynomials of total degree <= degree per monomial."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        terms: dict = {}
        for _ in range(rng.randint(1, 4)):
            pairs: dict = {}
            for _ in range(rng.randint(1, degree)):
                key = (rng.randint(1, cartan.rank), rng.randint(-span, span))
                pairs[key] = pairs.get(key, 0) + rng.choice([-1, 1])
            m = Mono(pairs.items())
            c = terms.get(m, 0) + rng.randint(-3, 3)
            if c:
                terms[m] = c
            elif m in terms:
                del terms[m]
        out.append(Poly(terms) if terms else Poly.from_mono(y_mono(1, 0)))
    return out


# -- row plumbing ------------------------------------------------------------

def _row(relation, tname, w, generator, order, mismatch):
    r = {"relation": relation, "type": tname, "w": w, "generator": generator,
         "order": order, "status": "pass" if mismatch is None else "fail"}
    if mismatch is not None:
        r["firstMismatch"] = json.dumps(mismatch, sort_keys=True, default=repr)
    return r


def _run_tasks(tasks, jobs: int):
    if jobs <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: t(), tasks))


def _gens(cartan, base: int, signs=(1, -1)):
    return [y_mono(j, base, s)
            for j in range(1, cartan.rank + 1) for s in signs]


# -- commands ----------------------------------------------------------------

def cmd_sigma(cfg: RunConfig):
    i = cfg.node or 1
    results, lines = [], []
    for w in cfg.words:
        s = sigma(w, i, cfg.base, cfg.order)
        results.append({"kind": "sigma", "node": i, "base": cfg.base,
                        "series": s.to_json()})
        lines.extend(_series_lines(f"Sigma[{i},{cfg.base}]", s.to_json()))
    return [], results, lines


def cmd_iterated_sigma(cfg: RunConfig):
    if not cfg.expr:
        raise ConfigError("iterated-sigma needs --expr with the tower word, e.g. --expr 2,1")
    word = _parse_word_text(cfg.expr)
    results, lines = [], []
    for w in cfg.words:
        s = iterated_sigma(w, word, cfg.base, cfg.order)
        results.append({"kind": "iterated-sigma",
                        "word": ",".join(map(str, word)), "base": cfg.base,
                        "series": s.to_json()})
        label = "Sigma[" + "".join(map(str, word)) + f",{cfg.base}]"
        lines.extend(_series_lines(label, s.to_json()))
    return [], results, lines


def cmd_theta(cfg: RunConfig):
    i = cfg.node or 1
    poly = _input_poly(cfg, default=y_mono(i, cfg.base))
    ctx = ThetaContext(cfg.cartan, cfg.order)
    results, lines = [], []
    for w in cfg.words:
        img = theta_on_pi(embed(poly, w, cfg.order), i, ctx)
        results.append({"kind": "theta", "node": i, "pi": img.to_json()})
        lines.append(f"Theta_{i} from w={w.word_str()} "
                     f"-> w={img.w.word_str()}, {len(img.parts)} part(s)")
        for p in img.parts:
            lines.extend(_series_lines("part", p.to_json()))
    return [], results, lines


def cmd_involution(cfg: RunConfig):
    cd = cfg.cartan
    ctx = ThetaContext(cd, cfg.order)
    tasks = []
    for w in cfg.words:
        for i in _nodes(cfg):
            for g in _gens(cd, cfg.base):
                tasks.append(lambda w=w, i=i, g=g: _row(
                    f"involution:{i}", cfg.tname, w.word_str(),
                    format_mono(g), cfg.order,
                    verify_involution(w, i, Poly.from_mono(g), cfg.order, ctx)))
    return _run_tasks(tasks, cfg.jobs), [], []


def cmd_braid(cfg: RunConfig):
    cd = cfg.cartan
    if cd.rank != 2:
        raise ConfigError("braid checks need a rank-2 Cartan type")
    ctx = ThetaContext(cd, cfg.order)
    tasks = []
    for w in cfg.words:
        for j in (1, 2):
            g = y_mono(j, cfg.base)
            tasks.append(lambda w=w, g=g: _row(
                "braid:1,2", cfg.tname, w.word_str(), format_mono(g),
                cfg.order,
                verify_braid(cd, 1, 2, Poly.from_mono(g), cfg.order, ctx, w=w)))
    return _run_tasks(tasks, cfg.jobs), [], []


def cmd_fixed_elements(cfg: RunConfig):
    cd = cfg.cartan
    ctx = ThetaContext(cd, cfg.order)
    tasks = []
    for w in cfg.words:
        for i in _nodes(cfg):
            for length in range(1, 6):
                def task(w=w, i=i, length=length):
                    t = t_elt(cd, i, cfg.base, length)
                    lhs = theta_on_pi(embed(t, w, cfg.order), i, ctx).normalized()
                    rhs = embed(t, w.times_s(i), cfg.order).normalized()
                    return _row(f"fixed:{i}", cfg.tname, w.word_str(),
                                f"T({length})[{i},{cfg.base}]", cfg.order,
                                lhs.compare(rhs))
                tasks.append(task)
    return _run_tasks(tasks, cfg.jobs), [], []


def cmd_screen(cfg: RunConfig):
    if not cfg.expr:
        raise ConfigError("screen needs --expr")
    i = cfg.node or 1
    poly = parse_expr(cfg.expr, cfg.cartan)
    s = screen(cfg.cartan, i, poly).canonical()
    terms = [{"i": ik[0], "k": ik[1], "poly": poly_to_json(p)}
             for ik, p in sorted(s.terms.items())]
    results = [{"kind": "screen", "node": i, "expr": cfg.expr, "terms": terms}]
    lines = [f"S_{i}({cfg.expr}) = {s!r}"]
    return [], results, lines


def cmd_kernel(cfg: RunConfig):
    if not cfg.expr:
        raise ConfigError("kernel needs --expr")
    poly = parse_expr(cfg.expr, cfg.cartan)
    rows = []
    for i in _nodes(cfg):
        ok = in_kernel(cfg.cartan, i, poly)
        rows.append(_row(f"kernel:{i}", cfg.tname, "e", cfg.expr, cfg.order,
                         None if ok else {"reason": "screening image nonzero"}))
    verdict = all(r["status"] == "pass" for r in rows)
    return rows, [], [str(verdict).lower()]


def cmd_deform_check(cfg: RunConfig):
    cd = cfg.cartan
    samples = [(format_mono(g), Poly.from_mono(g)) for g in _gens(cd, cfg.base)]
    samples += [(f"sample[{n}]", p)
                for n, p in enumerate(sample_polys(cd, cfg.seed, 100))]
    tasks = []
    for i in _nodes(cfg):
        for label, p in samples:
            def task(i=i, label=label, p=p):
                lhs = theta_deform_linear_term(cd, i, p)
                rhs = screen(cd, i, p)
                bad = None if lhs == rhs else {
                    "reason": "h-linear term differs from screening",
                    "left": repr(lhs.canonical()), "right": repr(rhs.canonical())}
                return _row(f"deform:{i}", cfg.tname, "e", label, cfg.order, bad)
            tasks.append(task)
    return _run_tasks(tasks, cfg.jobs), [], []


def cmd_classical(cfg: RunConfig):
    poly = _input_poly(cfg, default=y_mono(cfg.node or 1, cfg.base))
    results, lines = [], []
    for w in cfg.words:
        img = varpi_pi(embed(poly, w, cfg.order))
        results.append({"kind": "classical", "pi": img.to_json()})
        lines.append(f"varpi_w at w={w.word_str()}: {len(img.parts)} part(s)")
        for p in img.parts:
            lines.extend(_series_lines("part", p.to_json(), classical=True))
    return [], results, lines


def cmd_equivariance(cfg: RunConfig):
    cd = cfg.cartan
    ctx = ThetaContext(cd, cfg.order)
    tasks = []
    for w in cfg.words:
        sources = [(format_mono(g), embed(Poly.from_mono(g), w, cfg.order).parts[0])
                   for g in _gens(cd, cfg.base)]
        sources += [(f"Sigma[{j},{cfg.base}]", sigma(w, j, cfg.base, cfg.order))
                    for j in range(1, cd.rank + 1)]
        for i in _nodes(cfg):
            for label, x in sources:
                tasks.append(lambda w=w, i=i, label=label, x=x: _row(
                    f"equivariance:{i}", cfg.tname, w.word_str(), label,
                    cfg.order, check_equivariance(x, i, ctx)))
    return _run_tasks(tasks, cfg.jobs), [], []


def cmd_chari(cfg: RunConfig):
    i = cfg.node or 1
    poly = _input_poly(cfg, default=y_mono(i, cfg.base))
    img = chari_t_poly(cfg.cartan, i, poly)
    results = [{"kind": "chari", "node": i, "poly": poly_to_json(img)}]
    return [], results, [f"T_{i}: {format_poly(img)}"]


def cmd_lambda(cfg: RunConfig):
    cd = cfg.cartan
    ctx = ThetaContext(cd, cfg.order)
    monos = [(format_mono(g), g) for g in _gens(cd, cfg.base)]
    monos += [(f"sample[{n}]", m)
              for n, m in enumerate(sample_monos(cd, cfg.seed, 20))]
    tasks = []
    for i in _nodes(cfg):
        for label, m in monos:
            def task(i=i, label=label, m=m):
                got = lambda_theta(cd, i, m, cfg.order, ctx)
                want = chari_t(cd, i, m)
                bad = None if got == want else {
                    "reason": "Lambda(Theta_i) differs from T_i",
                    "left": format_mono(got), "right": format_mono(want)}
                return _row(f"lambda:{i}", cfg.tname, "e", label, cfg.order, bad)
            tasks.append(task)
    return _run_tasks(tasks, cfg.jobs), [], []


_DISPATCH = {
    "sigma": cmd_sigma,
    "iterated-sigma": cmd_iterated_sigma,
    "theta": cmd_theta,
    "involution": cmd_involution,
    "braid": cmd_braid,
    "fixed-elements": cmd_fixed_elements,
    "screen": cmd_screen,
    "kernel": cmd_kernel,
    "deform-check": cmd_deform_check,
    "classical": cmd_classical,
    "equivariance": cmd_equivariance,
    "chari": cmd_chari,
    "lambda": cmd_lambda,
}


# -- rendering ---------------------------------------------------------------

def _series_lines(label: str, sj: dict, classical: bool = False):
    fmt = format_y_mono if classical else format_mono
    lines = [f"{label} @ w={sj['w']} (order {sj['order']})"]
    for t in sj["terms"]:
        m = mono_from_json(t["mono"])
        lines.append(f"  {int(t['coeff']):+d} {fmt(m)}  (h{t['height']})")
    return lines


def _emit(cfg: RunConfig, command: str, rows, results, lines) -> int:
    rows = sorted(rows, key=lambda r: (r["w"], r["generator"], r["relation"]))
    failed = [r for r in rows if r["status"] == "fail"]
    if cfg.fmt == "json":
        report = {
            "schema": SCHEMA_ID,
            "command": command,
            "type": cfg.tname,
            "order": cfg.order,
            "seed": cfg.seed,
            "config": {"w": cfg.w_text, "node": cfg.node, "base": cfg.base,
                       "expr": cfg.expr, "format": cfg.fmt},
            "rows": rows,
            "results": results,
        }
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        for line in lines:
            print(line)
        for r in rows:
            mark = "PASS" if r["status"] == "pass" else "FAIL"
            print(f"{mark} {r['relation']} w={r['w']} gen={r['generator']} "
                  f"order={r['order']}")
            if "firstMismatch" in r:
                print(f"     mismatch: {r['firstMismatch']}")
        if rows:
            print(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
    return 1 if failed else 0


# -- configuration -----------------------------------------------------------

def _parse_word_text(text: str):
    if text == "e":
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ConfigError(f"bad Weyl word {text!r}; want 'e' or like '1,2,1'")


def _resolve_words(cd, text):
    if text is None:
        text = "all" if cd.rank <= 2 else "e"
    if text == "all":
        if cd.rank > 2:
            raise ConfigError("--w all is only supported for rank <= 2")
        return text, cd.weyl_enumerate()
    words = []
    for part in text.split(";"):
        if part:
            words.append(weyl_from_word(cd, _parse_word_text(part)))
    if not words:
        raise ConfigError("empty --w selector")
    return text, words


def _nodes(cfg: RunConfig):
    return [cfg.node] if cfg.node else range(1, cfg.cartan.rank + 1)


def _input_poly(cfg: RunConfig, default: Mono) -> Poly:
    if cfg.expr is None:
        return Poly.from_mono(default)
    return parse_expr(cfg.expr, cfg.cartan)


def _build_config(args) -> RunConfig:
    if (args.type is None) == (args.cartan_file is None):
        raise ConfigError("give exactly one of --type or --cartan-file")
    if args.type is not None:
        spec, tname = args.type, args.type
    else:
        with open(args.cartan_file) as fh:
            data = json.load(fh)
        spec = data["matrix"] if isinstance(data, dict) else data
        tname = f"file:{args.cartan_file.rsplit('/', 1)[-1]}"
    try:
        cd = build_cartan(spec)
    except ValueError as exc:
        raise ConfigError(str(exc))
    if args.order < 1:
        raise ConfigError("--order must be >= 1")
    if args.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    if args.node is not None and not 1 <= args.node <= cd.rank:
        raise ConfigError(f"--node {args.node} out of range 1..{cd.rank}")
    _text, words = _resolve_words(cd, args.w)
    if args.expr is not None:
        try:
            parse_expr(args.expr, cd)
        except ValueError:
            # iterated-sigma words aren't expressions; validated per command
            pass
    return RunConfig(cd, tname, args.order, words, args.node, args.base,
                     args.expr, args.format, args.seed, args.jobs)


def _make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qweyl",
        description="Exact Weyl-group action on completed rings of q-characters.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--type", help="named Cartan type, e.g. A2, B2, G2, D4")
        sp.add_argument("--cartan-file", help="JSON file with a Cartan matrix")
        sp.add_argument("--order", type=int, default=6,
                        help="truncation order N >= 1 (default 6)")
        sp.add_argument("--w", help="component selector: 'all', or words like "
                                    "'e' or '1,2,1' joined by ';'")
        sp.add_argument("--node", type=int, help="node index i (1-based)")
        sp.add_argument("--base", type=int, default=0,
                        help="base spectral exponent k (default 0)")
        sp.add_argument("--expr", help="input expression, e.g. 'Y[1,0]+Y[1,2]^-1'")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for sampled property checks")
        sp.add_argument("--jobs", type=int, default=1,
                        help="worker threads for verification sweeps")
    return p


def main(argv=None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _build_config(args)
        rows, results, lines = _DISPATCH[args.command](cfg)
    except ConfigError as exc:
        print(f"qweyl: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"qweyl: {exc}", file=sys.stderr)
        return 2
    return _emit(cfg, args.command, rows, results, lines)


if __name__ == "__main__":
    sys.exit(main())
