"""Command-line front end.

Computes Witt-vector operations, runs the named verification suites, and
emits machine-readable reports.  Exit codes: 0 for success, 1 when a
verification suite records failures, 2 for usage or configuration errors.
All randomness flows from the single ``--seed`` flag, and ``--json`` output
is byte-stable for a fixed seed and configuration.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from .arrow import (
    arrow_from_integer,
    arrow_norm,
    arrow_to_json,
    lift_arrow_precision,
    theta,
    theta_series,
)
from .artin import invariant_classify, teichmuller_phi_invariance
from .config import ring_from_spec
from .cyclotomic import CycloModPM, GaussianField
from .errors import MalformedConfig, NoRoot, WittError
from .kernelnorm import verify_kernel_norm
from .norms import NormValue
from .perfect import solve_frobenius, witt_perfect_test
from .rings import Integers, Ring, ZModPM
from .suites import SUITE_NAMES, run_suite
from .tilt import (
    TiltRing,
    tilt_add,
    tilt_from_top,
    tilt_mul,
    tilt_norm,
    tilt_to_json,
    untilt,
)
from .univ import canonical_dump
from .witt import (
    WittVec,
    frobenius,
    ghost,
    unghost,
    verschiebung,
    witt_add,
    witt_mul,
    witt_neg,
    witt_norm,
    witt_sub,
    witt_to_json,
)

__all__ = ["main", "build_parser"]


def _norm_text(v: NormValue) -> str:
    return "0" if v.is_zero else f"p^{-v.v}"


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedConfig(f"not a rational number: {text!r}") from exc


def _print_json(payload: Any) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


# ---------------------------------------------------------------------------
# compute: a tiny expression evaluator over Witt vectors
# ---------------------------------------------------------------------------

_UNARY = {"ghost", "unghost", "neg", "frob", "versch", "wnorm"}
_BINARY = {"add", "sub", "mul"}


def _split_commas(body: str) -> List[str]:
    """Split on top-level commas, respecting square brackets."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    parts.append(body[start:])
    return parts


def _parse_vectors(expr: str, pos: int, ring: Ring) -> List[WittVec]:
    vectors = []
    n = len(expr)
    while pos < n:
        while pos < n and expr[pos].isspace():
            pos += 1
        if pos >= n:
            break
        if expr[pos] != "(":
            raise MalformedConfig(f"expected '(' at position {pos} in {expr!r}")
        close = depth = 0
        for i in range(pos, n):
            if expr[i] == "(":
                depth += 1
            elif expr[i] == ")":
                depth -= 1
                if depth == 0:
                    close = i
                    break
        else:
            raise MalformedConfig(f"unclosed '(' at position {pos} in {expr!r}")
        body = expr[pos + 1 : close]
        if not body.strip():
            raise MalformedConfig(f"empty vector at position {pos} in {expr!r}")
        try:
            comps = tuple(ring.parse_elt(tok) for tok in _split_commas(body))
        except WittError as exc:
            raise MalformedConfig(f"bad component at position {pos}: {exc}") from exc
        vectors.append(WittVec(ring, comps))
        pos = close + 1
    return vectors


def _format_vec(x: WittVec) -> str:
    return "(" + ", ".join(x.ring.format_elt(c) for c in x.components) + ")"


def _cmd_compute(args) -> int:
    ring = ring_from_spec(args.ring, p=args.p, precision=args.precision, depth=args.depth)
    expr = args.expr.strip()
    m = re.match(r"[a-z_]+", expr)
    if not m:
        raise MalformedConfig(f"expected an operation name at position 0 in {expr!r}")
    op = m.group(0)
    if op not in _UNARY | _BINARY:
        raise MalformedConfig(
            f"unknown operation {op!r} at position 0; supported: "
            + ", ".join(sorted(_UNARY | _BINARY))
        )
    vectors = _parse_vectors(expr, m.end(), ring)
    want = 1 if op in _UNARY else 2
    if len(vectors) != want:
        raise MalformedConfig(
            f"{op} takes {want} vector(s), got {len(vectors)} in {expr!r}"
        )
    if op == "ghost":
        entries = ghost(vectors[0]).entries
        text = "(" + ", ".join(ring.format_elt(e) for e in entries) + ")"
        payload = {"op": op, "result": [ring.elt_to_json(e) for e in entries]}
    elif op == "unghost":
        gv = vectors[0]
        x = unghost(ring, gv.components)
        text = _format_vec(x)
        payload = {"op": op, "result": witt_to_json(x)}
    elif op == "wnorm":
        v = witt_norm(vectors[0])
        text = _norm_text(v)
        payload = {"op": op, "result": text}
    else:
        fn = {
            "add": witt_add,
            "sub": witt_sub,
            "mul": witt_mul,
            "neg": witt_neg,
            "frob": frobenius,
            "versch": verschiebung,
        }[op]
        out = fn(*vectors)
        text = _format_vec(out)
        payload = {"op": op, "result": witt_to_json(out)}
    if args.json:
        _print_json(payload)
    else:
        print(text)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, p=args.p)
    if args.json:
        _print_json(report.to_dict())
    else:
        print(
            f"suite {report.suite}: {len(report.cases)} cases, "
            f"{report.failures} failures ({report.elapsed_s:.2f}s, seed {report.seed})"
        )
        for case in sorted(report.cases, key=lambda c: c.name):
            print(f"  [{case.status}] {case.name}: {case.detail}")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# universal dump
# ---------------------------------------------------------------------------


def _cmd_universal(args) -> int:
    if args.action != "dump":
        raise MalformedConfig(f"unknown universal action {args.action!r}; try 'dump'")
    text = canonical_dump(args.p)
    if args.json:
        _print_json({"p": args.p, "polynomials": text.splitlines()})
    else:
        print(text, end="")
    return 0


# ---------------------------------------------------------------------------
# arrow norm | lift | theta
# ---------------------------------------------------------------------------


def _cmd_arrow(args) -> int:
    if args.action == "norm":
        ring = ring_from_spec(args.ring, p=args.p, precision=args.precision)
        a = arrow_from_integer(ring, args.c, args.depth)
        result = arrow_norm(a, _fraction(args.b))
        if args.json:
            _print_json({"c": args.c, "norm": result.to_dict()})
        else:
            where = "" if result.attained_at is None else f", attained at level {result.attained_at}"
            print(
                f"|{args.c}|_(W,{args.b}) = {_norm_text(result.value)} "
                f"({result.status}{where})"
            )
        return 0
    if args.action == "lift":
        ring = ZModPM(args.p, args.precision)
        depth = args.depth + args.precision + 2
        a = arrow_from_integer(ring, args.c, depth)
        lifted = lift_arrow_precision(a, args.depth, check=True)
        payload = {"c": args.c, "lifted": arrow_to_json(lifted)}
        if args.json:
            _print_json(payload)
        else:
            print(
                f"lift of {args.c} from Z/{args.p}^{args.precision} to "
                f"Z/{args.p}^{args.precision + 1} at depth {args.depth}:"
            )
            for n, lvl in enumerate(lifted.levels):
                comps = ", ".join(lifted.ring.format_elt(c) for c in lvl.components)
                print(f"  level {n}: ({comps})")
        return 0
    if args.action == "theta":
        ring = ZModPM(args.p, args.precision)
        a = arrow_from_integer(ring, args.c, args.depth)
        value = theta(a)
        series_value, terms = theta_series(a)
        payload = {
            "c": args.c,
            "theta": ring.elt_to_json(value),
            "series": ring.elt_to_json(series_value),
            "terms": [ring.elt_to_json(t) for t in terms],
            "agree": ring.eq(value, series_value),
        }
        if args.json:
            _print_json(payload)
        else:
            print(f"theta = {ring.format_elt(value)}")
            print(f"series = {ring.format_elt(series_value)} (terms: "
                  + ", ".join(ring.format_elt(t) for t in terms) + ")")
        return 0
    raise MalformedConfig(f"unknown arrow action {args.action!r}; try norm, lift, theta")


# ---------------------------------------------------------------------------
# perfect test | solve-frob
# ---------------------------------------------------------------------------

_INSTANCES = ("Z", "Zmod", "Qi", "zeta-ring", "tower")


def _cmd_perfect(args) -> int:
    if args.action == "test":
        spec = args.ring
        if spec.strip().startswith("{"):
            try:
                config = json.loads(spec)
            except json.JSONDecodeError as exc:
                raise MalformedConfig(f"bad instance config: {exc}") from exc
        elif spec in _INSTANCES:
            config = {"instance": spec, "p": args.p}
            if spec == "Zmod":
                config["M"] = args.precision
            if spec == "zeta-ring":
                config["k"] = args.depth
            if spec == "tower":
                config["levels"] = args.depth
        else:
            raise MalformedConfig(
                f"unknown perfectness instance {spec!r}; use one of "
                + ", ".join(_INSTANCES)
                + " or an inline JSON config"
            )
        import random

        report = witt_perfect_test(config, random.Random(args.seed))
        if args.json:
            _print_json(report.to_dict())
        else:
            print(f"{report.instance}: {report.verdict}")
            print(f"  condition (a): {report.condition_a}")
            print(f"  condition (b): {report.condition_b}")
            for note in report.notes:
                print(f"  note: {note}")
        return 0
    if args.action == "solve-frob":
        ring = ZModPM(args.p, args.precision)
        vectors = _parse_vectors(args.x, 0, ring)
        if len(vectors) != 1:
            raise MalformedConfig("solve-frob takes exactly one vector")
        x = vectors[0]
        try:
            y, rep = solve_frobenius(x)
        except NoRoot as exc:
            payload = {"solved": False, "certified": True, "reason": str(exc)}
            if args.json:
                _print_json(payload)
            else:
                print(f"no preimage (certified): {exc}")
            return 0
        payload = {"solved": True, "y": witt_to_json(y), "report": rep}
        if args.json:
            _print_json(payload)
        else:
            print(f"y = {_format_vec(y)}")
            print(f"verified at precision {rep['verified_at_precision']}")
        return 0
    raise MalformedConfig(f"unknown perfect action {args.action!r}; try test, solve-frob")


# ---------------------------------------------------------------------------
# tilt add | mul | norm | untilt
# ---------------------------------------------------------------------------


def _tilt_base(args) -> Ring:
    ring = ring_from_spec(args.ring, p=args.p, precision=args.precision, depth=args.depth)
    if not isinstance(ring, (ZModPM, CycloModPM)):
        raise MalformedConfig(
            f"tilting needs a truncated base ring (Zmod or ZzetaMod), got {ring.kind}"
        )
    return ring


def _cmd_tilt(args) -> int:
    base = _tilt_base(args)
    depth = args.depth
    chains = [tilt_from_top(base, base.parse_elt(tok), depth) for tok in args.tops]
    if args.action in ("add", "mul"):
        if len(chains) != 2:
            raise MalformedConfig(f"tilt {args.action} takes two top elements")
        out = (tilt_add if args.action == "add" else tilt_mul)(chains[0], chains[1])
        if args.json:
            _print_json({"op": args.action, "result": tilt_to_json(out)})
        else:
            for m, entry in enumerate(out.entries):
                print(f"  slot {m}: {base.format_elt(entry)}")
        return 0
    if len(chains) != 1:
        raise MalformedConfig(f"tilt {args.action} takes one top element")
    if args.action == "norm":
        v = tilt_norm(chains[0])
        if args.json:
            _print_json({"op": "norm", "result": _norm_text(v)})
        else:
            print(_norm_text(v))
        return 0
    if args.action == "untilt":
        tring = TiltRing(base, depth)
        x = WittVec(tring, (chains[0],))
        a = untilt(x, args.n)
        if args.json:
            _print_json({"op": "untilt", "result": arrow_to_json(a)})
        else:
            for n, lvl in enumerate(a.levels):
                comps = ", ".join(base.format_elt(c) for c in lvl.components)
                print(f"  level {n}: ({comps})")
        return 0
    raise MalformedConfig(
        f"unknown tilt action {args.action!r}; try add, mul, norm, untilt"
    )


# ---------------------------------------------------------------------------
# kernel verify
# ---------------------------------------------------------------------------


def _cmd_kernel(args) -> int:
    if args.action != "verify":
        raise MalformedConfig(f"unknown kernel action {args.action!r}; try 'verify'")
    ring = ring_from_spec(args.ring, p=args.p, precision=args.precision, depth=args.depth)
    elements: List[Any] = []
    try:
        count = int(args.samples)
    except ValueError:
        count = None
    if count is None:
        try:
            with open(args.samples, "r", encoding="utf-8") as fh:
                lines = [ln.strip() for ln in fh if ln.strip()]
        except OSError as exc:
            raise MalformedConfig(
                f"--samples must be a count or a readable file: {exc}"
            ) from exc
        elements = [ring.parse_elt(ln) for ln in lines]
    else:
        import random

        rng = random.Random(args.seed)
        for i in range(count):
            k = rng.randint(-2, 2)
            if isinstance(ring, Integers):
                t = ring.from_int(rng.choice([u for u in range(1, 10) if u % ring.p]))
            elif hasattr(ring, "uniformizer"):
                t = ring.pow_(ring.uniformizer(), rng.randint(0, 2 * ring.e))
            else:
                t = Fraction(rng.choice([u for u in range(1, 10) if u % ring.p])) * (
                    Fraction(ring.p) ** k
                )
            elements.append(t)
    results = [verify_kernel_norm(ring, t, args.j, assert_equality=False) for t in elements]
    failures = sum(1 for r in results if not r["passed"])
    if args.json:
        _print_json({"j": args.j, "failures": failures, "results": results})
    else:
        for r in results:
            status = "pass" if r["passed"] else "FAIL"
            print(
                f"[{status}] t={r['t']}: |w1| = p^{r['w1_exponent']}, "
                f"scaled sup = p^{r['scaled_sup_exponent']}"
            )
        print(f"{len(results)} samples, {failures} failures")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# artin classify
# ---------------------------------------------------------------------------

_GAUSS_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?P<im>(?:[+-]\s*)?(?:\d+(?:/\d+)?\s*\*?\s*)?i)?\s*$"
)


def _parse_gaussian(field: GaussianField, text: str):
    m = _GAUSS_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise MalformedConfig(
            f"cannot parse {text!r}; use forms like '2', '1/2', 'i', '-i', "
            "'3i', '1/2+3i'"
        )
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_txt = m.group("im")
    if im_txt is None:
        im_part = Fraction(0)
    else:
        im_txt = im_txt.replace(" ", "").replace("*", "")[:-1]  # strip the i
        if im_txt in ("", "+"):
            im_part = Fraction(1)
        elif im_txt == "-":
            im_part = Fraction(-1)
        else:
            im_part = Fraction(im_txt)
    return field.from_pair(re_part, im_part)


def _cmd_artin(args) -> int:
    if args.action != "classify":
        raise MalformedConfig(f"unknown artin action {args.action!r}; try 'classify'")
    if args.field != "Qi":
        raise MalformedConfig(
            f"classification is implemented over the Gaussian field only, got {args.field!r}"
        )
    field = GaussianField(args.p)
    f = _parse_gaussian(field, args.f)
    report = invariant_classify(field, f, args.depth)
    report["teichmuller_phi_invariant"] = teichmuller_phi_invariance(field, f)
    if args.json:
        _print_json(report)
    else:
        verdict = "bounded" if report["bounded"] else "unbounded"
        predicted = "bounded" if report["predicted_bounded"] else "unbounded"
        print(
            f"f = {args.f} over Q(i) at p={args.p} ({report['splitting']}): "
            f"{verdict} (predicted {predicted}, match={report['match']})"
        )
        print(f"profile exponents: {report['profile_exponents']}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sp, *, ring_default: Optional[str] = None, precision: int = 6, depth: int = 3):
    sp.add_argument("--p", type=int, default=2, help="the prime (default 2)")
    if ring_default is not None:
        sp.add_argument(
            "--ring",
            default=ring_default,
            help="ring config: shorthand (Z, Q, Qi, Zmod, Qzeta:k, ZzetaMod:k, "
            f"PerfPoly:n), inline JSON, or a config file (default {ring_default})",
        )
    sp.add_argument("--precision", type=int, default=precision, help="truncation exponent M")
    sp.add_argument("--depth", type=int, default=depth, help="family depth / level count")
    sp.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    sp.add_argument("--json", action="store_true", help="emit a machine-readable report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittlab",
        description="Exact Witt-vector arithmetic, tilting, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="run a named verification suite")
    sp.add_argument("suite", choices=SUITE_NAMES)
    sp.add_argument("--p", type=int, default=None, help="restrict the suite to one prime")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("compute", help="evaluate a Witt-vector expression")
    sp.add_argument(
        "expr",
        help="expression: an operation (ghost, unghost, add, sub, mul, neg, "
        "frob, versch, wnorm) followed by parenthesized vectors, "
        "e.g. \"add (1,0) (1,0)\"",
    )
    _add_common(sp, ring_default="Z")
    sp.set_defaults(fn=_cmd_compute)

    sp = sub.add_parser("universal", help="structure polynomial utilities")
    sp.add_argument("action", choices=["dump"])
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_universal)

    sp = sub.add_parser("arrow", help="coherent-family (inverse limit) operations")
    sp.add_argument("action", choices=["norm", "lift", "theta"])
    sp.add_argument("c", type=int, help="the integer whose coherent family to build")
    sp.add_argument("--b", default="1", help="overconvergence weight (rational)")
    _add_common(sp, ring_default="Z", precision=2, depth=3)
    sp.set_defaults(fn=_cmd_arrow)

    sp = sub.add_parser("perfect", help="Witt-perfectness tests and Frobenius solving")
    sp.add_argument("action", choices=["test", "solve-frob"])
    sp.add_argument(
        "x",
        nargs="?",
        default="",
        help="for solve-frob: the target vector, e.g. \"(4, 0)\"",
    )
    _add_common(sp, ring_default="Z", precision=6, depth=2)
    sp.set_defaults(fn=_cmd_perfect)

    sp = sub.add_parser("tilt", help="chain (tilt) arithmetic over a truncated base")
    sp.add_argument("action", choices=["add", "mul", "norm", "untilt"])
    sp.add_argument("tops", nargs="+", help="top elements; each seeds a coherent chain")
    sp.add_argument("--n", type=int, default=1, help="untilt output depth")
    _add_common(sp, ring_default="Zmod", precision=3, depth=3)
    sp.set_defaults(fn=_cmd_tilt)

    sp = sub.add_parser("kernel", help="Frobenius-kernel norm identity")
    sp.add_argument("action", choices=["verify"])
    sp.add_argument("--j", type=int, default=1, help="kernel index (vector length)")
    sp.add_argument(
        "--samples",
        default="10",
        help="sample count, or a file with one element per line",
    )
    _add_common(sp, ring_default="Q")
    sp.set_defaults(fn=_cmd_kernel)

    sp = sub.add_parser("artin", help="constant-ghost invariant classification")
    sp.add_argument("action", choices=["classify"])
    sp.add_argument("--field", default="Qi", help="base field (Qi)")
    sp.add_argument("--f", required=True, help="the constant, e.g. 'i', '1/5', '1/2+3i'")
    sp.add_argument("--p", type=int, default=5)
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_artin)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except WittError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
