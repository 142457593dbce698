"""Command-line front end.

Input files look like::

    ring x0 x1 x2 x3;
    module degrees 0;          # optional, default: rank one in degree 0
    gens x0*x1; x0*x2; x1*x2;
    order degrevlex pot;       # optional

Exit status is 0 on success, 1 on usage or parse errors and 2 on domain errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .cones import (
    ConstructionError as ConeConstructionError,
    NotExactError,
    PreconditionError,
    exact_decomposition,
    macaulay_constants_from_decomposition,
    validate_partition,
)
from .constructions import ConstructionError, ExtremalSpec, extremal_ideal, realize_hilbert_polynomial
from .core import (
    FreeModule,
    InhomogeneousError,
    OrderSpec,
    ParseError,
    Presentation,
    Ring,
    parse_element,
    parse_terms,
)
from .groebner import groebner, initial_quotient, macaulay_constants_of, prune
from .hilbert import (
    EnumerationGuardError,
    NotAdmissibleError,
    QPoly,
    ZeroModuleError,
    gotzmann_form,
    hilbert_polynomial,
    hilbert_series,
    macaulay_constants,
    regularity_index,
)
from .resolution import BoundViolation, minimal_free_resolution, regularity_report

COMMANDS = ("hilbert", "constants", "decompose", "gb", "resolve", "report", "extremal",
            "realize", "gotzmann")
FILE_COMMANDS = COMMANDS[:6]
KEYWORDS = ("ring", "module", "gens", "order")

DOMAIN_ERRORS = (NotAdmissibleError, ZeroModuleError, ConstructionError, ConeConstructionError,
                 NotExactError, PreconditionError, InhomogeneousError, EnumerationGuardError,
                 BoundViolation)


def schema_path():
    """Location of the JSON schema that every ``--format json`` report satisfies."""
    return resources.files("macaulay") / "data" / "report.schema.json"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class JobInput:
    ring: Ring
    module: Presentation
    order: OrderSpec


def parse_job(text: str) -> JobInput:
    """Parse the ring/module/gens/order input format."""
    # blank out comments but keep offsets stable
    clean = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    names = None
    degrees = (0,)
    order = OrderSpec()
    gen_texts: list[tuple[str, int]] = []
    in_gens = False
    pos = 0
    for chunk in clean.split(";"):
        start = pos + len(chunk) - len(chunk.lstrip())
        pos += len(chunk) + 1
        body = chunk.strip()
        if not body:
            continue
        head_word = re.match(r"[A-Za-z_]\w*", body)
        word = head_word.group() if head_word else ""
        rest = body[len(word):]
        if word == "ring":
            names = tuple(rest.split())
            if not names:
                raise ParseError("ring needs at least one variable", start, text)
            bad = [v for v in names if not re.fullmatch(r"[A-Za-z_]\w*", v) or v in KEYWORDS
                   or re.fullmatch(r"e\d+", v)]
            if bad:
                raise ParseError(f"invalid variable name {bad[0]!r}", start, text)
            in_gens = False
        elif word == "module":
            toks = rest.split()
            if not toks or toks[0] != "degrees" or len(toks) < 2:
                raise ParseError("expected 'module degrees d1 ... dr'", start, text)
            try:
                degrees = tuple(int(t) for t in toks[1:])
            except ValueError:
                raise ParseError("module degrees must be integers", start, text) from None
            in_gens = False
        elif word == "order":
            toks = rest.split()
            if not toks or toks[0] not in ("lex", "degrevlex") or len(toks) > 2 \
                    or (len(toks) == 2 and toks[1] not in ("pot", "top")):
                raise ParseError("expected 'order lex|degrevlex [pot|top]'", start, text)
            order = OrderSpec(toks[0], toks[1] if len(toks) == 2 else "pot")
            in_gens = False
        elif word == "gens":
            in_gens = True
            if rest.strip():
                gen_texts.append((rest.strip(), start + body.index(rest.strip())))
        elif in_gens:
            gen_texts.append((body, start))
        else:
            raise ParseError(f"unexpected statement {body.split()[0]!r}", start, text)
    if names is None:
        raise ParseError("missing 'ring' declaration", 0, text)
    ring = Ring(len(names), names)
    fm = FreeModule(ring, degrees)
    gens = []
    for g, off in gen_texts:
        try:
            gens.append(parse_element(g, fm, order))
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], off + exc.pos, text) from None
    return JobInput(ring, Presentation(fm, tuple(gens)), order)


def parse_polynomial(text: str) -> QPoly:
    """A polynomial in z with rational coefficients, e.g. ``3*z + 1``."""
    terms = parse_terms(text, ("z",), allow_slots=False)
    top = max((m[0] for (_, m) in terms), default=0)
    coeffs = [Fraction(0)] * (top + 1)
    for (_, m), c in terms.items():
        coeffs[m[0]] += c
    return QPoly(tuple(coeffs))


def _num(x):
    if isinstance(x, float) and math.isinf(x):
        return None
    return int(x)


# ---------------------------------------------------------------------------
# commands


def _initial(job: JobInput):
    p = prune(job.module, job.order)
    gb = groebner(list(p.gens), job.order, p.fm)
    return p, gb, initial_quotient(gb)


def cmd_hilbert(job: JobInput, args) -> dict:
    _, _, iq = _initial(job)
    hs = hilbert_series(iq)
    p = hilbert_polynomial(hs)
    r = regularity_index(hs)
    top = max(int(r) if r != -math.inf else 0, iq.e_plus) + 3
    return {
        "series": {"numerator": list(hs.numerator), "low": hs.low,
                   "denominator_power": hs.denominator_power},
        "hilbert_polynomial": str(p),
        "hilbert_function": [hs.coefficient(j) for j in range(top + 1)],
        "dim": hs.dim,
        "reg_index": _num(r),
    }


def cmd_constants(job: JobInput, args) -> dict:
    return macaulay_constants_of(job.module, job.order).as_dict()


def cmd_decompose(job: JobInput, args) -> dict:
    _, _, iq = _initial(job)
    dec = exact_decomposition(iq)
    consts = macaulay_constants_from_decomposition(dec)
    out = consts.as_dict()
    out["cones"] = dec.to_text(job.ring)
    top = consts.b[0] + 1
    out["partition_checked_to"] = top
    out["partition_valid"] = validate_partition(dec, iq, top, guard=args.guard)
    return out


def cmd_gb(job: JobInput, args) -> dict:
    p, gb, iq = _initial(job)
    return {
        "gb": [g.to_text() for g in gb.elements],
        "max_degree": gb.max_degree,
        "initial_module": [[_mono_text(m, job.ring) for m in slot] for slot in iq.sub.gens_per_slot],
        "constants": list(macaulay_constants(iq).b),
    }


def _mono_text(m, ring: Ring) -> str:
    f = [n if e == 1 else f"{n}^{e}" for n, e in zip(ring.var_names, m) if e]
    return "*".join(f) if f else "1"


def cmd_resolve(job: JobInput, args) -> dict:
    bt = minimal_free_resolution(job.module, job.order)
    return {"betti": bt.as_dict(), "betti_table": bt.to_text(), "reg": bt.regularity,
            "pd": bt.pd, "depth": bt.depth}


def cmd_report(job: JobInput, args) -> dict:
    rep = regularity_report(job.module, job.order)
    out = rep.as_dict()
    out["betti_table"] = rep.betti.to_text()
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_extremal(args) -> dict:
    b = _int_list(args.b)
    need = args.d - args.t + 1
    if len(b) == need:
        b.append(0)
    try:
        spec = ExtremalSpec(args.n, args.t, args.d, tuple(b))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    gens, cert = extremal_ideal(spec, seed=args.seed)
    out = cert.as_dict()
    out.update(cert.constants_computed.as_dict())
    out["generators"] = out.pop("ideal")
    out["certificate_ok"] = out.pop("ok")
    return out


def cmd_realize(args) -> dict:
    p = parse_polynomial(args.poly)
    module = realize_hilbert_polynomial(p, args.e, args.n, seed=args.seed)
    out = macaulay_constants_of(module).as_dict()
    out["generators"] = [g.to_text() for g in module.gens]
    out["generator_degree"] = module.fm.slot_degrees[0]
    out["hilbert_polynomial"] = str(p)
    return out


def cmd_gotzmann(args) -> dict:
    p = parse_polynomial(args.poly)
    g = gotzmann_form(p)
    return {"gotzmann": {"a": list(g.a), "s": g.s}, "hilbert_polynomial": str(p)}


FILE_HANDLERS = {
    "hilbert": cmd_hilbert,
    "constants": cmd_constants,
    "decompose": cmd_decompose,
    "gb": cmd_gb,
    "resolve": cmd_resolve,
    "report": cmd_report,
}
ARG_HANDLERS = {"extremal": cmd_extremal, "realize": cmd_realize, "gotzmann": cmd_gotzmann}


# ---------------------------------------------------------------------------
# output


def render_text(command: str, out: dict) -> str:
    lines = []
    for key in sorted(out):
        if key == "command":
            continue
        val = out[key]
        if isinstance(val, str) and "\n" in val:
            lines.append(f"{key}:")
            lines.extend("  " + ln for ln in val.splitlines())
        elif isinstance(val, list) and val and all(isinstance(v, str) for v in val):
            lines.append(f"{key}:")
            lines.extend(f"  {v}" for v in val)
        else:
            if val is None:
                val = "-inf"
            lines.append(f"{key}: {json.dumps(val) if isinstance(val, (dict, list)) else val}")
    return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--guard", type=int, default=10**7,
                        help="cap on monomials enumerated by brute-force checks")
    parser = _Parser(prog="macaulay", description="Macaulay constants and regularity of graded modules")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in FILE_COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("file", help="input file, or - for stdin")
    sp = sub.add_parser("extremal", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--b", required=True, help="b_t,...,b_d or b_t,...,b_{d+1}")
    sp = sub.add_parser("realize", parents=[common])
    sp.add_argument("--poly", required=True)
    sp.add_argument("--e", type=int, default=0)
    sp.add_argument("--n", type=int, required=True)
    sp = sub.add_parser("gotzmann", parents=[common])
    sp.add_argument("--poly", required=True)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command in FILE_HANDLERS:
            if args.file == "-":
                text = sys.stdin.read()
            else:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            out = FILE_HANDLERS[args.command](parse_job(text), args)
        else:
            out = ARG_HANDLERS[args.command](args)
    except (ParseError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    out = {"command": args.command, **out}
    if args.format == "json":
        stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        stdout.write(render_text(args.command, out) + "\n")
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
